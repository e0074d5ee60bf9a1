// Sparse linear operators on tensor products of C^N with exact entries.

#ifndef YBT_TENSOR_HPP
#define YBT_TENSOR_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ybt/scalar.hpp"

namespace ybt {

/// Multi-index with 1-based components.
using MultiIndex = std::vector<int>;

class Operator {
  public:
    using Key = std::pair<std::size_t, std::size_t>;  // flat (row, col), 0-based
    using Entries = std::map<Key, ScalarExpr>;

    Operator() = default;
    explicit Operator(std::vector<int> site_dims);

    static Operator zero(std::vector<int> site_dims) { return Operator(std::move(site_dims)); }
    static Operator identity(std::vector<int> site_dims);
    /// Matrix unit e_ij on C^N: (e_ij)_kl = delta_ik delta_jl.
    static Operator unit(int N, int i, int j);
    /// Permutation P = sum e_ij (x) e_ji on C^N (x) C^N.
    static Operator permutation(int N);

    const std::vector<int>& site_dims() const noexcept { return dims_; }
    std::size_t sites() const noexcept { return dims_.size(); }
    std::size_t dimension() const noexcept { return size_; }
    const Entries& entries() const noexcept { return entries_; }
    std::size_t nonzeros() const noexcept { return entries_.size(); }

    std::size_t flatten(const MultiIndex& idx) const;
    MultiIndex unflatten(std::size_t flat) const;

    ScalarExpr at_flat(std::size_t row, std::size_t col) const;
    ScalarExpr at(const MultiIndex& row, const MultiIndex& col) const { return at_flat(flatten(row), flatten(col)); }
    void set_flat(std::size_t row, std::size_t col, ScalarExpr value);
    void set(const MultiIndex& row, const MultiIndex& col, ScalarExpr value) {
        set_flat(flatten(row), flatten(col), std::move(value));
    }
    void add_to(std::size_t row, std::size_t col, const ScalarExpr& value);

    Operator& operator+=(const Operator& o);
    Operator& operator-=(const Operator& o);
    Operator& operator*=(const ScalarExpr& c);
    friend Operator operator+(Operator a, const Operator& b) { return a += b; }
    friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
    friend Operator operator*(Operator a, const ScalarExpr& c) { return a *= c; }
    friend Operator operator*(const ScalarExpr& c, Operator a) { return a *= c; }
    /// Matrix product.
    friend Operator operator*(const Operator& a, const Operator& b);

    Operator transform(const std::function<ScalarExpr(const ScalarExpr&)>& fn) const;
    Operator substitute(const std::map<Symbol, ScalarExpr>& values) const;
    /// Entrywise evaluation; throws DomainError if an entry's denominator vanishes.
    Operator evaluate(const std::map<Symbol, Rational>& point) const;
    std::set<Symbol> symbols() const;

    bool equals_zero(const ZeroTest& mode = ZeroTest::expand()) const;
    bool equals(const Operator& o, const ZeroTest& mode = ZeroTest::expand()) const;

    /// First entry (row, col) whose difference is nonzero, if any.
    std::optional<Key> first_nonzero(const ZeroTest& mode = ZeroTest::expand()) const;

  private:
    std::vector<int> dims_;
    std::size_t size_ = 1;
    Entries entries_;

    void require_same_shape(const Operator& o, const char* what) const;
};

Operator kron(const Operator& a, const Operator& b);

/// Places `a` at the given 1-based chain positions, identity elsewhere.
Operator embed(const Operator& a, const std::vector<int>& positions, const std::vector<int>& chain_dims);
inline Operator embed(const Operator& a, const std::vector<int>& positions, int chain_len, int N) {
    return embed(a, positions, std::vector<int>(static_cast<std::size_t>(chain_len), N));
}

}  // namespace ybt

#endif  // YBT_TENSOR_HPP
