/*
   Copyright 2026 The ybtwist Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef YBT_SCALAR_HPP
#define YBT_SCALAR_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace ybt {

using Rational = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when textual input (expressions, JSON specs) cannot be understood.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// Raised by division by an identically-zero expression and by evaluation
/// at a point where a denominator vanishes.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// An interned commuting indeterminate.
///
/// Root-pair symbols s_i_j (i < j) stand for the square root of a deformation
/// parameter phi_ij; the reversed pair is represented by the inverse of s_i_j
/// and s_i_i is the constant 1, so only i < j root symbols ever exist.
class Symbol {
  public:
    Symbol() = default;

    static Symbol named(std::string_view name);
    /// Root-pair symbol for 1 <= i < j.
    static Symbol root(int i, int j);

    const std::string& name() const;
    bool valid() const noexcept { return data_ != nullptr; }
    bool is_root() const noexcept;
    std::pair<int, int> root_indices() const;

    friend bool operator==(Symbol a, Symbol b) noexcept { return a.data_ == b.data_; }
    friend bool operator!=(Symbol a, Symbol b) noexcept { return a.data_ != b.data_; }
    /// Orders by name; the cached name prefix decides most comparisons.
    friend bool operator<(Symbol a, Symbol b) noexcept {
        if (a.prefix_ != b.prefix_) return a.prefix_ < b.prefix_;
        return a.data_ != b.data_ && name_less(a, b);
    }
    std::size_t hash() const noexcept { return std::hash<const void*>{}(data_); }

    struct Data;

  private:
    Symbol(const Data* d, std::uint64_t prefix) : data_(d), prefix_(prefix) {}
    static bool name_less(Symbol a, Symbol b) noexcept;
    const Data* data_ = nullptr;
    std::uint64_t prefix_ = 0;  // first bytes of the name, big-endian
};

std::ostream& operator<<(std::ostream& os, Symbol s);

/// Laurent monomial: symbols sorted by name, nonzero (possibly negative)
/// exponents.
class Monomial {
  public:
    Monomial() = default;
    explicit Monomial(Symbol s, int exponent = 1);

    const std::vector<std::pair<Symbol, int>>& factors() const noexcept { return factors_; }
    bool is_one() const noexcept { return factors_.empty(); }
    int exponent(Symbol s) const noexcept;
    int total_degree() const noexcept;
    bool is_polynomial() const noexcept;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    Monomial inverse() const;
    Monomial pow(int e) const;
    /// Componentwise minimum of exponents (treating absent symbols as 0).
    static Monomial gcd(const Monomial& a, const Monomial& b);
    /// True when every exponent of *this is <= the matching exponent of other.
    bool divides(const Monomial& other) const noexcept;

    /// Lexicographic order over name-sorted symbols.
    friend int compare(const Monomial& a, const Monomial& b) noexcept;
    friend bool operator<(const Monomial& a, const Monomial& b) noexcept { return compare(a, b) < 0; }
    friend bool operator==(const Monomial& a, const Monomial& b) noexcept { return a.factors_ == b.factors_; }

    std::string to_string() const;

  private:
    std::vector<std::pair<Symbol, int>> factors_;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept;
};

/// Sparse Laurent polynomial with rational coefficients.
class Polynomial {
  public:
    using Terms = std::map<Monomial, Rational>;

    Polynomial() = default;
    Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
    Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    explicit Polynomial(Symbol s);
    Polynomial(const Monomial& m, const Rational& c);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    /// Coefficient of the constant monomial.
    Rational constant_term() const;
    std::size_t size() const noexcept { return terms_.size(); }

    /// Largest term under the monomial order; requires nonzero.
    const std::pair<const Monomial, Rational>& leading() const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    Polynomial operator-() const;
    Polynomial times(const Monomial& m) const;
    Polynomial pow(unsigned e) const;

    /// Monomial content: componentwise minimum exponent over all terms.
    Monomial monomial_content() const;
    /// Positive rational c such that this/c has coprime integer coefficients.
    Rational content() const;

    /// Quotient when `divisor` divides this exactly, nullopt otherwise.
    /// Both operands may be Laurent; the divisor must be nonzero.
    std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;

    std::set<Symbol> symbols() const;
    Rational evaluate(const std::map<Symbol, Rational>& point) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) noexcept { return a.terms_ == b.terms_; }
    friend int compare(const Polynomial& a, const Polynomial& b) noexcept;
    friend bool operator<(const Polynomial& a, const Polynomial& b) noexcept { return compare(a, b) < 0; }

    std::string to_string() const;

  private:
    Terms terms_;
    void add_term(const Monomial& m, const Rational& c);
};

/// Settings for randomized identity checks.
struct SampleConfig {
    int count = 20;
    std::uint64_t seed = 7;
    long magnitude = 1000;
    int max_retries = 200;
};

/// Zero-testing strategy. Expand mode is a proof; sample mode evaluates at
/// random rational points and can only err towards "zero".
struct ZeroTest {
    enum class Kind { expand, sample };
    Kind kind = Kind::expand;
    SampleConfig sample{};

    static ZeroTest expand() { return {}; }
    static ZeroTest sampled(int count, std::uint64_t seed) {
        ZeroTest z;
        z.kind = Kind::sample;
        z.sample.count = count;
        z.sample.seed = seed;
        return z;
    }
    bool is_expand() const noexcept { return kind == Kind::expand; }
    std::string label() const { return is_expand() ? "expand" : "sample"; }
};

/// Draws rational points with bounded numerator/denominator.
class PointSampler {
  public:
    explicit PointSampler(std::uint64_t seed, long magnitude = 1000) : rng_(seed), magnitude_(magnitude) {}
    Rational draw();
    std::map<Symbol, Rational> draw(const std::set<Symbol>& symbols);

  private:
    std::mt19937_64 rng_;
    long magnitude_;
};

/// Element of the coefficient field: a Laurent polynomial numerator over a
/// product of polynomial denominator factors.
///
/// Denominator factors carry no monomial content, have coprime integer
/// coefficients and a positive leading coefficient; they are kept sorted.
/// No multivariate gcd is computed, so two equal values can differ in
/// representation; equality is decided by subtracting and testing the
/// numerator for literal cancellation.
class ScalarExpr {
  public:
    using Factors = std::vector<std::pair<Polynomial, int>>;

    ScalarExpr() = default;
    ScalarExpr(long c) : num_(c) {}  // NOLINT(google-explicit-constructor)
    ScalarExpr(const Rational& c) : num_(c) {}  // NOLINT(google-explicit-constructor)
    ScalarExpr(Symbol s) : num_(s) {}  // NOLINT(google-explicit-constructor)
    explicit ScalarExpr(Polynomial p) : num_(std::move(p)) {}
    ScalarExpr(Polynomial num, const Polynomial& den);

    static ScalarExpr symbol(std::string_view name) { return ScalarExpr(Symbol::named(name)); }
    /// sqrt(phi_ij) with s_ii = 1 and s_ji = 1 / s_ij.
    static ScalarExpr root(int i, int j);
    static ScalarExpr parse(std::string_view text);

    const Polynomial& numerator() const noexcept { return num_; }
    const Factors& denominator() const noexcept { return den_; }
    Polynomial denominator_product() const;

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_zero(const ZeroTest& mode) const;
    bool is_constant() const noexcept { return den_.empty() && num_.is_constant(); }
    std::optional<Rational> as_rational() const;
    bool is_one() const;

    ScalarExpr& operator+=(const ScalarExpr& o);
    ScalarExpr& operator-=(const ScalarExpr& o);
    ScalarExpr& operator*=(const ScalarExpr& o);
    ScalarExpr& operator/=(const ScalarExpr& o);
    friend ScalarExpr operator+(ScalarExpr a, const ScalarExpr& b) { return a += b; }
    friend ScalarExpr operator-(ScalarExpr a, const ScalarExpr& b) { return a -= b; }
    friend ScalarExpr operator*(ScalarExpr a, const ScalarExpr& b) { return a *= b; }
    friend ScalarExpr operator/(ScalarExpr a, const ScalarExpr& b) { return a /= b; }
    ScalarExpr operator-() const;
    ScalarExpr inverse() const;
    ScalarExpr pow(int e) const;

    /// Mathematical equality (expand mode).
    friend bool operator==(const ScalarExpr& a, const ScalarExpr& b);
    friend bool operator!=(const ScalarExpr& a, const ScalarExpr& b) { return !(a == b); }
    /// Representation identity, cheaper than operator==.
    bool same_representation(const ScalarExpr& o) const noexcept { return num_ == o.num_ && den_ == o.den_; }

    std::set<Symbol> symbols() const;
    bool depends_on(Symbol s) const;
    Rational eval(const std::map<Symbol, Rational>& point) const;
    /// Simultaneous substitution; symbols absent from the map stay.
    ScalarExpr substitute(const std::map<Symbol, ScalarExpr>& values) const;
    ScalarExpr substitute(const std::map<Symbol, Rational>& values) const;

    std::string to_string() const;

  private:
    Polynomial num_;
    Factors den_;

    void cancel();
    void absorb_denominator(const Polynomial& p, int multiplicity);
};

std::ostream& operator<<(std::ostream& os, const ScalarExpr& e);

/// Square root of a value that is a monomial with even exponents times a
/// square rational; nullopt otherwise.
std::optional<ScalarExpr> exact_sqrt(const ScalarExpr& e);

/// Canonical spectral and colour parameter symbols.
namespace params {
Symbol lambda();
Symbol mu();
Symbol nu();
Symbol alpha();
Symbol beta();
Symbol gamma();
Symbol q();
Symbol h();
}  // namespace params

}  // namespace ybt

#endif  // YBT_SCALAR_HPP
