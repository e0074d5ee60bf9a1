#include "ybt/tensor.hpp"

#include <algorithm>
#include <unordered_map>

namespace ybt {

Operator::Operator(std::vector<int> site_dims) : dims_(std::move(site_dims)) {
    for (int d : dims_) {
        if (d < 1) throw Error("site dimension must be positive");
        size_ *= static_cast<std::size_t>(d);
    }
}

Operator Operator::identity(std::vector<int> site_dims) {
    Operator op(std::move(site_dims));
    for (std::size_t i = 0; i < op.size_; ++i) op.entries_.emplace(Key{i, i}, ScalarExpr(1));
    return op;
}

Operator Operator::unit(int N, int i, int j) {
    if (i < 1 || i > N || j < 1 || j > N) throw Error("matrix unit index out of range");
    Operator op({N});
    op.set_flat(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), ScalarExpr(1));
    return op;
}

Operator Operator::permutation(int N) {
    Operator op({N, N});
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) op.set({i, j}, {j, i}, ScalarExpr(1));
    return op;
}

std::size_t Operator::flatten(const MultiIndex& idx) const {
    if (idx.size() != dims_.size()) throw Error("multi-index length does not match operator sites");
    std::size_t flat = 0;
    for (std::size_t m = 0; m < idx.size(); ++m) {
        if (idx[m] < 1 || idx[m] > dims_[m]) throw Error("multi-index component out of range");
        flat = flat * static_cast<std::size_t>(dims_[m]) + static_cast<std::size_t>(idx[m] - 1);
    }
    return flat;
}

MultiIndex Operator::unflatten(std::size_t flat) const {
    MultiIndex idx(dims_.size());
    for (std::size_t m = dims_.size(); m-- > 0;) {
        auto d = static_cast<std::size_t>(dims_[m]);
        idx[m] = static_cast<int>(flat % d) + 1;
        flat /= d;
    }
    return idx;
}

ScalarExpr Operator::at_flat(std::size_t row, std::size_t col) const {
    auto it = entries_.find({row, col});
    return it == entries_.end() ? ScalarExpr() : it->second;
}

void Operator::set_flat(std::size_t row, std::size_t col, ScalarExpr value) {
    if (row >= size_ || col >= size_) throw Error("operator entry out of range");
    if (value.is_zero())
        entries_.erase({row, col});
    else
        entries_[{row, col}] = std::move(value);
}

void Operator::add_to(std::size_t row, std::size_t col, const ScalarExpr& value) {
    if (value.is_zero()) return;
    auto [it, inserted] = entries_.try_emplace({row, col}, value);
    if (!inserted) {
        it->second += value;
        if (it->second.is_zero()) entries_.erase(it);
    }
}

void Operator::require_same_shape(const Operator& o, const char* what) const {
    if (dims_ != o.dims_) throw Error(std::string("shape mismatch in ") + what);
}

Operator& Operator::operator+=(const Operator& o) {
    require_same_shape(o, "addition");
    for (const auto& [k, v] : o.entries_) add_to(k.first, k.second, v);
    return *this;
}

Operator& Operator::operator-=(const Operator& o) {
    require_same_shape(o, "subtraction");
    for (const auto& [k, v] : o.entries_) add_to(k.first, k.second, -v);
    return *this;
}

Operator& Operator::operator*=(const ScalarExpr& c) {
    if (c.is_zero()) {
        entries_.clear();
        return *this;
    }
    for (auto& [k, v] : entries_) v *= c;
    return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
    a.require_same_shape(b, "composition");
    std::unordered_map<std::size_t, std::vector<std::pair<std::size_t, const ScalarExpr*>>> rows_of_b;
    for (const auto& [k, v] : b.entries_) rows_of_b[k.first].emplace_back(k.second, &v);
    Operator out(a.dims_);
    for (const auto& [k, v] : a.entries_) {
        auto it = rows_of_b.find(k.second);
        if (it == rows_of_b.end()) continue;
        for (const auto& [col, bv] : it->second) out.add_to(k.first, col, v * *bv);
    }
    return out;
}

Operator Operator::transform(const std::function<ScalarExpr(const ScalarExpr&)>& fn) const {
    Operator out(dims_);
    for (const auto& [k, v] : entries_) out.set_flat(k.first, k.second, fn(v));
    return out;
}

Operator Operator::substitute(const std::map<Symbol, ScalarExpr>& values) const {
    return transform([&](const ScalarExpr& e) { return e.substitute(values); });
}

Operator Operator::evaluate(const std::map<Symbol, Rational>& point) const {
    return transform([&](const ScalarExpr& e) { return ScalarExpr(e.eval(point)); });
}

std::set<Symbol> Operator::symbols() const {
    std::set<Symbol> out;
    for (const auto& [k, v] : entries_) {
        auto s = v.symbols();
        out.insert(s.begin(), s.end());
    }
    return out;
}

std::optional<Operator::Key> Operator::first_nonzero(const ZeroTest& mode) const {
    for (const auto& [k, v] : entries_)
        if (!v.is_zero(mode)) return k;
    return std::nullopt;
}

bool Operator::equals_zero(const ZeroTest& mode) const { return !first_nonzero(mode).has_value(); }

bool Operator::equals(const Operator& o, const ZeroTest& mode) const { return (*this - o).equals_zero(mode); }

Operator kron(const Operator& a, const Operator& b) {
    std::vector<int> dims = a.site_dims();
    dims.insert(dims.end(), b.site_dims().begin(), b.site_dims().end());
    Operator out(dims);
    const std::size_t nb = b.dimension();
    for (const auto& [ka, va] : a.entries())
        for (const auto& [kb, vb] : b.entries())
            out.set_flat(ka.first * nb + kb.first, ka.second * nb + kb.second, va * vb);
    return out;
}

Operator embed(const Operator& a, const std::vector<int>& positions, const std::vector<int>& chain_dims) {
    const int chain_len = static_cast<int>(chain_dims.size());
    if (positions.size() != a.sites()) throw Error("embed: operator site count does not match positions");
    std::vector<bool> used(chain_dims.size(), false);
    for (std::size_t m = 0; m < positions.size(); ++m) {
        int p = positions[m];
        if (p < 1 || p > chain_len) throw Error("embed: position out of range");
        if (used[static_cast<std::size_t>(p - 1)]) throw Error("embed: position collision");
        used[static_cast<std::size_t>(p - 1)] = true;
        if (chain_dims[static_cast<std::size_t>(p - 1)] != a.site_dims()[m])
            throw Error("embed: site dimension mismatch");
    }
    std::vector<int> rest;
    std::vector<int> rest_dims;
    for (int p = 1; p <= chain_len; ++p)
        if (!used[static_cast<std::size_t>(p - 1)]) {
            rest.push_back(p);
            rest_dims.push_back(chain_dims[static_cast<std::size_t>(p - 1)]);
        }
    Operator out(chain_dims);
    Operator spectator(rest_dims);
    MultiIndex full(chain_dims.size());
    for (const auto& [k, v] : a.entries()) {
        MultiIndex r = a.unflatten(k.first), c = a.unflatten(k.second);
        for (std::size_t s = 0; s < spectator.dimension(); ++s) {
            MultiIndex spec = rest.empty() ? MultiIndex{} : spectator.unflatten(s);
            MultiIndex row(chain_dims.size()), col(chain_dims.size());
            for (std::size_t m = 0; m < positions.size(); ++m) {
                row[static_cast<std::size_t>(positions[m] - 1)] = r[m];
                col[static_cast<std::size_t>(positions[m] - 1)] = c[m];
            }
            for (std::size_t m = 0; m < rest.size(); ++m) {
                row[static_cast<std::size_t>(rest[m] - 1)] = spec[m];
                col[static_cast<std::size_t>(rest[m] - 1)] = spec[m];
            }
            out.set(row, col, v);
        }
    }
    return out;
}

}  // namespace ybt
