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

#include "ybt/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace ybt {

// ---------------------------------------------------------------------------
// Symbol
// ---------------------------------------------------------------------------

struct Symbol::Data {
    std::string name;
    std::uint64_t prefix = 0;
    bool root = false;
    int i = 0;
    int j = 0;
};

namespace {

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

std::unordered_map<std::string, std::unique_ptr<Symbol::Data>>& registry() {
    static std::unordered_map<std::string, std::unique_ptr<Symbol::Data>> r;
    return r;
}

// Parses "<prefix><i>_<j>" with positive integers.
std::optional<std::pair<int, int>> parse_index_pair(std::string_view name, std::string_view prefix) {
    if (name.substr(0, prefix.size()) != prefix) return std::nullopt;
    auto rest = name.substr(prefix.size());
    auto us = rest.find('_');
    if (us == std::string_view::npos || us == 0 || us + 1 >= rest.size()) return std::nullopt;
    int i = 0, j = 0;
    auto a = rest.substr(0, us), b = rest.substr(us + 1);
    auto r1 = std::from_chars(a.data(), a.data() + a.size(), i);
    auto r2 = std::from_chars(b.data(), b.data() + b.size(), j);
    if (r1.ec != std::errc{} || r1.ptr != a.data() + a.size()) return std::nullopt;
    if (r2.ec != std::errc{} || r2.ptr != b.data() + b.size()) return std::nullopt;
    if (i < 1 || j < 1) return std::nullopt;
    return std::pair{i, j};
}

}  // namespace

Symbol Symbol::named(std::string_view name) {
    if (name.empty()) throw ParseError("empty symbol name");
    std::lock_guard lock(registry_mutex());
    auto& reg = registry();
    std::string key(name);
    if (auto it = reg.find(key); it != reg.end()) return Symbol(it->second.get(), it->second->prefix);
    auto d = std::make_unique<Data>();
    d->name = key;
    for (std::size_t b = 0; b < 8; ++b)
        d->prefix = (d->prefix << 8) | (b < key.size() ? static_cast<unsigned char>(key[b]) : 0u);
    if (auto ij = parse_index_pair(name, "s_")) {
        if (ij->first >= ij->second)
            throw ParseError("root symbol " + key + " must have i < j; use ScalarExpr::root for other orders");
        d->root = true;
        d->i = ij->first;
        d->j = ij->second;
    }
    const Data* p = d.get();
    reg.emplace(std::move(key), std::move(d));
    return Symbol(p, p->prefix);
}

Symbol Symbol::root(int i, int j) {
    if (i < 1 || i >= j) throw Error("root symbol requires 1 <= i < j");
    return named("s_" + std::to_string(i) + "_" + std::to_string(j));
}

const std::string& Symbol::name() const {
    if (!data_) throw Error("use of an invalid symbol");
    return data_->name;
}

bool Symbol::is_root() const noexcept { return data_ && data_->root; }

std::pair<int, int> Symbol::root_indices() const {
    if (!is_root()) throw Error(name() + " is not a root symbol");
    return {data_->i, data_->j};
}

bool Symbol::name_less(Symbol a, Symbol b) noexcept {
    if (!a.data_) return b.data_ != nullptr;
    if (!b.data_) return false;
    return a.data_->name < b.data_->name;
}

std::ostream& operator<<(std::ostream& os, Symbol s) { return os << s.name(); }

namespace params {
Symbol lambda() { static const Symbol s = Symbol::named("lambda"); return s; }
Symbol mu() { static const Symbol s = Symbol::named("mu"); return s; }
Symbol nu() { static const Symbol s = Symbol::named("nu"); return s; }
Symbol alpha() { static const Symbol s = Symbol::named("alpha"); return s; }
Symbol beta() { static const Symbol s = Symbol::named("beta"); return s; }
Symbol gamma() { static const Symbol s = Symbol::named("gamma"); return s; }
Symbol q() { static const Symbol s = Symbol::named("q"); return s; }
Symbol h() { static const Symbol s = Symbol::named("h"); return s; }
}  // namespace params

// ---------------------------------------------------------------------------
// Monomial
// ---------------------------------------------------------------------------

Monomial::Monomial(Symbol s, int exponent) {
    if (exponent != 0) factors_.emplace_back(s, exponent);
}

int Monomial::exponent(Symbol s) const noexcept {
    for (const auto& [sym, e] : factors_)
        if (sym == s) return e;
    return 0;
}

int Monomial::total_degree() const noexcept {
    int d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
}

bool Monomial::is_polynomial() const noexcept {
    return std::all_of(factors_.begin(), factors_.end(), [](const auto& f) { return f.second > 0; });
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin(), j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
        if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
            r.factors_.push_back(*i++);
        } else if (i == a.factors_.end() || j->first < i->first) {
            r.factors_.push_back(*j++);
        } else {
            int e = i->second + j->second;
            if (e != 0) r.factors_.emplace_back(i->first, e);
            ++i;
            ++j;
        }
    }
    return r;
}

Monomial Monomial::inverse() const {
    Monomial r = *this;
    for (auto& f : r.factors_) f.second = -f.second;
    return r;
}

Monomial Monomial::pow(int e) const {
    if (e == 0) return {};
    Monomial r = *this;
    for (auto& f : r.factors_) f.second *= e;
    return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    auto i = a.factors_.begin(), j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
        if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
            if (i->second < 0) r.factors_.push_back(*i);
            ++i;
        } else if (i == a.factors_.end() || j->first < i->first) {
            if (j->second < 0) r.factors_.push_back(*j);
            ++j;
        } else {
            int e = std::min(i->second, j->second);
            if (e != 0) r.factors_.emplace_back(i->first, e);
            ++i;
            ++j;
        }
    }
    return r;
}

bool Monomial::divides(const Monomial& other) const noexcept {
    auto i = factors_.begin(), j = other.factors_.begin();
    while (i != factors_.end() || j != other.factors_.end()) {
        if (j == other.factors_.end() || (i != factors_.end() && i->first < j->first)) {
            if (i->second > 0) return false;
            ++i;
        } else if (i == factors_.end() || j->first < i->first) {
            if (j->second < 0) return false;
            ++j;
        } else {
            if (i->second > j->second) return false;
            ++i;
            ++j;
        }
    }
    return true;
}

int compare(const Monomial& a, const Monomial& b) noexcept {
    auto i = a.factors_.begin(), j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
        int ea = 0, eb = 0;
        if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
            ea = i->second;
            ++i;
        } else if (i == a.factors_.end() || j->first < i->first) {
            eb = j->second;
            ++j;
        } else {
            ea = i->second;
            eb = j->second;
            ++i;
            ++j;
        }
        if (ea != eb) return ea < eb ? -1 : 1;
    }
    return 0;
}

std::string Monomial::to_string() const {
    if (factors_.empty()) return "1";
    std::string out;
    for (const auto& [s, e] : factors_) {
        if (!out.empty()) out += '*';
        out += s.name();
        if (e != 1) out += '^' + std::to_string(e);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Polynomial
// ---------------------------------------------------------------------------

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& [s, e] : m.factors()) {
        h ^= s.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

Polynomial::Polynomial(const Rational& c) {
    if (c != 0) terms_.emplace(Monomial{}, c);
}

Polynomial::Polynomial(Symbol s) { terms_.emplace(Monomial(s), Rational(1)); }

Polynomial::Polynomial(const Monomial& m, const Rational& c) {
    if (c != 0) terms_.emplace(m, c);
}

bool Polynomial::is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

const std::pair<const Monomial, Rational>& Polynomial::leading() const {
    if (terms_.empty()) throw Error("leading term of zero polynomial");
    return *terms_.rbegin();
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    if (a.is_zero() || b.is_zero()) return r;
    if (a.size() == 1 || b.size() == 1) {
        const Polynomial& single = a.size() == 1 ? a : b;
        const Polynomial& other = a.size() == 1 ? b : a;
        const auto& [m, c] = *single.terms_.begin();
        for (const auto& [mo, co] : other.terms_) r.terms_.emplace_hint(r.terms_.end(), mo * m, co * c);
        return r;
    }
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            auto [it, inserted] = acc.try_emplace(ma * mb, ca * cb);
            if (!inserted) it->second += ca * cb;
        }
    std::vector<std::pair<Monomial, Rational>> sorted;
    sorted.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) sorted.emplace_back(m, std::move(c));
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [m, c] : sorted) r.terms_.emplace_hint(r.terms_.end(), std::move(m), std::move(c));
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

Polynomial Polynomial::times(const Monomial& m) const {
    if (m.is_one()) return *this;
    Polynomial r;
    for (const auto& [mm, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, c);
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result(1);
    Polynomial base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return result;
}

Monomial Polynomial::monomial_content() const {
    if (terms_.empty()) return {};
    Monomial g = terms_.begin()->first;
    for (const auto& [m, c] : terms_) g = Monomial::gcd(g, m);
    return g;
}

Rational Polynomial::content() const {
    if (terms_.empty()) return Rational(1);
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [m, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    }
    Rational r(num_gcd, den_lcm);
    r.canonicalize();
    return r;
}

namespace {

// Per-symbol maximum exponent, used as a cheap divisibility filter.
std::map<Symbol, int> max_exponents(const Polynomial& p) {
    std::map<Symbol, int> out;
    for (const auto& [m, c] : p.terms())
        for (const auto& [s, e] : m.factors()) {
            auto [it, ins] = out.try_emplace(s, e);
            if (!ins) it->second = std::max(it->second, e);
        }
    return out;
}

}  // namespace

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw DomainError("polynomial division by zero");
    if (is_zero()) return Polynomial{};
    if (divisor.is_constant()) {
        Polynomial r = *this;
        r *= 1 / divisor.constant_term();
        return r;
    }
    Monomial sn = monomial_content(), sd = divisor.monomial_content();
    Polynomial n = times(sn.inverse());
    Polynomial d = divisor.times(sd.inverse());

    // Cheap filters: degree bounds and trailing monomials.
    auto dn = max_exponents(n);
    for (const auto& [s, e] : max_exponents(d)) {
        auto it = dn.find(s);
        if (it == dn.end() || it->second < e) return std::nullopt;
    }
    if (!d.terms_.begin()->first.divides(n.terms_.begin()->first)) return std::nullopt;

    const auto& [dm, dc] = d.leading();
    Polynomial quotient;
    Polynomial rem = std::move(n);
    while (!rem.is_zero()) {
        const auto& [rm, rc] = rem.leading();
        if (!dm.divides(rm)) return std::nullopt;
        Monomial m = rm * dm.inverse();
        Rational c = rc / dc;
        quotient.add_term(m, c);
        Polynomial step = d.times(m);
        step *= c;
        rem -= step;
    }
    return quotient.times(sn * sd.inverse());
}

std::set<Symbol> Polynomial::symbols() const {
    std::set<Symbol> out;
    for (const auto& [m, c] : terms_)
        for (const auto& f : m.factors()) out.insert(f.first);
    return out;
}

namespace {

Rational rational_pow(const Rational& base, int e) {
    if (e == 0) return Rational(1);
    if (e < 0) {
        if (base == 0) throw DomainError("zero raised to a negative power");
        return rational_pow(1 / base, -e);
    }
    Rational r(1), b = base;
    unsigned u = static_cast<unsigned>(e);
    while (u) {
        if (u & 1u) r *= b;
        u >>= 1u;
        if (u) b *= b;
    }
    return r;
}

}  // namespace

Rational Polynomial::evaluate(const std::map<Symbol, Rational>& point) const {
    Rational total(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (const auto& [s, e] : m.factors()) {
            auto it = point.find(s);
            if (it == point.end()) throw Error("no value supplied for symbol " + s.name());
            t *= rational_pow(it->second, e);
        }
        total += t;
    }
    return total;
}

int compare(const Polynomial& a, const Polynomial& b) noexcept {
    auto i = a.terms_.rbegin(), j = b.terms_.rbegin();
    for (; i != a.terms_.rend() && j != b.terms_.rend(); ++i, ++j) {
        if (int c = compare(i->first, j->first); c != 0) return c;
        if (i->second != j->second) return i->second < j->second ? -1 : 1;
    }
    if (i == a.terms_.rend() && j == b.terms_.rend()) return 0;
    return i == a.terms_.rend() ? -1 : 1;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        if (first) {
            if (neg) out += '-';
        } else {
            out += neg ? " - " : " + ";
        }
        first = false;
        if (m.is_one()) {
            out += a.get_str();
        } else {
            if (a != 1) out += a.get_str() + '*';
            out += m.to_string();
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// PointSampler
// ---------------------------------------------------------------------------

Rational PointSampler::draw() {
    std::uniform_int_distribution<long> num(1, magnitude_);
    std::uniform_int_distribution<long> den(1, magnitude_);
    std::bernoulli_distribution neg(0.5);
    long n = num(rng_);
    long d = den(rng_);
    Rational r(neg(rng_) ? -n : n, d);
    r.canonicalize();
    return r;
}

std::map<Symbol, Rational> PointSampler::draw(const std::set<Symbol>& symbols) {
    std::map<Symbol, Rational> p;
    for (Symbol s : symbols) p.emplace(s, draw());
    return p;
}

// ---------------------------------------------------------------------------
// ScalarExpr
// ---------------------------------------------------------------------------

ScalarExpr::ScalarExpr(Polynomial num, const Polynomial& den) : num_(std::move(num)) {
    if (den.is_zero()) throw DomainError("division by an identically zero expression");
    absorb_denominator(den, 1);
    cancel();
}

ScalarExpr ScalarExpr::root(int i, int j) {
    if (i == j) return ScalarExpr(1);
    if (i < j) return ScalarExpr(Symbol::root(i, j));
    return ScalarExpr(Polynomial(Monomial(Symbol::root(j, i), -1), Rational(1)));
}

Polynomial ScalarExpr::denominator_product() const {
    Polynomial p(1);
    for (const auto& [f, k] : den_) p = p * f.pow(static_cast<unsigned>(k));
    return p;
}

void ScalarExpr::absorb_denominator(const Polynomial& p, int multiplicity) {
    Monomial m = p.monomial_content();
    Polynomial prim = p.times(m.inverse());
    Rational c = prim.content();
    if (prim.leading().second < 0) c = -c;
    prim *= 1 / c;
    num_ = num_.times(m.inverse().pow(multiplicity));
    num_ *= 1 / rational_pow(c, multiplicity);
    if (prim.is_constant()) return;

    // Split the new factor against existing ones, in both directions.
    for (auto& [f, k] : den_) {
        if (prim.is_constant()) break;
        while (!prim.is_constant()) {
            auto qo = prim.divide_exact(f);
            if (!qo) break;
            prim = std::move(*qo);
            k += multiplicity;
        }
    }
    if (prim.is_constant()) return;
    Factors refined;
    for (auto& [f, k] : den_) {
        if (!(f == prim)) {
            if (auto qo = f.divide_exact(prim); qo && !qo->is_constant()) {
                refined.emplace_back(std::move(*qo), k);
                refined.emplace_back(prim, k);
                continue;
            }
        }
        refined.emplace_back(std::move(f), k);
    }
    refined.emplace_back(std::move(prim), multiplicity);
    std::sort(refined.begin(), refined.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    den_.clear();
    for (auto& [f, k] : refined) {
        if (!den_.empty() && den_.back().first == f)
            den_.back().second += k;
        else
            den_.emplace_back(std::move(f), k);
    }
}

void ScalarExpr::cancel() {
    if (den_.empty()) return;
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    for (auto& [f, k] : den_) {
        while (k > 0) {
            auto qo = num_.divide_exact(f);
            if (!qo) break;
            num_ = std::move(*qo);
            --k;
        }
    }
    den_.erase(std::remove_if(den_.begin(), den_.end(), [](const auto& e) { return e.second == 0; }), den_.end());
}

bool ScalarExpr::is_zero(const ZeroTest& mode) const {
    if (mode.is_expand() || num_.is_zero()) return num_.is_zero();
    auto syms = symbols();
    PointSampler sampler(mode.sample.seed, mode.sample.magnitude);
    int accepted = 0, tries = 0;
    while (accepted < mode.sample.count) {
        if (tries++ > mode.sample.count + mode.sample.max_retries)
            throw DomainError("could not find a denominator-safe sample point after bounded retries");
        auto point = sampler.draw(syms);
        Rational value;
        try {
            value = eval(point);
        } catch (const DomainError&) {
            continue;
        }
        if (value != 0) return false;
        ++accepted;
    }
    return true;
}

std::optional<Rational> ScalarExpr::as_rational() const {
    if (!is_constant()) return std::nullopt;
    return num_.constant_term();
}

bool ScalarExpr::is_one() const {
    auto r = as_rational();
    return r && *r == 1;
}

namespace {

// Merge of two sorted factor lists with multiplicity combined by `op`.
template <class Op>
ScalarExpr::Factors merge_factors(const ScalarExpr::Factors& a, const ScalarExpr::Factors& b, Op op) {
    ScalarExpr::Factors out;
    auto i = a.begin(), j = b.begin();
    while (i != a.end() || j != b.end()) {
        if (j == b.end() || (i != a.end() && i->first < j->first)) {
            out.emplace_back(i->first, op(i->second, 0));
            ++i;
        } else if (i == a.end() || j->first < i->first) {
            out.emplace_back(j->first, op(0, j->second));
            ++j;
        } else {
            out.emplace_back(i->first, op(i->second, j->second));
            ++i;
            ++j;
        }
    }
    return out;
}

Polynomial factor_power_product(const ScalarExpr::Factors& lcm, const ScalarExpr::Factors& have) {
    Polynomial p(1);
    for (const auto& [f, k] : lcm) {
        int own = 0;
        for (const auto& [g, kk] : have)
            if (g == f) own = kk;
        if (k > own) p = p * f.pow(static_cast<unsigned>(k - own));
    }
    return p;
}

}  // namespace

ScalarExpr& ScalarExpr::operator+=(const ScalarExpr& o) {
    if (o.num_.is_zero()) return *this;
    if (num_.is_zero()) return *this = o;
    if (den_ == o.den_) {
        num_ += o.num_;
        cancel();
        return *this;
    }
    Factors lcm = merge_factors(den_, o.den_, [](int x, int y) { return std::max(x, y); });
    Polynomial n = num_ * factor_power_product(lcm, den_);
    n += o.num_ * factor_power_product(lcm, o.den_);
    num_ = std::move(n);
    den_ = std::move(lcm);
    cancel();
    return *this;
}

ScalarExpr& ScalarExpr::operator-=(const ScalarExpr& o) { return *this += -o; }

ScalarExpr& ScalarExpr::operator*=(const ScalarExpr& o) {
    if (num_.is_zero()) return *this;
    if (o.num_.is_zero()) return *this = ScalarExpr();
    num_ = num_ * o.num_;
    if (!o.den_.empty()) den_ = merge_factors(den_, o.den_, [](int x, int y) { return x + y; });
    cancel();
    return *this;
}

ScalarExpr& ScalarExpr::operator/=(const ScalarExpr& o) { return *this *= o.inverse(); }

ScalarExpr ScalarExpr::operator-() const {
    ScalarExpr r = *this;
    r.num_ = -r.num_;
    return r;
}

ScalarExpr ScalarExpr::inverse() const {
    if (num_.is_zero()) throw DomainError("division by an identically zero expression");
    ScalarExpr r(denominator_product());
    r.absorb_denominator(num_, 1);
    r.cancel();
    return r;
}

ScalarExpr ScalarExpr::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    ScalarExpr result(1), base = *this;
    unsigned u = static_cast<unsigned>(e);
    while (u) {
        if (u & 1u) result *= base;
        u >>= 1u;
        if (u) base *= base;
    }
    return result;
}

bool operator==(const ScalarExpr& a, const ScalarExpr& b) {
    if (a.same_representation(b)) return true;
    return (a - b).is_zero();
}

std::set<Symbol> ScalarExpr::symbols() const {
    auto s = num_.symbols();
    for (const auto& [f, k] : den_) {
        auto fs = f.symbols();
        s.insert(fs.begin(), fs.end());
    }
    return s;
}

bool ScalarExpr::depends_on(Symbol s) const { return symbols().count(s) != 0; }

Rational ScalarExpr::eval(const std::map<Symbol, Rational>& point) const {
    Rational den(1);
    for (const auto& [f, k] : den_) {
        Rational v = f.evaluate(point);
        if (v == 0) throw DomainError("denominator vanishes at the evaluation point");
        den *= rational_pow(v, k);
    }
    Rational num;
    try {
        num = num_.evaluate(point);
    } catch (const DomainError&) {
        throw DomainError("denominator vanishes at the evaluation point");
    }
    return num / den;
}

ScalarExpr ScalarExpr::substitute(const std::map<Symbol, ScalarExpr>& values) const {
    std::map<std::pair<Symbol, int>, ScalarExpr> power_cache;
    auto power = [&](Symbol s, int e) -> const ScalarExpr& {
        auto key = std::pair{s, e};
        if (auto it = power_cache.find(key); it != power_cache.end()) return it->second;
        auto vit = values.find(s);
        ScalarExpr base = vit == values.end() ? ScalarExpr(s) : vit->second;
        return power_cache.emplace(key, base.pow(e)).first->second;
    };
    auto subst_poly = [&](const Polynomial& p) {
        // Terms whose symbols are all untouched stay polynomial and are summed directly.
        Polynomial untouched;
        ScalarExpr acc;
        for (const auto& [m, c] : p.terms()) {
            bool touched = std::any_of(m.factors().begin(), m.factors().end(),
                                       [&](const auto& f) { return values.count(f.first) != 0; });
            if (!touched) {
                untouched += Polynomial(m, c);
                continue;
            }
            ScalarExpr t(c);
            Monomial rest;
            for (const auto& [s, e] : m.factors()) {
                if (values.count(s))
                    t *= power(s, e);
                else
                    rest = rest * Monomial(s, e);
            }
            if (!rest.is_one()) t *= ScalarExpr(Polynomial(rest, Rational(1)));
            acc += t;
        }
        acc += ScalarExpr(std::move(untouched));
        return acc;
    };
    ScalarExpr result = subst_poly(num_);
    for (const auto& [f, k] : den_) {
        ScalarExpr fd = subst_poly(f);
        if (fd.is_zero()) throw DomainError("substitution makes a denominator vanish identically");
        result /= fd.pow(k);
    }
    return result;
}

ScalarExpr ScalarExpr::substitute(const std::map<Symbol, Rational>& values) const {
    std::map<Symbol, ScalarExpr> v;
    for (const auto& [s, r] : values) v.emplace(s, ScalarExpr(r));
    return substitute(v);
}

std::string ScalarExpr::to_string() const {
    if (den_.empty()) return num_.to_string();
    std::string out = "(" + num_.to_string() + ")/(";
    bool first = true;
    for (const auto& [f, k] : den_) {
        if (!first) out += '*';
        first = false;
        out += "(" + f.to_string() + ")";
        if (k != 1) out += "^" + std::to_string(k);
    }
    out += ")";
    return out;
}

std::ostream& operator<<(std::ostream& os, const ScalarExpr& e) { return os << e.to_string(); }

std::optional<ScalarExpr> exact_sqrt(const ScalarExpr& e) {
    if (e.is_zero()) return ScalarExpr(0);
    const auto& num = e.numerator();
    if (num.size() != 1) return std::nullopt;
    const auto& [m, c] = *num.terms().begin();
    if (c < 0) return std::nullopt;
    if (!mpz_perfect_square_p(c.get_num_mpz_t()) || !mpz_perfect_square_p(c.get_den_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), c.get_num_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), c.get_den_mpz_t());
    Monomial half;
    for (const auto& [s, ex] : m.factors()) {
        if (ex % 2 != 0) return std::nullopt;
        half = half * Monomial(s, ex / 2);
    }
    Polynomial root_num(half, Rational(rn, rd));
    Polynomial root_den(1);
    for (const auto& [f, k] : e.denominator()) {
        if (k % 2 != 0) return std::nullopt;
        root_den = root_den * f.pow(static_cast<unsigned>(k / 2));
    }
    return ScalarExpr(std::move(root_num), root_den);
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

class ExprParser {
  public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    ScalarExpr parse() {
        ScalarExpr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ScalarExpr expr() {
        ScalarExpr e = term();
        for (;;) {
            if (accept('+'))
                e += term();
            else if (accept('-'))
                e -= term();
            else
                return e;
        }
    }

    ScalarExpr term() {
        ScalarExpr e = unary();
        for (;;) {
            if (accept('*')) {
                e *= unary();
            } else if (accept('/')) {
                ScalarExpr d = unary();
                if (d.is_zero()) fail("division by zero");
                e /= d;
            } else {
                return e;
            }
        }
    }

    ScalarExpr unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    long integer_exponent() {
        bool paren = accept('(');
        bool neg = false;
        if (accept('-'))
            neg = true;
        else
            accept('+');
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer exponent");
        long v = 0;
        auto r = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (r.ec != std::errc{} || v > 100000) fail("exponent out of range");
        if (paren && !accept(')')) fail("expected ')'");
        return neg ? -v : v;
    }

    ScalarExpr power() {
        ScalarExpr base = atom();
        if (accept('^')) return base.pow(static_cast<int>(integer_exponent()));
        return base;
    }

    ScalarExpr atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ScalarExpr e = expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return ScalarExpr(Rational(mpz_class(std::string(text_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            return identifier(text_.substr(start, pos_ - start));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    static ScalarExpr identifier(std::string_view name) {
        if (auto ij = parse_index_pair(name, "s_")) return ScalarExpr::root(ij->first, ij->second);
        if (auto ij = parse_index_pair(name, "phi_")) return ScalarExpr::root(ij->first, ij->second).pow(2);
        return ScalarExpr::symbol(name);
    }
};

}  // namespace

ScalarExpr ScalarExpr::parse(std::string_view text) { return ExprParser(text).parse(); }

}  // namespace ybt
