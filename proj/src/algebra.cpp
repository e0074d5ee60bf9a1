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

#include "ybt/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace ybt {

// ---------------------------------------------------------------------------
// Alphabet
// ---------------------------------------------------------------------------

Alphabet::Alphabet(std::vector<std::string> names) {
    for (auto& n : names) add(n);
}

int Alphabet::add(const std::string& name) {
    if (name.empty()) throw ParseError("empty generator name");
    auto [it, inserted] = lookup_.emplace(name, static_cast<int>(names_.size()));
    if (!inserted) throw ParseError("duplicate generator '" + name + "'");
    names_.push_back(name);
    return it->second;
}

int Alphabet::index(const std::string& name) const {
    auto it = lookup_.find(name);
    if (it == lookup_.end()) throw ParseError("unknown generator '" + name + "'");
    return it->second;
}

std::string Alphabet::word_string(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) out += '*';
        out += name(w[k]);
    }
    return out;
}

Word Alphabet::parse_word(const std::vector<std::string>& letters) const {
    Word w;
    w.reserve(letters.size());
    for (const auto& l : letters) w.push_back(index(l));
    return w;
}

// ---------------------------------------------------------------------------
// FreeElement
// ---------------------------------------------------------------------------

FreeElement FreeElement::word(Word w, ScalarExpr c) {
    FreeElement e;
    e.add_term(w, c);
    return e;
}

ScalarExpr FreeElement::coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? ScalarExpr() : it->second;
}

const std::pair<const Word, ScalarExpr>& FreeElement::leading() const {
    if (terms_.empty()) throw Error("leading term of zero element");
    return *terms_.rbegin();
}

int FreeElement::max_degree() const {
    return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.size());
}

void FreeElement::add_term(const Word& w, const ScalarExpr& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

FreeElement& FreeElement::operator+=(const FreeElement& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

FreeElement& FreeElement::operator-=(const FreeElement& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

FreeElement& FreeElement::operator*=(const ScalarExpr& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, v] : terms_) v *= c;
    return *this;
}

FreeElement operator*(const FreeElement& a, const FreeElement& b) {
    FreeElement out;
    for (const auto& [wa, ca] : a.terms_)
        for (const auto& [wb, cb] : b.terms_) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out.add_term(w, ca * cb);
        }
    return out;
}

FreeElement FreeElement::operator-() const {
    FreeElement out = *this;
    for (auto& [w, c] : out.terms_) c = -c;
    return out;
}

FreeElement FreeElement::substitute(const std::function<FreeElement(int)>& image) const {
    std::map<int, FreeElement> cache;
    FreeElement out;
    for (const auto& [w, c] : terms_) {
        FreeElement prod = scalar(c);
        for (int g : w) {
            auto it = cache.find(g);
            if (it == cache.end()) it = cache.emplace(g, image(g)).first;
            prod = prod * it->second;
        }
        out += prod;
    }
    return out;
}

FreeElement FreeElement::map_coefficients(const std::function<ScalarExpr(const ScalarExpr&)>& fn) const {
    FreeElement out;
    for (const auto& [w, c] : terms_) out.add_term(w, fn(c));
    return out;
}

FreeElement FreeElement::monic() const {
    if (terms_.empty()) return *this;
    return *this * leading().second.inverse();
}

bool FreeElement::equals(const FreeElement& o) const {
    FreeElement d = *this - o;
    return d.is_zero();
}

std::string FreeElement::to_string(const Alphabet& a) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) out += " + ";
        first = false;
        std::string c = it->second.to_string();
        bool compound = c.find_first_of("+-", 1) != std::string::npos;
        std::string coeff = compound ? "(" + c + ")" : c;
        if (it->first.empty())
            out += coeff;
        else if (c == "1")
            out += a.word_string(it->first);
        else
            out += coeff + "*" + a.word_string(it->first);
    }
    return out;
}

// ---------------------------------------------------------------------------
// QuadraticPresentation
// ---------------------------------------------------------------------------

void QuadraticPresentation::add_rule(int a, int b, FreeElement right) {
    Word left{a, b};
    for (const auto& [w, c] : right.terms()) {
        if (!WordLess{}(w, left))
            throw Error("rule " + alphabet_.word_string(left) + " does not decrease the word order");
    }
    rules_[{a, b}] = std::move(right);
}

void QuadraticPresentation::add_rule(const std::string& a, const std::string& b, FreeElement right) {
    add_rule(alphabet_.index(a), alphabet_.index(b), std::move(right));
}

void QuadraticPresentation::add_commutation(int a, int b, const ScalarExpr& c) {
    add_rule(b, a, FreeElement::word({a, b}, c));
}

void QuadraticPresentation::set_rule_coefficient(int a, int b, const Word& w, const ScalarExpr& c) {
    auto it = rules_.find({a, b});
    if (it == rules_.end()) throw Error("no rule for " + alphabet_.word_string({a, b}));
    FreeElement right = it->second;
    right.add_term(w, c - right.coefficient(w));
    add_rule(a, b, std::move(right));
}

namespace {

// Largest word of e that is a pivot, strictly below bound when given.
const Word* next_pivot(const FreeElement& e, const std::map<Word, FreeElement, WordLess>& basis,
                       const Word* bound) {
    const auto& t = e.terms();
    auto it = bound ? t.lower_bound(*bound) : t.end();
    while (it != t.begin()) {
        --it;
        if (basis.count(it->first)) return &it->first;
    }
    return nullptr;
}

}  // namespace

QuadraticPresentation QuadraticPresentation::from_relations(const Alphabet& a,
                                                            const std::vector<FreeElement>& relations) {
    std::map<Word, FreeElement, WordLess> basis;  // keyed by leading word, monic
    for (FreeElement r : relations) {
        for (const auto& [w, c] : r.terms())
            if (w.size() != 2) throw Error("relation is not homogeneous quadratic: " + r.to_string(a));
        Word bound;
        const Word* p = next_pivot(r, basis, nullptr);
        while (p) {
            bound = *p;
            r -= basis.at(bound) * r.coefficient(bound);
            p = next_pivot(r, basis, &bound);
        }
        if (r.is_zero()) continue;
        r = r.monic();
        Word lead = r.leading().first;
        for (auto& [w, b] : basis) {
            ScalarExpr c = b.coefficient(lead);
            if (!c.is_zero()) b -= r * c;
        }
        basis.emplace(lead, std::move(r));
    }
    QuadraticPresentation p(a);
    for (auto& [lead, row] : basis) {
        FreeElement right = -(row - FreeElement::word(lead));
        p.add_rule(lead[0], lead[1], std::move(right));
    }
    return p;
}

QuadraticPresentation QuadraticPresentation::merged(const QuadraticPresentation& o) const {
    if (alphabet_.names() != o.alphabet_.names()) throw Error("cannot merge presentations over different alphabets");
    QuadraticPresentation out = *this;
    for (const auto& [k, v] : o.rules_) out.rules_[k] = v;
    return out;
}

FreeElement QuadraticPresentation::normal_form(const FreeElement& e, Strategy s) const {
    FreeElement::Terms pending = e.terms();
    FreeElement out;
    while (!pending.empty()) {
        auto node = pending.extract(std::prev(pending.end()));
        const Word& w = node.key();
        const ScalarExpr& c = node.mapped();
        if (c.is_zero()) continue;
        std::optional<std::size_t> pos;
        const FreeElement* rule = nullptr;
        for (std::size_t k = 0; k + 1 < w.size(); ++k) {
            std::size_t at = s == Strategy::leftmost ? k : w.size() - 2 - k;
            auto it = rules_.find({w[at], w[at + 1]});
            if (it != rules_.end()) {
                pos = at;
                rule = &it->second;
                break;
            }
        }
        if (!pos) {
            out.add_term(w, c);
            continue;
        }
        for (const auto& [rw, rc] : rule->terms()) {
            Word nw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(*pos));
            nw.insert(nw.end(), rw.begin(), rw.end());
            nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(*pos + 2), w.end());
            ScalarExpr add = c * rc;
            auto [it, inserted] = pending.emplace(nw, add);
            if (!inserted) it->second += add;
        }
    }
    return out;
}

std::vector<FreeElement> QuadraticPresentation::relations() const {
    std::vector<FreeElement> out;
    for (const auto& [k, right] : rules_) out.push_back(FreeElement::word({k.first, k.second}) - right);
    return out;
}

Json QuadraticPresentation::to_json() const {
    Json rules = Json::array();
    for (const auto& [k, right] : rules_) {
        Json rhs = Json::array();
        for (auto it = right.terms().rbegin(); it != right.terms().rend(); ++it) {
            Json word = Json::array();
            for (int g : it->first) word.push_back(alphabet_.name(g));
            rhs.push_back(Json::array({it->second.to_string(), word}));
        }
        rules.push_back(Json::array({Json::array({alphabet_.name(k.first), alphabet_.name(k.second)}), rhs}));
    }
    return Json{{"generators", alphabet_.names()}, {"rules", rules}};
}

QuadraticPresentation QuadraticPresentation::from_json(const Json& j) {
    try {
        QuadraticPresentation p(Alphabet(j.at("generators").get<std::vector<std::string>>()));
        for (const auto& rule : j.at("rules")) {
            Word left = p.alphabet_.parse_word(rule.at(0).get<std::vector<std::string>>());
            if (left.size() != 2) throw ParseError("rule left side must have two letters");
            FreeElement right;
            for (const auto& term : rule.at(1))
                right.add_term(p.alphabet_.parse_word(term.at(1).get<std::vector<std::string>>()),
                               ScalarExpr::parse(term.at(0).get<std::string>()));
            p.add_rule(left[0], left[1], std::move(right));
        }
        return p;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed presentation: ") + e.what());
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("malformed presentation: ") + e.what());
    }
}

std::optional<std::size_t> first_nonzero_reduction(const std::vector<FreeElement>& relations,
                                                   const QuadraticPresentation& p) {
    for (std::size_t k = 0; k < relations.size(); ++k)
        if (!p.normal_form(relations[k]).is_zero()) return k;
    return std::nullopt;
}

bool equivalent_relations(const Alphabet& a, const std::vector<FreeElement>& x, const std::vector<FreeElement>& y) {
    auto px = QuadraticPresentation::from_relations(a, x);
    auto py = QuadraticPresentation::from_relations(a, y);
    return !first_nonzero_reduction(y, px) && !first_nonzero_reduction(x, py);
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

namespace gen {
std::string T(int i, int j) { return "T_" + std::to_string(i) + "_" + std::to_string(j); }
std::string Tt(int i, int j) { return "Tt_" + std::to_string(i) + "_" + std::to_string(j); }
std::string tau(int i) { return "tau_" + std::to_string(i); }
std::string x(int i) { return "x_" + std::to_string(i); }
std::string y(int i) { return "y_" + std::to_string(i); }
}  // namespace gen

Alphabet gl_alphabet(int N, bool with_tau, bool with_plane) {
    Alphabet a;
    if (with_tau)
        for (int i = 1; i <= N; ++i) a.add(gen::tau(i));
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) a.add(gen::T(i, j));
    if (with_plane) {
        for (int i = 1; i <= N; ++i) a.add(gen::x(i));
        for (int i = 1; i <= N; ++i) a.add(gen::y(i));
    }
    return a;
}

Alphabet tilde_alphabet(int N) {
    Alphabet a;
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) a.add(gen::Tt(i, j));
    return a;
}

// ---------------------------------------------------------------------------
// RTT relations
// ---------------------------------------------------------------------------

std::vector<FreeElement> rtt_relations(int dim, const EntryTable& f, const EntryTable& g, const GeneratorTable& T1,
                                       const GeneratorTable& T2) {
    std::vector<FreeElement> out;
    std::vector<FreeElement> seen;
    for (int i = 1; i <= dim; ++i)
        for (int j = 1; j <= dim; ++j)
            for (int k = 1; k <= dim; ++k)
                for (int l = 1; l <= dim; ++l) {
                    FreeElement rel = T1(i, k) * T2(j, l) * f(i, j);
                    if (i != j) rel += T1(j, k) * T2(i, l) * g(i, j);
                    rel -= T2(j, l) * T1(i, k) * f(k, l);
                    if (k != l) rel -= T2(j, k) * T1(i, l) * g(l, k);
                    if (rel.is_zero()) continue;
                    FreeElement m = rel.monic();
                    bool dup = std::any_of(seen.begin(), seen.end(), [&](const FreeElement& s) { return s.equals(m); });
                    if (dup) continue;
                    seen.push_back(m);
                    out.push_back(std::move(m));
                }
    return out;
}

std::vector<FreeElement> generate_rtt_relations(const ParticleConservingR& R, bool spectralless, Alphabet& alphabet) {
    const int N = R.N();
    auto f = [&](int i, int j) { return R.f(i, j); };
    auto g = [&](int i, int j) { return i == j ? ScalarExpr() : R.g(i, j); };
    if (spectralless) {
        for (Symbol s : R.symbols())
            if (s == params::lambda() || s == params::mu() || s == params::alpha() || s == params::beta())
                throw Error("spectral parameterless relations need an R free of spectral parameters");
        alphabet = gl_alphabet(N);
        auto T = [&](int i, int j) { return FreeElement::letter(alphabet.index(gen::T(i, j))); };
        return rtt_relations(N, f, g, T, T);
    }
    alphabet = Alphabet();
    for (const char* arg : {"lambda", "mu"})
        for (int i = 1; i <= N; ++i)
            for (int j = 1; j <= N; ++j) alphabet.add(gen::T(i, j) + "(" + arg + ")");
    auto T1 = [&](int i, int j) { return FreeElement::letter(alphabet.index(gen::T(i, j) + "(lambda)")); };
    auto T2 = [&](int i, int j) { return FreeElement::letter(alphabet.index(gen::T(i, j) + "(mu)")); };
    return rtt_relations(N, f, g, T1, T2);
}

// ---------------------------------------------------------------------------
// Presentations
// ---------------------------------------------------------------------------

namespace {

FreeElement named_word(const Alphabet& a, const std::string& x, const std::string& y, const ScalarExpr& c) {
    return FreeElement::word({a.index(x), a.index(y)}, c);
}

// GL_q(N) rules, deformed by phi when a root table is given, on the letters
// produced by name(i, j).
void add_gl_rules(QuadraticPresentation& p, int N, const ScalarExpr& q, const RootTable& s,
                  const std::function<std::string(int, int)>& name) {
    const Alphabet& a = p.alphabet();
    auto phi = [&](int i, int j) { return s.phi(i, j); };
    ScalarExpr qq = q - q.inverse();
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
            for (int k = j + 1; k <= N; ++k) {
                // same row: T_ik T_ij -> q phi_kj T_ij T_ik
                p.add_rule(name(i, k), name(i, j), named_word(a, name(i, j), name(i, k), q * phi(k, j)));
            }
    for (int i = 1; i <= N; ++i)
        for (int l = i + 1; l <= N; ++l)
            for (int k = 1; k <= N; ++k)
                p.add_rule(name(l, k), name(i, k), named_word(a, name(i, k), name(l, k), q * phi(i, l)));
    for (int i = 1; i <= N; ++i)
        for (int l = i + 1; l <= N; ++l)
            for (int j = 1; j <= N; ++j)
                for (int k = j + 1; k <= N; ++k) {
                    p.add_rule(name(l, j), name(i, k), named_word(a, name(i, k), name(l, j), phi(i, l) * phi(j, k)));
                    FreeElement right = named_word(a, name(i, j), name(l, k), phi(k, j) * phi(i, l)) +
                                        named_word(a, name(i, k), name(l, j), phi(i, l) * qq);
                    p.add_rule(name(l, k), name(i, j), std::move(right));
                }
}

}  // namespace

QuadraticPresentation gl_q_presentation(int N, const ScalarExpr& q) {
    QuadraticPresentation p(gl_alphabet(N));
    add_gl_rules(p, N, q, RootTable::ones(N), gen::T);
    return p;
}

QuadraticPresentation multiparam_presentation(int N, const RootTable& s, const ScalarExpr& q) {
    QuadraticPresentation p(tilde_alphabet(N));
    add_gl_rules(p, N, q, s, gen::Tt);
    return p;
}

namespace {

void add_tau_rules(QuadraticPresentation& p, int N, const RootTable& s) {
    const Alphabet& a = p.alphabet();
    for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j) p.add_commutation(a.index(gen::tau(i)), a.index(gen::tau(j)));
    // tau_m T_kl = (s_ml / s_mk) T_kl tau_m
    for (int m = 1; m <= N; ++m)
        for (int k = 1; k <= N; ++k)
            for (int l = 1; l <= N; ++l)
                p.add_rule(gen::T(k, l), gen::tau(m), named_word(a, gen::tau(m), gen::T(k, l), s.s(m, k) / s.s(m, l)));
}

void add_plane_rules(QuadraticPresentation& p, int N, Plane plane, const RootTable& s, const ScalarExpr& q) {
    const Alphabet& a = p.alphabet();
    for (int i = 1; i <= N; ++i) {
        if (plane == Plane::exterior) p.add_rule(gen::x(i), gen::x(i), FreeElement());
        for (int j = i + 1; j <= N; ++j) {
            ScalarExpr c = plane == Plane::symmetric ? q : -q.inverse();
            p.add_rule(gen::x(j), gen::x(i), named_word(a, gen::x(i), gen::x(j), c));
            p.add_commutation(a.index(gen::y(i)), a.index(gen::y(j)));
        }
    }
    // x_k y_l = s_lk y_l x_k
    for (int k = 1; k <= N; ++k)
        for (int l = 1; l <= N; ++l) p.add_rule(gen::y(l), gen::x(k), named_word(a, gen::x(k), gen::y(l), s.s(k, l)));
}

}  // namespace

QuadraticPresentation extended_presentation(int N, const RootTable& s, const ScalarExpr& q) {
    QuadraticPresentation p(gl_alphabet(N, true));
    add_gl_rules(p, N, q, RootTable::ones(N), gen::T);
    add_tau_rules(p, N, s);
    return p;
}

std::string to_string(Plane p) { return p == Plane::symmetric ? "symmetric" : "exterior"; }

Plane plane_from_string(const std::string& s) {
    if (s == "symmetric") return Plane::symmetric;
    if (s == "exterior") return Plane::exterior;
    throw ParseError("unknown plane '" + s + "'");
}

QuadraticPresentation plane_presentation(int N, Plane plane, const RootTable& s, const ScalarExpr& q) {
    QuadraticPresentation p(gl_alphabet(N, true, true));
    add_plane_rules(p, N, plane, s, q);
    return p;
}

QuadraticPresentation coaction_presentation(int N, Plane plane, const RootTable& s, const ScalarExpr& q) {
    QuadraticPresentation p(gl_alphabet(N, true, true));
    add_gl_rules(p, N, q, RootTable::ones(N), gen::T);
    add_tau_rules(p, N, s);
    add_plane_rules(p, N, plane, s, q);
    const Alphabet& a = p.alphabet();
    std::vector<int> algebra, plane_letters;
    for (int i = 1; i <= N; ++i) {
        algebra.push_back(a.index(gen::tau(i)));
        plane_letters.push_back(a.index(gen::x(i)));
        plane_letters.push_back(a.index(gen::y(i)));
        for (int j = 1; j <= N; ++j) algebra.push_back(a.index(gen::T(i, j)));
    }
    for (int u : algebra)
        for (int v : plane_letters) p.add_commutation(u, v);
    return p;
}

RootTable SingleTau::roots() const {
    RootTable t(N);
    for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j)
            t.set(i, j, rho[static_cast<std::size_t>(i - 1)] / rho[static_cast<std::size_t>(j - 1)]);
    return t;
}

SingleTau SingleTau::generic(int N) {
    SingleTau st;
    st.N = N;
    for (int i = 1; i <= N; ++i) st.rho.push_back(ScalarExpr::symbol("rho_" + std::to_string(i)));
    return st;
}

QuadraticPresentation single_tau_presentation(const SingleTau& st, int sign, const ScalarExpr& q) {
    const int N = st.N;
    Alphabet a;
    a.add("tau");
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) a.add(gen::T(i, j));
    QuadraticPresentation p(a);
    add_gl_rules(p, N, q, RootTable::ones(N), gen::T);
    for (int k = 1; k <= N; ++k)
        for (int l = 1; l <= N; ++l) {
            ScalarExpr c = (st.rho[static_cast<std::size_t>(k - 1)] / st.rho[static_cast<std::size_t>(l - 1)]).pow(sign);
            p.add_rule(gen::T(k, l), "tau", named_word(p.alphabet(), "tau", gen::T(k, l), c.inverse()));
        }
    return p;
}

// ---------------------------------------------------------------------------
// Verifiers
// ---------------------------------------------------------------------------

namespace {

// Adds one check stating that every relation reduces to zero.
void check_all_zero(Report& report, const std::string& name, const std::vector<FreeElement>& relations,
                    const std::function<FreeElement(const FreeElement&)>& image, const QuadraticPresentation& target,
                    const Alphabet& source) {
    Json witness = nullptr;
    for (const auto& rel : relations) {
        FreeElement nf = target.normal_form(image(rel));
        if (!nf.is_zero()) {
            witness = Json{{"relation", rel.to_string(source)}, {"normal_form", nf.to_string(target.alphabet())}};
            break;
        }
    }
    report.add(name, witness.is_null(), Json{{"relations", relations.size()}}, witness);
}

Json root_json(const RootTable& s) {
    Json j = Json::object();
    for (int i = 1; i <= s.N(); ++i)
        for (int k = i + 1; k <= s.N(); ++k) j[std::to_string(i) + "," + std::to_string(k)] = s.s(i, k).to_string();
    return j;
}

}  // namespace

Report verify_realization_gl(int N, const RootTable& s, const QuadraticPresentation& extended) {
    Report report("verify-realization-gl");
    report.set_inputs(Json{{"N", N}, {"roots", root_json(s)}});
    const Alphabet& ext = extended.alphabet();
    QuadraticPresentation multi = multiparam_presentation(N, s);
    const Alphabet& til = multi.alphabet();
    auto letter = [&](const std::string& n) { return FreeElement::letter(ext.index(n)); };

    // Elementwise form s_ij^-1 tau_i tau_j T_ij.
    auto elementwise = [&](int g) {
        const std::string& n = til.name(g);
        int i = std::stoi(n.substr(3, n.find('_', 3) - 3));
        int j = std::stoi(n.substr(n.find('_', 3) + 1));
        return letter(gen::tau(i)) * letter(gen::tau(j)) * letter(gen::T(i, j)) * s.s(i, j).inverse();
    };
    // Matrix form (M T M)_ij with M = diag(tau).
    auto matrix = [&](int g) {
        const std::string& n = til.name(g);
        int i = std::stoi(n.substr(3, n.find('_', 3) - 3));
        int j = std::stoi(n.substr(n.find('_', 3) + 1));
        return letter(gen::tau(i)) * letter(gen::T(i, j)) * letter(gen::tau(j));
    };
    std::vector<FreeElement> rels = multi.relations();
    check_all_zero(report, "realization", rels, [&](const FreeElement& r) { return r.substitute(elementwise); },
                   extended, til);
    check_all_zero(report, "matrix-form", rels, [&](const FreeElement& r) { return r.substitute(matrix); }, extended,
                   til);

    Json witness = nullptr;
    for (int g = 0; g < static_cast<int>(til.size()); ++g) {
        FreeElement d = extended.normal_form(elementwise(g) - matrix(g));
        if (!d.is_zero()) {
            witness = Json{{"generator", til.name(g)}, {"difference", d.to_string(ext)}};
            break;
        }
    }
    report.add("forms-agree", witness.is_null(), Json::object(), witness);
    return report;
}

Report verify_realization_gl(int N) {
    RootTable s = RootTable::generic(N);
    return verify_realization_gl(N, s, extended_presentation(N, s));
}

Report verify_realization_single_tau(const SingleTau& st, int sign) {
    Report report("verify-realization-single-tau");
    report.set_inputs(Json{{"N", st.N}, {"sign", sign}});
    QuadraticPresentation target = single_tau_presentation(st, sign);
    RootTable s = st.roots();
    QuadraticPresentation multi = multiparam_presentation(st.N, s);
    const Alphabet& til = multi.alphabet();
    const Alphabet& a = target.alphabet();
    auto image = [&](int g) {
        const std::string& n = til.name(g);
        int i = std::stoi(n.substr(3, n.find('_', 3) - 3));
        int j = std::stoi(n.substr(n.find('_', 3) + 1));
        int tau = a.index("tau");
        return FreeElement::word({tau, tau, a.index(gen::T(i, j))}, s.s(i, j).inverse());
    };
    check_all_zero(report, "realization", multi.relations(), [&](const FreeElement& r) { return r.substitute(image); },
                   target, til);
    return report;
}

ParticleConservingR primed_r(int N, const RootTable& s, const ScalarExpr& q) {
    ParticleConservingR R(2 * N, SpectralKind::none);
    auto block = [&](int a) { return a > N; };
    auto base = [&](int a) { return block(a) ? a - N : a; };
    ScalarExpr qq = q - q.inverse();
    for (int a = 1; a <= 2 * N; ++a)
        for (int b = 1; b <= 2 * N; ++b) {
            if (a == b)
                R.set_f(a, a, q);
            else if (block(a) == block(b))
                R.set_f(a, b, ScalarExpr(1));
            else
                R.set_f(a, b, s.s(base(a), base(b)));
            if (a < b) R.set_g(a, b, qq);
        }
    return R;
}

Report verify_primed_qybe(int N, const RootTable& s, const QuadraticPresentation& extended) {
    Report report("verify-primed-qybe");
    report.set_inputs(Json{{"N", N}, {"roots", root_json(s)}});
    const Alphabet& ext = extended.alphabet();
    ParticleConservingR R = primed_r(N, s);
    auto T = [&](int a, int b) {
        if (a <= N && b <= N) return FreeElement::letter(ext.index(gen::T(a, b)));
        if (a > N && b > N && a == b) return FreeElement::letter(ext.index(gen::tau(a - N)));
        return FreeElement();
    };
    auto f = [&](int i, int j) { return R.f(i, j); };
    auto g = [&](int i, int j) { return i == j ? ScalarExpr() : R.g(i, j); };
    std::vector<FreeElement> rels = rtt_relations(2 * N, f, g, T, T);
    check_all_zero(report, "primed-rtt", rels, [](const FreeElement& r) { return r; }, extended, ext);
    bool same = equivalent_relations(ext, rels, extended.relations());
    report.add("generates-extended-algebra", same, Json{{"relations", rels.size()}});
    return report;
}

Report verify_primed_qybe(int N) {
    RootTable s = RootTable::generic(N);
    return verify_primed_qybe(N, s, extended_presentation(N, s));
}

Report verify_coaction_invariance(int N, Plane plane, const RootTable& s, const QuadraticPresentation& combined) {
    Report report("verify-coaction");
    report.set_inputs(Json{{"N", N}, {"plane", to_string(plane)}, {"roots", root_json(s)}});
    const Alphabet& a = combined.alphabet();
    QuadraticPresentation planes = plane_presentation(N, plane, s);
    auto letter = [&](const std::string& n) { return FreeElement::letter(a.index(n)); };
    std::map<int, FreeElement> primed;
    for (int i = 1; i <= N; ++i) {
        FreeElement xi;
        for (int j = 1; j <= N; ++j) xi += letter(gen::T(i, j)) * letter(gen::x(j));
        primed[a.index(gen::x(i))] = xi;
        primed[a.index(gen::y(i))] = letter(gen::tau(i)) * letter(gen::y(i));
    }
    auto image = [&](int g) {
        auto it = primed.find(g);
        return it == primed.end() ? FreeElement::letter(g) : it->second;
    };
    check_all_zero(report, "plane-relations-invariant", planes.relations(),
                   [&](const FreeElement& r) { return r.substitute(image); }, combined, planes.alphabet());
    return report;
}

Report verify_coaction_invariance(int N, Plane plane) {
    RootTable s = RootTable::generic(N);
    return verify_coaction_invariance(N, plane, s, coaction_presentation(N, plane, s));
}

Report verify_x_relations(int N, Plane plane, const RootTable& s, const QuadraticPresentation& planes) {
    Report report("verify-x-relations");
    report.set_inputs(Json{{"N", N}, {"plane", to_string(plane)}, {"roots", root_json(s)}});
    const Alphabet& a = planes.alphabet();
    const ScalarExpr q(params::q());
    auto X = [&](int i) { return FreeElement::word({a.index(gen::x(i)), a.index(gen::y(i))}); };
    std::vector<FreeElement> rels;
    for (int i = 1; i <= N; ++i) {
        if (plane == Plane::exterior) rels.push_back(X(i) * X(i));
        for (int j = i + 1; j <= N; ++j) {
            ScalarExpr c = plane == Plane::symmetric ? q.inverse() * s.phi(j, i) : -q * s.phi(j, i);
            rels.push_back(X(i) * X(j) - X(j) * X(i) * c);
        }
    }
    check_all_zero(report, "x-relations", rels, [](const FreeElement& r) { return r; }, planes, a);
    return report;
}

Report verify_x_relations(int N, Plane plane) {
    RootTable s = RootTable::generic(N);
    return verify_x_relations(N, plane, s, plane_presentation(N, plane, s));
}

Report confluence_spot_check(const QuadraticPresentation& p, int words, std::uint64_t seed) {
    Report report("confluence-spot-check");
    report.set_seed(seed);
    const Alphabet& a = p.alphabet();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(a.size()) - 1);
    Json witness = nullptr;
    for (int n = 0; n < words && witness.is_null(); ++n) {
        Word w{pick(rng), pick(rng), pick(rng)};
        FreeElement e = FreeElement::word(w);
        FreeElement l = p.normal_form(e, Strategy::leftmost);
        FreeElement r = p.normal_form(e, Strategy::rightmost);
        if (!l.equals(r))
            witness = Json{{"word", a.word_string(w)}, {"leftmost", l.to_string(a)}, {"rightmost", r.to_string(a)}};
    }
    report.add("leftmost-equals-rightmost", witness.is_null(), Json{{"words", words}}, witness);
    return report;
}

}  // namespace ybt
