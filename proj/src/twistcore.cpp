#include "ybt/twistcore.hpp"

#include <algorithm>
#include <array>

namespace ybt {

char family_label(ConstraintFamily f) { return static_cast<char>('a' + static_cast<int>(f)); }

namespace {

using params::lambda, params::mu, params::nu, params::alpha, params::beta, params::gamma;

std::pair<Symbol, Symbol> arg_symbols(ArgPair p) {
    switch (p) {
        case ArgPair::lm: return {lambda(), mu()};
        case ArgPair::ln: return {lambda(), nu()};
        case ArgPair::mn: return {mu(), nu()};
    }
    return {lambda(), mu()};
}

const char* arg_name(ArgPair p) {
    switch (p) {
        case ArgPair::lm: return "lm";
        case ArgPair::ln: return "ln";
        case ArgPair::mn: return "mn";
    }
    return "lm";
}

std::string triple_key(int a, int b, int c) {
    return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c);
}

}  // namespace

ConstraintTables tables_of(const ParticleConservingR& R) {
    const int N = R.N();
    using Table = std::vector<ScalarExpr>;
    auto f = std::make_shared<std::array<Table, 3>>();
    auto g = std::make_shared<std::array<Table, 3>>();
    // Colour arguments travel with their spectral partners.
    std::map<Symbol, ScalarExpr> subs[3] = {
        {},
        {{mu(), ScalarExpr(nu())}},
        {{lambda(), ScalarExpr(mu())}, {mu(), ScalarExpr(nu())}},
    };
    if (R.kind() == SpectralKind::bicomponent) {
        subs[1][beta()] = ScalarExpr(gamma());
        subs[2][alpha()] = ScalarExpr(beta());
        subs[2][beta()] = ScalarExpr(gamma());
    }
    for (int p = 0; p < 3; ++p)
        for (int a = 1; a <= N; ++a)
            for (int b = 1; b <= N; ++b) {
                (*f)[static_cast<std::size_t>(p)].push_back(R.source_f(a, b).substitute(subs[p]));
                (*g)[static_cast<std::size_t>(p)].push_back(R.source_g(a, b).substitute(subs[p]));
            }
    auto at = [N](const std::shared_ptr<std::array<Table, 3>>& t) {
        return [t, N](int a, int b, ArgPair p) {
            return (*t)[static_cast<std::size_t>(p)][static_cast<std::size_t>((a - 1) * N + (b - 1))];
        };
    };
    return {at(f), at(g)};
}

ConstraintTables generic_tables() {
    auto make = [](char letter) {
        return [letter](int a, int b, ArgPair p) {
            return ScalarExpr::symbol(std::string(1, letter) + "_" + std::to_string(a) + "_" + std::to_string(b) + "_" +
                                      arg_name(p));
        };
    };
    return {make('F'), make('G')};
}

ConstraintTables twisted_tables(const ConstraintTables& base, const TwistData& tw) {
    return {[base, tw](int a, int b, ArgPair p) {
                auto [x, y] = arg_symbols(p);
                return tw.f_factor(a, b, ScalarExpr(x), ScalarExpr(y)) * base.f(a, b, p);
            },
            [base, tw](int a, int b, ArgPair p) {
                auto [x, y] = arg_symbols(p);
                return tw.g_factor(a, b, ScalarExpr(x), ScalarExpr(y)) * base.g(a, b, p);
            }};
}

std::vector<ResidualTerm> constraint_terms(ConstraintFamily fam, int i1, int i2, int i3) {
    const auto LM = ArgPair::lm, LN = ArgPair::ln, MN = ArgPair::mn;
    auto F = [](int a, int b, ArgPair p) { return TableRef{false, a, b, p}; };
    auto G = [](int a, int b, ArgPair p) { return TableRef{true, a, b, p}; };
    switch (fam) {
        case ConstraintFamily::a:
            return {{1, {F(i1, i2, LM), F(i1, i3, LN)}}, {-1, {F(i1, i3, LM), F(i1, i2, LN)}}};
        case ConstraintFamily::b:
            return {{1, {F(i2, i3, LN), F(i1, i3, MN)}}, {-1, {F(i1, i3, LN), F(i2, i3, MN)}}};
        case ConstraintFamily::c:
            return {{1, {F(i1, i2, LM), G(i1, i3, LN), F(i2, i1, MN)}},
                    {1, {G(i1, i2, LM), G(i2, i3, LN), G(i1, i2, MN)}},
                    {-1, {F(i3, i2, LM), G(i1, i3, LN), F(i2, i3, MN)}},
                    {-1, {G(i2, i3, LM), G(i1, i2, LN), G(i2, i3, MN)}}};
        case ConstraintFamily::d:
            return {{1, {F(i1, i2, LM), G(i1, i3, LN), G(i2, i1, MN)}},
                    {1, {G(i1, i2, LM), G(i2, i3, LN), F(i1, i2, MN)}},
                    {-1, {G(i1, i3, LM), F(i1, i2, LN), G(i2, i3, MN)}}};
        case ConstraintFamily::e:
            return {{1, {G(i1, i2, LM), F(i2, i3, LN), G(i1, i3, MN)}},
                    {-1, {F(i2, i3, LM), G(i1, i2, LN), G(i2, i3, MN)}},
                    {-1, {G(i3, i2, LM), G(i1, i3, LN), F(i2, i3, MN)}}};
    }
    return {};
}

ScalarExpr constraint_residual(ConstraintFamily fam, int i1, int i2, int i3, const ConstraintTables& t) {
    ScalarExpr total;
    for (const auto& term : constraint_terms(fam, i1, i2, i3)) {
        ScalarExpr prod(term.sign);
        for (const auto& r : term.factors) prod *= r.exchange ? t.g(r.a, r.b, r.args) : t.f(r.a, r.b, r.args);
        total += prod;
    }
    return total;
}

Report check_constraints(const ParticleConservingR& R, const ZeroTest& mode) {
    Report report("verify-constraints");
    report.set_mode(mode.label());
    report.set_seed(mode.sample.seed);
    report.note("N", R.N());
    ConstraintTables t = tables_of(R);
    const int N = R.N();
    for (ConstraintFamily fam : all_families) {
        int instances = 0;
        Json witness = nullptr;
        for (int i1 = 1; i1 <= N && witness.is_null(); ++i1)
            for (int i2 = 1; i2 <= N && witness.is_null(); ++i2)
                for (int i3 = 1; i3 <= N && witness.is_null(); ++i3) {
                    ++instances;
                    ScalarExpr r = constraint_residual(fam, i1, i2, i3, t);
                    if (!r.is_zero(mode))
                        witness = Json{{"family", std::string(1, family_label(fam))},
                                       {"indices", {i1, i2, i3}},
                                       {"residual", r.to_string()}};
                }
        report.add(std::string("family-") + family_label(fam), witness.is_null(), Json{{"instances", instances}},
                   witness);
    }
    return report;
}

namespace {

// Prefactor kept as a product of powers of atoms: root entries s_ij (i < j)
// and colour functions v1_i, v2_i at one spectral symbol.
struct Atom {
    int kind;  // 0: root, 1: v1, 2: v2
    int a, b;  // root indices, or (index, spectral symbol id)
    auto key() const { return std::tuple(kind, a, b); }
    friend bool operator<(const Atom& x, const Atom& y) { return x.key() < y.key(); }
    friend bool operator==(const Atom& x, const Atom& y) { return x.key() == y.key(); }
};

using AtomPowers = std::map<Atom, int>;

int spectral_id(Symbol s) { return s == lambda() ? 0 : s == mu() ? 1 : 2; }
Symbol spectral_symbol(int id) { return id == 0 ? lambda() : id == 1 ? mu() : nu(); }

void bump(AtomPowers& m, const Atom& a, int e) {
    if ((m[a] += e) == 0) m.erase(a);
}

void bump_root(AtomPowers& m, int i, int j, int e) {
    if (i == j) return;
    if (i < j)
        bump(m, {0, i, j}, e);
    else
        bump(m, {0, j, i}, -e);
}

AtomPowers factored_prefactor(const TableRef& r) {
    auto [x, y] = arg_symbols(r.args);
    int a = spectral_id(x), b = spectral_id(y);
    AtomPowers m;
    if (!r.exchange) {
        bump_root(m, r.a, r.b, 2);
        bump(m, {1, r.b, a}, 2);
        bump(m, {2, r.b, a}, 2);
        bump(m, {1, r.a, b}, -2);
        bump(m, {2, r.a, b}, -2);
    } else {
        bump(m, {1, r.a, a}, 2);
        bump(m, {2, r.b, a}, 2);
        bump(m, {1, r.a, b}, -2);
        bump(m, {2, r.b, b}, -2);
    }
    return m;
}

ScalarExpr materialize(const AtomPowers& m, const TwistData& tw) {
    ScalarExpr out(1);
    for (const auto& [atom, e] : m) {
        ScalarExpr base = atom.kind == 0   ? tw.s.s(atom.a, atom.b)
                          : atom.kind == 1 ? tw.v1_at(atom.a, ScalarExpr(spectral_symbol(atom.b)))
                                           : tw.v2_at(atom.a, ScalarExpr(spectral_symbol(atom.b)));
        out *= base.pow(e);
    }
    return out;
}

}  // namespace

std::optional<ScalarExpr> invariance_prefactor(ConstraintFamily fam, int i1, int i2, int i3, const TwistData& tw) {
    // With unknown tables every factor multiset is its own monomial, so the
    // transformed residual is proportional to the original one iff the
    // transformed coefficient of each monomial is a common multiple of the
    // original coefficient.
    struct Group {
        long original = 0;
        std::vector<std::pair<int, AtomPowers>> terms;
    };
    std::map<std::vector<TableRef>, Group> monomials;
    for (const auto& term : constraint_terms(fam, i1, i2, i3)) {
        AtomPowers p;
        for (const auto& r : term.factors)
            for (const auto& [atom, e] : factored_prefactor(r)) bump(p, atom, e);
        auto key = term.factors;
        std::sort(key.begin(), key.end());
        auto& g = monomials[key];
        g.original += term.sign;
        g.terms.emplace_back(term.sign, std::move(p));
    }

    // Fast path: every monomial carries a single term and the factored
    // prefactors coincide, which proves proportionality.
    bool single = std::all_of(monomials.begin(), monomials.end(),
                              [](const auto& kv) { return kv.second.terms.size() == 1; });
    if (single) {
        const AtomPowers& first = monomials.begin()->second.terms.front().second;
        bool same = std::all_of(monomials.begin(), monomials.end(),
                                [&](const auto& kv) { return kv.second.terms.front().second == first; });
        if (same) return materialize(first, tw);
    }

    auto transformed = [&](const Group& g) {
        ScalarExpr sum;
        for (const auto& [sign, p] : g.terms) sum += ScalarExpr(sign) * materialize(p, tw);
        return sum;
    };
    std::optional<ScalarExpr> ratio;
    for (const auto& [key, g] : monomials) {
        if (g.original != 0 && !ratio) ratio = transformed(g) / ScalarExpr(g.original);
    }
    if (!ratio) {
        for (const auto& [key, g] : monomials)
            if (!transformed(g).is_zero()) return std::nullopt;
        return ScalarExpr(1);
    }
    for (const auto& [key, g] : monomials)
        if (transformed(g) != *ratio * ScalarExpr(g.original)) return std::nullopt;
    return ratio;
}

Report check_constraint_invariance(const ParticleConservingR& R, const TwistData& tw, const ZeroTest& mode) {
    Report report("verify-constraint-invariance");
    report.set_mode(mode.label());
    report.set_seed(mode.sample.seed);
    const int N = R.N();
    if (tw.N != N) throw Error("twist data size does not match the R-matrix");
    ConstraintTables source = tables_of(R);
    ConstraintTables concrete = twisted_tables(source, tw);
    for (ConstraintFamily fam : all_families) {
        Json prefactors = Json::object();
        Json witness = nullptr;
        for (int i1 = 1; i1 <= N; ++i1)
            for (int i2 = 1; i2 <= N; ++i2)
                for (int i3 = 1; i3 <= N; ++i3) {
                    auto p = invariance_prefactor(fam, i1, i2, i3, tw);
                    std::string key = triple_key(i1, i2, i3);
                    prefactors[key] = p ? p->to_string() : "none";
                    if (!p && witness.is_null())
                        witness = Json{{"indices", {i1, i2, i3}}, {"reason", "no single prefactor exists"}};
                    // With a prefactor the transformed residual is P times the source one.
                    ScalarExpr r = p ? *p * constraint_residual(fam, i1, i2, i3, source)
                                     : constraint_residual(fam, i1, i2, i3, concrete);
                    if (!r.is_zero(mode) && witness.is_null())
                        witness = Json{{"indices", {i1, i2, i3}},
                                       {"reason", "transformed identity fails for the given R"},
                                       {"residual", r.to_string()}};
                }
        report.add(std::string("family-") + family_label(fam), witness.is_null(), Json{{"prefactors", prefactors}},
                   witness);
    }
    return report;
}

// ---------------------------------------------------------------------------
// S-factors
// ---------------------------------------------------------------------------

SClosedForms SClosedForms::standard() {
    SClosedForms f;
    f.c = [](const TwistData& tw, int i, int j, int k) { return tw.s.s(i, k) / tw.s.s(i, j); };
    f.d = [](const TwistData& tw, int j, int k, const ScalarExpr& at) {
        return tw.v1_at(k, at) * tw.v2_at(k, at) / (tw.v1_at(j, at) * tw.v2_at(j, at));
    };
    f.r = [](const TwistData& tw, int i, int j, const ScalarExpr& at) {
        return tw.s.s(i, j).inverse() * tw.u1(i, at) / tw.u1(j, at);
    };
    return f;
}

SFactors s_factors(const TwistData& tw, int i, int j, int k, int l, const SClosedForms& fm) {
    ScalarExpr a(params::alpha()), b(params::beta());
    auto u1 = [&](int x, const ScalarExpr& at) { return tw.u1(x, at); };
    auto u2 = [&](int x, const ScalarExpr& at) { return tw.u2(x, at); };
    SFactors s;
    s.s1 = tw.s.phi(i, j) * u1(j, a) * u2(j, a) * fm.r(tw, i, k, a) * fm.r(tw, j, l, b) /
           (u1(i, b) * u2(i, b) * fm.c(tw, j, i, k) * fm.d(tw, i, k, b).pow(2) * fm.c(tw, l, i, k));
    s.s2 = u1(i, a) * u2(j, a) * fm.r(tw, j, k, a) * fm.r(tw, i, l, b) /
           (u1(i, b) * u2(j, b) * fm.c(tw, i, j, k) * fm.d(tw, j, k, b).pow(2) * fm.c(tw, l, j, k));
    s.s3 = tw.s.phi(k, l) * u1(l, a) * u2(l, a) * fm.r(tw, i, k, a) * fm.r(tw, j, l, b) /
           (u1(k, b) * u2(k, b) * fm.c(tw, i, j, l) * fm.d(tw, j, l, a).pow(2) * fm.c(tw, k, j, l));
    s.s4 = u1(l, a) * u2(k, a) * fm.r(tw, j, k, b) * fm.r(tw, i, l, a) /
           (u1(l, b) * u2(k, b) * fm.c(tw, i, j, k) * fm.d(tw, j, k, a).pow(2) * fm.c(tw, l, j, k));
    return s;
}

Report verify_s_equality(const TwistData& tw, const SClosedForms& forms) {
    tw.validate();
    Report report("verify-s-equality");
    report.set_mode("expand");
    const int N = tw.N;
    int quadruples = 0;
    Json witness = nullptr;
    Json sample_values = Json::object();
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
            for (int k = 1; k <= N; ++k)
                for (int l = 1; l <= N; ++l) {
                    ++quadruples;
                    SFactors s = s_factors(tw, i, j, k, l, forms);
                    bool ok = s.s1 == s.s2 && s.s1 == s.s3 && s.s1 == s.s4;
                    if (quadruples <= 4)
                        sample_values[std::to_string(i) + std::to_string(j) + std::to_string(k) + std::to_string(l)] =
                            s.s1.to_string();
                    if (!ok && witness.is_null())
                        witness = Json{{"indices", {i, j, k, l}},
                                       {"S1", s.s1.to_string()},
                                       {"S2", s.s2.to_string()},
                                       {"S3", s.s3.to_string()},
                                       {"S4", s.s4.to_string()}};
                }
    report.add("S1=S2=S3=S4", witness.is_null(), Json{{"quadruples", quadruples}, {"S1 samples", sample_values}},
               witness);
    // c and d carry no spectral parameter, so the identity cannot depend on one.
    bool spectral_free = true;
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j)
            for (int k = 1; k <= N; ++k) {
                ScalarExpr c = forms.c(tw, i, j, k);
                ScalarExpr d = forms.d(tw, j, k, ScalarExpr(params::alpha()));
                for (Symbol sp : {params::lambda(), params::mu()})
                    if (c.depends_on(sp) || d.depends_on(sp)) spectral_free = false;
            }
    report.add("c-d-spectral-independent", spectral_free);
    return report;
}

}  // namespace ybt
