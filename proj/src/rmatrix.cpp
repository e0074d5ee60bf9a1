#include "ybt/rmatrix.hpp"

#include <algorithm>

namespace ybt {

std::string to_string(SpectralKind k) {
    switch (k) {
        case SpectralKind::none: return "none";
        case SpectralKind::single: return "single";
        case SpectralKind::bicomponent: return "bicomponent";
    }
    return "none";
}

SpectralKind spectral_kind_from_string(const std::string& s) {
    if (s == "none") return SpectralKind::none;
    if (s == "single") return SpectralKind::single;
    if (s == "bicomponent") return SpectralKind::bicomponent;
    throw ParseError("unknown spectral kind '" + s + "'");
}

// ---------------------------------------------------------------------------
// RootTable
// ---------------------------------------------------------------------------

RootTable RootTable::generic(int N) {
    RootTable t(N);
    for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j) t.upper_.emplace(std::pair{i, j}, ScalarExpr::root(i, j));
    return t;
}

ScalarExpr RootTable::s(int i, int j) const {
    if (i < 1 || j < 1 || i > N_ || j > N_) throw Error("root table index out of range");
    if (i == j) return ScalarExpr(1);
    if (i < j) {
        auto it = upper_.find({i, j});
        return it == upper_.end() ? ScalarExpr(1) : it->second;
    }
    return s(j, i).inverse();
}

void RootTable::set(int i, int j, ScalarExpr value) {
    if (i == j) {
        if (!value.is_one()) throw Error("phi_ii must be 1");
        return;
    }
    if (i < 1 || j < 1 || i > N_ || j > N_) throw Error("root table index out of range");
    if (value.is_zero()) throw DomainError("sqrt(phi) entries must be nonzero");
    if (i > j) {
        std::swap(i, j);
        value = value.inverse();
    }
    upper_[{i, j}] = std::move(value);
}

bool RootTable::is_trivial() const {
    return std::all_of(upper_.begin(), upper_.end(), [](const auto& e) { return e.second.is_one(); });
}

RootTable RootTable::operator*(const RootTable& o) const {
    if (N_ != o.N_) throw Error("root tables of different size");
    RootTable r(N_);
    for (int i = 1; i <= N_; ++i)
        for (int j = i + 1; j <= N_; ++j) r.set(i, j, s(i, j) * o.s(i, j));
    return r;
}

// ---------------------------------------------------------------------------
// TwistData
// ---------------------------------------------------------------------------

TwistData TwistData::identity(int N) {
    TwistData tw;
    tw.N = N;
    tw.s = RootTable::ones(N);
    tw.v1.assign(static_cast<std::size_t>(N), ScalarExpr(1));
    tw.v2.assign(static_cast<std::size_t>(N), ScalarExpr(1));
    return tw;
}

TwistData TwistData::generic(int N) {
    TwistData tw = identity(N);
    tw.s = RootTable::generic(N);
    for (int i = 1; i <= N; ++i) {
        auto coeff = [&](int which, int power) {
            return ScalarExpr::symbol("k" + std::to_string(which) + "_" + std::to_string(i) + "_" + std::to_string(power));
        };
        tw.v1[static_cast<std::size_t>(i - 1)] = coeff(1, 0) + coeff(1, 1) * ScalarExpr(tw.colour);
        tw.v2[static_cast<std::size_t>(i - 1)] = coeff(2, 0) + coeff(2, 1) * ScalarExpr(tw.colour);
    }
    return tw;
}

namespace {

Rational random_rational(std::mt19937_64& rng, bool nonzero) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    for (;;) {
        Rational r(num(rng), den(rng));
        r.canonicalize();
        if (!nonzero || r != 0) return r;
    }
}

}  // namespace

TwistData TwistData::random(int N, std::mt19937_64& rng, int max_degree) {
    TwistData tw = identity(N);
    for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j) tw.s.set(i, j, ScalarExpr(random_rational(rng, true)));
    std::uniform_int_distribution<int> degree(0, max_degree);
    auto poly = [&]() {
        int d = degree(rng);
        ScalarExpr p;
        for (int k = 0; k <= d; ++k) p += ScalarExpr(random_rational(rng, k == d)) * ScalarExpr(tw.colour).pow(k);
        return p;
    };
    for (int i = 0; i < N; ++i) {
        tw.v1[static_cast<std::size_t>(i)] = poly();
        tw.v2[static_cast<std::size_t>(i)] = poly();
    }
    return tw;
}

void TwistData::validate() const {
    if (N < 1) throw Error("twist data needs N >= 1");
    if (s.N() != N || v1.size() != static_cast<std::size_t>(N) || v2.size() != static_cast<std::size_t>(N))
        throw Error("twist data tables do not match N");
    for (int i = 0; i < N; ++i)
        if (v1[static_cast<std::size_t>(i)].is_zero() || v2[static_cast<std::size_t>(i)].is_zero())
            throw DomainError("colour functions must not vanish identically");
}

ScalarExpr TwistData::v1_at(int i, const ScalarExpr& at) const {
    return v1.at(static_cast<std::size_t>(i - 1)).substitute(std::map<Symbol, ScalarExpr>{{colour, at}});
}

ScalarExpr TwistData::v2_at(int i, const ScalarExpr& at) const {
    return v2.at(static_cast<std::size_t>(i - 1)).substitute(std::map<Symbol, ScalarExpr>{{colour, at}});
}

ScalarExpr TwistData::f_factor(int i, int j, const ScalarExpr& a, const ScalarExpr& b) const {
    return s.phi(i, j) * U(j, a) / U(i, b);
}

ScalarExpr TwistData::g_factor(int i, int j, const ScalarExpr& a, const ScalarExpr& b) const {
    return u1(i, a) * u2(j, a) / (u1(i, b) * u2(j, b));
}

TwistData TwistData::compose(const TwistData& o) const {
    if (N != o.N) throw Error("cannot compose twists of different size");
    TwistData r = *this;
    r.s = s * o.s;
    std::map<Symbol, ScalarExpr> rename{{o.colour, ScalarExpr(colour)}};
    for (std::size_t i = 0; i < static_cast<std::size_t>(N); ++i) {
        r.v1[i] = v1[i] * o.v1[i].substitute(rename);
        r.v2[i] = v2[i] * o.v2[i].substitute(rename);
    }
    return r;
}

std::set<Symbol> TwistData::symbols() const {
    std::set<Symbol> out;
    for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j) {
            auto x = s.s(i, j).symbols();
            out.insert(x.begin(), x.end());
        }
    for (const auto* table : {&v1, &v2})
        for (const auto& e : *table) {
            auto x = e.symbols();
            out.insert(x.begin(), x.end());
        }
    return out;
}

// ---------------------------------------------------------------------------
// ParticleConservingR
// ---------------------------------------------------------------------------

ParticleConservingR::ParticleConservingR(int N, SpectralKind kind) : N_(N), kind_(kind) {
    if (N < 1) throw Error("R-matrix dimension must be positive");
    auto n = static_cast<std::size_t>(N);
    f_.assign(n * n, ScalarExpr());
    g_.assign(n * n, ScalarExpr());
    split_.assign(n, ScalarExpr());
}

std::size_t ParticleConservingR::idx(int i, int j) const {
    if (i < 1 || j < 1 || i > N_ || j > N_) throw Error("R-matrix index out of range");
    return static_cast<std::size_t>((i - 1) * N_ + (j - 1));
}

void ParticleConservingR::set_g(int i, int j, ScalarExpr v) {
    if (i == j && !v.is_zero()) throw Error("canonical form requires g_ii = 0; fold the diagonal into f_ii");
    g_[idx(i, j)] = std::move(v);
}

ParticleConservingR ParticleConservingR::from_tables(SpectralKind kind, const std::vector<std::vector<ScalarExpr>>& f,
                                                     const std::vector<std::vector<ScalarExpr>>& g) {
    int N = static_cast<int>(f.size());
    if (N < 1 || g.size() != f.size()) throw Error("f and g tables must be N x N");
    for (std::size_t r = 0; r < f.size(); ++r)
        if (f[r].size() != f.size() || g[r].size() != f.size()) throw Error("f and g tables must be N x N");
    ParticleConservingR R(N, kind);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            const auto& fv = f[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
            const auto& gv = g[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
            if (i == j) {
                R.set_f(i, i, fv + gv);
                R.set_diag_split(i, gv);
            } else {
                R.set_f(i, j, fv);
                R.set_g(i, j, gv);
            }
        }
    return R;
}

ParticleConservingR ParticleConservingR::identity(int N) {
    ParticleConservingR R(N, SpectralKind::none);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) R.set_f(i, j, 1);
    return R;
}

ParticleConservingR ParticleConservingR::permutation(int N) {
    ParticleConservingR R(N, SpectralKind::none);
    for (int i = 1; i <= N; ++i) {
        R.set_f(i, i, 1);
        R.set_diag_split(i, 1);
        for (int j = 1; j <= N; ++j)
            if (i != j) R.set_g(i, j, 1);
    }
    return R;
}

ParticleConservingR ParticleConservingR::trig(int N, const ScalarExpr& q) {
    return multiparam(N, RootTable::ones(N), q);
}

ParticleConservingR ParticleConservingR::multiparam(int N, const RootTable& s, const ScalarExpr& q) {
    if (N < 2) throw Error("builders need N >= 2");
    if (s.N() != N) throw Error("root table size does not match N");
    ParticleConservingR R(N, SpectralKind::none);
    ScalarExpr gap = q - q.inverse();
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            if (i == j) {
                R.set_f(i, i, q);
                R.set_diag_split(i, q);
            } else {
                R.set_f(i, j, s.phi(i, j));
                if (i < j) R.set_g(i, j, gap);
            }
        }
    return R;
}

ParticleConservingR ParticleConservingR::rational(int N, const ScalarExpr& h) {
    if (N < 2) throw Error("builders need N >= 2");
    ParticleConservingR R(N, SpectralKind::single);
    ScalarExpr diff = ScalarExpr(params::lambda()) - ScalarExpr(params::mu());
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            if (i == j) {
                R.set_f(i, i, diff + h);
                R.set_diag_split(i, h);
            } else {
                R.set_f(i, j, diff);
                R.set_g(i, j, h);
            }
        }
    return R;
}

ParticleConservingR ParticleConservingR::coloured_rational(int N, const TwistData& tw, const ScalarExpr& h) {
    if (N < 2) throw Error("builders need N >= 2");
    if (tw.N != N) throw Error("twist data size does not match N");
    tw.validate();
    ParticleConservingR R(N, SpectralKind::bicomponent);
    ScalarExpr diff = ScalarExpr(params::lambda()) - ScalarExpr(params::mu());
    ScalarExpr a(params::alpha()), b(params::beta());
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            ScalarExpr u = tw.s.phi(i, j) * tw.u1(j, a) * tw.u2(j, a) / (tw.u1(i, b) * tw.u2(i, b));
            ScalarExpr v = tw.u1(i, a) * tw.u2(j, a) / (tw.u1(i, b) * tw.u2(j, b));
            if (i == j) {
                R.set_f(i, i, diff * u + h * v);
                R.set_diag_split(i, h * v);
            } else {
                R.set_f(i, j, diff * u);
                R.set_g(i, j, h * v);
            }
        }
    return R;
}

Operator ParticleConservingR::to_matrix() const {
    Operator op({N_, N_});
    for (int i = 1; i <= N_; ++i)
        for (int j = 1; j <= N_; ++j) {
            op.set({i, j}, {i, j}, f(i, j));
            if (i != j) op.set({i, j}, {j, i}, g(i, j));
        }
    return op;
}

ParticleConservingR ParticleConservingR::substitute(const std::map<Symbol, ScalarExpr>& values) const {
    ParticleConservingR R = *this;
    for (auto* table : {&R.f_, &R.g_, &R.split_})
        for (auto& e : *table) e = e.substitute(values);
    return R;
}

std::set<Symbol> ParticleConservingR::symbols() const {
    std::set<Symbol> out;
    for (const auto* table : {&f_, &g_})
        for (const auto& e : *table) {
            auto s = e.symbols();
            out.insert(s.begin(), s.end());
        }
    return out;
}

bool ParticleConservingR::equals(const ParticleConservingR& o, const ZeroTest& mode) const {
    if (N_ != o.N_) return false;
    for (std::size_t k = 0; k < f_.size(); ++k) {
        if (!(f_[k] - o.f_[k]).is_zero(mode)) return false;
        if (!(g_[k] - o.g_[k]).is_zero(mode)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Transformation
// ---------------------------------------------------------------------------

namespace {

ParticleConservingR apply_twist(const ParticleConservingR& R, const TwistData& tw, const ScalarExpr& a,
                                const ScalarExpr& b, SpectralKind out_kind) {
    tw.validate();
    if (tw.N != R.N()) throw Error("twist data size does not match the R-matrix");
    if (R.symbols().count(tw.colour)) throw Error("colour variable of the twist occurs in the R-matrix");
    ParticleConservingR out(R.N(), out_kind);
    for (int i = 1; i <= R.N(); ++i)
        for (int j = 1; j <= R.N(); ++j) {
            ScalarExpr ff = tw.f_factor(i, j, a, b);
            out.set_f(i, j, ff * R.f(i, j));
            if (i == j)
                out.set_diag_split(i, ff * R.diag_split(i));
            else
                out.set_g(i, j, tw.g_factor(i, j, a, b) * R.g(i, j));
        }
    return out;
}

}  // namespace

ParticleConservingR twist(const ParticleConservingR& R, const TwistData& tw) {
    return apply_twist(R, tw, ScalarExpr(params::alpha()), ScalarExpr(params::beta()), SpectralKind::bicomponent);
}

ParticleConservingR twist_single(const ParticleConservingR& R, const TwistData& tw) {
    if (R.kind() == SpectralKind::bicomponent) throw Error("single-spectral twist needs a single-spectral R-matrix");
    return apply_twist(R, tw, ScalarExpr(params::lambda()), ScalarExpr(params::mu()), SpectralKind::single);
}

std::pair<Operator, Operator> ff_matrices(const TwistData& tw) {
    tw.validate();
    const int N = tw.N;
    ScalarExpr a(params::alpha()), b(params::beta());
    Operator F({N, N}), Fh({N, N});
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            ScalarExpr sji = tw.s.s(j, i);
            F.set({i, j}, {i, j}, sji * tw.u1(i, b) / tw.u2(j, a));
            Fh.set({i, j}, {i, j}, sji * tw.u2(i, b) / tw.u1(j, a));
        }
    return {F, Fh};
}

Operator diagonal_inverse(const Operator& diag) {
    Operator out(diag.site_dims());
    for (std::size_t r = 0; r < diag.dimension(); ++r) {
        ScalarExpr v = diag.at_flat(r, r);
        if (v.is_zero()) throw DomainError("singular diagonal operator");
        out.set_flat(r, r, v.inverse());
    }
    for (const auto& [k, v] : diag.entries())
        if (k.first != k.second) throw Error("operator is not diagonal");
    return out;
}

// ---------------------------------------------------------------------------
// Yang-Baxter check
// ---------------------------------------------------------------------------

YbeLegs ybe_legs(const ParticleConservingR& R) {
    using params::alpha, params::beta, params::gamma, params::lambda, params::mu, params::nu;
    std::map<Symbol, ScalarExpr> to13, to23;
    if (R.kind() != SpectralKind::none) {
        to13 = {{mu(), ScalarExpr(nu())}};
        to23 = {{lambda(), ScalarExpr(mu())}, {mu(), ScalarExpr(nu())}};
    }
    if (R.kind() == SpectralKind::bicomponent) {
        to13[beta()] = ScalarExpr(gamma());
        to23[alpha()] = ScalarExpr(beta());
        to23[beta()] = ScalarExpr(gamma());
    }
    Operator m = R.to_matrix();
    const int N = R.N();
    YbeLegs legs;
    legs.r12 = embed(m, {1, 2}, 3, N);
    legs.r13 = embed(to13.empty() ? m : m.substitute(to13), {1, 3}, 3, N);
    legs.r23 = embed(to23.empty() ? m : m.substitute(to23), {2, 3}, 3, N);
    return legs;
}

Operator ybe_residual(const YbeLegs& l) { return l.r12 * l.r13 * l.r23 - l.r23 * l.r13 * l.r12; }

namespace {

Json entry_witness(const Operator& residual, Operator::Key k) {
    Json w;
    w["row"] = residual.unflatten(k.first);
    w["col"] = residual.unflatten(k.second);
    w["residual"] = residual.at_flat(k.first, k.second).to_string();
    return w;
}

std::set<Symbol> legs_symbols(const YbeLegs& l) {
    auto s = l.r12.symbols();
    for (const auto* op : {&l.r13, &l.r23}) {
        auto t = op->symbols();
        s.insert(t.begin(), t.end());
    }
    return s;
}

void check_point(Report& report, const YbeLegs& legs, const std::map<Symbol, Rational>& point, std::size_t index) {
    Check c;
    c.name = "ybe-point-" + std::to_string(index);
    c.detail["point"] = point_to_json(point);
    try {
        YbeLegs at{legs.r12.evaluate(point), legs.r13.evaluate(point), legs.r23.evaluate(point)};
        Operator res = ybe_residual(at);
        auto nz = res.first_nonzero();
        c.status = nz ? Status::fail : Status::pass;
        if (nz) c.witness = entry_witness(res, *nz);
    } catch (const DomainError& e) {
        c.status = Status::skipped;
        c.detail["reason"] = e.what();
    }
    report.add(std::move(c));
}

}  // namespace

Json point_to_json(const std::map<Symbol, Rational>& point) {
    Json j = Json::object();
    for (const auto& [s, v] : point) j[s.name()] = v.get_str();
    return j;
}

ZeroTest default_mode(int N, std::uint64_t seed, int samples) {
    return N <= 3 ? ZeroTest::expand() : ZeroTest::sampled(samples, seed);
}

Report check_ybe(const ParticleConservingR& R, const ZeroTest& mode) {
    Report report("verify-ybe");
    report.set_mode(mode.label());
    report.set_seed(mode.sample.seed);
    report.note("N", R.N());
    report.note("spectral", to_string(R.kind()));
    YbeLegs legs = ybe_legs(R);
    if (mode.is_expand()) {
        Operator res = ybe_residual(legs);
        auto nz = res.first_nonzero();
        report.add("ybe-residual", !nz, Json::object(), nz ? entry_witness(res, *nz) : Json(nullptr));
        return report;
    }
    auto syms = legs_symbols(legs);
    PointSampler sampler(mode.sample.seed, mode.sample.magnitude);
    int evaluated = 0, attempts = 0;
    while (evaluated < mode.sample.count && attempts < mode.sample.count + mode.sample.max_retries) {
        auto point = sampler.draw(syms);
        check_point(report, legs, point, static_cast<std::size_t>(attempts++));
        if (report.checks().back().status != Status::skipped) ++evaluated;
    }
    if (evaluated < mode.sample.count)
        report.add("enough-valid-points", false, Json{{"evaluated", evaluated}, {"requested", mode.sample.count}});
    return report;
}

Report check_ybe_at(const ParticleConservingR& R, const std::vector<std::map<Symbol, Rational>>& points) {
    Report report("verify-ybe");
    report.set_mode("points");
    YbeLegs legs = ybe_legs(R);
    std::size_t evaluated = 0;
    for (std::size_t k = 0; k < points.size(); ++k) {
        check_point(report, legs, points[k], k);
        if (report.checks().back().status != Status::skipped) ++evaluated;
    }
    if (evaluated == 0) report.add("enough-valid-points", false, Json{{"evaluated", 0}});
    return report;
}

}  // namespace ybt
