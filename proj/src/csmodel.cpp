#include "ybt/csmodel.hpp"

#include <functional>
#include <utility>

namespace ybt {

AnyonRep::AnyonRep(int N, int M, std::vector<std::vector<ScalarExpr>> table)
    : N_(N), M_(M), phi_(std::move(table)) {
    if (N < 1 || M < 2) throw Error("anyon representation needs N >= 1 and M >= 2");
    if (phi_.size() != static_cast<std::size_t>(N)) throw Error("phi table must be N x N");
    for (const auto& row : phi_)
        if (row.size() != static_cast<std::size_t>(N)) throw Error("phi table must be N x N");
    for (int a = 1; a <= N; ++a) {
        const ScalarExpr& d = phi(a, a);
        if (d == ScalarExpr(1))
            diag_sign_.push_back(1);
        else if (d == ScalarExpr(-1))
            diag_sign_.push_back(-1);
        else
            throw DomainError("phi_aa must be +1 or -1 (a = " + std::to_string(a) + ")");
        for (int b = a + 1; b <= N; ++b) {
            if (phi(a, b).is_zero()) throw DomainError("phi entries must be nonzero");
            if (!(phi(a, b) * phi(b, a)).is_one())
                throw DomainError("phi_ab phi_ba must equal 1 (a = " + std::to_string(a) + ", b = " +
                                  std::to_string(b) + ")");
        }
    }
}

namespace {

std::vector<std::vector<ScalarExpr>> table_from(int N, const std::vector<int>& diag,
                                                const std::function<ScalarExpr(int, int)>& upper) {
    std::vector<std::vector<ScalarExpr>> t(static_cast<std::size_t>(N), std::vector<ScalarExpr>(static_cast<std::size_t>(N)));
    for (int a = 1; a <= N; ++a) {
        t[a - 1][a - 1] = ScalarExpr(diag.empty() ? 1 : diag.at(static_cast<std::size_t>(a - 1)));
        for (int b = a + 1; b <= N; ++b) {
            t[a - 1][b - 1] = upper(a, b);
            t[b - 1][a - 1] = t[a - 1][b - 1].inverse();
        }
    }
    return t;
}

}  // namespace

AnyonRep AnyonRep::generic(int N, int M, const std::vector<int>& diag) {
    return AnyonRep(N, M, table_from(N, diag, [](int a, int b) {
                        return ScalarExpr::symbol("phi_" + std::to_string(a) + "_" + std::to_string(b));
                    }));
}

AnyonRep AnyonRep::trivial(int N, int M) {
    return AnyonRep(N, M, table_from(N, {}, [](int, int) { return ScalarExpr(1); }));
}

AnyonRep AnyonRep::random(int N, int M, std::mt19937_64& rng, const std::vector<int>& diag) {
    std::uniform_int_distribution<long> num(1, 9), den(1, 9);
    std::bernoulli_distribution neg(0.5);
    return AnyonRep(N, M, table_from(N, diag, [&](int, int) {
                        Rational r(neg(rng) ? -num(rng) : num(rng), den(rng));
                        r.canonicalize();
                        return ScalarExpr(r);
                    }));
}

bool AnyonRep::is_trivial() const {
    for (const auto& row : phi_)
        for (const auto& e : row)
            if (!e.is_one()) return false;
    return true;
}

std::size_t AnyonRep::basis_size() const {
    std::size_t n = 1;
    for (int i = 0; i < M_; ++i) n *= static_cast<std::size_t>(N_);
    return n;
}

SpinConfig AnyonRep::config(std::size_t index) const {
    SpinConfig c(static_cast<std::size_t>(M_));
    for (int i = M_ - 1; i >= 0; --i) {
        c[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(N_)) + 1;
        index /= static_cast<std::size_t>(N_);
    }
    return c;
}

std::size_t AnyonRep::index(const SpinConfig& c) const {
    if (c.size() != static_cast<std::size_t>(M_)) throw Error("configuration length must be M");
    std::size_t idx = 0;
    for (int a : c) {
        if (a < 1 || a > N_) throw Error("spin value out of range");
        idx = idx * static_cast<std::size_t>(N_) + static_cast<std::size_t>(a - 1);
    }
    return idx;
}

Json AnyonRep::to_json() const {
    Json rows = Json::array();
    for (const auto& row : phi_) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(e.to_string());
        rows.push_back(r);
    }
    return Json{{"N", N_}, {"M", M_}, {"phi", rows}};
}

AnyonRep AnyonRep::from_json(const Json& j, int M) {
    if (!j.is_object() || !j.contains("phi") || !j["phi"].is_array()) throw ParseError("phi file needs a 'phi' table");
    std::vector<std::vector<ScalarExpr>> t;
    for (const auto& row : j["phi"]) {
        if (!row.is_array()) throw ParseError("phi rows must be arrays");
        std::vector<ScalarExpr> r;
        for (const auto& e : row) {
            if (e.is_string())
                r.push_back(ScalarExpr::parse(e.get<std::string>()));
            else if (e.is_number_integer())
                r.push_back(ScalarExpr(e.get<long>()));
            else
                throw ParseError("phi entries must be expression strings or integers");
        }
        t.push_back(std::move(r));
    }
    const int N = static_cast<int>(t.size());
    return AnyonRep(N, M, std::move(t));
}

// Phase as sign times a Laurent monomial in phi_ab (a < b), so that identities
// are decided independently of the table values.
class PhaseTracker {
  public:
    explicit PhaseTracker(const AnyonRep& rep) : rep_(&rep), N_(rep.N()) {
        const std::size_t n = static_cast<std::size_t>(N_);
        slot_.assign(n * n, 0);
        dir_.assign(n * n, 0);
        int next = 0;
        for (int a = 1; a <= N_; ++a)
            for (int b = a + 1; b <= N_; ++b) {
                slot_[flat(a, b)] = slot_[flat(b, a)] = next;
                pairs_.emplace_back(a, b);
                ++next;
                dir_[flat(a, b)] = 1;
                dir_[flat(b, a)] = -1;
            }
    }

    struct Phase {
        int sign = 1;
        std::vector<int> exps;
        bool operator==(const Phase& o) const { return sign == o.sign && exps == o.exps; }
    };

    void reset(Phase& p) const {
        p.sign = 1;
        p.exps.assign(pairs_.size(), 0);
    }

    void times(Phase& p, int a, int b, int power) const {
        std::size_t f = flat(a, b);
        if (dir_[f] == 0) {
            if (power % 2 != 0) p.sign *= rep_->diag_sign_[static_cast<std::size_t>(a - 1)];
            return;
        }
        p.exps[static_cast<std::size_t>(slot_[f])] += dir_[f] * power;
    }

    /// P_kl applied in place.
    void apply(Phase& p, int k, int l, SpinConfig& c) const {
        int ak = c[static_cast<std::size_t>(k - 1)], al = c[static_cast<std::size_t>(l - 1)];
        times(p, ak, al, 1);
        for (int i = k + 1; i <= l - 1; ++i) {
            int t = c[static_cast<std::size_t>(i - 1)];
            times(p, t, al, 1);
            times(p, t, ak, -1);
        }
        std::swap(c[static_cast<std::size_t>(k - 1)], c[static_cast<std::size_t>(l - 1)]);
    }

    ScalarExpr value(const Phase& p) const {
        ScalarExpr v(p.sign);
        for (std::size_t i = 0; i < pairs_.size(); ++i)
            if (p.exps[i] != 0) v *= rep_->phi(pairs_[i].first, pairs_[i].second).pow(p.exps[i]);
        return v;
    }

    /// Exact equality: equal monomials, or equal values of the table.
    bool same(const Phase& x, const Phase& y) const { return x == y || value(x) == value(y); }

  private:
    const AnyonRep* rep_;
    int N_;
    std::vector<int> slot_, dir_;
    std::vector<std::pair<int, int>> pairs_;

    std::size_t flat(int a, int b) const {
        return static_cast<std::size_t>(a - 1) * static_cast<std::size_t>(N_) + static_cast<std::size_t>(b - 1);
    }
};

std::pair<ScalarExpr, SpinConfig> apply_pkl(const AnyonRep& rep, int k, int l, const SpinConfig& config) {
    if (k < 1 || l > rep.M() || k >= l) throw Error("apply_pkl needs 1 <= k < l <= M");
    rep.index(config);
    PhaseTracker tr(rep);
    PhaseTracker::Phase p;
    tr.reset(p);
    SpinConfig c = config;
    tr.apply(p, k, l, c);
    return {tr.value(p), c};
}

namespace {

using Phase = PhaseTracker::Phase;
using Step = std::pair<int, int>;

struct Outcome {
    Phase phase;
    SpinConfig config;
};

// Applies the steps right to left, as an operator product.
void run(const PhaseTracker& tr, const std::vector<Step>& steps, const SpinConfig& start, Outcome& o) {
    tr.reset(o.phase);
    o.config = start;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) tr.apply(o.phase, it->first, it->second, o.config);
}

Json config_json(const SpinConfig& c) { return Json(c); }

struct Tally {
    std::size_t cases = 0;
    Json witness = nullptr;
};

// P_kl on every basis state, with its phase stored as sparse exponents.
class TranspositionTable {
  public:
    TranspositionTable(const AnyonRep& rep, const PhaseTracker& tr) : M_(rep.M()) {
        const int P = M_ * (M_ - 1) / 2;
        entries_.reserve(rep.basis_size() * static_cast<std::size_t>(P));
        Phase ph;
        SpinConfig c;
        for (std::size_t idx = 0; idx < rep.basis_size(); ++idx)
            for (int k = 1; k <= M_; ++k)
                for (int l = k + 1; l <= M_; ++l) {
                    tr.reset(ph);
                    c = rep.config(idx);
                    tr.apply(ph, k, l, c);
                    Entry e;
                    e.target = rep.index(c);
                    e.sign = ph.sign;
                    e.begin = pool_.size();
                    for (std::size_t s = 0; s < ph.exps.size(); ++s)
                        if (ph.exps[s] != 0) pool_.emplace_back(static_cast<int>(s), ph.exps[s]);
                    e.end = pool_.size();
                    entries_.push_back(e);
                }
    }

    int pair_id(int k, int l) const { return (k - 1) * (2 * M_ - k) / 2 + (l - k - 1); }

    struct Entry {
        std::size_t target = 0, begin = 0, end = 0;
        int sign = 1;
    };
    const Entry& at(std::size_t idx, int pair) const {
        return entries_[idx * static_cast<std::size_t>(M_ * (M_ - 1) / 2) + static_cast<std::size_t>(pair)];
    }
    const std::vector<std::pair<int, int>>& pool() const { return pool_; }

  private:
    int M_;
    std::vector<Entry> entries_;
    std::vector<std::pair<int, int>> pool_;
};

// Records the first configuration where the two products differ.
class Comparer {
  public:
    Comparer(const PhaseTracker& tr, const TranspositionTable& table, std::size_t slots)
        : tr_(tr), table_(table), scratch_(slots, 0) {}

    struct Case {
        std::vector<Step> lhs, rhs;
        std::vector<int> lhs_ids, rhs_ids;
    };

    Case make(std::vector<Step> lhs, std::vector<Step> rhs) const {
        Case c{std::move(lhs), std::move(rhs), {}, {}};
        for (const auto& [k, l] : c.lhs) c.lhs_ids.push_back(table_.pair_id(k, l));
        for (const auto& [k, l] : c.rhs) c.rhs_ids.push_back(table_.pair_id(k, l));
        return c;
    }

    void operator()(const Case& cs, std::size_t idx, const AnyonRep& rep, Tally& t) {
        ++t.cases;
        if (!t.witness.is_null()) return;
        int sx = 1, sy = 1;
        std::size_t ix = accumulate(cs.lhs_ids, idx, 1, sx);
        std::size_t iy = accumulate(cs.rhs_ids, idx, -1, sy);
        bool monomials_equal = true;
        for (int s : touched_) {
            if (scratch_[static_cast<std::size_t>(s)] != 0) monomials_equal = false;
            scratch_[static_cast<std::size_t>(s)] = 0;
        }
        touched_.clear();
        if (ix == iy && sx == sy && monomials_equal) return;
        SpinConfig c = rep.config(idx);
        run(tr_, cs.lhs, c, x_);
        run(tr_, cs.rhs, c, y_);
        if (x_.config == y_.config && tr_.same(x_.phase, y_.phase)) return;
        auto side = [&](const std::vector<Step>& steps, const Outcome& o) {
            return Json{{"steps", steps}, {"config", config_json(o.config)}, {"phase", tr_.value(o.phase).to_string()}};
        };
        t.witness = Json{{"config", config_json(c)}, {"lhs", side(cs.lhs, x_)}, {"rhs", side(cs.rhs, y_)}};
    }

  private:
    const PhaseTracker& tr_;
    const TranspositionTable& table_;
    std::vector<int> scratch_, touched_;
    Outcome x_, y_;

    // Operator product right to left; exponents are added into scratch with the given weight.
    std::size_t accumulate(const std::vector<int>& ids, std::size_t idx, int weight, int& sign) {
        for (auto it = ids.rbegin(); it != ids.rend(); ++it) {
            const auto& e = table_.at(idx, *it);
            sign *= e.sign;
            for (std::size_t p = e.begin; p < e.end; ++p) {
                const auto& [slot, exp] = table_.pool()[p];
                scratch_[static_cast<std::size_t>(slot)] += weight * exp;
                touched_.push_back(slot);
            }
            idx = e.target;
        }
        return idx;
    }
};

}  // namespace

Report check_symmetric_group(const AnyonRep& rep) {
    const int N = rep.N(), M = rep.M();
    double size = 1;
    for (int i = 0; i < M; ++i) size *= N;
    if (size > 1e4) throw Error("basis too large: N^M must not exceed 10^4");
    Report report("check-permutation");
    report.note("N", N);
    report.note("M", M);
    report.note("phi", rep.to_json()["phi"]);
    PhaseTracker tr(rep);
    const bool trivial = rep.is_trivial();

    Tally inv, disjoint, coxeter, longform;
    TranspositionTable table(rep, tr);
    Comparer compare(tr, table, static_cast<std::size_t>(N * (N - 1) / 2));
    std::vector<Comparer::Case> inv_cases, disjoint_cases, coxeter_cases, long_cases;
    for (int k = 1; k <= M; ++k)
        for (int l = k + 1; l <= M; ++l) {
            inv_cases.push_back(compare.make({{k, l}, {k, l}}, {}));
            for (int m = 1; m <= M; ++m)
                for (int n = m + 1; n <= M; ++n) {
                    if (m == k || m == l || n == k || n == l || std::make_pair(m, n) < std::make_pair(k, l)) continue;
                    disjoint_cases.push_back(compare.make({{k, l}, {m, n}}, {{m, n}, {k, l}}));
                }
            for (int m = l + 1; m <= M; ++m) {
                coxeter_cases.push_back(compare.make({{k, l}, {l, m}, {k, l}}, {{l, m}, {k, l}, {l, m}}));
                long_cases.push_back(compare.make({{k, l}, {l, m}, {k, l}}, {{k, m}}));
            }
        }
    for (std::size_t idx = 0; idx < rep.basis_size(); ++idx) {
        for (const auto& cs : inv_cases) compare(cs, idx, rep, inv);
        for (const auto& cs : disjoint_cases) compare(cs, idx, rep, disjoint);
        for (const auto& cs : coxeter_cases) compare(cs, idx, rep, coxeter);
        for (const auto& cs : long_cases) compare(cs, idx, rep, longform);
    }
    auto add = [&](const std::string& name, const Tally& t, bool asserted) {
        Check ch;
        ch.name = name;
        ch.detail = Json{{"cases", t.cases}};
        ch.status = t.witness.is_null() ? Status::pass : Status::fail;
        ch.witness = t.witness;
        ch.asserted = asserted;
        report.add(std::move(ch));
    };
    add("involution", inv, true);
    add("disjoint-commutation", disjoint, true);
    if (M >= 3) {
        add("coxeter", coxeter, trivial);
        add("long-transposition", longform, trivial);
    }
    return report;
}

}  // namespace ybt
