// Acceptance run: one PASS/FAIL line per criterion, exact arithmetic only.
//
//   ybt_acceptance <path to ybt> <tests/data directory>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ybt/algebra.hpp"
#include "ybt/csmodel.hpp"
#include "ybt/io.hpp"
#include "ybt/rmatrix.hpp"
#include "ybt/twistcore.hpp"
#include "ybt/yangian.hpp"

using namespace ybt;

namespace {

std::string g_ybt, g_data;

// Collects the sub-checks of one criterion; the first failure is kept for the summary line.
class Criterion {
  public:
    void need(bool ok, const std::string& what) {
        ++checks_;
        if (ok) return;
        if (first_failure_.empty()) first_failure_ = what;
        ++failures_;
        std::cerr << "  failed: " << what << "\n";
    }
    void need(const Report& r, const std::string& what) {
        bool ok = r.passed();
        if (!ok) {
            for (const auto& c : r.checks())
                if (c.asserted && c.status == Status::fail) {
                    need(false, what + ": " + c.name);
                    return;
                }
        }
        need(ok, what);
    }
    void note(std::string s) { notes_.push_back(std::move(s)); }

    int checks() const { return checks_; }
    int failures() const { return failures_; }
    const std::string& first_failure() const { return first_failure_; }
    const std::vector<std::string>& notes() const { return notes_; }

  private:
    int checks_ = 0, failures_ = 0;
    std::string first_failure_;
    std::vector<std::string> notes_;
};

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string path = (std::filesystem::current_path() / "acceptance_cli_out.json").string();
    std::string cmd = "cd '" + g_data + "' && '" + g_ybt + "' " + args + " > '" + path + "' 2>/dev/null";
    int status = std::system(cmd.c_str());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::remove(path.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

bool has_witness(const Report& r) {
    for (const auto& c : r.checks())
        if (c.status == Status::fail && !c.witness.is_null()) return true;
    return false;
}

// Failing report whose failure carries a witness.
bool fails_with_witness(const Report& r) { return !r.passed() && has_witness(r); }

TwistData colour_choice(int N, int which) {
    TwistData tw = TwistData::identity(N);
    tw.s = RootTable::generic(N);
    ScalarExpr z(tw.colour);
    if (which == 0) {
        tw.v1[1] = ScalarExpr(1) + z;
    } else {
        for (int i = 0; i < N; ++i) {
            tw.v1[static_cast<std::size_t>(i)] = ScalarExpr(i + 2) - z;
            tw.v2[static_cast<std::size_t>(i)] = ScalarExpr(1) + z * ScalarExpr(i + 1);
        }
    }
    return tw;
}

ParticleConservingR perturb_f(ParticleConservingR R, int i, int j) {
    R.set_f(i, j, R.f(i, j) + ScalarExpr(1));
    return R;
}

std::vector<FreeElement> rename(const std::vector<FreeElement>& rels, const Alphabet& from, const Alphabet& to,
                                const std::string& old_prefix, const std::string& new_prefix) {
    std::vector<FreeElement> out;
    for (const auto& r : rels)
        out.push_back(r.substitute([&](int g) {
            return FreeElement::letter(to.index(new_prefix + from.name(g).substr(old_prefix.size())));
        }));
    return out;
}

// ---------------------------------------------------------------------------

void builder_validity(Criterion& c) {
    for (int N = 2; N <= 4; ++N) {
        ZeroTest mode = default_mode(N, 100 + static_cast<std::uint64_t>(N), 20);
        c.need(check_ybe(ParticleConservingR::trig(N), mode), "trig N=" + std::to_string(N));
        c.need(check_ybe(ParticleConservingR::rational(N), mode), "rational N=" + std::to_string(N));
    }
}

void twist_closure(Criterion& c) {
    std::mt19937_64 rng(2024);
    for (int k = 0; k < 10; ++k) {
        const int N = 2 + k % 2;
        TwistData tw = TwistData::random(N, rng, 2);
        const std::string tag = " table " + std::to_string(k);
        ZeroTest mode = ZeroTest::sampled(20, 300 + static_cast<std::uint64_t>(k));
        c.need(check_ybe(twist(ParticleConservingR::trig(N), tw), mode), "twisted trig" + tag);
        c.need(check_ybe(twist(ParticleConservingR::rational(N), tw), mode), "twisted rational" + tag);

        TwistData flat = TwistData::identity(N);
        flat.s = tw.s;
        ParticleConservingR a = twist(ParticleConservingR::trig(N), flat), b = ParticleConservingR::multiparam(N, tw.s);
        bool same = true;
        for (int i = 1; i <= N; ++i)
            for (int j = 1; j <= N; ++j) same = same && a.f(i, j) == b.f(i, j) && a.g(i, j) == b.g(i, j);
        c.need(same, "v = 1 twist of trig equals multiparam" + tag);
    }
}

void constraint_system(Criterion& c) {
    for (int N = 2; N <= 3; ++N) {
        const std::string tag = " N=" + std::to_string(N);
        TwistData tw = TwistData::generic(N);
        for (const auto& [name, R] : {std::pair{"trig", ParticleConservingR::trig(N)},
                                      std::pair{"rational", ParticleConservingR::rational(N)}}) {
            c.need(check_constraints(R, ZeroTest::expand()), std::string(name) + " constraints" + tag);
            Report inv = check_constraint_invariance(R, tw, ZeroTest::expand());
            bool prefactors = true;
            for (const auto& ch : inv.checks()) prefactors = prefactors && ch.detail.contains("prefactors");
            c.need(inv, std::string(name) + " invariance" + tag);
            c.need(prefactors, std::string(name) + " invariance lists prefactors" + tag);
        }
    }
}

void s_identity(Criterion& c) {
    for (int N = 2; N <= 3; ++N) {
        Report r = verify_s_equality(TwistData::generic(N));
        c.need(r, "S_1 = S_2 = S_3 = S_4 N=" + std::to_string(N));
    }
}

void rtt_generation(Criterion& c) {
    Alphabet a;
    auto rels = generate_rtt_relations(ParticleConservingR::trig(2), true, a);
    auto gl = gl_q_presentation(2);
    c.need(a.names() == gl.alphabet().names(), "trig alphabet");
    c.need(equivalent_relations(a, rels, gl.relations()), "trig(2) relations equivalent to GL_q(2)");

    RootTable s = RootTable::generic(2);
    Alphabet b;
    auto mrels = generate_rtt_relations(ParticleConservingR::multiparam(2, s), true, b);
    auto mp = multiparam_presentation(2, s);
    c.need(equivalent_relations(b, mrels, rename(mp.relations(), mp.alphabet(), b, "Tt", "T")),
           "multiparam(2) relations equivalent to the deformed relations");
    c.need(!equivalent_relations(b, mrels, gl.relations()), "multiparam(2) relations differ from GL_q(2)");
}

void gl_realization(Criterion& c) {
    // Hand computation at N = 2: both sides of Tt_11 Tt_12 = q^-1 phi_12 Tt_12 Tt_11
    // reduce to s12^-1 tau_1^3 tau_2 T_11 T_12.
    RootTable s = RootTable::generic(2);
    auto ext = extended_presentation(2, s);
    auto W = [&](std::initializer_list<std::string> letters, ScalarExpr k = 1) {
        return FreeElement::word(ext.alphabet().parse_word(letters), std::move(k));
    };
    ScalarExpr s12 = ScalarExpr::root(1, 2);
    FreeElement Tt11 = W({"tau_1", "tau_1", "T_1_1"}), Tt12 = W({"tau_1", "tau_2", "T_1_2"}, s12.inverse());
    FreeElement expected = W({"tau_1", "tau_1", "tau_1", "tau_2", "T_1_1", "T_1_2"}, s12.inverse());
    c.need(ext.normal_form(Tt11 * Tt12).equals(expected), "hand oracle, left side");
    c.need(ext.normal_form(Tt12 * Tt11 * (ScalarExpr::parse("q^-1") * s12.pow(2))).equals(expected),
           "hand oracle, right side");
    c.need(verify_realization_gl(2), "realization N=2");
    c.need(verify_realization_gl(3), "realization N=3");
}

void primed(Criterion& c) {
    for (int N = 2; N <= 3; ++N) c.need(verify_primed_qybe(N), "primed QYBE N=" + std::to_string(N));
}

void planes(Criterion& c) {
    for (int N = 2; N <= 3; ++N)
        for (Plane p : {Plane::symmetric, Plane::exterior}) {
            const std::string tag = " " + to_string(p) + " N=" + std::to_string(N);
            c.need(verify_coaction_invariance(N, p), "coaction" + tag);
            c.need(verify_x_relations(N, p), "X relations" + tag);
        }
}

void yangian_modes(Criterion& c) {
    ModeRelationSet standard = generate_mode_relations(YangianKind::standard, 2, 5);
    ModeRelationSet coloured = generate_mode_relations(YangianKind::coloured, 2, 5);
    c.need(check_structural_match(standard), "standard families match");
    c.need(check_structural_match(coloured), "coloured families match");
    c.need(check_colourless_limit(coloured, standard), "colourless limit");
    c.need(check_defining_relations(2), "defining relation from the twisted rational R");
    int spans = 0;
    for (const ModeRelationSet* set : {&standard, &coloured})
        for (int n = 0; n <= 4; ++n)
            for (int m = 0; n + m <= 4; ++m) {
                ++spans;
                c.need(check_combined_relation(*set, n, m),
                       "combined relation " + to_string(set->kind) + " (" + std::to_string(n) + "," + std::to_string(m) + ")");
            }
    c.note(std::to_string(spans) + " span certificates");
}

void eval_rep(Criterion& c) {
    for (int N = 2; N <= 4; ++N)
        c.need(check_qybe_eval(build_eval_rep(N), ZeroTest::expand()), "eval QYBE N=" + std::to_string(N));
    for (int N = 2; N <= 3; ++N)
        for (int which = 0; which < 2; ++which) {
            const std::string tag = " N=" + std::to_string(N) + " colours " + std::to_string(which);
            EvalRep rep = build_eval_rep(N, ScalarExpr(params::h()), colour_choice(N, which));
            c.need(check_extended_relations(rep), "extended relations" + tag);
            Report r = check_coloured_qybe(rep, ZeroTest::expand());
            c.need(r, "coloured QYBE" + tag);
            bool paths = false;
            for (const auto& ch : r.checks()) paths = paths || (ch.name == "paths-agree" && ch.status == Status::pass);
            c.need(paths, "elementwise and matrix paths agree" + tag);
        }
}

void anyon(Criterion& c) {
    std::mt19937_64 rng(11);
    int sizes = 0, coxeter_generic_fail = 0, coxeter_generic_runs = 0;
    for (int N = 1; N <= 100; ++N)
        for (int M = 2;; ++M) {
            double size = 1;
            for (int i = 0; i < M; ++i) size *= N;
            // N = 1 has a single configuration for every M; M = 13 matches the largest N = 2 case.
            if (size > 1e4 || (N == 1 && M > 13)) break;
            ++sizes;
            const std::string tag = " N=" + std::to_string(N) + " M=" + std::to_string(M);
            for (int t = 0; t < 10; ++t) {
                Report r = check_symmetric_group(AnyonRep::random(N, M, rng));
                for (const auto& ch : r.checks())
                    if (ch.name == "involution" || ch.name == "disjoint-commutation")
                        c.need(ch.status == Status::pass, ch.name + tag);
            }
            Report trivial = check_symmetric_group(AnyonRep::trivial(N, M));
            c.need(trivial, "phi = 1" + tag);
        }
    // Generic phi: measured, with witnesses on failure.
    for (auto [N, M] : {std::pair{2, 3}, {2, 5}, {3, 3}, {3, 4}, {4, 3}}) {
        for (int d = 0; d < 2; ++d) {
            Report r = check_symmetric_group(AnyonRep::generic(N, M, std::vector<int>(static_cast<std::size_t>(N), d ? -1 : 1)));
            for (const auto& ch : r.checks()) {
                if (ch.name != "coxeter" && ch.name != "long-transposition") continue;
                ++coxeter_generic_runs;
                if (ch.status == Status::fail) {
                    ++coxeter_generic_fail;
                    c.need(!ch.witness.is_null(), "generic " + ch.name + " failure carries a witness");
                }
            }
        }
    }
    c.note(std::to_string(sizes) + " (N, M) sizes");
    c.note("generic-phi Coxeter/long-transposition failures: " + std::to_string(coxeter_generic_fail) + "/" +
           std::to_string(coxeter_generic_runs));
}

void negative_controls(Criterion& c) {
    // One f-table entry perturbed.
    ParticleConservingR bad_trig = perturb_f(ParticleConservingR::trig(2), 1, 2);
    c.need(fails_with_witness(check_ybe(bad_trig, ZeroTest::expand())), "check_ybe, perturbed f");
    c.need(fails_with_witness(check_ybe(bad_trig, ZeroTest::sampled(20, 5))), "check_ybe sampled, perturbed f");
    c.need(fails_with_witness(check_constraints(bad_trig, ZeroTest::expand())), "check_constraints, perturbed f");
    {
        Alphabet a;
        auto rels = generate_rtt_relations(bad_trig, true, a);
        c.need(!equivalent_relations(a, rels, gl_q_presentation(2).relations()), "RTT generation, perturbed f");
    }
    EvalRep rep = build_eval_rep(2);
    c.need(fails_with_witness(check_qybe_eval(rep, ZeroTest::expand(), perturb_f(ParticleConservingR::rational(2), 1, 2))),
           "check_qybe_eval, perturbed f");
    EvalRep col = build_eval_rep(2, ScalarExpr(params::h()), colour_choice(2, 0));
    c.need(fails_with_witness(check_coloured_qybe(
               col, ZeroTest::expand(), perturb_f(twist(ParticleConservingR::rational(2), col.tw), 2, 1))),
           "check_coloured_qybe, perturbed f");
    {
        // r without its root factor; at N = 2 the change cancels between S_1 and S_2.
        SClosedForms forms = SClosedForms::standard();
        forms.r = [](const TwistData& tw, int i, int j, const ScalarExpr& at) { return tw.u1(i, at) / tw.u1(j, at); };
        c.need(fails_with_witness(verify_s_equality(TwistData::generic(3), forms)),
               "verify_s_equality, perturbed closed form");
    }

    // One rewrite coefficient perturbed.
    RootTable s = RootTable::generic(2);
    {
        auto ext = extended_presentation(2, s);
        const Alphabet& a = ext.alphabet();
        int T12 = a.index("T_1_2"), tau1 = a.index("tau_1");
        ext.set_rule_coefficient(T12, tau1, {tau1, T12}, ScalarExpr(2));
        c.need(fails_with_witness(verify_realization_gl(2, s, ext)), "realization, perturbed rule");
        c.need(fails_with_witness(verify_primed_qybe(2, s, ext)), "primed QYBE, perturbed rule");
    }
    for (Plane p : {Plane::symmetric, Plane::exterior}) {
        auto combined = coaction_presentation(2, p, s);
        const Alphabet& a = combined.alphabet();
        int x1 = a.index("x_1"), x2 = a.index("x_2");
        const ScalarExpr old = combined.rules().at({x2, x1}).coefficient({x1, x2});
        combined.set_rule_coefficient(x2, x1, {x1, x2}, old + ScalarExpr(1));
        c.need(fails_with_witness(verify_coaction_invariance(2, p, s, combined)), "coaction " + to_string(p) + ", perturbed rule");
        auto plane = plane_presentation(2, p, s);
        const Alphabet& b = plane.alphabet();
        int y1 = b.index("y_1"), y2 = b.index("y_2");
        const ScalarExpr oldy = plane.rules().at({y2, y1}).coefficient({y1, y2});
        plane.set_rule_coefficient(y2, y1, {y1, y2}, oldy + ScalarExpr(1));
        c.need(fails_with_witness(verify_x_relations(2, p, s, plane)), "X relations " + to_string(p) + ", perturbed rule");
    }
    {
        ModeRelationSet set = generate_mode_relations(YangianKind::standard, 2, 3);
        for (auto& rel : set.relations)
            if (rel.family == "level-shift") {
                FreeElement::Terms terms = rel.expr.terms();
                FreeElement changed;
                bool first = true;
                for (const auto& [w, k] : terms) {
                    changed.add_term(w, first ? k * ScalarExpr(3) : k);
                    first = false;
                }
                rel.expr = changed;
            }
        c.need(fails_with_witness(check_combined_relation(set, 1, 1)), "span certificate, perturbed relations");
    }

    // The same controls through the command line: exit 1 with a witness.
    for (const char* args : {"verify-ybe --r trig2_corrupt.json", "verify-constraints --r trig2_corrupt.json",
                             "gen-rtt --r trig2.json --compare gl_q2_corrupt.json",
                             "verify-realization-gl --N 2 --presentation extended2_corrupt.json",
                             "verify-primed-qybe --N 2 --presentation extended2_corrupt.json",
                             "verify-coaction --N 2 --plane symmetric --presentation coaction2_symmetric_corrupt.json",
                             "verify-eval-qybe --N 2 --r trig2.json",
                             "verify-coloured-qybe --N 2 --tw tw2.json --r rational2.json"}) {
        CliResult r = run_cli(args);
        c.need(r.exit_code == 1 && r.out.find("\"witness\"") != std::string::npos, std::string("ybt ") + args);
    }
    // and the unperturbed inputs pass
    for (const char* args : {"verify-ybe --r trig2_tables.json", "gen-rtt --r trig2.json --compare gl_q2.json",
                             "verify-realization-gl --N 2 --presentation extended2.json"}) {
        CliResult r = run_cli(args);
        c.need(r.exit_code == 0, std::string("ybt ") + args);
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: ybt_acceptance <ybt> <data dir>\n";
        return 2;
    }
    g_ybt = std::filesystem::absolute(argv[1]).string();
    g_data = std::filesystem::absolute(argv[2]).string();

    const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria = {
        {"builder validity", builder_validity},
        {"twist closure", twist_closure},
        {"constraint system", constraint_system},
        {"S-factor identity", s_identity},
        {"RTT generation", rtt_generation},
        {"GL realization", gl_realization},
        {"primed quantum group", primed},
        {"quantum planes", planes},
        {"Yangian modes", yangian_modes},
        {"evaluation representation", eval_rep},
        {"anyon permutations", anyon},
        {"negative controls", negative_controls},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Criterion c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.need(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = c.failures() == 0 && c.checks() > 0;
        failed += ok ? 0 : 1;
        std::ostringstream line;
        line << (ok ? "PASS" : "FAIL") << " " << (i + 1) << ". " << criteria[i].first << ": " << c.checks() << " checks";
        if (!ok) line << ", " << c.failures() << " failed, first: " << c.first_failure();
        for (const auto& n : c.notes()) line << "; " << n;
        char t[32];
        std::snprintf(t, sizeof t, " (%.1fs)", secs);
        std::cout << line.str() << t << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
