// ybt: batch front-end for the Yang-Baxter twist workbench.
//
// Every subcommand prints a JSON report (or writes it with --report) and
// exits 0 when all asserted checks pass, 1 when one fails, 2 on bad input.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "ybt/algebra.hpp"
#include "ybt/csmodel.hpp"
#include "ybt/io.hpp"
#include "ybt/rmatrix.hpp"
#include "ybt/twistcore.hpp"
#include "ybt/yangian.hpp"

using namespace ybt;

namespace {

constexpr int kUsageError = 2;

struct Options {
    std::string r, tw, presentation, compare, phi, out, report;
    std::string mode, kind = "both", plane = "both", table = "random", h = "h";
    int N = 2, M = 2, n_max = 5, n = -1, m = -1, samples = 20;
    std::uint64_t seed = 1;
    bool single = false, spectralless = false;
};

std::uint64_t env_seed() {
    const char* s = std::getenv("YBT_SEED");
    if (!s || !*s) return 1;
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (*end != '\0') throw ParseError(std::string("YBT_SEED is not an unsigned integer: ") + s);
    return v;
}

class Runner {
  public:
    Options opt;

    void add_seed(CLI::App* sub) { sub->add_option("--seed", opt.seed, "RNG seed (default: $YBT_SEED or 1)"); }
    void add_mode(CLI::App* sub) {
        add_seed(sub);
        sub->add_option("--mode", opt.mode, "expand or sample (default: expand for N <= 3)")
            ->check(CLI::IsMember({"expand", "sample"}));
        sub->add_option("--samples", opt.samples, "sample points; implies --mode sample")->check(CLI::PositiveNumber);
    }
    void add_report(CLI::App* sub) { sub->add_option("--report", opt.report, "write the report here instead of stdout"); }

    ZeroTest mode_for(int N, const CLI::App* sub) const {
        if (opt.mode == "expand") return ZeroTest::expand();
        if (opt.mode == "sample" || sub->count("--samples") > 0) return ZeroTest::sampled(opt.samples, opt.seed);
        return default_mode(N, opt.seed, opt.samples);
    }

    int emit(Report report, Json inputs, const ZeroTest* mode = nullptr) const {
        report.set_inputs(std::move(inputs));
        report.set_seed(opt.seed);
        if (mode) report.set_mode(mode->label());
        std::string text = report.dump();
        if (opt.report.empty())
            std::cout << text << "\n";
        else
            write_text_file(opt.report, text + "\n");
        if (!report.passed()) {
            for (const auto& c : report.checks())
                if (c.asserted && c.status == Status::fail) std::cerr << "FAIL " << c.name << "\n";
            return 1;
        }
        return 0;
    }
};

std::vector<Plane> planes_of(const std::string& s) {
    if (s == "both") return {Plane::symmetric, Plane::exterior};
    return {plane_from_string(s)};
}

std::vector<YangianKind> kinds_of(const std::string& s) {
    if (s == "both") return {YangianKind::standard, YangianKind::coloured};
    return {yangian_kind_from_string(s)};
}

// Generated relations rewritten into the alphabet of a presentation file;
// T_ij is matched to Tt_ij when only the latter exists there.
std::vector<FreeElement> into_alphabet(const std::vector<FreeElement>& rels, const Alphabet& from, const Alphabet& to) {
    std::vector<FreeElement> out;
    for (const auto& r : rels)
        out.push_back(r.substitute([&](int g) {
            const std::string& name = from.name(g);
            if (to.contains(name)) return FreeElement::letter(to.index(name));
            if (name.rfind("T_", 0) == 0 && to.contains("Tt" + name.substr(1)))
                return FreeElement::letter(to.index("Tt" + name.substr(1)));
            throw ParseError("generator " + name + " is missing from the presentation");
        }));
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"Exact verification of particle-conserving Yang-Baxter solutions and their twists", "ybt"};
    app.require_subcommand(1);
    Runner rn;
    Options& o = rn.opt;
    o.seed = env_seed();

    auto need_r = [&](CLI::App* s) { s->add_option("--r", o.r, "R-matrix spec (JSON)")->required()->check(CLI::ExistingFile); };
    auto opt_tw = [&](CLI::App* s) { return s->add_option("--tw", o.tw, "twist data (JSON)")->check(CLI::ExistingFile); };
    auto need_N = [&](CLI::App* s) { s->add_option("--N", o.N, "dimension")->required()->check(CLI::Range(1, 64)); };
    auto opt_pres = [&](CLI::App* s) {
        s->add_option("--presentation", o.presentation, "presentation (JSON) replacing the built-in rules")
            ->check(CLI::ExistingFile);
    };

    auto* ybe = app.add_subcommand("verify-ybe", "Yang-Baxter equation of an R-matrix");
    need_r(ybe);
    rn.add_mode(ybe);
    rn.add_report(ybe);

    auto* cons = app.add_subcommand("verify-constraints", "constraint system, and its invariance under a twist");
    need_r(cons);
    opt_tw(cons);
    rn.add_mode(cons);
    rn.add_report(cons);

    auto* tws = app.add_subcommand("twist", "apply a twist and emit the transformed R spec");
    need_r(tws);
    opt_tw(tws)->required();
    tws->add_option("--out", o.out, "output R spec (default stdout)");
    tws->add_flag("--single", o.single, "single-spectral transformation with colours at lambda, mu");

    auto* seq = app.add_subcommand("verify-s-equality", "S_1 = S_2 = S_3 = S_4 for every index quadruple");
    auto* seq_tw = opt_tw(seq);
    seq->add_option("--N", o.N, "dimension with generic twist data (when --tw is absent)")->excludes(seq_tw);
    rn.add_seed(seq);
    rn.add_report(seq);

    auto* rtt = app.add_subcommand("gen-rtt", "RTT relations of an R-matrix");
    need_r(rtt);
    rtt->add_flag("--spectralless", o.spectralless, "drop the spectral parameters (default for constant R)");
    rtt->add_option("--out", o.out, "write the row-reduced presentation here");
    rtt->add_option("--compare", o.compare, "presentation (JSON) the relations must be equivalent to")
        ->check(CLI::ExistingFile);
    rn.add_seed(rtt);
    rn.add_report(rtt);

    auto* real = app.add_subcommand("verify-realization-gl", "multiparameter relations from GL_q and tau generators");
    need_N(real);
    opt_pres(real);
    rn.add_seed(real);
    rn.add_report(real);

    auto* primed = app.add_subcommand("verify-primed-qybe", "QYBE of the block R' and T'");
    need_N(primed);
    opt_pres(primed);
    rn.add_seed(primed);
    rn.add_report(primed);

    auto* coact = app.add_subcommand("verify-coaction", "coaction invariance of the quantum planes and X relations");
    need_N(coact);
    coact->add_option("--plane", o.plane, "symmetric, exterior or both")
        ->check(CLI::IsMember({"symmetric", "exterior", "both"}));
    opt_pres(coact);
    rn.add_seed(coact);
    rn.add_report(coact);

    auto* gmr = app.add_subcommand("gen-mode-relations", "Yangian mode relations and their structural match");
    gmr->add_option("--kind", o.kind, "standard, coloured or both")->check(CLI::IsMember({"standard", "coloured", "both"}));
    gmr->add_option("--N", o.N, "dimension")->check(CLI::Range(1, 8));
    gmr->add_option("--n-max", o.n_max, "highest mode kept")->check(CLI::Range(0, 12));
    gmr->add_option("--out", o.out, "write the relation dump here");
    rn.add_seed(gmr);
    rn.add_report(gmr);

    auto* span = app.add_subcommand("check-span", "combined relation in the span of the generated relations");
    span->add_option("--kind", o.kind, "standard, coloured or both")->check(CLI::IsMember({"standard", "coloured", "both"}));
    span->add_option("--N", o.N, "dimension")->check(CLI::Range(1, 8));
    span->add_option("--n-max", o.n_max, "highest mode kept")->check(CLI::Range(1, 12));
    span->add_option("--n", o.n, "level n (default: every n + m < n-max)")->check(CLI::NonNegativeNumber);
    span->add_option("--m", o.m, "level m")->check(CLI::NonNegativeNumber);
    rn.add_seed(span);
    rn.add_report(span);

    auto* eval = app.add_subcommand("verify-eval-qybe", "evaluation representation T = lambda + h P");
    need_N(eval);
    eval->add_option("--h-value", o.h, "value of h (expression)");
    eval->add_option("--r", o.r, "R-matrix spec replacing rational(N, h)")->check(CLI::ExistingFile);
    opt_tw(eval);
    rn.add_mode(eval);
    rn.add_report(eval);

    auto* col = app.add_subcommand("verify-coloured-qybe", "coloured evaluation representation");
    need_N(col);
    col->add_option("--h-value", o.h, "value of h (expression)");
    col->add_option("--r", o.r, "R-matrix spec replacing the twisted rational R")->check(CLI::ExistingFile);
    opt_tw(col)->required();
    rn.add_mode(col);
    rn.add_report(col);

    auto* perm = app.add_subcommand("check-permutation", "anyon-like permutation operators on spin configurations");
    need_N(perm);
    perm->add_option("--M", o.M, "number of sites")->required()->check(CLI::Range(2, 64));
    auto* phi_opt = perm->add_option("--phi", o.phi, "phi table (JSON)")->check(CLI::ExistingFile);
    perm->add_option("--table", o.table, "random, generic or trivial (when --phi is absent)")
        ->check(CLI::IsMember({"random", "generic", "trivial"}))
        ->excludes(phi_opt);
    rn.add_seed(perm);
    rn.add_report(perm);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kUsageError;
    }

    if (ybe->parsed()) {
        ParticleConservingR R = r_from_json(read_json_file(o.r));
        ZeroTest mode = rn.mode_for(R.N(), ybe);
        return rn.emit(check_ybe(R, mode), Json{{"r", o.r}}, &mode);
    }
    if (cons->parsed()) {
        ParticleConservingR R = r_from_json(read_json_file(o.r));
        ZeroTest mode = rn.mode_for(R.N(), cons);
        Report report = check_constraints(R, mode);
        Json inputs{{"r", o.r}};
        if (!o.tw.empty()) {
            report.absorb(check_constraint_invariance(R, twist_from_json(read_json_file(o.tw)), mode), "invariance/");
            inputs["tw"] = o.tw;
        }
        return rn.emit(std::move(report), inputs, &mode);
    }
    if (tws->parsed()) {
        ParticleConservingR R = r_from_json(read_json_file(o.r));
        TwistData tw = twist_from_json(read_json_file(o.tw));
        if (tw.N != R.N()) throw ParseError("twist data and R have different N");
        std::string text = r_to_json(o.single ? twist_single(R, tw) : twist(R, tw)).dump(2) + "\n";
        if (o.out.empty())
            std::cout << text;
        else
            write_text_file(o.out, text);
        return 0;
    }
    if (seq->parsed()) {
        TwistData tw = o.tw.empty() ? TwistData::generic(o.N) : twist_from_json(read_json_file(o.tw));
        Json inputs = o.tw.empty() ? Json{{"N", o.N}, {"twist", "generic"}} : Json{{"tw", o.tw}};
        return rn.emit(verify_s_equality(tw), inputs);
    }
    if (rtt->parsed()) {
        ParticleConservingR R = r_from_json(read_json_file(o.r));
        bool spectralless = o.spectralless || R.kind() == SpectralKind::none;
        Alphabet a;
        auto rels = generate_rtt_relations(R, spectralless, a);
        Report report("gen-rtt");
        report.set_mode("expand");
        report.note("alphabet", a.names());
        Json listed = Json::array();
        for (const auto& r : rels) listed.push_back(r.to_string(a));
        report.note("relations", listed);
        report.add("relations-generated", true, Json{{"count", rels.size()}});
        Json inputs{{"r", o.r}};
        if (!o.out.empty()) write_text_file(o.out, QuadraticPresentation::from_relations(a, rels).to_json().dump(2) + "\n");
        if (!o.compare.empty()) {
            auto pres = QuadraticPresentation::from_json(read_json_file(o.compare));
            auto mine = into_alphabet(rels, a, pres.alphabet());
            auto theirs = pres.relations();
            auto miss = first_nonzero_reduction(mine, pres);
            Json w = nullptr;
            if (miss) w = Json{{"generated", rels[*miss].to_string(a)}, {"normal_form", pres.normal_form(mine[*miss]).to_string(pres.alphabet())}};
            bool ok = !miss && equivalent_relations(pres.alphabet(), mine, theirs);
            if (!miss && !ok) w = Json{{"reason", "presentation has relations outside the generated span"}};
            report.add("equivalence", ok, Json{{"presentation", o.compare}}, w);
            inputs["compare"] = o.compare;
        }
        return rn.emit(std::move(report), inputs);
    }
    if (real->parsed() || primed->parsed()) {
        RootTable s = RootTable::generic(o.N);
        QuadraticPresentation ext = o.presentation.empty() ? extended_presentation(o.N, s)
                                                           : QuadraticPresentation::from_json(read_json_file(o.presentation));
        Json inputs{{"N", o.N}};
        if (!o.presentation.empty()) inputs["presentation"] = o.presentation;
        Report report = real->parsed() ? verify_realization_gl(o.N, s, ext) : verify_primed_qybe(o.N, s, ext);
        return rn.emit(std::move(report), inputs);
    }
    if (coact->parsed()) {
        auto planes = planes_of(o.plane);
        if (!o.presentation.empty() && planes.size() != 1)
            throw ParseError("--presentation needs a single --plane");
        RootTable s = RootTable::generic(o.N);
        Report report("verify-coaction");
        report.set_mode("expand");
        for (Plane p : planes) {
            QuadraticPresentation combined = o.presentation.empty()
                                                 ? coaction_presentation(o.N, p, s)
                                                 : QuadraticPresentation::from_json(read_json_file(o.presentation));
            report.absorb(verify_coaction_invariance(o.N, p, s, combined), to_string(p) + "/");
            report.absorb(verify_x_relations(o.N, p), to_string(p) + "/x/");
        }
        Json inputs{{"N", o.N}, {"plane", o.plane}};
        if (!o.presentation.empty()) inputs["presentation"] = o.presentation;
        return rn.emit(std::move(report), inputs);
    }
    if (gmr->parsed()) {
        Report report("gen-mode-relations");
        report.set_mode("expand");
        Json dump = Json::object();
        for (YangianKind k : kinds_of(o.kind)) {
            ModeRelationSet set = generate_mode_relations(k, o.N, o.n_max);
            report.absorb(check_structural_match(set), to_string(k) + "/");
            dump[to_string(k)] = set.to_json();
        }
        if (!o.out.empty()) write_text_file(o.out, dump.dump(2) + "\n");
        return rn.emit(std::move(report), Json{{"kind", o.kind}, {"N", o.N}, {"n_max", o.n_max}});
    }
    if (span->parsed()) {
        if ((o.n < 0) != (o.m < 0)) throw ParseError("--n and --m go together");
        Report report("check-span");
        report.set_mode("expand");
        for (YangianKind k : kinds_of(o.kind)) {
            ModeRelationSet set = generate_mode_relations(k, o.N, o.n_max);
            for (int n = 0; n < o.n_max; ++n)
                for (int m = 0; n + m < o.n_max; ++m) {
                    if (o.n >= 0 && (n != o.n || m != o.m)) continue;
                    report.absorb(check_combined_relation(set, n, m),
                                  to_string(k) + "/" + std::to_string(n) + "," + std::to_string(m) + "/");
                }
        }
        return rn.emit(std::move(report), Json{{"kind", o.kind}, {"N", o.N}, {"n_max", o.n_max}, {"n", o.n}, {"m", o.m}});
    }
    if (eval->parsed() || col->parsed()) {
        const bool coloured = col->parsed();
        CLI::App* sub = coloured ? col : eval;
        TwistData tw = o.tw.empty() ? TwistData() : twist_from_json(read_json_file(o.tw));
        if (!o.tw.empty() && tw.N != o.N) throw ParseError("twist data and --N differ");
        EvalRep rep = build_eval_rep(o.N, ScalarExpr::parse(o.h), tw);
        std::optional<ParticleConservingR> R;
        if (!o.r.empty()) R = r_from_json(read_json_file(o.r));
        ZeroTest mode = rn.mode_for(o.N, sub);
        Json inputs{{"N", o.N}, {"h", o.h}};
        if (!o.r.empty()) inputs["r"] = o.r;
        if (!o.tw.empty()) inputs["tw"] = o.tw;
        if (coloured) return rn.emit(check_coloured_qybe(rep, mode, R), inputs, &mode);
        Report report = check_qybe_eval(rep, mode, R);
        if (!o.tw.empty()) report.absorb(check_extended_relations(rep), "extended/");
        return rn.emit(std::move(report), inputs, &mode);
    }
    if (perm->parsed()) {
        std::mt19937_64 rng(o.seed);
        AnyonRep rep = !o.phi.empty()       ? AnyonRep::from_json(read_json_file(o.phi), o.M)
                       : o.table == "generic" ? AnyonRep::generic(o.N, o.M)
                       : o.table == "trivial" ? AnyonRep::trivial(o.N, o.M)
                                              : AnyonRep::random(o.N, o.M, rng);
        if (rep.N() != o.N) throw ParseError("phi table is not N x N");
        Json inputs{{"N", o.N}, {"M", o.M}};
        if (o.phi.empty())
            inputs["table"] = o.table;
        else
            inputs["phi"] = o.phi;
        return rn.emit(check_symmetric_group(rep), inputs);
    }
    return kUsageError;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "ybt: " << e.what() << "\n";
        return kUsageError;
    }
}
