#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ybt/csmodel.hpp"
#include "ybt/tensor.hpp"

using namespace ybt;

namespace {

ScalarExpr phi(int a, int b) { return ScalarExpr::symbol("phi_" + std::to_string(a) + "_" + std::to_string(b)); }

// Dense P_kl from the phase formula, counting occurrences between k and l directly.
Operator dense_pkl(const AnyonRep& rep, int k, int l) {
    const int N = rep.N(), M = rep.M();
    Operator P(std::vector<int>(static_cast<std::size_t>(M), N));
    for (std::size_t idx = 0; idx < rep.basis_size(); ++idx) {
        SpinConfig c = rep.config(idx);
        int ak = c[k - 1], al = c[l - 1];
        ScalarExpr phase = rep.phi(ak, al);
        for (int tau = 1; tau <= N; ++tau) {
            int n = 0;
            for (int i = k + 1; i <= l - 1; ++i) n += c[i - 1] == tau;
            phase *= (rep.phi(tau, al) / rep.phi(tau, ak)).pow(n);
        }
        SpinConfig s = c;
        std::swap(s[k - 1], s[l - 1]);
        P.set_flat(rep.index(s), idx, phase);
    }
    return P;
}

}  // namespace

TEST_CASE("single swaps") {
    AnyonRep rep = AnyonRep::generic(2, 3, {1, -1});
    auto [p1, c1] = apply_pkl(rep, 1, 2, {1, 2, 1});
    CHECK(p1 == phi(1, 2));
    CHECK(c1 == SpinConfig{2, 1, 1});
    auto [p2, c2] = apply_pkl(rep, 2, 3, {1, 2, 2});
    CHECK(p2 == ScalarExpr(-1));
    CHECK(c2 == SpinConfig{1, 2, 2});
    auto [p3, c3] = apply_pkl(rep, 1, 3, {1, 2, 1});
    CHECK(p3 == ScalarExpr(1));
    CHECK(c3 == SpinConfig{1, 2, 1});
    // phi_12 (phi_22 / phi_21) = -phi_12^2
    auto [p4, c4] = apply_pkl(rep, 1, 3, {1, 2, 2});
    CHECK(p4 == -phi(1, 2).pow(2));
    CHECK(c4 == SpinConfig{2, 2, 1});
    CHECK_THROWS(apply_pkl(rep, 2, 2, {1, 1, 1}));
    CHECK_THROWS(apply_pkl(rep, 1, 4, {1, 1, 1}));
}

TEST_CASE("constraints on the phi table") {
    auto t = AnyonRep::generic(2, 2).to_json();
    t["phi"][0][0] = "2";
    CHECK_THROWS_AS(AnyonRep::from_json(t, 2), DomainError);
    t["phi"][0][0] = "1";
    t["phi"][1][0] = "phi_1_2";
    CHECK_THROWS_AS(AnyonRep::from_json(t, 2), DomainError);
    t["phi"][1][0] = "phi_1_2^-1";
    CHECK_NOTHROW(AnyonRep::from_json(t, 2));
}

TEST_CASE("dense operators agree with the fast check") {
    AnyonRep rep = AnyonRep::generic(2, 3);
    for (int k = 1; k <= 3; ++k)
        for (int l = k + 1; l <= 3; ++l) {
            Operator P = dense_pkl(rep, k, l);
            CHECK((P * P).equals(Operator::identity({2, 2, 2})));
            for (std::size_t idx = 0; idx < rep.basis_size(); ++idx) {
                auto [ph, c] = apply_pkl(rep, k, l, rep.config(idx));
                CHECK(P.at_flat(rep.index(c), idx) == ph);
            }
        }
    Operator P12 = dense_pkl(rep, 1, 2), P23 = dense_pkl(rep, 2, 3), P13 = dense_pkl(rep, 1, 3);
    bool adjacent = (P12 * P23 * P12).equals(P23 * P12 * P23);
    Report r = check_symmetric_group(rep);
    const Check* cox = nullptr;
    for (const auto& c : r.checks())
        if (c.name == "coxeter") cox = &c;
    REQUIRE(cox);
    CHECK(adjacent == (cox->status == Status::pass));
    const Check* longform = nullptr;
    for (const auto& c : r.checks())
        if (c.name == "long-transposition") longform = &c;
    REQUIRE(longform);
    CHECK((P12 * P23 * P12).equals(P13) == (longform->status == Status::pass));
}

TEST_CASE("trivial phases give ordinary permutations") {
    for (auto [N, M] : std::vector<std::pair<int, int>>{{2, 3}, {3, 4}, {2, 6}}) {
        Report r = check_symmetric_group(AnyonRep::trivial(N, M));
        CHECK(r.passed());
        for (const auto& c : r.checks()) CHECK(c.asserted);
    }
}

TEST_CASE("involution and disjoint commutation for constrained phi") {
    std::mt19937_64 rng(5);
    for (auto [N, M] : std::vector<std::pair<int, int>>{{2, 3}, {3, 4}, {2, 7}, {5, 3}})
        for (const std::vector<int>& diag : {std::vector<int>{}, std::vector<int>(static_cast<std::size_t>(N), -1)}) {
            AnyonRep rep = AnyonRep::random(N, M, rng, diag);
            Report r = check_symmetric_group(rep);
            CHECK(r.passed());
            CHECK(r.checks()[0].status == Status::pass);
            CHECK(r.checks()[1].status == Status::pass);
        }
    CHECK(check_symmetric_group(AnyonRep::generic(3, 3, {1, -1, 1})).passed());
    CHECK_THROWS(check_symmetric_group(AnyonRep::trivial(2, 14)));
}
