#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ybt/rmatrix.hpp"

using namespace ybt;

namespace {

ScalarExpr P(const char* s) { return ScalarExpr::parse(s); }

std::map<Symbol, ScalarExpr> colour_collapse() {
    return {{params::alpha(), ScalarExpr(params::lambda())}, {params::beta(), ScalarExpr(params::mu())}};
}

}  // namespace

TEST_CASE("trig builder entries at q = 2") {
    Operator m = ParticleConservingR::trig(2).to_matrix().evaluate({{params::q(), Rational(2)}});
    CHECK(m.at({1, 1}, {1, 1}) == ScalarExpr(2));
    CHECK(m.at({1, 2}, {1, 2}) == ScalarExpr(1));
    CHECK(m.at({2, 1}, {2, 1}) == ScalarExpr(1));
    CHECK(m.at({2, 2}, {2, 2}) == ScalarExpr(2));
    CHECK(m.at({1, 2}, {2, 1}) == ScalarExpr(Rational(3, 2)));
    CHECK(m.nonzeros() == 5);
}

TEST_CASE("rational builder entries") {
    auto R = ParticleConservingR::rational(2);
    std::map<Symbol, Rational> pt{{params::lambda(), Rational(2)}, {params::mu(), Rational(1)}, {params::h(), Rational(1)}};
    CHECK(R.f(1, 1).eval(pt) == 2);
    CHECK(R.f(1, 2).eval(pt) == 1);
    CHECK(R.g(1, 2).eval(pt) == 1);
    CHECK(R.g(1, 1).is_zero());
    CHECK(R.source_f(1, 1) == P("lambda - mu"));
    CHECK(R.source_g(1, 1) == P("h"));
    Operator expected = P("lambda - mu") * Operator::identity({2, 2}) + P("h") * Operator::permutation(2);
    CHECK(R.to_matrix().equals(expected));
}

TEST_CASE("multiparam with phi = 1 is trig") {
    CHECK(ParticleConservingR::multiparam(3, RootTable::ones(3)).equals(ParticleConservingR::trig(3)));
    CHECK_FALSE(ParticleConservingR::multiparam(3, RootTable::generic(3)).equals(ParticleConservingR::trig(3)));
}

TEST_CASE("check_ybe examples") {
    CHECK(check_ybe(ParticleConservingR::identity(3), ZeroTest::expand()).passed());
    CHECK(check_ybe(ParticleConservingR::permutation(3), ZeroTest::expand()).passed());
    CHECK(check_ybe(ParticleConservingR::trig(3), ZeroTest::sampled(5, 1)).passed());
    CHECK(check_ybe(ParticleConservingR::trig(3), ZeroTest::expand()).passed());
    CHECK(check_ybe(ParticleConservingR::rational(3), ZeroTest::expand()).passed());
    CHECK(check_ybe(ParticleConservingR::multiparam(3, RootTable::generic(3)), ZeroTest::expand()).passed());
}

TEST_CASE("check_ybe rejects a corrupted table with a witness") {
    auto R = ParticleConservingR::trig(2);
    R.set_f(1, 2, P("2"));
    Report rep = check_ybe(R, ZeroTest::expand());
    CHECK_FALSE(rep.passed());
    CHECK(!rep.checks().front().witness.is_null());
    Report sampled = check_ybe(R, ZeroTest::sampled(5, 3));
    CHECK_FALSE(sampled.passed());
}

TEST_CASE("twist examples") {
    TwistData tw = TwistData::identity(3);
    tw.s = RootTable::generic(3);
    auto twisted = twist(ParticleConservingR::trig(3), tw);
    CHECK(twisted.kind() == SpectralKind::bicomponent);
    CHECK(twisted.equals(ParticleConservingR::multiparam(3, RootTable::generic(3))));
    CHECK(twist(ParticleConservingR::trig(3), TwistData::identity(3)).equals(ParticleConservingR::trig(3)));
    TwistData gen = TwistData::generic(2);
    CHECK(twist(ParticleConservingR::rational(2), gen).equals(ParticleConservingR::coloured_rational(2, gen)));
    auto cr = twist(ParticleConservingR::rational(2), gen);
    CHECK(cr.source_g(1, 1) == ParticleConservingR::coloured_rational(2, gen).source_g(1, 1));
}

TEST_CASE("ff matrices") {
    TwistData tw = TwistData::generic(2);
    tw.v2 = tw.v1;
    auto [F, Fh] = ff_matrices(tw);
    CHECK(F.equals(Fh));
    auto [I1, I2] = ff_matrices(TwistData::identity(3));
    CHECK(I1.equals(Operator::identity({3, 3})));
    CHECK(I2.equals(Operator::identity({3, 3})));
    for (auto R : {ParticleConservingR::rational(2), ParticleConservingR::trig(2)}) {
        TwistData g = TwistData::generic(2);
        auto [G, Gh] = ff_matrices(g);
        Operator viaF = diagonal_inverse(G) * R.to_matrix() * diagonal_inverse(Gh);
        CHECK(viaF.equals(twist(R, g).to_matrix()));
    }
}

TEST_CASE("twist closure, colour collapse and composition") {
    std::mt19937_64 rng(41);
    for (int n = 0; n < 3; ++n) {
        TwistData tw = TwistData::random(2, rng);
        for (auto R : {ParticleConservingR::trig(2), ParticleConservingR::rational(2)}) {
            auto T = twist(R, tw);
            CHECK(check_ybe(T, ZeroTest::expand()).passed());
            CHECK(T.substitute(colour_collapse()).equals(twist_single(R, tw)));
            CHECK(check_ybe(twist_single(R, tw), ZeroTest::expand()).passed());
        }
    }
    TwistData generic = TwistData::generic(2);
    CHECK(check_ybe(twist(ParticleConservingR::rational(2), generic), ZeroTest::sampled(20, 4)).passed());
    CHECK(check_ybe(twist(ParticleConservingR::trig(3), generic.N == 3 ? generic : TwistData::generic(3)), ZeroTest::sampled(20, 5)).passed());
    TwistData a = TwistData::random(2, rng), b = TwistData::random(2, rng);
    auto R = ParticleConservingR::rational(2);
    CHECK(twist(twist(R, a), b).equals(twist(R, a.compose(b))));
}

TEST_CASE("sample mode skips nothing silently") {
    auto R = ParticleConservingR::rational(2, P("1/(lambda - mu)"));
    Report rep = check_ybe_at(R, {{{params::lambda(), Rational(1)}, {params::mu(), Rational(1)}, {params::nu(), Rational(3)}}});
    CHECK(rep.checks().front().status == Status::skipped);
    CHECK_FALSE(rep.passed());
}
