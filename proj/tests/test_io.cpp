#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "ybt/io.hpp"

using namespace ybt;

namespace {

ScalarExpr E(const char* s) { return ScalarExpr::parse(s); }

void check_same_twist(const TwistData& a, const TwistData& b) {
    REQUIRE(a.N == b.N);
    CHECK(a.colour == b.colour);
    for (int i = 1; i <= a.N; ++i) {
        CHECK(a.v1[static_cast<std::size_t>(i - 1)] == b.v1[static_cast<std::size_t>(i - 1)]);
        CHECK(a.v2[static_cast<std::size_t>(i - 1)] == b.v2[static_cast<std::size_t>(i - 1)]);
        for (int j = 1; j <= a.N; ++j) CHECK(a.s.s(i, j) == b.s.s(i, j));
    }
}

}  // namespace

TEST_CASE("expressions in JSON") {
    CHECK(expr_from_json(Json("q - q^-1")) == E("q - 1/q"));
    CHECK(expr_from_json(Json(3)) == ScalarExpr(3));
    CHECK_THROWS_AS(expr_from_json(Json(0.5)), ParseError);
    CHECK_THROWS_AS(expr_from_json(Json("q +")), ParseError);
}

TEST_CASE("phi entries become roots") {
    RootTable s = roots_from_json(Json::parse(R"({"phi": [[1, 2, "4/9"], [2, 3, "s_2_3^2"]]})"), 3);
    CHECK(s.s(1, 2) * s.s(1, 2) == E("4/9"));
    CHECK(s.phi(1, 2) == E("4/9"));
    CHECK(s.s(2, 3) == E("s_2_3"));
    CHECK(s.s(3, 2) == E("1/s_2_3"));
    CHECK(s.s(1, 3).is_one());

    CHECK_THROWS_AS(roots_from_json(Json::parse(R"({"phi": [[1, 2, "2"]]})"), 2), ParseError);
    CHECK_THROWS_AS(roots_from_json(Json::parse(R"({"phi": [[2, 1, "4"]]})"), 2), ParseError);
    CHECK_THROWS_AS(roots_from_json(Json::parse(R"({"phi": [[1, 3, "4"]]})"), 2), ParseError);
    CHECK_NOTHROW(roots_from_json(Json::parse(R"({"s": [[1, 2, "3"]], "phi": [[1, 2, "9"]]})"), 2));
    CHECK_THROWS_AS(roots_from_json(Json::parse(R"({"s": [[1, 2, "3"]], "phi": [[1, 2, "4"]]})"), 2), ParseError);
}

TEST_CASE("twist data round trip") {
    std::mt19937_64 rng(5);
    for (int N = 1; N <= 4; ++N) {
        TwistData tw = TwistData::random(N, rng);
        check_same_twist(tw, twist_from_json(twist_to_json(tw)));
    }
    TwistData generic = TwistData::generic(3);
    check_same_twist(generic, twist_from_json(twist_to_json(generic)));

    TwistData partial = twist_from_json(Json::parse(R"({"N": 2, "v1": ["1 + z", "2"]})"));
    CHECK(partial.v2[0].is_one());
    CHECK(partial.s.is_trivial());
    CHECK_THROWS_AS(twist_from_json(Json::parse(R"({"N": 2, "v1": ["1"]})")), ParseError);
    CHECK_THROWS_AS(twist_from_json(Json::parse(R"({"N": 2, "v1": ["0", "1"]})")), DomainError);
    CHECK_THROWS_AS(twist_from_json(Json::parse(R"({"v1": ["1", "1"]})")), ParseError);
}

TEST_CASE("R specs from builders") {
    CHECK(r_from_json(Json::parse(R"({"N": 3, "kind": "trig"})")).equals(ParticleConservingR::trig(3)));
    CHECK(r_from_json(Json::parse(R"({"N": 2, "kind": "trig", "params": {"q": "5/2"}})"))
              .equals(ParticleConservingR::trig(2, E("5/2"))));
    CHECK(r_from_json(Json::parse(R"({"N": 2, "kind": "rational", "params": {"h": 1}})"))
              .equals(ParticleConservingR::rational(2, ScalarExpr(1))));
    RootTable s(2);
    s.set(1, 2, E("2/3"));
    CHECK(r_from_json(Json::parse(R"({"N": 2, "kind": "multiparam", "params": {"phi": [[1, 2, "4/9"]]}})"))
              .equals(ParticleConservingR::multiparam(2, s)));
    TwistData tw = TwistData::identity(2);
    tw.v1[0] = E("1 + z");
    CHECK(r_from_json(Json::parse(R"({"N": 2, "kind": "coloured-rational", "params": {"twist": {"v1": ["1 + z", "1"]}}})"))
              .equals(ParticleConservingR::coloured_rational(2, tw)));
    CHECK(r_from_json(Json::parse(R"({"N": 2, "kind": "identity"})")).equals(ParticleConservingR::identity(2)));
    CHECK(r_from_json(Json::parse(R"({"N": 2, "kind": "permutation"})")).equals(ParticleConservingR::permutation(2)));

    CHECK_THROWS_AS(r_from_json(Json::parse(R"({"N": 2, "kind": "elliptic"})")), ParseError);
    CHECK_THROWS_AS(r_from_json(Json::parse(R"({"kind": "trig"})")), ParseError);
    CHECK_THROWS_AS(r_from_json(Json::parse(R"({"N": 2})")), ParseError);
    CHECK_THROWS_AS(r_from_json(Json::parse(R"({"N": 2, "f": [["1", "1"], ["1", "1"]]})")), ParseError);
    CHECK_THROWS_AS(r_from_json(Json::parse(R"({"N": 2, "f": [["1"]], "g": [["1"]]})")), ParseError);
}

TEST_CASE("explicit tables round trip, diagonal split included") {
    std::mt19937_64 rng(8);
    std::vector<ParticleConservingR> all = {ParticleConservingR::trig(3), ParticleConservingR::rational(2),
                                            ParticleConservingR::multiparam(3, RootTable::generic(3)),
                                            twist(ParticleConservingR::rational(2), TwistData::random(2, rng))};
    for (const auto& R : all) {
        ParticleConservingR back = r_from_json(r_to_json(R));
        CHECK(back.kind() == R.kind());
        CHECK(back.equals(R));
        for (int i = 1; i <= R.N(); ++i) CHECK(back.diag_split(i) == R.diag_split(i));
    }
    Json j = r_to_json(ParticleConservingR::trig(2));
    CHECK(j["spectral"] == "none");
    CHECK(j["g"][0][1] == "q - q^-1");
    CHECK(r_from_json(Json::parse(j.dump())).equals(ParticleConservingR::trig(2)));
}

TEST_CASE("files") {
    CHECK_THROWS_AS(read_json_file("/nonexistent/r.json"), ParseError);
    const std::string path = "test_io_scratch.json";
    write_text_file(path, "{\"N\": 2, \"kind\": \"trig\"");
    CHECK_THROWS_AS(read_json_file(path), ParseError);
    write_text_file(path, "{\"N\": 2, \"kind\": \"trig\"}");
    CHECK(r_from_json(read_json_file(path)).equals(ParticleConservingR::trig(2)));
    std::remove(path.c_str());
}
