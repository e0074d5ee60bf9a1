#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ybt/tensor.hpp"

#include <random>

using namespace ybt;

namespace {

ScalarExpr P(const char* s) { return ScalarExpr::parse(s); }

Operator random_sparse(std::mt19937_64& rng, std::vector<int> dims, int nnz) {
    Operator op(dims);
    std::uniform_int_distribution<std::size_t> idx(0, op.dimension() - 1);
    std::uniform_int_distribution<int> val(-5, 5);
    static const char* syms[] = {"q", "h", "lambda", "1"};
    std::uniform_int_distribution<int> s(0, 3);
    for (int n = 0; n < nnz; ++n) op.add_to(idx(rng), idx(rng), ScalarExpr(val(rng)) * P(syms[s(rng)]));
    return op;
}

// Brute-force contraction of a 2-site operator on sites (a,b) of a 3-chain with an explicit sum.
Operator brute_embed3(const Operator& two, int a, int b, int N) {
    Operator out({N, N, N});
    int c = 6 - a - b;
    for (int i1 = 1; i1 <= N; ++i1)
        for (int i2 = 1; i2 <= N; ++i2)
            for (int i3 = 1; i3 <= N; ++i3)
                for (int j1 = 1; j1 <= N; ++j1)
                    for (int j2 = 1; j2 <= N; ++j2)
                        for (int j3 = 1; j3 <= N; ++j3) {
                            int r[3] = {i1, i2, i3}, k[3] = {j1, j2, j3};
                            if (r[c - 1] != k[c - 1]) continue;
                            out.set({i1, i2, i3}, {j1, j2, j3}, two.at({r[a - 1], r[b - 1]}, {k[a - 1], k[b - 1]}));
                        }
    return out;
}

}  // namespace

TEST_CASE("kron examples") {
    Operator e11_e22 = kron(Operator::unit(2, 1, 1), Operator::unit(2, 2, 2));
    CHECK(e11_e22.nonzeros() == 1);
    CHECK(e11_e22.at({1, 2}, {1, 2}).is_one());
    CHECK(kron(Operator::identity({3}), Operator::identity({3})).equals(Operator::identity({3, 3})));
    Operator k = kron(Operator::unit(2, 1, 2), Operator::unit(2, 2, 1));
    CHECK(k.at({1, 2}, {2, 1}).is_one());
    CHECK(k.nonzeros() == 1);
}

TEST_CASE("flattening is row-major and 1-based in reports") {
    Operator op({3, 3});
    CHECK(op.flatten({1, 1}) == 0);
    CHECK(op.flatten({1, 3}) == 2);
    CHECK(op.flatten({2, 1}) == 3);
    CHECK(op.unflatten(5) == MultiIndex{2, 3});
    CHECK_THROWS_AS(op.flatten({0, 1}), Error);
}

TEST_CASE("embed examples") {
    std::mt19937_64 rng(3);
    Operator R = random_sparse(rng, {2, 2}, 6);
    CHECK(embed(R, {1, 3}, 3, 2).equals(brute_embed3(R, 1, 3, 2)));
    CHECK(embed(R, {2, 3}, 3, 2).equals(brute_embed3(R, 2, 3, 2)));
    Operator A = random_sparse(rng, {2, 2}, 5), B = random_sparse(rng, {2, 2}, 5);
    Operator direct({2, 2, 2});
    for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t c = 0; c < 8; ++c) {
            ScalarExpr sum;
            for (std::size_t m = 0; m < 8; ++m)
                sum += brute_embed3(A, 1, 2, 2).at_flat(r, m) * brute_embed3(B, 2, 3, 2).at_flat(m, c);
            direct.set_flat(r, c, sum);
        }
    CHECK((embed(A, {1, 2}, 3, 2) * embed(B, {2, 3}, 3, 2)).equals(direct));
    CHECK(embed(Operator::identity({2, 2}), {3, 1}, 3, 2).equals(Operator::identity({2, 2, 2})));
    CHECK_THROWS_AS(embed(R, {1, 1}, 3, 2), Error);
    CHECK_THROWS_AS(embed(R, {1, 4}, 3, 2), Error);
}

TEST_CASE("compose examples") {
    for (int N = 2; N <= 3; ++N) {
        Operator Pm = Operator::permutation(N);
        CHECK((Pm * Pm).equals(Operator::identity({N, N})));
    }
    Operator R = P("lambda - mu") * Operator::identity({2, 2}) + P("h") * Operator::permutation(2);
    CHECK(R.at({1, 1}, {1, 1}) == P("lambda - mu + h"));
    CHECK(R.at({1, 2}, {1, 2}) == P("lambda - mu"));
    CHECK(R.at({1, 2}, {2, 1}) == P("h"));
    CHECK(R.at({2, 1}, {1, 2}) == P("h"));
    CHECK(R.nonzeros() == 6);
    CHECK((R * Operator::zero({2, 2})).equals_zero());
    CHECK_THROWS_AS(R * Operator::identity({2}), Error);
}

TEST_CASE("equals_zero inherits scalar zero tests") {
    Operator op({2});
    op.set({1}, {1}, P("q*q^-1 - 1"));
    CHECK(op.equals_zero());
    op.set({1}, {2}, P("lambda - mu"));
    CHECK_FALSE(op.equals_zero());
    CHECK_FALSE(op.equals_zero(ZeroTest::sampled(20, 1)));
}

TEST_CASE("compose is associative on random sparse triples") {
    std::mt19937_64 rng(9);
    for (int n = 0; n < 20; ++n) {
        Operator a = random_sparse(rng, {2, 2}, 6), b = random_sparse(rng, {2, 2}, 6), c = random_sparse(rng, {2, 2}, 6);
        CHECK(((a * b) * c).equals(a * (b * c)));
    }
}

TEST_CASE("embed commutes with compose on disjoint sites") {
    std::mt19937_64 rng(10);
    for (int n = 0; n < 10; ++n) {
        Operator a = random_sparse(rng, {2}, 3), b = random_sparse(rng, {2, 2}, 5);
        Operator ea = embed(a, {1}, 3, 2), eb = embed(b, {2, 3}, 3, 2);
        CHECK((ea * eb).equals(eb * ea));
        CHECK((ea * eb).equals(kron(a, b)));
    }
}

TEST_CASE("kron entries are products of entries") {
    std::mt19937_64 rng(12);
    for (int N = 2; N <= 3; ++N) {
        Operator a = random_sparse(rng, {N}, 5), b = random_sparse(rng, {N}, 5);
        Operator k = kron(a, b);
        for (int i = 1; i <= N; ++i)
            for (int j = 1; j <= N; ++j)
                for (int k1 = 1; k1 <= N; ++k1)
                    for (int l = 1; l <= N; ++l)
                        CHECK(k.at({i, k1}, {j, l}) == a.at({i}, {j}) * b.at({k1}, {l}));
    }
}
