// Particle-conserving R-matrices, their builders, the Yang-Baxter check and
// the multiparametric / coloured symmetry transformation.

#ifndef YBT_RMATRIX_HPP
#define YBT_RMATRIX_HPP

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ybt/report.hpp"
#include "ybt/scalar.hpp"
#include "ybt/tensor.hpp"

namespace ybt {

enum class SpectralKind { none, single, bicomponent };

std::string to_string(SpectralKind k);
SpectralKind spectral_kind_from_string(const std::string& s);

/// Table of sqrt(phi_ij) values. Only i < j is stored; s_ii = 1 and
/// s_ji = 1 / s_ij.
class RootTable {
  public:
    RootTable() = default;
    explicit RootTable(int N) : N_(N) {}

    /// Root symbols s_i_j for every i < j.
    static RootTable generic(int N);
    static RootTable ones(int N) { return RootTable(N); }

    int N() const noexcept { return N_; }
    ScalarExpr s(int i, int j) const;
    ScalarExpr phi(int i, int j) const { return s(i, j).pow(2); }
    void set(int i, int j, ScalarExpr value);
    bool is_trivial() const;

    /// Pointwise product.
    RootTable operator*(const RootTable& o) const;

  private:
    int N_ = 0;
    std::map<std::pair<int, int>, ScalarExpr> upper_;
};

/// Deformation data of the symmetry transformation: root table s and square
/// roots v1_i, v2_i of the colour functions, written in a colour variable.
struct TwistData {
    int N = 0;
    RootTable s;
    std::vector<ScalarExpr> v1, v2;  // index i-1
    Symbol colour = Symbol::named("z");

    static TwistData identity(int N);
    /// Root symbols, and degree-one colour functions k1_i_0 + k1_i_1*z etc.
    static TwistData generic(int N);
    /// Random rational s_ij and random polynomials of degree <= max_degree.
    static TwistData random(int N, std::mt19937_64& rng, int max_degree = 2);

    void validate() const;

    ScalarExpr v1_at(int i, const ScalarExpr& at) const;
    ScalarExpr v2_at(int i, const ScalarExpr& at) const;
    ScalarExpr u1(int i, const ScalarExpr& at) const { return v1_at(i, at).pow(2); }
    ScalarExpr u2(int i, const ScalarExpr& at) const { return v2_at(i, at).pow(2); }
    ScalarExpr U(int i, const ScalarExpr& at) const { return u1(i, at) * u2(i, at); }

    /// f-prefactor phi_ij U_j(a) / U_i(b).
    ScalarExpr f_factor(int i, int j, const ScalarExpr& a, const ScalarExpr& b) const;
    /// g-prefactor u1_i(a) u2_j(a) / (u1_i(b) u2_j(b)).
    ScalarExpr g_factor(int i, int j, const ScalarExpr& a, const ScalarExpr& b) const;

    /// Pointwise product of phi and colour tables.
    TwistData compose(const TwistData& o) const;
    std::set<Symbol> symbols() const;
};

/// R_ij^kl = f_ij delta_ik delta_jl + g_ij delta_il delta_jk, stored in
/// canonical form g_ii = 0. The diagonal weight a source formula assigns to
/// the exchange term is remembered in diag_split so the two-table form can be
/// recovered exactly.
class ParticleConservingR {
  public:
    ParticleConservingR() = default;
    ParticleConservingR(int N, SpectralKind kind);

    /// Builds from full f/g tables (index [i-1][j-1]); g_ii is folded into f_ii.
    static ParticleConservingR from_tables(SpectralKind kind, const std::vector<std::vector<ScalarExpr>>& f,
                                           const std::vector<std::vector<ScalarExpr>>& g);

    static ParticleConservingR identity(int N);
    static ParticleConservingR permutation(int N);
    static ParticleConservingR trig(int N, const ScalarExpr& q = params::q());
    static ParticleConservingR multiparam(int N, const RootTable& s, const ScalarExpr& q = params::q());
    static ParticleConservingR rational(int N, const ScalarExpr& h = params::h());
    static ParticleConservingR coloured_rational(int N, const TwistData& tw, const ScalarExpr& h = params::h());

    int N() const noexcept { return N_; }
    SpectralKind kind() const noexcept { return kind_; }
    const ScalarExpr& f(int i, int j) const { return f_[idx(i, j)]; }
    const ScalarExpr& g(int i, int j) const { return g_[idx(i, j)]; }
    const ScalarExpr& diag_split(int i) const { return split_[static_cast<std::size_t>(i - 1)]; }
    /// Two-table form with the recorded diagonal split undone.
    ScalarExpr source_f(int i, int j) const { return i == j ? f(i, i) - diag_split(i) : f(i, j); }
    ScalarExpr source_g(int i, int j) const { return i == j ? diag_split(i) : g(i, j); }

    void set_f(int i, int j, ScalarExpr v) { f_[idx(i, j)] = std::move(v); }
    void set_g(int i, int j, ScalarExpr v);
    void set_diag_split(int i, ScalarExpr v) { split_[static_cast<std::size_t>(i - 1)] = std::move(v); }

    Operator to_matrix() const;
    ParticleConservingR substitute(const std::map<Symbol, ScalarExpr>& values) const;
    std::set<Symbol> symbols() const;
    bool equals(const ParticleConservingR& o, const ZeroTest& mode = ZeroTest::expand()) const;

  private:
    int N_ = 0;
    SpectralKind kind_ = SpectralKind::none;
    std::vector<ScalarExpr> f_, g_, split_;
    std::size_t idx(int i, int j) const;
};

/// Symmetry transformation producing the bicomponent R(lambda, alpha; mu, beta).
/// Accepts a bicomponent input too, in which case prefactors compose.
ParticleConservingR twist(const ParticleConservingR& R, const TwistData& tw);
/// Single-spectral transformation with colour functions evaluated at lambda, mu.
ParticleConservingR twist_single(const ParticleConservingR& R, const TwistData& tw);

/// Diagonal F(alpha, beta) and F-hat(alpha, beta) with twisted R = F^-1 R F-hat^-1.
std::pair<Operator, Operator> ff_matrices(const TwistData& tw);
/// Inverses of the diagonal operators of ff_matrices.
Operator diagonal_inverse(const Operator& diag);

/// The three operators R12, R13, R23 on the triple chain.
struct YbeLegs {
    Operator r12, r13, r23;
};
YbeLegs ybe_legs(const ParticleConservingR& R);
Operator ybe_residual(const YbeLegs& legs);

/// Verifies the (bicomponent) Yang-Baxter equation. In expand mode the residual
/// is computed symbolically; in sample mode at mode.sample.count exact points.
Report check_ybe(const ParticleConservingR& R, const ZeroTest& mode);
Report check_ybe_at(const ParticleConservingR& R, const std::vector<std::map<Symbol, Rational>>& points);

ZeroTest default_mode(int N, std::uint64_t seed, int samples = 20);

Json point_to_json(const std::map<Symbol, Rational>& point);

}  // namespace ybt

#endif  // YBT_RMATRIX_HPP
