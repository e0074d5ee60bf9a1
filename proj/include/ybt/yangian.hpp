/*
   Copyright 2026 The ybtwist Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef YBT_YANGIAN_HPP
#define YBT_YANGIAN_HPP

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ybt/algebra.hpp"
#include "ybt/report.hpp"
#include "ybt/rmatrix.hpp"
#include "ybt/tensor.hpp"

namespace ybt {

enum class YangianKind { standard, coloured };
std::string to_string(YangianKind k);
YangianKind yangian_kind_from_string(const std::string& s);

/// Generator names. The colour tag is "" for the standard algebra and
/// "alpha" or "beta" for the coloured one.
namespace modes {
std::string t(int n, int i, int j, const std::string& colour = "");
std::string tau(int i, const std::string& colour);
/// Symbols standing for u_ij(alpha, beta) and v_ij(alpha, beta).
ScalarExpr u(int i, int j);
ScalarExpr v(int i, int j);
}  // namespace modes

/// Truncated expansion T_ij = c_ij + h sum_n t_n^ij x^(n+1) in x = 1/lambda.
/// The leading term c_ij is delta_ij or delta_ij tau_ii(colour).
class ModeSeries {
  public:
    ModeSeries(int N, int n_max, YangianKind kind, std::string colour, const Alphabet& alphabet);

    int N() const noexcept { return N_; }
    int n_max() const noexcept { return n_max_; }
    /// Coefficient of x^p; nullopt when it involves a discarded mode.
    std::optional<FreeElement> coefficient(int i, int j, int p) const;

  private:
    int N_, n_max_;
    YangianKind kind_;
    std::string colour_;
    const Alphabet* alphabet_;
};

/// A quadratic identity among mode generators.
struct ModeRelation {
    std::string family;  // "coefficient" before relabelling
    int i = 0, j = 0, k = 0, l = 0;
    int n = -1, m = -1;  // levels after relabelling
    int a = 0, b = 0;    // source monomial lambda^-a mu^-b
    FreeElement expr;

    Json to_json(const Alphabet& alphabet) const;
};

struct ModeRelationSet {
    YangianKind kind = YangianKind::standard;
    int N = 0;
    int n_max = 0;
    Alphabet alphabet;
    std::vector<ModeRelation> relations;
    /// Coefficients that referenced a discarded mode, as (a, b, i, j, k, l).
    std::vector<std::array<int, 6>> overflow;

    Json to_json() const;
    std::vector<const ModeRelation*> tagged(int i, int j, int k, int l) const;
};

/// Alphabet of modes up to n_max (and tau generators in the coloured case).
Alphabet mode_alphabet(YangianKind kind, int N, int n_max);

/// Coefficients of lambda^-a mu^-b of the defining relation after inserting
/// the truncated series; one relation per monomial and index quadruple.
ModeRelationSet generate_coefficient_relations(YangianKind kind, int N, int n_max);
/// Regroups coefficient relations into named families with levels.
ModeRelationSet relabel_families(const ModeRelationSet& raw);
ModeRelationSet generate_mode_relations(YangianKind kind, int N, int n_max = 5);

/// Printed families written directly: "level-zero" (n), "level-shift" (n, m),
/// "tau-mode" (m), "tau-commutation".
FreeElement reference_relation(YangianKind kind, const std::string& family, int i, int j, int k, int l, int n, int m,
                               const Alphabet& alphabet);
/// Combined relation at levels (n, m).
FreeElement combined_relation(YangianKind kind, int i, int j, int k, int l, int n, int m, const Alphabet& alphabet);

/// Generated families against the printed ones.
Report check_structural_match(const ModeRelationSet& set);
/// Coloured families at phi = 1, u = 1 against the standard families.
Report check_colourless_limit(const ModeRelationSet& coloured, const ModeRelationSet& standard);
/// RTT relations of the twisted rational R against the defining relation
/// with u, v written out, and against its colourless limit v = 1.
Report check_defining_relations(int N);
/// Proves the combined relation lies in the span of the generated relations
/// with the same index quadruple; reports the combination found.
Report check_combined_relation(const ModeRelationSet& set, int n, int m);

// ---------------------------------------------------------------------------
// Evaluation representation
// ---------------------------------------------------------------------------

/// Square matrix of operators.
using OperatorMatrix = std::vector<std::vector<Operator>>;

struct EvalRep {
    int N = 0;
    ScalarExpr h;
    TwistData tw;

    /// T_ij(lambda) = lambda delta_ij + h e_ji.
    OperatorMatrix T(const ScalarExpr& lambda) const;
    /// tau_j = diag_l s_jl.
    Operator tau(int j) const;
    /// G(alpha) = diag_l v1_l(alpha) v2_l(alpha).
    Operator G(const ScalarExpr& alpha) const;

    /// Elementwise coloured T(lambda, alpha).
    OperatorMatrix coloured_T(const ScalarExpr& lambda, const ScalarExpr& alpha) const;
    /// Matrix path M(alpha) T(lambda) M-hat(alpha).
    OperatorMatrix coloured_T_matrix(const ScalarExpr& lambda, const ScalarExpr& alpha) const;

    EvalRep substitute(const std::map<Symbol, ScalarExpr>& values) const;
    std::set<Symbol> symbols() const;
};

EvalRep build_eval_rep(int N, const ScalarExpr& h = params::h(), const TwistData& tw = TwistData());

/// Residual operators of R T1 T2 = T2 T1 R for every (i, j, k, l); the
/// first nonzero one, if any, as (indices, operator).
std::optional<std::pair<std::array<int, 4>, Operator>> qybe_violation(const ParticleConservingR& R,
                                                                       const OperatorMatrix& T1,
                                                                       const OperatorMatrix& T2,
                                                                       const ZeroTest& mode = ZeroTest::expand());

/// The R of the RTT check defaults to rational(N, h), twisted by rep.tw in
/// the coloured case.
Report check_qybe_eval(const EvalRep& rep, const ZeroTest& mode,
                       const std::optional<ParticleConservingR>& R = std::nullopt);
Report check_extended_relations(const EvalRep& rep);
Report check_coloured_qybe(const EvalRep& rep, const ZeroTest& mode,
                           const std::optional<ParticleConservingR>& R = std::nullopt);

/// Value of a mode word under an assignment of operators to generators.
Operator evaluate_modes(const FreeElement& e, const Alphabet& alphabet,
                        const std::function<Operator(const std::string&)>& image, int N);

}  // namespace ybt

#endif  // YBT_YANGIAN_HPP
