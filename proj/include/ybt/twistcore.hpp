// Constraint system of particle-conserving Yang-Baxter solutions, its
// invariance under the symmetry transformation, and the S-factor identity
// behind the T-matrix realization.

#ifndef YBT_TWISTCORE_HPP
#define YBT_TWISTCORE_HPP

#include <functional>
#include <optional>
#include <tuple>
#include <vector>

#include "ybt/report.hpp"
#include "ybt/rmatrix.hpp"

namespace ybt {

/// The five constraint families, labelled a..e.
enum class ConstraintFamily { a, b, c, d, e };
inline constexpr ConstraintFamily all_families[] = {ConstraintFamily::a, ConstraintFamily::b, ConstraintFamily::c,
                                                    ConstraintFamily::d, ConstraintFamily::e};
char family_label(ConstraintFamily f);

/// Spectral argument pairs appearing in the families.
enum class ArgPair { lm, ln, mn };

/// Source of f_ab(x, y) and g_ab(x, y) values.
struct ConstraintTables {
    std::function<ScalarExpr(int, int, ArgPair)> f, g;
};

/// Tables of an R-matrix in its source (two-table) form. For a bicomponent R
/// the colours alpha, beta, gamma follow lambda, mu, nu.
ConstraintTables tables_of(const ParticleConservingR& R);
/// Unknown symbols F_a_b_xy and G_a_b_xy.
ConstraintTables generic_tables();
/// Applies the single-spectral symmetry transformation to a table source.
ConstraintTables twisted_tables(const ConstraintTables& base, const TwistData& tw);

/// One table value f_ab(x, y) or g_ab(x, y).
struct TableRef {
    bool exchange;  // g when true
    int a, b;
    ArgPair args;
    auto key() const { return std::tuple(exchange, a, b, static_cast<int>(args)); }
    friend bool operator<(const TableRef& x, const TableRef& y) { return x.key() < y.key(); }
};

/// Signed cubic term of a residual.
struct ResidualTerm {
    int sign;
    std::vector<TableRef> factors;
};

/// LHS - RHS of one family at indices (i1, i2, i3) as a list of terms.
std::vector<ResidualTerm> constraint_terms(ConstraintFamily fam, int i1, int i2, int i3);

/// LHS - RHS of one family at indices (i1, i2, i3).
ScalarExpr constraint_residual(ConstraintFamily fam, int i1, int i2, int i3, const ConstraintTables& t);

/// Prefactor p with transformed residual = p * original residual for generic
/// tables; nullopt if none exists. Degenerate triples (identically zero
/// residual) yield 1 when the transformed residual vanishes too.
std::optional<ScalarExpr> invariance_prefactor(ConstraintFamily fam, int i1, int i2, int i3, const TwistData& tw);

Report check_constraints(const ParticleConservingR& R, const ZeroTest& mode);

/// For every family and index triple, exhibits the prefactor relating the
/// transformed residual to the original one for arbitrary f/g tables.
Report check_constraint_invariance(const ParticleConservingR& R, const TwistData& tw, const ZeroTest& mode);

/// Closed forms of c, d and r; replaceable to run negative controls.
struct SClosedForms {
    std::function<ScalarExpr(const TwistData&, int i, int j, int k)> c;
    std::function<ScalarExpr(const TwistData&, int j, int k, const ScalarExpr& at)> d;
    std::function<ScalarExpr(const TwistData&, int i, int j, const ScalarExpr& at)> r;

    static SClosedForms standard();
};

struct SFactors {
    ScalarExpr s1, s2, s3, s4;
};
SFactors s_factors(const TwistData& tw, int i, int j, int k, int l, const SClosedForms& forms);

Report verify_s_equality(const TwistData& tw, const SClosedForms& forms = SClosedForms::standard());

}  // namespace ybt

#endif  // YBT_TWISTCORE_HPP
