// Anyon-like permutation operators on spin configurations.

#ifndef YBT_CSMODEL_HPP
#define YBT_CSMODEL_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "ybt/report.hpp"
#include "ybt/scalar.hpp"

namespace ybt {

/// Colours alpha_1..alpha_M, each in [1, N].
using SpinConfig = std::vector<int>;

/// phi table with phi_aa = +-1 and phi_ab phi_ba = 1.
class AnyonRep {
  public:
    AnyonRep(int N, int M, std::vector<std::vector<ScalarExpr>> phi);

    /// phi_ab symbols for a < b, phi_ba = 1 / phi_ab, phi_aa = diag[a-1].
    static AnyonRep generic(int N, int M, const std::vector<int>& diag = {});
    static AnyonRep trivial(int N, int M);
    static AnyonRep random(int N, int M, std::mt19937_64& rng, const std::vector<int>& diag = {});

    int N() const noexcept { return N_; }
    int M() const noexcept { return M_; }
    const ScalarExpr& phi(int a, int b) const { return phi_[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)]; }
    bool is_trivial() const;

    std::size_t basis_size() const;
    SpinConfig config(std::size_t index) const;
    std::size_t index(const SpinConfig& c) const;

    Json to_json() const;
    /// {"phi": [[expr, ...], ...]}; M is supplied separately.
    static AnyonRep from_json(const Json& j, int M);

  private:
    int N_, M_;
    std::vector<std::vector<ScalarExpr>> phi_;
    std::vector<int> diag_sign_;

    friend class PhaseTracker;
};

/// P_kl |config> = phase |swapped config>, 1 <= k < l <= M.
std::pair<ScalarExpr, SpinConfig> apply_pkl(const AnyonRep& rep, int k, int l, const SpinConfig& config);

/// Involution, disjoint commutation (asserted), Coxeter relations and the
/// long-transposition form (asserted only for phi = 1).
Report check_symmetric_group(const AnyonRep& rep);

}  // namespace ybt

#endif  // YBT_CSMODEL_HPP
