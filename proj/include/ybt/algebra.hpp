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

#ifndef YBT_ALGEBRA_HPP
#define YBT_ALGEBRA_HPP

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ybt/report.hpp"
#include "ybt/rmatrix.hpp"
#include "ybt/scalar.hpp"

namespace ybt {

/// Word over an alphabet; letters are positions in the generator order.
using Word = std::vector<int>;

/// Degree first, then lexicographic.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

/// Ordered list of generator names.
class Alphabet {
  public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    int add(const std::string& name);
    int index(const std::string& name) const;
    bool contains(const std::string& name) const { return lookup_.count(name) != 0; }
    const std::string& name(int letter) const { return names_.at(static_cast<std::size_t>(letter)); }
    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::string word_string(const Word& w) const;
    Word parse_word(const std::vector<std::string>& letters) const;

  private:
    std::vector<std::string> names_;
    std::map<std::string, int> lookup_;
};

/// Linear combination of words with ScalarExpr coefficients.
class FreeElement {
  public:
    using Terms = std::map<Word, ScalarExpr, WordLess>;

    FreeElement() = default;
    static FreeElement word(Word w, ScalarExpr c = ScalarExpr(1));
    static FreeElement letter(int g) { return word({g}); }
    static FreeElement scalar(ScalarExpr c) { return word({}, std::move(c)); }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    ScalarExpr coefficient(const Word& w) const;
    /// Largest word; requires nonzero.
    const std::pair<const Word, ScalarExpr>& leading() const;
    int max_degree() const;

    void add_term(const Word& w, const ScalarExpr& c);
    FreeElement& operator+=(const FreeElement& o);
    FreeElement& operator-=(const FreeElement& o);
    FreeElement& operator*=(const ScalarExpr& c);
    friend FreeElement operator+(FreeElement a, const FreeElement& b) { return a += b; }
    friend FreeElement operator-(FreeElement a, const FreeElement& b) { return a -= b; }
    friend FreeElement operator*(FreeElement a, const ScalarExpr& c) { return a *= c; }
    friend FreeElement operator*(const ScalarExpr& c, FreeElement a) { return a *= c; }
    /// Concatenation product.
    friend FreeElement operator*(const FreeElement& a, const FreeElement& b);
    FreeElement operator-() const;

    /// Algebra homomorphism sending letter g to image(g).
    FreeElement substitute(const std::function<FreeElement(int)>& image) const;
    FreeElement map_coefficients(const std::function<ScalarExpr(const ScalarExpr&)>& fn) const;
    /// Scales so the leading coefficient is 1.
    FreeElement monic() const;
    bool equals(const FreeElement& o) const;

    std::string to_string(const Alphabet& a) const;

  private:
    Terms terms_;
};

enum class Strategy { leftmost, rightmost };

/// Quadratic algebra given by rewrite rules on degree-two words. Every rule
/// replaces a word by a combination of strictly smaller words, so rewriting
/// terminates.
class QuadraticPresentation {
  public:
    QuadraticPresentation() = default;
    explicit QuadraticPresentation(Alphabet a) : alphabet_(std::move(a)) {}

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    Alphabet& alphabet() noexcept { return alphabet_; }

    /// Adds left -> right; right may be zero (annihilation rule).
    void add_rule(int a, int b, FreeElement right);
    void add_rule(const std::string& a, const std::string& b, FreeElement right);
    /// Rule b a -> c a b, for a < b.
    void add_commutation(int a, int b, const ScalarExpr& c = ScalarExpr(1));
    bool has_rule(int a, int b) const { return rules_.count({a, b}) != 0; }
    const std::map<std::pair<int, int>, FreeElement>& rules() const noexcept { return rules_; }
    /// Replaces the coefficient of one word in one rule.
    void set_rule_coefficient(int a, int b, const Word& w, const ScalarExpr& c);

    /// Rules from homogeneous quadratic relations by exact row reduction.
    static QuadraticPresentation from_relations(const Alphabet& a, const std::vector<FreeElement>& relations);

    /// Union of rule sets over a common alphabet; later rules override.
    QuadraticPresentation merged(const QuadraticPresentation& o) const;

    FreeElement normal_form(const FreeElement& e, Strategy s = Strategy::leftmost) const;
    /// Left side minus right side of every rule.
    std::vector<FreeElement> relations() const;

    Json to_json() const;
    static QuadraticPresentation from_json(const Json& j);

  private:
    Alphabet alphabet_;
    std::map<std::pair<int, int>, FreeElement> rules_;
};

/// First relation that does not reduce to zero, if any.
std::optional<std::size_t> first_nonzero_reduction(const std::vector<FreeElement>& relations,
                                                   const QuadraticPresentation& p);
/// Each relation set reduces to zero modulo the rules generated by the other.
bool equivalent_relations(const Alphabet& a, const std::vector<FreeElement>& x, const std::vector<FreeElement>& y);

// ---------------------------------------------------------------------------
// Generator naming
// ---------------------------------------------------------------------------

namespace gen {
std::string T(int i, int j);
std::string Tt(int i, int j);
std::string tau(int i);
std::string x(int i);
std::string y(int i);
}  // namespace gen

/// tau_1..tau_N (optional), then T_ij in row-major order, then x and y.
Alphabet gl_alphabet(int N, bool with_tau = false, bool with_plane = false);
Alphabet tilde_alphabet(int N);

// ---------------------------------------------------------------------------
// RTT relations
// ---------------------------------------------------------------------------

using EntryTable = std::function<ScalarExpr(int, int)>;
using GeneratorTable = std::function<FreeElement(int, int)>;

/// U1 + U2 - U3 - U4 for every index quadruple. R is given by its canonical
/// f, g tables and T1, T2 are the first and second leg matrices; identically
/// zero relations and duplicates up to scale are dropped.
std::vector<FreeElement> rtt_relations(int dim, const EntryTable& f, const EntryTable& g, const GeneratorTable& T1,
                                       const GeneratorTable& T2);

/// RTT relations of R on generators T_ij. In spectral mode the two factors
/// are T_ij(lambda) and T_ij(mu), and the alphabet is extended accordingly.
std::vector<FreeElement> generate_rtt_relations(const ParticleConservingR& R, bool spectralless, Alphabet& alphabet);

// ---------------------------------------------------------------------------
// Presentations
// ---------------------------------------------------------------------------

QuadraticPresentation gl_q_presentation(int N, const ScalarExpr& q = params::q());
/// Multiparameter relations on generators Tt_ij.
QuadraticPresentation multiparam_presentation(int N, const RootTable& s, const ScalarExpr& q = params::q());
/// GL_q(N) with extra commuting generators tau_m.
QuadraticPresentation extended_presentation(int N, const RootTable& s, const ScalarExpr& q = params::q());

enum class Plane { symmetric, exterior };
std::string to_string(Plane p);
Plane plane_from_string(const std::string& s);

/// Plane rules on x, y over the alphabet gl_alphabet(N, true, true).
QuadraticPresentation plane_presentation(int N, Plane plane, const RootTable& s, const ScalarExpr& q = params::q());
/// Extended algebra tensor plane: algebra letters commute with plane letters.
QuadraticPresentation coaction_presentation(int N, Plane plane, const RootTable& s, const ScalarExpr& q = params::q());

/// Single extra generator tau with the roots s_ij = rho_i / rho_j.
struct SingleTau {
    int N = 0;
    std::vector<ScalarExpr> rho;  // index i-1, rho_i^2 = r_i
    RootTable roots() const;
    static SingleTau generic(int N);
};
/// Exponent sign selects tau T_kl = (rho_k / rho_l)^sign T_kl tau.
QuadraticPresentation single_tau_presentation(const SingleTau& st, int sign = 1, const ScalarExpr& q = params::q());

// ---------------------------------------------------------------------------
// Verifiers
// ---------------------------------------------------------------------------

/// Substitutes Tt_ij = s_ij^-1 tau_i tau_j T_ij into the multiparameter
/// relations and reduces in the extended algebra.
Report verify_realization_gl(int N, const RootTable& s, const QuadraticPresentation& extended);
Report verify_realization_gl(int N);
/// Same realization with a single tau.
Report verify_realization_single_tau(const SingleTau& st, int sign = 1);

/// Block R' and T' with entries in the extended algebra.
ParticleConservingR primed_r(int N, const RootTable& s, const ScalarExpr& q = params::q());
Report verify_primed_qybe(int N, const RootTable& s, const QuadraticPresentation& extended);
Report verify_primed_qybe(int N);

Report verify_coaction_invariance(int N, Plane plane, const RootTable& s, const QuadraticPresentation& combined);
Report verify_coaction_invariance(int N, Plane plane);

/// X_i = x_i y_i relations reduced with the plane rules.
Report verify_x_relations(int N, Plane plane, const RootTable& s, const QuadraticPresentation& planes);
Report verify_x_relations(int N, Plane plane);

/// Leftmost and rightmost reduction of random degree-three words agree.
Report confluence_spot_check(const QuadraticPresentation& p, int words, std::uint64_t seed);

}  // namespace ybt

#endif  // YBT_ALGEBRA_HPP
