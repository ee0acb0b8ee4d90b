#pragma once

#include <string>
#include <vector>

#include "chq/errors.hpp"

namespace chq {

/// How an exponent was supplied. Symbolic values are resolved exactly from
/// (N, alpha), so regime classification at the critical exponents is exact.
enum class ExponentKind { Numeric, TwoAlpha, TwoSharp, TwoStar };

/// Critical exponents of the problem and the scaling weight eta(r).
struct Exponents {
    int N = 3;
    double alpha = 2.0;
    double two_alpha = 0;  // (N+alpha)/N, lower HLS exponent
    double two_sharp = 0;  // (N+alpha+2)/N, mass-critical exponent
    double two_star = 0;   // (N+alpha)/(N-2), upper HLS exponent

    double eta(double r) const { return (N * r - N - alpha) / (2.0 * r); }
};

struct ProblemParams {
    int N = 3;
    double alpha = 2.0;
    double mu = 0.0;
    double p = 3.0;
    double q = 2.0;
    double a = 1.0;
    ExponentKind p_kind = ExponentKind::Numeric;
    ExponentKind q_kind = ExponentKind::Numeric;

    /// Throws InvalidParams unless 3 <= N, 0 < alpha < N, a > 0 and
    /// two_alpha < q < p <= two_star.
    void validate() const;

    bool p_is_two_star() const;
    bool q_is_two_sharp() const;
};

Exponents derive_exponents(const ProblemParams& params);

enum class MassRegime { Subcritical, Critical, Supercritical };
enum class LeadingRegime { HlsSubcritical, HlsCritical };
enum class CouplingSign { Focusing, Defocusing, Homogeneous };

struct RegimeTag {
    MassRegime perturbation;
    LeadingRegime leading;
    CouplingSign sign;
};

RegimeTag classify_regime(const ProblemParams& params);

std::string to_string(MassRegime m);
std::string to_string(LeadingRegime l);
std::string to_string(CouplingSign s);

/// Left-hand side of the smallness condition:
///   (|mu| a^{2q(1-eta_q)})^{p eta_p - 1} (a^{2p(1-eta_p)})^{1 - q eta_q}.
double assumption_lhs(const ProblemParams& params);

/// The threshold Xi(N, alpha, p, q). cg_p is ignored when p = two_star
/// (the third branch uses s_h instead); s_h is used only in that branch.
/// Returns +infinity in the doubly supercritical focusing regime. Throws
/// RegimeUnsupported where no branch is defined (mu <= 0 with p = two_star,
/// or mu <= 0 with q > two_sharp).
double xi_threshold(const ProblemParams& params, double cg_p, double cg_q, double s_h);

/// True iff assumption_lhs(params) < xi_threshold(params, ...).
bool check_assumption_basic(const ProblemParams& params, double cg_p, double cg_q, double s_h);

/// The mass a1 at which the smallness condition becomes an equality
/// (mu > 0, q < two_sharp < p <= two_star).
double critical_mass_a1(const ProblemParams& params, double cg_p, double cg_q, double s_h);

/// k0 = (mu eta_q C_G(q) (p eta_p - q eta_q)/(p eta_p - 1))^{1/(1 - q eta_q)}.
/// Every plus-branch stationary point satisfies A[u] < k0 a^{2q(1-eta_q)/(1-q eta_q)}.
double basin_k0(const ProblemParams& params, double cg_q);

/// k1 = k0 * a1^{2q(1-eta_q)/(1-q eta_q)}: the kinetic radius of the basin V(a).
double basin_k1(const ProblemParams& params, double cg_p, double cg_q, double s_h);

/// The mu for which assumption_lhs equals fraction*Xi (all else fixed).
double mu_for_xi_fraction(const ProblemParams& params, double fraction,
                          double cg_p, double cg_q, double s_h);

struct TheoremReport {
    std::vector<std::string> tags;
    std::vector<std::string> notes;  // e.g. statement-vs-proof discrepancies
};

/// Which of the existence/nonexistence theorems apply to these parameters,
/// following the theorem statements.
TheoremReport theorem_applicability(const ProblemParams& params,
                                    double cg_p, double cg_q, double s_h);

} // namespace chq
