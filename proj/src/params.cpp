#include "chq/params.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace chq {

namespace {

constexpr double kClassifyTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

void ProblemParams::validate() const {
    std::ostringstream err;
    if (N < 3)
        err << "N must be >= 3, got " << N;
    else if (!(alpha > 0.0 && alpha < double(N)))
        err << "alpha must lie in (0, N), got " << alpha;
    else if (!(a > 0.0))
        err << "a must be positive, got " << a;
    else if (!std::isfinite(mu))
        err << "mu must be finite";
    else {
        const Exponents e = derive_exponents(*this);
        if (q <= e.two_alpha)
            err << "q must exceed two_alpha = " << e.two_alpha << ", got " << q;
        else if (!(q < p))
            err << "need q < p, got q = " << q << ", p = " << p;
        else if (!p_is_two_star() && p > e.two_star)
            err << "p must not exceed two_star = " << e.two_star << ", got " << p;
    }
    const std::string msg = err.str();
    if (!msg.empty()) throw InvalidParams(msg);
}

Exponents derive_exponents(const ProblemParams& params) {
    if (params.N < 3) throw InvalidParams("N must be >= 3");
    if (!(params.alpha > 0.0 && params.alpha < double(params.N)))
        throw InvalidParams("alpha must lie in (0, N)");
    Exponents e;
    e.N = params.N;
    e.alpha = params.alpha;
    const double n = params.N;
    e.two_alpha = (n + params.alpha) / n;
    e.two_sharp = (n + params.alpha + 2.0) / n;
    e.two_star = (n + params.alpha) / (n - 2.0);
    return e;
}

bool ProblemParams::p_is_two_star() const {
    if (p_kind == ExponentKind::TwoStar) return true;
    const Exponents e = derive_exponents(*this);
    return std::abs(p - e.two_star) <= kClassifyTol * std::max(1.0, e.two_star);
}

bool ProblemParams::q_is_two_sharp() const {
    if (q_kind == ExponentKind::TwoSharp) return true;
    const Exponents e = derive_exponents(*this);
    return std::abs(q - e.two_sharp) <= kClassifyTol * std::max(1.0, e.two_sharp);
}

RegimeTag classify_regime(const ProblemParams& params) {
    params.validate();
    const Exponents e = derive_exponents(params);
    RegimeTag tag{};
    if (params.q_is_two_sharp())
        tag.perturbation = MassRegime::Critical;
    else if (params.q < e.two_sharp)
        tag.perturbation = MassRegime::Subcritical;
    else
        tag.perturbation = MassRegime::Supercritical;
    tag.leading = params.p_is_two_star() ? LeadingRegime::HlsCritical
                                         : LeadingRegime::HlsSubcritical;
    if (params.mu > 0)
        tag.sign = CouplingSign::Focusing;
    else if (params.mu < 0)
        tag.sign = CouplingSign::Defocusing;
    else
        tag.sign = CouplingSign::Homogeneous;
    return tag;
}

std::string to_string(MassRegime m) {
    switch (m) {
        case MassRegime::Subcritical: return "mass_subcritical";
        case MassRegime::Critical: return "mass_critical";
        case MassRegime::Supercritical: return "mass_supercritical";
    }
    return "?";
}

std::string to_string(LeadingRegime l) {
    return l == LeadingRegime::HlsSubcritical ? "hls_subcritical" : "hls_critical";
}

std::string to_string(CouplingSign s) {
    switch (s) {
        case CouplingSign::Focusing: return "focusing";
        case CouplingSign::Defocusing: return "defocusing";
        case CouplingSign::Homogeneous: return "homogeneous";
    }
    return "?";
}

namespace {

// x^y with the 0^0 = 1 convention used throughout the threshold formulas.
double pow00(double x, double y) {
    if (y == 0.0) return 1.0;
    return std::pow(x, y);
}

} // namespace

double assumption_lhs(const ProblemParams& params) {
    const Exponents e = derive_exponents(params);
    const double ep = e.eta(params.p), eq = e.eta(params.q);
    const double pep = params.p * ep, qeq = params.q * eq;
    const double lhs1 = std::abs(params.mu) * std::pow(params.a, 2.0 * params.q * (1.0 - eq));
    const double lhs2 = std::pow(params.a, 2.0 * params.p * (1.0 - ep));
    return pow00(lhs1, pep - 1.0) * pow00(lhs2, 1.0 - qeq);
}

double xi_threshold(const ProblemParams& params, double cg_p, double cg_q, double s_h) {
    params.validate();
    const Exponents e = derive_exponents(params);
    const bool q_sub_or_crit = params.q_is_two_sharp() || params.q < e.two_sharp;
    const bool p_crit = params.p_is_two_star();
    const double ep = e.eta(params.p), eq = e.eta(params.q);
    const double pep = params.p * ep;
    const double qeq = params.q_is_two_sharp() ? 1.0 : params.q * eq;

    if (params.mu > 0 && !q_sub_or_crit)
        return kInf;  // two_sharp < q < p <= two_star
    if (params.mu > 0 && q_sub_or_crit && p_crit) {
        if (!(s_h > 0)) throw InvalidParams("xi_threshold: need s_h > 0");
        const double p = params.p;
        const double f1 = (1.0 - qeq) / (std::pow(s_h, -p) * (p - qeq));
        const double f2 = (p - 1.0) / (eq * cg_q * (p - qeq));
        return pow00(f1, 1.0 - qeq) * pow00(f2, p - 1.0);
    }
    if (params.mu > 0 && q_sub_or_crit && !p_crit) {
        if (!(cg_p > 0 && cg_q > 0)) throw InvalidParams("xi_threshold: need cg_p, cg_q > 0");
        const double f1 = (1.0 - qeq) / (ep * cg_p * (pep - qeq));
        const double f2 = (pep - 1.0) / (eq * cg_q * (pep - qeq));
        return pow00(f1, 1.0 - qeq) * pow00(f2, pep - 1.0);
    }
    if (params.mu <= 0 && q_sub_or_crit && !p_crit) {
        if (!(cg_p > 0 && cg_q > 0)) throw InvalidParams("xi_threshold: need cg_p, cg_q > 0");
        const double f1 = 1.0 / (eq * cg_q);
        const double f2 = (1.0 - ep) / ((ep - eq) * cg_p);
        return pow00(f1, 1.0 - qeq) * pow00(f2, pep - 1.0);
    }
    throw RegimeUnsupported("xi_threshold: no branch for mu <= 0 with " +
                            std::string(p_crit ? "p = two_star" : "q > two_sharp"));
}

bool check_assumption_basic(const ProblemParams& params,
                            double cg_p, double cg_q, double s_h) {
    return assumption_lhs(params) < xi_threshold(params, cg_p, cg_q, s_h);
}

double critical_mass_a1(const ProblemParams& params,
                        double cg_p, double cg_q, double s_h) {
    const Exponents e = derive_exponents(params);
    if (!(params.mu > 0) || params.q_is_two_sharp() || !(params.q < e.two_sharp))
        throw RegimeUnsupported("a1 defined for mu > 0 with q < two_sharp < p");
    const double xi = xi_threshold(params, cg_p, cg_q, s_h);
    const double ep = e.eta(params.p), eq = e.eta(params.q);
    const double pep = params.p * ep, qeq = params.q * eq;
    // lhs(a) = mu^{p eta_p - 1} * a^epsilon with epsilon > 0
    const double eps = 2.0 * params.q * (1.0 - eq) * (pep - 1.0) +
                       2.0 * params.p * (1.0 - ep) * (1.0 - qeq);
    return std::pow(xi / std::pow(params.mu, pep - 1.0), 1.0 / eps);
}

double basin_k0(const ProblemParams& params, double cg_q) {
    const Exponents e = derive_exponents(params);
    const double ep = e.eta(params.p), eq = e.eta(params.q);
    const double pep = params.p * ep, qeq = params.q * eq;
    if (!(params.mu > 0) || !(qeq < 1.0))
        throw RegimeUnsupported("k0 defined for mu > 0 with q < two_sharp");
    return std::pow(params.mu * eq * cg_q * (pep - qeq) / (pep - 1.0), 1.0 / (1.0 - qeq));
}

double basin_k1(const ProblemParams& params, double cg_p, double cg_q, double s_h) {
    const Exponents e = derive_exponents(params);
    const double eq = e.eta(params.q), qeq = params.q * eq;
    const double a1 = critical_mass_a1(params, cg_p, cg_q, s_h);
    return basin_k0(params, cg_q) *
           std::pow(a1, 2.0 * params.q * (1.0 - eq) / (1.0 - qeq));
}

double mu_for_xi_fraction(const ProblemParams& params, double fraction,
                          double cg_p, double cg_q, double s_h) {
    if (!(fraction > 0)) throw InvalidParams("fraction must be positive");
    ProblemParams probe = params;
    probe.mu = 1.0;
    const double xi = xi_threshold(probe, cg_p, cg_q, s_h);
    if (!std::isfinite(xi))
        throw RegimeUnsupported("mu_for_xi_fraction: Xi is infinite in this regime");
    const double lhs_at_mu1 = assumption_lhs(probe);
    const Exponents e = derive_exponents(params);
    const double pep = params.p * e.eta(params.p);
    // lhs scales as mu^{p eta_p - 1} at fixed a
    return std::pow(fraction * xi / lhs_at_mu1, 1.0 / (pep - 1.0));
}

TheoremReport theorem_applicability(const ProblemParams& params,
                                    double cg_p, double cg_q, double s_h) {
    params.validate();
    TheoremReport rep;
    const Exponents e = derive_exponents(params);
    const RegimeTag tag = classify_regime(params);
    const int N = params.N;
    const double alpha = params.alpha, q = params.q;
    const bool p_crit = params.p_is_two_star();

    bool basic = false;
    bool basic_known = true;
    try {
        basic = check_assumption_basic(params, cg_p, cg_q, s_h);
    } catch (const RegimeUnsupported&) {
        basic_known = false;
    }

    if (tag.sign == CouplingSign::Focusing && tag.perturbation == MassRegime::Subcritical &&
        basic_known && basic) {
        rep.tags.push_back("Theorem 1(i): ground state at gamma+ < 0, lambda < 0");
        bool part2 = !p_crit;
        if (p_crit) {
            const bool bullet1 = N >= 6 && alpha < double(N) - 2.0 &&
                q > std::max((2.0 * N - 2.0 + alpha) / (2.0 * N - 4.0),
                             (N + alpha - 2.0) / (N - 2.0));
            const bool bullet2 = N == 5 && alpha < 3.0 &&
                q > std::max(4.0 * alpha / 3.0, (7.0 + 2.0 * alpha) / 6.0);
            const bool bullet3 = N >= 3 && N <= 5 &&
                alpha >= std::max(double(N) - 2.0, 2.0 * N - 6.0) && q >= 2.0;
            part2 = bullet1 || bullet2 || bullet3;
            // The proofs also admit q in (two_alpha, 2) for N in {3,4,5} with
            // alpha in the bullet-3 range; the statement requires q >= 2. We
            // follow the statement and surface the gap.
            const bool proof_only = !part2 && N >= 3 && N <= 5 &&
                alpha >= std::max(double(N) - 2.0, 2.0 * N - 6.0) &&
                q > e.two_alpha && q < 2.0;
            if (proof_only)
                rep.notes.push_back(
                    "Theorem 1(ii): q < 2 falls outside the theorem statement "
                    "although the proof's case list covers it; not tagged");
        }
        if (part2)
            rep.tags.push_back("Theorem 1(ii): second solution at gamma- > 0");
        rep.tags.push_back("Theorem 2: gamma+ equals the local minimum over V(a)");
    }

    if (tag.sign == CouplingSign::Focusing && tag.perturbation == MassRegime::Critical) {
        const bool dim_ok = !p_crit || N >= 4 || (N == 3 && alpha < 1.0);
        if (dim_ok) {
            const double threshold = std::pow(params.a, 2.0 - 2.0 * q) / (e.eta(q) * cg_q);
            if (params.mu < threshold)
                rep.tags.push_back("Theorem 3(i): ground state at gamma > 0");
            else
                rep.tags.push_back("Theorem 3(ii): no ground state (mass-critical "
                                   "coupling at or above threshold)");
        } else {
            rep.notes.push_back("Theorem 3 needs alpha in (0,1) when N = 3, p = two_star");
        }
    }

    if (tag.sign == CouplingSign::Focusing &&
        tag.perturbation == MassRegime::Supercritical && p_crit) {
        const bool dim_ok = N >= 4 || alpha < std::min(q - 1.0, 3.0);
        if (dim_ok)
            rep.tags.push_back("Theorem 4: ground state at gamma > 0");
        else
            rep.notes.push_back(
                "Theorem 4 needs alpha in (0, min{q-1, 3}) when N = 3, p = two_star");
    }

    if (tag.sign == CouplingSign::Defocusing &&
        tag.perturbation != MassRegime::Supercritical) {
        if (!p_crit && basic_known && basic)
            rep.tags.push_back("Theorem 5(i): normalized solution at gamma > 0");
        if (p_crit && alpha > std::max(0.0, double(N) - 4.0) && q >= 2.0 && q < e.two_star)
            rep.tags.push_back("Theorem 5(ii): no positive solution (nonexistence)");
    }

    return rep;
}

} // namespace chq
