#include "chq/fiber.hpp"

#include <cmath>
#include <fstream>

namespace chq {

FiberCoeffs fiber_from_breakdown(const EnergyBreakdown& b, const ProblemParams& params) {
    const Exponents e = derive_exponents(params);
    FiberCoeffs c;
    c.A = b.A;
    c.B_p = b.B_p;
    c.B_q = b.B_q;
    c.p = params.p;
    c.q = params.q;
    c.eta_p = e.eta(params.p);
    c.eta_q = e.eta(params.q);
    c.mu = params.mu;
    if (params.q_is_two_sharp()) c.eta_q = 1.0 / params.q;  // exact q eta_q = 1
    if (params.p_is_two_star()) c.eta_p = 1.0;
    return c;
}

FiberCoeffs fiber_from_field(const RadialField& u, const ProblemParams& params,
                             const RieszKernel& kernel) {
    return fiber_from_breakdown(breakdown(u, params, kernel), params);
}

double f_eval(const FiberCoeffs& c, double s) {
    if (!(s > 0)) throw InvalidParams("f_eval: s must be positive");
    return s * c.A - (c.mu / c.q) * std::pow(s, c.qeq()) * c.B_q -
           std::pow(s, c.pep()) * c.B_p / c.p;
}

double f_prime(const FiberCoeffs& c, double s) {
    if (!(s > 0)) throw InvalidParams("f_prime: s must be positive");
    return c.A - c.eta_p * std::pow(s, c.pep() - 1.0) * c.B_p -
           c.mu * c.eta_q * std::pow(s, c.qeq() - 1.0) * c.B_q;
}

double f_second(const FiberCoeffs& c, double s) {
    if (!(s > 0)) throw InvalidParams("f_second: s must be positive");
    return -c.eta_p * (c.pep() - 1.0) * std::pow(s, c.pep() - 2.0) * c.B_p +
           c.mu * c.eta_q * (1.0 - c.qeq()) * std::pow(s, c.qeq() - 2.0) * c.B_q;
}

double s_diamond(const FiberCoeffs& c) {
    if (!(c.mu > 0) || !(c.qeq() < 1.0) || !(c.pep() > 1.0) || !(c.B_q > 0))
        throw RegimeUnsupported("s_diamond: needs mu > 0, q eta_q < 1 < p eta_p, B_q > 0");
    return std::pow(c.mu * c.eta_q * (1.0 - c.qeq()) * c.B_q /
                        (c.eta_p * (c.pep() - 1.0) * c.B_p),
                    1.0 / (c.pep() - c.qeq()));
}

namespace {

constexpr double kSLo = 1e-8;
constexpr double kSHi = 1e8;

double refine_root(const FiberCoeffs& c, double lo, double hi) {
    double flo = f_prime(c, lo);
    double fhi = f_prime(c, hi);
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw BracketFailure("find_roots: no sign change in [" + std::to_string(lo) +
                             ", " + std::to_string(hi) + "]");
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f_prime(c, mid);
        if (fm == 0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    // Newton polish inside the bracket; fall back to bisection if it strays
    double s = 0.5 * (lo + hi);
    for (int it = 0; it < 60; ++it) {
        const double fp = f_prime(c, s);
        if (std::abs(fp) <= 1e-13 * c.A) break;
        const double fpp = f_second(c, s);
        double step = fpp != 0 ? fp / fpp : 0;
        double next = s - step;
        if (!(next > lo) || !(next < hi) || step == 0) next = 0.5 * (lo + hi);
        const double fn = f_prime(c, next);
        if ((fn > 0) == (f_prime(c, lo) > 0)) lo = next;
        else hi = next;
        s = next;
    }
    return s;
}

double grow_bracket_down(const FiberCoeffs& c, double start) {
    double lo = start;
    while (lo > kSLo && f_prime(c, lo) > 0) lo *= 0.5;
    if (f_prime(c, lo) > 0)
        throw BracketFailure("find_roots: f' stays positive down to s = 1e-8");
    return lo;
}

double grow_bracket_up(const FiberCoeffs& c, double start) {
    double hi = start;
    while (hi < kSHi && f_prime(c, hi) > 0) hi *= 2.0;
    if (f_prime(c, hi) > 0)
        throw BracketFailure("find_roots: f' stays positive up to s = 1e8");
    return hi;
}

} // namespace

FiberRoots find_roots(const FiberCoeffs& c, const ProblemParams& params) {
    if (!(c.A > 0) || !(c.B_p > 0) || c.B_q < 0)
        throw InvalidParams("find_roots: need A > 0, B_p > 0, B_q >= 0");
    const RegimeTag tag = classify_regime(params);
    FiberRoots roots;

    const bool effectively_homogeneous = c.mu == 0.0 || c.B_q == 0.0;
    const bool mass_critical = tag.perturbation == MassRegime::Critical;

    if (effectively_homogeneous || mass_critical) {
        // f'(s) = (A - mu eta_q B_q) - eta_p s^{p eta_p - 1} B_p
        const double head = mass_critical && !effectively_homogeneous
                                ? c.A - c.mu * c.eta_q * c.B_q
                                : c.A;
        if (effectively_homogeneous || head > 0) {
            roots.branch = FiberBranch::SingleMax;
            roots.s_minus = std::pow(head / (c.eta_p * c.B_p), 1.0 / (c.pep() - 1.0));
            roots.f_minus = f_eval(c, *roots.s_minus);
        } else {
            roots.branch = FiberBranch::None;
        }
        return roots;
    }

    if (c.mu > 0 && tag.perturbation == MassRegime::Subcritical) {
        const double sd = s_diamond(c);
        roots.s_diamond = sd;
        if (f_prime(c, sd) <= 0) {
            roots.branch = FiberBranch::None;  // smallness condition violated
            return roots;
        }
        roots.branch = FiberBranch::TwoRoots;
        roots.s_plus = refine_root(c, grow_bracket_down(c, sd), sd);
        roots.s_minus = refine_root(c, sd, grow_bracket_up(c, sd));
        roots.f_plus = f_eval(c, *roots.s_plus);
        roots.f_minus = f_eval(c, *roots.s_minus);
        return roots;
    }

    // mass-supercritical q with mu > 0, or mu < 0: f' strictly decreasing
    double lo = 1.0, hi = 1.0;
    if (f_prime(c, 1.0) > 0) {
        hi = grow_bracket_up(c, 1.0);
        lo = hi * 0.5;
    } else {
        while (lo > kSLo && f_prime(c, lo) <= 0) lo *= 0.5;
        if (f_prime(c, lo) <= 0)
            throw BracketFailure("find_roots: f' stays nonpositive down to s = 1e-8");
        hi = lo * 2.0;
    }
    roots.branch = FiberBranch::SingleMax;
    roots.s_minus = refine_root(c, lo, hi);
    roots.f_minus = f_eval(c, *roots.s_minus);
    return roots;
}

std::string to_string(Branch b) {
    switch (b) {
        case Branch::Plus: return "plus";
        case Branch::Minus: return "minus";
        case Branch::Auto: return "auto";
    }
    return "?";
}

std::pair<RadialField, double> project_to_pohozaev(const RadialField& u,
                                                   const ProblemParams& params,
                                                   const RieszKernel& kernel,
                                                   Branch branch) {
    const FiberCoeffs c = fiber_from_field(u, params, kernel);
    const FiberRoots roots = find_roots(c, params);
    double s = 0;
    if (roots.branch == FiberBranch::None)
        throw BranchUnavailable("project_to_pohozaev: fiber has no stationary point "
                                "(smallness condition violated?)");
    if (branch == Branch::Plus) {
        if (roots.branch != FiberBranch::TwoRoots)
            throw BranchUnavailable("project_to_pohozaev: no plus branch in this regime");
        s = *roots.s_plus;
    } else {
        s = *roots.s_minus;
    }
    return {scale_field(u, s), s};
}

void write_fiber_csv(const std::string& path, const FiberCoeffs& c,
                     double s_lo, double s_hi, int count) {
    std::ofstream out(path);
    if (!out) throw Error("write_fiber_csv: cannot open " + path);
    out << "s,f,f_prime,f_second\n";
    out.precision(15);
    const double ratio = std::log(s_hi / s_lo);
    for (int i = 0; i < count; ++i) {
        const double s = s_lo * std::exp(ratio * i / double(count - 1));
        out << s << "," << f_eval(c, s) << "," << f_prime(c, s) << ","
            << f_second(c, s) << "\n";
    }
}

} // namespace chq
