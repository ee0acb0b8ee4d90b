#pragma once

#include <optional>
#include <string>
#include <utility>

#include "chq/field.hpp"
#include "chq/params.hpp"

namespace chq {

/// Coefficients of the fiber map f(s) = 2 E[s o u]:
///   f(s) = s A - (mu/q) s^{q eta_q} B_q - (1/p) s^{p eta_p} B_p.
/// Roots of f' are computed on these exact scaling laws; grids are touched
/// only when a projection produces a new iterate.
struct FiberCoeffs {
    double A = 0, B_p = 0, B_q = 0;
    double p = 0, q = 0;
    double eta_p = 0, eta_q = 0;
    double mu = 0;

    double pep() const { return p * eta_p; }
    double qeq() const { return q * eta_q; }
};

enum class FiberBranch { TwoRoots, SingleMax, None };

/// For TwoRoots all three points are set with s_plus < s_diamond < s_minus.
/// For SingleMax only s_minus holds (the unique maximum of f).
struct FiberRoots {
    FiberBranch branch = FiberBranch::None;
    std::optional<double> s_plus, s_diamond, s_minus;
    double f_plus = 0, f_minus = 0;
};

FiberCoeffs fiber_from_field(const RadialField& u, const ProblemParams& params,
                             const RieszKernel& kernel);
FiberCoeffs fiber_from_breakdown(const EnergyBreakdown& b, const ProblemParams& params);

double f_eval(const FiberCoeffs& c, double s);
double f_prime(const FiberCoeffs& c, double s);   // f'(1) = P[u]
double f_second(const FiberCoeffs& c, double s);

/// Unique zero of f'' in the regime q eta_q < 1 < p eta_p with mu, B_q > 0.
double s_diamond(const FiberCoeffs& c);

FiberRoots find_roots(const FiberCoeffs& c, const ProblemParams& params);

enum class Branch { Plus, Minus, Auto };
std::string to_string(Branch b);

/// Rescales u to the selected stationary point of its fiber. Returns the
/// projected field and the scale factor.
std::pair<RadialField, double> project_to_pohozaev(const RadialField& u,
                                                   const ProblemParams& params,
                                                   const RieszKernel& kernel,
                                                   Branch branch);

/// "s,f,f_prime,f_second" over a log-spaced s range, for plotting.
void write_fiber_csv(const std::string& path, const FiberCoeffs& c,
                     double s_lo, double s_hi, int count);

} // namespace chq
