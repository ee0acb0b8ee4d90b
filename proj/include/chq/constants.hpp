#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>

#include "chq/params.hpp"

namespace chq {

struct RadialGrid;
struct RadialField;

/// Gamma-function form of the Riesz normalization A(N, alpha).
double riesz_constant(int N, double alpha);

/// Sharp diagonal Hardy-Littlewood-Sobolev constant C_H(N, alpha).
double hls_constant(int N, double alpha);

/// Best Sobolev constant, evaluated as the Rayleigh quotient of the exact
/// bubble by adaptive radial quadrature at two widths; throws
/// QuadratureFailure if the two disagree beyond 1e-6 relative.
double sobolev_constant(int N);

/// S_H = S / [A(N,alpha) C_H(N,alpha)]^{(N-2)/(N+alpha)}.
double s_h_constant(int N, double alpha);

/// Hands the constants module a ground-state solver without linking it
/// against the solver module. Returns (W_r, weak-form residual).
using GroundStateSolver = std::function<std::pair<RadialField, double>(
    int N, double alpha, double r, std::shared_ptr<const RadialGrid>)>;

/// C_G(N, alpha, r) = r / ||W_r||_2^{2r-2} from the computed ground state.
/// residual_out (optional) receives the W_r solve residual.
double gn_constant(int N, double alpha, double r,
                   std::shared_ptr<const RadialGrid> grid,
                   const GroundStateSolver& solver, double* residual_out = nullptr);

struct ConstantEntry {
    double value = 0;
    std::string method;  // closed_form | quadrature | ground_state
    double residual = 0;
    std::string grid;
};

/// Immutable once built; the C_G entries are cached per (N, alpha, r) in a
/// JSON file so repeated CLI invocations do not re-solve W_r.
struct ConstantsTable {
    int N = 3;
    double alpha = 2.0;
    double riesz_A = 0;
    double hls_C = 0;
    double sobolev_S = 0;
    double s_h = 0;
    std::map<std::string, ConstantEntry> cg;

    static std::string cg_key(int N, double alpha, double r);
    bool has_cg(double r) const;
    double cg_for(double r) const;  // throws InvalidParams if missing
};

/// Builds the analytic entries and the C_G entries for the requested
/// exponents, consulting/updating cache_path ("" disables caching).
ConstantsTable build_constants(int N, double alpha, const std::vector<double>& r_list,
                               std::shared_ptr<const RadialGrid> grid,
                               const GroundStateSolver& solver,
                               const std::string& cache_path = "");

ConstantsTable load_constants_cache(int N, double alpha, const std::string& path);
void save_constants_cache(const ConstantsTable& table, const std::string& path);

} // namespace chq
