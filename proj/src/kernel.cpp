#include <cmath>
#include <vector>

#include "chq/constants.hpp"
#include "chq/field.hpp"
#include "chq/quadrature.hpp"

namespace chq {

namespace {

// integral of u^e over [u0, u1], with the logarithmic case at e = -1
double power_integral(double u0, double u1, double e) {
    if (std::abs(e + 1.0) < 1e-9) return std::log(u1 / u0);
    return (std::pow(u1, e + 1.0) - std::pow(u0, e + 1.0)) / (e + 1.0);
}

double angular_n3(double alpha, double r, double s) {
    // 2*pi * int_{-1}^{1} (r^2 + s^2 - 2 r s t)^{(alpha-3)/2} dt
    const double sum = r + s, diff = std::abs(r - s);
    if (std::abs(alpha - 1.0) < 1e-8)
        return 2.0 * M_PI * std::log(sum / diff) / (r * s);
    return 2.0 * M_PI * (std::pow(sum, alpha - 1.0) - std::pow(diff, alpha - 1.0)) /
           (r * s * (alpha - 1.0));
}

double angular_n5(double alpha, double r, double s) {
    // omega_3 * int (A - B t)^beta (1 - t^2) dt via the substitution u = A - B t
    const double A = r * r + s * s, B = 2.0 * r * s;
    const double beta = 0.5 * (alpha - 5.0);
    const double u0 = (r - s) * (r - s), u1 = (r + s) * (r + s);
    const double J0 = power_integral(u0, u1, beta);
    const double J1 = power_integral(u0, u1, beta + 1.0);
    const double J2 = power_integral(u0, u1, beta + 2.0);
    const double omega3 = 2.0 * M_PI * M_PI;
    return omega3 * ((B * B - A * A) * J0 + 2.0 * A * J1 - J2) / (B * B * B);
}

double angular_n4(double alpha, double r, double s) {
    const double A = r * r + s * s, B = 2.0 * r * s;
    const double beta = 0.5 * (alpha - 4.0);
    auto f = [&](double theta) {
        const double st = std::sin(theta);
        return std::pow(A - B * std::cos(theta), beta) * st * st;
    };
    const double omega2 = 4.0 * M_PI;
    return omega2 * adaptive_simpson(f, 0.0, M_PI, 1e-9, 1e-13, 36);
}

} // namespace

double angular_factor(int N, double alpha, double r, double s) {
    switch (N) {
        case 3: return angular_n3(alpha, r, s);
        case 4: return angular_n4(alpha, r, s);
        case 5: return angular_n5(alpha, r, s);
        default:
            throw UnsupportedDimension("angular_factor: N must be 3, 4 or 5");
    }
}

namespace {

constexpr int kNearBand = 2;
// Distinct odd sub-divisions so product midpoints never land on r = s.
constexpr int kSubR = 16;
constexpr int kSubS = 24;

// Cell-pair average of ang(r,s) (r s)^{N-1} over cell_i x cell_j, normalized
// to act like a point value at (r_i, r_j).
double near_entry(const RadialGrid& g, double alpha, int i, int j) {
    const int N = g.N;
    double acc = 0;
    for (int a = 0; a < kSubR; ++a) {
        const double x = (i + (a + 0.5) / kSubR) * g.h;
        const double xw = std::pow(x, N - 1);
        for (int b = 0; b < kSubS; ++b) {
            const double y = (j + (b + 0.5) / kSubS) * g.h;
            acc += angular_factor(N, alpha, x, y) * xw * std::pow(y, N - 1);
        }
    }
    acc *= (g.h / kSubR) * (g.h / kSubS);
    return acc / (std::pow(g.r[i], N - 1) * std::pow(g.r[j], N - 1) * g.h * g.h);
}

void fill_row(const RadialGrid& g, double alpha, double prefactor,
              int i, double* row) {
    for (int j = i; j < g.M; ++j) {
        double ang;
        if (j - i <= kNearBand)
            ang = near_entry(g, alpha, i, j);
        else
            ang = angular_factor(g.N, alpha, g.r[i], g.r[j]);
        row[j] = prefactor * ang;
    }
}

RieszKernel build_impl(std::shared_ptr<const RadialGrid> grid, double alpha,
                       bool parallel) {
    const RadialGrid& g = *grid;
    if (!(alpha > 0 && alpha < g.N))
        throw InvalidParams("build_kernel: alpha must lie in (0, N)");
    if (g.N < 3 || g.N > 5)
        throw UnsupportedDimension("build_kernel: N must be 3, 4 or 5");
    RieszKernel ker;
    ker.grid = grid;
    ker.alpha = alpha;
    ker.k.assign(size_t(g.M) * g.M, 0.0);
    const double prefactor = riesz_constant(g.N, alpha) / g.sphere_area;
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (int i = 0; i < g.M; ++i)
            fill_row(g, alpha, prefactor, i, ker.k.data() + size_t(i) * g.M);
    } else {
        for (int i = 0; i < g.M; ++i)
            fill_row(g, alpha, prefactor, i, ker.k.data() + size_t(i) * g.M);
    }
    // mirror the upper triangle
    for (int i = 0; i < g.M; ++i)
        for (int j = 0; j < i; ++j)
            ker.k[size_t(i) * g.M + j] = ker.k[size_t(j) * g.M + i];
    return ker;
}

} // namespace

RieszKernel build_kernel(std::shared_ptr<const RadialGrid> grid, double alpha) {
    return build_impl(std::move(grid), alpha, true);
}

RieszKernel build_kernel_serial(std::shared_ptr<const RadialGrid> grid, double alpha) {
    return build_impl(std::move(grid), alpha, false);
}

void apply_kernel_serial(const RieszKernel& kernel, const std::vector<double>& src,
                         std::vector<double>& out) {
    const RadialGrid& g = *kernel.grid;
    const int M = g.M;
    if (int(src.size()) != M) throw GridMismatch("apply_kernel: size mismatch");
    std::vector<double> tmp(M);
    for (int j = 0; j < M; ++j) tmp[j] = g.w[j] * src[j];
    out.resize(M);
    for (int i = 0; i < M; ++i) {
        const double* row = kernel.k.data() + size_t(i) * M;
        double acc = 0;
        for (int j = 0; j < M; ++j) acc += row[j] * tmp[j];
        out[i] = acc;
    }
}

void apply_kernel(const RieszKernel& kernel, const std::vector<double>& src,
                  std::vector<double>& out) {
    const RadialGrid& g = *kernel.grid;
    const int M = g.M;
    if (int(src.size()) != M) throw GridMismatch("apply_kernel: size mismatch");
    std::vector<double> tmp(M);
    for (int j = 0; j < M; ++j) tmp[j] = g.w[j] * src[j];
    out.resize(M);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < M; ++i) {
        const double* row = kernel.k.data() + size_t(i) * M;
        double acc = 0;
        for (int j = 0; j < M; ++j) acc += row[j] * tmp[j];
        out[i] = acc;
    }
}

double b_term(const RadialField& u, double s, const RieszKernel& kernel) {
    if (!u.grid->same_as(*kernel.grid))
        throw GridMismatch("b_term: field and kernel live on different grids");
    const int M = u.grid->M;
    std::vector<double> f(M), phi;
    for (int i = 0; i < M; ++i) f[i] = std::pow(std::abs(u.v[i]), s);
    apply_kernel(kernel, f, phi);
    double acc = 0;
    for (int i = 0; i < M; ++i) acc += u.grid->w[i] * f[i] * phi[i];
    return acc;
}

EnergyBreakdown breakdown(const RadialField& u, const ProblemParams& params,
                          const RieszKernel& kernel) {
    if (!u.grid->same_as(*kernel.grid))
        throw GridMismatch("breakdown: field and kernel live on different grids");
    const Exponents e = derive_exponents(params);
    EnergyBreakdown out;
    out.mass = mass(u);
    out.A = grad_energy(u);
    out.B_p = b_term(u, params.p, kernel);
    out.B_q = b_term(u, params.q, kernel);
    out.E = 0.5 * out.A - out.B_p / (2.0 * params.p) - params.mu * out.B_q / (2.0 * params.q);
    out.P = out.A - e.eta(params.p) * out.B_p - params.mu * e.eta(params.q) * out.B_q;
    return out;
}

} // namespace chq
