#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "chq/errors.hpp"
#include "chq/params.hpp"

namespace chq {

/// Cell-centered radial grid on [0, r_max]: nodes r_i = (i+1/2) h, so no node
/// sits on the coordinate singularity. Quadrature weights carry the full
/// N-dimensional volume element.
struct RadialGrid {
    int N = 3;
    double r_max = 40.0;
    int M = 2048;
    double h = 0.0;
    double sphere_area = 0.0;  // area of the unit sphere S^{N-1}
    std::vector<double> r;     // nodes
    std::vector<double> w;     // w_i = sphere_area * r_i^{N-1} * h

    static std::shared_ptr<const RadialGrid> make(int N, double r_max, int M);
    bool same_as(const RadialGrid& other) const;
};

double unit_sphere_area(int N);

struct RadialField {
    std::shared_ptr<const RadialGrid> grid;
    std::vector<double> v;

    RadialField() = default;
    explicit RadialField(std::shared_ptr<const RadialGrid> g)
        : grid(std::move(g)), v(grid->M, 0.0) {}
    RadialField(std::shared_ptr<const RadialGrid> g, std::vector<double> values)
        : grid(std::move(g)), v(std::move(values)) {}

    int size() const { return int(v.size()); }
};

/// Dense discretization of the Riesz convolution: (I_alpha * f)(r_i) =
/// sum_j K[i][j] w_j f_j. Entries near the diagonal are cell-averaged because
/// the angular factor is integrable but not smooth across r = s.
struct RieszKernel {
    std::shared_ptr<const RadialGrid> grid;
    double alpha = 0.0;
    std::vector<double> k;  // M x M, row-major, symmetric

    double at(int i, int j) const { return k[size_t(i) * grid->M + j]; }
};

/// Angular part of |x - y|^{alpha - N} integrated over the unit sphere:
/// closed form for N = 3 and N = 5, adaptive quadrature for N = 4.
double angular_factor(int N, double alpha, double r, double s);

RieszKernel build_kernel(std::shared_ptr<const RadialGrid> grid, double alpha);
RieszKernel build_kernel_serial(std::shared_ptr<const RadialGrid> grid, double alpha);

/// out_i = sum_j K[i][j] w_j src_j; row-parallel, bitwise identical to the
/// serial reference.
void apply_kernel(const RieszKernel& kernel, const std::vector<double>& src,
                  std::vector<double>& out);
void apply_kernel_serial(const RieszKernel& kernel, const std::vector<double>& src,
                         std::vector<double>& out);

struct EnergyBreakdown {
    double mass = 0;  // ||u||_2^2
    double A = 0;     // ||grad u||_2^2
    double B_p = 0;
    double B_q = 0;
    double E = 0;
    double P = 0;
};

double mass(const RadialField& u);
double grad_energy(const RadialField& u);  // A[u]
double b_term(const RadialField& u, double s, const RieszKernel& kernel);
double lp_norm_pow(const RadialField& u, double p);  // ||u||_p^p
EnergyBreakdown breakdown(const RadialField& u, const ProblemParams& params,
                          const RieszKernel& kernel);

/// The conservative radial Laplacian matching grad_energy exactly:
/// <-lap(u), u>_w == grad_energy(u) to rounding.
void radial_laplacian(const RadialField& u, std::vector<double>& out);

/// Solves (c_id I - c_lap Laplacian) x = rhs on the grid (banded Cholesky).
/// Requires c_id > 0, c_lap >= 0.
struct HelmholtzSolver {
    HelmholtzSolver(std::shared_ptr<const RadialGrid> grid, double c_lap, double c_id);
    void solve(const std::vector<double>& rhs, std::vector<double>& x) const;

private:
    std::shared_ptr<const RadialGrid> grid_;
    int bw_ = 0;
    std::vector<double> chol_;  // lower-banded Cholesky factor of W*(c_id - c_lap*lap)
};

/// The mass-preserving dilation (s o u)(r) = s^{N/4} u(s^{1/2} r), realized by
/// cubic resampling. Throws ScaleOutOfRange when more than 1e-6 of the mass
/// leaves the truncated domain.
RadialField scale_field(const RadialField& u, double s);

RadialField normalize_mass(const RadialField& u, double a);

/// Weighted decreasing rearrangement of |u|. Preserves mass exactly by
/// redistributing u^2 over the radial cells in sorted order.
RadialField rearrange_decreasing(const RadialField& u);

/// Cut-off Sobolev extremal: xi(r) * [N(N-2) eps^2]^{(N-2)/4} / (eps^2 + r^2)^{(N-2)/2}
/// with xi == 1 on [0, cutoff_radius] and xi == 0 beyond 2*cutoff_radius.
RadialField bubble(std::shared_ptr<const RadialGrid> grid, double epsilon,
                   double cutoff_radius = 1.0);

/// Uncut bubble profile (test families, Sobolev quotient checks).
RadialField bubble_uncut(std::shared_ptr<const RadialGrid> grid, double epsilon);

RadialField gaussian_field(std::shared_ptr<const RadialGrid> grid, double width,
                           double amplitude = 1.0);

/// Reproducible positive bump mixture for property tests.
RadialField random_field(std::shared_ptr<const RadialGrid> grid, std::uint64_t seed,
                         double smoothness = 1.0);

} // namespace chq
