#include "chq/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace chq {

double unit_sphere_area(int N) {
    return 2.0 * std::pow(M_PI, 0.5 * N) / std::tgamma(0.5 * N);
}

std::shared_ptr<const RadialGrid> RadialGrid::make(int N, double r_max, int M) {
    if (N < 3) throw InvalidParams("RadialGrid: N must be >= 3");
    if (!(r_max > 0) || M < 8) throw InvalidParams("RadialGrid: need r_max > 0, M >= 8");
    auto g = std::make_shared<RadialGrid>();
    g->N = N;
    g->r_max = r_max;
    g->M = M;
    g->h = r_max / M;
    g->sphere_area = unit_sphere_area(N);
    g->r.resize(M);
    g->w.resize(M);
    for (int i = 0; i < M; ++i) {
        g->r[i] = (i + 0.5) * g->h;
        g->w[i] = g->sphere_area * std::pow(g->r[i], N - 1) * g->h;
    }
    return g;
}

bool RadialGrid::same_as(const RadialGrid& other) const {
    return N == other.N && M == other.M && r_max == other.r_max;
}

double mass(const RadialField& u) {
    double s = 0;
    for (int i = 0; i < u.size(); ++i) s += u.grid->w[i] * u.v[i] * u.v[i];
    return s;
}

double lp_norm_pow(const RadialField& u, double p) {
    double s = 0;
    for (int i = 0; i < u.size(); ++i)
        s += u.grid->w[i] * std::pow(std::abs(u.v[i]), p);
    return s;
}

namespace {

// Fourth-order derivative at face k*h from the four nearest cell centers,
// with even reflection across r = 0 and zero extension past r_max. Returns
// the (node index, coefficient) pairs, coefficients excluding the 1/(24h).
struct FaceStencil {
    int idx[4];
    double c[4];
    int n;
};

FaceStencil face_stencil(int k, int M) {
    static const double base[4] = {1.0, -27.0, 27.0, -1.0};
    FaceStencil st{};
    st.n = 0;
    for (int t = 0; t < 4; ++t) {
        int j = k - 2 + t;
        if (j < 0) j = -1 - j;  // even reflection
        if (j >= M) continue;
        bool merged = false;
        for (int m = 0; m < st.n; ++m)
            if (st.idx[m] == j) {
                st.c[m] += base[t];
                merged = true;
                break;
            }
        if (!merged) {
            st.idx[st.n] = j;
            st.c[st.n] = base[t];
            ++st.n;
        }
    }
    return st;
}

double face_weight(const RadialGrid& g, int k) {
    const double f = k * g.h;
    return g.sphere_area * g.h * std::pow(f, g.N - 1);
}

} // namespace

double grad_energy(const RadialField& u) {
    const RadialGrid& g = *u.grid;
    const double inv = 1.0 / (24.0 * g.h);
    double acc = 0;
    for (int k = 1; k <= g.M + 1; ++k) {
        const FaceStencil st = face_stencil(k, g.M);
        double d = 0;
        for (int m = 0; m < st.n; ++m) d += st.c[m] * u.v[st.idx[m]];
        d *= inv;
        acc += face_weight(g, k) * d * d;
    }
    return acc;
}

void radial_laplacian(const RadialField& u, std::vector<double>& out) {
    const RadialGrid& g = *u.grid;
    const double inv = 1.0 / (24.0 * g.h);
    out.assign(g.M, 0.0);
    // out = -(D^T Wf D u) / w; accumulate over faces
    for (int k = 1; k <= g.M + 1; ++k) {
        const FaceStencil st = face_stencil(k, g.M);
        double d = 0;
        for (int m = 0; m < st.n; ++m) d += st.c[m] * u.v[st.idx[m]];
        d *= inv;
        const double wd = face_weight(g, k) * d * inv;
        for (int m = 0; m < st.n; ++m) out[st.idx[m]] -= st.c[m] * wd;
    }
    for (int i = 0; i < g.M; ++i) out[i] /= g.w[i];
}

HelmholtzSolver::HelmholtzSolver(std::shared_ptr<const RadialGrid> grid,
                                 double c_lap, double c_id)
    : grid_(std::move(grid)), bw_(3) {
    if (!(c_id > 0) || c_lap < 0)
        throw InvalidParams("HelmholtzSolver: need c_id > 0, c_lap >= 0");
    const RadialGrid& g = *grid_;
    const int M = g.M, bw = bw_;
    const double inv = 1.0 / (24.0 * g.h);
    // band[d * M + j] holds S_{j+d, j} of S = c_id*W + c_lap*D^T Wf D
    std::vector<double> band((bw + 1) * size_t(M), 0.0);
    for (int j = 0; j < M; ++j) band[j] = c_id * g.w[j];
    for (int k = 1; k <= M + 1; ++k) {
        const FaceStencil st = face_stencil(k, M);
        const double wf = face_weight(g, k) * inv * inv * c_lap;
        for (int m1 = 0; m1 < st.n; ++m1)
            for (int m2 = 0; m2 < st.n; ++m2) {
                const int i = st.idx[m1], j = st.idx[m2];
                if (i >= j) band[size_t(i - j) * M + j] += wf * st.c[m1] * st.c[m2];
            }
    }
    // in-place banded Cholesky, lower factor
    chol_ = std::move(band);
    for (int j = 0; j < M; ++j) {
        for (int d = 0; d <= bw && j + d < M; ++d) {
            const int i = j + d;
            double sum = chol_[size_t(d) * M + j];
            const int k0 = std::max(0, i - bw);
            for (int k = k0; k < j; ++k)
                sum -= chol_[size_t(i - k) * M + k] * chol_[size_t(j - k) * M + k];
            if (d == 0) {
                if (!(sum > 0)) throw Error("HelmholtzSolver: matrix not positive definite");
                chol_[j] = std::sqrt(sum);
            } else {
                chol_[size_t(d) * M + j] = sum / chol_[j];
            }
        }
    }
}

void HelmholtzSolver::solve(const std::vector<double>& rhs, std::vector<double>& x) const {
    const RadialGrid& g = *grid_;
    const int M = g.M, bw = bw_;
    if (int(rhs.size()) != M) throw GridMismatch("HelmholtzSolver: rhs size mismatch");
    x.resize(M);
    for (int i = 0; i < M; ++i) x[i] = g.w[i] * rhs[i];
    // forward: L y = W rhs
    for (int j = 0; j < M; ++j) {
        x[j] /= chol_[j];
        const double xj = x[j];
        for (int d = 1; d <= bw && j + d < M; ++d)
            x[j + d] -= chol_[size_t(d) * M + j] * xj;
    }
    // backward: L^T x = y
    for (int j = M - 1; j >= 0; --j) {
        double sum = x[j];
        for (int d = 1; d <= bw && j + d < M; ++d)
            sum -= chol_[size_t(d) * M + j] * x[j + d];
        x[j] = sum / chol_[j];
    }
}

namespace {

double cubic_interp(const RadialField& u, double x) {
    const RadialGrid& g = *u.grid;
    if (x >= g.r_max) return 0.0;
    const double t = x / g.h - 0.5;
    const int j0 = int(std::floor(t));
    const double th = t - j0;
    const double wm1 = -th * (th - 1.0) * (th - 2.0) / 6.0;
    const double w0 = (th + 1.0) * (th - 1.0) * (th - 2.0) / 2.0;
    const double w1 = -(th + 1.0) * th * (th - 2.0) / 2.0;
    const double w2 = (th + 1.0) * th * (th - 1.0) / 6.0;
    const double wgt[4] = {wm1, w0, w1, w2};
    double acc = 0;
    for (int t4 = 0; t4 < 4; ++t4) {
        int j = j0 - 1 + t4;
        if (j < 0) j = -1 - j;
        if (j >= g.M) continue;
        acc += wgt[t4] * u.v[j];
    }
    return acc;
}

} // namespace

RadialField scale_field(const RadialField& u, double s) {
    if (!(s > 0)) throw InvalidParams("scale_field: s must be positive");
    const RadialGrid& g = *u.grid;
    RadialField out(u.grid);
    const double amp = std::pow(s, 0.25 * g.N);
    const double root = std::sqrt(s);
    for (int i = 0; i < g.M; ++i) out.v[i] = amp * cubic_interp(u, root * g.r[i]);
    const double m0 = mass(u);
    if (m0 > 0) {
        const double m1 = mass(out);
        if (std::abs(m1 - m0) > 1e-6 * m0)
            throw ScaleOutOfRange("scale_field: lost " + std::to_string((m0 - m1) / m0) +
                                  " of the mass at s = " + std::to_string(s));
    }
    return out;
}

RadialField normalize_mass(const RadialField& u, double a) {
    const double m = mass(u);
    if (!(m > 0)) throw ZeroField("normalize_mass: zero field");
    RadialField out = u;
    const double c = a / std::sqrt(m);
    for (double& x : out.v) x *= c;
    return out;
}

RadialField rearrange_decreasing(const RadialField& u) {
    const RadialGrid& g = *u.grid;
    const int M = g.M;
    std::vector<int> order(M);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double va = std::abs(u.v[a]), vb = std::abs(u.v[b]);
        if (va != vb) return va > vb;
        return a < b;
    });
    RadialField out(u.grid);
    // redistribute u^2 over cells in radial order, consuming the sorted layers
    int src = 0;
    double src_left = g.w[order[0]];
    for (int j = 0; j < M; ++j) {
        double fill = g.w[j], acc = 0;
        while (fill > 0 && src < M) {
            const double val = u.v[order[src]];
            const double take = std::min(fill, src_left);
            acc += take * val * val;
            fill -= take;
            src_left -= take;
            if (src_left <= 0) {
                ++src;
                if (src < M) src_left = g.w[order[src]];
            }
        }
        out.v[j] = std::sqrt(acc / g.w[j]);
    }
    return out;
}

namespace {

double cutoff(double r, double c) {
    if (r <= c) return 1.0;
    if (r >= 2.0 * c) return 0.0;
    const double t = (r - c) / c;
    return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

} // namespace

RadialField bubble(std::shared_ptr<const RadialGrid> grid, double epsilon,
                   double cutoff_radius) {
    const RadialGrid& g = *grid;
    if (!(epsilon >= 4.0 * g.h))
        throw GridTooCoarse("bubble: need epsilon >= 4h, got epsilon = " +
                            std::to_string(epsilon) + ", h = " + std::to_string(g.h));
    if (2.0 * cutoff_radius > g.r_max)
        throw InvalidParams("bubble: cutoff support exceeds the grid");
    RadialField out = bubble_uncut(grid, epsilon);
    for (int i = 0; i < g.M; ++i) out.v[i] *= cutoff(g.r[i], cutoff_radius);
    return out;
}

RadialField bubble_uncut(std::shared_ptr<const RadialGrid> grid, double epsilon) {
    const RadialGrid& g = *grid;
    const int N = g.N;
    const double amp = std::pow(double(N) * (N - 2) * epsilon * epsilon, 0.25 * (N - 2));
    RadialField out(grid);
    for (int i = 0; i < g.M; ++i)
        out.v[i] = amp / std::pow(epsilon * epsilon + g.r[i] * g.r[i], 0.5 * (N - 2));
    return out;
}

RadialField gaussian_field(std::shared_ptr<const RadialGrid> grid, double width,
                           double amplitude) {
    RadialField out(grid);
    for (int i = 0; i < grid->M; ++i) {
        const double t = grid->r[i] / width;
        out.v[i] = amplitude * std::exp(-t * t);
    }
    return out;
}

RadialField random_field(std::shared_ptr<const RadialGrid> grid, std::uint64_t seed,
                         double smoothness) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int bumps = 4;
    RadialField out(grid);
    for (int b = 0; b < bumps; ++b) {
        const double center = 0.25 * grid->r_max * unit(rng);
        const double width = smoothness * (0.5 + unit(rng));
        const double amp = 0.2 + 0.8 * unit(rng);
        for (int i = 0; i < grid->M; ++i) {
            const double t = (grid->r[i] - center) / width;
            out.v[i] += amp * std::exp(-t * t);
        }
    }
    return out;
}

} // namespace chq
