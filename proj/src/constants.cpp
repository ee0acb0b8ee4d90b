#include "chq/constants.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "chq/field.hpp"
#include "chq/quadrature.hpp"

namespace chq {

double riesz_constant(int N, double alpha) {
    if (!(alpha > 0 && alpha < N)) throw InvalidParams("riesz_constant: alpha in (0, N)");
    return std::tgamma(0.5 * (N - alpha)) /
           (std::pow(M_PI, 0.5 * N) * std::pow(2.0, alpha) * std::tgamma(0.5 * alpha));
}

double hls_constant(int N, double alpha) {
    if (!(alpha > 0 && alpha < N)) throw InvalidParams("hls_constant: alpha in (0, N)");
    return std::pow(M_PI, 0.5 * (N - alpha)) * std::tgamma(0.5 * alpha) /
           std::tgamma(0.5 * (N + alpha)) *
           std::pow(std::tgamma(0.5 * N) / std::tgamma(double(N)), -alpha / N);
}

namespace {

// Sobolev quotient A[u_eps] / ||u_eps||_{2*}^2 of the exact bubble.
double bubble_quotient(int N, double eps) {
    const double omega = unit_sphere_area(N);
    const double amp = std::pow(double(N) * (N - 2) * eps * eps, 0.25 * (N - 2));
    auto grad2 = [&](double r) {
        // |u'|^2 r^{N-1}, u = amp (eps^2 + r^2)^{-(N-2)/2}
        const double den = eps * eps + r * r;
        const double du = -amp * (N - 2) * r * std::pow(den, -0.5 * N);
        return du * du * std::pow(r, N - 1);
    };
    auto crit = [&](double r) {
        const double den = eps * eps + r * r;
        const double u = amp * std::pow(den, -0.5 * (N - 2));
        return std::pow(u, 2.0 * N / (N - 2.0)) * std::pow(r, N - 1);
    };
    const double A = omega * integrate_halfline(grad2, 4.0 * eps, 1e-12);
    const double L = omega * integrate_halfline(crit, 4.0 * eps, 1e-12);
    return A / std::pow(L, (N - 2.0) / N);
}

} // namespace

double sobolev_constant(int N) {
    if (N < 3) throw InvalidParams("sobolev_constant: N >= 3");
    const double s1 = bubble_quotient(N, 1.0);
    const double s2 = bubble_quotient(N, 0.5);
    if (std::abs(s1 - s2) > 1e-6 * std::abs(s1))
        throw QuadratureFailure("sobolev_constant: quotient not scale invariant");
    return 0.5 * (s1 + s2);
}

double s_h_constant(int N, double alpha) {
    const double s = sobolev_constant(N);
    const double prod = riesz_constant(N, alpha) * hls_constant(N, alpha);
    return s / std::pow(prod, (N - 2.0) / (N + alpha));
}

double gn_constant(int N, double alpha, double r,
                   std::shared_ptr<const RadialGrid> grid,
                   const GroundStateSolver& solver, double* residual_out) {
    ProblemParams probe;
    probe.N = N;
    probe.alpha = alpha;
    const Exponents e = derive_exponents(probe);
    if (!(r > e.two_alpha && r < e.two_star))
        throw InvalidParams("gn_constant: r must lie in (two_alpha, two_star)");
    auto [w, residual] = solver(N, alpha, r, std::move(grid));
    if (residual_out) *residual_out = residual;
    return r / std::pow(mass(w), r - 1.0);
}

std::string ConstantsTable::cg_key(int N, double alpha, double r) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d:%.12g:%.12g", N, alpha, r);
    return buf;
}

bool ConstantsTable::has_cg(double r) const {
    return cg.count(cg_key(N, alpha, r)) > 0;
}

double ConstantsTable::cg_for(double r) const {
    auto it = cg.find(cg_key(N, alpha, r));
    if (it == cg.end())
        throw InvalidParams("ConstantsTable: no C_G entry for r = " + std::to_string(r));
    return it->second.value;
}

ConstantsTable load_constants_cache(int N, double alpha, const std::string& path) {
    ConstantsTable table;
    table.N = N;
    table.alpha = alpha;
    table.riesz_A = riesz_constant(N, alpha);
    table.hls_C = hls_constant(N, alpha);
    table.sobolev_S = sobolev_constant(N);
    table.s_h = s_h_constant(N, alpha);
    if (path.empty()) return table;
    std::ifstream in(path);
    if (!in) return table;
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception&) {
        return table;  // unreadable cache: rebuild
    }
    for (auto& [key, val] : doc.items()) {
        ConstantEntry entry;
        entry.value = val.value("value", 0.0);
        entry.method = val.value("method", "ground_state");
        entry.residual = val.value("residual", 0.0);
        entry.grid = val.value("grid", "");
        table.cg[key] = entry;
    }
    return table;
}

void save_constants_cache(const ConstantsTable& table, const std::string& path) {
    if (path.empty()) return;
    nlohmann::json doc = nlohmann::json::object();
    {
        // merge with anything already on disk (other N/alpha pairs)
        std::ifstream in(path);
        if (in) {
            try {
                in >> doc;
            } catch (const nlohmann::json::exception&) {
                doc = nlohmann::json::object();
            }
        }
    }
    for (const auto& [key, entry] : table.cg)
        doc[key] = {{"value", entry.value},
                    {"method", entry.method},
                    {"residual", entry.residual},
                    {"grid", entry.grid}};
    std::ofstream out(path);
    out << doc.dump(2) << "\n";
}

ConstantsTable build_constants(int N, double alpha, const std::vector<double>& r_list,
                               std::shared_ptr<const RadialGrid> grid,
                               const GroundStateSolver& solver,
                               const std::string& cache_path) {
    ConstantsTable table = load_constants_cache(N, alpha, cache_path);
    char gridbuf[64];
    std::snprintf(gridbuf, sizeof gridbuf, "M=%d,r_max=%g", grid->M, grid->r_max);
    bool added = false;
    for (double r : r_list) {
        const std::string key = ConstantsTable::cg_key(N, alpha, r);
        auto it = table.cg.find(key);
        if (it != table.cg.end() && it->second.grid == gridbuf) continue;
        ConstantEntry entry;
        entry.method = "ground_state";
        entry.grid = gridbuf;
        entry.value = gn_constant(N, alpha, r, grid, solver, &entry.residual);
        table.cg[key] = entry;
        added = true;
    }
    if (added) save_constants_cache(table, cache_path);
    return table;
}

} // namespace chq
