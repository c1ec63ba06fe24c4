#include "helecell/velocity_models.hpp"

#include <cmath>
#include <numbers>

#include "helecell/errors.hpp"

namespace helecell {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::constant_gap: return "constant_gap";
        case ModelKind::tdg: return "tdg";
        case ModelKind::magnetic: return "magnetic";
    }
    return "unknown";
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "constant_gap") return ModelKind::constant_gap;
    if (name == "tdg") return ModelKind::tdg;
    if (name == "magnetic") return ModelKind::magnetic;
    throw ValidationError("unknown model \"" + name + "\" (expected constant_gap, tdg or magnetic)");
}

double GapLaw::h(double t) const { return h0 * std::exp(rate * t); }
double GapLaw::hdot(double t) const { return rate * h(t); }

GapLaw default_gap_law(ModelKind kind) {
    return kind == ModelKind::constant_gap ? GapLaw::constant() : GapLaw::exponential();
}

void ModelParams::validate() const {
    if (kind == ModelKind::magnetic && !(ca > 0.0)) throw ValidationError("Ca must be > 0 for the magnetic model");
    if (!(h_r > 0.0)) throw ValidationError("h_r must be > 0");
    if (!(dt > 0.0)) throw ValidationError("dt must be > 0");
    if (samples < 1) throw ValidationError("M must be >= 1");
    if (!(omega >= 0.0)) throw ValidationError("omega must be >= 0");
    if (!(r_a > 0.0)) throw ValidationError("r_a must be > 0");
    if (!(t_end >= 0.0)) throw ValidationError("t_end must be >= 0");
    if (!std::isfinite(sigma) || !std::isfinite(bmv)) throw ValidationError("sigma and Bmv must be finite");
}

std::vector<double> tdg_boundary_data(const GeometryCache& cache, const ModelParams& params, const GapLaw& gap,
                                      double t) {
    const double h = gap.h(t);
    const double source = gap.hdot(t) / (4.0 * h * h * h);
    std::vector<double> g(cache.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        g[i] = params.sigma * cache.curvature[i] - source * norm2(cache.midpoint[i]);
    }
    return g;
}

namespace {

std::vector<double> edge_velocity(const MfsSolution& sol, const GeometryCache& cache, double mobility,
                                  double stretch) {
    std::vector<double> v(cache.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2& n = cache.edge_normal[i];
        v[i] = -mobility * dot(evaluate_gradient(sol, cache.midpoint[i]), n) - stretch * dot(cache.midpoint[i], n);
    }
    return v;
}

}  // namespace

std::vector<double> tdg_normal_velocity(const MfsSolution& sol, const GeometryCache& cache, const GapLaw& gap,
                                        double t) {
    const double h = gap.h(t);
    return edge_velocity(sol, cache, h * h, gap.hdot(t) / (2.0 * h));
}

std::vector<double> magnetic_boundary_data(const GeometryCache& cache, const ModelParams& params, const GapLaw& gap,
                                           double t, std::span<const double> phi) {
    if (phi.size() != cache.size()) {
        throw DimensionMismatchError("one magnetostatic potential value per edge is required");
    }
    const double hs = gap.h(t);
    const double magnetic = params.bmv * std::cbrt(std::numbers::pi * std::numbers::pi) / hs;
    const double source = std::numbers::pi * params.ca / (4.0 * params.h_r * params.h_r * hs * hs);
    std::vector<double> g(cache.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        g[i] = cache.curvature[i] - magnetic * phi[i] - source * norm2(cache.midpoint[i]);
    }
    return g;
}

std::vector<double> magnetic_normal_velocity(const MfsSolution& sol, const GeometryCache& cache,
                                             const ModelParams& params, const GapLaw& gap, double t) {
    const double hs = gap.h(t);
    const double mobility = params.h_r * params.h_r * hs * hs / (std::numbers::pi * params.ca);
    return edge_velocity(sol, cache, mobility, gap.hdot(t) / (2.0 * hs));
}

double magnetic_kernel_gap(const ModelParams& params, const GapLaw& gap, double t) { return params.h_r * gap.h(t); }

std::vector<double> vertex_normal_velocity(std::span<const double> edge_velocity, const GeometryCache& cache) {
    const std::size_t n = cache.size();
    if (edge_velocity.size() != n) {
        throw DimensionMismatchError("one edge velocity per edge is required");
    }
    std::vector<double> vv(n);
    for (std::size_t i = 0; i < n; ++i) {
        vv[i] = (edge_velocity[i] + edge_velocity[(i + 1) % n]) / (2.0 * cache.half_cos[i]);
    }
    return vv;
}

}  // namespace helecell
