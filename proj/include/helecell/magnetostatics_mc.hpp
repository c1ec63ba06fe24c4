#pragma once

#include <cstdint>
#include <vector>

#include "helecell/curve_geometry.hpp"

namespace helecell {

/// One Monte Carlo sample set over the disk about the barycenter that covers
/// every vertex. Interior samples are also kept as coordinate arrays for the
/// potential sums.
struct McSampling {
    Vec2 center;
    double radius = 0.0;
    std::vector<Vec2> samples;
    std::vector<char> inside;
    std::vector<double> interior_x;
    std::vector<double> interior_y;
    double area_element = 0.0;

    std::size_t inside_count() const noexcept { return interior_x.size(); }

    friend bool operator==(const McSampling&, const McSampling&) = default;
};

/// Seed for one time step, a fixed mix of the run seed and the step index.
std::uint64_t step_seed(std::uint64_t master_seed, std::uint64_t step_index);

/// M area-uniform samples in the covering disk (r = r_max sqrt(u)), classified
/// by winding number against the curve. Deterministic in the seed. Throws
/// EmptyInteriorError if no sample lands inside.
McSampling draw_samples(const PolygonalCurve& curve, const GeometryCache& cache, std::size_t samples,
                        std::uint64_t seed);

struct McEstimate {
    double value = 0.0;
    double standard_error = 0.0;
};

/// phi(x) = -sum_{p_k inside} (1/|x-p_k| - 1/sqrt(|x-p_k|^2 + h^2)) dS.
/// Samples closer than 1e-12 to x are skipped.
double potential_at(const Vec2& x, const McSampling& sampling, double gap);

/// Same sum, with the standard error from the sample spread of the kernel.
McEstimate potential_with_error(const Vec2& x, const McSampling& sampling, double gap);

/// phi at every collocation midpoint.
std::vector<double> potential_on_boundary(const GeometryCache& cache, const McSampling& sampling, double gap);

}  // namespace helecell
