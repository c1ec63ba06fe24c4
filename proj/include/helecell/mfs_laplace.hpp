#pragma once

#include <span>
#include <vector>

#include "helecell/curve_geometry.hpp"
#include "helecell/dense_linear.hpp"
#include "helecell/vec2.hpp"

namespace helecell {

/// Fundamental solution of the 2-D Laplacian, log|x| / (2 pi).
double fundamental_solution(const Vec2& x);
/// Its gradient, x / (2 pi |x|^2).
Vec2 fundamental_gradient(const Vec2& x);

/// Exterior source locations of the representation
///   P(x) = Q_0 + sum_j Q_j (E(x - y_j) - E(x - z_j)).
struct MfsPointSets {
    std::vector<Vec2> singular;
    std::vector<Vec2> dummy;
};

inline constexpr double kDummyRadius = 1000.0;
inline constexpr double kSingularityDistance = 1e-13;

struct MfsSolution {
    double q0 = 0.0;
    std::vector<double> charges;
    MfsPointSets points;
    std::vector<double> flux_weights;

    /// |sum_j Q_j H_j| / sum_j |Q_j H_j|, zero when every product vanishes.
    double constraint_residual() const;
};

/// Amano placement: y_j = X*_j + (r_a/2) |X*_{j+1} - X*_{j-1}| n^a_j, with
/// n^a_j the outward normal of the chord X*_{j-1} -> X*_{j+1}.
/// Throws PlacementError when a chord degenerates or a point is not exterior
/// to the curve.
std::vector<Vec2> place_singular_points(const PolygonalCurve& curve, const GeometryCache& cache, double r_a);

/// z_j = 1000 (cos a_j, sin a_j), a_j = 2 pi (j+1) / n for j = 0..n-1.
std::vector<Vec2> place_dummy_points(std::size_t n);

/// H_j = sum_i grad E_j(X*_i) . n_i r_i, the discrete outward flux of the
/// j-th basis function.
std::vector<double> flux_weights(const GeometryCache& cache, const MfsPointSets& points);

/// Collocation at edge midpoints plus the zero-flux row, solved as one square
/// (N+1)x(N+1) system in (Q_0, Q_1..Q_N).
MfsSolution solve_dirichlet(const GeometryCache& cache, MfsPointSets points, std::span<const double> boundary_values);

double evaluate_potential(const MfsSolution& sol, const Vec2& x);
Vec2 evaluate_gradient(const MfsSolution& sol, const Vec2& x);

}  // namespace helecell
