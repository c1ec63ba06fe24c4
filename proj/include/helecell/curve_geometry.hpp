#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "helecell/vec2.hpp"

namespace helecell {

/// Closed polygonal interface with anti-clockwise vertices X_0..X_{N-1}.
///
/// Indexing is periodic. Edge i joins X_{i-1} and X_i, so vertex i sits
/// between edge i and edge i+1.
class PolygonalCurve {
public:
    /// Throws CurveError for fewer than three vertices, non-finite coordinates
    /// or non-positive signed area, DegenerateEdgeError for a collapsed edge.
    explicit PolygonalCurve(std::vector<Vec2> vertices);

    std::size_t size() const noexcept { return vertices_.size(); }
    std::span<const Vec2> vertices() const noexcept { return vertices_; }
    const Vec2& operator[](std::size_t i) const { return vertices_[i]; }
    /// Periodic access, valid for any integer offset.
    const Vec2& at_wrapped(long i) const;

    friend bool operator==(const PolygonalCurve&, const PolygonalCurve&) = default;

private:
    std::vector<Vec2> vertices_;
};

/// Everything derived from the vertex positions in one pass.
struct GeometryCache {
    // per edge
    std::vector<double> edge_length;
    std::vector<Vec2> edge_tangent;
    std::vector<Vec2> edge_normal;
    std::vector<Vec2> midpoint;
    std::vector<double> curvature;
    // per vertex
    std::vector<Vec2> vertex_tangent;
    std::vector<Vec2> vertex_normal;
    std::vector<double> exterior_angle;
    std::vector<double> half_cos;
    std::vector<double> half_sin;
    std::vector<double> half_tan;

    double perimeter = 0.0;
    double area = 0.0;
    Vec2 barycenter;

    std::size_t size() const noexcept { return edge_length.size(); }
};

inline constexpr double kDegenerateEdgeLength = 1e-14;
inline constexpr double kCuspCosine = 1e-8;

/// Frames, half-angle quantities and the discrete curvature
/// kappa_i = (tan_i + tan_{i-1}) / r_i.
/// Throws DegenerateEdgeError or CuspError naming the offending index.
GeometryCache build_geometry(const PolygonalCurve& curve);

double signed_area(std::span<const Vec2> vertices);
double area(const PolygonalCurve& curve);
double perimeter(const PolygonalCurve& curve);
/// Area centroid.
Vec2 barycenter(const PolygonalCurve& curve);

/// Winding-number test from the signed angles subtended by each edge. The
/// caller keeps p away from the curve itself.
bool point_in_polygon(const PolygonalCurve& curve, const Vec2& p);

/// Integer winding number of the curve about p from signed edge crossings of
/// the ray towards +x. Agrees with point_in_polygon away from the curve and
/// costs no transcendental calls, so bulk classification uses it.
int winding_number(const PolygonalCurve& curve, const Vec2& p);

/// Winding numbers for many query points against one curve. Edges are
/// bucketed by their y-range so a query only visits the edges its horizontal
/// ray can cross. Results equal winding_number().
class WindingClassifier {
public:
    explicit WindingClassifier(const PolygonalCurve& curve);

    int winding_number(const Vec2& p) const;

private:
    std::size_t bin_of(double y) const;

    std::vector<Vec2> vertices_;
    double y_min_ = 0.0;
    double y_max_ = 0.0;
    double inv_bin_height_ = 0.0;
    std::size_t bins_ = 0;
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> edges_;  // index of the end vertex of each edge
};

/// max_i |r_i - L/N| / (L/N)
double max_edge_deviation(const GeometryCache& cache);

/// Number of cyclic sign flips of the per-edge curvature; zero-curvature edges
/// are skipped. Counts finger flanks on a fingered interface.
std::size_t curvature_sign_changes(const GeometryCache& cache);

}  // namespace helecell
