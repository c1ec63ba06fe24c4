#include "helecell/curve_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "helecell/errors.hpp"

namespace helecell {

namespace {

std::size_t wrap(long i, std::size_t n) {
    const long m = static_cast<long>(n);
    return static_cast<std::size_t>(((i % m) + m) % m);
}

}  // namespace

PolygonalCurve::PolygonalCurve(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    if (n < 3) {
        throw CurveError("polygonal curve needs at least 3 vertices, got " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(vertices_[i].x) || !std::isfinite(vertices_[i].y)) {
            throw CurveError("non-finite vertex coordinate at index " + std::to_string(i));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (norm(vertices_[i] - vertices_[wrap(static_cast<long>(i) - 1, n)]) < kDegenerateEdgeLength) {
            throw DegenerateEdgeError("consecutive vertices coincide", i);
        }
    }
    if (!(signed_area(vertices_) > 0.0)) {
        throw CurveError("vertices must be ordered anti-clockwise (signed area > 0)");
    }
}

const Vec2& PolygonalCurve::at_wrapped(long i) const { return vertices_[wrap(i, vertices_.size())]; }

double signed_area(std::span<const Vec2> vertices) {
    double twice = 0.0;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        twice += cross(vertices[(i + n - 1) % n], vertices[i]);
    }
    return 0.5 * twice;
}

double area(const PolygonalCurve& curve) { return signed_area(curve.vertices()); }

double perimeter(const PolygonalCurve& curve) {
    double sum = 0.0;
    const std::size_t n = curve.size();
    for (std::size_t i = 0; i < n; ++i) {
        sum += norm(curve[i] - curve[(i + n - 1) % n]);
    }
    return sum;
}

Vec2 barycenter(const PolygonalCurve& curve) {
    // Triangle fan about the first vertex keeps cancellation small for
    // curves far from the origin.
    const Vec2 o = curve[0];
    const std::size_t n = curve.size();
    double twice_area = 0.0;
    Vec2 moment;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const Vec2 a = curve[i] - o;
        const Vec2 b = curve[i + 1] - o;
        const double w = cross(a, b);
        twice_area += w;
        moment += w * (a + b);
    }
    return o + moment / (3.0 * twice_area);
}

GeometryCache build_geometry(const PolygonalCurve& curve) {
    const std::size_t n = curve.size();
    GeometryCache g;
    g.edge_length.resize(n);
    g.edge_tangent.resize(n);
    g.edge_normal.resize(n);
    g.midpoint.resize(n);
    g.curvature.resize(n);
    g.vertex_tangent.resize(n);
    g.vertex_normal.resize(n);
    g.exterior_angle.resize(n);
    g.half_cos.resize(n);
    g.half_sin.resize(n);
    g.half_tan.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& prev = curve[(i + n - 1) % n];
        const Vec2& cur = curve[i];
        const Vec2 d = cur - prev;
        const double r = norm(d);
        if (!(r >= kDegenerateEdgeLength)) {
            throw DegenerateEdgeError("edge collapsed below " + std::to_string(kDegenerateEdgeLength), i);
        }
        g.edge_length[i] = r;
        g.edge_tangent[i] = d / r;
        g.edge_normal[i] = -perp(g.edge_tangent[i]);
        g.midpoint[i] = 0.5 * (prev + cur);
        g.perimeter += r;
    }

    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& t0 = g.edge_tangent[i];
        const Vec2& t1 = g.edge_tangent[(i + 1) % n];
        const double phi = std::atan2(cross(t0, t1), dot(t0, t1));
        const double c = std::cos(0.5 * phi);
        if (!(std::abs(c) >= kCuspCosine)) {
            throw CuspError("adjacent edges fold back onto each other", i);
        }
        g.exterior_angle[i] = phi;
        g.half_cos[i] = c;
        g.half_sin[i] = std::sin(0.5 * phi);
        g.half_tan[i] = g.half_sin[i] / c;
        g.vertex_tangent[i] = (t0 + t1) / (2.0 * c);
        g.vertex_normal[i] = -perp(g.vertex_tangent[i]);
    }

    for (std::size_t i = 0; i < n; ++i) {
        g.curvature[i] = (g.half_tan[i] + g.half_tan[(i + n - 1) % n]) / g.edge_length[i];
    }

    g.area = area(curve);
    g.barycenter = barycenter(curve);
    return g;
}

bool point_in_polygon(const PolygonalCurve& curve, const Vec2& p) {
    const std::size_t n = curve.size();
    double total = 0.0;
    Vec2 a = curve[n - 1] - p;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 b = curve[i] - p;
        total += std::atan2(cross(a, b), dot(a, b));
        a = b;
    }
    return std::abs(total - 2.0 * std::numbers::pi) < std::numbers::pi;
}

namespace {

inline int crossing(const Vec2& a, const Vec2& b, const Vec2& p) {
    if (a.y <= p.y) {
        if (b.y > p.y && cross(b - a, p - a) > 0.0) {
            return 1;
        }
    } else if (b.y <= p.y && cross(b - a, p - a) < 0.0) {
        return -1;
    }
    return 0;
}

}  // namespace

int winding_number(const PolygonalCurve& curve, const Vec2& p) {
    const auto v = curve.vertices();
    int wn = 0;
    Vec2 a = v.back();
    for (const Vec2& b : v) {
        wn += crossing(a, b, p);
        a = b;
    }
    return wn;
}

WindingClassifier::WindingClassifier(const PolygonalCurve& curve)
    : vertices_(curve.vertices().begin(), curve.vertices().end()) {
    const std::size_t n = vertices_.size();
    y_min_ = y_max_ = vertices_[0].y;
    for (const Vec2& v : vertices_) {
        y_min_ = std::min(y_min_, v.y);
        y_max_ = std::max(y_max_, v.y);
    }
    bins_ = n;
    inv_bin_height_ = static_cast<double>(bins_) / (y_max_ - y_min_);

    std::vector<std::size_t> counts(bins_ + 1, 0);
    auto for_each_bin = [&](std::size_t i, auto&& f) {
        const Vec2& a = vertices_[(i + n - 1) % n];
        const Vec2& b = vertices_[i];
        const std::size_t lo = bin_of(std::min(a.y, b.y));
        const std::size_t hi = bin_of(std::max(a.y, b.y));
        for (std::size_t k = lo; k <= hi; ++k) {
            f(k);
        }
    };
    for (std::size_t i = 0; i < n; ++i) {
        for_each_bin(i, [&](std::size_t k) { ++counts[k + 1]; });
    }
    offsets_.assign(bins_ + 1, 0);
    for (std::size_t k = 0; k < bins_; ++k) {
        offsets_[k + 1] = offsets_[k] + counts[k + 1];
    }
    edges_.resize(offsets_[bins_]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < n; ++i) {
        for_each_bin(i, [&](std::size_t k) { edges_[fill[k]++] = i; });
    }
}

std::size_t WindingClassifier::bin_of(double y) const {
    const double f = (y - y_min_) * inv_bin_height_;
    if (!(f > 0.0)) {
        return 0;
    }
    return std::min(static_cast<std::size_t>(f), bins_ - 1);
}

int WindingClassifier::winding_number(const Vec2& p) const {
    if (!(p.y >= y_min_ && p.y < y_max_)) {
        return 0;
    }
    const std::size_t n = vertices_.size();
    const std::size_t k = bin_of(p.y);
    int wn = 0;
    for (std::size_t e = offsets_[k]; e < offsets_[k + 1]; ++e) {
        const std::size_t i = edges_[e];
        wn += crossing(vertices_[(i + n - 1) % n], vertices_[i], p);
    }
    return wn;
}

double max_edge_deviation(const GeometryCache& cache) {
    const double mean = cache.perimeter / static_cast<double>(cache.size());
    double worst = 0.0;
    for (double r : cache.edge_length) {
        worst = std::max(worst, std::abs(r - mean));
    }
    return worst / mean;
}

std::size_t curvature_sign_changes(const GeometryCache& cache) {
    std::vector<int> signs;
    signs.reserve(cache.size());
    for (double k : cache.curvature) {
        if (k > 0.0) {
            signs.push_back(1);
        } else if (k < 0.0) {
            signs.push_back(-1);
        }
    }
    std::size_t changes = 0;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] != signs[(i + 1) % signs.size()]) {
            ++changes;
        }
    }
    return changes;
}

}  // namespace helecell
