#include "helecell/mfs_laplace.hpp"

#include <cmath>
#include <numbers>

#include "helecell/errors.hpp"

namespace helecell {

namespace {

constexpr double kInvTwoPi = 0.5 * std::numbers::inv_pi;
constexpr double kInvFourPi = 0.25 * std::numbers::inv_pi;

// E(x - y) - E(x - z) from squared distances, with a single logarithm.
inline double basis_from_sq(double ds2, double dz2) { return kInvFourPi * std::log(ds2 / dz2); }

inline Vec2 fundamental_gradient_unchecked(const Vec2& d) { return (kInvTwoPi / norm2(d)) * d; }

}  // namespace

double fundamental_solution(const Vec2& x) { return kInvTwoPi * std::log(norm(x)); }

Vec2 fundamental_gradient(const Vec2& x) { return fundamental_gradient_unchecked(x); }

double MfsSolution::constraint_residual() const {
    double sum = 0.0;
    double scale = 0.0;
    for (std::size_t j = 0; j < charges.size(); ++j) {
        const double p = charges[j] * flux_weights[j];
        sum += p;
        scale += std::abs(p);
    }
    return scale > 0.0 ? std::abs(sum) / scale : 0.0;
}

std::vector<Vec2> place_singular_points(const PolygonalCurve& curve, const GeometryCache& cache, double r_a) {
    if (!(r_a > 0.0)) {
        throw PlacementError("Amano parameter r_a must be positive", 0);
    }
    const std::size_t n = cache.size();
    std::vector<Vec2> y(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Vec2 chord = cache.midpoint[(j + 1) % n] - cache.midpoint[(j + n - 1) % n];
        if (!(norm(chord) > kDegenerateEdgeLength)) {
            throw PlacementError("neighbouring collocation points coincide", j);
        }
        // (r_a/2) |D| * (-perp(D)/|D|) = (r_a/2) * (D.y, -D.x)
        y[j] = cache.midpoint[j] + (0.5 * r_a) * Vec2{chord.y, -chord.x};
    }
    const WindingClassifier classifier(curve);
    for (std::size_t j = 0; j < n; ++j) {
        if (classifier.winding_number(y[j]) != 0) {
            throw PlacementError("singular point lies inside the domain", j);
        }
    }
    return y;
}

std::vector<Vec2> place_dummy_points(std::size_t n) {
    std::vector<Vec2> z(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(j + 1) / static_cast<double>(n);
        z[j] = {kDummyRadius * std::cos(a), kDummyRadius * std::sin(a)};
    }
    return z;
}

std::vector<double> flux_weights(const GeometryCache& cache, const MfsPointSets& points) {
    const std::size_t n = cache.size();
    const std::size_t m = points.singular.size();
    std::vector<double> h(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 x = cache.midpoint[i];
        const Vec2 w = cache.edge_length[i] * cache.edge_normal[i];
        for (std::size_t j = 0; j < m; ++j) {
            const Vec2 grad =
                fundamental_gradient_unchecked(x - points.singular[j]) - fundamental_gradient_unchecked(x - points.dummy[j]);
            h[j] += dot(grad, w);
        }
    }
    return h;
}

MfsSolution solve_dirichlet(const GeometryCache& cache, MfsPointSets points, std::span<const double> boundary_values) {
    const std::size_t n = cache.size();
    if (boundary_values.size() != n) {
        throw DimensionMismatchError("boundary data has " + std::to_string(boundary_values.size()) +
                                     " entries for " + std::to_string(n) + " edges");
    }
    if (points.singular.size() != n || points.dummy.size() != n) {
        throw DimensionMismatchError("need one singular and one dummy point per edge");
    }

    std::vector<double> h = flux_weights(cache, points);

    const auto rows = static_cast<Eigen::Index>(n);
    Eigen::ArrayXd mx(rows), my(rows);
    for (std::size_t i = 0; i < n; ++i) {
        mx[static_cast<Eigen::Index>(i)] = cache.midpoint[i].x;
        my[static_cast<Eigen::Index>(i)] = cache.midpoint[i].y;
    }
    Eigen::MatrixXd a(rows + 1, rows + 1);
    a.col(0).head(rows).setOnes();
    a(rows, 0) = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const Vec2 y = points.singular[j];
        const Vec2 z = points.dummy[j];
        const Eigen::ArrayXd ds2 = (mx - y.x).square() + (my - y.y).square();
        const Eigen::ArrayXd dz2 = (mx - z.x).square() + (my - z.y).square();
        const auto c = static_cast<Eigen::Index>(j + 1);
        a.col(c).head(rows) = kInvFourPi * (ds2 / dz2).log();
        a(rows, c) = h[j];
    }
    std::vector<double> rhs(boundary_values.begin(), boundary_values.end());
    rhs.push_back(0.0);

    const std::vector<double> q = solve(lu_factor(DenseMatrix(std::move(a))), rhs);

    MfsSolution sol;
    sol.q0 = q[0];
    sol.charges.assign(q.begin() + 1, q.end());
    sol.points = std::move(points);
    sol.flux_weights = std::move(h);
    return sol;
}

double evaluate_potential(const MfsSolution& sol, const Vec2& x) {
    double p = sol.q0;
    for (std::size_t j = 0; j < sol.charges.size(); ++j) {
        const double ds = norm2(x - sol.points.singular[j]);
        const double dz = norm2(x - sol.points.dummy[j]);
        if (ds < kSingularityDistance * kSingularityDistance) {
            throw EvaluationAtSingularityError("potential evaluated at a singular point", j);
        }
        if (dz < kSingularityDistance * kSingularityDistance) {
            throw EvaluationAtSingularityError("potential evaluated at a dummy point", j);
        }
        p += sol.charges[j] * basis_from_sq(ds, dz);
    }
    return p;
}

Vec2 evaluate_gradient(const MfsSolution& sol, const Vec2& x) {
    Vec2 g;
    for (std::size_t j = 0; j < sol.charges.size(); ++j) {
        const Vec2 ds = x - sol.points.singular[j];
        const Vec2 dz = x - sol.points.dummy[j];
        if (norm2(ds) < kSingularityDistance * kSingularityDistance) {
            throw EvaluationAtSingularityError("gradient evaluated at a singular point", j);
        }
        if (norm2(dz) < kSingularityDistance * kSingularityDistance) {
            throw EvaluationAtSingularityError("gradient evaluated at a dummy point", j);
        }
        g += sol.charges[j] * (fundamental_gradient_unchecked(ds) - fundamental_gradient_unchecked(dz));
    }
    return g;
}

}  // namespace helecell
