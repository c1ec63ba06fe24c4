#include "helecell/redistribution_udm.hpp"

#include "helecell/errors.hpp"

namespace helecell {

namespace {

void check_sizes(std::size_t got, const GeometryCache& cache) {
    if (got != cache.size()) {
        throw DimensionMismatchError("per-vertex array size " + std::to_string(got) + " does not match curve size " +
                                     std::to_string(cache.size()));
    }
}

}  // namespace

double perimeter_rate(std::span<const double> vertex_velocity, const GeometryCache& cache) {
    check_sizes(vertex_velocity.size(), cache);
    double s = 0.0;
    for (std::size_t i = 0; i < vertex_velocity.size(); ++i) {
        s += vertex_velocity[i] * cache.half_sin[i];
    }
    return 2.0 * s;
}

std::vector<double> udm_forcing(std::span<const double> vertex_velocity, const GeometryCache& cache,
                                const UdmState& udm) {
    check_sizes(vertex_velocity.size(), cache);
    const std::size_t n = cache.size();
    const double mean_length = cache.perimeter / static_cast<double>(n);
    const double shared = udm.perimeter_rate / static_cast<double>(n);
    std::vector<double> psi(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        psi[i] = -vertex_velocity[i] * cache.half_sin[i] - vertex_velocity[i - 1] * cache.half_sin[i - 1] + shared +
                 (mean_length - cache.edge_length[i]) * udm.omega;
    }
    return psi;
}

std::vector<double> tangential_velocities(std::span<const double> vertex_velocity, const GeometryCache& cache,
                                          const UdmState& udm) {
    const std::vector<double> psi = udm_forcing(vertex_velocity, cache, udm);
    const std::size_t n = cache.size();

    std::vector<double> prefix(n, 0.0);
    double running = 0.0;
    double weighted = 0.0;
    double inv_cos_sum = 1.0 / cache.half_cos[0];
    for (std::size_t i = 1; i < n; ++i) {
        running += psi[i];
        prefix[i] = running;
        weighted += running / cache.half_cos[i];
        inv_cos_sum += 1.0 / cache.half_cos[i];
    }

    std::vector<double> w(n);
    w[0] = -weighted / (cache.half_cos[0] * inv_cos_sum);
    const double anchor = w[0] * cache.half_cos[0];
    for (std::size_t i = 1; i < n; ++i) {
        w[i] = (prefix[i] + anchor) / cache.half_cos[i];
    }
    return w;
}

double area_rate_error(std::span<const double> edge_velocity, std::span<const double> tangential,
                       const GeometryCache& cache) {
    check_sizes(edge_velocity.size(), cache);
    check_sizes(tangential.size(), cache);
    const std::size_t n = cache.size();
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t next = (i + 1) % n;
        err += (tangential[i] * cache.half_sin[i] - 0.5 * (edge_velocity[next] - edge_velocity[i])) * 0.5 *
               (cache.edge_length[next] - cache.edge_length[i]);
    }
    return err;
}

}  // namespace helecell
