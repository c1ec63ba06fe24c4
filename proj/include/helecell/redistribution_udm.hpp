#pragma once

#include <span>
#include <vector>

#include "helecell/curve_geometry.hpp"

namespace helecell {

/// Relaxation state of the asymptotic uniform distribution method. Edge
/// lengths approach L/N like exp(-omega t).
struct UdmState {
    double omega = 100.0;
    double perimeter_rate = 0.0;
};

/// dL/dt = 2 sum_i V_i sin_i
double perimeter_rate(std::span<const double> vertex_velocity, const GeometryCache& cache);

/// Tangential velocities W_i solving
///   W_i cos_i - W_{i-1} cos_{i-1} = psi_i,  i = 1..N-1,   sum_i W_i = 0,
///   psi_i = -V_i sin_i - V_{i-1} sin_{i-1} + dL/dt / N + (L/N - r_i) omega,
/// in closed form through the prefix sums of psi.
std::vector<double> tangential_velocities(std::span<const double> vertex_velocity, const GeometryCache& cache,
                                          const UdmState& udm);

/// The right-hand sides psi_i (index 0 is unused and left at zero).
std::vector<double> udm_forcing(std::span<const double> vertex_velocity, const GeometryCache& cache,
                                const UdmState& udm);

/// err_A = sum_i (W_i sin_i - (v_{i+1} - v_i)/2) (r_{i+1} - r_i)/2, the gap
/// between the area rate and sum_i v_i r_i.
double area_rate_error(std::span<const double> edge_velocity, std::span<const double> tangential,
                       const GeometryCache& cache);

}  // namespace helecell
