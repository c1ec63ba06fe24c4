#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "helecell/curve_geometry.hpp"
#include "helecell/mfs_laplace.hpp"

namespace helecell {

enum class ModelKind { constant_gap, tdg, magnetic };

std::string to_string(ModelKind kind);
/// Throws ValidationError for an unknown name.
ModelKind model_kind_from_string(const std::string& name);

/// Plate separation h(t) = h0 exp(rate t).
struct GapLaw {
    double h0 = 1.0;
    double rate = 1.0;

    double h(double t) const;
    double hdot(double t) const;

    static GapLaw exponential() { return {1.0, 1.0}; }
    static GapLaw constant(double h0 = 1.0) { return {h0, 0.0}; }
};

/// Lifting plates (exp t) for tdg and magnetic runs, fixed plates otherwise.
GapLaw default_gap_law(ModelKind kind);

/// Dimensionless physical groups and numerical knobs of a run.
struct ModelParams {
    ModelKind kind = ModelKind::tdg;
    double sigma = 2.0e-4;  // surface tension (tdg, constant_gap)
    double bmv = 0.0;       // (R0/h0)^{1/3} Bm
    double ca = 0.0;        // capillary number, magnetic only
    double h_r = 0.25;      // h0 / R0
    double omega = 100.0;   // redistribution rate
    double r_a = 1.0;       // Amano parameter
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    double dt = 1e-5;
    double t_end = 0.0;

    /// Throws ValidationError naming the violated constraint.
    void validate() const;
};

/// g_i = sigma kappa_i - hdot/(4 h^3) |X*_i|^2
std::vector<double> tdg_boundary_data(const GeometryCache& cache, const ModelParams& params, const GapLaw& gap,
                                      double t);

/// v_i = -h^2 grad P(X*_i).n_i - hdot/(2h) X*_i.n_i
std::vector<double> tdg_normal_velocity(const MfsSolution& sol, const GeometryCache& cache, const GapLaw& gap,
                                        double t);

/// g_i = kappa_i - Bmv pi^{2/3}/h_* phi_i - (1/h_r^2) pi Ca |X*_i|^2 / (4 h_*^2)
std::vector<double> magnetic_boundary_data(const GeometryCache& cache, const ModelParams& params, const GapLaw& gap,
                                           double t, std::span<const double> phi);

/// v_i = -(h_r^2 h_*^2 / (pi Ca)) grad P(X*_i).n_i - hdot_*/(2 h_*) X*_i.n_i
std::vector<double> magnetic_normal_velocity(const MfsSolution& sol, const GeometryCache& cache,
                                             const ModelParams& params, const GapLaw& gap, double t);

/// Gap seen by the magnetostatic kernel in units of R0: h_r h_*(t).
double magnetic_kernel_gap(const ModelParams& params, const GapLaw& gap, double t);

/// V_i = (v_i + v_{i+1}) / (2 cos_i)
std::vector<double> vertex_normal_velocity(std::span<const double> edge_velocity, const GeometryCache& cache);

}  // namespace helecell
