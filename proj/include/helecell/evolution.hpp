#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "helecell/curve_geometry.hpp"
#include "helecell/velocity_models.hpp"

namespace helecell {

struct SimulationState {
    double t = 0.0;
    PolygonalCurve curve;
    std::uint64_t step_index = 0;
};

struct DiagnosticsRecord {
    double t = 0.0;
    double perimeter = 0.0;
    double area = 0.0;
    double volume = 0.0;  // area * h(t)
    double max_edge_dev = 0.0;
    double constraint_residual = 0.0;
    std::size_t samples_inside = 0;  // zero outside magnetic runs
};

struct FourierMode {
    enum class Kind { cos, sin };
    Kind kind = Kind::cos;
    int frequency = 0;  // multiples of 2 pi u
    double amplitude = 0.0;
};

/// r(u) = R0 + sum amplitude * cos|sin(2 pi frequency u), sampled at u_i = i/N.
struct InitialCurveSpec {
    double r0 = 1.0;
    std::vector<FourierMode> modes;
    std::size_t n = 0;
};

/// r = R0 + 0.02 (cos 6 pi u + sin 14 pi u + cos 30 pi u + sin 50 pi u)
InitialCurveSpec perturbed_circle_spec(std::size_t n, double r0 = 1.0);
/// r = R0 + 0.05 (cos 4 pi u - cos 10 pi u + cos 22 pi u - sin 6 pi u + sin 10 pi u)
InitialCurveSpec labyrinth_seed_spec(std::size_t n, double r0 = 1.0);

/// Throws SpecError if r(u_i) <= 0 at some vertex.
PolygonalCurve build_initial_curve(const InitialCurveSpec& spec);

/// Right-hand side of the vertex ODE dX_i/dt = V_i N_i + W_i T_i, with the
/// intermediate quantities kept for diagnostics.
struct VelocityField {
    GeometryCache geometry;
    std::vector<double> edge_velocity;
    std::vector<double> normal;      // V_i
    std::vector<double> tangential;  // W_i
    double perimeter_rate = 0.0;
    double constraint_residual = 0.0;
    std::size_t samples_inside = 0;

    std::vector<Vec2> vertex_velocity() const;
};

/// geometry -> (magnetic: potential) -> boundary data -> MFS solve -> edge and
/// vertex normal velocities -> tangential redistribution. The Monte Carlo
/// seed is a function of (params.seed, state.step_index) only.
/// Throws PipelineError naming the failed stage.
VelocityField velocity_field(const SimulationState& state, const ModelParams& params, const GapLaw& gap);

/// Called once per velocity evaluation; stage is 0..3 inside rk4_step.
using StageObserver = std::function<void(const SimulationState&, const VelocityField&, int stage)>;

/// Classical RK4 over all vertex coordinates; the step index advances by one.
/// Throws PipelineError and leaves the input untouched.
SimulationState rk4_step(const SimulationState& state, const ModelParams& params, const GapLaw& gap,
                         const StageObserver& observer = {});

DiagnosticsRecord make_record(const SimulationState& state, const GapLaw& gap, const VelocityField& field);

struct RunSpec {
    ModelParams params;
    GapLaw gap;
    InitialCurveSpec initial;
    /// Snapshot cadence; non-positive means only the initial and final state.
    double snapshot_interval = 0.0;
};

struct RunResult {
    std::vector<SimulationState> snapshots;
    std::vector<DiagnosticsRecord> diagnostics;
    bool completed = true;
    std::string abort_reason;
    std::vector<std::string> warnings;
};

struct RunHooks {
    std::function<void(const SimulationState&, const DiagnosticsRecord&)> on_snapshot;
    StageObserver on_stage;
};

/// Integrates from t = 0 to t_end. Each snapshot interval is split into equal
/// steps no longer than params.dt so snapshots land on their nominal times.
/// Pipeline failures end the run early; everything recorded so far is kept.
RunResult run(const RunSpec& spec, const RunHooks& hooks = {});

}  // namespace helecell
