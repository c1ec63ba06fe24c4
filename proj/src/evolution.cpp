#include "helecell/evolution.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "helecell/errors.hpp"
#include "helecell/magnetostatics_mc.hpp"
#include "helecell/mfs_laplace.hpp"
#include "helecell/redistribution_udm.hpp"

namespace helecell {

InitialCurveSpec perturbed_circle_spec(std::size_t n, double r0) {
    using K = FourierMode::Kind;
    return {r0, {{K::cos, 3, 0.02}, {K::sin, 7, 0.02}, {K::cos, 15, 0.02}, {K::sin, 25, 0.02}}, n};
}

InitialCurveSpec labyrinth_seed_spec(std::size_t n, double r0) {
    using K = FourierMode::Kind;
    return {r0, {{K::cos, 2, 0.05}, {K::cos, 5, -0.05}, {K::cos, 11, 0.05}, {K::sin, 3, -0.05}, {K::sin, 5, 0.05}}, n};
}

PolygonalCurve build_initial_curve(const InitialCurveSpec& spec) {
    std::vector<Vec2> vertices(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        // u_i = i/N for i = 1..N; index 0 holds u = 1/N.
        const double u = static_cast<double>(i + 1) / static_cast<double>(spec.n);
        double r = spec.r0;
        for (const FourierMode& m : spec.modes) {
            const double arg = 2.0 * std::numbers::pi * m.frequency * u;
            r += m.amplitude * (m.kind == FourierMode::Kind::cos ? std::cos(arg) : std::sin(arg));
        }
        if (!(r > 0.0)) {
            throw SpecError("initial radius r(u) is not positive", i);
        }
        const double theta = 2.0 * std::numbers::pi * u;
        vertices[i] = {r * std::cos(theta), r * std::sin(theta)};
    }
    return PolygonalCurve(std::move(vertices));
}

std::vector<Vec2> VelocityField::vertex_velocity() const {
    std::vector<Vec2> xdot(normal.size());
    for (std::size_t i = 0; i < xdot.size(); ++i) {
        xdot[i] = normal[i] * geometry.vertex_normal[i] + tangential[i] * geometry.vertex_tangent[i];
    }
    return xdot;
}

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const PipelineError&) {
        throw;
    } catch (const Error& e) {
        throw PipelineError(name, e.what());
    }
}

}  // namespace

VelocityField velocity_field(const SimulationState& state, const ModelParams& params, const GapLaw& gap) {
    const double t = state.t;
    VelocityField f;
    f.geometry = stage("geometry", [&] { return build_geometry(state.curve); });
    const GeometryCache& g = f.geometry;

    std::vector<double> data;
    if (params.kind == ModelKind::magnetic) {
        const McSampling sampling = stage("monte-carlo", [&] {
            return draw_samples(state.curve, g, params.samples, step_seed(params.seed, state.step_index));
        });
        f.samples_inside = sampling.inside_count();
        const std::vector<double> phi = potential_on_boundary(g, sampling, magnetic_kernel_gap(params, gap, t));
        data = magnetic_boundary_data(g, params, gap, t, phi);
    } else {
        data = tdg_boundary_data(g, params, gap, t);
    }

    MfsPointSets points;
    points.singular = stage("placement", [&] { return place_singular_points(state.curve, g, params.r_a); });
    points.dummy = place_dummy_points(g.size());
    const MfsSolution sol = stage("mfs-solve", [&] { return solve_dirichlet(g, std::move(points), data); });
    f.constraint_residual = sol.constraint_residual();

    f.edge_velocity = stage("normal-velocity", [&] {
        return params.kind == ModelKind::magnetic ? magnetic_normal_velocity(sol, g, params, gap, t)
                                                  : tdg_normal_velocity(sol, g, gap, t);
    });
    f.normal = vertex_normal_velocity(f.edge_velocity, g);
    f.perimeter_rate = perimeter_rate(f.normal, g);
    f.tangential = tangential_velocities(f.normal, g, UdmState{params.omega, f.perimeter_rate});

    for (std::size_t i = 0; i < f.normal.size(); ++i) {
        if (!std::isfinite(f.normal[i]) || !std::isfinite(f.tangential[i])) {
            throw PipelineError("velocity", "non-finite vertex velocity at index " + std::to_string(i));
        }
    }
    return f;
}

SimulationState rk4_step(const SimulationState& state, const ModelParams& params, const GapLaw& gap,
                         const StageObserver& observer) {
    const double dt = params.dt;
    const auto x0 = state.curve.vertices();
    const std::size_t n = x0.size();

    auto evaluate = [&](const SimulationState& s, int index) {
        VelocityField f = velocity_field(s, params, gap);
        if (observer) {
            observer(s, f, index);
        }
        return f.vertex_velocity();
    };
    auto staged = [&](const std::vector<Vec2>& k, double scale, double t) {
        std::vector<Vec2> x(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = x0[i] + (scale * dt) * k[i];
        }
        return SimulationState{t, stage("stage-curve", [&] { return PolygonalCurve(std::move(x)); }),
                               state.step_index};
    };

    const std::vector<Vec2> k1 = evaluate(state, 0);
    const std::vector<Vec2> k2 = evaluate(staged(k1, 0.5, state.t + 0.5 * dt), 1);
    const std::vector<Vec2> k3 = evaluate(staged(k2, 0.5, state.t + 0.5 * dt), 2);
    const std::vector<Vec2> k4 = evaluate(staged(k3, 1.0, state.t + dt), 3);

    std::vector<Vec2> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = x0[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return {state.t + dt, stage("step-curve", [&] { return PolygonalCurve(std::move(x)); }), state.step_index + 1};
}

DiagnosticsRecord make_record(const SimulationState& state, const GapLaw& gap, const VelocityField& field) {
    const GeometryCache& g = field.geometry;
    return {state.t,
            g.perimeter,
            g.area,
            g.area * gap.h(state.t),
            max_edge_deviation(g),
            field.constraint_residual,
            field.samples_inside};
}

RunResult run(const RunSpec& spec, const RunHooks& hooks) {
    spec.params.validate();
    RunResult result;
    const ModelParams& params = spec.params;
    const double t_end = params.t_end;

    SimulationState state{0.0, build_initial_curve(spec.initial), 0};

    auto record = [&](const SimulationState& s) {
        const VelocityField f = velocity_field(s, params, spec.gap);
        const DiagnosticsRecord r = make_record(s, spec.gap, f);
        result.snapshots.push_back(s);
        result.diagnostics.push_back(r);
        if (hooks.on_snapshot) {
            hooks.on_snapshot(s, r);
        }
    };

    std::vector<double> marks;
    if (spec.snapshot_interval > 0.0) {
        for (long k = 1;; ++k) {
            const double m = static_cast<double>(k) * spec.snapshot_interval;
            if (m >= t_end * (1.0 - 1e-12)) {
                break;
            }
            marks.push_back(m);
        }
    }
    if (t_end > 0.0) {
        marks.push_back(t_end);
    }

    std::size_t shrink_warnings = 0;
    try {
        record(state);
        ModelParams stepping = params;
        for (double mark : marks) {
            const double start = state.t;
            const double span = mark - start;
            const auto steps = static_cast<std::uint64_t>(std::max(1.0, std::ceil(span / params.dt - 1e-9)));
            stepping.dt = span / static_cast<double>(steps);
            for (std::uint64_t k = 0; k < steps; ++k) {
                const double before = params.kind == ModelKind::constant_gap ? perimeter(state.curve) : 0.0;
                state = rk4_step(state, stepping, spec.gap, hooks.on_stage);
                state.t = k + 1 == steps ? mark : start + static_cast<double>(k + 1) * stepping.dt;
                if (params.kind == ModelKind::constant_gap) {
                    const double after = perimeter(state.curve);
                    if (after > before + 1e-8 * before && shrink_warnings++ < 10) {
                        result.warnings.push_back("perimeter increased at t = " + std::to_string(state.t) + " by " +
                                                  std::to_string(after - before));
                    }
                }
            }
            record(state);
        }
    } catch (const Error& e) {
        result.completed = false;
        result.abort_reason = "t = " + std::to_string(state.t) + ", step " + std::to_string(state.step_index) + ": " +
                              e.what();
    }
    if (shrink_warnings > 10) {
        result.warnings.push_back(std::to_string(shrink_warnings - 10) + " further perimeter-increase warnings");
    }
    return result;
}

}  // namespace helecell
