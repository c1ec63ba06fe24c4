#include <doctest.h>

#include <cmath>

#include "helecell/errors.hpp"
#include "helecell/evolution.hpp"
#include "helecell/redistribution_udm.hpp"
#include "test_support.hpp"

using namespace helecell;
using namespace helecell::testing;

namespace {

RunSpec circle_spec(std::size_t n, double t_end, double dt) {
    RunSpec spec;
    spec.params.kind = ModelKind::tdg;
    spec.params.dt = dt;
    spec.params.t_end = t_end;
    spec.gap = GapLaw::exponential();
    spec.initial = {1.0, {}, n};
    return spec;
}

RunSpec magnetic_spec(std::size_t n, double t_end, double bmv) {
    RunSpec spec;
    spec.params.kind = ModelKind::magnetic;
    spec.params.bmv = bmv;
    spec.params.ca = 100.0;
    spec.params.samples = 500;
    spec.params.seed = 17;
    spec.params.dt = 1e-4;
    spec.params.t_end = t_end;
    spec.gap = GapLaw::exponential();
    spec.initial = perturbed_circle_spec(n);
    spec.snapshot_interval = t_end / 2;
    return spec;
}

}  // namespace

TEST_CASE("initial curves") {
    const auto hex = build_initial_curve({1.0, {}, 6});
    const auto ref = regular_polygon(6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(hex[i].x == doctest::Approx(ref[i].x).epsilon(1e-15).scale(1.0));
        CHECK(hex[i].y == doctest::Approx(ref[i].y).epsilon(1e-15).scale(1.0));
    }
    const auto tdg = build_initial_curve(perturbed_circle_spec(300));
    CHECK(tdg[299].x == doctest::Approx(1.04).epsilon(1e-15));
    CHECK(std::abs(tdg[299].y) < 1e-14);
    const auto lab = build_initial_curve(labyrinth_seed_spec(300));
    CHECK(lab[299].x == doctest::Approx(1.05).epsilon(1e-15));
    CHECK_THROWS_AS(build_initial_curve(perturbed_circle_spec(100, 0.01)), SpecError);
}

TEST_CASE("circle velocity field is symmetric") {
    SimulationState s{0.0, regular_polygon(80), 0};
    ModelParams p;
    const auto f = velocity_field(s, p, GapLaw::exponential());
    for (std::size_t i = 0; i < 80; ++i) {
        CHECK(f.normal[i] == doctest::Approx(-0.5).epsilon(1e-8));
        CHECK(std::abs(f.tangential[i]) < 1e-8);
    }
}

TEST_CASE("fixed plates without surface tension are static") {
    SimulationState s{0.0, build_initial_curve(perturbed_circle_spec(60)), 0};
    ModelParams p;
    p.kind = ModelKind::constant_gap;
    p.sigma = 0.0;
    p.omega = 0.0;
    p.dt = 1e-3;
    const auto f = velocity_field(s, p, GapLaw::constant());
    for (std::size_t i = 0; i < 60; ++i) {
        CHECK(std::abs(f.normal[i]) < 1e-12);
        CHECK(std::abs(f.tangential[i]) < 1e-12);
    }
    const auto next = rk4_step(s, p, GapLaw::constant());
    CHECK(next.t == doctest::Approx(1e-3));
    CHECK(next.step_index == 1);
    for (std::size_t i = 0; i < 60; ++i) CHECK(norm(next.curve[i] - s.curve[i]) < 1e-14);
}

TEST_CASE("magnetic with Bmv = 0 equals tdg with matched tension") {
    SimulationState s{0.2, build_initial_curve(perturbed_circle_spec(90)), 4};
    ModelParams pm;
    pm.kind = ModelKind::magnetic;
    pm.ca = 50.0;
    ModelParams pt;
    pt.sigma = pm.h_r * pm.h_r / (kPi * pm.ca);
    const auto fm = velocity_field(s, pm, GapLaw::exponential());
    const auto ft = velocity_field(s, pt, GapLaw::exponential());
    for (std::size_t i = 0; i < 90; ++i) {
        CHECK(fm.normal[i] == doctest::Approx(ft.normal[i]).epsilon(1e-9));
        CHECK(fm.tangential[i] == doctest::Approx(ft.tangential[i]).epsilon(1e-9).scale(1.0));
    }
    CHECK(fm.samples_inside > 0);
    CHECK(ft.samples_inside == 0);
}

TEST_CASE("field diagnostics hold every stage") {
    SimulationState s{0.0, build_initial_curve(perturbed_circle_spec(100)), 0};
    ModelParams p;
    p.dt = 1e-5;
    int calls = 0;
    auto observer = [&](const SimulationState& st, const VelocityField& f, int stage) {
        CHECK(stage == calls);
        ++calls;
        const auto& g = f.geometry;
        double sum = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < f.tangential.size(); ++i) {
            sum += f.tangential[i];
            scale = std::max(scale, std::abs(f.tangential[i]));
        }
        CHECK(std::abs(sum) <= 1e-10 * std::max(scale, 1.0) * 100);
        CHECK(f.constraint_residual <= 1e-10);
        double rate = 0.0, vmax = 0.0;
        for (std::size_t i = 0; i < f.edge_velocity.size(); ++i) {
            rate += f.edge_velocity[i] * g.edge_length[i];
            vmax = std::max(vmax, std::abs(f.edge_velocity[i]));
        }
        const double expected = -g.area;
        CHECK(std::abs(rate - expected) <= 1e-8 * (std::abs(expected) + vmax * g.perimeter));
        CHECK(st.step_index == 0);
    };
    const auto next = rk4_step(s, p, GapLaw::exponential(), observer);
    CHECK(calls == 4);
    CHECK(next.t == doctest::Approx(1e-5));
}

TEST_CASE("shrinking circle") {
    auto spec = circle_spec(32, 0.1, 1.0 / (10.0 * 32 * 32));
    const auto result = run(spec);
    REQUIRE(result.completed);
    const auto& last = result.snapshots.back();
    CHECK(last.t == 0.1);
    const double r0 = mean_radius(result.snapshots.front().curve);
    CHECK(mean_radius(last.curve) == doctest::Approx(r0 * std::exp(-0.05)).epsilon(1e-9));
    const auto& d = result.diagnostics;
    CHECK(d.back().volume == doctest::Approx(d.front().volume).epsilon(1e-9));
}

TEST_CASE("zero-length run keeps the initial state") {
    auto spec = circle_spec(40, 0.0, 1e-3);
    spec.initial = perturbed_circle_spec(40);
    const auto result = run(spec);
    REQUIRE(result.completed);
    REQUIRE(result.snapshots.size() == 1);
    CHECK(result.snapshots[0].curve == build_initial_curve(spec.initial));
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].volume == doctest::Approx(area(result.snapshots[0].curve)));
}

TEST_CASE("snapshots land on their times") {
    auto spec = circle_spec(24, 0.05, 0.003);
    spec.snapshot_interval = 0.02;
    const auto result = run(spec);
    REQUIRE(result.completed);
    REQUIRE(result.snapshots.size() == 4);
    CHECK(result.snapshots[1].t == doctest::Approx(0.02).epsilon(1e-15));
    CHECK(result.snapshots[2].t == doctest::Approx(0.04).epsilon(1e-15));
    CHECK(result.snapshots[3].t == 0.05);
}

TEST_CASE("volume is preserved on the perturbed curve") {
    RunSpec spec;
    spec.params.dt = 1.0 / (10.0 * 64 * 64);
    spec.params.t_end = 0.02;
    spec.gap = GapLaw::exponential();
    spec.initial = perturbed_circle_spec(64);
    const auto result = run(spec);
    REQUIRE(result.completed);
    const double v0 = result.diagnostics.front().volume;
    CHECK(std::abs(result.diagnostics.back().volume - v0) <= 1e-6 * v0);
    CHECK(result.diagnostics.back().area < result.diagnostics.front().area);
}

TEST_CASE("magnetic runs are deterministic") {
    const auto a = run(magnetic_spec(40, 0.002, 25.0));
    const auto b = run(magnetic_spec(40, 0.002, 25.0));
    REQUIRE(a.completed);
    REQUIRE(a.snapshots.size() == b.snapshots.size());
    for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
        CHECK(a.snapshots[k].curve == b.snapshots[k].curve);
        CHECK(a.diagnostics[k].samples_inside == b.diagnostics[k].samples_inside);
        CHECK(a.diagnostics[k].volume == b.diagnostics[k].volume);
    }
    auto other = magnetic_spec(40, 0.002, 25.0);
    other.params.seed = 18;
    const auto c = run(other);
    CHECK_FALSE(c.snapshots.back().curve == a.snapshots.back().curve);
}

TEST_CASE("pipeline failures end the run with a reason") {
    RunSpec spec;
    spec.params.dt = 1e-4;
    spec.params.t_end = 0.01;
    spec.gap = GapLaw::exponential();
    spec.initial = {1.0, {{FourierMode::Kind::cos, 10, 0.8}}, 40};
    const auto result = run(spec);
    CHECK_FALSE(result.completed);
    CHECK(result.abort_reason.find("step 0") != std::string::npos);
    CHECK(result.abort_reason.find("placement") != std::string::npos);
    CHECK(result.snapshots.empty());
}

TEST_CASE("a late failure keeps earlier snapshots") {
    RunSpec spec;
    spec.params.kind = ModelKind::constant_gap;
    spec.params.sigma = -0.02;
    spec.params.omega = 0.0;
    spec.params.dt = 1e-3;
    spec.params.t_end = 5.0;
    spec.gap = GapLaw::constant();
    spec.initial = perturbed_circle_spec(40);
    spec.snapshot_interval = 0.05;
    const auto result = run(spec);
    CHECK_FALSE(result.completed);
    CHECK(result.snapshots.size() >= 2);
    CHECK(result.snapshots.size() == result.diagnostics.size());
}

TEST_CASE("rk4 leaves its input untouched on failure") {
    SimulationState s{0.0, build_initial_curve({1.0, {{FourierMode::Kind::cos, 10, 0.8}}, 40}), 3};
    const auto copy = s;
    ModelParams p;
    CHECK_THROWS_AS(rk4_step(s, p, GapLaw::exponential()), PipelineError);
    CHECK(s.curve == copy.curve);
    CHECK(s.step_index == 3);
}

TEST_CASE("fixed plates report perimeter growth") {
    RunSpec spec;
    spec.params.kind = ModelKind::constant_gap;
    spec.params.sigma = -0.05;
    spec.params.dt = 1e-4;
    spec.params.t_end = 0.002;
    spec.gap = GapLaw::constant();
    spec.initial = perturbed_circle_spec(40);
    const auto result = run(spec);
    CHECK_FALSE(result.warnings.empty());
}
