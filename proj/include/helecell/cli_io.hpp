#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "helecell/evolution.hpp"

namespace helecell {

/// Everything one batch run needs: the simulation spec plus output options.
struct RunConfig {
    RunSpec spec;
    std::filesystem::path output_dir = "results";
    bool emit_svg = false;

    std::size_t vertex_count() const noexcept { return spec.initial.n; }
};

/// Reads a flat JSON run configuration. Throws ParseError (with line and
/// column, or the offending key) and ValidationError (naming the violated
/// constraint).
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(std::string_view text, const std::string& origin = "<config>");

/// CSV "index,x,y", 1-based index, 17 significant digits.
void write_snapshot(const SimulationState& state, const std::filesystem::path& path);
PolygonalCurve read_snapshot(const std::filesystem::path& path);

/// CSV "t,L,A,V,max_edge_dev,constraint_residual,M_in".
void write_diagnostics(const std::vector<DiagnosticsRecord>& records, const std::filesystem::path& path);
std::vector<DiagnosticsRecord> read_diagnostics(const std::filesystem::path& path);

/// Closed stroke-only outline in the fixed view box [-2,2]^2, y up.
void render_svg(const SimulationState& state, const std::filesystem::path& path);

struct Preset {
    std::string name;
    std::string description;
    std::string json;
};

/// Bundled configurations of the published experiments.
const std::vector<Preset>& presets();

/// Runs a configuration and writes snapshot_NNNN.csv (and .svg),
/// snapshots.csv (index of snapshot times) and diagnostics.csv into the
/// output directory as the run progresses.
RunResult execute(const RunConfig& config);

}  // namespace helecell
