#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "helecell/cli_io.hpp"
#include "helecell/errors.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& out_dir, const std::uint64_t* seed, bool emit_svg) {
    helecell::RunConfig config = helecell::parse_config(config_path);
    if (!out_dir.empty()) {
        config.output_dir = out_dir;
    }
    if (seed != nullptr) {
        config.spec.params.seed = *seed;
    }
    config.emit_svg = config.emit_svg || emit_svg;

    const auto& p = config.spec.params;
    std::cout << "model " << helecell::to_string(p.kind) << ", N = " << config.vertex_count() << ", dt = " << p.dt
              << ", t_end = " << p.t_end << " -> " << config.output_dir.string() << '\n';

    const helecell::RunResult result = helecell::execute(config);
    for (const auto& w : result.warnings) {
        std::cerr << "warning: " << w << '\n';
    }
    if (!result.diagnostics.empty()) {
        const auto& first = result.diagnostics.front();
        const auto& last = result.diagnostics.back();
        std::cout << "t = " << last.t << ", L = " << last.perimeter << ", A = " << last.area
                  << ", volume drift = " << (last.volume - first.volume) / first.volume << '\n';
    }
    if (!result.completed) {
        std::cerr << "run aborted: " << result.abort_reason << '\n';
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hele-Shaw moving-boundary simulator"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "integrate a configuration and write snapshots and diagnostics");
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool emit_svg = false;
    run->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "output directory (overrides output_dir)");
    auto* seed_opt = run->add_option("--seed", seed, "master seed (overrides seed)");
    run->add_flag("--emit-svg", emit_svg, "write one SVG per snapshot");

    auto* list = app.add_subcommand("presets", "list the bundled experiment configurations");
    std::string write_dir;
    list->add_option("--write", write_dir, "write every preset as <name>.json into this directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            return run_command(config_path, out_dir, seed_opt->count() > 0 ? &seed : nullptr, emit_svg);
        }
        for (const auto& preset : helecell::presets()) {
            std::cout << preset.name << "  " << preset.description << '\n';
            if (!write_dir.empty()) {
                std::filesystem::create_directories(write_dir);
                const auto path = std::filesystem::path(write_dir) / (preset.name + ".json");
                std::ofstream(path) << preset.json << '\n';
            }
        }
        return 0;
    } catch (const helecell::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
