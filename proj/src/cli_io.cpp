#include "helecell/cli_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "helecell/errors.hpp"

namespace helecell {

namespace {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(std::string_view s, const std::filesystem::path& path, std::size_t line) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) {
        throw ParseError(path.string() + ":" + std::to_string(line) + ": bad number \"" + std::string(s) + "\"");
    }
    return v;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) {
            return out;
        }
        start = comma + 1;
    }
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open " + path.string() + " for writing");
    }
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw Error("write to " + path.string() + " failed");
    }
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

template <class T>
T field(const json& doc, const char* key, const std::string& origin) {
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(origin + ": field \"" + key + "\": " + e.what());
    }
}

template <class T>
T field_or(const json& doc, const char* key, T fallback, const std::string& origin) {
    return doc.contains(key) ? field<T>(doc, key, origin) : fallback;
}

InitialCurveSpec parse_initial_curve(const json& node, std::size_t n, const std::string& origin) {
    if (node.is_string()) {
        const auto name = node.get<std::string>();
        if (name == "perturbed_circle") return perturbed_circle_spec(n);
        if (name == "labyrinth_seed") return labyrinth_seed_spec(n);
        if (name == "circle") return {1.0, {}, n};
        throw ValidationError("initial_curve: unknown shape \"" + name +
                              "\" (expected circle, perturbed_circle or labyrinth_seed)");
    }
    if (!node.is_object()) {
        throw ParseError(origin + ": field \"initial_curve\" must be a shape name or an object");
    }
    for (const auto& [key, _] : node.items()) {
        if (key != "R0" && key != "modes") {
            throw ValidationError("initial_curve: unknown key \"" + key + "\"");
        }
    }
    InitialCurveSpec spec{field_or<double>(node, "R0", 1.0, origin), {}, n};
    if (node.contains("modes")) {
        const json& modes = node.at("modes");
        if (!modes.is_array()) {
            throw ParseError(origin + ": field \"initial_curve.modes\" must be an array");
        }
        for (const json& m : modes) {
            const auto kind = field<std::string>(m, "kind", origin);
            if (kind != "cos" && kind != "sin") {
                throw ValidationError("initial_curve.modes: kind must be cos or sin, got \"" + kind + "\"");
            }
            spec.modes.push_back({kind == "cos" ? FourierMode::Kind::cos : FourierMode::Kind::sin,
                                  field<int>(m, "frequency", origin), field<double>(m, "amplitude", origin)});
        }
    }
    return spec;
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{"model", "N",  "sigma", "Bmv",    "Ca",     "h_r",
                                            "omega", "r_a", "M",    "seed",   "dt",     "t_end",
                                            "snapshot_interval", "initial_curve", "output_dir", "emit_svg"};
    return keys;
}

}  // namespace

RunConfig parse_config_text(std::string_view text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_and_column(text, e.byte);
        throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError(origin + ": top level must be a JSON object");
    }
    for (const auto& [key, _] : doc.items()) {
        if (!known_keys().contains(key)) {
            throw ValidationError("unknown configuration key \"" + key + "\"");
        }
    }
    if (!doc.contains("model")) throw ValidationError("model required");
    if (!doc.contains("N")) throw ValidationError("N required");

    RunConfig cfg;
    ModelParams& p = cfg.spec.params;
    p.kind = model_kind_from_string(field<std::string>(doc, "model", origin));
    const long n = field<long>(doc, "N", origin);
    if (n < 3) throw ValidationError("N must be >= 3");
    const auto count = static_cast<std::size_t>(n);

    if (p.kind == ModelKind::magnetic && !doc.contains("Ca")) throw ValidationError("Ca required");
    p.sigma = field_or<double>(doc, "sigma", p.sigma, origin);
    p.bmv = field_or<double>(doc, "Bmv", p.bmv, origin);
    p.ca = field_or<double>(doc, "Ca", p.ca, origin);
    p.h_r = field_or<double>(doc, "h_r", p.h_r, origin);
    p.omega = field_or<double>(doc, "omega", p.omega, origin);
    p.r_a = field_or<double>(doc, "r_a", p.r_a, origin);
    const long m = field_or<long>(doc, "M", static_cast<long>(p.samples), origin);
    if (m < 1) throw ValidationError("M must be >= 1");
    p.samples = static_cast<std::size_t>(m);
    p.seed = field_or<std::uint64_t>(doc, "seed", p.seed, origin);
    p.dt = field_or<double>(doc, "dt", 1.0 / (10.0 * static_cast<double>(count * count)), origin);
    p.t_end = field_or<double>(doc, "t_end", 0.0, origin);
    p.validate();

    cfg.spec.gap = default_gap_law(p.kind);
    cfg.spec.snapshot_interval = field_or<double>(doc, "snapshot_interval", 0.0, origin);
    cfg.spec.initial = doc.contains("initial_curve") ? parse_initial_curve(doc.at("initial_curve"), count, origin)
                                                     : perturbed_circle_spec(count);
    cfg.output_dir = field_or<std::string>(doc, "output_dir", cfg.output_dir.string(), origin);
    cfg.emit_svg = field_or<bool>(doc, "emit_svg", false, origin);
    return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot read configuration " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

void write_snapshot(const SimulationState& state, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << "index,x,y\n";
    const auto v = state.curve.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
        out << (i + 1) << ',' << format_double(v[i].x) << ',' << format_double(v[i].y) << '\n';
    }
    finish(out, path);
}

PolygonalCurve read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot read snapshot " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line != "index,x,y") {
        throw ParseError(path.string() + ":1: expected header index,x,y");
    }
    std::vector<Vec2> vertices;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cols = split_csv(line);
        if (cols.size() != 3) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": expected 3 columns");
        }
        vertices.push_back({parse_double(cols[1], path, lineno), parse_double(cols[2], path, lineno)});
    }
    return PolygonalCurve(std::move(vertices));
}

void write_diagnostics(const std::vector<DiagnosticsRecord>& records, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << "t,L,A,V,max_edge_dev,constraint_residual,M_in\n";
    for (const DiagnosticsRecord& r : records) {
        out << format_double(r.t) << ',' << format_double(r.perimeter) << ',' << format_double(r.area) << ','
            << format_double(r.volume) << ',' << format_double(r.max_edge_dev) << ','
            << format_double(r.constraint_residual) << ',' << r.samples_inside << '\n';
    }
    finish(out, path);
}

std::vector<DiagnosticsRecord> read_diagnostics(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot read diagnostics " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line != "t,L,A,V,max_edge_dev,constraint_residual,M_in") {
        throw ParseError(path.string() + ":1: unexpected diagnostics header");
    }
    std::vector<DiagnosticsRecord> records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto c = split_csv(line);
        if (c.size() != 7) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": expected 7 columns");
        }
        DiagnosticsRecord r;
        r.t = parse_double(c[0], path, lineno);
        r.perimeter = parse_double(c[1], path, lineno);
        r.area = parse_double(c[2], path, lineno);
        r.volume = parse_double(c[3], path, lineno);
        r.max_edge_dev = parse_double(c[4], path, lineno);
        r.constraint_residual = parse_double(c[5], path, lineno);
        r.samples_inside = static_cast<std::size_t>(parse_double(c[6], path, lineno));
        records.push_back(r);
    }
    return records;
}

void render_svg(const SimulationState& state, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-2 -2 4 4\" width=\"600\" height=\"600\">\n"
        << "<title>t = " << format_double(state.t) << "</title>\n"
        << "<g transform=\"scale(1,-1)\">\n<polygon fill=\"none\" stroke=\"black\" stroke-width=\"0.006\" points=\"";
    bool first = true;
    for (const Vec2& v : state.curve.vertices()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s%.6f,%.6f", first ? "" : " ", v.x, v.y);
        out << buf;
        first = false;
    }
    out << "\"/>\n</g>\n</svg>\n";
    finish(out, path);
}

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all{
        {"tdg_table1", "lifting-plate Hele-Shaw flow, N = 300, sigma = 2e-4, snapshots to t = 2.58",
         R"({
  "model": "tdg",
  "N": 300,
  "sigma": 2.0e-4,
  "r_a": 1.0,
  "omega": 100.0,
  "t_end": 2.58,
  "snapshot_interval": 0.36857142857142855,
  "initial_curve": "perturbed_circle"
})"},
        {"magnetic_bmv0_ca100", "magnetic fluid, Bmv = 0, Ca = 100, snapshots to t = 2.94",
         R"({
  "model": "magnetic",
  "N": 300,
  "Bmv": 0.0,
  "Ca": 100.0,
  "h_r": 0.25,
  "M": 1000,
  "r_a": 1.0,
  "omega": 100.0,
  "seed": 1,
  "t_end": 2.94,
  "snapshot_interval": 0.42,
  "initial_curve": "perturbed_circle"
})"},
        {"magnetic_bmv25_ca100", "magnetic fluid, Bmv = 25, Ca = 100, snapshots to t = 2.94",
         R"({
  "model": "magnetic",
  "N": 300,
  "Bmv": 25.0,
  "Ca": 100.0,
  "h_r": 0.25,
  "M": 1000,
  "r_a": 1.0,
  "omega": 100.0,
  "seed": 1,
  "t_end": 2.94,
  "snapshot_interval": 0.42,
  "initial_curve": "perturbed_circle"
})"},
        {"magnetic_bmv0_ca50", "magnetic fluid, Bmv = 0, Ca = 50, five-mode seed, snapshots to t = 2.94",
         R"({
  "model": "magnetic",
  "N": 300,
  "Bmv": 0.0,
  "Ca": 50.0,
  "h_r": 0.25,
  "M": 1000,
  "r_a": 1.0,
  "omega": 100.0,
  "seed": 1,
  "t_end": 2.94,
  "snapshot_interval": 0.42,
  "initial_curve": "labyrinth_seed"
})"},
        {"magnetic_bmv35_ca50", "magnetic fluid, Bmv = 35, Ca = 50, five-mode seed, snapshots to t = 2.94",
         R"({
  "model": "magnetic",
  "N": 300,
  "Bmv": 35.0,
  "Ca": 50.0,
  "h_r": 0.25,
  "M": 1000,
  "r_a": 1.0,
  "omega": 100.0,
  "seed": 1,
  "t_end": 2.94,
  "snapshot_interval": 0.42,
  "initial_curve": "labyrinth_seed"
})"},
    };
    return all;
}

RunResult execute(const RunConfig& config) {
    std::filesystem::create_directories(config.output_dir);
    const auto dir = config.output_dir;

    std::vector<DiagnosticsRecord> records;
    std::size_t index = 0;
    auto index_path = dir / "snapshots.csv";
    auto index_file = open_for_write(index_path);
    index_file << "snapshot,t,file\n";

    RunHooks hooks;
    hooks.on_snapshot = [&](const SimulationState& s, const DiagnosticsRecord& r) {
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%04zu", index);
        write_snapshot(s, dir / (std::string(name) + ".csv"));
        if (config.emit_svg) {
            render_svg(s, dir / (std::string(name) + ".svg"));
        }
        index_file << index << ',' << format_double(s.t) << ',' << name << ".csv\n";
        index_file.flush();
        records.push_back(r);
        write_diagnostics(records, dir / "diagnostics.csv");
        ++index;
    };
    RunResult result = run(config.spec, hooks);
    finish(index_file, index_path);
    return result;
}

}  // namespace helecell
