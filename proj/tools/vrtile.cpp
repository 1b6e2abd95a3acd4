// vrtile: view-aware tiled 360 VR streaming toolchain.
//
// Subcommands: mesh (hexaface OBJ export), manifest (DASH-SRD MPD
// generation), simulate (trace-driven session + savings reports) and
// classify (direction lookup). Outputs are deterministic: identical inputs
// produce byte-identical files.

#include <array>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vrtile/adaptation.hpp"
#include "vrtile/batch.hpp"
#include "vrtile/errors.hpp"
#include "vrtile/manifest.hpp"
#include "vrtile/simulation.hpp"
#include "vrtile/sphere_geometry.hpp"
#include "vrtile/tiling.hpp"
#include "vrtile/viewport.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw vrtile::ParameterError("cannot read file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw vrtile::IoError("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw vrtile::IoError("write failed: " + path.string());
}

std::array<double, 4> parse_scales(const std::string& text) {
    std::array<double, 4> scales{};
    std::stringstream in(text);
    std::string field;
    int i = 0;
    while (std::getline(in, field, ',')) {
        if (i >= 4) throw vrtile::ParameterError("--scales needs exactly 4 factors");
        try {
            scales[i++] = std::stod(field);
        } catch (const std::logic_error&) {
            throw vrtile::ParameterError("--scales has a non-numeric factor: '" + field + "'");
        }
    }
    if (i != 4) throw vrtile::ParameterError("--scales needs exactly 4 factors");
    return scales;
}

ordered_json region_to_json(const vrtile::AngularRegion& r) {
    return {{"yaw_min_deg", r.yaw_min_deg},     {"yaw_max_deg", r.yaw_max_deg},
            {"pitch_min_deg", r.pitch_min_deg}, {"pitch_max_deg", r.pitch_max_deg},
            {"pitch_min_open", r.pitch_min_open}, {"pitch_max_open", r.pitch_max_open}};
}

// Values from --config fill in flags the command line left untouched.
class ConfigFile {
public:
    void load(const fs::path& path) {
        std::string text = read_file(path);
        try {
            doc_ = json::parse(text);
        } catch (const json::parse_error& e) {
            throw vrtile::ParseError("config-json", "byte " + std::to_string(e.byte), e.what());
        }
        if (!doc_.is_object())
            throw vrtile::ParseError("config-json", path.string(),
                                     "config must be a JSON object keyed by subcommand");
    }

    template <typename T>
    void apply(const CLI::App& cmd, const std::string& flag, T& target) const {
        if (doc_.is_null() || !doc_.contains(cmd.get_name())) return;
        const json& section = doc_.at(cmd.get_name());
        if (!section.contains(flag) || cmd.count("--" + flag) > 0) return;
        try {
            target = section.at(flag).get<T>();
        } catch (const json::exception& e) {
            throw vrtile::ParseError("config-json", cmd.get_name() + "." + flag, e.what());
        }
    }

    void reject_unknown(const CLI::App& cmd, const std::vector<std::string>& known) const {
        if (doc_.is_null() || !doc_.contains(cmd.get_name())) return;
        for (const auto& [key, value] : doc_.at(cmd.get_name()).items()) {
            (void)value;
            if (std::find(known.begin(), known.end(), key) == known.end())
                throw vrtile::ParseError("config-key", cmd.get_name() + "." + key,
                                         "unknown config field '" + key + "'");
        }
    }

private:
    json doc_;
};

struct MeshArgs {
    double h_fov = 96.0;
    double v_fov = 90.0;
    int slices = 16;
    int stacks = 8;
    std::string out_dir;
};

void require_set(const std::string& value, const char* flag) {
    if (value.empty()) throw vrtile::ParameterError(std::string(flag) + " is required");
}

int run_mesh(const MeshArgs& args) {
    require_set(args.out_dir, "--out-dir");
    vrtile::HexafacePartition partition = vrtile::partition_sphere(args.h_fov, args.v_fov);

    fs::path dir(args.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw vrtile::IoError("cannot create directory: " + dir.string());

    for (vrtile::SegmentId s : vrtile::kAllSegments) {
        vrtile::SegmentMesh mesh =
            vrtile::tessellate_segment(partition, s, args.slices, args.stacks);
        write_file(dir / ("tile" + std::to_string(vrtile::segment_index(s)) + ".obj"),
                   vrtile::export_obj(mesh));
    }

    ordered_json doc;
    doc["h_fov_deg"] = partition.h_fov_deg;
    doc["v_fov_deg"] = partition.v_fov_deg;
    doc["beta_deg"] = partition.beta_deg;
    doc["regions"] = ordered_json::object();
    for (vrtile::SegmentId s : vrtile::kAllSegments)
        doc["regions"][std::string(vrtile::segment_key(s))] = region_to_json(partition.region(s));
    write_file(dir / "partition.json", doc.dump(2) + "\n");
    return 0;
}

struct ManifestArgs {
    int width = 3840;
    int height = 1920;
    double h_fov = 96.0;
    double v_fov = 90.0;
    std::string scales = "1,0.75,0.5,0.25";
    double bpp = 0.1;
    double fps = 60.0;
    double seg_dur = 1.0;
    double dur = 10.0;
    std::string bitrate_table;
    std::string plan_out;
    std::string out;
};

int run_manifest(const ManifestArgs& args) {
    require_set(args.out, "--out");
    vrtile::HexafacePartition partition = vrtile::partition_sphere(args.h_fov, args.v_fov);
    vrtile::TileGrid grid = vrtile::compute_tile_grid(partition, args.width, args.height);

    vrtile::BitrateModel model;
    model.bits_per_pixel = args.bpp;
    model.fps = args.fps;
    if (!args.bitrate_table.empty())
        model.overrides = vrtile::parse_bitrate_table(read_file(args.bitrate_table));

    vrtile::Ladder ladder = vrtile::build_ladder(grid, parse_scales(args.scales), model);
    vrtile::MpdModel mpd = vrtile::generate_mpd(grid, ladder, args.dur, args.seg_dur);
    write_file(args.out, vrtile::serialize_mpd(mpd));
    if (!args.plan_out.empty()) write_file(args.plan_out, vrtile::tiling_plan_json(grid, ladder));
    return 0;
}

struct SimulateArgs {
    std::string mpd;
    std::string trace;
    std::string policy;
    bool baseline = false;
    std::string out;
    std::string savings_out;
    std::string frames_out;
    std::string format = "csv";
    double h_fov = 96.0;
    double v_fov = 90.0;
};

int run_simulate(const SimulateArgs& args) {
    if (args.format != "csv" && args.format != "json")
        throw vrtile::ParameterError("--format must be csv or json, got '" + args.format + "'");
    vrtile::ReportFormat format =
        args.format == "csv" ? vrtile::ReportFormat::csv : vrtile::ReportFormat::json;

    vrtile::MpdModel mpd = vrtile::parse_mpd(read_file(args.mpd));
    vrtile::OrientationTrace trace = vrtile::load_trace(read_file(args.trace));
    vrtile::AdaptationPolicy policy;
    if (!args.policy.empty())
        policy = vrtile::AdaptationPolicy::from_json(read_file(args.policy));
    vrtile::HexafacePartition partition = vrtile::partition_sphere(args.h_fov, args.v_fov);

    vrtile::SessionReport session = vrtile::simulate(mpd, trace, policy, partition);
    write_file(args.out, vrtile::emit_report(session, format));

    if (args.baseline) {
        vrtile::AdaptationPolicy baseline_policy = policy;
        baseline_policy.in_fov_rep = 1;
        baseline_policy.adjacent_rep = 1;
        baseline_policy.far_rep = 1;
        vrtile::SessionReport baseline =
            vrtile::simulate(mpd, trace, baseline_policy, partition);
        std::string label = fs::path(args.trace).stem().string();
        vrtile::SavingsReport savings = vrtile::compare(session, baseline, label);

        fs::path savings_path(args.savings_out);
        if (savings_path.empty()) {
            savings_path = args.out;
            savings_path.replace_extension("savings" + savings_path.extension().string());
        }
        write_file(savings_path, vrtile::emit_report(savings, format));
    }

    if (!args.frames_out.empty()) {
        std::vector<vrtile::Visibility> frames = vrtile::visibility_batch(
            partition, trace.samples, policy.min_overlap, vrtile::Execution::parallel);
        std::string out = "t_ms,gaze,frac_top,frac_bottom,frac_m0,frac_m1,frac_m2,frac_m3\n";
        char buf[32];
        for (const vrtile::Visibility& vis : frames) {
            out += std::to_string(vis.pose.t_ms) + ",";
            out += vrtile::segment_name(vis.gaze);
            for (vrtile::SegmentId s : vrtile::kAllSegments) {
                std::snprintf(buf, sizeof buf, ",%.6f", vis.fraction(s));
                out += buf;
            }
            out += "\n";
        }
        write_file(args.frames_out, out);
    }
    return 0;
}

struct ClassifyArgs {
    double h_fov = 96.0;
    double v_fov = 90.0;
    double yaw = 0.0;
    double pitch = 0.0;
};

int run_classify(const ClassifyArgs& args) {
    vrtile::HexafacePartition partition = vrtile::partition_sphere(args.h_fov, args.v_fov);
    vrtile::SegmentId segment = vrtile::classify_direction(partition, args.yaw, args.pitch);
    vrtile::Visibility vis =
        vrtile::visible_segments(partition, {0, args.yaw, args.pitch, 0.0}, 0.0);

    std::cout << vrtile::segment_name(segment) << "\n";
    char buf[32];
    for (vrtile::SegmentId s : vrtile::kAllSegments) {
        std::snprintf(buf, sizeof buf, " %.6f", vis.fraction(s));
        std::cout << vrtile::segment_name(s) << buf << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"view-aware tiled 360 VR streaming toolchain"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config mirroring flags; flags win");

    MeshArgs mesh_args;
    CLI::App* mesh = app.add_subcommand("mesh", "write the six tile meshes as OBJ files");
    mesh->add_option("--h-fov", mesh_args.h_fov, "horizontal FoV in degrees")
        ->check(CLI::Range(1e-9, 179.999999));
    mesh->add_option("--v-fov", mesh_args.v_fov, "vertical FoV in degrees")
        ->check(CLI::Range(1e-9, 179.999999));
    mesh->add_option("--slices", mesh_args.slices, "yaw subdivisions")->check(CLI::Range(2, 4096));
    mesh->add_option("--stacks", mesh_args.stacks, "pitch subdivisions")
        ->check(CLI::Range(1, 4096));
    mesh->add_option("--out-dir", mesh_args.out_dir, "output directory");

    ManifestArgs manifest_args;
    CLI::App* manifest = app.add_subcommand("manifest", "generate a DASH-SRD manifest");
    manifest->add_option("--width", manifest_args.width, "frame width in pixels");
    manifest->add_option("--height", manifest_args.height, "frame height in pixels");
    manifest->add_option("--h-fov", manifest_args.h_fov, "horizontal FoV in degrees");
    manifest->add_option("--v-fov", manifest_args.v_fov, "vertical FoV in degrees")
        ->check(CLI::Range(1e-9, 179.999999));
    manifest->add_option("--scales", manifest_args.scales, "four decreasing factors, REP1 first");
    manifest->add_option("--bpp", manifest_args.bpp, "bits per pixel for the bitrate model");
    manifest->add_option("--fps", manifest_args.fps, "frames per second for the bitrate model");
    manifest->add_option("--seg-dur", manifest_args.seg_dur, "segment duration in seconds");
    manifest->add_option("--dur", manifest_args.dur, "media duration in seconds");
    manifest->add_option("--bitrate-table", manifest_args.bitrate_table,
                         "JSON bitrate override table");
    manifest->add_option("--plan", manifest_args.plan_out, "also write the tiling plan JSON");
    manifest->add_option("--out", manifest_args.out, "output .mpd path");

    SimulateArgs sim_args;
    CLI::App* simulate = app.add_subcommand("simulate", "run a trace-driven streaming session");
    simulate->add_option("--mpd", sim_args.mpd, "manifest path");
    simulate->add_option("--trace", sim_args.trace, "head-motion trace CSV");
    simulate->add_option("--policy", sim_args.policy, "adaptation policy JSON");
    simulate->add_flag("--baseline", sim_args.baseline, "also run the all-REP1 baseline");
    simulate->add_option("--out", sim_args.out, "session report path");
    simulate->add_option("--savings-out", sim_args.savings_out,
                         "savings report path (default: derived from --out)");
    simulate->add_option("--frames-out", sim_args.frames_out,
                         "per-frame visibility CSV (analysis output)");
    simulate->add_option("--format", sim_args.format, "csv or json");
    simulate->add_option("--h-fov", sim_args.h_fov, "horizontal FoV in degrees");
    simulate->add_option("--v-fov", sim_args.v_fov, "vertical FoV in degrees");

    ClassifyArgs classify_args;
    CLI::App* classify = app.add_subcommand("classify", "map a direction to its segment");
    classify->add_option("--h-fov", classify_args.h_fov, "horizontal FoV in degrees");
    classify->add_option("--v-fov", classify_args.v_fov, "vertical FoV in degrees");
    classify->add_option("--yaw", classify_args.yaw, "yaw in degrees");
    classify->add_option("--pitch", classify_args.pitch, "pitch in degrees")
        ->check(CLI::Range(-90.0, 90.0));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        ConfigFile config;
        if (!config_path.empty()) config.load(config_path);

        if (mesh->parsed()) {
            config.reject_unknown(*mesh, {"h-fov", "v-fov", "slices", "stacks", "out-dir"});
            config.apply(*mesh, "h-fov", mesh_args.h_fov);
            config.apply(*mesh, "v-fov", mesh_args.v_fov);
            config.apply(*mesh, "slices", mesh_args.slices);
            config.apply(*mesh, "stacks", mesh_args.stacks);
            config.apply(*mesh, "out-dir", mesh_args.out_dir);
            return run_mesh(mesh_args);
        }
        if (manifest->parsed()) {
            config.reject_unknown(*manifest, {"width", "height", "h-fov", "v-fov", "scales",
                                              "bpp", "fps", "seg-dur", "dur", "bitrate-table",
                                              "plan", "out"});
            config.apply(*manifest, "width", manifest_args.width);
            config.apply(*manifest, "height", manifest_args.height);
            config.apply(*manifest, "h-fov", manifest_args.h_fov);
            config.apply(*manifest, "v-fov", manifest_args.v_fov);
            config.apply(*manifest, "scales", manifest_args.scales);
            config.apply(*manifest, "bpp", manifest_args.bpp);
            config.apply(*manifest, "fps", manifest_args.fps);
            config.apply(*manifest, "seg-dur", manifest_args.seg_dur);
            config.apply(*manifest, "dur", manifest_args.dur);
            config.apply(*manifest, "bitrate-table", manifest_args.bitrate_table);
            config.apply(*manifest, "plan", manifest_args.plan_out);
            config.apply(*manifest, "out", manifest_args.out);
            return run_manifest(manifest_args);
        }
        if (simulate->parsed()) {
            config.reject_unknown(*simulate, {"mpd", "trace", "policy", "baseline", "out",
                                              "savings-out", "frames-out", "format", "h-fov",
                                              "v-fov"});
            config.apply(*simulate, "mpd", sim_args.mpd);
            config.apply(*simulate, "trace", sim_args.trace);
            config.apply(*simulate, "policy", sim_args.policy);
            config.apply(*simulate, "baseline", sim_args.baseline);
            config.apply(*simulate, "out", sim_args.out);
            config.apply(*simulate, "savings-out", sim_args.savings_out);
            config.apply(*simulate, "frames-out", sim_args.frames_out);
            config.apply(*simulate, "format", sim_args.format);
            config.apply(*simulate, "h-fov", sim_args.h_fov);
            config.apply(*simulate, "v-fov", sim_args.v_fov);
            return run_simulate(sim_args);
        }
        if (classify->parsed()) {
            config.reject_unknown(*classify, {"h-fov", "v-fov", "yaw", "pitch"});
            config.apply(*classify, "h-fov", classify_args.h_fov);
            config.apply(*classify, "v-fov", classify_args.v_fov);
            config.apply(*classify, "yaw", classify_args.yaw);
            config.apply(*classify, "pitch", classify_args.pitch);
            return run_classify(classify_args);
        }
    } catch (const vrtile::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const vrtile::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const vrtile::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
