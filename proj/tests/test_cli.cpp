#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "vrtile/manifest.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = VRTILE_CLI_BIN;
const fs::path kGolden = VRTILE_GOLDEN_DIR;

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout
};

RunResult run_cli(const std::string& args, const fs::path& stderr_file = "/dev/null") {
    std::string cmd = kCli + " " + args + " 2>" + stderr_file.string();
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buf[512];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) result.output.append(buf, n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path fresh_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("vrtile_" + tag + "_" + std::to_string(getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

}  // namespace

TEST_CASE("cli classify prints the segment under the gaze") {
    CHECK(first_line(run_cli("classify --yaw 0 --pitch 0").output) == "M0");
    CHECK(first_line(run_cli("classify --yaw 0 --pitch 90").output) == "TOP");
    CHECK(first_line(run_cli("classify --yaw 120 --pitch -10").output) == "M1");

    auto result = run_cli("classify --yaw 0 --pitch 0");
    CHECK(result.output.find("M0 0.937500") != std::string::npos);
    CHECK(result.output.find("M1 0.031250") != std::string::npos);
}

TEST_CASE("cli validation failures exit with 2 and name the flag") {
    fs::path dir = fresh_dir("errors");
    fs::path err = dir / "stderr.txt";

    auto bad_fov = run_cli("mesh --v-fov 200 --out-dir " + (dir / "mesh").string(), err);
    CHECK(bad_fov.exit_code == 2);
    CHECK(slurp(err).find("v-fov") != std::string::npos);

    auto bad_pitch = run_cli("classify --yaw 0 --pitch 200", err);
    CHECK(bad_pitch.exit_code == 2);

    auto missing_trace = run_cli("simulate --mpd " + (kGolden / "video_3840.mpd").string() +
                                     " --trace " + (dir / "absent.csv").string() + " --out " +
                                     (dir / "s.csv").string(),
                                 err);
    CHECK(missing_trace.exit_code == 2);

    auto no_sub = run_cli("", err);
    CHECK(no_sub.exit_code == 2);

    fs::remove_all(dir);
}

TEST_CASE("cli mesh writes six OBJ files plus partition.json, deterministically") {
    fs::path dir = fresh_dir("mesh");
    auto first = run_cli("mesh --h-fov 96 --v-fov 90 --out-dir " + (dir / "a").string());
    REQUIRE(first.exit_code == 0);
    for (int i = 0; i < 6; ++i)
        CHECK(fs::exists(dir / "a" / ("tile" + std::to_string(i) + ".obj")));
    CHECK(fs::exists(dir / "a" / "partition.json"));

    auto second = run_cli("mesh --h-fov 96 --v-fov 90 --out-dir " + (dir / "b").string());
    REQUIRE(second.exit_code == 0);
    for (const char* name : {"tile0.obj", "tile1.obj", "tile2.obj", "tile3.obj", "tile4.obj",
                             "tile5.obj", "partition.json"})
        CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));

    CHECK(slurp(dir / "a" / "partition.json").find("\"beta_deg\": 45.0") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("cli manifest output is bit-identical to the library path") {
    fs::path dir = fresh_dir("manifest");
    fs::path out = dir / "video.mpd";
    auto result = run_cli("manifest --width 3840 --height 1920 --v-fov 90 --dur 10 --seg-dur 1"
                          " --out " + out.string());
    REQUIRE(result.exit_code == 0);

    std::string cli_text = slurp(out);
    CHECK(cli_text == slurp(kGolden / "video_3840.mpd"));
    CHECK(cli_text == vrtile::serialize_mpd(testsupport::default_mpd()));
    CHECK(vrtile::parse_mpd(cli_text) == testsupport::default_mpd());
    fs::remove_all(dir);
}

TEST_CASE("cli simulate reproduces the committed golden reports byte-for-byte") {
    fs::path dir = fresh_dir("simulate");
    std::string mpd = (kGolden / "video_3840.mpd").string();
    std::string trace = (kGolden / "static_center.csv").string();

    auto run_default = run_cli("simulate --mpd " + mpd + " --trace " + trace + " --policy " +
                               (kGolden / "policy_default.json").string() + " --baseline --out " +
                               (dir / "session.csv").string() + " --savings-out " +
                               (dir / "savings.csv").string());
    REQUIRE(run_default.exit_code == 0);
    CHECK(slurp(dir / "session.csv") == slurp(kGolden / "session_default.csv"));
    CHECK(slurp(dir / "savings.csv") == slurp(kGolden / "savings_default.csv"));

    auto run_noadj = run_cli("simulate --mpd " + mpd + " --trace " + trace + " --policy " +
                             (kGolden / "policy_noadj.json").string() + " --baseline --out " +
                             (dir / "session_noadj.csv").string() + " --savings-out " +
                             (dir / "savings_noadj.csv").string());
    REQUIRE(run_noadj.exit_code == 0);
    CHECK(slurp(dir / "session_noadj.csv") == slurp(kGolden / "session_noadj.csv"));
    CHECK(slurp(dir / "savings_noadj.csv") == slurp(kGolden / "savings_noadj.csv"));

    auto run_json = run_cli("simulate --mpd " + mpd + " --trace " + trace + " --policy " +
                            (kGolden / "policy_default.json").string() +
                            " --baseline --format json --out " + (dir / "session.json").string() +
                            " --savings-out " + (dir / "savings.json").string());
    REQUIRE(run_json.exit_code == 0);
    CHECK(slurp(dir / "session.json") == slurp(kGolden / "session_default.json"));
    CHECK(slurp(dir / "savings.json") == slurp(kGolden / "savings_default.json"));
    fs::remove_all(dir);
}

TEST_CASE("cli simulate writes per-frame visibility when asked") {
    fs::path dir = fresh_dir("frames");
    auto result = run_cli("simulate --mpd " + (kGolden / "video_3840.mpd").string() + " --trace " +
                          (kGolden / "static_center.csv").string() + " --out " +
                          (dir / "s.csv").string() + " --frames-out " +
                          (dir / "frames.csv").string());
    REQUIRE(result.exit_code == 0);
    std::string frames = slurp(dir / "frames.csv");
    CHECK(first_line(frames) == "t_ms,gaze,frac_top,frac_bottom,frac_m0,frac_m1,frac_m2,frac_m3");
    CHECK(frames.find("0,M0,0.000000,0.000000,0.937500,0.031250,0.000000,0.031250") !=
          std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("cli --config supplies defaults and flags win") {
    fs::path dir = fresh_dir("config");
    fs::path config = dir / "config.json";
    std::ofstream(config) << R"({"classify": {"yaw": 120.0, "pitch": -10.0}})";

    CHECK(first_line(run_cli("--config " + config.string() + " classify").output) == "M1");
    CHECK(first_line(run_cli("--config " + config.string() + " classify --yaw 0").output) ==
          "M0");

    std::ofstream(dir / "bad.json") << R"({"classify": {"way": 1}})";
    auto bad = run_cli("--config " + (dir / "bad.json").string() + " classify --yaw 0",
                       dir / "stderr.txt");
    CHECK(bad.exit_code == 2);
    CHECK(slurp(dir / "stderr.txt").find("way") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("cli manifest honors a bitrate override table") {
    fs::path dir = fresh_dir("table");
    std::ofstream(dir / "table.json")
        << R"([{"segment": "m0", "rep_id": 4, "bandwidth_bps": 250000}])";
    fs::path out = dir / "video.mpd";
    auto result = run_cli("manifest --bitrate-table " + (dir / "table.json").string() + " --out " +
                          out.string());
    REQUIRE(result.exit_code == 0);
    auto mpd = vrtile::parse_mpd(slurp(out));
    CHECK(mpd.adaptation_sets[2].representations[3].bandwidth_bps == 250000);
    fs::remove_all(dir);
}
