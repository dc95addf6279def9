#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ogcb/data.hpp"
#include "ogcb/evaluate.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using namespace ogcb;

namespace {

const fs::path g_bin = OGCB_BIN_PATH;

struct CmdResult {
    int exit_code;
    std::string output;
};

CmdResult run_cmd(const std::string& args) {
    const fs::path out_file =
        fs::temp_directory_path() / ("ogcb_cli_out_" +
                                     std::to_string(::getpid()) + ".txt");
    const std::string cmd =
        g_bin.string() + " " + args + " > " + out_file.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::string output((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
    fs::remove(out_file);
    return {WEXITSTATUS(rc), output};
}

fs::path temp_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / name;
    fs::create_directories(p);
    return p;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

} // namespace

TEST_CASE("help exits zero, bad invocations exit nonzero") {
    CHECK(run_cmd("--help").exit_code == 0);
    CHECK(run_cmd("train --help").exit_code == 0);
    CHECK(run_cmd("nonsense").exit_code != 0);
    CHECK(run_cmd("").exit_code != 0);
    CHECK(run_cmd("theory --check bogus --trials 1").exit_code != 0);
    CHECK(run_cmd("collect --env marslander").exit_code != 0);
    CHECK(run_cmd("eval --checkpoint /nonexistent.ckpt").exit_code != 0);
}

TEST_CASE("collect writes byte-identical files for identical flags") {
    const auto dir = temp_dir("ogcb_cli_collect");
    const auto p1 = dir / "a.ds";
    const auto p2 = dir / "b.ds";
    const std::string flags =
        "collect --env pointreach --collector random --n-traj 12 --seed 4 --out ";
    const CmdResult r1 = run_cmd(flags + p1.string());
    CHECK(r1.exit_code == 0);
    CHECK(r1.output.find("transitions=600") != std::string::npos);
    CHECK(run_cmd(flags + p2.string()).exit_code == 0);
    CHECK(read_file(p1) == read_file(p2));
    const auto ds = data::load(p1.string());
    CHECK(ds.manifest.n_traj == 12);
    fs::remove_all(dir);
}

TEST_CASE("collect records the expert noise level in the manifest") {
    const auto dir = temp_dir("ogcb_cli_expert");
    const auto p = dir / "e.ds";
    const CmdResult r = run_cmd(
        "collect --env pointreach --collector expert --n-traj 8 --seed 2 "
        "--noise-sigma 0.2 --out " +
        p.string());
    CHECK(r.exit_code == 0);
    const auto ds = data::load(p.string());
    CHECK(ds.manifest.noise_sigma == 0.2f);
    CHECK(ds.manifest.collector == data::Collector::expert);
    fs::remove_all(dir);
}

TEST_CASE("train writes checkpoint, metrics and the effective config") {
    const auto dir = temp_dir("ogcb_cli_train");
    const auto ds_path = dir / "d.ds";
    REQUIRE(run_cmd("collect --env pointreach --collector random --n-traj 8 "
                    "--seed 1 --out " +
                    ds_path.string())
                .exit_code == 0);
    const auto out_dir = dir / "run";
    const CmdResult r = run_cmd(
        "train --env pointreach --algo wgcsl --dataset " + ds_path.string() +
        " --steps 30 --batch 8 --seed 1 --eval-every 10 --eval-episodes 3 "
        "--out-dir " +
        out_dir.string());
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(out_dir / "agent.ckpt"));
    CHECK(fs::exists(out_dir / "metrics.csv"));
    CHECK(fs::exists(out_dir / "effective_config.json"));
    const auto rows = eval::parse_metrics((out_dir / "metrics.csv").string());
    CHECK(rows.size() == 3);

    // eval on the checkpoint prints a report and exits zero.
    const CmdResult e = run_cmd("eval --checkpoint " +
                                (out_dir / "agent.ckpt").string() +
                                " --episodes 5 --seed 3");
    CHECK(e.exit_code == 0);
    CHECK(e.output.find("avg_return") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("unknown algo and mismatched dataset env are rejected") {
    const auto dir = temp_dir("ogcb_cli_badalgo");
    const auto ds_path = dir / "d.ds";
    REQUIRE(run_cmd("collect --env pointrooms --collector random --n-traj 4 "
                    "--seed 1 --out " +
                    ds_path.string())
                .exit_code == 0);
    CHECK(run_cmd("train --env pointrooms --algo fancy --dataset " +
                  ds_path.string() + " --steps 5")
              .exit_code != 0);
    const CmdResult r = run_cmd("train --env pointreach --algo gcsl --dataset " +
                                ds_path.string() + " --steps 5 --out-dir " +
                                (dir / "x").string());
    CHECK(r.exit_code != 0);
    CHECK(r.output.find("error:") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("config file values load and flags override them") {
    const auto dir = temp_dir("ogcb_cli_config");
    const auto ds_path = dir / "d.ds";
    REQUIRE(run_cmd("collect --env pointreach --collector random --n-traj 6 "
                    "--seed 1 --out " +
                    ds_path.string())
                .exit_code == 0);
    const auto cfg_path = dir / "cfg.json";
    {
        std::ofstream cfg(cfg_path);
        cfg << "{\"algo\":\"gcsl\",\"total_steps\":20,\"batch_size\":8,"
            << "\"eval_every\":10,\"eval_episodes\":2,"
            << "\"dataset_path\":\"" << ds_path.string() << "\"}";
    }
    const auto out_dir = dir / "run";
    const CmdResult r = run_cmd("train --config " + cfg_path.string() +
                                " --steps 12 --out-dir " + out_dir.string());
    CHECK(r.exit_code == 0);
    const std::string echoed = read_file(out_dir / "effective_config.json");
    CHECK(echoed.find("\"algo\": \"gcsl\"") != std::string::npos);
    CHECK(echoed.find("\"total_steps\": 12") != std::string::npos);

    // Unknown keys are rejected.
    {
        std::ofstream cfg(cfg_path);
        cfg << "{\"algi\":\"gcsl\"}";
    }
    const CmdResult bad = run_cmd("train --config " + cfg_path.string());
    CHECK(bad.exit_code != 0);
    CHECK(bad.output.find("unknown key") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("train is deterministic across repeated runs") {
    const auto dir = temp_dir("ogcb_cli_det");
    const auto ds_path = dir / "d.ds";
    REQUIRE(run_cmd("collect --env pointreach --collector random --n-traj 6 "
                    "--seed 9 --out " +
                    ds_path.string())
                .exit_code == 0);
    const std::string base =
        "train --env pointreach --algo wgcsl --dataset " + ds_path.string() +
        " --steps 40 --batch 8 --seed 5 --eval-every 20 --eval-episodes 3 "
        "--out-dir ";
    REQUIRE(run_cmd(base + (dir / "r1").string()).exit_code == 0);
    REQUIRE(run_cmd(base + (dir / "r2").string()).exit_code == 0);
    CHECK(read_file(dir / "r1" / "metrics.csv") ==
          read_file(dir / "r2" / "metrics.csv"));
    CHECK(read_file(dir / "r1" / "agent.ckpt") ==
          read_file(dir / "r2" / "agent.ckpt"));
    fs::remove_all(dir);
}

TEST_CASE("wgcsl with all weights disabled matches gcsl logs") {
    const auto dir = temp_dir("ogcb_cli_degenerate");
    const auto ds_path = dir / "d.ds";
    REQUIRE(run_cmd("collect --env pointreach --collector random --n-traj 6 "
                    "--seed 2 --out " +
                    ds_path.string())
                .exit_code == 0);
    const std::string common =
        " --dataset " + ds_path.string() +
        " --steps 30 --batch 8 --seed 7 --eval-every 15 --eval-episodes 3";
    REQUIRE(run_cmd("train --env pointreach --algo wgcsl --no-drw --no-geaw "
                    "--no-baw" +
                    common + " --out-dir " + (dir / "w").string())
                .exit_code == 0);
    REQUIRE(run_cmd("train --env pointreach --algo gcsl" + common +
                    " --out-dir " + (dir / "g").string())
                .exit_code == 0);
    CHECK(read_file(dir / "w" / "metrics.csv") ==
          read_file(dir / "g" / "metrics.csv"));
    fs::remove_all(dir);
}

TEST_CASE("theory subcommand emits json lines and respects exit codes") {
    const CmdResult r = run_cmd("theory --check theorem1 --trials 5 --seed 3");
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.output);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        if (line.empty())
            continue;
        CHECK(line.find("\"check\":\"theorem1\"") != std::string::npos);
        CHECK(line.find("\"holds\":true") != std::string::npos);
        ++count;
    }
    CHECK(count == 5);
    CHECK(run_cmd("theory --check gradmatch --trials 3 --seed 1").exit_code == 0);
    CHECK(run_cmd("theory --check prop1 --trials 3 --seed 1").exit_code == 0);
    CHECK(run_cmd("theory --check prop2 --trials 1 --seed 1").exit_code == 0);
    CHECK(run_cmd("theory --check corollary1 --trials 3 --seed 1").exit_code ==
          0);
}

TEST_CASE("bench produces the full matrix summary") {
    const auto dir = temp_dir("ogcb_cli_bench");
    // Tiny settings: the matrix shape is what matters here.
    const CmdResult r = run_cmd(
        "bench --seeds 1 --steps 10 --batch 8 --n-traj 4 --eval-every 10 "
        "--jobs 2 --out-dir " +
        dir.string());
    CHECK(r.exit_code == 0);
    std::ifstream in(dir / "bench_summary.csv");
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "task,algo,mean_return,std_return,seeds");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty())
            ++rows;
    CHECK(rows == 28);
    fs::remove_all(dir);
}
