// Black-box tests of the command-line tool: exit codes, artifacts, manifests
// and the machine-readable stdout records. The binary path comes in through
// the TGC_CLI_PATH compile definition.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tgc/manifest.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("tgc_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out_path = work_dir() / ("stdout_" + std::to_string(counter));
    const fs::path err_path = work_dir() / ("stderr_" + std::to_string(counter));
    ++counter;

    const std::string cmd = std::string(TGC_CLI_PATH) + " " + args + " >\"" +
                            out_path.string() + "\" 2>\"" + err_path.string() + "\"";
    const int raw = std::system(cmd.c_str());

    RunResult r;
    if (raw != -1 && WIFEXITED(raw)) r.exit_code = WEXITSTATUS(raw);
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

std::vector<std::string> lines_with_prefix(const std::string& text, const std::string& p) {
    std::vector<std::string> hits;
    for (auto& line : lines_of(text))
        if (line.rfind(p, 0) == 0) hits.push_back(line);
    return hits;
}

double field_value(const std::string& line, const std::string& key) {
    const std::string padded = " " + line;  // uniform " key=" lookup at line start too
    const std::string needle = " " + key + "=";
    const auto pos = padded.find(needle);
    if (pos == std::string::npos)
        throw std::runtime_error("field " + key + " not in: " + line);
    return std::strtod(padded.c_str() + pos + needle.size(), nullptr);
}

// Shared dataset: a small planted graph plus pretrained features, built once
// through the CLI itself so later cases exercise realistic inputs.
struct Fixture {
    std::string graph;
    std::string labels;
    std::string features;
};

const Fixture& fx() {
    static const Fixture f = [] {
        const auto dir = work_dir();
        Fixture f;
        f.graph = (dir / "fx_graph.tsv").string();
        f.labels = (dir / "fx_labels.tsv").string();
        f.features = (dir / "fx_features.tsv").string();
        auto gen = run_cli("generate --n 40 --k 2 --events 400 --seed 3 --out-graph " +
                           f.graph + " --out-labels " + f.labels);
        if (gen.exit_code != 0)
            throw std::runtime_error("fixture generate failed: " + gen.err);
        auto pre = run_cli("pretrain --graph " + f.graph +
                           " --dim 8 --walk-length 10 --walks-per-node 4 --window 3 "
                           "--epochs 1 --seed 5 --out " +
                           f.features);
        if (pre.exit_code != 0)
            throw std::runtime_error("fixture pretrain failed: " + pre.err);
        return f;
    }();
    return f;
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("").exit_code == 2);                               // no subcommand
    CHECK(run_cli("generate --n 40 --events 400").exit_code == 2);   // missing --k
    CHECK(run_cli("train --graph g.tsv").exit_code == 2);            // missing --features
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("generate writes graph, labels and manifest reproducibly") {
    const auto dir = work_dir();
    const std::string g1 = (dir / "gen_a.tsv").string();
    const std::string l1 = (dir / "gen_a_labels.tsv").string();
    const std::string g2 = (dir / "gen_b.tsv").string();
    const std::string l2 = (dir / "gen_b_labels.tsv").string();

    const std::string flags = "generate --n 40 --k 2 --events 400 --seed 3";
    CHECK(run_cli(flags + " --out-graph " + g1 + " --out-labels " + l1).exit_code == 0);
    CHECK(run_cli(flags + " --out-graph " + g2 + " --out-labels " + l2).exit_code == 0);

    REQUIRE(fs::exists(g1));
    REQUIRE(fs::exists(l1));
    REQUIRE(fs::exists(g1 + ".manifest"));
    CHECK(slurp(g1) == slurp(g2));  // byte-identical reruns
    CHECK(slurp(l1) == slurp(l2));

    const auto m = tgc::RunManifest::read_file(g1 + ".manifest");
    CHECK(m.at("command") == "generate");
    CHECK(m.at("n") == "40");
    CHECK(m.at("graph_hash") == std::to_string(tgc::fnv1a_file(g1)));
}

TEST_CASE("pretrain emits one row per node at the requested dimension") {
    const auto rows = lines_of(slurp(fx().features));
    REQUIRE(rows.size() == 40);
    for (const auto& row : rows) {
        std::istringstream in(row);
        std::string tok;
        int cols = 0;
        while (in >> tok) ++cols;
        CHECK(cols == 1 + 8);  // node id plus one value per dimension
    }
    const auto m = tgc::RunManifest::read_file(fx().features + ".manifest");
    CHECK(m.at("command") == "pretrain");
    CHECK(m.at("dim") == "8");
}

TEST_CASE("train with zero epochs copies the features into the checkpoint") {
    const std::string out = (work_dir() / "ckpt_zero.tsv").string();
    const auto r = run_cli("train --graph " + fx().graph + " --features " + fx().features +
                           " --labels " + fx().labels + " --epochs 0 --out " + out);
    CHECK(r.exit_code == 0);
    CHECK(slurp(out) == slurp(fx().features));
}

TEST_CASE("train emits per-epoch records with mostly decreasing totals") {
    const std::string out = (work_dir() / "ckpt_a.tsv").string();
    const std::string flags = "train --graph " + fx().graph + " --features " +
                              fx().features + " --labels " + fx().labels +
                              " --epochs 8 --batch-size 64 --seed 1 --out " + out;
    const auto r = run_cli(flags);
    REQUIRE(r.exit_code == 0);

    const auto epochs = lines_with_prefix(r.out, "epoch=");
    REQUIRE(epochs.size() == 8);
    int drops = 0;
    for (std::size_t i = 1; i < epochs.size(); ++i)
        if (field_value(epochs[i], "total") < field_value(epochs[i - 1], "total")) ++drops;
    CHECK(drops >= 6);  // >= 80% of the 7 consecutive pairs

    const auto m = tgc::RunManifest::read_file(out + ".manifest");
    CHECK(m.at("command") == "train");
    CHECK(m.at("epochs") == "8");
    CHECK(m.at("optimizer") == "adam");
    CHECK(m.at("checkpoint_hash") == std::to_string(tgc::fnv1a_file(out)));

    // Same flags, fresh output path: byte-identical checkpoint.
    const std::string out2 = (work_dir() / "ckpt_b.tsv").string();
    const auto r2 = run_cli("train --graph " + fx().graph + " --features " + fx().features +
                            " --labels " + fx().labels +
                            " --epochs 8 --batch-size 64 --seed 1 --out " + out2);
    REQUIRE(r2.exit_code == 0);
    CHECK(slurp(out) == slurp(out2));
}

TEST_CASE("eval prints the metric record on the first stdout line") {
    const std::string ckpt = (work_dir() / "ckpt_eval.tsv").string();
    REQUIRE(run_cli("train --graph " + fx().graph + " --features " + fx().features +
                    " --labels " + fx().labels + " --epochs 2 --seed 1 --out " + ckpt)
                .exit_code == 0);

    const std::string manifest = (work_dir() / "eval_a.manifest").string();
    const auto r = run_cli("eval --graph " + fx().graph + " --features " + ckpt +
                           " --labels " + fx().labels + " --manifest " + manifest);
    REQUIRE(r.exit_code == 0);
    const auto first = lines_of(r.out).at(0);
    CHECK(first.rfind("acc=", 0) == 0);
    for (const std::string key : {"acc", "nmi", "f1"}) {
        const double v = field_value(first, key);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    // The adjusted index is negative below chance level.
    CHECK(field_value(first, "ari") >= -1.0);
    CHECK(field_value(first, "ari") <= 1.0);
    const auto m = tgc::RunManifest::read_file(manifest);
    CHECK(m.at("command") == "eval");
    CHECK(m.find("acc") != nullptr);
}

TEST_CASE("evaluating one-hot truth indicators scores perfectly") {
    // Build a feature table that encodes the labels exactly.
    const std::string onehot = (work_dir() / "onehot.tsv").string();
    {
        std::ofstream out(onehot);
        for (const auto& line : lines_of(slurp(fx().labels))) {
            std::istringstream in(line);
            std::string node;
            int label = 0;
            in >> node >> label;
            out << node << (label == 0 ? " 1 0\n" : " 0 1\n");
        }
    }
    const std::string manifest = (work_dir() / "eval_onehot.manifest").string();
    const auto r = run_cli("eval --graph " + fx().graph + " --features " + onehot +
                           " --labels " + fx().labels + " --manifest " + manifest);
    REQUIRE(r.exit_code == 0);
    CHECK(lines_of(r.out).at(0) == "acc=1 nmi=1 ari=1 f1=1");
}

TEST_CASE("runtime failures exit with code 1 and a diagnostic") {
    const auto r = run_cli("train --graph /nonexistent/graph.tsv --features " +
                           fx().features + " --labels " + fx().labels);
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("explicit cluster count mismatch warns but proceeds") {
    const std::string manifest = (work_dir() / "eval_k3.manifest").string();
    const auto r = run_cli("eval --graph " + fx().graph + " --features " + fx().features +
                           " --labels " + fx().labels + " --cluster-k 3 --manifest " +
                           manifest);
    CHECK(r.exit_code == 0);
    CHECK(r.err.find("warning") != std::string::npos);
    CHECK(tgc::RunManifest::read_file(manifest).at("cluster_k") == "3");
}

TEST_CASE("config files supply defaults and explicit flags win") {
    const std::string cfg_path = (work_dir() / "train.cfg").string();
    {
        std::ofstream out(cfg_path);
        out << "epochs=2\nbatch-size=32\n";
    }
    const std::string base = "train --graph " + fx().graph + " --features " +
                             fx().features + " --labels " + fx().labels + " --seed 1";

    const std::string out1 = (work_dir() / "ckpt_cfg.tsv").string();
    REQUIRE(run_cli(base + " --config " + cfg_path + " --out " + out1).exit_code == 0);
    CHECK(tgc::RunManifest::read_file(out1 + ".manifest").at("epochs") == "2");
    CHECK(tgc::RunManifest::read_file(out1 + ".manifest").at("batch_size") == "32");

    const std::string out2 = (work_dir() / "ckpt_cfg_override.tsv").string();
    REQUIRE(run_cli(base + " --config " + cfg_path + " --epochs 1 --out " + out2)
                .exit_code == 0);
    CHECK(tgc::RunManifest::read_file(out2 + ".manifest").at("epochs") == "1");
}

TEST_CASE("sweep-batch reports one record per size") {
    const std::string manifest = (work_dir() / "sweep.manifest").string();
    const auto r = run_cli("sweep-batch --graph " + fx().graph + " --features " +
                           fx().features + " --labels " + fx().labels +
                           " --sizes 1,64 --seed 1 --manifest " + manifest);
    REQUIRE(r.exit_code == 0);

    const auto rows = lines_with_prefix(r.out, "batch_size=");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].rfind("batch_size=1 ", 0) == 0);
    CHECK(rows[1].rfind("batch_size=64 ", 0) == 0);
    for (const auto& row : rows) {
        CHECK(field_value(row, "wall_seconds") >= 0.0);
        CHECK(field_value(row, "peak_incremental_bytes") > 0.0);
    }

    const auto m = tgc::RunManifest::read_file(manifest);
    CHECK(m.at("command") == "sweep-batch");
    CHECK(m.find("sweep.1.wall_seconds") != nullptr);
    CHECK(m.find("sweep.64.peak_incremental_bytes") != nullptr);
}
