// Command-line front end: generate / pretrain / train / eval / sweep-batch.
// Every command writes a `key=value` manifest beside its main artifact with
// the fully resolved configuration, input hashes, output paths and wall time.
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tgc/cluster.hpp"
#include "tgc/embedding.hpp"
#include "tgc/graph.hpp"
#include "tgc/manifest.hpp"
#include "tgc/metrics.hpp"
#include "tgc/node2vec.hpp"
#include "tgc/rng.hpp"
#include "tgc/synth.hpp"
#include "tgc/trainer.hpp"

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kStreamEvalKmeans = 0x8d2c;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// String-valued enum flags; mapped onto TrainConfig after parsing so the
// manifest can record them verbatim.
struct TrainFlags {
    tgc::train::TrainConfig cfg;
    std::size_t dim = 0;  // 0: take the dimension from the feature file
    std::string optimizer = "adam";
    std::string p_refresh = "per_epoch";
    std::string time_rescale = "unit_interval";
    std::string negative_form = "unit_margin";

    void add_options(CLI::App* cmd) {
        cmd->add_option("--dim", dim, "embedding dimension (0: from feature file)")
            ->capture_default_str();
        cmd->add_option("--epochs", cfg.epochs, "training epochs")->capture_default_str();
        cmd->add_option("--batch-size", cfg.batch_size, "chronological batch size")
            ->capture_default_str();
        cmd->add_option("--neighbor-len", cfg.neighbor_len,
                        "historical neighbors per interaction")
            ->capture_default_str();
        cmd->add_option("--n-neg", cfg.n_neg, "negative samples per interaction")
            ->capture_default_str();
        cmd->add_option("--learning-rate", cfg.learning_rate, "optimizer step size")
            ->capture_default_str();
        cmd->add_option("--optimizer", optimizer, "optimizer")
            ->check(CLI::IsMember({"sgd", "adam"}))
            ->capture_default_str();
        cmd->add_option("--p-refresh", p_refresh, "target distribution refresh schedule")
            ->check(CLI::IsMember({"per_epoch", "per_batch"}))
            ->capture_default_str();
        cmd->add_option("--time-rescale", time_rescale, "timestamp preprocessing")
            ->check(CLI::IsMember({"none", "unit_interval"}))
            ->capture_default_str();
        cmd->add_option("--negative-form", negative_form,
                        "how negatives enter the temporal loss")
            ->check(CLI::IsMember({"unit_margin", "zero_margin"}))
            ->capture_default_str();
        cmd->add_option("--w-tem", cfg.weights.temporal, "temporal loss weight")
            ->capture_default_str();
        cmd->add_option("--w-node", cfg.weights.node, "node distribution loss weight")
            ->capture_default_str();
        cmd->add_option("--w-batch", cfg.weights.batch, "batch reconstruction loss weight")
            ->capture_default_str();
        cmd->add_option("--cluster-k", cfg.cluster_k,
                        "cluster count (0: derive from labels)")
            ->capture_default_str();
        cmd->add_option("--dof", cfg.dof, "soft assignment degrees of freedom")
            ->capture_default_str();
        cmd->add_option("--seed", cfg.seed, "seed for all randomness")->capture_default_str();
    }

    void finalize(std::size_t feature_dim) {
        cfg.dim = dim == 0 ? feature_dim : dim;
        cfg.optimizer = optimizer == "sgd" ? tgc::train::Optimizer::sgd
                                           : tgc::train::Optimizer::adam;
        cfg.p_refresh = p_refresh == "per_batch" ? tgc::train::PRefresh::per_batch
                                                 : tgc::train::PRefresh::per_epoch;
        cfg.time_rescale = time_rescale == "none" ? tgc::train::TimeRescale::none
                                                  : tgc::train::TimeRescale::unit_interval;
        cfg.negative_form = negative_form == "zero_margin"
                                ? tgc::hawkes::NegativeForm::zero_margin
                                : tgc::hawkes::NegativeForm::unit_margin;
    }

    // Resolved-config keys shared by train and sweep-batch manifests.
    void describe(tgc::RunManifest& m) const {
        m.set("dim", static_cast<std::uint64_t>(cfg.dim));
        m.set("epochs", static_cast<std::int64_t>(cfg.epochs));
        m.set("batch_size", static_cast<std::uint64_t>(cfg.batch_size));
        m.set("neighbor_len", static_cast<std::uint64_t>(cfg.neighbor_len));
        m.set("n_neg", static_cast<std::int64_t>(cfg.n_neg));
        m.set("learning_rate", cfg.learning_rate);
        m.set("optimizer", optimizer);
        m.set("p_refresh", p_refresh);
        m.set("time_rescale", time_rescale);
        m.set("negative_form", negative_form);
        m.set("w_tem", cfg.weights.temporal);
        m.set("w_node", cfg.weights.node);
        m.set("w_batch", cfg.weights.batch);
        m.set("cluster_k", static_cast<std::int64_t>(cfg.cluster_k));
        m.set("dof", cfg.dof);
        m.set("seed", cfg.seed);
    }
};

std::uint64_t config_hash(const tgc::RunManifest& config_only) {
    std::ostringstream buf;
    config_only.write(buf);
    return tgc::fnv1a(buf.str());
}

// Applies `--config FILE` by hand: every `key=value` line becomes a synthetic
// `--key value` pair injected right after the subcommand name, skipping keys
// the command line sets explicitly so real flags always win. (The CLI library
// only honors its native config mechanism on the top-level parser, and these
// files belong to one subcommand each.)
std::vector<std::string> expand_config_args(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    if (args.size() < 3) return args;

    std::string path;
    for (std::size_t i = 2; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(std::string("--config=").size());
    }
    if (path.empty()) return args;

    const tgc::RunManifest file = tgc::RunManifest::read_file(path);
    std::vector<std::string> inject;
    for (const auto& [key, value] : file.entries()) {
        const std::string flag = "--" + key;
        bool given = false;
        for (std::size_t i = 2; i < args.size() && !given; ++i)
            given = args[i] == flag || args[i].rfind(flag + "=", 0) == 0;
        if (!given) {
            inject.push_back(flag);
            inject.push_back(value);
        }
    }
    args.insert(args.begin() + 2, inject.begin(), inject.end());
    return args;
}

void write_labels_file(const std::string& path, const tgc::TemporalGraph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write label file: " + path);
    const auto labels = g.labels();
    for (tgc::NodeId v = 0; v < g.num_nodes(); ++v)
        out << g.external_id(v) << ' ' << labels[v] << '\n';
    out.flush();
    if (!out) throw std::runtime_error("failed writing label file: " + path);
}

void print_epoch_lines(const tgc::train::TrainReport& report) {
    for (std::size_t e = 0; e < report.epochs.size(); ++e) {
        const auto& s = report.epochs[e];
        std::cout << "epoch=" << e << " l_tem=" << format_value(s.temporal_loss)
                  << " l_node=" << format_value(s.node_loss)
                  << " l_batch=" << format_value(s.batch_loss)
                  << " total=" << format_value(s.total_loss)
                  << " wall_seconds=" << format_value(s.wall_seconds) << '\n';
    }
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
    tgc::synth::SynthConfig cfg;
    std::string out_graph = "graph.tsv";
    std::string out_labels = "labels.tsv";
    std::string manifest_path;
};

void run_generate(const GenerateArgs& a) {
    const auto start = Clock::now();
    const tgc::TemporalGraph g = tgc::synth::generate(a.cfg);

    {
        std::ofstream out(a.out_graph);
        if (!out) throw std::runtime_error("cannot write graph file: " + a.out_graph);
        g.serialize(out);
        out.flush();
        if (!out) throw std::runtime_error("failed writing graph file: " + a.out_graph);
    }
    write_labels_file(a.out_labels, g);

    tgc::RunManifest m;
    m.set("command", "generate");
    m.set("n", static_cast<std::uint64_t>(a.cfg.n));
    m.set("k", static_cast<std::int64_t>(a.cfg.k));
    m.set("events", static_cast<std::uint64_t>(a.cfg.n_events));
    m.set("p_in", a.cfg.p_in);
    m.set("recency_boost", a.cfg.recency_boost);
    m.set("horizon", a.cfg.horizon);
    m.set("seed", a.cfg.seed);
    m.set("out_graph", a.out_graph);
    m.set("out_labels", a.out_labels);
    m.set("graph_hash", tgc::fnv1a_file(a.out_graph));
    m.set("labels_hash", tgc::fnv1a_file(a.out_labels));
    m.set("wall_seconds", seconds_since(start));
    const std::string manifest_path =
        a.manifest_path.empty() ? a.out_graph + ".manifest" : a.manifest_path;
    m.write_file(manifest_path);

    std::cout << "wrote " << a.out_graph << " (" << g.num_nodes() << " nodes, "
              << g.num_interactions() << " interactions)\n";
    std::cout << "wrote " << a.out_labels << " (" << g.num_clusters() << " communities)\n";
    std::cout << "wrote " << manifest_path << '\n';
}

// ---------------------------------------------------------------------------
// pretrain

struct PretrainArgs {
    tgc::pretrain::WalkConfig cfg;
    std::string graph_path;
    std::string out = "features.tsv";
    std::string manifest_path;
};

void run_pretrain(const PretrainArgs& a) {
    const auto start = Clock::now();
    const tgc::TemporalGraph g = tgc::TemporalGraph::parse_file(a.graph_path);
    tgc::pretrain::PretrainReport report;
    const tgc::EmbeddingTable z0 = tgc::pretrain::pretrain_features(g, a.cfg, &report);
    tgc::save_features_file(a.out, z0, g.external_ids());

    tgc::RunManifest m;
    m.set("command", "pretrain");
    m.set("graph", a.graph_path);
    m.set("graph_hash", tgc::fnv1a_file(a.graph_path));
    m.set("dim", static_cast<std::uint64_t>(a.cfg.dim));
    m.set("walk_length", static_cast<std::uint64_t>(a.cfg.walk_length));
    m.set("walks_per_node", static_cast<std::uint64_t>(a.cfg.walks_per_node));
    m.set("return_param", a.cfg.return_param);
    m.set("inout_param", a.cfg.inout_param);
    m.set("window", static_cast<std::uint64_t>(a.cfg.window));
    m.set("n_neg", static_cast<std::int64_t>(a.cfg.neg_samples));
    m.set("epochs", static_cast<std::int64_t>(a.cfg.epochs));
    m.set("seed", a.cfg.seed);
    m.set("out", a.out);
    m.set("features_hash", tgc::fnv1a_file(a.out));
    m.set("untrained_nodes", static_cast<std::uint64_t>(report.untrained_nodes.size()));
    m.set("wall_seconds", seconds_since(start));
    const std::string manifest_path =
        a.manifest_path.empty() ? a.out + ".manifest" : a.manifest_path;
    m.write_file(manifest_path);

    std::cout << "pretrained " << g.num_nodes() << " nodes at dim " << a.cfg.dim
              << " (untrained nodes: " << report.untrained_nodes.size() << ")\n";
    std::cout << "wrote " << a.out << '\n';
    std::cout << "wrote " << manifest_path << '\n';
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
    TrainFlags flags;
    std::string graph_path;
    std::string features_path;
    std::string labels_path;
    std::string out = "checkpoint.tsv";
    std::string manifest_path;
};

void run_train(TrainArgs& a) {
    const auto start = Clock::now();
    tgc::TemporalGraph g = tgc::TemporalGraph::parse_file(a.graph_path);
    if (!a.labels_path.empty()) g.parse_labels_file(a.labels_path);
    const tgc::EmbeddingTable z0 = tgc::load_features_file(a.features_path, g);
    a.flags.finalize(z0.dim());

    tgc::RunManifest config;
    a.flags.describe(config);

    tgc::train::TrainReport report;
    if (a.flags.cfg.epochs == 0) {
        // Degenerate run: the checkpoint is the input feature table.
        a.flags.cfg.validate();
        tgc::save_features_file(a.out, z0, g.external_ids());
        std::cout << "no training epochs requested; checkpoint equals input features\n";
    } else {
        const tgc::train::TrainResult result = tgc::train::train(g, z0, a.flags.cfg);
        report = result.report;
        tgc::save_features_file(a.out, result.embeddings, g.external_ids());
        print_epoch_lines(report);
        std::cout << "final: total="
                  << format_value(report.epochs.back().total_loss)
                  << " peak_incremental_bytes=" << report.peak_incremental_bytes << '\n';
    }

    tgc::RunManifest m;
    m.set("command", "train");
    m.set("graph", a.graph_path);
    m.set("graph_hash", tgc::fnv1a_file(a.graph_path));
    m.set("features", a.features_path);
    m.set("features_hash", tgc::fnv1a_file(a.features_path));
    if (!a.labels_path.empty()) {
        m.set("labels", a.labels_path);
        m.set("labels_hash", tgc::fnv1a_file(a.labels_path));
    }
    for (const auto& [k, v] : config.entries()) m.set(k, v);
    m.set("config_hash", config_hash(config));
    m.set("out", a.out);
    m.set("checkpoint_hash", tgc::fnv1a_file(a.out));
    m.set("peak_incremental_bytes",
          static_cast<std::uint64_t>(report.peak_incremental_bytes));
    m.set("wall_seconds", seconds_since(start));
    const std::string manifest_path =
        a.manifest_path.empty() ? a.out + ".manifest" : a.manifest_path;
    m.write_file(manifest_path);

    std::cout << "wrote " << a.out << '\n';
    std::cout << "wrote " << manifest_path << '\n';
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
    std::string graph_path;
    std::string features_path;
    std::string labels_path;
    std::string manifest_path = "eval.manifest";
    int cluster_k = 0;
    int n_init = 10;
    std::uint64_t seed = 0;
};

void run_eval(const EvalArgs& a) {
    const auto start = Clock::now();
    tgc::TemporalGraph g = tgc::TemporalGraph::parse_file(a.graph_path);
    g.parse_labels_file(a.labels_path);
    const tgc::EmbeddingTable z = tgc::load_features_file(a.features_path, g);

    int k = g.num_clusters();
    if (a.cluster_k > 0) {
        if (a.cluster_k != g.num_clusters())
            std::cerr << "warning: requested cluster count " << a.cluster_k
                      << " differs from the " << g.num_clusters()
                      << " label classes; using " << a.cluster_k << '\n';
        k = a.cluster_k;
    }

    const tgc::metrics::KMeansResult km =
        tgc::metrics::kmeans(z, k, tgc::derive_seed(a.seed, kStreamEvalKmeans), a.n_init);
    tgc::metrics::Partition truth;
    truth.assignment.assign(g.labels().begin(), g.labels().end());
    truth.num_clusters = g.num_clusters();
    const tgc::metrics::MetricsReport report = tgc::metrics::evaluate(km.partition, truth);

    std::cout << "acc=" << format_value(report.acc) << " nmi=" << format_value(report.nmi)
              << " ari=" << format_value(report.ari) << " f1=" << format_value(report.f1)
              << '\n';
    std::printf("  %-8s %s\n", "metric", "value");
    std::printf("  %-8s %.6f\n", "acc", report.acc);
    std::printf("  %-8s %.6f\n", "nmi", report.nmi);
    std::printf("  %-8s %.6f\n", "ari", report.ari);
    std::printf("  %-8s %.6f\n", "f1", report.f1);

    tgc::RunManifest m;
    m.set("command", "eval");
    m.set("graph", a.graph_path);
    m.set("graph_hash", tgc::fnv1a_file(a.graph_path));
    m.set("features", a.features_path);
    m.set("features_hash", tgc::fnv1a_file(a.features_path));
    m.set("labels", a.labels_path);
    m.set("labels_hash", tgc::fnv1a_file(a.labels_path));
    m.set("cluster_k", static_cast<std::int64_t>(k));
    m.set("n_init", static_cast<std::int64_t>(a.n_init));
    m.set("seed", a.seed);
    m.set("nmi_normalization", "arithmetic_mean_of_entropies");
    m.set("acc", report.acc);
    m.set("nmi", report.nmi);
    m.set("ari", report.ari);
    m.set("f1", report.f1);
    m.set("wall_seconds", seconds_since(start));
    m.write_file(a.manifest_path);
}

// ---------------------------------------------------------------------------
// sweep-batch

struct SweepArgs {
    TrainFlags flags;
    std::string graph_path;
    std::string features_path;
    std::string labels_path;
    std::string manifest_path = "sweep.manifest";
    std::vector<std::size_t> sizes = {1, 64, 4096};
};

void run_sweep(SweepArgs& a) {
    const auto start = Clock::now();
    tgc::TemporalGraph g = tgc::TemporalGraph::parse_file(a.graph_path);
    if (!a.labels_path.empty()) g.parse_labels_file(a.labels_path);
    const tgc::EmbeddingTable z0 = tgc::load_features_file(a.features_path, g);
    a.flags.finalize(z0.dim());

    const std::vector<tgc::train::TrainReport> reports =
        tgc::train::sweep_batch_size(g, z0, a.flags.cfg, a.sizes);

    tgc::RunManifest m;
    m.set("command", "sweep-batch");
    m.set("graph", a.graph_path);
    m.set("graph_hash", tgc::fnv1a_file(a.graph_path));
    m.set("features", a.features_path);
    m.set("features_hash", tgc::fnv1a_file(a.features_path));
    tgc::RunManifest config;
    a.flags.describe(config);
    for (const auto& [k, v] : config.entries()) m.set(k, v);
    m.set("config_hash", config_hash(config));

    for (std::size_t i = 0; i < a.sizes.size(); ++i) {
        const auto& r = reports[i];
        const auto& s = r.epochs.back();
        std::cout << "batch_size=" << a.sizes[i]
                  << " wall_seconds=" << format_value(s.wall_seconds)
                  << " peak_incremental_bytes=" << r.peak_incremental_bytes
                  << " total_loss=" << format_value(s.total_loss) << '\n';
        const std::string prefix = "sweep." + std::to_string(a.sizes[i]);
        m.set(prefix + ".wall_seconds", s.wall_seconds);
        m.set(prefix + ".peak_incremental_bytes",
              static_cast<std::uint64_t>(r.peak_incremental_bytes));
        m.set(prefix + ".total_loss", s.total_loss);
    }
    m.set("wall_seconds", seconds_since(start));
    m.write_file(a.manifest_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Temporal graph clustering pipeline"};
    app.require_subcommand(1);
    std::string config_path;  // shared --config slot; one subcommand runs per invocation

    GenerateArgs gen;
    CLI::App* cmd_gen = app.add_subcommand(
        "generate", "Generate a planted-partition interaction stream with labels");
    cmd_gen->add_option("--config", config_path,
                        "read key=value defaults from a file; explicit flags win");
    cmd_gen->add_option("--n", gen.cfg.n, "node count")->required();
    cmd_gen->add_option("--k", gen.cfg.k, "community count")->required();
    cmd_gen->add_option("--events", gen.cfg.n_events, "interaction count")->required();
    cmd_gen->add_option("--p-in", gen.cfg.p_in, "intra-community event probability")
        ->capture_default_str();
    cmd_gen->add_option("--recency-boost", gen.cfg.recency_boost,
                        "odds of repeating a recent pair")
        ->capture_default_str();
    cmd_gen->add_option("--horizon", gen.cfg.horizon, "time horizon")->capture_default_str();
    cmd_gen->add_option("--seed", gen.cfg.seed, "seed for all randomness")
        ->capture_default_str();
    cmd_gen->add_option("--out-graph", gen.out_graph, "interaction file path")
        ->capture_default_str();
    cmd_gen->add_option("--out-labels", gen.out_labels, "label file path")
        ->capture_default_str();
    cmd_gen->add_option("--manifest", gen.manifest_path,
                        "manifest path (default: <out-graph>.manifest)");
    cmd_gen->callback([&] { run_generate(gen); });

    PretrainArgs pre;
    CLI::App* cmd_pre = app.add_subcommand(
        "pretrain", "Learn initial features with biased random walks and skip-gram");
    cmd_pre->add_option("--config", config_path,
                        "read key=value defaults from a file; explicit flags win");
    cmd_pre->add_option("--graph", pre.graph_path, "interaction file")->required();
    cmd_pre->add_option("--dim", pre.cfg.dim, "embedding dimension")->capture_default_str();
    cmd_pre->add_option("--walk-length", pre.cfg.walk_length, "steps per walk")
        ->capture_default_str();
    cmd_pre->add_option("--walks-per-node", pre.cfg.walks_per_node, "walks per start node")
        ->capture_default_str();
    cmd_pre->add_option("--return-param", pre.cfg.return_param, "walk return bias p")
        ->capture_default_str();
    cmd_pre->add_option("--inout-param", pre.cfg.inout_param, "walk in-out bias q")
        ->capture_default_str();
    cmd_pre->add_option("--window", pre.cfg.window, "skip-gram context window")
        ->capture_default_str();
    cmd_pre->add_option("--n-neg", pre.cfg.neg_samples, "negative samples per pair")
        ->capture_default_str();
    cmd_pre->add_option("--epochs", pre.cfg.epochs, "skip-gram epochs")
        ->capture_default_str();
    cmd_pre->add_option("--seed", pre.cfg.seed, "seed for all randomness")
        ->capture_default_str();
    cmd_pre->add_option("--out", pre.out, "feature file path")->capture_default_str();
    cmd_pre->add_option("--manifest", pre.manifest_path,
                        "manifest path (default: <out>.manifest)");
    cmd_pre->callback([&] { run_pretrain(pre); });

    TrainArgs tr;
    CLI::App* cmd_tr = app.add_subcommand(
        "train", "Train embeddings on the temporal + clustering objective");
    cmd_tr->add_option("--config", config_path,
                        "read key=value defaults from a file; explicit flags win");
    cmd_tr->add_option("--graph", tr.graph_path, "interaction file")->required();
    cmd_tr->add_option("--features", tr.features_path, "initial feature file")->required();
    cmd_tr->add_option("--labels", tr.labels_path,
                       "label file (supplies the cluster count unless --cluster-k is set)");
    cmd_tr->add_option("--out", tr.out, "checkpoint path")->capture_default_str();
    cmd_tr->add_option("--manifest", tr.manifest_path,
                       "manifest path (default: <out>.manifest)");
    tr.flags.add_options(cmd_tr);
    cmd_tr->callback([&] { run_train(tr); });

    EvalArgs ev;
    CLI::App* cmd_ev = app.add_subcommand(
        "eval", "Cluster an embedding file with k-means and score it against labels");
    cmd_ev->add_option("--config", config_path,
                        "read key=value defaults from a file; explicit flags win");
    cmd_ev->add_option("--graph", ev.graph_path, "interaction file")->required();
    cmd_ev->add_option("--features", ev.features_path, "embedding file to evaluate")
        ->required();
    cmd_ev->add_option("--labels", ev.labels_path, "ground-truth label file")->required();
    cmd_ev->add_option("--cluster-k", ev.cluster_k,
                       "cluster count (0: derive from labels)")
        ->capture_default_str();
    cmd_ev->add_option("--n-init", ev.n_init, "k-means restarts")->capture_default_str();
    cmd_ev->add_option("--seed", ev.seed, "seed for all randomness")->capture_default_str();
    cmd_ev->add_option("--manifest", ev.manifest_path, "manifest path")
        ->capture_default_str();
    cmd_ev->callback([&] { run_eval(ev); });

    SweepArgs sw;
    CLI::App* cmd_sw = app.add_subcommand(
        "sweep-batch", "Train one epoch per batch size and report time/memory");
    cmd_sw->add_option("--config", config_path,
                        "read key=value defaults from a file; explicit flags win");
    cmd_sw->add_option("--graph", sw.graph_path, "interaction file")->required();
    cmd_sw->add_option("--features", sw.features_path, "initial feature file")->required();
    cmd_sw->add_option("--labels", sw.labels_path,
                       "label file (supplies the cluster count unless --cluster-k is set)");
    cmd_sw->add_option("--sizes", sw.sizes, "batch sizes to sweep")
        ->delimiter(',')
        ->capture_default_str();
    cmd_sw->add_option("--manifest", sw.manifest_path, "manifest path")
        ->capture_default_str();
    sw.flags.add_options(cmd_sw);
    cmd_sw->callback([&] { run_sweep(sw); });

    try {
        const std::vector<std::string> args = expand_config_args(argc, argv);
        std::vector<const char*> ptrs;
        ptrs.reserve(args.size());
        for (const auto& s : args) ptrs.push_back(s.c_str());
        app.parse(static_cast<int>(ptrs.size()), ptrs.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
