#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "osl/model_json.hpp"

namespace {

using namespace osl;
using namespace osl::cli;

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot open '" + path + "' for writing");
    }
    out << text;
}

LoadOptions load_options(const std::string& labels, const std::string& noise) {
    LoadOptions o;
    if (labels == "yes") {
        o.label_column = LabelColumn::present;
    } else if (labels == "no") {
        o.label_column = LabelColumn::absent;
    }
    if (!noise.empty()) {
        o.noise_label = noise;
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outlier-robust single-linkage clustering and experiment harness"};
    app.require_subcommand(1);

    // cluster
    ClusterArgs cluster;
    std::string cluster_algo = "osl";
    std::string cluster_out;
    std::string cluster_labels = "auto";
    std::string cluster_noise;
    auto* c = app.add_subcommand("cluster", "Cluster a point file and print labels, radius and selection trace");
    c->add_option("file", cluster.input, "CSV or whitespace separated points")->required();
    c->add_option("-m,--m", cluster.m, "Number of clusters to keep")->required();
    c->add_option("--algo", cluster_algo, "osl or sl")->check(CLI::IsMember({"osl", "sl"}));
    c->add_option("--out", cluster_out, "Output JSON file (default stdout)");
    c->add_option("--labels", cluster_labels, "Last column holds labels: auto, yes, no")
        ->check(CLI::IsMember({"auto", "yes", "no"}));
    c->add_option("--noise-label", cluster_noise, "Label token meaning outlier, besides 0");

    // risk
    std::string risk_config;
    std::optional<std::size_t> risk_threads;
    std::string risk_out;
    auto* r = app.add_subcommand("risk", "Monte Carlo clustering risk over a grid of models and sample sizes");
    r->add_option("--config", risk_config, "Campaign JSON")->required();
    r->add_option("--threads", risk_threads, "Worker threads (default: OSL_THREADS, config, hardware)");
    r->add_option("--out", risk_out, "Output CSV (default: config 'output', else stdout)");

    // bench
    BenchArgs bench;
    std::string bench_algos = "osl";
    std::string bench_out;
    std::string bench_reps_out;
    std::string bench_timing_out;
    std::string bench_noise;
    auto* b = app.add_subcommand("bench", "Subsampling ARI benchmark on a labeled point file");
    b->add_option("file", bench.input, "Labeled point file (last column = truth)")->required();
    b->add_option("-m,--m", bench.m, "Number of clusters")->required();
    b->add_option("--algo", bench_algos, "Comma separated list of osl, sl");
    b->add_option("-B,--B", bench.replications, "Replications");
    b->add_option("--fraction", bench.fraction, "Subsample fraction in (0, 1]");
    b->add_option("--seed", bench.seed, "Base seed");
    b->add_option("--noise-label", bench_noise, "Label token meaning outlier, besides 0");
    b->add_option("--out", bench_out, "Summary CSV (default stdout)");
    b->add_option("--replications-out", bench_reps_out, "Per-replication ARI CSV");
    b->add_option("--timing-out", bench_timing_out, "Wall-clock log (default stderr)");

    // bound
    std::string bound_params;
    std::string bound_grid;
    std::string bound_out;
    auto* bd = app.add_subcommand("bound", "Evaluate the risk upper bound on a radius grid");
    bd->add_option("--params", bound_params, "Bound parameter JSON")->required();
    bd->add_option("--grid", bound_grid, "lo:hi:steps")->required();
    bd->add_option("--out", bound_out, "Output CSV (default stdout)");

    // generate
    GenerateArgs gen;
    std::optional<double> gen_eps;
    std::string gen_delta = "easy";
    std::string gen_out;
    std::string gen_model_out;
    auto* g = app.add_subcommand("generate", "Sample a labeled dataset from a mixture model");
    g->add_option("--model", gen.model, "Built-in model name or model JSON file")->required();
    g->add_option("--n", gen.n, "Sample size")->required();
    g->add_option("--eps", gen_eps, "Outlier proportion");
    g->add_option("--seed", gen.seed, "Seed");
    g->add_option("--delta-case", gen_delta, "easy or tricky")->check(CLI::IsMember({"easy", "tricky"}));
    g->add_option("--dim", gen.params.ambient_dim, "Ambient dimension (sine_highdim)");
    g->add_option("--sigma2", gen.params.sigma2, "Noise variance (gaussian_sine)");
    g->add_option("--rho", gen.params.rho, "Noise correlation (gaussian_sine)");
    g->add_option("--out", gen_out, "Output CSV (default stdout)");
    g->add_option("--model-out", gen_model_out, "Also write the model as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    return run_guarded(
        [&] {
            if (*c) {
                cluster.algorithm = parse_algorithm(cluster_algo);
                cluster.load = load_options(cluster_labels, cluster_noise);
                write_text(cluster_out, cmd_cluster(cluster).dump(2) + "\n");
            } else if (*r) {
                const auto config = load_risk_config(risk_config);
                const auto threads = resolve_threads(risk_threads, config.threads);
                std::string out_path = risk_out;
                if (out_path.empty() && config.output) {
                    out_path = *config.output;
                }
                std::ostringstream csv;
                cmd_risk(config, threads, csv);
                write_text(out_path, csv.str());
            } else if (*b) {
                bench.algorithms.clear();
                std::stringstream ss(bench_algos);
                for (std::string item; std::getline(ss, item, ',');) {
                    bench.algorithms.push_back(parse_algorithm(item));
                }
                bench.load = load_options("yes", bench_noise);
                const auto res = cmd_bench(bench);
                write_text(bench_out, res.summary_csv);
                if (!bench_reps_out.empty()) {
                    write_text(bench_reps_out, res.replications_csv);
                }
                if (bench_timing_out.empty()) {
                    std::cerr << res.timing_log;
                } else {
                    write_text(bench_timing_out, res.timing_log);
                }
            } else if (*bd) {
                std::ifstream in(bound_params);
                if (!in) {
                    throw InputError("cannot open '" + bound_params + "'");
                }
                const auto params = parse_bound_params(nlohmann::json::parse(in));
                const auto report = cmd_bound(params, parse_grid(bound_grid));
                write_text(bound_out, report.csv);
                std::cerr << report.summary;
            } else if (*g) {
                gen.epsilon = gen_eps;
                gen.params.delta_case = parse_delta_case(gen_delta);
                const auto res = cmd_generate(gen);
                std::ostringstream csv;
                write_points_csv(csv, res.sample.points, &res.sample.truth);
                write_text(gen_out, csv.str());
                if (!gen_model_out.empty()) {
                    write_text(gen_model_out, nlohmann::json(res.model).dump(2) + "\n");
                }
            }
        },
        std::cerr);
}
