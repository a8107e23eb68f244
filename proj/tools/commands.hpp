#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "osl/datagen.hpp"
#include "osl/evaluation.hpp"
#include "osl/theory.hpp"

namespace osl::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kPreconditionError = 3 };

// Malformed files, bad flags or config documents. Maps to exit code 2.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// The input is well-formed but the algorithm cannot run on it (m = 0,
// m > n, too few distinct points for SL). Maps to exit code 3.
class PreconditionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Point files
// ---------------------------------------------------------------------------

enum class LabelColumn { detect, present, absent };

struct LoadOptions {
    LabelColumn label_column = LabelColumn::detect;
    // Extra label token treated as noise, in addition to the literal 0.
    std::optional<std::string> noise_label;
};

struct LoadedPoints {
    PointSet points;
    std::vector<std::size_t> truth;  // empty unless a label column was read
    bool has_labels = false;
    std::vector<std::string> header;  // empty if the file has none
};

// Reads comma, semicolon or whitespace separated numeric rows. A first line
// with any non-numeric cell is taken as a header. Blank lines and lines
// starting with '#' are skipped. Throws InputError naming the line.
LoadedPoints load_points(std::istream& in, const LoadOptions& opts = {});
LoadedPoints load_points_file(const std::string& path, const LoadOptions& opts = {});

// Writes points (and labels if given) as CSV with header x1..xD[,label].
// Coordinates use the shortest round-trip representation.
void write_points_csv(std::ostream& out, const PointSet& points, const std::vector<std::size_t>* labels);

// ---------------------------------------------------------------------------
// Commands. Each returns normally on success and throws InputError,
// PreconditionError or a library exception otherwise; `run_guarded`
// turns the exception into a process exit code.
// ---------------------------------------------------------------------------

struct ClusterArgs {
    std::string input;
    std::size_t m = 0;
    Algorithm algorithm = Algorithm::osl;
    LoadOptions load;
};

nlohmann::json cmd_cluster(const ClusterArgs& args);

/// Campaign description for `risk`; see README for the field list.
struct RiskConfig {
    std::string scenario;                  // built-in name, or "custom" with `model`
    std::optional<MixtureModel> model;     // explicit model document
    std::vector<std::string> algorithms;   // osl, sl, truth
    std::vector<DeltaCase> delta_cases;
    std::vector<std::size_t> ambient_dims;
    std::vector<double> sigma2s;
    std::vector<double> rhos;
    std::vector<std::size_t> ns;
    std::vector<double> epsilons;
    std::optional<std::size_t> m;          // defaults to the model's group count
    std::size_t replications = 1000;
    std::uint64_t seed = 0;
    std::optional<std::size_t> threads;
    std::optional<std::string> output;
};

/// `base_dir` resolves a relative "model_file" entry.
RiskConfig parse_risk_config(const nlohmann::json& j, const std::string& base_dir = ".");
RiskConfig load_risk_config(const std::string& path);

/// Writes the CSV table (header plus one row per grid cell) to `out`.
void cmd_risk(const RiskConfig& config, std::size_t threads, std::ostream& out);

struct BenchArgs {
    std::string input;
    std::size_t m = 0;
    std::vector<Algorithm> algorithms{Algorithm::osl};
    std::size_t replications = 1000;
    double fraction = 0.75;
    std::uint64_t seed = 0;
    LoadOptions load;
};

struct BenchOutput {
    std::string summary_csv;      // deterministic
    std::string replications_csv; // deterministic, one row per replication
    std::string timing_log;       // wall-clock figures, not reproducible
};

BenchOutput cmd_bench(const BenchArgs& args);

struct Grid {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t steps = 0;
};

/// Parses "lo:hi:steps".
Grid parse_grid(const std::string& text);

/// Bound parameters from JSON. Accepts either the direct complexity
/// constants (a, b, gamma_bar) or the model constants they derive from
/// (weights or gamma_star/gamma_sup, kappa0, kappa_sup, kappa_c).
theory::BoundParams parse_bound_params(const nlohmann::json& j);

struct BoundReport {
    std::string csv;      // one row per grid radius
    std::string summary;  // human-readable minimizer line
};

BoundReport cmd_bound(const theory::BoundParams& params, const Grid& grid);

struct GenerateArgs {
    std::string model;  // built-in scenario name or path to a model JSON file
    ScenarioParams params;
    std::optional<double> epsilon;  // overrides the model file's epsilon
    std::size_t n = 0;
    std::uint64_t seed = 0;
};

struct Generated {
    MixtureModel model;
    LabeledSample sample;
};

Generated cmd_generate(const GenerateArgs& args);

/// Runs `body`, printing any error to `err` and returning the exit code.
int run_guarded(const std::function<void()>& body, std::ostream& err);

/// Thread count: explicit flag, then OSL_THREADS, then `fallback`, then the
/// hardware concurrency.
std::size_t resolve_threads(std::optional<std::size_t> flag, std::optional<std::size_t> fallback);

}  // namespace osl::cli
