#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "osl/datagen.hpp"
#include "osl/selectors.hpp"

namespace osl {

enum class Algorithm { osl, sl };

Algorithm parse_algorithm(const std::string& s);
std::string to_string(Algorithm a);

/// Runs the chosen radius rule and labels the top m clusters.
Clustering run_algorithm(Algorithm a, const PointSet& points, std::size_t m);

/// Maps a labeled sample and a target m to per-point labels in {0..m}.
/// This is the injection point for harness tests.
using Clusterer = std::function<std::vector<std::size_t>(const LabeledSample&, std::size_t m)>;

Clusterer clusterer_for(Algorithm a);

/// True iff some injective map sends every true group (labels >= 1) to one
/// predicted cluster label >= 1 containing all of that group's points.
/// Points with truth 0 are ignored; empty groups are trivially recovered.
/// Throws InvalidInput on a length mismatch.
bool exact_recovery(std::span<const std::size_t> truth, std::span<const std::size_t> predicted);

/// Hubert-Arabie adjusted Rand index. Labels are arbitrary class ids; the
/// outlier label 0 is an ordinary class. Returns 1 when the chance-corrected
/// denominator vanishes (both partitions trivial and identical).
double adjusted_rand_index(std::span<const std::size_t> a, std::span<const std::size_t> b);

struct RiskEstimate {
    std::size_t replications = 0;
    std::size_t failures = 0;
    double risk = 0.0;
    double standard_error = 0.0;
};

RiskEstimate make_risk_estimate(std::size_t failures, std::size_t replications);

/// Raised when a replication throws; carries the replication index.
class ReplicationError : public std::runtime_error {
  public:
    ReplicationError(std::size_t replication, const std::string& what)
        : std::runtime_error("replication " + std::to_string(replication) + ": " + what), replication_{replication} {}
    std::size_t replication() const noexcept { return replication_; }

  private:
    std::size_t replication_;
};

struct RiskOptions {
    std::size_t replications = 1000;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
};

/// Monte Carlo clustering risk: replication b samples n points from
/// stream(seed, b), clusters them and scores exact recovery. The result is
/// independent of the thread count.
RiskEstimate estimate_risk(const MixtureModel& model, const Clusterer& clusterer, std::size_t m, std::size_t n,
                           const RiskOptions& opts);
RiskEstimate estimate_risk(const MixtureModel& model, Algorithm algorithm, std::size_t m, std::size_t n,
                           const RiskOptions& opts);

struct AriStats {
    std::vector<double> ari;      // one entry per completed replication
    std::vector<double> seconds;  // wall-clock of the clustering call
    std::vector<std::size_t> replication_index;
    std::size_t skipped = 0;      // subsample smaller than m
    std::size_t subsample_size = 0;
    double mean = 0.0;
    double sd = 0.0;
    double standard_error = 0.0;
    double mean_seconds = 0.0;
};

struct BenchOptions {
    std::size_t replications = 1000;
    double fraction = 0.75;
    std::uint64_t seed = 0;
};

/// Repeatedly subsamples floor(fraction * n) points without replacement,
/// clusters them and scores ARI against the subsampled truth.
AriStats subsample_bench(const LabeledSample& dataset, const Clusterer& clusterer, std::size_t m,
                         const BenchOptions& opts);

/// Sorted sample of k distinct indices from [0, n) (partial Fisher-Yates).
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Philox& rng);

}  // namespace osl
