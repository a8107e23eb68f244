#include "osl/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "osl/errors.hpp"

namespace osl {

Algorithm parse_algorithm(const std::string& s) {
    if (s == "osl") {
        return Algorithm::osl;
    }
    if (s == "sl") {
        return Algorithm::sl;
    }
    throw InvalidInput("unknown algorithm '" + s + "' (expected osl or sl)");
}

std::string to_string(Algorithm a) { return a == Algorithm::osl ? "osl" : "sl"; }

Clustering run_algorithm(Algorithm a, const PointSet& points, std::size_t m) {
    return a == Algorithm::osl ? cluster_osl(points, m) : cluster_sl(points, m);
}

Clusterer clusterer_for(Algorithm a) {
    return [a](const LabeledSample& s, std::size_t m) { return run_algorithm(a, s.points, m).labels; };
}

bool exact_recovery(std::span<const std::size_t> truth, std::span<const std::size_t> predicted) {
    if (truth.size() != predicted.size()) {
        throw InvalidInput("truth and prediction have different lengths");
    }
    constexpr std::size_t unseen = static_cast<std::size_t>(-1);
    std::unordered_map<std::size_t, std::size_t> target;  // true group -> predicted label
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] == 0) {
            continue;
        }
        if (predicted[i] == 0) {
            return false;
        }
        auto [it, inserted] = target.try_emplace(truth[i], unseen);
        if (inserted) {
            it->second = predicted[i];
        } else if (it->second != predicted[i]) {
            return false;
        }
    }
    std::vector<std::size_t> used;
    used.reserve(target.size());
    for (const auto& [group, label] : target) {
        used.push_back(label);
    }
    std::sort(used.begin(), used.end());
    return std::adjacent_find(used.begin(), used.end()) == used.end();
}

namespace {

std::vector<std::size_t> compress(std::span<const std::size_t> labels, std::size_t& classes) {
    std::unordered_map<std::size_t, std::size_t> ids;
    std::vector<std::size_t> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out[i] = ids.try_emplace(labels[i], ids.size()).first->second;
    }
    classes = ids.size();
    return out;
}

double choose2(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace

double adjusted_rand_index(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    if (a.size() != b.size()) {
        throw InvalidInput("label vectors have different lengths");
    }
    std::size_t ka = 0;
    std::size_t kb = 0;
    const auto ca = compress(a, ka);
    const auto cb = compress(b, kb);

    std::vector<double> table(ka * kb, 0.0);
    std::vector<double> row(ka, 0.0);
    std::vector<double> col(kb, 0.0);
    for (std::size_t i = 0; i < ca.size(); ++i) {
        table[ca[i] * kb + cb[i]] += 1.0;
        row[ca[i]] += 1.0;
        col[cb[i]] += 1.0;
    }
    double index = 0.0;
    for (double c : table) {
        index += choose2(c);
    }
    double sum_a = 0.0;
    for (double r : row) {
        sum_a += choose2(r);
    }
    double sum_b = 0.0;
    for (double c : col) {
        sum_b += choose2(c);
    }
    const double total = choose2(static_cast<double>(a.size()));
    const double expected = total > 0.0 ? sum_a * sum_b / total : 0.0;
    const double max_index = 0.5 * (sum_a + sum_b);
    if (max_index == expected) {
        return 1.0;
    }
    return (index - expected) / (max_index - expected);
}

RiskEstimate make_risk_estimate(std::size_t failures, std::size_t replications) {
    RiskEstimate r;
    r.replications = replications;
    r.failures = failures;
    r.risk = replications == 0 ? 0.0 : static_cast<double>(failures) / static_cast<double>(replications);
    r.standard_error = replications == 0 ? 0.0 : std::sqrt(r.risk * (1.0 - r.risk) / static_cast<double>(replications));
    return r;
}

RiskEstimate estimate_risk(const MixtureModel& model, const Clusterer& clusterer, std::size_t m, std::size_t n,
                           const RiskOptions& opts) {
    if (opts.replications == 0) {
        throw InvalidInput("need at least one replication");
    }
    validate(model);
    const std::size_t reps = opts.replications;
    std::vector<char> failed(reps, 0);
    std::vector<std::string> errors(reps);
    std::vector<char> has_error(reps, 0);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t b = next++; b < reps; b = next++) {
            try {
                auto rng = stream(opts.seed, b);
                const auto data = sample(model, n, rng);
                const auto labels = clusterer(data, m);
                failed[b] = exact_recovery(data.truth, labels) ? 0 : 1;
            } catch (const std::exception& e) {
                has_error[b] = 1;
                errors[b] = e.what();
            }
        }
    };

    const std::size_t threads = std::clamp<std::size_t>(opts.threads, 1, reps);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    for (std::size_t b = 0; b < reps; ++b) {
        if (has_error[b]) {
            throw ReplicationError(b, errors[b]);
        }
    }
    const auto failures = static_cast<std::size_t>(std::count(failed.begin(), failed.end(), 1));
    return make_risk_estimate(failures, reps);
}

RiskEstimate estimate_risk(const MixtureModel& model, Algorithm algorithm, std::size_t m, std::size_t n,
                           const RiskOptions& opts) {
    return estimate_risk(model, clusterer_for(algorithm), m, n, opts);
}

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Philox& rng) {
    if (k > n) {
        throw InvalidInput("cannot draw more items than the population holds");
    }
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

AriStats subsample_bench(const LabeledSample& dataset, const Clusterer& clusterer, std::size_t m,
                         const BenchOptions& opts) {
    if (!(opts.fraction > 0.0 && opts.fraction <= 1.0)) {
        throw InvalidInput("subsample fraction must lie in (0, 1]");
    }
    const std::size_t n = dataset.points.size();
    AriStats stats;
    stats.subsample_size = static_cast<std::size_t>(std::floor(opts.fraction * static_cast<double>(n)));

    for (std::size_t b = 0; b < opts.replications; ++b) {
        auto rng = stream(opts.seed, b);
        if (stats.subsample_size < std::max<std::size_t>(m, 1)) {
            ++stats.skipped;
            continue;
        }
        const auto idx = sample_without_replacement(n, stats.subsample_size, rng);
        LabeledSample sub{dataset.points.subset(idx), {}};
        sub.truth.reserve(idx.size());
        for (auto i : idx) {
            sub.truth.push_back(dataset.truth[i]);
        }
        const auto start = std::chrono::steady_clock::now();
        const auto labels = clusterer(sub, m);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        stats.ari.push_back(adjusted_rand_index(sub.truth, labels));
        stats.seconds.push_back(elapsed.count());
        stats.replication_index.push_back(b);
    }

    const auto k = static_cast<double>(stats.ari.size());
    if (k > 0) {
        stats.mean = std::accumulate(stats.ari.begin(), stats.ari.end(), 0.0) / k;
        double ss = 0.0;
        for (double v : stats.ari) {
            ss += (v - stats.mean) * (v - stats.mean);
        }
        stats.sd = k > 1 ? std::sqrt(ss / (k - 1.0)) : 0.0;
        stats.standard_error = stats.sd / std::sqrt(k);
        stats.mean_seconds = std::accumulate(stats.seconds.begin(), stats.seconds.end(), 0.0) / k;
    }
    return stats;
}

}  // namespace osl
