#include "commands.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "osl/errors.hpp"
#include "osl/linkage.hpp"
#include "osl/model_json.hpp"
#include "osl/selectors.hpp"

namespace osl::cli {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

std::string trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    if (line.find_first_of(",;") != std::string::npos) {
        std::string cell;
        for (char ch : line) {
            if (ch == ',' || ch == ';') {
                cells.push_back(trim(cell));
                cell.clear();
            } else {
                cell.push_back(ch);
            }
        }
        cells.push_back(trim(cell));
    } else {
        std::istringstream ss(line);
        std::string cell;
        while (ss >> cell) {
            cells.push_back(cell);
        }
    }
    return cells;
}

std::optional<double> parse_number(std::string_view s) {
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return std::nullopt;
    }
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

bool is_integral(const std::optional<double>& v) {
    return v && std::isfinite(*v) && std::floor(*v) == *v;
}

bool is_label_name(const std::string& name) {
    static const std::set<std::string> names{"label", "labels", "class", "cluster", "truth", "target", "group"};
    return names.count(lower(name)) > 0;
}

std::string line_prefix(std::size_t line) { return "line " + std::to_string(line) + ": "; }

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Point files
// ---------------------------------------------------------------------------

LoadedPoints load_points(std::istream& in, const LoadOptions& opts) {
    struct Row {
        std::size_t line;
        std::vector<std::string> cells;
    };
    auto is_noise_token = [&](const std::string& cell) { return opts.noise_label && cell == *opts.noise_label; };

    LoadedPoints result;
    std::vector<Row> rows;
    std::string line;
    std::size_t lineno = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        auto cells = split_cells(t);
        if (rows.empty() && result.header.empty()) {
            bool numeric = true;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                const bool last = c + 1 == cells.size();
                if (!parse_number(cells[c]) && !(last && is_noise_token(cells[c]))) {
                    numeric = false;
                }
            }
            if (!numeric) {
                result.header = std::move(cells);
                width = result.header.size();
                continue;
            }
        }
        if (width == 0) {
            width = cells.size();
        } else if (cells.size() != width) {
            throw InputError(line_prefix(lineno) + "expected " + std::to_string(width) + " columns, found " +
                             std::to_string(cells.size()));
        }
        rows.push_back({lineno, std::move(cells)});
    }
    if (rows.empty()) {
        throw InputError("no data rows");
    }

    bool labels = false;
    switch (opts.label_column) {
        case LabelColumn::present:
            labels = true;
            break;
        case LabelColumn::absent:
            labels = false;
            break;
        case LabelColumn::detect:
            if (width >= 2) {
                if (!result.header.empty()) {
                    labels = is_label_name(result.header.back());
                } else {
                    bool integral_last = true;
                    bool fractional_other = false;
                    for (const auto& r : rows) {
                        const auto& cell = r.cells.back();
                        integral_last = integral_last && (is_noise_token(cell) || is_integral(parse_number(cell)));
                        for (std::size_t c = 0; c + 1 < width; ++c) {
                            const auto v = parse_number(r.cells[c]);
                            fractional_other = fractional_other || (v && !is_integral(v));
                        }
                    }
                    labels = integral_last && fractional_other;
                }
            }
            break;
    }
    if (labels && width < 2) {
        throw InputError("a label column needs at least one coordinate column");
    }

    const std::size_t dim = labels ? width - 1 : width;
    std::vector<double> coords;
    coords.reserve(rows.size() * dim);
    std::map<long long, std::size_t> label_ids;
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < dim; ++c) {
            const auto v = parse_number(r.cells[c]);
            if (!v) {
                throw InputError(line_prefix(r.line) + "column " + std::to_string(c + 1) + " is not numeric ('" +
                                 r.cells[c] + "')");
            }
            if (!std::isfinite(*v)) {
                throw InputError(line_prefix(r.line) + "column " + std::to_string(c + 1) + " is not finite");
            }
            coords.push_back(*v);
        }
        if (labels) {
            const auto& cell = r.cells.back();
            if (is_noise_token(cell)) {
                result.truth.push_back(0);
                continue;
            }
            const auto v = parse_number(cell);
            if (!is_integral(v)) {
                throw InputError(line_prefix(r.line) + "label '" + cell + "' is not an integer");
            }
            const auto key = static_cast<long long>(*v);
            if (key == 0) {
                result.truth.push_back(0);
                continue;
            }
            const auto [it, inserted] = label_ids.try_emplace(key, label_ids.size() + 1);
            result.truth.push_back(it->second);
        }
    }
    result.points = PointSet(dim, std::move(coords));
    result.has_labels = labels;
    return result;
}

LoadedPoints load_points_file(const std::string& path, const LoadOptions& opts) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    try {
        return load_points(in, opts);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_points_csv(std::ostream& out, const PointSet& points, const std::vector<std::size_t>* labels) {
    for (std::size_t c = 0; c < points.dim(); ++c) {
        out << (c ? "," : "") << 'x' << (c + 1);
    }
    out << (labels ? ",label\n" : "\n");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto p = points[i];
        for (std::size_t c = 0; c < p.size(); ++c) {
            out << (c ? "," : "") << fmt(p[c]);
        }
        if (labels) {
            out << ',' << (*labels)[i];
        }
        out << '\n';
    }
}

// ---------------------------------------------------------------------------
// cluster
// ---------------------------------------------------------------------------

json cmd_cluster(const ClusterArgs& args) {
    const auto loaded = load_points_file(args.input, args.load);
    const auto& points = loaded.points;
    if (args.m == 0) {
        throw PreconditionError("m must be at least 1");
    }
    if (args.m > points.size()) {
        throw PreconditionError("m = " + std::to_string(args.m) + " exceeds the number of points (" +
                                std::to_string(points.size()) + ")");
    }
    const auto dendrogram = build_dendrogram(points);
    const auto trace = osl_select(dendrogram, args.m);
    double radius = trace.chosen_radius;
    if (args.algorithm == Algorithm::sl) {
        try {
            radius = sl_select(dendrogram, args.m);
        } catch (const NoValidRadius& e) {
            throw PreconditionError(e.what());
        }
    }
    const auto clustering = assign(dendrogram, radius, args.m);

    std::vector<std::size_t> sizes(args.m + 1, 0);
    for (auto l : clustering.labels) {
        ++sizes[l];
    }
    json levels = json::array();
    for (const auto& rec : trace.levels) {
        levels.push_back({{"radius", rec.radius}, {"clusters", rec.cluster_count}, {"mth_size", rec.mth_size}});
    }
    json j;
    j["algorithm"] = to_string(args.algorithm);
    j["m"] = args.m;
    j["n"] = points.size();
    j["chosen_radius"] = clustering.chosen_radius;
    j["labels"] = clustering.labels;
    j["cluster_sizes"] = std::vector<std::size_t>(sizes.begin() + 1, sizes.end());
    j["outliers"] = sizes[0];
    j["trace"] = {{"levels", levels}};
    if (args.algorithm == Algorithm::osl) {
        j["trace"]["argmax"] = trace.argmax;
    }
    return j;
}

// ---------------------------------------------------------------------------
// risk
// ---------------------------------------------------------------------------

namespace {

const std::set<std::string> kScenarios{"squares", "circles", "sine", "sine_highdim", "gaussian_sine", "example2"};

template <class T>
std::vector<T> scalar_or_list(const json& j, const char* key, std::vector<T> fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    const auto& v = j.at(key);
    std::vector<T> out;
    if (v.is_array()) {
        out = v.get<std::vector<T>>();
    } else {
        out.push_back(v.get<T>());
    }
    if (out.empty()) {
        throw InputError(std::string("'") + key + "' must not be empty");
    }
    return out;
}

Clusterer risk_clusterer(const std::string& name) {
    if (name == "truth") {
        return [](const LabeledSample& s, std::size_t) { return s.truth; };
    }
    if (name == "constant") {
        return [](const LabeledSample& s, std::size_t) { return std::vector<std::size_t>(s.truth.size(), 1); };
    }
    return clusterer_for(parse_algorithm(name));
}

}  // namespace

RiskConfig parse_risk_config(const json& j, const std::string& base_dir) {
    static const std::set<std::string> known{"scenario", "model",    "model_file", "algorithms",   "algorithm",
                                             "delta_case", "ambient_dim", "sigma2", "rho",        "n",
                                             "epsilon",  "m",        "replications", "B",          "seed",
                                             "threads",  "output"};
    if (!j.is_object()) {
        throw InputError("config must be a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) {
            throw InputError("unknown config key '" + key + "'");
        }
    }
    RiskConfig c;
    try {
        if (j.contains("model") && j.contains("model_file")) {
            throw InputError("give either 'model' or 'model_file', not both");
        }
        if (j.contains("model")) {
            c.model = model_from_json(j.at("model"));
        } else if (j.contains("model_file")) {
            std::filesystem::path p = j.at("model_file").get<std::string>();
            if (p.is_relative()) {
                p = std::filesystem::path(base_dir) / p;
            }
            c.model = model_from_json(read_json_file(p.string()));
        }
        if (c.model) {
            c.scenario = j.value("scenario", c.model->name.empty() ? std::string("custom") : c.model->name);
        } else {
            if (!j.contains("scenario")) {
                throw InputError("config needs 'scenario', 'model' or 'model_file'");
            }
            c.scenario = j.at("scenario").get<std::string>();
            if (!kScenarios.count(c.scenario)) {
                throw InputError("unknown scenario '" + c.scenario + "'");
            }
        }

        const char* algo_key = j.contains("algorithms") ? "algorithms" : "algorithm";
        c.algorithms = scalar_or_list<std::string>(j, algo_key, {"osl"});
        for (const auto& a : c.algorithms) {
            if (a != "osl" && a != "sl" && a != "truth" && a != "constant") {
                throw InputError("unknown algorithm '" + a + "'");
            }
        }
        for (const auto& s : scalar_or_list<std::string>(j, "delta_case", {"easy"})) {
            c.delta_cases.push_back(parse_delta_case(s));
        }
        c.ambient_dims = scalar_or_list<std::size_t>(j, "ambient_dim", {2});
        c.sigma2s = scalar_or_list<double>(j, "sigma2", {0.25});
        c.rhos = scalar_or_list<double>(j, "rho", {0.0});
        if (!j.contains("n")) {
            throw InputError("config needs 'n'");
        }
        c.ns = scalar_or_list<std::size_t>(j, "n", {});
        c.epsilons = scalar_or_list<double>(j, "epsilon", {c.model ? c.model->epsilon : 0.0});
        if (j.contains("m")) {
            c.m = j.at("m").get<std::size_t>();
        }
        if (j.contains("replications") && j.contains("B")) {
            throw InputError("give either 'replications' or 'B', not both");
        }
        c.replications = j.value("replications", j.value("B", std::size_t{1000}));
        c.seed = j.value("seed", std::uint64_t{0});
        if (j.contains("threads")) {
            c.threads = j.at("threads").get<std::size_t>();
        }
        if (j.contains("output")) {
            c.output = j.at("output").get<std::string>();
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("config: ") + e.what());
    } catch (const InvalidInput& e) {
        throw InputError(std::string("config: ") + e.what());
    }

    if (c.replications == 0) {
        throw InputError("config: replications must be at least 1");
    }
    if (c.m && *c.m == 0) {
        throw InputError("config: m must be at least 1");
    }
    for (auto n : c.ns) {
        if (n == 0) {
            throw InputError("config: every n must be at least 1");
        }
    }
    return c;
}

RiskConfig load_risk_config(const std::string& path) {
    const auto base = std::filesystem::path(path).parent_path();
    return parse_risk_config(read_json_file(path), base.empty() ? "." : base.string());
}

void cmd_risk(const RiskConfig& c, std::size_t threads, std::ostream& out) {
    const bool uses_delta = !c.model && (c.scenario == "squares" || c.scenario == "circles" || c.scenario == "sine");
    const bool uses_dim = !c.model && c.scenario == "sine_highdim";
    const bool uses_gauss = !c.model && c.scenario == "gaussian_sine";
    const std::vector<DeltaCase> deltas = uses_delta ? c.delta_cases : std::vector<DeltaCase>{DeltaCase::tricky};
    const std::vector<std::size_t> dims = uses_dim ? c.ambient_dims : std::vector<std::size_t>{0};
    const std::vector<double> sigmas = uses_gauss ? c.sigma2s : std::vector<double>{0.0};
    const std::vector<double> rhos = uses_gauss ? c.rhos : std::vector<double>{0.0};

    auto build = [&](DeltaCase dc, std::size_t dim, double s2, double rho, double eps) {
        if (c.model) {
            auto m = *c.model;
            m.epsilon = eps;
            validate(m);
            return m;
        }
        ScenarioParams p;
        p.delta_case = dc;
        p.epsilon = eps;
        p.ambient_dim = dim;
        p.sigma2 = s2;
        p.rho = rho;
        try {
            return scenario_model(c.scenario, p);
        } catch (const InvalidInput& e) {
            throw InputError(std::string("config: ") + e.what());
        }
    };

    out << "scenario,algorithm,delta_case,ambient_dim,sigma2,rho,n,epsilon,m,replications,failures,risk,stderr\n";
    for (const auto& algo : c.algorithms) {
        const auto clusterer = risk_clusterer(algo);
        for (auto dc : deltas) {
            for (auto dim : dims) {
                for (double s2 : sigmas) {
                    for (double rho : rhos) {
                        for (auto n : c.ns) {
                            for (double eps : c.epsilons) {
                                const auto model = build(dc, dim, s2, rho, eps);
                                const std::size_t m = c.m.value_or(model.groups());
                                if (m > n) {
                                    throw InputError("config: m = " + std::to_string(m) + " exceeds n = " +
                                                     std::to_string(n));
                                }
                                const auto est =
                                    estimate_risk(model, clusterer, m, n, {c.replications, c.seed, threads});
                                out << c.scenario << ',' << algo << ',' << (uses_delta ? to_string(dc) : "") << ','
                                    << model.ambient_dim << ',' << (uses_gauss ? fmt(s2) : "") << ','
                                    << (uses_gauss ? fmt(rho) : "") << ',' << n << ',' << fmt(eps) << ',' << m << ','
                                    << est.replications << ',' << est.failures << ',' << fmt(est.risk) << ','
                                    << fmt(est.standard_error) << '\n';
                            }
                        }
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

BenchOutput cmd_bench(const BenchArgs& args) {
    auto load = args.load;
    if (load.label_column == LabelColumn::detect) {
        load.label_column = LabelColumn::present;
    }
    if (load.label_column == LabelColumn::absent) {
        throw InputError("bench needs a truth label column");
    }
    const auto loaded = load_points_file(args.input, load);
    if (args.m == 0) {
        throw PreconditionError("m must be at least 1");
    }
    if (args.replications == 0) {
        throw InputError("B must be at least 1");
    }
    const LabeledSample data{loaded.points, loaded.truth};

    std::ostringstream summary;
    std::ostringstream reps;
    std::ostringstream timing;
    summary << "algorithm,m,n,subsample_size,replications,completed,skipped,mean_ari,sd_ari,stderr_ari\n";
    reps << "algorithm,replication,ari\n";
    for (auto algo : args.algorithms) {
        AriStats st;
        try {
            st = subsample_bench(data, clusterer_for(algo), args.m, {args.replications, args.fraction, args.seed});
        } catch (const InvalidInput& e) {
            throw InputError(e.what());
        }
        summary << to_string(algo) << ',' << args.m << ',' << data.points.size() << ',' << st.subsample_size << ','
                << args.replications << ',' << st.ari.size() << ',' << st.skipped << ',' << fmt(st.mean) << ','
                << fmt(st.sd) << ',' << fmt(st.standard_error) << '\n';
        for (std::size_t k = 0; k < st.ari.size(); ++k) {
            reps << to_string(algo) << ',' << st.replication_index[k] << ',' << fmt(st.ari[k]) << '\n';
        }
        timing << to_string(algo) << ": mean clustering time " << fmt(st.mean_seconds) << " s over "
               << st.ari.size() << " replications\n";
    }
    return {summary.str(), reps.str(), timing.str()};
}

// ---------------------------------------------------------------------------
// bound
// ---------------------------------------------------------------------------

Grid parse_grid(const std::string& text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? a : text.find(':', a + 1);
    if (b == std::string::npos || text.find(':', b + 1) != std::string::npos) {
        throw InputError("grid must look like lo:hi:steps, got '" + text + "'");
    }
    const auto lo = parse_number(trim(text.substr(0, a)));
    const auto hi = parse_number(trim(text.substr(a + 1, b - a - 1)));
    const auto steps = parse_number(trim(text.substr(b + 1)));
    if (!lo || !hi || !is_integral(steps) || *steps < 1.0) {
        throw InputError("grid must look like lo:hi:steps with steps >= 1, got '" + text + "'");
    }
    if (!(*lo <= *hi)) {
        throw InputError("grid needs lo <= hi");
    }
    return {*lo, *hi, static_cast<std::size_t>(*steps)};
}

theory::BoundParams parse_bound_params(const json& j) {
    try {
        if (!j.is_object()) {
            throw InputError("bound parameters must be a JSON object");
        }
        auto need = [&](const char* key) {
            if (!j.contains(key)) {
                throw InputError(std::string("bound parameters need '") + key + "'");
            }
            return j.at(key).get<double>();
        };
        const double big_d = j.contains("big_d") ? j.at("big_d").get<double>() : need("D");
        if (j.contains("a") || j.contains("b")) {
            theory::BoundParams p;
            p.lambda = j.value("lambda", 1.0);
            p.a = need("a");
            p.b = need("b");
            p.gamma_bar = need("gamma_bar");
            p.d = need("d");
            p.big_d = big_d;
            p.delta = need("delta");
            p.epsilon = need("epsilon");
            p.n = need("n");
            p.m = need("m");
            p.eta = need("eta");
            return p;
        }
        theory::ModelConstants c;
        if (j.contains("weights")) {
            const auto w = j.at("weights").get<std::vector<double>>();
            c = theory::constants_from_weights(w, need("epsilon"));
        } else {
            c.gamma_star = need("gamma_star");
            c.gamma_sup = need("gamma_sup");
            c.epsilon = need("epsilon");
            c.m = static_cast<std::size_t>(need("m"));
        }
        if (j.contains("m")) {
            c.m = j.at("m").get<std::size_t>();
        }
        c.kappa0 = j.value("kappa0", 1.0);
        c.kappa_sup = j.value("kappa_sup", 1.0);
        c.kappa_c = j.value("kappa_c", 1.0);
        c.d = need("d");
        c.big_d = big_d;
        c.delta = need("delta");
        c.n = static_cast<std::size_t>(need("n"));
        c.lambda = j.value("lambda", 1.0);
        c.eta = need("eta");
        return theory::bound_params(c);
    } catch (const json::exception& e) {
        throw InputError(std::string("bound parameters: ") + e.what());
    }
}

BoundReport cmd_bound(const theory::BoundParams& params, const Grid& grid) {
    const auto radii = theory::linear_grid(grid.lo, grid.hi, grid.steps);
    std::ostringstream csv;
    csv << "r,log_connectivity,log_outlier_chain,log_tail,log_risk_bound,risk_bound,combined_objective\n";
    for (double r : radii) {
        const auto t = theory::bound_terms(r, params);
        const double lb = theory::log_risk_bound(r, params);
        csv << fmt(r) << ',' << fmt(t.log_connectivity) << ',' << fmt(t.log_outlier_chain) << ',' << fmt(t.log_tail)
            << ',' << fmt(lb) << ',' << fmt(std::exp(lb)) << ',' << fmt(theory::combined_objective(r, params))
            << '\n';
    }
    const auto best = theory::minimize_bound(params, radii);
    std::ostringstream summary;
    summary << "grid minimizer r = " << fmt(best.r) << ", combined objective = " << fmt(best.value);
    if (params.lambda == 1.0) {
        summary << " (lambda = 1 is a placeholder; the covering constant is problem specific)";
    }
    summary << '\n';
    return {csv.str(), summary.str()};
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

Generated cmd_generate(const GenerateArgs& args) {
    if (args.n == 0) {
        throw InputError("n must be at least 1");
    }
    Generated g;
    try {
        if (kScenarios.count(args.model)) {
            auto p = args.params;
            p.epsilon = args.epsilon.value_or(0.0);
            g.model = scenario_model(args.model, p);
        } else if (std::filesystem::exists(args.model)) {
            g.model = model_from_json(read_json_file(args.model));
            if (args.epsilon) {
                g.model.epsilon = *args.epsilon;
                validate(g.model);
            }
        } else {
            throw InputError("'" + args.model + "' is neither a built-in model nor a readable file");
        }
    } catch (const InvalidInput& e) {
        throw InputError(e.what());
    }
    g.sample = sample(g.model, args.n, args.seed);
    return g;
}

// ---------------------------------------------------------------------------
// plumbing
// ---------------------------------------------------------------------------

int run_guarded(const std::function<void()>& body, std::ostream& err) {
    try {
        body();
        return kOk;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kPreconditionError;
    }
}

std::size_t resolve_threads(std::optional<std::size_t> flag, std::optional<std::size_t> fallback) {
    if (flag && *flag > 0) {
        return *flag;
    }
    if (const char* env = std::getenv("OSL_THREADS"); env && *env) {
        const auto v = parse_number(env);
        if (!is_integral(v) || *v < 1.0) {
            throw InputError(std::string("OSL_THREADS must be a positive integer, got '") + env + "'");
        }
        return static_cast<std::size_t>(*v);
    }
    if (fallback && *fallback > 0) {
        return *fallback;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace osl::cli
