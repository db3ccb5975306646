#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <dqw/dqw.hpp>

namespace dqw::cli {

namespace {

using nlohmann::json;

struct Flags {
    std::string config_path;
    std::string ensemble;
    double xi = 0.0;
    double sigma = 0.0;
    std::string init;
    std::uint64_t seed = 0;
    long long n = 0;
    std::uint64_t trials = 0;
    std::uint64_t draws = 0;
    std::uint64_t audit_draws = 0;
    std::string n_list;
    std::string walker;
    std::string out;
    std::string format;
    unsigned workers = 1;
};

struct Options {
    CLI::Option* config = nullptr;
    CLI::Option* ensemble = nullptr;
    CLI::Option* xi = nullptr;
    CLI::Option* sigma = nullptr;
    CLI::Option* init = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* n = nullptr;
    CLI::Option* trials = nullptr;
    CLI::Option* draws = nullptr;
    CLI::Option* audit_draws = nullptr;
    CLI::Option* walker = nullptr;
    CLI::Option* format = nullptr;
};

bool given(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

json defaults_for(const std::string& command) {
    json cfg = {{"command", command},
                {"ensemble", {{"ensemble", "ribeiro_uniform"}, {"params", json::object()}}},
                {"seed", 0},
                {"format", "json"}};
    if (command == "run" || command == "average" || command == "exact" || command == "coeffs") {
        cfg["init"] = "caseI";
        cfg["n"] = 10;
    }
    if (command == "average") {
        cfg["trials"] = 10000;
        cfg["audit_draws"] = 100000;
    }
    if (command == "moments") cfg["draws"] = 1000000;
    if (command == "variance") {
        cfg["walker"] = "classical";
        cfg["n_list"] = parse_n_list("10..100:10");
        cfg["init"] = "caseI";
        cfg["trials"] = 10000;
    }
    return cfg;
}

json read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    // Output files embed their resolved config under "config".
    if (j.contains("config") && j["config"].is_object()) return j["config"];
    return j;
}

// Overlays known keys of a config file onto the defaults. Accepts both the
// bare ensemble form {"ensemble": name, "params": {...}, "seed": s} and the
// experiment form with a nested ensemble object.
void merge_file(json& cfg, const json& file, const std::string& command) {
    if (file.contains("command") && file["command"] != command) {
        throw ConfigError("config file is for '" + file["command"].dump() + "', not '" + command + "'");
    }
    if (file.contains("ensemble")) {
        const json& e = file["ensemble"];
        if (e.is_string()) {
            cfg["ensemble"] = {{"ensemble", e}, {"params", file.value("params", json::object())}};
        } else if (e.is_object()) {
            cfg["ensemble"] = {{"ensemble", e.value("ensemble", "")}, {"params", e.value("params", json::object())}};
            if (e.contains("seed") && !file.contains("seed")) cfg["seed"] = e["seed"];
        } else {
            throw ConfigError("'ensemble' must be a name or an object");
        }
    }
    for (const char* key : {"seed", "init", "n", "trials", "draws", "audit_draws", "walker", "n_list", "format"}) {
        if (file.contains(key) && cfg.contains(key)) cfg[key] = file[key];
    }
    if (file.contains("seed")) cfg["seed"] = file["seed"];
}

std::uint64_t parse_seed(const std::string& text, const char* what) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError(std::string(what) + " must be an unsigned 64-bit integer, got '" + text + "'");
    }
    return value;
}

json resolve(const std::string& command, const Flags& f, const Options& o) {
    json cfg = defaults_for(command);
    if (given(o.config)) merge_file(cfg, read_config_file(f.config_path), command);

    if (const char* env = std::getenv("DQW_SEED"); env != nullptr && *env != '\0') {
        cfg["seed"] = parse_seed(env, "DQW_SEED");
    }
    if (given(o.seed)) cfg["seed"] = f.seed;

    if (given(o.ensemble) && cfg["ensemble"]["ensemble"] != f.ensemble) {
        cfg["ensemble"] = {{"ensemble", f.ensemble}, {"params", json::object()}};
    }
    if (given(o.xi)) cfg["ensemble"]["params"]["xi"] = f.xi;
    if (given(o.sigma)) cfg["ensemble"]["params"]["sigma"] = f.sigma;
    if (given(o.init) && cfg.contains("init")) cfg["init"] = f.init;
    if (given(o.trials)) cfg["trials"] = f.trials;
    if (given(o.draws)) cfg["draws"] = f.draws;
    if (given(o.audit_draws)) cfg["audit_draws"] = f.audit_draws;
    if (given(o.walker)) cfg["walker"] = f.walker;
    if (given(o.format)) cfg["format"] = f.format;
    if (given(o.n)) {
        if (command == "variance") {
            cfg["n_list"] = parse_n_list(f.n_list);
        } else {
            cfg["n"] = f.n;
        }
    }
    cfg["ensemble"]["seed"] = cfg["seed"];
    return cfg;
}

template <typename T>
T get(const json& cfg, const char* key) {
    try {
        return cfg.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
}

std::size_t get_count(const json& cfg, const char* key, bool allow_zero) {
    const json& v = cfg.at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < (allow_zero ? 0 : 1))) {
        throw ConfigError(std::string("'") + key + "' must be an integer >= " + (allow_zero ? "0" : "1"));
    }
    return v.get<std::size_t>();
}

struct Resolved {
    json cfg;
    std::string format;
    std::uint64_t seed = 0;
};

Resolved validate(json cfg) {
    Resolved r;
    r.format = get<std::string>(cfg, "format");
    if (r.format != "json" && r.format != "csv") throw ConfigError("--format must be json or csv");
    const json& seed = cfg.at("seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
        throw ConfigError("seed must be an unsigned integer");
    }
    r.seed = seed.get<std::uint64_t>();
    r.cfg = std::move(cfg);
    return r;
}

std::string with_config(json body, const json& cfg) {
    body["config"] = cfg;
    return body.dump(2) + "\n";
}

std::string csv_with_config(const std::string& body, const json& cfg) {
    return "# config: " + cfg.dump() + "\n" + body;
}

std::string cmd_run(const Resolved& r) {
    const CoinEnsemble ensemble = build_ensemble(EnsembleSpec::from_json(r.cfg["ensemble"]));
    const InitialStateRule init = build_initial_state(get<std::string>(r.cfg, "init"));
    const std::size_t n = get_count(r.cfg, "n", true);
    const Distribution d = run_realization(ensemble, init, n, derive_seed(r.seed, 0));
    if (r.format == "csv") return csv_with_config(to_csv(d), r.cfg);
    json body = to_json(d);
    const SummaryStats s = summary_stats(d);
    body["mean"] = s.mean;
    body["variance"] = s.variance;
    return with_config(std::move(body), r.cfg);
}

std::string cmd_average(const Resolved& r, unsigned workers) {
    const CoinEnsemble ensemble = build_ensemble(EnsembleSpec::from_json(r.cfg["ensemble"]));
    const InitialStateRule init = build_initial_state(get<std::string>(r.cfg, "init"));
    const std::size_t n = get_count(r.cfg, "n", true);
    const std::size_t trials = get_count(r.cfg, "trials", false);
    const std::size_t audit_draws = get_count(r.cfg, "audit_draws", false);
    const AveragedResult result = monte_carlo_average(ensemble, init, n, trials, r.seed, workers);
    if (r.format == "csv") return csv_with_config(to_csv(result), r.cfg);
    json body = to_json(result);
    body["moment_audit"] = to_json(audit_moments(ensemble, audit_draws, r.seed));
    return with_config(std::move(body), r.cfg);
}

std::string cmd_exact(const Resolved& r) {
    const CoinEnsemble ensemble = build_ensemble(EnsembleSpec::from_json(r.cfg["ensemble"]));
    const InitialStateRule init = build_initial_state(get<std::string>(r.cfg, "init"));
    const std::size_t n = get_count(r.cfg, "n", true);
    const Distribution d = exact_average(ensemble, init, n);
    if (r.format == "csv") return csv_with_config(to_csv(d), r.cfg);
    const Distribution classical = binomial_distribution(n);
    json body = to_json(d);
    body["max_abs_deviation_from_binomial"] = max_abs_deviation(d, classical);
    body["tv_to_binomial"] = tv_distance(d, classical);
    return with_config(std::move(body), r.cfg);
}

std::string cmd_moments(const Resolved& r) {
    const CoinEnsemble ensemble = build_ensemble(EnsembleSpec::from_json(r.cfg["ensemble"]));
    const std::size_t draws = get_count(r.cfg, "draws", false);
    const MomentReport report = audit_moments(ensemble, draws, r.seed);
    if (r.format == "csv") {
        std::ostringstream csv;
        csv << "moment,re,im,stderr\n";
        for (const auto& e : report.estimates) {
            csv << e.name << ',' << json(e.value.real()).dump() << ',' << json(e.value.imag()).dump() << ','
                << json(e.std_error).dump() << '\n';
        }
        return csv_with_config(csv.str(), r.cfg);
    }
    json body = to_json(report);
    if (const auto& declared = ensemble.declared_moments()) {
        body["declared"] = {{"|a|^2", declared->abs_a_sq},
                            {"|b|^2", declared->abs_b_sq},
                            {"a*conj(c)", {{"re", declared->a_conj_c.real()}, {"im", declared->a_conj_c.imag()}}}};
    }
    return with_config(std::move(body), r.cfg);
}

std::string cmd_coeffs(const Resolved& r) {
    const CoinEnsemble ensemble = build_ensemble(EnsembleSpec::from_json(r.cfg["ensemble"]));
    const InitialStateRule init = build_initial_state(get<std::string>(r.cfg, "init"));
    const std::size_t n = get_count(r.cfg, "n", false);
    std::vector<Coin> coins;
    coins.reserve(n);
    for (std::size_t i = 0; i < n; ++i) coins.push_back(ensemble.draw(r.seed, i));
    Stream init_stream(r.seed, n);
    const QubitState phi = init.generate(init_stream);
    const PathCoefficients c = coefficients(coins, n);
    const double residual = reconstruction_residual(c, coins, phi);
    if (r.format == "csv") {
        std::ostringstream csv;
        csv << "k,p_re,p_im,q_re,q_im,r_re,r_im,s_re,s_im\n";
        for (std::size_t j = 0; j < c.size(); ++j) {
            csv << c.site_of(j);
            for (const Complex& z : c.at_slot(j)) csv << ',' << json(z.real()).dump() << ',' << json(z.imag()).dump();
            csv << '\n';
        }
        return csv_with_config(csv.str(), r.cfg);
    }
    json body = to_json(c);
    body["max_reconstruction_residual"] = residual;
    return with_config(std::move(body), r.cfg);
}

std::string cmd_variance(const Resolved& r, unsigned workers) {
    std::vector<std::size_t> n_list;
    try {
        n_list = r.cfg.at("n_list").get<std::vector<std::size_t>>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("'n_list' must be an array of integers: ") + e.what());
    }
    const std::string walker = get<std::string>(r.cfg, "walker");
    WalkerConfig config = ClassicalWalker{};
    if (walker == "hadamard") {
        const InitialStateRule init = build_initial_state(get<std::string>(r.cfg, "init"));
        if (init.kind() != InitialStateRule::Kind::fixed) throw ConfigError("hadamard walker needs a fixed --init");
        config = DeterministicWalker{Coin::hadamard(), init.fixed_state()};
    } else if (walker == "averaged") {
        config = AveragedWalker{build_ensemble(EnsembleSpec::from_json(r.cfg["ensemble"])),
                                build_initial_state(get<std::string>(r.cfg, "init")),
                                get_count(r.cfg, "trials", false), r.seed, workers};
    } else if (walker != "classical") {
        throw ConfigError("--walker must be classical, hadamard or averaged");
    }
    VarianceScan scan;
    try {
        scan = variance_scan(config, n_list);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    if (r.format == "csv") return csv_with_config(to_csv(scan), r.cfg);
    return with_config(to_json(scan), r.cfg);
}

void add_common(CLI::App* sub, Flags& f, Options& o) {
    o.config = sub->add_option("--config", f.config_path, "JSON config file (ensemble config or a previous output)");
    o.ensemble = sub->add_option("--ensemble", f.ensemble, "ribeiro_uniform | ribeiro_two_point | mackay_uniform | "
                                                           "shapira | fixed_hadamard");
    o.xi = sub->add_option("--xi", f.xi, "ribeiro_two_point angle in radians, 0 <= xi < pi");
    o.sigma = sub->add_option("--sigma", f.sigma, "shapira per-axis standard deviation, > 0");
    o.seed = sub->add_option("--seed", f.seed, "master seed (overrides DQW_SEED and the config file)");
    o.format = sub->add_option("--format", f.format, "json | csv");
    sub->add_option("--out", f.out, "output file (default: stdout)");
    sub->add_option("--workers", f.workers, "worker threads for trial farms")->check(CLI::PositiveNumber);
}

void write_output(const std::string& content, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError("cannot write output file '" + path + "'");
    file << content;
    if (!file) throw ConfigError("failed writing output file '" + path + "'");
}

}  // namespace

std::vector<std::size_t> parse_n_list(const std::string& text) {
    auto number = [&](const std::string& s) {
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
            throw ConfigError("bad step count '" + s + "' in '" + text + "'");
        }
        return v;
    };
    std::vector<std::size_t> out;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        const std::string lo = text.substr(0, dots);
        std::string hi = text.substr(dots + 2);
        std::size_t stride = 1;
        if (const auto colon = hi.find(':'); colon != std::string::npos) {
            stride = number(hi.substr(colon + 1));
            hi = hi.substr(0, colon);
        }
        const std::size_t first = number(lo);
        const std::size_t last = number(hi);
        if (stride == 0 || last < first) throw ConfigError("bad range '" + text + "'");
        for (std::size_t n = first; n <= last; n += stride) out.push_back(n);
        return out;
    }
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(number(item));
    if (out.empty()) throw ConfigError("empty step list");
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Disordered quantum walk simulator", "dqw"};
    app.require_subcommand(1);

    Flags f;
    std::map<std::string, Options> opts;

    auto* run_cmd = app.add_subcommand("run", "One realization's position distribution");
    auto* avg_cmd = app.add_subcommand("average", "Monte Carlo ensemble average against the binomial law");
    auto* exact_cmd = app.add_subcommand("exact", "Exact ensemble average over a discrete coin law");
    auto* mom_cmd = app.add_subcommand("moments", "Moment audit of a coin ensemble");
    auto* coef_cmd = app.add_subcommand("coeffs", "Path-sum coefficients of one coin sequence");
    auto* var_cmd = app.add_subcommand("variance", "Variance against step count");

    for (auto* sub : {run_cmd, avg_cmd, exact_cmd, mom_cmd, coef_cmd, var_cmd}) {
        Options& o = opts[sub->get_name()];
        add_common(sub, f, o);
        if (sub != mom_cmd) o.init = sub->add_option("--init", f.init, "caseI | caseII | 'a,b' | 'ar,ai,br,bi'");
        if (sub == var_cmd) {
            o.n = sub->add_option("--n", f.n_list, "step list: 10..100, 10..100:10 or 10,20,50");
            o.walker = sub->add_option("--walker", f.walker, "classical | hadamard | averaged");
            o.trials = sub->add_option("--trials", f.trials, "trials per step count for --walker averaged");
        } else if (sub != mom_cmd) {
            o.n = sub->add_option("--n", f.n, "number of steps");
        }
        if (sub == avg_cmd) {
            o.trials = sub->add_option("--trials", f.trials, "number of realizations");
            o.audit_draws = sub->add_option("--audit-draws", f.audit_draws, "coin draws for the moment audit");
        }
        if (sub == mom_cmd) o.draws = sub->add_option("--draws", f.draws, "coin draws");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "dqw: " << e.what() << "\n";
        return kConfigError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const Resolved r = validate(resolve(command, f, opts[command]));
        std::string content;
        if (command == "run") content = cmd_run(r);
        else if (command == "average") content = cmd_average(r, f.workers);
        else if (command == "exact") content = cmd_exact(r);
        else if (command == "moments") content = cmd_moments(r);
        else if (command == "coeffs") content = cmd_coeffs(r);
        else content = cmd_variance(r, f.workers);
        write_output(content, f.out, out);
        return kOk;
    } catch (const ConfigError& e) {
        err << "dqw: config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const DomainError& e) {
        err << "dqw: config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const NumericalDriftError& e) {
        err << "dqw: numerical drift: " << e.what() << "\n";
        return kNumericalDrift;
    } catch (const InfeasibleEnumerationError& e) {
        err << "dqw: infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const std::exception& e) {
        err << "dqw: " << e.what() << "\n";
        return kFailure;
    }
}

}  // namespace dqw::cli
