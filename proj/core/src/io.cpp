#include "dqw/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "dqw/errors.hpp"

namespace dqw {

namespace {

// Shortest round-trip representation, matching nlohmann's number output.
std::string num(double x) { return json(x).dump(); }

}  // namespace

json to_json(const Distribution& d) {
    json mass = json::array();
    for (std::size_t j = 0; j < d.size(); ++j) mass.push_back({d.site_of(j), d.mass()[j]});
    return {{"n", d.steps()}, {"mass", std::move(mass)}};
}

Distribution distribution_from_json(const json& j) {
    try {
        const auto n = j.at("n").get<std::size_t>();
        std::vector<double> mass(n + 1, 0.0);
        for (const auto& entry : j.at("mass")) {
            const long k = entry.at(0).get<long>();
            const long nl = static_cast<long>(n);
            if (k < -nl || k > nl || (k + nl) % 2 != 0) {
                throw ConfigError("site " + std::to_string(k) + " is off the lattice for n=" + std::to_string(n));
            }
            mass[static_cast<std::size_t>((k + nl) / 2)] = entry.at(1).get<double>();
        }
        return Distribution(n, std::move(mass));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed distribution: ") + e.what());
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid distribution: ") + e.what());
    }
}

std::string to_csv(const Distribution& d) {
    std::ostringstream out;
    out << "k,probability\n";
    for (std::size_t j = 0; j < d.size(); ++j) out << d.site_of(j) << ',' << num(d.mass()[j]) << '\n';
    return out.str();
}

json to_json(const PathCoefficients& c) {
    json sites = json::array();
    for (std::size_t j = 0; j < c.size(); ++j) {
        json values = json::array();
        for (const Complex& z : c.at_slot(j)) {
            values.push_back(z.real());
            values.push_back(z.imag());
        }
        sites.push_back({c.site_of(j), std::move(values)});
    }
    return {{"n", c.steps()}, {"sites", std::move(sites)}};
}

PathCoefficients coefficients_from_json(const json& j) {
    try {
        const auto n = j.at("n").get<std::size_t>();
        std::vector<Coefficients> sites(n + 1);
        for (const auto& entry : j.at("sites")) {
            const long k = entry.at(0).get<long>();
            const long nl = static_cast<long>(n);
            if (k < -nl || k > nl || (k + nl) % 2 != 0) throw ConfigError("coefficient site off the lattice");
            const auto& v = entry.at(1);
            if (v.size() != 8) throw ConfigError("coefficient entry needs 8 reals");
            auto& dst = sites[static_cast<std::size_t>((k + nl) / 2)];
            for (std::size_t b = 0; b < 4; ++b) dst[b] = {v.at(2 * b).get<double>(), v.at(2 * b + 1).get<double>()};
        }
        return PathCoefficients(n, std::move(sites));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed coefficients: ") + e.what());
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid coefficients: ") + e.what());
    }
}

json to_json(const AveragedResult& r) {
    const Distribution& d = r.mean_distribution;
    json mean = json::array();
    for (std::size_t j = 0; j < d.size(); ++j) mean.push_back({d.site_of(j), d.mass()[j]});
    json se = json::array();
    for (std::size_t j = 0; j < d.size(); ++j) se.push_back({d.site_of(j), r.site_stderr[j]});
    return {{"n", d.steps()},
            {"trials", r.trials},
            {"seed", r.seed},
            {"mean", std::move(mean)},
            {"stderr", std::move(se)},
            {"stderr_max", r.stderr_max},
            {"tv_to_binomial", tv_distance(d, binomial_distribution(d.steps()))},
            {"config_digest", r.config_digest}};
}

std::string to_csv(const AveragedResult& r) {
    std::ostringstream out;
    out << "k,probability,stderr\n";
    const Distribution& d = r.mean_distribution;
    for (std::size_t j = 0; j < d.size(); ++j) {
        out << d.site_of(j) << ',' << num(d.mass()[j]) << ',' << num(r.site_stderr[j]) << '\n';
    }
    return out.str();
}

json to_json(const MomentReport& r) {
    json estimates = json::object();
    for (const auto& e : r.estimates) {
        estimates[e.name] = {{"re", e.value.real()}, {"im", e.value.imag()}, {"stderr", e.std_error}};
    }
    return {{"ensemble", r.ensemble},
            {"draws", r.draws},
            {"seed", r.seed},
            {"exact", r.exact},
            {"estimates", std::move(estimates)},
            {"conditions",
             {{"second_moments", to_string(r.second_moments)}, {"cross_moment", to_string(r.cross_moment)}}}};
}

json to_json(const VarianceScan& s) {
    json rows = json::array();
    for (const auto& row : s.rows) {
        const auto n = static_cast<double>(row.n);
        rows.push_back({{"n", row.n},
                        {"mean", row.mean},
                        {"variance", row.variance},
                        {"variance_over_n", row.n == 0 ? 0.0 : row.variance / n},
                        {"variance_over_n2", row.n == 0 ? 0.0 : row.variance / (n * n)}});
    }
    return {{"rows", std::move(rows)}};
}

std::string to_csv(const VarianceScan& s) {
    std::ostringstream out;
    out << "n,mean,variance,variance_over_n,variance_over_n2\n";
    for (const auto& row : s.rows) {
        const auto n = static_cast<double>(row.n);
        out << row.n << ',' << num(row.mean) << ',' << num(row.variance) << ','
            << num(row.n == 0 ? 0.0 : row.variance / n) << ',' << num(row.n == 0 ? 0.0 : row.variance / (n * n))
            << '\n';
    }
    return out.str();
}

}  // namespace dqw
