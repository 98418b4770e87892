#include "xxz/config.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include "json.hpp"

#include "xxz/functional.hpp"
#include "xxz/gauge.hpp"

namespace xxz {

namespace {

using nlohmann::ordered_json;

Complex parse_complex(const ordered_json& j, const std::string& what) {
    require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
            ErrorKind::config, what + " must be a [re, im] pair");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

std::array<double, 2> parse_range(const ordered_json& j, const std::string& what) {
    require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
            ErrorKind::config, what + " must be a [lo, hi] range");
    std::array<double, 2> out{j[0].get<double>(), j[1].get<double>()};
    require(out[0] <= out[1], ErrorKind::config, what + " range is inverted");
    return out;
}

const std::vector<std::string>& suite_registry() {
    static const std::vector<std::string> names{
        "hamiltonian",   "operator-identities", "intertwining",  "gauge-structure",
        "commutation",   "decomposition",       "left-actions",  "right-actions",
        "solve",         "bethe",               "scalar-products"};
    return names;
}

} // namespace

double uniform_from_bits(uint64_t bits, double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(bits >> 11) * 0x1.0p-53;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::config, "cannot open config file: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error(ErrorKind::config, std::string("config parse failure: ") + e.what());
    }

    RunConfig cfg;
    require(j.contains("n_sites") && j["n_sites"].is_number_integer(), ErrorKind::config,
            "config requires integer n_sites");
    cfg.n_sites = j["n_sites"].get<int>();
    require(cfg.n_sites >= 1 && cfg.n_sites <= 12, ErrorKind::config,
            "n_sites out of the supported range 1..12");

    if (j.contains("seed")) {
        require(j["seed"].is_number_unsigned() || j["seed"].is_number_integer(),
                ErrorKind::config, "seed must be an integer");
        cfg.seed = j["seed"].get<uint64_t>();
    }

    if (j.contains("model")) {
        const auto& m = j["model"];
        ModelParams p;
        p.n_sites = cfg.n_sites;
        p.eta = parse_complex(m.at("eta"), "model.eta");
        p.alpha_minus = parse_complex(m.at("alpha_minus"), "model.alpha_minus");
        p.beta_minus = parse_complex(m.at("beta_minus"), "model.beta_minus");
        p.theta_minus = parse_complex(m.at("theta_minus"), "model.theta_minus");
        p.alpha_plus = parse_complex(m.at("alpha_plus"), "model.alpha_plus");
        p.beta_plus = parse_complex(m.at("beta_plus"), "model.beta_plus");
        p.theta_plus = parse_complex(m.at("theta_plus"), "model.theta_plus");
        require(m.contains("inhomogeneities") && m["inhomogeneities"].is_array(),
                ErrorKind::config, "model.inhomogeneities must be an array");
        for (const auto& t : m["inhomogeneities"])
            p.inhomogeneities.push_back(parse_complex(t, "model.inhomogeneities entry"));
        require(p.inhomogeneities.size() == static_cast<std::size_t>(cfg.n_sites),
                ErrorKind::config, "model.inhomogeneities length must equal n_sites");
        cfg.model = std::move(p);
    } else {
        require(cfg.seed.has_value(), ErrorKind::config,
                "a seed is required when parameters are drawn randomly");
    }

    if (j.contains("draw")) {
        const auto& d = j["draw"];
        auto maybe = [&](const char* key, std::array<double, 2>& slot) {
            if (d.contains(key)) slot = parse_range(d[key], std::string("draw.") + key);
        };
        maybe("eta_re", cfg.draw.eta_re);
        maybe("eta_im", cfg.draw.eta_im);
        maybe("alpha_re", cfg.draw.alpha_re);
        maybe("alpha_im", cfg.draw.alpha_im);
        maybe("beta_re", cfg.draw.beta_re);
        maybe("beta_im", cfg.draw.beta_im);
        maybe("theta_boundary_re", cfg.draw.theta_boundary_re);
        maybe("theta_boundary_im", cfg.draw.theta_boundary_im);
        maybe("inhomogeneity_re", cfg.draw.inhomogeneity_re);
        maybe("inhomogeneity_im", cfg.draw.inhomogeneity_im);
    }

    if (j.contains("tolerances")) {
        require(j["tolerances"].is_object(), ErrorKind::config, "tolerances must be an object");
        for (const auto& [key, value] : j["tolerances"].items()) {
            require(value.is_number(), ErrorKind::config, "tolerance " + key + " must be numeric");
            cfg.tolerances[key] = value.get<double>();
        }
    }

    if (j.contains("suites")) {
        require(j["suites"].is_array(), ErrorKind::config, "suites must be an array of names");
        for (const auto& s : j["suites"]) {
            require(s.is_string(), ErrorKind::config, "suite names must be strings");
            const std::string name = s.get<std::string>();
            const auto& registry = suite_registry();
            require(std::find(registry.begin(), registry.end(), name) != registry.end(),
                    ErrorKind::config, "unknown suite name: " + name);
            cfg.suites.push_back(name);
        }
    }

    if (j.contains("output_path")) {
        require(j["output_path"].is_string(), ErrorKind::config, "output_path must be a string");
        cfg.output_path = j["output_path"].get<std::string>();
    }
    if (j.contains("probe_count")) {
        require(j["probe_count"].is_number_integer(), ErrorKind::config,
                "probe_count must be an integer");
        cfg.probe_count = j["probe_count"].get<int>();
        require(cfg.probe_count >= 1 && cfg.probe_count <= 32, ErrorKind::config,
                "probe_count out of range 1..32");
    }
    return cfg;
}

ModelParams resolve_model(const RunConfig& config, std::optional<uint64_t> seed_override,
                          int* rejections_out) {
    if (rejections_out) *rejections_out = 0;
    if (config.model) {
        ModelParams p = *config.model;
        p.validate();
        return p;
    }

    const uint64_t seed = seed_override.value_or(config.seed.value());
    std::mt19937_64 eng(seed);
    auto uni = [&](const std::array<double, 2>& r) { return uniform_from_bits(eng(), r[0], r[1]); };
    const DrawRanges& d = config.draw;

    int rejections = 0;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        ModelParams p;
        p.n_sites = config.n_sites;
        p.eta = Complex(uni(d.eta_re), uni(d.eta_im));
        p.alpha_minus = Complex(uni(d.alpha_re), uni(d.alpha_im));
        p.beta_minus = Complex(uni(d.beta_re), uni(d.beta_im));
        p.theta_minus = Complex(uni(d.theta_boundary_re), uni(d.theta_boundary_im));
        p.alpha_plus = Complex(uni(d.alpha_re), uni(d.alpha_im));
        p.beta_plus = Complex(uni(d.beta_re), uni(d.beta_im));
        p.theta_plus = Complex(uni(d.theta_boundary_re), uni(d.theta_boundary_im));
        for (int j = 0; j < config.n_sites; ++j)
            p.inhomogeneities.emplace_back(uni(d.inhomogeneity_re), uni(d.inhomogeneity_im));

        bool accept = true;
        try {
            p.validate();
            if (!p.generic_inhomogeneities()) accept = false;
            if (accept) require_nondegenerate_c(p);
            if (accept) {
                const GaugeIndex gl = select_gauge_left(p);
                for (int j = 0; j <= p.n_sites; ++j)
                    check_gauge_index(GaugeIndex{gl.alpha, gl.m + 2.0 * j}, p.eta);
                const GaugeIndex gr = select_gauge_right(p);
                check_gauge_index(GaugeIndex{gr.alpha, gr.m + static_cast<double>(p.n_sites)},
                                  p.eta);
                // Left-vacuum prefactors along the basis ladder.
                for (int l = 1; l <= p.n_sites; ++l) {
                    const Complex v = (gl.m + 2.0 * p.n_sites - static_cast<double>(l)) * p.eta;
                    require(std::abs(std::sinh(v)) > 1e-8, ErrorKind::non_generic, "prefactor");
                    const Complex w = (gl.m - static_cast<double>(l)) * p.eta;
                    require(std::abs(std::sinh(w)) > 1e-8, ErrorKind::non_generic, "prefactor");
                }
            }
        } catch (const Error&) {
            accept = false;
        }
        if (accept) {
            if (rejections_out) *rejections_out = rejections;
            return p;
        }
        ++rejections;
    }
    throw Error(ErrorKind::non_generic,
                "could not draw generic parameters within 1000 attempts; adjust the ranges");
}

double tolerance_or(const RunConfig& config, const std::string& name, double fallback) {
    const auto it = config.tolerances.find(name);
    return (it != config.tolerances.end()) ? it->second : fallback;
}

} // namespace xxz
