#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xxz/model.hpp"

namespace xxz {

inline constexpr const char* kToolVersion = "0.1.0";

// Uniform-draw boxes for every parameter class; real and imaginary parts are
// drawn independently with rejection against the genericity guards.
struct DrawRanges {
    std::array<double, 2> eta_re{0.4, 0.9};
    std::array<double, 2> eta_im{0.15, 0.45};
    std::array<double, 2> alpha_re{0.5, 1.2};
    std::array<double, 2> alpha_im{-0.4, 0.4};
    std::array<double, 2> beta_re{-0.8, 0.8};
    std::array<double, 2> beta_im{-0.35, 0.35};
    std::array<double, 2> theta_boundary_re{-0.6, 0.6};
    std::array<double, 2> theta_boundary_im{-0.5, 0.5};
    std::array<double, 2> inhomogeneity_re{-0.45, 0.45};
    std::array<double, 2> inhomogeneity_im{-0.25, 0.25};
};

struct RunConfig {
    int n_sites = 2;
    std::optional<uint64_t> seed;
    std::optional<ModelParams> model; // explicit parameters win over draws
    DrawRanges draw;
    std::map<std::string, double> tolerances;
    std::vector<std::string> suites; // empty = registry default for the subcommand
    std::string output_path = "out";
    int probe_count = 5;
};

// Parses and validates the JSON config; complex numbers are [re, im] pairs.
RunConfig load_config(const std::string& path);

// Explicit model or seeded rejection sampling against all genericity guards;
// the rejection count is reported for reproducibility.
ModelParams resolve_model(const RunConfig& config, std::optional<uint64_t> seed_override,
                          int* rejections_out = nullptr);

double tolerance_or(const RunConfig& config, const std::string& name, double fallback);

// Deterministic uniform double from a 64-bit generator state.
double uniform_from_bits(uint64_t bits, double lo, double hi);

} // namespace xxz
