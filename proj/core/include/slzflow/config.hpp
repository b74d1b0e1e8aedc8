#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "slzflow/dynamics.hpp"

namespace slz {

/// Flat INI-style configuration: [section] headers with key = value lines,
/// '#' comments.  Section and key order is preserved so a parsed config
/// serializes back byte-identically.
class Config {
public:
    static Config parse_string(const std::string& text);
    static Config parse_file(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    const std::string& get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    void set(const std::string& section, const std::string& key, const std::string& value);

    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key, double fallback) const;
    long get_int_or(const std::string& section, const std::string& key, long fallback) const;
    bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const;

    std::string serialize() const;

    /// flattened (section.key, value) view in file order
    std::vector<std::pair<std::string, std::string>> flattened() const;

    const std::vector<std::string>& section_names() const { return order_; }
    std::vector<std::string> keys(const std::string& section) const;

private:
    struct Entry {
        std::string key, value;
    };
    struct Section {
        std::string name;
        std::vector<Entry> entries;
    };
    std::vector<Section> sections_;
    std::vector<std::string> order_;

    Section* find(const std::string& name);
    const Section* find(const std::string& name) const;
};

enum class RunType { curvature_grid, geodesic, potential_scan, audit };

/// A fully validated experiment: the space, the run type with its parameters,
/// output destination and seed.  `echo` holds the resolved configuration
/// (defaults materialized, command-line overrides applied); re-ingesting it
/// reproduces the run byte-exactly.
struct ExperimentConfig {
    SpaceSpec space;
    RunType run = RunType::audit;

    // curvature-grid
    Representation chart = Representation::spherical;
    double r_min = 0.1, r_max = 1.4;
    long r_count = 10;
    double theta_min = 0.1, theta_max = 1.4;
    long theta_count = 10;
    std::array<double, 2> q_range{0.1, 1.0};
    long q_count = 5;

    // geodesic
    std::array<double, 6> initial{};
    double t_end = 10.0;
    std::optional<IntrinsicPotential> potential;
    bool log_staeckel = false;
    double drift_budget = 1e-8;

    // potential-scan
    double scan_r_min = 0.05, scan_r_max = 1.5;
    long scan_count = 50;
    double alpha = 1.0, beta = 1.0;

    // audit
    long audit_states = 200;
    long rank_states = 20;
    long oracle_points = 20;
    bool check_staeckel = false;
    double tol_bracket = 1e-6, tol_involution = 1e-6, tol_oracle = 1e-4, tol_flat = 1e-6;
    double tol_rank = 1e-8;

    std::uint64_t seed = 1;
    double tol = 1e-10;
    std::string out_path;
    std::string format = "json"; // csv | json

    Config echo;

    /// Parses and validates; throws ConfigError on unknown keys, missing
    /// required fields, or values violating module preconditions.
    static ExperimentConfig from_config(const Config& cfg);
};

} // namespace slz
