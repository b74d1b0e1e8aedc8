#pragma once

#include <string>
#include <utility>
#include <vector>

#include "slzflow/config.hpp"

namespace slz {

/// Machine-readable result of one experiment run.  Column layout is fixed per
/// run type; per-point domain errors appear as row flags, never as aborts.
/// Serialization is deterministic: fixed key order, %.17g floats, so a fixed
/// config and seed reproduce the output byte for byte.
struct ResultRecord {
    int schema_version = 1;
    std::string run_type;
    std::vector<std::pair<std::string, std::string>> config_echo;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> row_flags; // "" == ok
    std::vector<std::pair<std::string, double>> summary_values;
    std::vector<std::pair<std::string, bool>> summary_flags; // property -> pass
    bool all_pass = true;

    void add_summary(const std::string& name, double value) {
        summary_values.emplace_back(name, value);
    }
    void add_property(const std::string& name, bool pass) {
        summary_flags.emplace_back(name, pass);
        all_pass = all_pass && pass;
    }

    /// Full record as a JSON document.
    std::string to_json() const;
    /// Row data as CSV (header + rows + flag column).
    std::string to_csv() const;
    /// Summary block only, as JSON (what the CLI prints to stdout).
    std::string summary_json() const;
};

} // namespace slz
