#include "slzflow/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace slz {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError("config line " + std::to_string(lineno) + ": empty section name");
            if (!cfg.find(section)) {
                cfg.sections_.push_back({section, {}});
                cfg.order_.push_back(section);
            }
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        if (section.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": key outside any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        if (cfg.has(section, key))
            throw ConfigError("config: duplicate key " + section + "." + key);
        cfg.find(section)->entries.push_back({key, value});
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
}

Config::Section* Config::find(const std::string& name) {
    for (auto& s : sections_)
        if (s.name == name) return &s;
    return nullptr;
}
const Config::Section* Config::find(const std::string& name) const {
    for (const auto& s : sections_)
        if (s.name == name) return &s;
    return nullptr;
}

bool Config::has(const std::string& section, const std::string& key) const {
    const Section* s = find(section);
    if (!s) return false;
    for (const auto& e : s->entries)
        if (e.key == key) return true;
    return false;
}

const std::string& Config::get(const std::string& section, const std::string& key) const {
    const Section* s = find(section);
    if (s)
        for (const auto& e : s->entries)
            if (e.key == key) return e.value;
    throw ConfigError("config: missing required key " + section + "." + key);
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
    Section* s = find(section);
    if (!s) {
        sections_.push_back({section, {}});
        order_.push_back(section);
        s = &sections_.back();
    }
    for (auto& e : s->entries)
        if (e.key == key) {
            e.value = value;
            return;
        }
    s->entries.push_back({key, value});
}

double Config::get_double(const std::string& section, const std::string& key) const {
    const std::string& v = get(section, key);
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: " + section + "." + key + " is not a number: '" + v + "'");
    }
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

long Config::get_int_or(const std::string& section, const std::string& key, long fallback) const {
    if (!has(section, key)) return fallback;
    const std::string& v = get(section, key);
    try {
        std::size_t pos = 0;
        const long n = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return n;
    } catch (const std::exception&) {
        throw ConfigError("config: " + section + "." + key + " is not an integer: '" + v + "'");
    }
}

bool Config::get_bool_or(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string& v = get(section, key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: " + section + "." + key + " is not a boolean: '" + v + "'");
}

std::string Config::serialize() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& name : order_) {
        const Section* s = find(name);
        if (!first) out << "\n";
        first = false;
        out << "[" << s->name << "]\n";
        for (const auto& e : s->entries) out << e.key << " = " << e.value << "\n";
    }
    return out.str();
}

std::vector<std::pair<std::string, std::string>> Config::flattened() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& name : order_) {
        const Section* s = find(name);
        for (const auto& e : s->entries) out.emplace_back(s->name + "." + e.key, e.value);
    }
    return out;
}

std::vector<std::string> Config::keys(const std::string& section) const {
    std::vector<std::string> out;
    if (const Section* s = find(section))
        for (const auto& e : s->entries) out.push_back(e.key);
    return out;
}

// ---------------------------------------------------------------------------
// experiment schema
// ---------------------------------------------------------------------------

namespace {

const std::set<std::string> SPACE_KEYS = {"z", "kappa2", "profile", "s", "k", "b1", "b2", "b3"};
const std::set<std::string> RUN_KEYS = {"type", "seed", "tol"};
const std::set<std::string> OUTPUT_KEYS = {"path", "format"};
const std::set<std::string> CURVATURE_KEYS = {"chart",     "r_min",     "r_max",
                                              "r_count",   "theta_min", "theta_max",
                                              "theta_count", "q_min",   "q_max", "q_count"};
const std::set<std::string> GEODESIC_KEYS = {"chart", "x1", "x2", "x3", "p1", "p2", "p3",
                                             "t_end", "potential", "alpha", "beta",
                                             "log_staeckel", "drift_budget"};
const std::set<std::string> POTENTIAL_KEYS = {"r_min", "r_max", "count", "alpha", "beta"};
const std::set<std::string> AUDIT_KEYS = {"states",          "rank_states",   "oracle_points",
                                          "check_staeckel",  "tol_bracket",   "tol_involution",
                                          "tol_oracle",      "tol_flat",      "tol_rank"};

void reject_unknown(const Config& cfg, const std::string& section,
                    const std::set<std::string>& allowed) {
    for (const auto& k : cfg.keys(section))
        if (!allowed.count(k)) throw ConfigError("config: unknown key " + section + "." + k);
}

ConformalProfile parse_profile(const Config& cfg) {
    const std::string name = cfg.get("space", "profile");
    if (name == "identity") return ConformalProfile::identity();
    if (name == "exponential") {
        const long s = cfg.get_int_or("space", "s", 1);
        if (s != 1 && s != -1) throw ConfigError("config: space.s must be 1 or -1");
        return ConformalProfile::exponential(static_cast<int>(s));
    }
    if (name == "power_cosine") {
        const double k = cfg.get_double("space", "k");
        if (k == 1.0) throw ConfigError("config: space.k = 1 is excluded");
        return ConformalProfile::power_cosine(k);
    }
    if (name == "cos_cubed") return ConformalProfile::cos_cubed();
    throw ConfigError("config: unknown profile '" + name + "'");
}

} // namespace

ExperimentConfig ExperimentConfig::from_config(const Config& cfg) {
    for (const auto& sec : cfg.section_names())
        if (sec != "space" && sec != "run" && sec != "output" && sec != "curvature" &&
            sec != "geodesic" && sec != "potential" && sec != "audit")
            throw ConfigError("config: unknown section [" + sec + "]");

    reject_unknown(cfg, "space", SPACE_KEYS);
    reject_unknown(cfg, "run", RUN_KEYS);
    reject_unknown(cfg, "output", OUTPUT_KEYS);

    ExperimentConfig ec;
    ec.space.z = cfg.get_double("space", "z");
    ec.space.kappa2 = cfg.get_double("space", "kappa2");
    ec.space.profile = parse_profile(cfg);
    ec.space.b = {cfg.get_double_or("space", "b1", 0.0), cfg.get_double_or("space", "b2", 0.0),
                  cfg.get_double_or("space", "b3", 0.0)};
    try {
        ec.space.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("config: invalid space: ") + e.what());
    }

    const std::string type = cfg.get("run", "type");
    if (type == "curvature-grid")
        ec.run = RunType::curvature_grid;
    else if (type == "geodesic")
        ec.run = RunType::geodesic;
    else if (type == "potential-scan")
        ec.run = RunType::potential_scan;
    else if (type == "audit")
        ec.run = RunType::audit;
    else
        throw ConfigError("config: unknown run type '" + type + "'");

    ec.seed = static_cast<std::uint64_t>(cfg.get_int_or("run", "seed", 1));
    ec.tol = cfg.get_double_or("run", "tol", 1e-10);
    if (!(ec.tol >= 1e-13 && ec.tol <= 1e-3))
        throw ConfigError("config: run.tol must lie in [1e-13, 1e-3]");

    ec.out_path = cfg.get_or("output", "path", "");
    ec.format = cfg.get_or("output", "format", "json");
    if (ec.format != "json" && ec.format != "csv")
        throw ConfigError("config: output.format must be csv or json");

    auto parse_chart = [&cfg](const std::string& section) {
        const std::string chart = cfg.get_or(section, "chart", "spherical");
        if (chart == "spherical") return Representation::spherical;
        if (chart == "cartesian") return Representation::cartesian;
        throw ConfigError("config: " + section + ".chart must be spherical or cartesian");
    };

    switch (ec.run) {
    case RunType::curvature_grid: {
        reject_unknown(cfg, "curvature", CURVATURE_KEYS);
        ec.chart = parse_chart("curvature");
        ec.r_min = cfg.get_double_or("curvature", "r_min", 0.1);
        ec.r_max = cfg.get_double_or("curvature", "r_max", 1.4);
        ec.r_count = cfg.get_int_or("curvature", "r_count", 10);
        ec.theta_min = cfg.get_double_or("curvature", "theta_min", 0.1);
        ec.theta_max = cfg.get_double_or("curvature", "theta_max", 1.4);
        ec.theta_count = cfg.get_int_or("curvature", "theta_count", 10);
        ec.q_range = {cfg.get_double_or("curvature", "q_min", 0.1),
                      cfg.get_double_or("curvature", "q_max", 1.0)};
        ec.q_count = cfg.get_int_or("curvature", "q_count", 5);
        const bool empty = (ec.chart == Representation::spherical)
                               ? (ec.r_count <= 0 || ec.theta_count <= 0)
                               : (ec.q_count <= 0);
        if (empty) throw ConfigError("config: empty curvature grid");
        if (ec.r_min <= 0.0 || ec.r_max <= ec.r_min)
            throw ConfigError("config: curvature r range invalid");
        break;
    }
    case RunType::geodesic: {
        reject_unknown(cfg, "geodesic", GEODESIC_KEYS);
        ec.chart = parse_chart("geodesic");
        for (int i = 0; i < 3; ++i) {
            ec.initial[i] = cfg.get_double("geodesic", "x" + std::to_string(i + 1));
            ec.initial[i + 3] = cfg.get_double("geodesic", "p" + std::to_string(i + 1));
        }
        ec.t_end = cfg.get_double_or("geodesic", "t_end", 10.0);
        if (!(ec.t_end > 0.0)) throw ConfigError("config: geodesic.t_end must be positive");
        ec.drift_budget = cfg.get_double_or("geodesic", "drift_budget", 1e-8);
        ec.log_staeckel = cfg.get_bool_or("geodesic", "log_staeckel", false);
        const std::string pot = cfg.get_or("geodesic", "potential", "none");
        if (pot == "kepler_coulomb")
            ec.potential =
                IntrinsicPotential::kepler_coulomb(cfg.get_double_or("geodesic", "alpha", 1.0));
        else if (pot == "oscillator")
            ec.potential =
                IntrinsicPotential::oscillator(cfg.get_double_or("geodesic", "beta", 1.0));
        else if (pot != "none")
            throw ConfigError("config: unknown potential '" + pot + "'");
        break;
    }
    case RunType::potential_scan: {
        reject_unknown(cfg, "potential", POTENTIAL_KEYS);
        ec.scan_r_min = cfg.get_double_or("potential", "r_min", 0.05);
        ec.scan_r_max = cfg.get_double_or("potential", "r_max", 1.5);
        ec.scan_count = cfg.get_int_or("potential", "count", 50);
        ec.alpha = cfg.get_double_or("potential", "alpha", 1.0);
        ec.beta = cfg.get_double_or("potential", "beta", 1.0);
        if (ec.scan_count <= 0) throw ConfigError("config: empty potential grid");
        if (!(ec.scan_r_min > 0.0 && ec.scan_r_max > ec.scan_r_min))
            throw ConfigError("config: potential r range invalid");
        break;
    }
    case RunType::audit: {
        reject_unknown(cfg, "audit", AUDIT_KEYS);
        ec.audit_states = cfg.get_int_or("audit", "states", 200);
        ec.rank_states = cfg.get_int_or("audit", "rank_states", 20);
        ec.oracle_points = cfg.get_int_or("audit", "oracle_points", 20);
        ec.check_staeckel = cfg.get_bool_or("audit", "check_staeckel", false);
        ec.tol_bracket = cfg.get_double_or("audit", "tol_bracket", 1e-6);
        ec.tol_involution = cfg.get_double_or("audit", "tol_involution", 1e-6);
        ec.tol_oracle = cfg.get_double_or("audit", "tol_oracle", 1e-4);
        ec.tol_flat = cfg.get_double_or("audit", "tol_flat", 1e-6);
        ec.tol_rank = cfg.get_double_or("audit", "tol_rank", 1e-8);
        if (ec.audit_states <= 0 || ec.rank_states <= 0 || ec.oracle_points <= 0)
            throw ConfigError("config: audit sample counts must be positive");
        break;
    }
    }

    // resolved echo: every consumed key materialized with its effective value
    Config echo;
    echo.set("space", "z", cfg.get_or("space", "z", format_double(ec.space.z)));
    echo.set("space", "kappa2", cfg.get_or("space", "kappa2", format_double(ec.space.kappa2)));
    echo.set("space", "profile", cfg.get("space", "profile"));
    if (cfg.get("space", "profile") == "exponential")
        echo.set("space", "s", std::to_string(cfg.get_int_or("space", "s", 1)));
    if (cfg.get("space", "profile") == "power_cosine")
        echo.set("space", "k", cfg.get("space", "k"));
    echo.set("space", "b1", format_double(ec.space.b[0]));
    echo.set("space", "b2", format_double(ec.space.b[1]));
    echo.set("space", "b3", format_double(ec.space.b[2]));
    echo.set("run", "type", type);
    echo.set("run", "seed", std::to_string(ec.seed));
    echo.set("run", "tol", format_double(ec.tol));
    echo.set("output", "path", ec.out_path);
    echo.set("output", "format", ec.format);
    switch (ec.run) {
    case RunType::curvature_grid:
        echo.set("curvature", "chart",
                 ec.chart == Representation::spherical ? "spherical" : "cartesian");
        echo.set("curvature", "r_min", format_double(ec.r_min));
        echo.set("curvature", "r_max", format_double(ec.r_max));
        echo.set("curvature", "r_count", std::to_string(ec.r_count));
        echo.set("curvature", "theta_min", format_double(ec.theta_min));
        echo.set("curvature", "theta_max", format_double(ec.theta_max));
        echo.set("curvature", "theta_count", std::to_string(ec.theta_count));
        echo.set("curvature", "q_min", format_double(ec.q_range[0]));
        echo.set("curvature", "q_max", format_double(ec.q_range[1]));
        echo.set("curvature", "q_count", std::to_string(ec.q_count));
        break;
    case RunType::geodesic: {
        echo.set("geodesic", "chart",
                 ec.chart == Representation::spherical ? "spherical" : "cartesian");
        for (int i = 0; i < 3; ++i) {
            echo.set("geodesic", "x" + std::to_string(i + 1), format_double(ec.initial[i]));
            echo.set("geodesic", "p" + std::to_string(i + 1), format_double(ec.initial[i + 3]));
        }
        echo.set("geodesic", "t_end", format_double(ec.t_end));
        std::string pot = "none";
        if (ec.potential)
            pot = ec.potential->kind == IntrinsicPotential::Kind::kepler_coulomb
                      ? "kepler_coulomb"
                      : "oscillator";
        echo.set("geodesic", "potential", pot);
        if (ec.potential) {
            const char* key =
                ec.potential->kind == IntrinsicPotential::Kind::kepler_coulomb ? "alpha" : "beta";
            echo.set("geodesic", key, format_double(ec.potential->coupling));
        }
        echo.set("geodesic", "log_staeckel", ec.log_staeckel ? "true" : "false");
        echo.set("geodesic", "drift_budget", format_double(ec.drift_budget));
        break;
    }
    case RunType::potential_scan:
        echo.set("potential", "r_min", format_double(ec.scan_r_min));
        echo.set("potential", "r_max", format_double(ec.scan_r_max));
        echo.set("potential", "count", std::to_string(ec.scan_count));
        echo.set("potential", "alpha", format_double(ec.alpha));
        echo.set("potential", "beta", format_double(ec.beta));
        break;
    case RunType::audit:
        echo.set("audit", "states", std::to_string(ec.audit_states));
        echo.set("audit", "rank_states", std::to_string(ec.rank_states));
        echo.set("audit", "oracle_points", std::to_string(ec.oracle_points));
        echo.set("audit", "check_staeckel", ec.check_staeckel ? "true" : "false");
        echo.set("audit", "tol_bracket", format_double(ec.tol_bracket));
        echo.set("audit", "tol_involution", format_double(ec.tol_involution));
        echo.set("audit", "tol_oracle", format_double(ec.tol_oracle));
        echo.set("audit", "tol_flat", format_double(ec.tol_flat));
        echo.set("audit", "tol_rank", format_double(ec.tol_rank));
        break;
    }
    ec.echo = echo;
    return ec;
}

} // namespace slz
