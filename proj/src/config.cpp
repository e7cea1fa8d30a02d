#include "riscov/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "riscov/units.hpp"

namespace riscov {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
    throw ConfigError("config key '" + key + "': cannot parse value '" + value + "'");
}

double parse_double(const std::string& key, const std::string& value) {
    std::string v = trim(value);
    if (v.empty()) bad_value(key, value);
    const char* begin = v.c_str();
    char* end = nullptr;
    double d = std::strtod(begin, &end);
    if (end != begin + v.size()) bad_value(key, value);
    return d;
}

long long parse_int(const std::string& key, const std::string& value) {
    std::string v = trim(value);
    if (v.empty()) bad_value(key, value);
    const char* begin = v.c_str();
    char* end = nullptr;
    long long i = std::strtoll(begin, &end, 10);
    if (end != begin + v.size()) bad_value(key, value);
    return i;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::string v = trim(value);
    if (v.empty() || v[0] == '-') bad_value(key, value);
    const char* begin = v.c_str();
    char* end = nullptr;
    unsigned long long i = std::strtoull(begin, &end, 10);
    if (end != begin + v.size()) bad_value(key, value);
    return i;
}

bool parse_bool(const std::string& key, const std::string& value) {
    std::string v = trim(value);
    if (v == "true") return true;
    if (v == "false") return false;
    bad_value(key, value);
}

std::string token_of(const std::string& key, const std::string& value,
                     std::initializer_list<const char*> allowed) {
    std::string v = trim(value);
    for (const char* a : allowed)
        if (v == a) return v;
    throw ConfigError("config key '" + key + "': expected one of the documented tokens, got '" +
                      v + "'");
}

std::vector<std::pair<double, double>> parse_thresholds(const std::string& key,
                                                        const std::string& value) {
    std::vector<std::pair<double, double>> out;
    std::string v = trim(value);
    if (v.empty()) return out;
    for (const std::string& item : split(v, ',')) {
        std::vector<std::string> parts = split(trim(item), ':');
        if (parts.size() != 2) bad_value(key, item);
        out.emplace_back(parse_double(key, parts[0]), parse_double(key, parts[1]));
    }
    return out;
}

std::vector<std::vector<double>> parse_sweep_rows(const std::string& key,
                                                  const std::string& value) {
    std::vector<std::vector<double>> out;
    std::string v = trim(value);
    if (v.empty()) return out;
    for (const std::string& row : split(v, ';')) {
        std::vector<double> cells;
        for (const std::string& cell : split(trim(row), '/'))
            cells.push_back(parse_double(key, cell));
        out.push_back(std::move(cells));
    }
    return out;
}

// Scenario keys a sweep may vary.
const char* kSweepableKeys[] = {
    "lambda_b_per_km2", "lambda_r_per_km2", "lambda_l_per_km2", "lambda_u_per_km2",
    "mean_blockage_len_m", "m_t", "m_r", "n_r", "side_lobe_tx_rel_db",
    "side_lobe_ris_rel_db", "c0_db", "alpha", "rho_d", "rho_v", "rho_ds", "p_s_db",
    "sigma_c2_dbm", "sigma_s2_dbm", "bandwidth_mhz", "window_radius_m",
};

bool is_sweepable(const std::string& key) {
    for (const char* k : kSweepableKeys)
        if (key == k) return true;
    return false;
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void apply_config_entry(ExperimentConfig& c, const std::string& rawkey,
                        const std::string& value) {
    const std::string key = trim(rawkey);
    if (key == "lambda_b_per_km2") c.lambda_b_per_km2 = parse_double(key, value);
    else if (key == "lambda_r_per_km2") c.lambda_r_per_km2 = parse_double(key, value);
    else if (key == "lambda_l_per_km2") c.lambda_l_per_km2 = parse_double(key, value);
    else if (key == "lambda_u_per_km2") c.lambda_u_per_km2 = parse_double(key, value);
    else if (key == "mean_blockage_len_m") c.mean_blockage_len_m = parse_double(key, value);
    else if (key == "m_t") c.m_t = static_cast<int>(parse_int(key, value));
    else if (key == "m_r") c.m_r = static_cast<int>(parse_int(key, value));
    else if (key == "n_r") c.n_r = static_cast<int>(parse_int(key, value));
    else if (key == "side_lobe_tx_rel_db") c.side_lobe_tx_rel_db = parse_double(key, value);
    else if (key == "side_lobe_ris_rel_db") c.side_lobe_ris_rel_db = parse_double(key, value);
    else if (key == "c0_db") c.c0_db = parse_double(key, value);
    else if (key == "alpha") c.alpha = parse_double(key, value);
    else if (key == "rho_d") c.rho_d = parse_double(key, value);
    else if (key == "rho_v") c.rho_v = parse_double(key, value);
    else if (key == "rho_ds") c.rho_ds = parse_double(key, value);
    else if (key == "p_s_db") c.p_s_db = parse_double(key, value);
    else if (key == "sigma_c2_dbm") c.sigma_c2_dbm = parse_double(key, value);
    else if (key == "sigma_s2_dbm") c.sigma_s2_dbm = parse_double(key, value);
    else if (key == "bandwidth_mhz") c.bandwidth_mhz = parse_double(key, value);
    else if (key == "window_radius_m") c.window_radius_m = parse_double(key, value);
    else if (key == "blockage_mode")
        c.blockage_mode = token_of(key, value, {"thinning", "explicit"});
    else if (key == "blockage_len_mode")
        c.blockage_len_mode = token_of(key, value, {"deterministic", "uniform"});
    else if (key == "greedy_target")
        c.greedy_target = token_of(key, value, {"user", "ris"});
    else if (key == "vlos_sensing_cascaded") c.vlos_sensing_cascaded = parse_bool(key, value);
    else if (key == "xi1_intensity_at_bb") c.xi1_intensity_at_bb = parse_bool(key, value);
    else if (key == "mode")
        c.mode = token_of(key, value, {"simulate", "analyze", "both"});
    else if (key == "thresholds_db") c.thresholds_db = parse_thresholds(key, value);
    else if (key == "trials") c.trials = parse_int(key, value);
    else if (key == "master_seed") c.master_seed = parse_u64(key, value);
    else if (key == "threads") c.threads = static_cast<int>(parse_int(key, value));
    else if (key == "sweep_param") {
        c.sweep_keys.clear();
        std::string v = trim(value);
        if (!v.empty())
            for (const std::string& k : split(v, '+')) c.sweep_keys.push_back(trim(k));
    } else if (key == "sweep_values")
        c.sweep_rows = parse_sweep_rows(key, value);
    else if (key == "out_dir") c.out_dir = trim(value);
    else
        throw ConfigError("unknown config key '" + key + "'");
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key=value, got '" + line + "'");
        apply_config_entry(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "lambda_b_per_km2=" << format_double(c.lambda_b_per_km2) << "\n";
    out << "lambda_r_per_km2=" << format_double(c.lambda_r_per_km2) << "\n";
    out << "lambda_l_per_km2=" << format_double(c.lambda_l_per_km2) << "\n";
    out << "lambda_u_per_km2=" << format_double(c.lambda_u_per_km2) << "\n";
    out << "mean_blockage_len_m=" << format_double(c.mean_blockage_len_m) << "\n";
    out << "m_t=" << c.m_t << "\n";
    out << "m_r=" << c.m_r << "\n";
    out << "n_r=" << c.n_r << "\n";
    out << "side_lobe_tx_rel_db=" << format_double(c.side_lobe_tx_rel_db) << "\n";
    out << "side_lobe_ris_rel_db=" << format_double(c.side_lobe_ris_rel_db) << "\n";
    out << "c0_db=" << format_double(c.c0_db) << "\n";
    out << "alpha=" << format_double(c.alpha) << "\n";
    out << "rho_d=" << format_double(c.rho_d) << "\n";
    out << "rho_v=" << format_double(c.rho_v) << "\n";
    out << "rho_ds=" << format_double(c.rho_ds) << "\n";
    out << "p_s_db=" << format_double(c.p_s_db) << "\n";
    out << "sigma_c2_dbm=" << format_double(c.sigma_c2_dbm) << "\n";
    out << "sigma_s2_dbm=" << format_double(c.sigma_s2_dbm) << "\n";
    out << "bandwidth_mhz=" << format_double(c.bandwidth_mhz) << "\n";
    out << "window_radius_m=" << format_double(c.window_radius_m) << "\n";
    out << "blockage_mode=" << c.blockage_mode << "\n";
    out << "blockage_len_mode=" << c.blockage_len_mode << "\n";
    out << "greedy_target=" << c.greedy_target << "\n";
    out << "vlos_sensing_cascaded=" << (c.vlos_sensing_cascaded ? "true" : "false") << "\n";
    out << "xi1_intensity_at_bb=" << (c.xi1_intensity_at_bb ? "true" : "false") << "\n";
    out << "mode=" << c.mode << "\n";
    out << "thresholds_db=";
    for (std::size_t i = 0; i < c.thresholds_db.size(); ++i) {
        if (i) out << ",";
        out << format_double(c.thresholds_db[i].first) << ":"
            << format_double(c.thresholds_db[i].second);
    }
    out << "\n";
    out << "trials=" << c.trials << "\n";
    out << "master_seed=" << c.master_seed << "\n";
    out << "threads=" << c.threads << "\n";
    out << "sweep_param=";
    for (std::size_t i = 0; i < c.sweep_keys.size(); ++i) {
        if (i) out << "+";
        out << c.sweep_keys[i];
    }
    out << "\n";
    out << "sweep_values=";
    for (std::size_t i = 0; i < c.sweep_rows.size(); ++i) {
        if (i) out << ";";
        for (std::size_t j = 0; j < c.sweep_rows[i].size(); ++j) {
            if (j) out << "/";
            out << format_double(c.sweep_rows[i][j]);
        }
    }
    out << "\n";
    out << "out_dir=" << c.out_dir << "\n";
    return out.str();
}

ScenarioParams ExperimentConfig::scenario() const {
    ScenarioParams p;
    p.lambda_b = per_km2_to_per_m2(lambda_b_per_km2);
    p.lambda_r = per_km2_to_per_m2(lambda_r_per_km2);
    p.lambda_l = per_km2_to_per_m2(lambda_l_per_km2);
    p.lambda_u = per_km2_to_per_m2(lambda_u_per_km2);
    p.mean_blockage_len = mean_blockage_len_m;
    p.m_t = m_t;
    p.m_r = m_r;
    p.n_r = n_r;
    p.m_t_side = m_t * db_to_linear(side_lobe_tx_rel_db);
    // n_r_side scales an element count (amplitude), so the relative dB level
    // applies to its square.
    p.n_r_side = n_r * std::pow(10.0, side_lobe_ris_rel_db / 20.0);
    p.c0 = db_to_linear(c0_db);
    p.alpha = alpha;
    p.rho_d = rho_d;
    p.rho_v = rho_v;
    p.rho_ds = rho_ds;
    p.p_s = db_to_linear(p_s_db);
    p.sigma_c2 = dbm_to_watts(sigma_c2_dbm);
    p.sigma_s2 = dbm_to_watts(sigma_s2_dbm);
    p.bandwidth = bandwidth_mhz * 1e6;
    p.window_radius = window_radius_m;
    p.blockage_mode = blockage_mode == "explicit" ? BlockageMode::Explicit
                                                  : BlockageMode::Thinning;
    p.blockage_len_mode = blockage_len_mode == "uniform" ? BlockageLenMode::Uniform
                                                         : BlockageLenMode::Deterministic;
    p.greedy_target = greedy_target == "ris" ? GreedyTarget::Ris : GreedyTarget::User;
    p.vlos_sensing_cascaded = vlos_sensing_cascaded;
    p.xi1_intensity_at_bb = xi1_intensity_at_bb;
    return p;
}

void ExperimentConfig::validate() const {
    try {
        scenario().validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (mode != "simulate" && mode != "analyze" && mode != "both")
        throw ConfigError("mode: expected simulate, analyze or both");
    if (mode != "analyze" && trials < 1)
        throw ConfigError("trials: must be >= 1 when Monte Carlo runs (mode=" + mode + ")");
    if (thresholds_db.empty())
        throw ConfigError("thresholds_db: at least one eps1:eps2 pair required");
    if (threads < 0) throw ConfigError("threads: must be >= 0");
    if (out_dir.empty()) throw ConfigError("out_dir: must not be empty");
    for (const std::string& k : sweep_keys)
        if (!is_sweepable(k))
            throw ConfigError("sweep_param: '" + k + "' is not a sweepable scenario key");
    if (!sweep_keys.empty() && sweep_rows.empty())
        throw ConfigError("sweep_values: empty while sweep_param is set");
    if (sweep_keys.empty() && !sweep_rows.empty())
        throw ConfigError("sweep_param: empty while sweep_values is set");
    for (const std::vector<double>& row : sweep_rows)
        if (row.size() != sweep_keys.size())
            throw ConfigError("sweep_values: row width does not match sweep_param");
}

} // namespace riscov
