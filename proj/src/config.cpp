#include "sff/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sff {

const char* ensemble_name(EnsembleKind kind) {
    switch (kind) {
        case EnsembleKind::cbe: return "cbe";
        case EnsembleKind::perm: return "perm";
        case EnsembleKind::perm_local: return "perm_local";
        case EnsembleKind::lax: return "lax";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

long parse_int(const std::string& field, const std::string& value) {
    long out = 0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || p != value.data() + value.size())
        throw ConfigError(field + ": expected an integer, got '" + value + "'");
    return out;
}

std::uint64_t parse_u64(const std::string& field, const std::string& value) {
    std::uint64_t out = 0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || p != value.data() + value.size())
        throw ConfigError(field + ": expected an unsigned integer, got '" + value + "'");
    return out;
}

double parse_double(const std::string& field, const std::string& value) {
    try {
        size_t pos = 0;
        double out = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return out;
    } catch (const std::exception&) {
        throw ConfigError(field + ": expected a number, got '" + value + "'");
    }
}

std::vector<int> parse_cycles(const std::string& spec) {
    std::vector<int> cycles;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("permutation: empty cycle length in '" + spec + "'");
        cycles.push_back(static_cast<int>(parse_int("permutation", item)));
    }
    if (cycles.empty()) throw ConfigError("permutation: no cycle lengths given");
    return cycles;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "ensemble") {
            if (value == "cbe") cfg.ensemble = EnsembleKind::cbe;
            else if (value == "perm") cfg.ensemble = EnsembleKind::perm;
            else if (value == "perm_local") cfg.ensemble = EnsembleKind::perm_local;
            else if (value == "lax") cfg.ensemble = EnsembleKind::lax;
            else throw ConfigError("ensemble: unknown value '" + value + "'");
        } else if (key == "d") {
            cfg.d = static_cast<int>(parse_int(key, value));
        } else if (key == "L") {
            cfg.L = static_cast<int>(parse_int(key, value));
        } else if (key == "block") {
            cfg.block = static_cast<int>(parse_int(key, value));
        } else if (key == "beta") {
            cfg.beta = parse_double(key, value);
        } else if (key == "g") {
            cfg.g = parse_double(key, value);
        } else if (key == "permutation") {
            cfg.permutation = value;
            cfg.cycles.clear();
            if (value.rfind("cycles:", 0) == 0) cfg.cycles = parse_cycles(value.substr(7));
            else if (value != "random")
                throw ConfigError("permutation: expected 'random' or 'cycles:...', got '" + value + "'");
        } else if (key == "perm_seed") {
            cfg.perm_seed = parse_u64(key, value);
            cfg.has_perm_seed = true;
        } else if (key == "n_samples") {
            cfg.n_samples = parse_int(key, value);
        } else if (key == "master_seed") {
            cfg.master_seed = parse_u64(key, value);
        } else if (key == "t_max") {
            cfg.t_max = parse_int(key, value);
        } else if (key == "workers") {
            cfg.workers = static_cast<int>(parse_int(key, value));
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "theory") {
            cfg.theory = split_list(value);
        } else if (key == "coulomb_c") {
            cfg.coulomb_c = parse_double(key, value);
        } else {
            throw ConfigError("unknown key '" + key + "' (line " + std::to_string(line_no) + ")");
        }
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot read config file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_config_text(buf.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "ensemble = " << ensemble_name(cfg.ensemble) << "\n";
    if (cfg.ensemble == EnsembleKind::perm_local) {
        out << "L = " << cfg.L << "\n";
        out << "block = " << cfg.block << "\n";
    } else {
        out << "d = " << cfg.d << "\n";
    }
    if (cfg.ensemble == EnsembleKind::cbe) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", cfg.beta);
        out << "beta = " << buf << "\n";
    } else {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", cfg.g);
        out << "g = " << buf << "\n";
    }
    if (cfg.ensemble == EnsembleKind::perm || cfg.ensemble == EnsembleKind::perm_local) {
        out << "permutation = " << cfg.permutation << "\n";
        if (cfg.has_perm_seed) out << "perm_seed = " << cfg.perm_seed << "\n";
    }
    out << "n_samples = " << cfg.n_samples << "\n";
    out << "master_seed = " << cfg.master_seed << "\n";
    out << "t_max = " << cfg.t_max << "\n";
    out << "workers = " << cfg.workers << "\n";
    out << "out = " << cfg.out << "\n";
    if (!cfg.theory.empty()) {
        out << "theory = ";
        for (size_t i = 0; i < cfg.theory.size(); ++i) out << (i ? "," : "") << cfg.theory[i];
        out << "\n";
    }
    if (cfg.coulomb_c != 3.6) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", cfg.coulomb_c);
        out << "coulomb_c = " << buf << "\n";
    }
    return out.str();
}

void validate_config(const ExperimentConfig& cfg) {
    switch (cfg.ensemble) {
        case EnsembleKind::cbe:
            if (cfg.d < 2 || cfg.d % 2 != 0) throw ConfigError("d: cbe requires an even d >= 2");
            if (!(cfg.beta > 0)) throw ConfigError("beta: must be positive");
            break;
        case EnsembleKind::perm:
            if (cfg.d < 1) throw ConfigError("d: must be >= 1");
            if (cfg.g < 0 || cfg.g > kPi / 2) throw ConfigError("g: must lie in [0, pi/2]");
            break;
        case EnsembleKind::perm_local:
            if (cfg.L < 2 || cfg.L > 14) throw ConfigError("L: must lie in [2, 14]");
            if (cfg.block < 2 || cfg.block > cfg.L)
                throw ConfigError("block: must lie in [2, L]");
            if (cfg.g < 0 || cfg.g > kPi / 2) throw ConfigError("g: must lie in [0, pi/2]");
            break;
        case EnsembleKind::lax:
            if (cfg.d < 2) throw ConfigError("d: must be >= 2");
            if (!(cfg.g > 0 && cfg.g < 1)) throw ConfigError("g: lax requires 0 < g < 1");
            break;
    }
    if (!cfg.cycles.empty()) {
        long total = 0;
        for (int len : cfg.cycles) {
            if (len < 1) throw ConfigError("permutation: cycle lengths must be positive");
            total += len;
        }
        if (total != cfg.dimension())
            throw ConfigError("permutation: cycle lengths sum to " + std::to_string(total) +
                              ", expected " + std::to_string(cfg.dimension()));
    }
    if (cfg.n_samples < 2) throw ConfigError("n_samples: must be >= 2");
    if (cfg.t_max < 0) throw ConfigError("t_max: must be >= 0");
    if (cfg.workers < 0) throw ConfigError("workers: must be >= 0");
    for (const std::string& name : cfg.theory) {
        if (!parse_theory_kind_name_ok(name))
            throw ConfigError("theory: unknown curve kind '" + name + "'");
    }
}

}  // namespace sff
