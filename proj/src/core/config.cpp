#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "errors.hpp"
#include "logderiv.hpp"
#include "theory.hpp"

namespace rmt::config {

namespace {

using ensembles::Family;

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorKind::parse, "invalid number for '" + key + "': " + value);
    }
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorKind::parse, "invalid integer for '" + key + "': " + value);
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorKind::parse, "invalid seed for '" + key + "': " + value);
    }
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

void set_key(Options& opts, const std::string& key, const std::string& value) {
    if (key == "ensemble") {
        Family f;
        if (!ensembles::parse_family(value, &f)) {
            throw Error(ErrorKind::usage,
                        "unknown ensemble '" + value +
                            "' (expected u, so-even, so-odd, usp)");
        }
        opts.family = f;
    } else if (key == "n") {
        const long v = parse_long(key, value);
        if (v < 1) throw Error(ErrorKind::usage, "n must be >= 1");
        opts.n = static_cast<int>(v);
    } else if (key == "a") {
        // comma-separated values append to the list
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            const double v = parse_double(key, item);
            if (!(v > 0.0)) throw Error(ErrorKind::usage, "a must be positive");
            opts.a_list.push_back(v);
        }
    } else if (key == "k") {
        opts.k = parse_double(key, value);
    } else if (key == "samples") {
        opts.samples = parse_long(key, value);
    } else if (key == "seed") {
        opts.seed = parse_u64(key, value);
    } else if (key == "workers") {
        const long v = parse_long(key, value);
        if (v < 1) throw Error(ErrorKind::usage, "workers must be >= 1");
        opts.workers = static_cast<int>(v);
    } else if (key == "backend") {
        ensembles::Backend b;
        if (!ensembles::parse_backend(value, &b)) {
            throw Error(ErrorKind::usage,
                        "unknown backend '" + value + "' (expected dense, tridiag)");
        }
        opts.backend = b;
    } else if (key == "cutoff") {
        const double v = parse_double(key, value);
        if (!(v > 0.0)) throw Error(ErrorKind::usage, "cutoff must be positive");
        opts.cutoff = v;
    } else if (key == "count") {
        const long v = parse_long(key, value);
        if (v < 1) throw Error(ErrorKind::usage, "count must be >= 1");
        opts.count = v;
    } else if (key == "format") {
        if (value != "csv" && value != "json") {
            throw Error(ErrorKind::usage,
                        "unknown format '" + value + "' (expected csv, json)");
        }
        opts.format = value;
    } else if (key == "out") {
        opts.out = value;
    } else {
        throw Error(ErrorKind::usage, "unknown config key '" + key + "'");
    }
}

Options load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::usage, "cannot open config file: " + path);
    Options opts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::parse, path + ":" + std::to_string(lineno) +
                                              ": expected key=value");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        try {
            set_key(opts, key, value);
        } catch (const Error& e) {
            throw Error(e.kind(), path + ":" + std::to_string(lineno) + ": " +
                                      e.what());
        }
    }
    return opts;
}

experiments::ExperimentConfig resolve(const Options& opts,
                                      const std::string& subcommand) {
    if (!opts.family) throw Error(ErrorKind::usage, "missing ensemble");
    if (!opts.n) throw Error(ErrorKind::usage, "missing n");
    experiments::ExperimentConfig cfg;
    cfg.ensemble = {*opts.family, *opts.n};
    cfg.a_list = opts.a_list;
    cfg.backend = opts.backend.value_or(ensembles::default_backend(*opts.family));
    if (!ensembles::backend_available(*opts.family, cfg.backend)) {
        throw Error(ErrorKind::usage,
                    std::string("no ") + ensembles::backend_name(cfg.backend) +
                        " backend for ensemble " +
                        ensembles::family_name(*opts.family));
    }
    if (opts.seed) {
        cfg.seed = *opts.seed;
    } else if (const char* env = std::getenv("RMT_SEED")) {
        cfg.seed = parse_u64("RMT_SEED", env);
    } else {
        cfg.seed = 12345;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    cfg.workers = opts.workers.value_or(hw > 0 ? static_cast<int>(hw) : 1);
    cfg.cutoff_override = opts.cutoff;
    if (subcommand == "sample") {
        cfg.samples = opts.count.value_or(1);
        return cfg;
    }
    if (opts.a_list.empty()) throw Error(ErrorKind::usage, "missing a");
    if (!opts.k) throw Error(ErrorKind::usage, "missing k");
    cfg.k = *opts.k;
    cfg.samples = opts.samples.value_or(experiments::default_samples(*opts.family));
    if (cfg.samples < 100) throw Error(ErrorKind::usage, "samples must be >= 100");
    for (const double a : cfg.a_list) {
        if (!(a < cfg.ensemble.n)) {
            throw Error(ErrorKind::usage, "a must be smaller than n");
        }
    }
    if (subcommand == "decompose") {
        if (!(cfg.k > 1.0)) {
            throw Error(ErrorKind::validity,
                        "decompose requires K>1 (cutoff choice)");
        }
        if (cfg.a_list.size() != 1) {
            throw Error(ErrorKind::usage, "decompose takes exactly one a");
        }
        if (!opts.cutoff) {
            logderiv::cutoff_c(cfg.a_list.front(), cfg.k);  // range check on a
        }
    } else {
        if (!theory::k_valid(cfg.ensemble.family, cfg.k)) {
            throw Error(ErrorKind::validity,
                        std::string("K out of range for ") +
                            ensembles::family_name(cfg.ensemble.family) +
                            ": requires " +
                            theory::k_threshold(cfg.ensemble.family));
        }
        if (subcommand == "scan" && cfg.a_list.size() < 2) {
            throw Error(ErrorKind::usage, "scan needs at least two values of a");
        }
    }
    return cfg;
}

std::vector<std::pair<std::string, std::string>> echo(
    const experiments::ExperimentConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("ensemble", ensembles::family_name(cfg.ensemble.family));
    kv.emplace_back("n", std::to_string(cfg.ensemble.n));
    std::string as;
    for (size_t i = 0; i < cfg.a_list.size(); ++i) {
        if (i) as += ",";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", cfg.a_list[i]);
        as += buf;
    }
    kv.emplace_back("a", as);
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", cfg.k);
        kv.emplace_back("k", buf);
    }
    kv.emplace_back("samples", std::to_string(cfg.samples));
    kv.emplace_back("seed", std::to_string(cfg.seed));
    kv.emplace_back("backend", ensembles::backend_name(cfg.backend));
    if (cfg.cutoff_override) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", *cfg.cutoff_override);
        kv.emplace_back("cutoff", buf);
    }
    return kv;
}

}  // namespace rmt::config
