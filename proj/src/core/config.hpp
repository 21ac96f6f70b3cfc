#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ensembles.hpp"
#include "experiments.hpp"

namespace rmt::config {

// Raw settings accumulated from config files and flags; later assignments
// win, which gives flags-override-file when the file is loaded first.
struct Options {
    std::optional<ensembles::Family> family;
    std::optional<int> n;
    std::vector<double> a_list;
    std::optional<double> k;
    std::optional<long> samples;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<ensembles::Backend> backend;
    std::optional<double> cutoff;
    std::optional<long> count;
    std::optional<std::string> format;  // csv | json
    std::optional<std::string> out;
    std::string command_line;  // echoed into run records, not a config key
};

// Accepted keys: ensemble, n, a (repeatable or comma-separated), k,
// samples, seed, workers, backend, cutoff, count, format, out.
// Unknown keys and malformed values throw with the offending name.
void set_key(Options& opts, const std::string& key, const std::string& value);

// key=value lines; '#' comments and blank lines are skipped. Parse errors
// carry the line number.
Options load_file(const std::string& path);

// Fills defaults (seed from RMT_SEED when unset, per-family sample counts,
// default backend, worker count) and validates for the given subcommand
// ("moments", "scan", "decompose", "sample").
experiments::ExperimentConfig resolve(const Options& opts,
                                      const std::string& subcommand);

// Echo of the resolved config as key/value pairs (excludes workers, which
// never affects results).
std::vector<std::pair<std::string, std::string>> echo(
    const experiments::ExperimentConfig& cfg);

}  // namespace rmt::config
