// Command-line driver for librmt. Links the C API only.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rmt/rmt.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

int exit_code_for(rmt_status status) {
    switch (status) {
        case RMT_OK:
            return kExitOk;
        case RMT_ERR_USAGE:
        case RMT_ERR_DOMAIN:
        case RMT_ERR_VALIDITY:
        case RMT_ERR_PARSE:
            return kExitUsage;
        default:
            return kExitCheckFailure;
    }
}

int fail(rmt_status status) {
    std::cerr << "error: " << rmt_last_error() << "\n";
    return exit_code_for(status);
}

bool write_output(const std::string& path, const char* data) {
    if (path.empty()) {
        std::cout << data;
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return false;
    }
    out << data;
    return true;
}

struct ConfigGuard {
    rmt_config* cfg = rmt_config_new();
    ~ConfigGuard() { rmt_config_free(cfg); }
};

struct ReportGuard {
    rmt_report* rep = nullptr;
    ~ReportGuard() { rmt_report_free(rep); }
};

// Options gathered from flags; only flags the user passed are applied, so
// they override values from --config files.
struct FlagSet {
    std::vector<std::pair<std::string, std::string>> kv;
    std::string config_file;
    std::string out;
    std::string format;

    void add(CLI::App* cmd) {
        auto track = [this](const std::string& key) {
            return [this, key](const std::string& value) {
                kv.emplace_back(key, value);
            };
        };
        cmd->add_option_function<std::string>(
               "--ensemble", track("ensemble"), "u | so-even | so-odd | usp")
            ->expected(1);
        cmd->add_option_function<std::string>("--n", track("n"),
                                              "number of free eigenangles");
        cmd->add_option_function<std::string>(
               "--a", track("a"), "offset a (repeatable; z = 1 - a/N)")
            ->take_all();
        cmd->add_option_function<std::string>("--k", track("k"), "moment order K");
        cmd->add_option_function<std::string>("--samples", track("samples"),
                                              "Monte Carlo draws");
        cmd->add_option_function<std::string>("--seed", track("seed"),
                                              "master seed (default RMT_SEED or 12345)");
        cmd->add_option_function<std::string>("--workers", track("workers"),
                                              "worker threads (never changes results)");
        cmd->add_option_function<std::string>("--backend", track("backend"),
                                              "dense | tridiag");
        cmd->add_option_function<std::string>("--cutoff", track("cutoff"),
                                              "window cutoff c override");
        cmd->add_option_function<std::string>("--count", track("count"),
                                              "draws to dump (sample)");
        cmd->add_option("--config", config_file, "key=value config file");
        cmd->add_option("--format", format, "csv | json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", out, "output path (default stdout)");
    }

    rmt_status apply(rmt_config* cfg, const std::string& command_echo) const {
        rmt_config_set_command(cfg, command_echo.c_str());
        if (!config_file.empty()) {
            const rmt_status st = rmt_config_load_file(cfg, config_file.c_str());
            if (st != RMT_OK) return st;
        }
        for (const auto& [key, value] : kv) {
            const rmt_status st = rmt_config_set(cfg, key.c_str(), value.c_str());
            if (st != RMT_OK) return st;
        }
        if (!format.empty()) {
            const rmt_status st = rmt_config_set(cfg, "format", format.c_str());
            if (st != RMT_OK) return st;
        }
        return RMT_OK;
    }
};

std::string join_args(int argc, char** argv) {
    std::string joined;
    for (int i = 0; i < argc; ++i) {
        if (i) joined += ' ';
        joined += argv[i];
    }
    return joined;
}

int run_report_command(const FlagSet& flags, const std::string& echo,
                       rmt_status (*runner)(const rmt_config*, rmt_report**)) {
    ConfigGuard cfg;
    rmt_status st = flags.apply(cfg.cfg, echo);
    if (st != RMT_OK) return fail(st);
    ReportGuard rep;
    st = runner(cfg.cfg, &rep.rep);
    if (st != RMT_OK) return fail(st);
    const char* data =
        flags.format == "json" ? rmt_report_json(rep.rep) : rmt_report_csv(rep.rep);
    if (!write_output(flags.out, data)) return kExitCheckFailure;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"eigenangle sampling and log-derivative moments for the "
                 "classical compact groups"};
    app.set_version_flag("--version", rmt_version());
    app.require_subcommand(1);

    FlagSet sample_flags, moments_flags, scan_flags, decompose_flags;
    auto* cmd_sample = app.add_subcommand("sample", "dump sorted eigenangle draws");
    sample_flags.add(cmd_sample);
    auto* cmd_moments =
        app.add_subcommand("moments", "estimate E|P'/P(1-a/N)|^K vs prediction");
    moments_flags.add(cmd_moments);
    auto* cmd_scan =
        app.add_subcommand("scan", "a-sweep with convergence trend verdict");
    scan_flags.add(cmd_scan);
    auto* cmd_decompose = app.add_subcommand(
        "decompose", "window main-term / error-term decomposition study");
    decompose_flags.add(cmd_decompose);

    bool quick = false;
    std::string verify_out;
    auto* cmd_verify =
        app.add_subcommand("verify", "run the verification suites");
    cmd_verify->add_flag("--quick", quick, "fast subset (< 1 minute)");
    cmd_verify->add_option("--out", verify_out, "write JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }
    const std::string echo = join_args(argc, argv);

    if (cmd_sample->parsed()) {
        ConfigGuard cfg;
        rmt_status st = sample_flags.apply(cfg.cfg, echo);
        if (st != RMT_OK) return fail(st);
        char* csv = nullptr;
        st = rmt_sample_csv(cfg.cfg, &csv);
        if (st != RMT_OK) return fail(st);
        const bool ok = write_output(sample_flags.out, csv);
        rmt_string_free(csv);
        return ok ? kExitOk : kExitCheckFailure;
    }
    if (cmd_moments->parsed()) {
        return run_report_command(moments_flags, echo, rmt_run_moments);
    }
    if (cmd_scan->parsed()) {
        return run_report_command(scan_flags, echo, rmt_run_scan);
    }
    if (cmd_decompose->parsed()) {
        return run_report_command(decompose_flags, echo, rmt_run_decompose);
    }
    if (cmd_verify->parsed()) {
        ReportGuard rep;
        const rmt_status st = rmt_verify(quick ? 1 : 0, echo.c_str(), &rep.rep);
        if (st != RMT_OK) return fail(st);
        std::cout << rmt_report_text(rep.rep);
        if (!verify_out.empty() &&
            !write_output(verify_out, rmt_report_json(rep.rep))) {
            return kExitCheckFailure;
        }
        return rmt_report_passed(rep.rep) ? kExitOk : kExitCheckFailure;
    }
    return kExitUsage;
}
