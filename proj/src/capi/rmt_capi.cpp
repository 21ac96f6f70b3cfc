#include "rmt/rmt.h"

#include <cstring>
#include <string>

#include "config.hpp"
#include "ensembles.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "report.hpp"
#include "theory.hpp"
#include "verify.hpp"
#include "version.hpp"

namespace {

thread_local std::string g_last_error;

rmt_status status_from(const rmt::Error& e) {
    using rmt::ErrorKind;
    switch (e.kind()) {
        case ErrorKind::usage: return RMT_ERR_USAGE;
        case ErrorKind::domain: return RMT_ERR_DOMAIN;
        case ErrorKind::validity: return RMT_ERR_VALIDITY;
        case ErrorKind::solver_failure: return RMT_ERR_SOLVER;
        case ErrorKind::quadrature_failure: return RMT_ERR_QUADRATURE;
        case ErrorKind::sampler_integrity: return RMT_ERR_SAMPLER;
        case ErrorKind::parse: return RMT_ERR_PARSE;
        case ErrorKind::degenerate_input: return RMT_ERR_DOMAIN;
    }
    return RMT_ERR_INTERNAL;
}

template <class Fn>
rmt_status guarded(Fn&& fn) {
    try {
        fn();
        return RMT_OK;
    } catch (const rmt::Error& e) {
        g_last_error = e.what();
        return status_from(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return RMT_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return RMT_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

bool parse_family_checked(const char* name, rmt::ensembles::Family* out) {
    if (name != nullptr && rmt::ensembles::parse_family(name, out)) return true;
    g_last_error = std::string("unknown ensemble '") + (name ? name : "") + "'";
    return false;
}

}  // namespace

struct rmt_config {
    rmt::config::Options options;
};

struct rmt_report {
    std::string csv;
    std::string json;
    std::string text;
    bool passed = true;
};

extern "C" {

const char* rmt_version(void) { return rmt::kVersion; }

const char* rmt_last_error(void) { return g_last_error.c_str(); }

void rmt_string_free(char* s) { delete[] s; }

rmt_config* rmt_config_new(void) { return new rmt_config(); }

void rmt_config_free(rmt_config* cfg) { delete cfg; }

rmt_status rmt_config_set(rmt_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value) {
        g_last_error = "null argument";
        return RMT_ERR_USAGE;
    }
    return guarded([&] { rmt::config::set_key(cfg->options, key, value); });
}

rmt_status rmt_config_load_file(rmt_config* cfg, const char* path) {
    if (!cfg || !path) {
        g_last_error = "null argument";
        return RMT_ERR_USAGE;
    }
    return guarded([&] {
        rmt::config::Options file = rmt::config::load_file(path);
        file.command_line = cfg->options.command_line;
        cfg->options = std::move(file);
    });
}

rmt_status rmt_config_set_command(rmt_config* cfg, const char* command) {
    if (!cfg || !command) {
        g_last_error = "null argument";
        return RMT_ERR_USAGE;
    }
    cfg->options.command_line = command;
    return RMT_OK;
}

rmt_status rmt_config_validate(const rmt_config* cfg, const char* subcommand) {
    if (!cfg || !subcommand) {
        g_last_error = "null argument";
        return RMT_ERR_USAGE;
    }
    return guarded([&] { rmt::config::resolve(cfg->options, subcommand); });
}

rmt_status rmt_sample_csv(const rmt_config* cfg, char** out_csv) {
    if (!cfg || !out_csv) {
        g_last_error = "null argument";
        return RMT_ERR_USAGE;
    }
    return guarded([&] {
        const auto resolved = rmt::config::resolve(cfg->options, "sample");
        *out_csv = dup_string(rmt::report::sample_csv(resolved));
    });
}

rmt_status rmt_run_moments(const rmt_config* cfg, rmt_report** out) {
    if (!cfg || !out) {
        g_last_error = "null argument";
        return RMT_ERR_USAGE;
    }
    return guarded([&] {
        const auto resolved = rmt::config::resolve(cfg->options, "moments");
        const auto rows = rmt::experiments::run_moment(resolved);
        rmt::report::RunRecord record{cfg->options.command_line,
                                      rmt::report::now_iso8601_utc(),
                                      resolved.seed};
        auto* rep = new rmt_report();
        rep->csv = rmt::report::moments_csv(resolved, rows);
        rep->json = rmt::report::moments_json(resolved, rows, record);
        rep->text = rep->csv;
        rep->passed = true;
        *out = rep;
    });
}

rmt_status rmt_run_scan(const rmt_config* cfg, rmt_report** out) {
    if (!cfg || !out) {
        g_last_error = "null argument";
        return RMT_ERR_USAGE;
    }
    return guarded([&] {
        const auto resolved = rmt::config::resolve(cfg->options, "scan");
        const auto scan = rmt::experiments::run_scan(resolved);
        rmt::report::RunRecord record{cfg->options.command_line,
                                      rmt::report::now_iso8601_utc(),
                                      resolved.seed};
        auto* rep = new rmt_report();
        rep->csv = rmt::report::scan_csv(resolved, scan);
        rep->json = rmt::report::scan_json(resolved, scan, record);
        rep->text = rep->csv;
        rep->passed = true;
        *out = rep;
    });
}

rmt_status rmt_run_decompose(const rmt_config* cfg, rmt_report** out) {
    if (!cfg || !out) {
        g_last_error = "null argument";
        return RMT_ERR_USAGE;
    }
    return guarded([&] {
        const auto resolved = rmt::config::resolve(cfg->options, "decompose");
        const auto rep_data = rmt::experiments::run_decomposition_study(resolved);
        rmt::report::RunRecord record{cfg->options.command_line,
                                      rmt::report::now_iso8601_utc(),
                                      resolved.seed};
        auto* rep = new rmt_report();
        rep->csv = rmt::report::decompose_csv(resolved, rep_data);
        rep->json = rmt::report::decompose_json(resolved, rep_data, record);
        rep->text = rep->csv;
        rep->passed = true;
        *out = rep;
    });
}

rmt_status rmt_verify(int quick, const char* command_echo, rmt_report** out) {
    if (!out) {
        g_last_error = "null argument";
        return RMT_ERR_USAGE;
    }
    return guarded([&] {
        const auto checks = rmt::verify::run_verify_suites(quick != 0);
        rmt::report::RunRecord record{command_echo ? command_echo : "verify",
                                      rmt::report::now_iso8601_utc(), 0};
        auto* rep = new rmt_report();
        rep->text = rmt::report::verify_text(checks);
        rep->json = rmt::report::verify_json(checks, record);
        rep->csv = rep->text;
        rep->passed = rmt::verify::all_passed(checks);
        *out = rep;
    });
}

const char* rmt_report_csv(const rmt_report* report) {
    return report ? report->csv.c_str() : "";
}

const char* rmt_report_json(const rmt_report* report) {
    return report ? report->json.c_str() : "";
}

const char* rmt_report_text(const rmt_report* report) {
    return report ? report->text.c_str() : "";
}

int rmt_report_passed(const rmt_report* report) {
    return report && report->passed ? 1 : 0;
}

void rmt_report_free(rmt_report* report) { delete report; }

rmt_status rmt_predict(const char* ensemble, int n, double a, double k,
                       double* out_value) {
    if (!out_value) {
        g_last_error = "null argument";
        return RMT_ERR_USAGE;
    }
    rmt::ensembles::Family family;
    if (!parse_family_checked(ensemble, &family)) return RMT_ERR_USAGE;
    return guarded([&] {
        *out_value = rmt::theory::predict({family, n, a, k}).value;
    });
}

rmt_status rmt_integer_moment(const char* ensemble, int k_int, int n, double a,
                              double* out_value) {
    if (!out_value) {
        g_last_error = "null argument";
        return RMT_ERR_USAGE;
    }
    rmt::ensembles::Family family;
    if (!parse_family_checked(ensemble, &family)) return RMT_ERR_USAGE;
    return guarded([&] {
        *out_value = rmt::theory::integer_moment(family, k_int, n, a);
    });
}

rmt_status rmt_limit_integral(const char* ensemble, int n, double a, double k,
                              double* out_value) {
    if (!out_value) {
        g_last_error = "null argument";
        return RMT_ERR_USAGE;
    }
    rmt::ensembles::Family family;
    if (!parse_family_checked(ensemble, &family)) return RMT_ERR_USAGE;
    return guarded([&] {
        *out_value = rmt::theory::limit_integral({family, n, a, k});
    });
}

}  // extern "C"
