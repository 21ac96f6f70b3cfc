#include "report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

#include <json.hpp>

#include "config.hpp"
#include "logderiv.hpp"
#include "rng.hpp"
#include "version.hpp"

namespace rmt::report {

namespace {

using nlohmann::json;

json config_json(const experiments::ExperimentConfig& cfg) {
    json j;
    for (const auto& [key, value] : config::echo(cfg)) j[key] = value;
    return j;
}

json record_json(const RunRecord& record) {
    return json{{"timestamp", record.timestamp},
                {"command", record.command},
                {"version", kVersion},
                {"seed", record.seed}};
}

json estimate_json(const experiments::ExperimentConfig& cfg,
                   const experiments::MomentEstimate& e) {
    return json{{"ensemble", ensembles::family_name(cfg.ensemble.family)},
                {"n", cfg.ensemble.n},
                {"a", e.a},
                {"k", cfg.k},
                {"samples", e.count},
                {"estimate", e.mean},
                {"stderr", e.stderr_},
                {"prediction", e.prediction},
                {"ratio", e.ratio},
                {"max_share", e.max_share},
                {"unreliable", e.unreliable},
                {"seed", cfg.seed},
                {"backend", ensembles::backend_name(cfg.backend)}};
}

void append_moment_row(std::string& out, const experiments::ExperimentConfig& cfg,
                       const experiments::MomentEstimate& e) {
    out += ensembles::family_name(cfg.ensemble.family);
    out += ',';
    out += std::to_string(cfg.ensemble.n);
    out += ',';
    out += format17(e.a);
    out += ',';
    out += format17(cfg.k);
    out += ',';
    out += std::to_string(e.count);
    out += ',';
    out += format17(e.mean);
    out += ',';
    out += format17(e.stderr_);
    out += ',';
    out += format17(e.prediction);
    out += ',';
    out += format17(e.ratio);
    out += ',';
    out += format17(e.max_share);
    out += ',';
    out += std::to_string(cfg.seed);
    out += ',';
    out += ensembles::backend_name(cfg.backend);
    out += '\n';
}

}  // namespace

const char* kMomentsCsvHeader =
    "ensemble,N,a,K,samples,estimate,stderr,prediction,ratio,max_share,seed,"
    "backend";

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string moments_csv(const experiments::ExperimentConfig& cfg,
                        const std::vector<experiments::MomentEstimate>& rows) {
    std::string out = kMomentsCsvHeader;
    out += '\n';
    for (const auto& e : rows) append_moment_row(out, cfg, e);
    return out;
}

std::string scan_csv(const experiments::ExperimentConfig& cfg,
                     const experiments::ScanResult& scan) {
    std::string out = moments_csv(cfg, scan.rows);
    out += "# trend widened |ratio-1| non-increasing: ";
    out += scan.trend_non_increasing ? "PASS" : "FAIL";
    out += '\n';
    return out;
}

std::string decompose_csv(const experiments::ExperimentConfig& cfg,
                          const experiments::DecompositionReport& rep) {
    std::string out =
        "ensemble,N,a,K,samples,c,mean_full_K,mean_M_K,mean_E_K,"
        "ratio_M_over_full,ratio_E_over_M,max_identity_residual,seed,backend\n";
    out += ensembles::family_name(cfg.ensemble.family);
    out += ',';
    out += std::to_string(cfg.ensemble.n);
    out += ',';
    out += format17(rep.a);
    out += ',';
    out += format17(cfg.k);
    out += ',';
    out += std::to_string(rep.count);
    out += ',';
    out += format17(rep.c_used);
    out += ',';
    out += format17(rep.mean_full_k);
    out += ',';
    out += format17(rep.mean_m_k);
    out += ',';
    out += format17(rep.mean_e_k);
    out += ',';
    out += format17(rep.ratio_m_over_full);
    out += ',';
    out += format17(rep.ratio_e_over_m);
    out += ',';
    out += format17(rep.max_identity_residual);
    out += ',';
    out += std::to_string(cfg.seed);
    out += ',';
    out += ensembles::backend_name(cfg.backend);
    out += '\n';
    return out;
}

std::string sample_csv(const experiments::ExperimentConfig& cfg) {
    std::string out = "# ensemble=";
    out += ensembles::family_name(cfg.ensemble.family);
    out += " n=" + std::to_string(cfg.ensemble.n);
    out += " count=" + std::to_string(cfg.samples);
    out += " seed=" + std::to_string(cfg.seed);
    out += " backend=";
    out += ensembles::backend_name(cfg.backend);
    out += '\n';
    for (long i = 0; i < cfg.samples; ++i) {
        rng::RngStream stream(cfg.seed, static_cast<std::uint64_t>(i));
        const ensembles::AngleSample s =
            ensembles::sample(cfg.ensemble, stream, cfg.backend);
        out += std::to_string(i);
        for (const double theta : s.angles) {
            out += ',';
            out += format17(theta);
        }
        out += '\n';
    }
    return out;
}

std::string moments_json(const experiments::ExperimentConfig& cfg,
                         const std::vector<experiments::MomentEstimate>& rows,
                         const RunRecord& record) {
    json j;
    j["record"] = record_json(record);
    j["config"] = config_json(cfg);
    j["results"] = json::array();
    for (const auto& e : rows) j["results"].push_back(estimate_json(cfg, e));
    return j.dump(2) + "\n";
}

std::string scan_json(const experiments::ExperimentConfig& cfg,
                      const experiments::ScanResult& scan,
                      const RunRecord& record) {
    json j;
    j["record"] = record_json(record);
    j["config"] = config_json(cfg);
    j["results"] = json::array();
    for (size_t i = 0; i < scan.rows.size(); ++i) {
        json row = estimate_json(cfg, scan.rows[i]);
        row["widened_deviation"] = scan.widened_deviation[i];
        j["results"].push_back(row);
    }
    j["trend_non_increasing"] = scan.trend_non_increasing;
    return j.dump(2) + "\n";
}

std::string decompose_json(const experiments::ExperimentConfig& cfg,
                           const experiments::DecompositionReport& rep,
                           const RunRecord& record) {
    json j;
    j["record"] = record_json(record);
    j["config"] = config_json(cfg);
    j["result"] = {{"a", rep.a},
                   {"c", rep.c_used},
                   {"samples", rep.count},
                   {"mean_full_K", rep.mean_full_k},
                   {"mean_M_K", rep.mean_m_k},
                   {"mean_E_K", rep.mean_e_k},
                   {"ratio_M_over_full", rep.ratio_m_over_full},
                   {"ratio_E_over_M", rep.ratio_e_over_m},
                   {"max_identity_residual", rep.max_identity_residual},
                   {"lemma21_mean", rep.lemma21_mean},
                   {"lemma22_max", rep.lemma22_max},
                   {"lemma23_max", rep.lemma23_max},
                   {"prop_e_stat", rep.prop_e_stat},
                   {"window_histogram", rep.window_histogram}};
    return j.dump(2) + "\n";
}

std::string verify_text(const std::vector<verify::CheckResult>& checks) {
    std::string out;
    for (const auto& c : checks) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "[%s] %-32s (%.1fs) ",
                      c.passed ? "PASS" : "FAIL", c.name.c_str(), c.seconds);
        out += buf;
        out += c.detail;
        out += '\n';
    }
    out += verify::all_passed(checks) ? "all checks passed\n" : "CHECKS FAILED\n";
    return out;
}

std::string verify_json(const std::vector<verify::CheckResult>& checks,
                        const RunRecord& record) {
    json j;
    j["record"] = record_json(record);
    j["checks"] = json::array();
    for (const auto& c : checks) {
        j["checks"].push_back({{"name", c.name},
                               {"passed", c.passed},
                               {"detail", c.detail},
                               {"seconds", c.seconds}});
    }
    j["all_passed"] = verify::all_passed(checks);
    return j.dump(2) + "\n";
}

std::string now_iso8601_utc() {
    const std::time_t t =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace rmt::report
