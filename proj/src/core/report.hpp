#pragma once

#include <string>
#include <vector>

#include "experiments.hpp"
#include "verify_types.hpp"

namespace rmt::report {

// 17 significant digits: round-trip safe for binary64.
std::string format17(double v);

struct RunRecord {
    std::string command;
    std::string timestamp;  // set at run time; never part of CSV output
    std::uint64_t seed = 0;
};

// CSV header pinned by the schema test:
// ensemble,N,a,K,samples,estimate,stderr,prediction,ratio,max_share,seed,backend
extern const char* kMomentsCsvHeader;

std::string moments_csv(const experiments::ExperimentConfig& cfg,
                        const std::vector<experiments::MomentEstimate>& rows);

// Moments rows plus a trailing "# trend ..." verdict comment.
std::string scan_csv(const experiments::ExperimentConfig& cfg,
                     const experiments::ScanResult& scan);

std::string decompose_csv(const experiments::ExperimentConfig& cfg,
                          const experiments::DecompositionReport& rep);

// One row per draw: sample_index followed by the sorted angles, after a
// single '#' metadata line carrying the reproduction config.
std::string sample_csv(const experiments::ExperimentConfig& cfg);

std::string moments_json(const experiments::ExperimentConfig& cfg,
                         const std::vector<experiments::MomentEstimate>& rows,
                         const RunRecord& record);
std::string scan_json(const experiments::ExperimentConfig& cfg,
                      const experiments::ScanResult& scan, const RunRecord& record);
std::string decompose_json(const experiments::ExperimentConfig& cfg,
                           const experiments::DecompositionReport& rep,
                           const RunRecord& record);

std::string verify_text(const std::vector<verify::CheckResult>& checks);
std::string verify_json(const std::vector<verify::CheckResult>& checks,
                        const RunRecord& record);

std::string now_iso8601_utc();

}  // namespace rmt::report
