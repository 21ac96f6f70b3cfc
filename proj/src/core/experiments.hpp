#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ensembles.hpp"
#include "theory.hpp"

namespace rmt::experiments {

struct ExperimentConfig {
    ensembles::EnsembleSpec ensemble;
    std::vector<double> a_list;
    double k = 2.0;
    long samples = 0;
    std::uint64_t seed = 0;
    int workers = 1;
    ensembles::Backend backend = ensembles::Backend::dense;
    std::optional<double> cutoff_override;
};

// Family defaults tuned to the tail weight of |P'/P|^K per family.
long default_samples(ensembles::Family family);

struct MomentEstimate {
    double a = 0.0;
    double mean = 0.0;
    double stderr_ = 0.0;
    long count = 0;
    double max_share = 0.0;  // largest single-sample contribution / total
    double prediction = 0.0;
    double ratio = 0.0;
    bool unreliable = false;  // max_share > 0.5: heavy-tail guard tripped
};

// Sample mean of |P'/P(1-a/N)|^K over `samples` independent draws, one
// result per a in a_list. Per-sample streams are (seed, sample index);
// aggregation is fixed-block pairwise in index order, so the result is
// bit-identical for any worker count. The angle draw is shared across the
// a-list (the draw does not depend on a).
std::vector<MomentEstimate> run_moment(const ExperimentConfig& config);

struct ScanResult {
    std::vector<MomentEstimate> rows;        // in a_list order (descending a)
    std::vector<double> widened_deviation;   // max(0, |ratio-1| - 2 rel stderr)
    bool trend_non_increasing = false;
};

// a-sweep with the convergence-trend verdict; requires >= 2 descending a.
ScanResult run_scan(const ExperimentConfig& config);

struct DecompositionReport {
    double a = 0.0;
    double c_used = 0.0;
    double mean_full_k = 0.0;
    double mean_m_k = 0.0;
    double mean_e_k = 0.0;
    double ratio_m_over_full = 0.0;
    double ratio_e_over_m = 0.0;
    std::vector<long> window_histogram;
    long count = 0;
    // diagnostics
    double max_identity_residual = 0.0;   // |full-(M+X1+X2-X3)|/|full|
    double lemma21_mean = 0.0;            // mean |X1|^2 / N^2
    double lemma22_max = 0.0;             // max |X2| c / (N + |X1|)
    double lemma23_max = 0.0;             // max |X3| / (N + |X1|)
    double prop_e_stat = 0.0;             // E|E|^K (c/N)^K
};

// Decomposition study at a single a (the first list entry): estimates
// E|full|^K, E|M|^K, E|E|^K with c = cutoff_c(a, K) unless overridden.
DecompositionReport run_decomposition_study(const ExperimentConfig& config);

}  // namespace rmt::experiments
