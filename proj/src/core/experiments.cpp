#include "experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <thread>

#include "errors.hpp"
#include "internal_util.hpp"
#include "logderiv.hpp"
#include "rng.hpp"

namespace rmt::experiments {

namespace {

constexpr long kBlock = 1024;
constexpr int kMaxRetries = 3;
constexpr int kHistogramCap = 32;

using ensembles::Family;

// Runs per_sample over [0, samples) in fixed blocks. Any worker may pick
// up any block; block contents are evaluated in index order and the
// caller reduces blocks pairwise, so scheduling cannot affect the result.
template <class Accum, class Make, class Fn>
std::vector<Accum> map_blocks(long samples, int workers, const Make& make,
                              const Fn& per_sample) {
    const long nblocks = (samples + kBlock - 1) / kBlock;
    std::vector<Accum> blocks;
    blocks.reserve(nblocks);
    for (long b = 0; b < nblocks; ++b) blocks.push_back(make());
    std::atomic<long> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&]() {
        try {
            for (;;) {
                if (failed.load(std::memory_order_relaxed)) return;
                const long b = next.fetch_add(1, std::memory_order_relaxed);
                if (b >= nblocks) return;
                const long lo = b * kBlock;
                const long hi = std::min(samples, lo + kBlock);
                for (long i = lo; i < hi; ++i) per_sample(i, blocks[b]);
            }
        } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return blocks;
}

template <class Accum>
Accum reduce_pairwise(const std::vector<Accum>& blocks, long lo, long hi) {
    if (hi - lo == 1) return blocks[lo];
    const long mid = lo + (hi - lo) / 2;
    Accum left = reduce_pairwise(blocks, lo, mid);
    const Accum right = reduce_pairwise(blocks, mid, hi);
    left.combine(right);
    return left;
}

struct MomentAccum {
    std::vector<double> sum;
    std::vector<double> sumsq;
    std::vector<double> maxv;
    long count = 0;
    long failures = 0;
    void combine(const MomentAccum& o) {
        for (size_t i = 0; i < sum.size(); ++i) {
            sum[i] += o.sum[i];
            sumsq[i] += o.sumsq[i];
            maxv[i] = std::max(maxv[i], o.maxv[i]);
        }
        count += o.count;
        failures += o.failures;
    }
};

void validate_common(const ExperimentConfig& c) {
    if (c.ensemble.n < 1) throw Error(ErrorKind::usage, "n must be >= 1");
    if (c.samples < 100) throw Error(ErrorKind::usage, "samples must be >= 100");
    if (c.workers < 1) throw Error(ErrorKind::usage, "workers must be >= 1");
    if (c.a_list.empty()) throw Error(ErrorKind::usage, "need at least one a");
    for (const double a : c.a_list) {
        if (!(a > 0.0) || !(a < c.ensemble.n)) {
            throw Error(ErrorKind::domain, "each a must satisfy 0 < a < n");
        }
    }
    if (!ensembles::backend_available(c.ensemble.family, c.backend)) {
        throw Error(ErrorKind::usage,
                    std::string("no ") + ensembles::backend_name(c.backend) +
                        " backend for ensemble " +
                        ensembles::family_name(c.ensemble.family));
    }
}

// Draw sample `index`, retrying on the (deterministic) off chance of a
// solver failure by reseeking the stream far forward.
ensembles::AngleSample draw(const ExperimentConfig& c, long index,
                            long* failures) {
    for (int r = 0;; ++r) {
        rng::RngStream stream(c.seed, static_cast<std::uint64_t>(index));
        if (r > 0) stream.seek(static_cast<std::uint64_t>(r) << 48);
        try {
            return ensembles::sample(c.ensemble, stream, c.backend);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::solver_failure &&
                e.kind() != ErrorKind::sampler_integrity) {
                throw;
            }
            ++*failures;
            if (r + 1 >= kMaxRetries) throw;
        }
    }
}

}  // namespace

long default_samples(Family family) {
    switch (family) {
        case Family::unitary: return 20000;
        case Family::so_even: return 20000;
        case Family::so_odd: return 1000;
        case Family::usp: return 200000;
    }
    return 20000;
}

std::vector<MomentEstimate> run_moment(const ExperimentConfig& config) {
    validate_common(config);
    if (!theory::k_valid(config.ensemble.family, config.k)) {
        throw Error(ErrorKind::validity,
                    std::string("K out of range for ") +
                        ensembles::family_name(config.ensemble.family) +
                        ": requires " + theory::k_threshold(config.ensemble.family));
    }
    const size_t na = config.a_list.size();
    const double kh = 0.5 * config.k;
    std::vector<logderiv::EvalPoint> points;
    points.reserve(na);
    for (const double a : config.a_list) {
        points.push_back(logderiv::make_eval_point(a, config.ensemble.n));
    }
    auto make = [na]() {
        MomentAccum acc;
        acc.sum.assign(na, 0.0);
        acc.sumsq.assign(na, 0.0);
        acc.maxv.assign(na, 0.0);
        return acc;
    };
    auto per_sample = [&](long index, MomentAccum& acc) {
        const ensembles::AngleSample sample = draw(config, index, &acc.failures);
        for (size_t ai = 0; ai < na; ++ai) {
            const std::complex<double> l = logderiv::log_deriv(sample, points[ai]);
            const double v = util::pow_quarter(std::norm(l), kh);
            acc.sum[ai] += v;
            acc.sumsq[ai] += v * v;
            acc.maxv[ai] = std::max(acc.maxv[ai], v);
        }
        ++acc.count;
    };
    const std::vector<MomentAccum> blocks =
        map_blocks<MomentAccum>(config.samples, config.workers, make, per_sample);
    const MomentAccum total =
        reduce_pairwise(blocks, 0, static_cast<long>(blocks.size()));
    if (total.failures * 1000 > config.samples) {
        throw Error(ErrorKind::sampler_integrity,
                    "sampler failure budget (0.1%) exceeded");
    }
    std::vector<MomentEstimate> out(na);
    for (size_t ai = 0; ai < na; ++ai) {
        MomentEstimate& e = out[ai];
        e.a = config.a_list[ai];
        e.count = total.count;
        const double cnt = static_cast<double>(total.count);
        e.mean = total.sum[ai] / cnt;
        const double var =
            std::max(0.0, (total.sumsq[ai] - total.sum[ai] * total.sum[ai] / cnt) /
                              (cnt - 1.0));
        e.stderr_ = std::sqrt(var / cnt);
        e.max_share = total.sum[ai] > 0.0 ? total.maxv[ai] / total.sum[ai] : 0.0;
        e.unreliable = e.max_share > 0.5;
        const theory::Prediction pred = theory::predict(
            {config.ensemble.family, config.ensemble.n, config.a_list[ai], config.k});
        e.prediction = pred.value;
        e.ratio = e.mean / pred.value;
    }
    return out;
}

ScanResult run_scan(const ExperimentConfig& config) {
    if (config.a_list.size() < 2) {
        throw Error(ErrorKind::usage, "scan needs at least two values of a");
    }
    for (size_t i = 1; i < config.a_list.size(); ++i) {
        if (!(config.a_list[i] < config.a_list[i - 1])) {
            throw Error(ErrorKind::usage, "scan needs a strictly descending a list");
        }
    }
    ScanResult result;
    result.rows = run_moment(config);
    result.widened_deviation.resize(result.rows.size());
    for (size_t i = 0; i < result.rows.size(); ++i) {
        const MomentEstimate& e = result.rows[i];
        const double rel_se = e.stderr_ / e.prediction;
        result.widened_deviation[i] =
            std::max(0.0, std::abs(e.ratio - 1.0) - 2.0 * rel_se);
    }
    result.trend_non_increasing = true;
    for (size_t i = 1; i < result.widened_deviation.size(); ++i) {
        if (result.widened_deviation[i] >
            result.widened_deviation[i - 1] + 1e-12) {
            result.trend_non_increasing = false;
        }
    }
    return result;
}

DecompositionReport run_decomposition_study(const ExperimentConfig& config) {
    validate_common(config);
    if (!(config.k > 1.0)) {
        throw Error(ErrorKind::validity,
                    "decomposition study requires K>1 (cutoff choice)");
    }
    const double a = config.a_list.front();
    const logderiv::EvalPoint point = logderiv::make_eval_point(a, config.ensemble.n);
    logderiv::Cutoff cutoff{0.0, config.k};
    if (config.cutoff_override) {
        if (!(*config.cutoff_override > 0.0)) {
            throw Error(ErrorKind::usage, "cutoff override must be positive");
        }
        cutoff.c = *config.cutoff_override;
    } else {
        cutoff = logderiv::cutoff_c(a, config.k);
    }
    const double kh = 0.5 * config.k;
    const double n = config.ensemble.n;

    struct DecompAccum {
        double sum_full = 0.0, sum_m = 0.0, sum_e = 0.0;
        double sum_x1sq = 0.0;
        double max_identity = 0.0, max_l22 = 0.0, max_l23 = 0.0;
        std::array<long, kHistogramCap + 1> hist{};
        long count = 0;
        long failures = 0;
        void combine(const DecompAccum& o) {
            sum_full += o.sum_full;
            sum_m += o.sum_m;
            sum_e += o.sum_e;
            sum_x1sq += o.sum_x1sq;
            max_identity = std::max(max_identity, o.max_identity);
            max_l22 = std::max(max_l22, o.max_l22);
            max_l23 = std::max(max_l23, o.max_l23);
            for (size_t i = 0; i < hist.size(); ++i) hist[i] += o.hist[i];
            count += o.count;
            failures += o.failures;
        }
    };
    auto make = []() { return DecompAccum{}; };
    auto per_sample = [&](long index, DecompAccum& acc) {
        const ensembles::AngleSample sample = draw(config, index, &acc.failures);
        const logderiv::Decomposition d = logderiv::decompose(sample, point, cutoff);
        acc.sum_full += util::pow_quarter(std::norm(d.full), kh);
        acc.sum_m += util::pow_quarter(std::norm(d.m_term), kh);
        acc.sum_e += util::pow_quarter(std::norm(d.e_term), kh);
        const double ax1 = std::abs(d.x1);
        acc.sum_x1sq += ax1 * ax1;
        const std::complex<double> resid =
            d.full - (d.m_term + d.x1 + d.x2 - d.x3);
        const double full_mag = std::abs(d.full);
        if (full_mag > 0.0) {
            acc.max_identity =
                std::max(acc.max_identity, std::abs(resid) / full_mag);
        }
        const double denom = n + ax1;
        acc.max_l22 = std::max(acc.max_l22, std::abs(d.x2) * cutoff.c / denom);
        acc.max_l23 = std::max(acc.max_l23, std::abs(d.x3) / denom);
        ++acc.hist[std::min(d.window_count, kHistogramCap)];
        ++acc.count;
    };
    const std::vector<DecompAccum> blocks =
        map_blocks<DecompAccum>(config.samples, config.workers, make, per_sample);
    const DecompAccum total =
        reduce_pairwise(blocks, 0, static_cast<long>(blocks.size()));
    if (total.failures * 1000 > config.samples) {
        throw Error(ErrorKind::sampler_integrity,
                    "sampler failure budget (0.1%) exceeded");
    }
    DecompositionReport rep;
    rep.a = a;
    rep.c_used = cutoff.c;
    rep.count = total.count;
    const double cnt = static_cast<double>(total.count);
    rep.mean_full_k = total.sum_full / cnt;
    rep.mean_m_k = total.sum_m / cnt;
    rep.mean_e_k = total.sum_e / cnt;
    rep.ratio_m_over_full = rep.mean_m_k / rep.mean_full_k;
    rep.ratio_e_over_m = rep.mean_e_k / rep.mean_m_k;
    int last = kHistogramCap;
    while (last > 0 && total.hist[last] == 0) --last;
    rep.window_histogram.assign(total.hist.begin(), total.hist.begin() + last + 1);
    rep.max_identity_residual = total.max_identity;
    rep.lemma21_mean = total.sum_x1sq / cnt / (n * n);
    rep.lemma22_max = total.max_l22;
    rep.lemma23_max = total.max_l23;
    rep.prop_e_stat = rep.mean_e_k * std::pow(cutoff.c / n, config.k);
    return rep;
}

}  // namespace rmt::experiments
