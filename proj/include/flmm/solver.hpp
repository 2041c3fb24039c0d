#pragma once

#include <future>
#include <optional>
#include <thread>
#include <vector>

#include "flmm/algebra.hpp"
#include "flmm/instance.hpp"
#include "flmm/rng.hpp"
#include "flmm/weights.hpp"

namespace flmm::solver {

struct ProbeSettings {
    int trials = 3;
    u64 rng_seed = kDefaultSeed;
    bool parallel = false;
};

/// W = total degree of the determinant of the weight-substituted blow-up
/// at the all-ones pattern. Requires distinct weights (apply make_distinct
/// first); when w isolates a maximizer z*, W equals 8 w.z*.
inline long long degree_probe(const Instance& inst, const weights::WeightAssignment& w, int trials, Rng& rng) {
    if (w.size() != inst.m()) throw InputError("degree_probe: weight length mismatch");
    if (!w.distinct_entries()) throw InputError("degree_probe requires distinct weights; apply make_distinct");
    return det_total_degree(weighted_blowup(inst, w), DegreeMode::kRandomized, trials, rng);
}

struct ExtractOutcome {
    std::optional<HalfIntegralVector> y;  // empty when some probe fell outside the legal cases
    std::vector<long long> we;            // per-line perturbed degrees, as probed
};

/// Reads the candidate matching off the perturbed degree probes:
/// W^e = 4W+8 -> y_e = 1, 4W+4 -> 1/2, 4W -> 0. Any other value means the
/// weight was not isolating (or a probe failed) and the candidate is
/// abandoned rather than guessed.
inline ExtractOutcome extract_candidate(const Instance& inst, const weights::WeightAssignment& w, long long big_w,
                                        int trials, Rng& rng) {
    if (big_w <= 0) throw std::invalid_argument("extract_candidate requires W > 0");
    ExtractOutcome out;
    out.we.assign(inst.m(), kZeroPolyDegree);
    HalfIntegralVector y(inst.m());
    for (std::size_t e = 0; e < inst.m(); ++e) {
        const long long we = degree_probe(inst, weights::perturb(w, e), trials, rng);
        out.we[e] = we;
        if (we == 4 * big_w + 8) {
            y.set_twice(e, 2);
        } else if (we == 4 * big_w + 4) {
            y.set_twice(e, 1);
        } else if (we == 4 * big_w) {
            y.set_twice(e, 0);
        } else {
            return out;  // illegal case, candidate abandoned
        }
    }
    out.y = std::move(y);
    return out;
}

/// Final gate: |y| = n/2 and the y-patterned substituted blow-up has a
/// nonzero determinant. Sound without any isolation assumption; a verified
/// y is a perfect fractional matroid matching.
inline bool verify_candidate(const Instance& inst, const weights::WeightAssignment& w,
                             const HalfIntegralVector& y, int trials, Rng& rng) {
    if (y.twice_size() != static_cast<int>(inst.n())) return false;
    return det_is_nonzero(weighted_blowup(inst, w, y), trials, rng);
}

struct SolveReport {
    bool found = false;
    HalfIntegralVector y;
    weights::WeightAssignment witness;  // distinct-transformed weights that produced y
    u64 family_index = 0;
    long long big_w = kZeroPolyDegree;
    std::vector<long long> we;
    u64 prime = 0;
    u64 rng_seed = 0;
    int trials = 0;
    u64 elements_tried = 0;
    u64 zero_degree_elements = 0;   // W <= 0, skipped
    u64 abandoned_candidates = 0;   // illegal W^e pattern or failed verification
};

namespace detail {

struct ElementSuccess {
    HalfIntegralVector y;
    weights::WeightAssignment witness;
    long long big_w;
    std::vector<long long> we;
};

enum class ElementOutcome { kSuccess, kZeroDegree, kAbandoned };

template <class Family>
std::pair<ElementOutcome, std::optional<ElementSuccess>> try_element(const Instance& inst, const Family& family,
                                                                     u64 index, const ProbeSettings& s) {
    Rng rng = make_rng(child_seed(s.rng_seed, index));
    weights::WeightAssignment w = weights::make_distinct(family.at(index));
    const long long big_w = degree_probe(inst, w, s.trials, rng);
    if (big_w <= 0) return {ElementOutcome::kZeroDegree, std::nullopt};
    ExtractOutcome ex = extract_candidate(inst, w, big_w, s.trials, rng);
    if (!ex.y) return {ElementOutcome::kAbandoned, std::nullopt};
    if (!verify_candidate(inst, w, *ex.y, s.trials, rng)) return {ElementOutcome::kAbandoned, std::nullopt};
    return {ElementOutcome::kSuccess, ElementSuccess{std::move(*ex.y), std::move(w), big_w, std::move(ex.we)}};
}

}  // namespace detail

/// End-to-end search over a family of weight assignments: distinct
/// transform, degree probe, candidate extraction, verification. Returns the
/// first verified matching in family order (also in parallel mode) or the
/// "none" outcome once the family is exhausted.
template <class Family>
SolveReport solve(const Instance& inst, const Family& family, const ProbeSettings& settings = {}) {
    SolveReport report;
    report.prime = inst.field().modulus();
    report.rng_seed = settings.rng_seed;
    report.trials = settings.trials;

    if (inst.n() == 0) {
        // the empty matching is perfect; det of the empty blow-up is 1
        report.found = true;
        report.y = HalfIntegralVector(inst.m());
        report.witness = {std::vector<u64>(inst.m(), 1), "trivial"};
        return report;
    }

    auto absorb = [&](u64 index, const std::pair<detail::ElementOutcome, std::optional<detail::ElementSuccess>>& r)
        -> bool {
        ++report.elements_tried;
        switch (r.first) {
            case detail::ElementOutcome::kZeroDegree:
                ++report.zero_degree_elements;
                return false;
            case detail::ElementOutcome::kAbandoned:
                ++report.abandoned_candidates;
                return false;
            case detail::ElementOutcome::kSuccess:
                report.found = true;
                report.y = r.second->y;
                report.witness = r.second->witness;
                report.big_w = r.second->big_w;
                report.we = r.second->we;
                report.family_index = index;
                return true;
        }
        return false;
    };

    const u64 total = family.size();
    if (!settings.parallel) {
        for (u64 idx = 0; idx < total; ++idx)
            if (absorb(idx, detail::try_element(inst, family, idx, settings))) return report;
        return report;
    }

    const u64 window = std::max(2u, 2 * std::thread::hardware_concurrency());
    for (u64 base = 0; base < total; base += window) {
        const u64 hi = std::min(total, base + window);
        std::vector<std::future<std::pair<detail::ElementOutcome, std::optional<detail::ElementSuccess>>>> futs;
        futs.reserve(hi - base);
        for (u64 idx = base; idx < hi; ++idx)
            futs.push_back(std::async(std::launch::async,
                                      [&inst, &family, idx, &settings] { return detail::try_element(inst, family, idx, settings); }));
        bool done = false;
        for (u64 idx = base; idx < hi; ++idx) {
            auto r = futs[idx - base].get();
            // keep the earliest-index success; later ones in the window lose
            if (!done && absorb(idx, r)) done = true;
        }
        if (done) return report;
    }
    return report;
}

/// Weighted variant: shifts the family so that the input weights dominate,
/// then runs the same pipeline. The returned matching maximizes v among
/// perfect matchings whenever the base family isolates the shifted optimum.
template <class Family>
SolveReport solve_weighted(const Instance& inst, const std::vector<u64>& v, const Family& family,
                           const ProbeSettings& settings = {}) {
    auto shifted = weights::shift_for_input_weights(v, family, inst.n());
    return solve(inst, shifted, settings);
}

}  // namespace flmm::solver
