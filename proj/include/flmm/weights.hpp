#pragma once

#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "flmm/field.hpp"

namespace flmm::weights {

/// Positive integer weights on the m lines, with a provenance tag recording
/// where the assignment came from (family coordinates, "brute[i]", "user").
struct WeightAssignment {
    std::vector<u64> w;
    std::string provenance;

    std::size_t size() const { return w.size(); }
    u64 max_weight() const {
        u64 mx = 0;
        for (u64 x : w) mx = std::max(mx, x);
        return mx;
    }
    bool distinct_entries() const { return std::set<u64>(w.begin(), w.end()).size() == w.size(); }
};

enum class FamilyMode { kBrute, kGtv };

struct FamilyParams {
    FamilyMode mode = FamilyMode::kBrute;
    u64 brute_cap = 4;       // K: brute mode enumerates [1..K]^m
    u64 gtv_t = 8;           // largest power base t
    u64 gtv_q = 8;           // largest prime modulus q
    u64 weight_cap = 1 << 20;  // degree probes stay interpolable below this
};

/// Candidate isolating weight assignments, indexable and restartable so that
/// consumers can walk the family in any order (or in parallel).
///
/// Brute mode enumerates [1..K]^m lexicographically; it is the unconditional
/// fallback for small m. Gtv mode combines L = ceil(log2(2m)) rounds of the
/// power-residue base family {(t^1 mod q, ..., t^m mod q)} lexicographically,
/// scaled so that any single round dominates all later ones.
class WeightFamily {
public:
    WeightFamily(std::size_t m, FamilyParams params) : m_(m), params_(params) {
        if (m == 0) {
            size_ = 1;
            return;
        }
        if (params_.mode == FamilyMode::kBrute) {
            if (params_.brute_cap == 0) throw InputError("brute family needs a positive cap");
            if (params_.brute_cap > params_.weight_cap) throw InputError("brute cap exceeds the weight cap");
            size_ = 1;
            for (std::size_t i = 0; i < m; ++i) {
                if (size_ > (u64(1) << 62) / params_.brute_cap) throw GuardExceeded("brute family too large");
                size_ *= params_.brute_cap;
            }
            max_weight_ = params_.brute_cap;
            return;
        }
        // base family: (t, q) with q prime <= Q, 2 <= t <= T, q not dividing t
        for (u64 q = 2; q <= params_.gtv_q; ++q) {
            if (!is_prime_u64(q)) continue;
            for (u64 t = 2; t <= params_.gtv_t; ++t) {
                if (t % q == 0) continue;  // keeps every entry positive
                base_.push_back({t, q});
            }
        }
        if (base_.empty()) throw InputError("gtv base family is empty; raise T or Q");
        rounds_ = 1;
        while ((std::size_t(1) << rounds_) < 2 * m) ++rounds_;
        // round scale: strictly dominates the largest possible contribution
        // of all later rounds to any weight difference
        scale_ = 2 * m * (params_.gtv_q - 1) + 1;
        size_ = 1;
        max_weight_ = 0;
        u64 pw = 1;
        for (unsigned j = 0; j < rounds_; ++j) {
            if (size_ > (u64(1) << 62) / base_.size()) throw GuardExceeded("gtv family too large");
            size_ *= base_.size();
            max_weight_ += pw * (params_.gtv_q - 1);
            if (pw > (u64(1) << 62) / scale_) throw GuardExceeded("gtv weights overflow");
            pw *= scale_;
        }
        if (max_weight_ > params_.weight_cap)
            throw GuardExceeded("gtv weights exceed the configured cap; lower T/Q or raise the cap");
    }

    std::size_t m() const { return m_; }
    u64 size() const { return size_; }

    /// Upper bound on any entry of any family member.
    u64 max_weight_bound() const { return max_weight_; }

    WeightAssignment at(u64 index) const {
        if (index >= size_) throw std::out_of_range("weight family index");
        if (m_ == 0) return {{}, "empty"};
        if (params_.mode == FamilyMode::kBrute) {
            std::vector<u64> w(m_);
            u64 rem = index;
            for (std::size_t i = m_; i-- > 0;) {
                w[i] = rem % params_.brute_cap + 1;
                rem /= params_.brute_cap;
            }
            return {std::move(w), "brute[" + std::to_string(index) + "]"};
        }
        std::vector<u64> digits(rounds_);
        u64 rem = index;
        for (std::size_t j = rounds_; j-- > 0;) {
            digits[j] = rem % base_.size();
            rem /= base_.size();
        }
        std::vector<u64> w(m_, 0);
        std::string tag = "gtv[";
        u64 pw = 1;
        for (std::size_t j = rounds_; j-- > 0;) {
            auto [t, q] = base_[digits[j]];
            u64 power = 1;
            for (std::size_t i = 0; i < m_; ++i) {
                power = (power * t) % q;  // t^(i+1) mod q, never zero since q does not divide t
                w[i] += pw * power;
            }
            pw *= scale_;
        }
        for (std::size_t j = 0; j < rounds_; ++j) tag += (j ? "," : "") + std::to_string(digits[j]);
        tag += "]";
        return {std::move(w), tag};
    }

private:
    std::size_t m_;
    FamilyParams params_;
    std::vector<std::pair<u64, u64>> base_;  // (t, q)
    unsigned rounds_ = 0;
    u64 scale_ = 0;
    u64 size_ = 0;
    u64 max_weight_ = 0;
};

/// w'_i = m^2 * w_i + i. Entries become pairwise distinct while every strict
/// weight comparison between half-integral points is preserved.
inline WeightAssignment make_distinct(const WeightAssignment& w) {
    const u64 n2 = static_cast<u64>(w.size()) * w.size();
    WeightAssignment r;
    r.w.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r.w.push_back(n2 * w.w[i] + (i + 1));
    r.provenance = w.provenance + "+distinct";
    return r;
}

/// w^e: quadruples every weight and adds one on line e (0-based). Keeps the
/// unique maximizer of an isolating integer assignment.
inline WeightAssignment perturb(const WeightAssignment& w, std::size_t e) {
    if (e >= w.size()) throw std::out_of_range("perturb line index");
    WeightAssignment r;
    r.w.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r.w.push_back(4 * w.w[i] + (i == e ? 1 : 0));
    r.provenance = w.provenance + "^e" + std::to_string(e);
    return r;
}

/// Family view shifted for maximum-weight solving: N*v + w for every family
/// member w, with N = n * (family max weight) + 1 so that the input weights
/// dominate every tie-break weight.
template <class Family>
class ShiftedFamily {
public:
    ShiftedFamily(std::vector<u64> v, const Family& base, std::size_t n)
        : v_(std::move(v)), base_(&base), shift_(n * base.max_weight_bound() + 1) {}

    u64 size() const { return base_->size(); }
    std::size_t m() const { return base_->m(); }
    u64 max_weight_bound() const {
        u64 vmax = 0;
        for (u64 x : v_) vmax = std::max(vmax, x);
        return shift_ * vmax + base_->max_weight_bound();
    }
    u64 shift() const { return shift_; }

    WeightAssignment at(u64 index) const {
        WeightAssignment w = base_->at(index);
        if (v_.size() != w.size()) throw InputError("input weight vector length mismatch");
        for (std::size_t i = 0; i < w.size(); ++i) w.w[i] += shift_ * v_[i];
        w.provenance += "+shifted";
        return w;
    }

private:
    std::vector<u64> v_;
    const Family* base_;
    u64 shift_;
};

template <class Family>
ShiftedFamily<Family> shift_for_input_weights(std::vector<u64> v, const Family& base, std::size_t n) {
    return ShiftedFamily<Family>(std::move(v), base, n);
}

/// Family backed by an explicit list of assignments.
struct ExplicitFamily {
    std::vector<WeightAssignment> members;

    u64 size() const { return members.size(); }
    std::size_t m() const { return members.empty() ? 0 : members.front().size(); }
    u64 max_weight_bound() const {
        u64 mx = 0;
        for (const auto& w : members) mx = std::max(mx, w.max_weight());
        return mx;
    }
    WeightAssignment at(u64 index) const { return members.at(index); }
};

/// Family view with make_distinct applied to every member.
template <class Family>
class DistinctFamily {
public:
    explicit DistinctFamily(const Family& base) : base_(&base) {}
    u64 size() const { return base_->size(); }
    std::size_t m() const { return base_->m(); }
    u64 max_weight_bound() const {
        const u64 m = base_->m();
        return m * m * base_->max_weight_bound() + m;
    }
    WeightAssignment at(u64 index) const { return make_distinct(base_->at(index)); }

private:
    const Family* base_;
};

}  // namespace flmm::weights
