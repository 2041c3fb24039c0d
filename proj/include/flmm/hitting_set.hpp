#pragma once

#include <array>
#include <optional>
#include <vector>

#include "flmm/algebra.hpp"
#include "flmm/instance.hpp"
#include "flmm/weights.hpp"

namespace flmm::hitset {

/// One member of the non-commutative hitting set: m symmetric 2x2 blocks
/// T_i = V_i V_i^T where V_i carries the powers a^{w_i}, b^{w_i}, c^{w_i},
/// d^{w_i}, together with the provenance (w, (a,b,c,d)).
struct HittingTuple {
    std::vector<FieldMatrix> t;
    weights::WeightAssignment w;
    std::array<u64, 4> abcd{};
    u64 index = 0;
};

/// Lazily indexable stream of hitting tuples: one per (w, (a,b,c,d)) with w
/// running over the family (outermost) and (a,b,c,d) over S^4 in odometer
/// order with a as the fastest digit. S = {0, 1, ..., 2nD} where D bounds
/// the family weights.
template <class Family>
class HittingSetStream {
public:
    HittingSetStream(PrimeField f, std::size_t m, std::size_t n, const Family& family)
        : field_(f), m_(m), n_(n), family_(&family) {
        d_bound_ = family.max_weight_bound();
        s_size_ = 2 * static_cast<u64>(n) * d_bound_ + 1;
        if (s_size_ > f.modulus()) throw FieldTooSmall("hitting set needs |F| >= 2nD+1; raise the prime");
        s4_ = s_size_;
        for (int i = 0; i < 3; ++i) {
            if (s4_ > ~u64(0) / s_size_) throw GuardExceeded("hitting set point grid overflows");
            s4_ *= s_size_;
        }
        if (family.size() != 0 && s4_ > ~u64(0) / family.size())
            throw GuardExceeded("hitting set stream size overflows");
        size_ = family.size() * s4_;
    }

    PrimeField field() const { return field_; }
    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }
    u64 size() const { return size_; }
    u64 point_set_size() const { return s_size_; }
    u64 weight_bound() const { return d_bound_; }

    HittingTuple at(u64 index) const {
        if (index >= size_) throw std::out_of_range("hitting set index");
        HittingTuple tup;
        tup.index = index;
        tup.w = family_->at(index / s4_);
        if (tup.w.max_weight() > d_bound_)
            throw InputError("family member exceeds its declared weight bound; re-size the point set");
        u64 rem = index % s4_;
        for (int i = 0; i < 4; ++i) {
            tup.abcd[i] = rem % s_size_;
            rem /= s_size_;
        }
        tup.t.reserve(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            const u64 wi = tup.w.w[i];
            FieldMatrix v(field_, 2, 2);
            v.at(0, 0) = field_.pow(tup.abcd[0], wi);
            v.at(0, 1) = field_.pow(tup.abcd[1], wi);
            v.at(1, 0) = field_.pow(tup.abcd[2], wi);
            v.at(1, 1) = field_.pow(tup.abcd[3], wi);
            tup.t.push_back(v * v.transposed());
        }
        return tup;
    }

private:
    PrimeField field_;
    std::size_t m_, n_;
    const Family* family_;
    u64 d_bound_ = 0, s_size_ = 0, s4_ = 0, size_ = 0;
};

template <class Family>
HittingSetStream<Family> gen_hitting_set(PrimeField f, std::size_t m, std::size_t n, const Family& family) {
    return HittingSetStream<Family>(f, m, n, family);
}

enum class WitnessOutcome {
    kFound,          // det(sum T_i (x) A_i) != 0 for the returned tuple
    kNoWitness,      // the stream was exhausted without a witness
    kIndeterminate,  // budget ran out before exhaustion
};

struct WitnessResult {
    WitnessOutcome outcome = WitnessOutcome::kNoWitness;
    std::optional<HittingTuple> tuple;
    u64 tuples_tested = 0;
};

/// Scans the stream in order for the first tuple whose Kronecker
/// substitution is nonsingular. budget = 0 means exhaustive.
template <class Stream>
WitnessResult find_witness(const Instance& inst, const Stream& stream, u64 budget = 0) {
    if (stream.m() != inst.m()) throw InputError("stream/instance line count mismatch");
    WitnessResult res;
    const u64 limit = budget == 0 ? stream.size() : std::min<u64>(budget, stream.size());
    for (u64 idx = 0; idx < limit; ++idx) {
        HittingTuple tup = stream.at(idx);
        ++res.tuples_tested;
        if (det(blowup2_eval(inst, tup.t)) != 0) {
            res.outcome = WitnessOutcome::kFound;
            res.tuple = std::move(tup);
            return res;
        }
    }
    res.outcome = (limit == stream.size()) ? WitnessOutcome::kNoWitness : WitnessOutcome::kIndeterminate;
    return res;
}

}  // namespace flmm::hitset
