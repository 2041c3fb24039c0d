#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "flmm/field.hpp"
#include "flmm/instance.hpp"
#include "flmm/lattice.hpp"

namespace flmm::oracle {

constexpr std::size_t kMaxGroundVectors = 16;  // flats guard: 2m <= 16
constexpr std::size_t kMaxLinesEnumeration = 10;  // y-grid guard: 3^m points

/// A flat of the ground multiset E: a subset closed under span membership.
/// Stored as a bitmask over the 2m ground vectors plus the span dimension.
struct Flat {
    std::uint32_t members = 0;
    int span_dim = 0;
};

namespace detail {

/// Row-echelon basis of a growing set of vectors over F_p.
class SpanBasis {
public:
    SpanBasis(PrimeField f, std::size_t n) : field_(f), n_(n) {}

    std::size_t dim() const { return rows_.size(); }

    /// Adds v to the span; returns true when the dimension grew.
    bool insert(std::vector<u64> v) {
        if (!reduce(v)) return false;
        std::size_t piv = 0;
        while (v[piv] == 0) ++piv;
        u64 inv = field_.inv(v[piv]);
        for (auto& x : v) x = field_.mul(x, inv);
        rows_.push_back(std::move(v));
        pivots_.push_back(piv);
        return true;
    }

    bool contains(std::vector<u64> v) const { return !reduce(v); }

private:
    // reduces v against the basis; returns true if a nonzero remainder is left
    bool reduce(std::vector<u64>& v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            u64 f = v[pivots_[r]];
            if (f == 0) continue;
            for (std::size_t j = 0; j < n_; ++j) v[j] = field_.sub(v[j], field_.mul(f, rows_[r][j]));
        }
        for (u64 x : v)
            if (x != 0) return true;
        return false;
    }

    PrimeField field_;
    std::size_t n_;
    std::vector<std::vector<u64>> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace detail

/// All distinct flats of an arbitrary vector multiset, found as closures of
/// all subsets. Exponential in the ground-set size.
inline std::vector<Flat> enumerate_flats(PrimeField F, const std::vector<std::vector<u64>>& ground) {
    const std::size_t k = ground.size();
    if (k > kMaxGroundVectors) throw GuardExceeded("flat enumeration requires at most 16 ground vectors");
    const std::size_t n = k == 0 ? 0 : ground[0].size();
    std::map<std::uint32_t, int> closures;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        detail::SpanBasis basis(F, n);
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) basis.insert(ground[i]);
        std::uint32_t closure = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (basis.contains(ground[i])) closure |= (1u << i);
        closures.emplace(closure, static_cast<int>(basis.dim()));
    }
    std::vector<Flat> flats;
    flats.reserve(closures.size());
    for (auto [mask, dim] : closures) flats.push_back({mask, dim});
    return flats;
}

inline std::vector<Flat> enumerate_flats(const Instance& inst) {
    return enumerate_flats(inst.field(), inst.ground_set());
}

/// dim(span(S) /\ l_i) via dim(U) + dim(V) - dim(U + V).
inline int dim_intersection(const Instance& inst, const Flat& s, std::size_t line) {
    detail::SpanBasis basis(inst.field(), inst.n());
    auto ground = inst.ground_set();
    for (std::size_t i = 0; i < ground.size(); ++i)
        if (s.members & (1u << i)) basis.insert(std::move(ground[i]));
    int dim_s = static_cast<int>(basis.dim());
    basis.insert(inst.line(line).a);
    basis.insert(inst.line(line).b);
    return dim_s + 2 - static_cast<int>(basis.dim());
}

struct MaxResult {
    long long value_twice = 0;  // doubled objective value
    std::vector<HalfIntegralVector> maximizers;
};

/// Face of the polytope optimal for some weight vector, described by the
/// tight flat rows (entries {0,1,2}), their right-hand sides, and the lines
/// forced to zero on the face.
struct FaceSystem {
    lattice::ConstraintMatrix d;           // rhs filled with the span dimensions
    std::vector<std::size_t> zero_lines;
};

/// Brute-force ground truth for the fractional matroid matching polytope.
/// Precomputes the flat inequalities and the full feasible half-integral
/// grid; every query is an exact scan.
class PolytopeOracle {
public:
    explicit PolytopeOracle(const Instance& inst) : inst_(inst) {
        if (2 * inst.m() > kMaxGroundVectors) throw GuardExceeded("oracle flats guard: need 2m <= 16");
        if (inst.m() > kMaxLinesEnumeration) throw GuardExceeded("oracle enumeration guard: need m <= 10");
        flats_ = enumerate_flats(inst_);
        coeff_.reserve(flats_.size());
        for (const Flat& f : flats_) {
            std::vector<int> row(inst_.m());
            for (std::size_t i = 0; i < inst_.m(); ++i) row[i] = dim_intersection(inst_, f, i);
            coeff_.push_back(std::move(row));
        }
        enumerate_feasible();
    }

    const Instance& instance() const { return inst_; }
    const std::vector<Flat>& flats() const { return flats_; }
    const std::vector<HalfIntegralVector>& feasible_points() const { return feasible_; }

    bool is_feasible(const HalfIntegralVector& y) const {
        if (y.size() != inst_.m()) throw InputError("feasibility query length mismatch");
        for (std::size_t f = 0; f < flats_.size(); ++f) {
            long long lhs = 0;
            for (std::size_t i = 0; i < inst_.m(); ++i) lhs += static_cast<long long>(coeff_[f][i]) * y.twice(i);
            if (lhs > 2ll * flats_[f].span_dim) return false;
        }
        return true;
    }

    /// Maximizes w . y (uniform weights when w is absent) over the feasible
    /// half-integral grid; returns the doubled optimum and all maximizers.
    MaxResult max_matching(const std::vector<u64>* w = nullptr) const {
        if (w && w->size() != inst_.m()) throw InputError("weight vector length mismatch");
        MaxResult r;
        r.value_twice = -1;
        for (const auto& y : feasible_) {
            long long v = 0;
            for (std::size_t i = 0; i < inst_.m(); ++i)
                v += static_cast<long long>(w ? (*w)[i] : 1) * y.twice(i);
            if (v > r.value_twice) {
                r.value_twice = v;
                r.maximizers.clear();
            }
            if (v == r.value_twice) r.maximizers.push_back(y);
        }
        return r;
    }

    bool is_isolating(const std::vector<u64>& w) const { return max_matching(&w).maximizers.size() == 1; }

    bool has_perfect_matching() const {
        return max_matching().value_twice == static_cast<long long>(inst_.n());
    }

    /// Max of w . y over perfect matchings only; nullopt when none exist.
    std::optional<MaxResult> max_weight_over_perfect(const std::vector<u64>& w) const {
        MaxResult r;
        r.value_twice = -1;
        for (const auto& y : feasible_) {
            if (y.twice_size() != static_cast<int>(inst_.n())) continue;
            long long v = 0;
            for (std::size_t i = 0; i < inst_.m(); ++i) v += static_cast<long long>(w[i]) * y.twice(i);
            if (v > r.value_twice) {
                r.value_twice = v;
                r.maximizers.clear();
            }
            if (v == r.value_twice) r.maximizers.push_back(y);
        }
        if (r.value_twice < 0) return std::nullopt;
        return r;
    }

    /// Equality system cutting out the w-optimal face: all nonempty flat
    /// rows tight at every maximizer, plus the lines at zero on the face.
    /// Rows keep their {0,1,2} coefficients as-is; no column normalization
    /// is attempted.
    FaceSystem face_system(const std::vector<u64>& w) const {
        MaxResult opt = max_matching(&w);
        FaceSystem fs;
        std::vector<std::vector<int>> rows;
        std::vector<long long> rhs;
        for (std::size_t f = 0; f < flats_.size(); ++f) {
            if (flats_[f].members == 0) continue;
            bool tight = true;
            for (const auto& y : opt.maximizers) {
                long long lhs = 0;
                for (std::size_t i = 0; i < inst_.m(); ++i)
                    lhs += static_cast<long long>(coeff_[f][i]) * y.twice(i);
                if (lhs != 2ll * flats_[f].span_dim) {
                    tight = false;
                    break;
                }
            }
            if (tight) {
                rows.push_back(coeff_[f]);
                rhs.push_back(flats_[f].span_dim);
            }
        }
        fs.d = lattice::ConstraintMatrix(rows.size(), inst_.m());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < inst_.m(); ++c) fs.d.at(r, c) = rows[r][c];
        fs.d.rhs = std::move(rhs);
        for (std::size_t i = 0; i < inst_.m(); ++i) {
            bool zero = true;
            for (const auto& y : opt.maximizers) zero &= (y.twice(i) == 0);
            if (zero) fs.zero_lines.push_back(i);
        }
        return fs;
    }

private:
    void enumerate_feasible() {
        HalfIntegralVector y(inst_.m());
        while (true) {
            if (is_feasible(y)) feasible_.push_back(y);
            std::size_t i = 0;
            while (i < inst_.m()) {
                int t = y.twice(i) + 1;
                if (t <= 2) {
                    y.set_twice(i, t);
                    break;
                }
                y.set_twice(i, 0);
                ++i;
            }
            if (i == inst_.m()) break;
        }
    }

    Instance inst_;
    std::vector<Flat> flats_;
    std::vector<std::vector<int>> coeff_;
    std::vector<HalfIntegralVector> feasible_;
};

}  // namespace flmm::oracle
