#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "flmm/algebra.hpp"
#include "flmm/field.hpp"
#include "flmm/matrix.hpp"
#include "flmm/quadpoly.hpp"
#include "flmm/weights.hpp"

namespace flmm {

/// y in {0, 1/2, 1}^m stored as doubled integers, so every entry is 0, 1 or 2
/// and all arithmetic stays exact.
class HalfIntegralVector {
public:
    HalfIntegralVector() = default;
    explicit HalfIntegralVector(std::size_t m) : twice_(m, 0) {}
    explicit HalfIntegralVector(std::vector<std::uint8_t> twice) : twice_(std::move(twice)) {
        for (auto v : twice_)
            if (v > 2) throw InputError("half-integral entries must be 0, 1 or 2 (doubled)");
    }

    static HalfIntegralVector ones(std::size_t m) {
        HalfIntegralVector y(m);
        for (std::size_t i = 0; i < m; ++i) y.twice_[i] = 2;
        return y;
    }

    std::size_t size() const { return twice_.size(); }
    int twice(std::size_t i) const { return twice_[i]; }
    void set_twice(std::size_t i, int v) {
        if (v < 0 || v > 2) throw InputError("half-integral entries must be 0, 1 or 2 (doubled)");
        twice_[i] = static_cast<std::uint8_t>(v);
    }

    /// 2*|y|, i.e. the doubled cardinality.
    int twice_size() const { return std::accumulate(twice_.begin(), twice_.end(), 0); }

    const std::vector<std::uint8_t>& twice_entries() const { return twice_; }

    bool operator==(const HalfIntegralVector& o) const { return twice_ == o.twice_; }
    bool operator!=(const HalfIntegralVector& o) const { return twice_ != o.twice_; }
    bool operator<(const HalfIntegralVector& o) const { return twice_ < o.twice_; }

    /// Componentwise z <= y.
    bool dominated_by(const HalfIntegralVector& y) const {
        for (std::size_t i = 0; i < twice_.size(); ++i)
            if (twice_[i] > y.twice_[i]) return false;
        return true;
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < twice_.size(); ++i)
            s += (i ? "," : "") + std::to_string(int(twice_[i]));
        return s + ")/2";
    }

private:
    std::vector<std::uint8_t> twice_;
};

/// a b^T - b a^T: the rank-two skew-symmetric coefficient matrix of a line.
/// Rejects dependent pairs (the wedge vanishes exactly when a, b are
/// dependent).
inline FieldMatrix wedge_matrix(PrimeField F, const std::vector<u64>& a, const std::vector<u64>& b) {
    if (a.size() != b.size()) throw InputError("wedge_matrix: vector length mismatch");
    const std::size_t n = a.size();
    FieldMatrix m(F, n, n);
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            u64 v = F.sub(F.mul(F.reduce(a[i]), F.reduce(b[j])), F.mul(F.reduce(b[i]), F.reduce(a[j])));
            m.at(i, j) = v;
            nonzero |= (v != 0);
        }
    if (!nonzero) throw InputError("line pair is linearly dependent");
    return m;
}

/// m lines in F_p^n given by spanning pairs (a_i, b_i). Immutable after
/// construction; every pair is validated to be independent so each
/// coefficient matrix A_i has rank exactly two.
class Instance {
public:
    struct Line {
        std::vector<u64> a, b;
    };

    Instance(PrimeField F, std::size_t n, std::vector<Line> lines)
        : field_(F), n_(n), lines_(std::move(lines)) {
        coeff_.reserve(lines_.size());
        span_.reserve(lines_.size());
        for (auto& l : lines_) {
            if (l.a.size() != n_ || l.b.size() != n_) throw InputError("line vector has wrong dimension");
            for (auto& x : l.a) x = field_.reduce(x);
            for (auto& x : l.b) x = field_.reduce(x);
            coeff_.push_back(wedge_matrix(field_, l.a, l.b));
            FieldMatrix B(field_, n_, 2);
            for (std::size_t r = 0; r < n_; ++r) {
                B.at(r, 0) = l.a[r];
                B.at(r, 1) = l.b[r];
            }
            span_.push_back(std::move(B));
        }
    }

    PrimeField field() const { return field_; }
    std::size_t n() const { return n_; }
    std::size_t m() const { return lines_.size(); }
    const Line& line(std::size_t i) const { return lines_[i]; }
    /// A_i = a_i b_i^T - b_i a_i^T (n x n, skew-symmetric, rank two).
    const FieldMatrix& coeff(std::size_t i) const { return coeff_[i]; }
    /// B_i = [a_i b_i] (n x 2).
    const FieldMatrix& span_pair(std::size_t i) const { return span_[i]; }

    /// The 2m ground vectors E = (a_1, b_1, ..., a_m, b_m).
    std::vector<std::vector<u64>> ground_set() const {
        std::vector<std::vector<u64>> e;
        e.reserve(2 * m());
        for (const auto& l : lines_) {
            e.push_back(l.a);
            e.push_back(l.b);
        }
        return e;
    }

private:
    PrimeField field_;
    std::size_t n_;
    std::vector<Line> lines_;
    std::vector<FieldMatrix> coeff_;
    std::vector<FieldMatrix> span_;
};

/// Second-order blow-up evaluated at concrete 2x2 blocks: sum_i X_i (x) A_i.
inline FieldMatrix blowup2_eval(const Instance& inst, const std::vector<FieldMatrix>& x) {
    if (x.size() != inst.m()) throw InputError("blowup2_eval needs one 2x2 block per line");
    FieldMatrix acc(inst.field(), 2 * inst.n(), 2 * inst.n());
    for (std::size_t i = 0; i < inst.m(); ++i) {
        if (x[i].rows() != 2 || x[i].cols() != 2) throw InputError("blowup blocks must be 2x2");
        acc = acc + kron(x[i], inst.coeff(i));
    }
    return acc;
}

/// Monte-Carlo estimate of the non-commutative rank: max over trials of
/// (1/2) rank(sum_i X_i (x) A_i) at uniformly random blocks X_i.
inline std::size_t ncrank_estimate(const Instance& inst, int trials, Rng& rng) {
    std::size_t best = 0;
    for (int t = 0; t < trials; ++t) {
        std::vector<FieldMatrix> x;
        x.reserve(inst.m());
        for (std::size_t i = 0; i < inst.m(); ++i)
            x.push_back(FieldMatrix::random(inst.field(), 2, 2, rng));
        best = std::max(best, rank(blowup2_eval(inst, x)) / 2);
    }
    return best;
}

/// The weight-monomial substituted blow-up: sum_i V_i (x) A_i where V_i is
/// T_i T_i^T built from monomials t_{p,q}^{w_i}. For v_i = 1 the factor T_i
/// is the full 2x2 monomial matrix, for v_i = 1/2 its first column, and for
/// v_i = 0 the block vanishes. The result is skew-symmetric over QuadPoly.
inline QuadPolyMatrix weighted_blowup(const Instance& inst, const weights::WeightAssignment& w,
                                      const HalfIntegralVector& v) {
    if (w.size() != inst.m() || v.size() != inst.m())
        throw InputError("weighted_blowup: weight or pattern length mismatch");
    const PrimeField F = inst.field();
    QuadPolyMatrix acc(F, 2 * inst.n(), 2 * inst.n());
    for (std::size_t i = 0; i < inst.m(); ++i) {
        if (v.twice(i) == 0) continue;
        const std::uint32_t wi = static_cast<std::uint32_t>(w.w[i]);
        QuadPolyMatrix vi(F, 2, 2);
        auto mono2 = [&](int va, int vb) {
            Exponents e{0, 0, 0, 0};
            e[va] += wi;
            e[vb] += wi;
            return QuadPoly::monomial(F, e, 1);
        };
        // variable indices: 0 = t11, 1 = t12, 2 = t21, 3 = t22
        if (v.twice(i) == 2) {
            vi.at(0, 0) = mono2(0, 0) + mono2(1, 1);
            vi.at(0, 1) = mono2(0, 2) + mono2(1, 3);
            vi.at(1, 0) = vi.at(0, 1);
            vi.at(1, 1) = mono2(2, 2) + mono2(3, 3);
        } else {
            vi.at(0, 0) = mono2(0, 0);
            vi.at(0, 1) = mono2(0, 2);
            vi.at(1, 0) = vi.at(0, 1);
            vi.at(1, 1) = mono2(2, 2);
        }
        const FieldMatrix& ai = inst.coeff(i);
        for (std::size_t p = 0; p < 2; ++p)
            for (std::size_t q = 0; q < 2; ++q) {
                if (vi.at(p, q).is_zero()) continue;
                for (std::size_t r = 0; r < inst.n(); ++r)
                    for (std::size_t c = 0; c < inst.n(); ++c) {
                        u64 a = ai.at(r, c);
                        if (a == 0) continue;
                        acc.at(p * inst.n() + r, q * inst.n() + c) += vi.at(p, q).scaled(a);
                    }
            }
    }
    return acc;
}

inline QuadPolyMatrix weighted_blowup(const Instance& inst, const weights::WeightAssignment& w) {
    return weighted_blowup(inst, w, HalfIntegralVector::ones(inst.m()));
}

/// Column selection of one U_i (x) B_i block inside the expansion: nothing,
/// the first column pair, the second column pair, or all four columns.
enum class ColumnPick { kNone, kFirstPair, kSecondPair, kAll };

inline const std::vector<int>& pick_columns(ColumnPick p) {
    static const std::vector<int> none{}, first{0, 1}, second{2, 3}, all{0, 1, 2, 3};
    switch (p) {
        case ColumnPick::kNone: return none;
        case ColumnPick::kFirstPair: return first;
        case ColumnPick::kSecondPair: return second;
        default: return all;
    }
}

/// The case table for a line with pattern entries z_i <= y_i: all four
/// columns when z_i = 1, either pair when y_i = 1 and z_i = 1/2, the first
/// pair when y_i = z_i = 1/2, nothing when z_i = 0.
inline std::vector<ColumnPick> admissible_picks(int z_twice, int y_twice) {
    if (z_twice == 0) return {ColumnPick::kNone};
    if (z_twice == 2) return {ColumnPick::kAll};
    if (y_twice == 2) return {ColumnPick::kFirstPair, ColumnPick::kSecondPair};
    return {ColumnPick::kFirstPair};
}

namespace detail {

/// Enumerates z in {0,1/2,1}^m with z <= y and 2|z| = n (doubled), calling
/// fn for each.
template <class Fn>
void for_each_dominated_pattern(const HalfIntegralVector& y, int twice_target, Fn&& fn) {
    const std::size_t m = y.size();
    HalfIntegralVector z(m);
    int remaining = twice_target;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (remaining < 0) return;
        if (i == m) {
            if (remaining == 0) fn(z);
            return;
        }
        for (int v = 0; v <= y.twice(i); ++v) {
            z.set_twice(i, v);
            remaining -= v;
            self(self, i + 1);
            remaining += v;
        }
        z.set_twice(i, 0);
    };
    rec(rec, 0);
}

}  // namespace detail

/// Verifies the Pfaffian expansion of the substituted blow-up at `trials`
/// random assignments of the U_i indeterminates:
///
///   pf(sum_i (U_i U_i^T) (x) A_i)
///     = sum_{z <= y, |z| = n/2} sum_{J in J^y(z)} det([(U_i (x) B_i)[J_i]])
///
/// where U_i is 2x2 when y_i = 1, a 2x1 column when y_i = 1/2, and absent
/// when y_i = 0; column picks J_i follow the case table: all four columns
/// when z_i = 1, either column pair when y_i = 1 and z_i = 1/2, the first
/// pair when y_i = z_i = 1/2, none when z_i = 0. Exponential in m; intended
/// for tiny instances.
inline bool pfaffian_expansion_check(const Instance& inst, const HalfIntegralVector& y, int trials, Rng& rng) {
    if (y.size() != inst.m()) throw InputError("pattern length mismatch");
    if (inst.m() > 8) throw GuardExceeded("pfaffian_expansion_check is limited to m <= 8");
    const PrimeField F = inst.field();
    const std::size_t n = inst.n();

    for (int t = 0; t < trials; ++t) {
        // random U_i of shape 2 x (2 y_i)
        std::vector<FieldMatrix> u;
        u.reserve(inst.m());
        for (std::size_t i = 0; i < inst.m(); ++i)
            u.push_back(FieldMatrix::random(F, 2, static_cast<std::size_t>(y.twice(i)), rng));

        // left side: pf(sum (U_i U_i^T) (x) A_i)
        FieldMatrix lhs_mat(F, 2 * n, 2 * n);
        for (std::size_t i = 0; i < inst.m(); ++i) {
            if (y.twice(i) == 0) continue;
            lhs_mat = lhs_mat + kron(u[i] * u[i].transposed(), inst.coeff(i));
        }
        const u64 lhs = pfaffian(lhs_mat);

        std::vector<FieldMatrix> ubs;  // U_i (x) B_i, 2n x (2 * 2y_i)
        ubs.reserve(inst.m());
        for (std::size_t i = 0; i < inst.m(); ++i) ubs.push_back(kron(u[i], inst.span_pair(i)));

        // right side: sum over dominated perfect patterns and column picks
        u64 rhs = 0;
        detail::for_each_dominated_pattern(y, static_cast<int>(n), [&](const HalfIntegralVector& z) {
            std::vector<std::vector<ColumnPick>> picks(inst.m());
            for (std::size_t i = 0; i < inst.m(); ++i) picks[i] = admissible_picks(z.twice(i), y.twice(i));
            std::vector<std::size_t> choice(inst.m(), 0);
            while (true) {
                FieldMatrix mat(F, 2 * n, 2 * n);
                std::size_t col = 0;
                for (std::size_t i = 0; i < inst.m(); ++i) {
                    for (int j : pick_columns(picks[i][choice[i]])) {
                        for (std::size_t r = 0; r < 2 * n; ++r) mat.at(r, col) = ubs[i].at(r, j);
                        ++col;
                    }
                }
                rhs = F.add(rhs, det(std::move(mat)));
                // advance the choice odometer
                std::size_t i = 0;
                while (i < inst.m()) {
                    if (++choice[i] < picks[i].size()) break;
                    choice[i] = 0;
                    ++i;
                }
                if (i == inst.m()) break;
            }
        });
        if (lhs != rhs) return false;
    }
    return true;
}

}  // namespace flmm
