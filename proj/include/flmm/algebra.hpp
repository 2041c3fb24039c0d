#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "flmm/field.hpp"
#include "flmm/matrix.hpp"
#include "flmm/quadpoly.hpp"

namespace flmm {

/// Rank over F_p by Gaussian elimination.
inline std::size_t rank(FieldMatrix m) {
    const PrimeField F = m.field();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m.at(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (std::size_t j = c; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
        u64 inv = F.inv(m.at(r, c));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            u64 f = F.mul(m.at(i, c), inv);
            if (f == 0) continue;
            for (std::size_t j = c; j < m.cols(); ++j)
                m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(r, j)));
        }
        ++r;
    }
    return r;
}

/// Exact determinant over F_p. Rejects non-square input.
inline u64 det(FieldMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det requires a square matrix");
    const PrimeField F = m.field();
    const std::size_t n = m.rows();
    u64 result = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m.at(piv, c) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            for (std::size_t j = c; j < n; ++j) std::swap(m.at(piv, j), m.at(c, j));
            result = F.neg(result);
        }
        result = F.mul(result, m.at(c, c));
        u64 inv = F.inv(m.at(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            u64 f = F.mul(m.at(i, c), inv);
            if (f == 0) continue;
            for (std::size_t j = c; j < n; ++j)
                m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(c, j)));
        }
    }
    return result;
}

/// Pfaffian of a skew-symmetric matrix over F_p by Parlett-Reid elimination.
/// Returns 0 for odd order; rejects non-skew-symmetric input.
inline u64 pfaffian(FieldMatrix m) {
    if (!m.is_skew_symmetric()) throw std::invalid_argument("pfaffian requires a skew-symmetric matrix");
    const PrimeField F = m.field();
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n % 2 == 1) return 0;
    u64 result = 1;
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        // pivot: first row below k with a nonzero entry in column k
        std::size_t piv = k + 1;
        while (piv < n && m.at(piv, k) == 0) ++piv;
        if (piv == n) return 0;  // row k of the trailing block is zero
        if (piv != k + 1) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k + 1, j), m.at(piv, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(m.at(i, k + 1), m.at(i, piv));
            result = F.neg(result);
        }
        const u64 pivot = m.at(k, k + 1);
        result = F.mul(result, pivot);
        const u64 inv = F.inv(pivot);
        if (k + 2 >= n) break;
        std::vector<u64> tau(n, 0);
        for (std::size_t i = k + 2; i < n; ++i) tau[i] = F.mul(m.at(k, i), inv);
        for (std::size_t i = k + 2; i < n; ++i) {
            for (std::size_t j = k + 2; j < n; ++j) {
                u64 upd = F.sub(F.mul(tau[i], m.at(j, k + 1)), F.mul(tau[j], m.at(i, k + 1)));
                m.at(i, j) = F.add(m.at(i, j), upd);
            }
        }
    }
    return result;
}

inline FieldMatrix kron(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.field() != b.field()) throw std::invalid_argument("kron field mismatch");
    const PrimeField F = a.field();
    FieldMatrix r(F, a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            u64 aij = a.at(i, j);
            if (aij == 0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r.at(i * b.rows() + k, j * b.cols() + l) = F.mul(aij, b.at(k, l));
        }
    return r;
}

inline QuadPolyMatrix kron(const QuadPolyMatrix& a, const FieldMatrix& b) {
    if (a.field() != b.field()) throw std::invalid_argument("kron field mismatch");
    QuadPolyMatrix r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const QuadPoly& aij = a.at(i, j);
            if (aij.is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    if (b.at(k, l) != 0) r.at(i * b.rows() + k, j * b.cols() + l) = aij.scaled(b.at(k, l));
        }
    return r;
}

namespace detail {

/// Degree of the polynomial interpolating values p(0), p(1), ..., p(D),
/// exact for any polynomial of degree <= D. Works by building forward
/// difference rows until one vanishes identically.
inline long long degree_from_consecutive_evals(const PrimeField& F, std::vector<u64> vals) {
    auto all_zero = [](const std::vector<u64>& v) {
        for (u64 x : v)
            if (x != 0) return false;
        return true;
    };
    if (all_zero(vals)) return kZeroPolyDegree;
    long long level = 0;
    while (vals.size() > 1) {
        std::vector<u64> next(vals.size() - 1);
        for (std::size_t i = 0; i + 1 < vals.size(); ++i) next[i] = F.sub(vals[i + 1], vals[i]);
        if (all_zero(next)) return level;
        vals = std::move(next);
        ++level;
    }
    return level;
}

/// Matrix with entries restricted to the ray t = alpha * u: each entry is a
/// sparse univariate polynomial in u.
struct RayMatrix {
    PrimeField field;
    std::size_t n;
    std::vector<std::vector<std::pair<u64, u64>>> entries;  // (degree, coeff) per entry
    std::vector<u64> degrees;                               // distinct degrees across entries
};

inline RayMatrix restrict_matrix_to_ray(const QuadPolyMatrix& m, const std::array<u64, 4>& alpha) {
    RayMatrix r{m.field(), m.rows(), {}, {}};
    r.entries.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            auto e = m.at(i, j).restrict_to_ray(alpha);
            for (const auto& [d, c] : e) r.degrees.push_back(d);
            r.entries.push_back(std::move(e));
        }
    std::sort(r.degrees.begin(), r.degrees.end());
    r.degrees.erase(std::unique(r.degrees.begin(), r.degrees.end()), r.degrees.end());
    return r;
}

inline FieldMatrix eval_ray(const RayMatrix& rm, u64 u) {
    const PrimeField& F = rm.field;
    // powers of u for the sorted distinct degrees, chained via the gaps
    std::vector<std::pair<u64, u64>> powers;  // degree -> u^degree
    powers.reserve(rm.degrees.size());
    u64 prev_deg = 0, prev_pow = 1;
    for (u64 d : rm.degrees) {
        prev_pow = F.mul(prev_pow, F.pow(u, d - prev_deg));
        prev_deg = d;
        powers.emplace_back(d, prev_pow);
    }
    auto power_of = [&](u64 d) {
        auto it = std::lower_bound(powers.begin(), powers.end(), d,
                                   [](const std::pair<u64, u64>& a, u64 b) { return a.first < b; });
        return it->second;
    };
    FieldMatrix m(F, rm.n, rm.n);
    for (std::size_t i = 0; i < rm.n; ++i)
        for (std::size_t j = 0; j < rm.n; ++j) {
            u64 acc = 0;
            for (const auto& [d, c] : rm.entries[i * rm.n + j]) acc = F.add(acc, F.mul(c, power_of(d)));
            m.at(i, j) = acc;
        }
    return m;
}

/// Total-degree bound for det: sum over columns of the max entry degree.
inline long long det_degree_bound(const QuadPolyMatrix& m) {
    long long bound = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        long long best = kZeroPolyDegree;
        for (std::size_t r = 0; r < m.rows(); ++r) best = std::max(best, m.at(r, c).total_degree());
        if (best == kZeroPolyDegree) return kZeroPolyDegree;  // zero column
        bound += best;
    }
    return bound;
}

/// Per-variable individual-degree bounds for det.
inline std::array<u64, 4> det_individual_bounds(const QuadPolyMatrix& m) {
    std::array<u64, 4> bounds{0, 0, 0, 0};
    for (int v = 0; v < 4; ++v) {
        u64 sum = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            u64 best = 0;
            for (std::size_t r = 0; r < m.rows(); ++r)
                best = std::max<u64>(best, m.at(r, c).individual_degree(v));
            sum += best;
        }
        bounds[v] = sum;
    }
    return bounds;
}

/// Newton interpolation on the points 0..k; returns monomial coefficients.
inline std::vector<u64> interpolate_consecutive(const PrimeField& F, std::vector<u64> vals) {
    const std::size_t k = vals.size();
    std::vector<u64> inv(k + 1, 0);
    for (std::size_t j = 1; j <= k; ++j) inv[j] = F.inv(j % F.modulus());
    // divided differences (x_i = i, so x_i - x_{i-j} = j)
    for (std::size_t j = 1; j < k; ++j)
        for (std::size_t i = k - 1; i >= j; --i) {
            vals[i] = F.mul(F.sub(vals[i], vals[i - 1]), inv[j]);
            if (i == j) break;
        }
    // expand Newton form to monomial basis
    std::vector<u64> coeff(k, 0);
    for (std::size_t i = k; i-- > 0;) {
        // coeff <- coeff * (x - i) + d_i
        for (std::size_t d = k - 1; d >= 1; --d)
            coeff[d] = F.sub(coeff[d - 1], F.mul(coeff[d], F.reduce(i)));
        coeff[0] = F.sub(vals[i], F.mul(coeff[0], F.reduce(i)));
    }
    return coeff;
}

}  // namespace detail

/// Dense interpolation of a 4-variable polynomial from evaluations on the
/// grid {0..bounds[v]}^4. The eval callback receives one grid point.
template <class EvalFn>
QuadPoly interpolate_on_grid(PrimeField F, const std::array<u64, 4>& bounds, EvalFn&& eval) {
    std::array<std::size_t, 4> size{};
    std::size_t total = 1;
    for (int v = 0; v < 4; ++v) {
        if (bounds[v] + 1 > F.modulus()) throw FieldTooSmall("interpolation grid larger than field");
        size[v] = static_cast<std::size_t>(bounds[v]) + 1;
        total *= size[v];
    }
    std::vector<u64> vals(total);
    std::array<u64, 4> pt{};
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (int v = 3; v >= 0; --v) {
            pt[v] = rem % size[v];
            rem /= size[v];
        }
        vals[idx] = eval(pt);
    }
    // interpolate along each axis in turn, innermost (contiguous) first
    std::size_t stride = 1;
    for (int v = 3; v >= 0; --v) {
        const std::size_t len = size[v];
        if (len > 1) {
            std::vector<u64> slice(len);
            for (std::size_t base = 0; base < total; ++base) {
                std::size_t pos = (base / stride) % len;
                if (pos != 0) continue;
                for (std::size_t i = 0; i < len; ++i) slice[i] = vals[base + i * stride];
                auto c = detail::interpolate_consecutive(F, slice);
                for (std::size_t i = 0; i < len; ++i) vals[base + i * stride] = c[i];
            }
        }
        stride *= len;
    }
    QuadPoly result(F);
    for (std::size_t idx = 0; idx < total; ++idx) {
        if (vals[idx] == 0) continue;
        std::size_t rem = idx;
        Exponents e{};
        for (int v = 3; v >= 0; --v) {
            e[v] = static_cast<std::uint32_t>(rem % size[v]);
            rem /= size[v];
        }
        result.add_term(e, vals[idx]);
    }
    return result;
}

enum class DegreeMode { kRandomized, kDeterministic };

constexpr std::size_t kDeterministicGridCap = 1u << 21;

/// Total degree of det(M) as a polynomial in the four indeterminates;
/// kZeroPolyDegree for the zero polynomial.
///
/// Randomized mode projects onto a random ray t = alpha*u, interpolates the
/// univariate determinant from consecutive evaluations and keeps the max
/// over `trials` repetitions (the top homogeneous component survives the
/// projection except with probability deg/|F| per trial). Deterministic mode
/// is dense grid interpolation and only works for tiny matrices.
inline long long det_total_degree(const QuadPolyMatrix& m, DegreeMode mode, int trials, Rng& rng) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det_total_degree requires a square matrix");
    const PrimeField F = m.field();
    if (m.rows() == 0) return 0;  // det of the empty matrix is 1
    const long long bound = detail::det_degree_bound(m);
    if (bound == kZeroPolyDegree) return kZeroPolyDegree;

    if (mode == DegreeMode::kDeterministic) {
        auto bounds = detail::det_individual_bounds(m);
        std::size_t total = 1;
        for (int v = 0; v < 4; ++v) {
            if (bounds[v] + 1 > F.modulus()) throw FieldTooSmall("grid larger than field; raise the prime");
            total *= static_cast<std::size_t>(bounds[v] + 1);
            if (total > kDeterministicGridCap)
                throw GuardExceeded("deterministic degree extraction is limited to tiny matrices");
        }
        QuadPoly d = interpolate_on_grid(F, bounds, [&](const std::array<u64, 4>& t) { return det(m.eval(t)); });
        return d.total_degree();
    }

    if (static_cast<u64>(bound) + 1 > F.modulus())
        throw FieldTooSmall("degree bound exceeds field size; raise the prime");
    // cheap zero screen before paying for full interpolation
    bool seen_nonzero = false;
    for (int t = 0; t < trials && !seen_nonzero; ++t) {
        std::array<u64, 4> pt{F.uniform(rng), F.uniform(rng), F.uniform(rng), F.uniform(rng)};
        if (det(m.eval(pt)) != 0) seen_nonzero = true;
    }
    if (!seen_nonzero) return kZeroPolyDegree;

    // for a skew-symmetric matrix det = pf^2, so interpolating the Pfaffian
    // needs half the evaluation points
    const bool skew = m.is_skew_symmetric();
    const std::size_t points = skew ? static_cast<std::size_t>(bound / 2) + 1
                                    : static_cast<std::size_t>(bound) + 1;
    long long best = kZeroPolyDegree;
    for (int t = 0; t < trials; ++t) {
        std::array<u64, 4> alpha{F.uniform_nonzero(rng), F.uniform_nonzero(rng), F.uniform_nonzero(rng),
                                 F.uniform_nonzero(rng)};
        auto ray = detail::restrict_matrix_to_ray(m, alpha);
        std::vector<u64> vals(points);
        for (std::size_t u = 0; u < vals.size(); ++u) {
            FieldMatrix at = detail::eval_ray(ray, u);
            vals[u] = skew ? pfaffian(std::move(at)) : det(std::move(at));
        }
        long long deg = detail::degree_from_consecutive_evals(F, std::move(vals));
        if (deg != kZeroPolyDegree) best = std::max(best, skew ? 2 * deg : deg);
    }
    return best;
}

constexpr std::size_t kNonzeroGridCap = 4096;

/// Polynomial-identity test for det(M) != 0. Exhausts a small grid when the
/// individual-degree bounds make that exact test cheap, otherwise evaluates
/// at `trials` random points (one-sided error).
inline bool det_is_nonzero(const QuadPolyMatrix& m, int trials, Rng& rng) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det_is_nonzero requires a square matrix");
    const PrimeField F = m.field();
    if (m.rows() == 0) return true;
    if (detail::det_degree_bound(m) == kZeroPolyDegree) return false;

    auto bounds = detail::det_individual_bounds(m);
    std::size_t total = 1;
    bool tiny = true;
    for (int v = 0; v < 4; ++v) {
        if (bounds[v] + 1 > F.modulus()) {
            tiny = false;
            break;
        }
        total *= static_cast<std::size_t>(bounds[v] + 1);
        if (total > kNonzeroGridCap) {
            tiny = false;
            break;
        }
    }
    if (tiny) {
        // a nonzero polynomial with individual degrees <= bounds is nonzero
        // somewhere on the grid {0..bounds[v]}^4
        std::array<std::size_t, 4> size{};
        for (int v = 0; v < 4; ++v) size[v] = static_cast<std::size_t>(bounds[v]) + 1;
        std::array<u64, 4> pt{};
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t rem = idx;
            for (int v = 3; v >= 0; --v) {
                pt[v] = rem % size[v];
                rem /= size[v];
            }
            if (det(m.eval(pt)) != 0) return true;
        }
        return false;
    }
    for (int t = 0; t < trials; ++t) {
        std::array<u64, 4> pt{F.uniform(rng), F.uniform(rng), F.uniform(rng), F.uniform(rng)};
        if (det(m.eval(pt)) != 0) return true;
    }
    return false;
}

}  // namespace flmm
