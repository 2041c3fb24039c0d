#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <utility>
#include <vector>

#include "flmm/field.hpp"

namespace flmm {

/// Degree of the zero polynomial. Distinct from 0 on purpose: the solver
/// branches on W > 0 and must tell "constant" from "identically zero".
constexpr long long kZeroPolyDegree = -1;

/// Exponent vector for the four blow-up indeterminates, in the fixed order
/// (t11, t12, t21, t22).
using Exponents = std::array<std::uint32_t, 4>;

/// Sparse polynomial over F_p in the four blow-up indeterminates.
/// Invariant: no stored zero coefficients.
class QuadPoly {
public:
    using TermMap = std::map<Exponents, u64>;

    explicit QuadPoly(PrimeField f) : field_(f) {}

    static QuadPoly zero(PrimeField f) { return QuadPoly(f); }

    static QuadPoly constant(PrimeField f, u64 c) {
        QuadPoly p(f);
        c = f.reduce(c);
        if (c != 0) p.terms_[{0, 0, 0, 0}] = c;
        return p;
    }

    static QuadPoly monomial(PrimeField f, Exponents e, u64 c) {
        QuadPoly p(f);
        c = f.reduce(c);
        if (c != 0) p.terms_[e] = c;
        return p;
    }

    PrimeField field() const { return field_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    long long total_degree() const {
        long long d = kZeroPolyDegree;
        for (const auto& [e, c] : terms_) {
            long long t = static_cast<long long>(e[0]) + e[1] + e[2] + e[3];
            if (t > d) d = t;
        }
        return d;
    }

    /// Largest exponent of variable v across all terms, 0 for the zero poly.
    std::uint32_t individual_degree(int v) const {
        std::uint32_t d = 0;
        for (const auto& [e, c] : terms_)
            if (e[v] > d) d = e[v];
        return d;
    }

    void add_term(Exponents e, u64 c) {
        c = field_.reduce(c);
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second = field_.add(it->second, c);
            if (it->second == 0) terms_.erase(it);
        }
    }

    QuadPoly& operator+=(const QuadPoly& o) {
        check_same_field(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    QuadPoly& operator-=(const QuadPoly& o) {
        check_same_field(o);
        for (const auto& [e, c] : o.terms_) add_term(e, field_.neg(c));
        return *this;
    }

    friend QuadPoly operator+(QuadPoly a, const QuadPoly& b) { return a += b; }
    friend QuadPoly operator-(QuadPoly a, const QuadPoly& b) { return a -= b; }

    friend QuadPoly operator*(const QuadPoly& a, const QuadPoly& b) {
        a.check_same_field(b);
        QuadPoly r(a.field_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]};
                r.add_term(e, a.field_.mul(ca, cb));
            }
        }
        return r;
    }

    QuadPoly& operator*=(const QuadPoly& o) { return *this = *this * o; }

    QuadPoly scaled(u64 c) const {
        QuadPoly r(field_);
        c = field_.reduce(c);
        if (c == 0) return r;
        for (const auto& [e, k] : terms_) r.terms_[e] = field_.mul(k, c);
        return r;
    }

    QuadPoly negated() const { return scaled(field_.modulus() - 1); }

    u64 eval(const std::array<u64, 4>& t) const {
        u64 acc = 0;
        for (const auto& [e, c] : terms_) {
            u64 v = c;
            for (int i = 0; i < 4; ++i)
                if (e[i] != 0) v = field_.mul(v, field_.pow(t[i], e[i]));
            acc = field_.add(acc, v);
        }
        return acc;
    }

    /// Substitutes t_i <- alpha_i * u and returns the resulting univariate
    /// polynomial in u as (degree, coefficient) pairs sorted by degree.
    std::vector<std::pair<u64, u64>> restrict_to_ray(const std::array<u64, 4>& alpha) const {
        std::map<u64, u64> by_deg;
        for (const auto& [e, c] : terms_) {
            u64 v = c;
            for (int i = 0; i < 4; ++i)
                if (e[i] != 0) v = field_.mul(v, field_.pow(alpha[i], e[i]));
            if (v == 0) continue;
            u64 d = static_cast<u64>(e[0]) + e[1] + e[2] + e[3];
            auto it = by_deg.find(d);
            if (it == by_deg.end()) {
                by_deg.emplace(d, v);
            } else {
                it->second = field_.add(it->second, v);
                if (it->second == 0) by_deg.erase(it);
            }
        }
        return {by_deg.begin(), by_deg.end()};
    }

    bool operator==(const QuadPoly& o) const { return field_ == o.field_ && terms_ == o.terms_; }
    bool operator!=(const QuadPoly& o) const { return !(*this == o); }

    friend std::ostream& operator<<(std::ostream& os, const QuadPoly& p) {
        if (p.is_zero()) return os << "0";
        bool first = true;
        static const char* names[4] = {"t11", "t12", "t21", "t22"};
        for (const auto& [e, c] : p.terms_) {
            if (!first) os << " + ";
            first = false;
            os << c;
            for (int i = 0; i < 4; ++i) {
                if (e[i] == 0) continue;
                os << "*" << names[i];
                if (e[i] > 1) os << "^" << e[i];
            }
        }
        return os;
    }

private:
    void check_same_field(const QuadPoly& o) const {
        if (field_ != o.field_) throw std::invalid_argument("QuadPoly field mismatch");
    }

    PrimeField field_;
    TermMap terms_;
};

}  // namespace flmm
