#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "flmm/field.hpp"

namespace flmm::lattice {

/// Constraint matrix D with entries in {0,1,2}; the lattice is
/// L_D = {v in Z^m : Dv = 0}. The multigraph construction additionally
/// requires every column to sum to exactly two.
struct ConstraintMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<int> a;  // row-major
    std::optional<std::vector<long long>> rhs;

    ConstraintMatrix() = default;
    ConstraintMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    int at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
    int& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }

    bool entries_in_range() const {
        for (int v : a)
            if (v < 0 || v > 2) return false;
        return true;
    }

    bool column_sums_two() const {
        for (std::size_t c = 0; c < cols; ++c) {
            int s = 0;
            for (std::size_t r = 0; r < rows; ++r) s += at(r, c);
            if (s != 2) return false;
        }
        return true;
    }
};

/// Multigraph G_D: one vertex per row, one edge per column. A column with
/// two ones becomes an edge between those rows; a column with a single two
/// becomes a self-loop.
struct MultiGraph {
    struct Edge {
        std::size_t s, t;  // s == t marks a self-loop
    };
    std::size_t num_vertices = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<std::size_t>> incident;  // vertex -> incident edge indices (ascending)

    std::size_t other_end(std::size_t edge, std::size_t v) const {
        const Edge& e = edges[edge];
        return e.s == v ? e.t : e.s;
    }
};

inline MultiGraph build_graph(const ConstraintMatrix& d) {
    if (!d.entries_in_range()) throw InputError("constraint matrix entries must be in {0,1,2}");
    MultiGraph g;
    g.num_vertices = d.rows;
    g.incident.resize(d.rows);
    for (std::size_t c = 0; c < d.cols; ++c) {
        std::vector<std::size_t> ones;
        std::optional<std::size_t> two;
        for (std::size_t r = 0; r < d.rows; ++r) {
            if (d.at(r, c) == 1) ones.push_back(r);
            if (d.at(r, c) == 2) two = r;
        }
        MultiGraph::Edge e{};
        if (two && ones.empty()) {
            e = {*two, *two};
        } else if (!two && ones.size() == 2) {
            e = {std::min(ones[0], ones[1]), std::max(ones[0], ones[1])};
        } else {
            throw InputError("column " + std::to_string(c) + " does not sum to two");
        }
        std::size_t idx = g.edges.size();
        g.edges.push_back(e);
        g.incident[e.s].push_back(idx);
        if (e.t != e.s) g.incident[e.t].push_back(idx);
    }
    return g;
}

/// An even closed walk whose alternating indicator vector is nonzero.
struct AlternatingCircuit {
    std::size_t start_vertex = 0;
    std::vector<std::size_t> edges;       // walk in traversal order
    std::vector<long long> indicator;     // signed edge counts
    std::size_t size() const { return edges.size(); }
};

struct Decomposition {
    std::vector<AlternatingCircuit> circuits;
};

/// Walk decomposition of a lattice vector. Greedily follows alternating
/// walks (lowest admissible edge index first), closing each circuit at the
/// first even-length return to its start. Returns nullopt exactly when the
/// walk extension fails, which happens iff Dx != 0.
inline std::optional<Decomposition> decompose(const ConstraintMatrix& d, std::vector<long long> x) {
    MultiGraph g = build_graph(d);
    if (x.size() != d.cols) throw InputError("vector length does not match the column count");
    Decomposition out;
    auto l1 = [&] {
        long long s = 0;
        for (long long v : x) s += std::llabs(v);
        return s;
    };
    while (l1() != 0) {
        std::size_t e0 = x.size();
        for (std::size_t e = 0; e < x.size(); ++e)
            if (x[e] > 0) {
                e0 = e;
                break;
            }
        if (e0 == x.size()) return std::nullopt;  // nonzero but no positive entry
        std::vector<long long> y(x.size(), 0);
        y[e0] = 1;
        const std::size_t v0 = std::min(g.edges[e0].s, g.edges[e0].t);
        std::size_t cur = std::max(g.edges[e0].s, g.edges[e0].t);
        std::vector<std::size_t> walk{e0};
        std::size_t j = 1;
        while (true) {
            const bool want_positive = (j % 2 == 0);
            std::size_t next = x.size();
            for (std::size_t e : g.incident[cur]) {
                const bool sign_ok = want_positive ? (x[e] > 0) : (x[e] < 0);
                if (sign_ok && std::llabs(x[e]) > std::llabs(y[e])) {
                    next = e;
                    break;
                }
            }
            if (next == x.size()) return std::nullopt;
            y[next] += want_positive ? 1 : -1;
            walk.push_back(next);
            cur = g.other_end(next, cur);
            ++j;
            if (j % 2 == 0 && cur == v0) {
                for (std::size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
                out.circuits.push_back({v0, std::move(walk), std::move(y)});
                break;
            }
        }
    }
    return out;
}

namespace detail {

/// Small exact rational for the kernel computation; magnitudes stay tiny at
/// the supported sizes.
struct Frac {
    long long n = 0, d = 1;
    static long long gcd_ll(long long a, long long b) { return std::gcd(std::llabs(a), std::llabs(b)); }
    static Frac make(long long n, long long d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        long long g = gcd_ll(n == 0 ? 1 : n, d);
        if (n == 0) return {0, 1};
        return {n / g, d / g};
    }
    Frac operator+(const Frac& o) const { return make(n * o.d + o.n * d, d * o.d); }
    Frac operator-(const Frac& o) const { return make(n * o.d - o.n * d, d * o.d); }
    Frac operator*(const Frac& o) const { return make(n * o.n, d * o.d); }
    Frac operator/(const Frac& o) const { return make(n * o.d, d * o.n); }
    bool zero() const { return n == 0; }
};

/// Exact rational elimination; returns the rank and, when the kernel is
/// nontrivial, one nonzero integer kernel vector.
inline std::pair<std::size_t, std::optional<std::vector<long long>>> rank_and_kernel_vector(
    const ConstraintMatrix& d) {
    const std::size_t rows = d.rows, cols = d.cols;
    std::vector<std::vector<Frac>> a(rows, std::vector<Frac>(cols));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) a[r][c] = Frac::make(d.at(r, c), 1);
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c].zero()) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        Frac inv = Frac::make(a[r][c].d, a[r][c].n);
        for (std::size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].zero()) continue;
            Frac f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    if (r == cols) return {r, std::nullopt};
    // free column: first column that is not a pivot
    std::size_t free_col = 0;
    {
        std::set<std::size_t> pivots(pivot_col.begin(), pivot_col.end());
        while (pivots.count(free_col)) ++free_col;
    }
    std::vector<Frac> x(cols, Frac{0, 1});
    x[free_col] = Frac{1, 1};
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = Frac{0, 1} - a[i][free_col];
    long long lcm = 1;
    for (const Frac& f : x) lcm = lcm / Frac::gcd_ll(lcm, f.d) * f.d;
    std::vector<long long> ix(cols);
    for (std::size_t c = 0; c < cols; ++c) ix[c] = x[c].n * (lcm / x[c].d);
    return {r, ix};
}

/// Per-start-vertex distances on (vertex, parity) states; used to prune
/// walks that can no longer close at even length.
inline std::vector<std::array<int, 2>> closing_distance(const MultiGraph& g, std::size_t v0) {
    constexpr int kInf = 1 << 29;
    std::vector<std::array<int, 2>> dist(g.num_vertices, {kInf, kInf});
    std::queue<std::pair<std::size_t, int>> q;
    dist[v0][0] = 0;
    q.push({v0, 0});
    while (!q.empty()) {
        auto [v, b] = q.front();
        q.pop();
        for (std::size_t e : g.incident[v]) {
            std::size_t u = g.other_end(e, v);
            int nb = b ^ 1;
            if (dist[u][nb] > dist[v][b] + 1) {
                dist[u][nb] = dist[v][b] + 1;
                q.push({u, nb});
            }
        }
    }
    return dist;
}

/// Enumerates sign-consistent alternating circuits of size <= budget whose
/// minimal used edge is the start edge, taken with positive sign. Calls
/// `record` with the indicator vector at every even-length return to the
/// start vertex; record returns false to stop the search.
template <class RecordFn>
bool enumerate_canonical_circuits(const MultiGraph& g, std::size_t budget, RecordFn&& record) {
    const std::size_t m = g.edges.size();
    std::vector<long long> y(m, 0);
    bool keep_going = true;
    for (std::size_t e0 = 0; e0 < m && keep_going; ++e0) {
        const auto& first = g.edges[e0];
        std::vector<std::pair<std::size_t, std::size_t>> starts;  // (v0, first step target)
        starts.push_back({first.s, first.t});
        if (first.s != first.t) starts.push_back({first.t, first.s});
        for (auto [v0, v1] : starts) {
            if (!keep_going) break;
            auto dist = closing_distance(g, v0);
            y[e0] = 1;
            auto rec = [&](auto&& self, std::size_t cur, std::size_t steps) -> void {
                if (!keep_going) return;
                if (steps % 2 == 0 && cur == v0) {
                    if (!record(y, steps)) {
                        keep_going = false;
                        return;
                    }
                }
                if (steps >= budget) return;
                const bool want_positive = (steps % 2 == 0);
                for (std::size_t e : g.incident[cur]) {
                    if (e < e0) continue;  // canonical: e0 is the minimal used edge
                    if (y[e] != 0 && (y[e] > 0) != want_positive) continue;
                    std::size_t u = g.other_end(e, cur);
                    int nb = static_cast<int>((steps + 1) % 2);
                    if (dist[u][nb] > static_cast<int>(budget - steps - 1)) continue;
                    y[e] += want_positive ? 1 : -1;
                    self(self, u, steps + 1);
                    y[e] -= want_positive ? 1 : -1;
                    if (!keep_going) return;
                }
            };
            if (budget >= 2) rec(rec, v1, 1);
            y[e0] = 0;
        }
    }
    return keep_going;
}

}  // namespace detail

/// L1 length of the shortest nonzero lattice vector; nullopt when the
/// lattice is trivial. Found by iterative deepening over sign-consistent
/// alternating walks, which is exact because some shortest vector is the
/// indicator vector of an alternating circuit of the same size.
inline std::optional<std::size_t> lambda(const ConstraintMatrix& d) {
    MultiGraph g = build_graph(d);
    auto [rank, kernel] = detail::rank_and_kernel_vector(d);
    if (!kernel) return std::nullopt;
    long long ub = 0;
    for (long long v : *kernel) ub += std::llabs(v);
    for (std::size_t budget = 2; budget <= static_cast<std::size_t>(ub); budget += 2) {
        std::size_t found = 0;
        detail::enumerate_canonical_circuits(g, budget, [&](const std::vector<long long>&, std::size_t steps) {
            found = steps;
            return false;
        });
        if (found != 0) return found;
    }
    // the kernel vector itself decomposes into circuits, so this is
    // unreachable for a valid constraint matrix
    throw std::logic_error("lambda: no circuit found below the kernel bound");
}

/// All lattice vectors v with |v| < c * lambda (default c = 2). Every such
/// vector is the indicator vector of a sign-consistent alternating circuit,
/// so enumerating canonical circuits and closing under negation is complete.
inline std::vector<std::vector<long long>> near_shortest(const ConstraintMatrix& d, double c = 2.0) {
    if (c <= 0 || c > 2.0) throw InputError("near_shortest supports 0 < c <= 2");
    auto lam = lambda(d);
    std::vector<std::vector<long long>> out;
    if (!lam) return out;
    const double limit = c * static_cast<double>(*lam);
    std::size_t budget = 0;
    while (static_cast<double>(budget + 2) < limit) budget += 2;
    if (budget == 0) return out;
    MultiGraph g = build_graph(d);
    std::set<std::vector<long long>> found;
    detail::enumerate_canonical_circuits(g, budget, [&](const std::vector<long long>& y, std::size_t) {
        found.insert(y);
        return true;
    });
    for (const auto& v : found) {
        out.push_back(v);
        std::vector<long long> neg(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
        out.push_back(std::move(neg));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace flmm::lattice
