#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "flmm/field.hpp"
#include "flmm/instance.hpp"
#include "flmm/lattice.hpp"
#include "flmm/rng.hpp"

namespace flmm::io {

using nlohmann::json;

/// Canonical serialization used everywhere, so that generate -> parse ->
/// serialize round-trips byte-identically.
inline std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

inline json instance_to_json(const Instance& inst) {
    json lines = json::array();
    for (std::size_t i = 0; i < inst.m(); ++i) {
        json a = json::array(), b = json::array();
        for (u64 x : inst.line(i).a) a.push_back(x);
        for (u64 x : inst.line(i).b) b.push_back(x);
        lines.push_back(json{{"a", a}, {"b", b}});
    }
    return json{{"prime", inst.field().modulus()}, {"n", inst.n()}, {"lines", lines}};
}

inline Instance instance_from_json(const json& j) {
    if (!j.is_object() || !j.contains("prime") || !j.contains("n") || !j.contains("lines"))
        throw InputError("instance file needs the fields prime, n and lines");
    if (!j["prime"].is_number_unsigned() && !j["prime"].is_number_integer())
        throw InputError("prime must be an integer");
    PrimeField f(j["prime"].get<u64>());
    const auto n = j["n"].get<std::size_t>();
    std::vector<Instance::Line> lines;
    for (const auto& l : j["lines"]) {
        if (!l.contains("a") || !l.contains("b")) throw InputError("each line needs vectors a and b");
        Instance::Line line;
        for (const auto& x : l["a"]) line.a.push_back(f.reduce_signed(x.get<i64>()));
        for (const auto& x : l["b"]) line.b.push_back(f.reduce_signed(x.get<i64>()));
        lines.push_back(std::move(line));
    }
    return Instance(f, n, std::move(lines));
}

inline json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    return j;
}

inline Instance load_instance_file(const std::string& path) { return instance_from_json(parse_json_file(path)); }

/// D-file format: {"rows": p, "cols": m, "entries": [[...], ...]} with an
/// optional "rhs" array.
inline lattice::ConstraintMatrix constraint_from_json(const json& j) {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw InputError("constraint file needs rows, cols and entries");
    lattice::ConstraintMatrix d(j["rows"].get<std::size_t>(), j["cols"].get<std::size_t>());
    const auto& entries = j["entries"];
    if (entries.size() != d.rows) throw InputError("entries must have one array per row");
    for (std::size_t r = 0; r < d.rows; ++r) {
        if (entries[r].size() != d.cols) throw InputError("row " + std::to_string(r) + " has the wrong length");
        for (std::size_t c = 0; c < d.cols; ++c) d.at(r, c) = entries[r][c].get<int>();
    }
    if (j.contains("rhs")) {
        std::vector<long long> rhs;
        for (const auto& x : j["rhs"]) rhs.push_back(x.get<long long>());
        d.rhs = std::move(rhs);
    }
    return d;
}

inline json constraint_to_json(const lattice::ConstraintMatrix& d) {
    json entries = json::array();
    for (std::size_t r = 0; r < d.rows; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < d.cols; ++c) row.push_back(d.at(r, c));
        entries.push_back(row);
    }
    json j{{"rows", d.rows}, {"cols", d.cols}, {"entries", entries}};
    if (d.rhs) j["rhs"] = *d.rhs;
    return j;
}

/// Comma-separated integers, e.g. "1,-2,3".
inline std::vector<long long> parse_csv_integers(const std::string& text) {
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw InputError("empty entry in integer list");
        out.push_back(std::stoll(tok));
    }
    return out;
}

inline std::vector<u64> parse_csv_u64(const std::string& text) {
    std::vector<u64> out;
    for (long long v : parse_csv_integers(text)) {
        if (v < 0) throw InputError("expected a nonnegative integer list");
        out.push_back(static_cast<u64>(v));
    }
    return out;
}

/// Graph reduction: one line <e_u, e_v> per edge of a loopless multigraph on
/// `num_vertices` vertices (0-based endpoints).
inline Instance gen_graph(PrimeField f, std::size_t num_vertices,
                          const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<Instance::Line> lines;
    for (auto [u, v] : edges) {
        if (u >= num_vertices || v >= num_vertices) throw InputError("edge endpoint out of range");
        if (u == v) throw InputError("graph reduction requires a loopless graph");
        Instance::Line l;
        l.a.assign(num_vertices, 0);
        l.b.assign(num_vertices, 0);
        l.a[u] = 1;
        l.b[v] = 1;
        lines.push_back(std::move(l));
    }
    return Instance(f, num_vertices, std::move(lines));
}

/// Uniformly random independent spanning pairs.
inline Instance gen_random(PrimeField f, std::size_t m, std::size_t n, u64 seed) {
    if (n < 2 && m > 0) throw InputError("random instances need n >= 2");
    Rng rng = make_rng(seed);
    auto random_nonzero_vec = [&] {
        while (true) {
            std::vector<u64> v(n);
            bool nz = false;
            for (auto& x : v) {
                x = f.uniform(rng);
                nz |= (x != 0);
            }
            if (nz) return v;
        }
    };
    std::vector<Instance::Line> lines;
    for (std::size_t i = 0; i < m; ++i) {
        Instance::Line l;
        l.a = random_nonzero_vec();
        while (true) {
            l.b = random_nonzero_vec();
            try {
                wedge_matrix(f, l.a, l.b);
                break;
            } catch (const InputError&) {
                // dependent pair, resample
            }
        }
        lines.push_back(std::move(l));
    }
    return Instance(f, n, std::move(lines));
}

/// Two-matroid common-base encoding: line i is <(u_i, 0), (0, v_i)> inside
/// F^{n1+n2}, with u_i, v_i random nonzero vectors; fractional matroid
/// matchings of these lines mirror the matroid intersection polytope.
inline Instance gen_intersection(PrimeField f, std::size_t m, std::size_t n1, std::size_t n2, u64 seed) {
    if (n1 == 0 || n2 == 0) throw InputError("intersection instances need n1, n2 >= 1");
    Rng rng = make_rng(seed);
    auto random_nonzero = [&](std::size_t k) {
        while (true) {
            std::vector<u64> v(k);
            bool nz = false;
            for (auto& x : v) {
                x = f.uniform(rng);
                nz |= (x != 0);
            }
            if (nz) return v;
        }
    };
    std::vector<Instance::Line> lines;
    for (std::size_t i = 0; i < m; ++i) {
        Instance::Line l;
        l.a = random_nonzero(n1);
        l.a.resize(n1 + n2, 0);
        l.b.assign(n1, 0);
        auto v = random_nonzero(n2);
        l.b.insert(l.b.end(), v.begin(), v.end());
        lines.push_back(std::move(l));
    }
    return Instance(f, n1 + n2, std::move(lines));
}

}  // namespace flmm::io
