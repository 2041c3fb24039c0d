#pragma once

// Shared tiny instances used across the test suite.

#include <vector>

#include "flmm/instance.hpp"
#include "flmm/io.hpp"

namespace flmm::testing {

/// One line <e1, e2> in F^2; the unique perfect matching is y = (1).
inline Instance one_line(PrimeField f = PrimeField()) {
    return Instance(f, 2, {{{1, 0}, {0, 1}}});
}

/// Triangle: lines <e1,e2>, <e2,e3>, <e3,e1> in F^3; the unique perfect
/// matching is y = (1/2, 1/2, 1/2).
inline Instance k3(PrimeField f = PrimeField()) {
    return io::gen_graph(f, 3, {{0, 1}, {1, 2}, {2, 0}});
}

/// One line <e1, e2> inside F^3: no perfect matching (max size 1 < 3/2).
inline Instance single_line_f3(PrimeField f = PrimeField()) {
    return Instance(f, 3, {{{1, 0, 0}, {0, 1, 0}}});
}

/// Two disjoint lines spanning F^4; perfect matching y = (1, 1).
inline Instance two_disjoint_lines_f4(PrimeField f = PrimeField()) {
    return Instance(f, 4, {{{1, 0, 0, 0}, {0, 1, 0, 0}}, {{0, 0, 1, 0}, {0, 0, 0, 1}}});
}

/// The same line twice in F^4: max size 1, no perfect matching, and (1,1)
/// weights tie between three maximizers.
inline Instance duplicated_line_f4(PrimeField f = PrimeField()) {
    return Instance(f, 4, {{{1, 0, 0, 0}, {0, 1, 0, 0}}, {{1, 0, 0, 0}, {0, 1, 0, 0}}});
}

/// Duplicated line plus a disjoint one in F^4; perfect matchings are
/// (1,0,1), (0,1,1) and (1/2,1/2,1).
inline Instance duplicated_plus_disjoint_f4(PrimeField f = PrimeField()) {
    return Instance(f, 4,
                    {{{1, 0, 0, 0}, {0, 1, 0, 0}},
                     {{1, 0, 0, 0}, {0, 1, 0, 0}},
                     {{0, 0, 1, 0}, {0, 0, 0, 1}}});
}

inline HalfIntegralVector hv(std::vector<std::uint8_t> twice) { return HalfIntegralVector(std::move(twice)); }

}  // namespace flmm::testing
