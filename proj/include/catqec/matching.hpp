#pragma once

#include <cstdint>
#include <vector>

namespace catqec {

struct MatchEdge {
    int u = 0, v = 0;
    int64_t w = 0; // nonnegative
};

// Exact minimum-weight perfect matching (blossom algorithm, simultaneous
// multi-tree growth with a global dual increment). Throws if no perfect
// matching exists. The returned mate array satisfies mate[mate[v]] == v.
//
// Every solve self-checks an LP-duality certificate: all edge slacks
// nonnegative, matched edges tight, and primal weight equal to the dual
// objective. A violation throws std::logic_error.
struct MatchingResult {
    std::vector<int> mate;
    int64_t weight = 0;
};

MatchingResult min_weight_perfect_matching(int n, const std::vector<MatchEdge>& edges);

// Matching with an optional boundary: every vertex may instead pay
// boundary_w[v] (< 0 means no boundary option). Minimizes total edge weight
// plus boundary payments; implemented by solving perfect matching on a
// doubled graph (mirror copy, zero-weight mirrored edges are not needed:
// mirrored interior edges keep their weight, vertex-to-mirror edges cost the
// boundary weight) and reading off one copy.
struct BoundaryMatchingResult {
    std::vector<int> mate; // partner vertex, or -1 for boundary
    int64_t weight = 0;
};

BoundaryMatchingResult min_weight_boundary_matching(int n, const std::vector<MatchEdge>& edges,
                                                    const std::vector<int64_t>& boundary_w);

} // namespace catqec
