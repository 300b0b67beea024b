#pragma once

#include "catqec/code.hpp"
#include "catqec/graph.hpp"
#include "catqec/matching.hpp"

#include <cstdint>
#include <vector>

namespace catqec {

struct DecodeResult {
    bool fail_x = false; // corrected residual anticommutes with logical X
    bool fail_z = false;
    int n_defects = 0;
    int64_t matched_weight = 0;
};

// Matching decoder over the space-time detector graph. Candidate edges come
// from a Dijkstra per defect (settled exactly, so candidate distances are
// optimal); with prune_k > 0 each search stops once it has reached prune_k
// other defects plus the cheapest boundary, which keeps dense shots fast at
// the cost of ignoring implausibly long pairings. prune_k = 0 settles the
// whole graph and yields the unabridged matching problem.
class Decoder {
public:
    Decoder(const DetectorGraph& graph, const CodeLayout& layout, int prune_k = 0)
        : g_(&graph), lay_(&layout), prune_k_(prune_k) {}

    DecodeResult decode(const ShotResult& shot) const;

private:
    const DetectorGraph* g_;
    const CodeLayout* lay_;
    int prune_k_;
};

} // namespace catqec
