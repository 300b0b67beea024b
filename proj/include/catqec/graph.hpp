#pragma once

#include "catqec/frame.hpp"
#include "catqec/noise.hpp"
#include "catqec/schedule.hpp"

#include <cstdint>
#include <vector>

namespace catqec {

// Detector graph for matching-based decoding.
//
// Every noise mechanism is injected into a short forced-fault simulation to
// find which defects it lights up and what data residual it leaves behind.
// Mechanisms are first split into per-qubit, per-axis atoms (X/Z, or X/Y for
// codes with Y-type checks, since frames compose by xor along those axes).
// An atom firing k defects becomes: nothing for k=0 (its residual must then
// commute with the code's logicals up to undetectable bias errors), a boundary
// template for k=1, an interior template for k=2. Rarer composite atoms with
// k>2 are decomposed into pairs that already exist as templates. Templates are
// translation-invariant in time; dr says whether the second defect lands one
// round later. Probabilities of mechanisms feeding the same template merge as
// p + q - pq and the stored correction comes from the strongest mechanism.

struct EdgeTemplate {
    int c1 = -1;
    int c2 = -1; // -1 in boundary templates
    int dr = 0;  // 0: same round, 1: c2 one round later
    double p = 0.0;
    int64_t w = 0; // scaled -log(p/(1-p)), filled by finalize
    std::vector<uint8_t> corr_x, corr_z;
    double best_mech_p = 0.0;
};

struct DetectorGraph {
    int n_checks = 0;
    int n_data = 0;
    int64_t scale = 1'000'000;
    std::vector<EdgeTemplate> edges;               // interior templates
    std::vector<EdgeTemplate> boundary;            // at most one per check
    std::vector<std::vector<int>> adj;             // check -> interior template ids
    std::vector<int> boundary_of;                  // check -> boundary id or -1

    // weight helper used for both templates and decoder arithmetic
    int64_t weight_of(double p) const;
};

DetectorGraph build_detector_graph(const Schedule& sched, const NoiseModel& noise);

} // namespace catqec
