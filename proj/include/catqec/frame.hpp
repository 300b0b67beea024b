#pragma once

#include <cstdint>
#include <vector>

#include "catqec/noise.hpp"
#include "catqec/rng.hpp"
#include "catqec/schedule.hpp"

namespace catqec {

// Result of one sampled memory experiment: outcome and defect bits for
// noisy_rounds + 1 rounds (the last round is noiseless), plus the residual
// Pauli frame on the data qubits.
struct ShotResult {
    int n_rounds = 0; // noisy rounds; outcomes cover n_rounds + 1
    int n_checks = 0;
    std::vector<uint8_t> outcomes; // flips relative to the noiseless reference
    std::vector<uint8_t> defects;  // outcome XOR previous-round outcome
    std::vector<uint8_t> data_x, data_z;

    uint8_t defect(int round, int check) const { return defects[round * n_checks + check]; }
    int total_rounds() const { return n_rounds + 1; }
};

struct ForcedFault {
    int round = 0, layer = 0, element = 0;
    FaultOutcome fault;
};

// symplectic overlap of a Pauli frame with a Pauli operator
bool frame_anticommutes(const std::vector<uint8_t>& x, const std::vector<uint8_t>& z,
                        const PauliString& p);

class FrameSimulator {
public:
    FrameSimulator(const Schedule& sched, const NoiseModel& noise, uint64_t seed)
        : sched_(&sched), noise_(&noise), rng_(seed) {}

    // sampled noise in rounds 0..noisy_rounds-1, then one noiseless round
    void run(uint64_t shot, int noisy_rounds, ShotResult* out) const;

    // deterministic runs for fault enumeration and tests
    void run_forced(const std::vector<ForcedFault>& faults, int noisy_rounds,
                    ShotResult* out) const;
    void run_with_initial(const std::vector<uint8_t>& x0, const std::vector<uint8_t>& z0,
                          int noisy_rounds, ShotResult* out) const;

    const Schedule& schedule() const { return *sched_; }
    const NoiseModel& noise() const { return *noise_; }

private:
    void run_impl(uint64_t shot, bool sample_noise, const std::vector<ForcedFault>* forced,
                  const std::vector<uint8_t>* x0, const std::vector<uint8_t>* z0,
                  int noisy_rounds, ShotResult* out) const;

    const Schedule* sched_;
    const NoiseModel* noise_;
    CounterRng rng_;
};

} // namespace catqec
