#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "catqec/schedule.hpp"

namespace catqec {

// A single fault alternative of one circuit element: Pauli masks applied to
// the element's qubits (after the ideal operation) and/or a readout flip.
struct FaultOutcome {
    uint8_t xa = 0, za = 0; // Pauli on qubit a: x and z bits
    uint8_t xb = 0, zb = 0; // Pauli on qubit b (two-qubit elements)
    uint8_t flip = 0;       // measurement misassignment / prep flip marker

    Pauli pauli_a() const { return pauli_from_bits(xa, za); }
    Pauli pauli_b() const { return pauli_from_bits(xb, zb); }
};

struct ElementNoise {
    double total = 0.0;              // total fault probability
    std::vector<double> cum;         // cumulative over outs, cum.back() == total
    std::vector<FaultOutcome> outs;

    void add(const FaultOutcome& f, double p);
    // outcome for uniform draw u, or nullptr if no fault
    const FaultOutcome* sample(double u) const;
};

// Per-(layer, element) fault channels, parallel to Schedule::layers.
struct NoiseModel {
    std::vector<std::vector<ElementNoise>> layers;

    const ElementNoise& at(int layer, int element) const { return layers[layer][element]; }
    double element_infidelity(int layer, int element) const { return layers[layer][element].total; }
};

enum class CxKind { BiasPreserving, Standard };

// Biased circuit-level noise, parametrized by the CX gate infidelity p_cx and
// the bias zeta. Every element shares one base dephasing rate p_z:
//   CX (bias-preserving): Z_c with p_z; I.Z_t and Z_c.Z_t with p_z/2;
//                         the other 12 two-qubit Paulis with p_z/zeta.
//   CX (standard): Z_c with p_z; I.Z_t and Z_c.Z_t with 3/8 p_z;
//                  I.Y_t and Z_c.Y_t with 1/8 p_z; other 10 with p_z/zeta.
//                  (3/8 and 1/8 are Pauli-twirl weights of the over/under
//                  rotation left when the target is not bias protected.)
//   CZ: Z on either qubit with p_z; other 13 with p_z/zeta.
//   idle: Z with p_z, X and Y with p_z/zeta.
//   prep/measurement: flip with p_z (1 + 1/zeta).
// So p_cx = p_z (2 + 12/zeta) bias-preserving, p_z (2 + 10/zeta) standard.
struct GenericNoise {
    double p_cx = 0.0;
    double zeta = 1.0;
    CxKind cx_kind = CxKind::BiasPreserving;

    double p_z() const;
    double cz_infidelity() const;
    double idle_infidelity() const;
    double flip_prob() const;

    // fault probabilities, indexed 4*pauli_a + pauli_b (enum order I,X,Z,Y)
    std::vector<double> cx_probs() const;
    std::vector<double> cz_probs() const;
    std::vector<double> idle_probs() const; // indexed by Pauli enum
};

NoiseModel build_generic_noise(const Schedule& sched, const GenericNoise& params);

// Build a model from explicit per-element-kind probability tables. Used by
// the cat-qubit pipeline, which derives tables from Lindblad simulations.
struct ChannelTable {
    std::vector<double> cx;            // 16 entries, index 4*a+b, entry 0 ignored
    std::vector<double> cz;            // 16 entries
    std::vector<double> idle_cx;       // 4 entries: idle during a CX layer
    std::vector<double> idle_cz;       // idle during a CZ layer
    std::vector<double> idle_prep;     // idle during the prep layer
    std::vector<double> idle_meas;     // idle during the meas layer
    std::vector<double> prep;          // 4 entries: Pauli after preparation
    double meas_flip = 0.0;
};

NoiseModel build_table_noise(const Schedule& sched, const ChannelTable& table);

} // namespace catqec
