#pragma once

#include <vector>

#include "catqec/code.hpp"
#include "catqec/pauli.hpp"

namespace catqec {

// One parallel layer of a syndrome-extraction round. Every qubit appears in
// exactly one element per layer (gates first, explicit idles for the rest),
// so (layer, element) indices are stable keys for noise sampling.
struct Layer {
    enum class Kind : uint8_t { Prep, GateCX, GateCZ, Meas };
    Kind kind;
    std::vector<CliffordElement> elements;
};

struct Schedule {
    CodeLayout layout;
    std::vector<Layer> layers;      // one round: prep, entangling layers, meas
    std::vector<int> meas_element;  // check -> element index within the meas layer

    int n_qubits() const { return layout.n_qubits(); }
    int count_elements(CliffordElement::Kind k) const;
};

// Expands a code layout into its round schedule. Surface codes get one
// entangling layer per slot; tailored-code slots split into a CZ sublayer
// (Y faces) followed by a CX sublayer.
Schedule build_schedule(const CodeLayout& layout);

// Measured operator of each check, conjugated back to the start of the
// round: propagates the ancilla readout Pauli backward through the
// entangling layers. Used to verify that a schedule measures sign * S_c.
PauliString backpropagated_readout(const Schedule& sched, int check);

} // namespace catqec
