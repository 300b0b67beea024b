#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "catqec/pauli.hpp"

namespace catqec {

// One stabilizer check and how its syndrome-extraction circuit touches the
// data qubits. slot_data[k] is the data qubit coupled in schedule slot k
// (-1 if the check skips that slot at a boundary), slot_basis[k] the Pauli
// the coupling measures on that qubit.
struct CheckInfo {
    PauliString op;                  // the stabilizer, over data qubit ids
    std::array<int, 4> slot_data{-1, -1, -1, -1};
    std::array<Pauli, 4> slot_basis{Pauli::I, Pauli::I, Pauli::I, Pauli::I};
    Pauli type = Pauli::I;           // X/Z/Y for CSS-family codes, I for mixed
    int sign = +1;                   // expected noiseless outcome sign
    int family = 0;                  // independent decoding family (CSS splits in two)
    bool prep_z = false;             // ancilla prepared/measured in Z basis
    std::pair<int, int> coord{0, 0};
};

struct CodeLayout {
    std::string name;
    int dx = 0, dz = 0;              // X- and Z-type logical distances
    int n_data = 0;
    int n_slots = 4;                 // entangling slots per round
    std::vector<CheckInfo> checks;
    PauliString logical_x, logical_z;
    std::vector<std::pair<int, int>> data_coord;
    std::map<std::pair<int, int>, int> data_index;

    int n_checks() const { return int(checks.size()); }
    int n_qubits() const { return n_data + n_checks(); } // data first, then ancillas
    int ancilla(int check) const { return n_data + check; }
};

// Square-lattice XZZX code with open boundaries: data on even-parity grid
// points of a (2*dx-1) x (2*dz-1) grid, checks on odd-parity points coupling
// X to the north/south neighbours and Z to east/west. Z-type chains run
// vertically, so dz is the column height. Used for threshold sweeps with
// dz = 3*dx under biased noise.
CodeLayout make_xzzx(int dx, int dz);

// Rotated d x d XZZX code (d^2 data qubits); logicals run along the two
// diagonals. The d=3 instance is the nine-data-qubit code used in the exact
// density-matrix comparisons.
CodeLayout make_xzzx_rotated(int d);

// Rotated CSS surface code, rectangular (dz rows, dx columns). Z-faces on the
// even checkerboard (ancilla in |0>, CX from data), X-faces odd (ancilla in
// |+>, CX to data).
CodeLayout make_css(int dx, int dz);

// Tailored surface code: CSS layout with the Z-faces replaced by Y-faces.
// A Y coupling costs CZ followed by CX, so each slot splits into two
// entangling sublayers and the CX count doubles relative to XZZX.
CodeLayout make_tsc(int d);

// Nine-qubit phase-flip repetition code: XX checks between neighbours,
// logical Z = Z on all nine qubits, logical X = X on qubit 0.
CodeLayout make_repetition9();

// name in {xzzx, xzzx-rotated, css, tsc, repetition9}; dz ignored where the
// layout is square or fixed.
CodeLayout make_code(const std::string& name, int dx, int dz);

} // namespace catqec
