#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace catqec {

// Bit encoding: bit 0 = X part, bit 1 = Z part, so Y = XZ up to phase.
enum class Pauli : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline bool has_x(Pauli p) { return uint8_t(p) & 1u; }
inline bool has_z(Pauli p) { return uint8_t(p) & 2u; }
inline Pauli pauli_from_bits(bool x, bool z) {
    return Pauli(uint8_t(x) | (uint8_t(z) << 1));
}
char pauli_letter(Pauli p);
Pauli pauli_from_letter(char c);

// i-exponent k in sigma_a * sigma_b = i^k sigma_{a xor b}
int pauli_product_phase(Pauli a, Pauli b);

// Sparse multi-qubit Pauli operator with an overall phase i^phase.
// Identity factors are never stored.
struct PauliString {
    std::map<int, Pauli> ops;
    int phase = 0; // mod 4

    PauliString() = default;
    PauliString(int qubit, Pauli p) {
        if (p != Pauli::I) ops[qubit] = p;
    }

    Pauli at(int qubit) const {
        auto it = ops.find(qubit);
        return it == ops.end() ? Pauli::I : it->second;
    }
    void set(int qubit, Pauli p) {
        if (p == Pauli::I) ops.erase(qubit);
        else ops[qubit] = p;
    }
    int weight() const { return int(ops.size()); }
    bool is_identity() const { return ops.empty(); }

    bool operator==(const PauliString& o) const {
        return phase == o.phase && ops == o.ops;
    }

    // Canonical text form "X0.Z3.Z4.X7" (qubits ascending, phase omitted);
    // the identity renders as "I".
    std::string str() const;
    static PauliString parse(const std::string& text);
};

PauliString compose(const PauliString& a, const PauliString& b);
bool commutes(const PauliString& a, const PauliString& b);

// One element of a stabilizer-measurement schedule. `a` is the
// control/ancilla for two-qubit gates, `b` the target/data qubit.
struct CliffordElement {
    enum class Kind : uint8_t { CX, CZ, H, PrepX, PrepZ, MeasX, MeasZ, Idle };
    Kind kind;
    int a = -1;
    int b = -1;
};

// Heisenberg propagation p -> g p g^dagger for unitary elements
// (CX, CZ, H); other kinds leave p untouched.
PauliString propagate(const PauliString& p, const CliffordElement& g);

} // namespace catqec
