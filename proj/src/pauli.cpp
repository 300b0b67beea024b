#include "catqec/pauli.hpp"

#include <array>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace catqec {

char pauli_letter(Pauli p) {
    switch (p) {
        case Pauli::I: return 'I';
        case Pauli::X: return 'X';
        case Pauli::Z: return 'Z';
        case Pauli::Y: return 'Y';
    }
    return '?';
}

Pauli pauli_from_letter(char c) {
    switch (std::toupper(c)) {
        case 'I': return Pauli::I;
        case 'X': return Pauli::X;
        case 'Z': return Pauli::Z;
        case 'Y': return Pauli::Y;
    }
    throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
}

int pauli_product_phase(Pauli a, Pauli b) {
    // k in sigma_a sigma_b = i^k sigma_{a^b}. Rows a, cols b in I,X,Z,Y order.
    static constexpr std::array<std::array<int, 4>, 4> k = {{
        {0, 0, 0, 0},  // I*
        {0, 0, 3, 1},  // X*: XZ=-iY, XY=iZ
        {0, 1, 0, 3},  // Z*: ZX=+iY, ZY=-iX
        {0, 3, 1, 0},  // Y*: YX=-iZ, YZ=+iX
    }};
    return k[uint8_t(a)][uint8_t(b)];
}

std::string PauliString::str() const {
    if (ops.empty()) return "I";
    std::ostringstream out;
    bool first = true;
    for (const auto& [q, p] : ops) {
        if (!first) out << '.';
        out << pauli_letter(p) << q;
        first = false;
    }
    return out.str();
}

PauliString PauliString::parse(const std::string& text) {
    PauliString result;
    if (text.empty() || text == "I") return result;
    size_t i = 0;
    while (i < text.size()) {
        Pauli p = pauli_from_letter(text[i++]);
        size_t j = i;
        while (j < text.size() && std::isdigit(text[j])) j++;
        if (j == i) throw std::invalid_argument("missing qubit index in " + text);
        int q = std::atoi(text.substr(i, j - i).c_str());
        if (result.ops.count(q))
            throw std::invalid_argument("repeated qubit in " + text);
        result.set(q, p);
        i = j;
        if (i < text.size()) {
            if (text[i] != '.') throw std::invalid_argument("bad separator in " + text);
            i++;
        }
    }
    return result;
}

PauliString compose(const PauliString& a, const PauliString& b) {
    PauliString out;
    out.phase = (a.phase + b.phase) % 4;
    out.ops = a.ops;
    for (const auto& [q, pb] : b.ops) {
        Pauli pa = out.at(q);
        out.phase = (out.phase + pauli_product_phase(pa, pb)) % 4;
        out.set(q, Pauli(uint8_t(pa) ^ uint8_t(pb)));
    }
    return out;
}

bool commutes(const PauliString& a, const PauliString& b) {
    int anti = 0;
    const auto& small = a.ops.size() <= b.ops.size() ? a : b;
    const auto& large = a.ops.size() <= b.ops.size() ? b : a;
    for (const auto& [q, p] : small.ops) {
        Pauli o = large.at(q);
        bool x1 = has_x(p), z1 = has_z(p);
        bool x2 = has_x(o), z2 = has_z(o);
        anti ^= int((x1 && z2) != (z1 && x2));
    }
    return anti == 0;
}

namespace {

// Image of a single X or Z generator under conjugation by the gate.
// All three gates map generators to Pauli products without extra phase;
// phases of composite operators come out of recomposition.
PauliString generator_image(const CliffordElement& g, int qubit, bool is_x) {
    using K = CliffordElement::Kind;
    switch (g.kind) {
        case K::CX:
            if (qubit == g.a && is_x) { // X_c -> X_c X_t
                PauliString r(g.a, Pauli::X);
                r.set(g.b, Pauli::X);
                return r;
            }
            if (qubit == g.b && !is_x) { // Z_t -> Z_c Z_t
                PauliString r(g.a, Pauli::Z);
                r.set(g.b, Pauli::Z);
                return r;
            }
            break;
        case K::CZ:
            if (qubit == g.a && is_x) { // X_a -> X_a Z_b
                PauliString r(g.a, Pauli::X);
                r.set(g.b, Pauli::Z);
                return r;
            }
            if (qubit == g.b && is_x) { // X_b -> Z_a X_b
                PauliString r(g.a, Pauli::Z);
                r.set(g.b, Pauli::X);
                return r;
            }
            break;
        case K::H:
            if (qubit == g.a) return PauliString(qubit, is_x ? Pauli::Z : Pauli::X);
            break;
        default:
            break;
    }
    return PauliString(qubit, is_x ? Pauli::X : Pauli::Z);
}

} // namespace

PauliString propagate(const PauliString& p, const CliffordElement& g) {
    using K = CliffordElement::Kind;
    if (g.kind != K::CX && g.kind != K::CZ && g.kind != K::H) return p;

    // Write p = i^phase * prod_q [ i^{y?1:0} X_q^{x} Z_q^{z} ] and push each
    // generator through the gate, multiplying the images back together.
    PauliString out;
    out.phase = p.phase;
    for (const auto& [q, pq] : p.ops) {
        if (pq == Pauli::Y) out.phase = (out.phase + 1) % 4;
        if (has_x(pq)) out = compose(out, generator_image(g, q, true));
        if (has_z(pq)) out = compose(out, generator_image(g, q, false));
    }
    return out;
}

} // namespace catqec
