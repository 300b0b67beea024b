#include "catqec/schedule.hpp"

#include <stdexcept>

namespace catqec {

namespace {

using Kind = CliffordElement::Kind;

void pad_with_idles(Layer& layer, int n_qubits) {
    std::vector<char> busy(n_qubits, 0);
    for (const auto& el : layer.elements) {
        if (el.a >= 0) {
            if (busy[el.a]) throw std::logic_error("qubit used twice in layer");
            busy[el.a] = 1;
        }
        if (el.b >= 0) {
            if (busy[el.b]) throw std::logic_error("qubit used twice in layer");
            busy[el.b] = 1;
        }
    }
    for (int q = 0; q < n_qubits; q++)
        if (!busy[q]) layer.elements.push_back({Kind::Idle, q, -1});
}

enum class Sub { Single, CzHalf, CxHalf };

// gate implementing the coupling of `slot`, if it belongs in this (sub)layer
bool slot_gate(const CodeLayout& lay, int check, int slot, Sub sub, CliffordElement* out) {
    const CheckInfo& ck = lay.checks[check];
    int data = ck.slot_data[slot];
    if (data < 0) return false;
    int anc = lay.ancilla(check);
    switch (ck.slot_basis[slot]) {
        case Pauli::X:
            if (sub == Sub::CzHalf) return false;
            *out = {Kind::CX, anc, data};
            return true;
        case Pauli::Z:
            if (ck.prep_z) { // |0> ancilla collects parity via CX from data
                if (sub == Sub::CzHalf) return false;
                *out = {Kind::CX, data, anc};
            } else {
                if (sub == Sub::CxHalf) return false;
                *out = {Kind::CZ, anc, data};
            }
            return true;
        case Pauli::Y: // controlled-(XZ): CZ in the first half, CX in the second
            if (sub == Sub::Single) return false;
            *out = {sub == Sub::CzHalf ? Kind::CZ : Kind::CX, anc, data};
            return true;
        default:
            return false;
    }
}

} // namespace

Schedule build_schedule(const CodeLayout& layout) {
    Schedule sched;
    sched.layout = layout;
    const int nq = layout.n_qubits();

    Layer prep{Layer::Kind::Prep, {}};
    for (int c = 0; c < layout.n_checks(); c++)
        prep.elements.push_back({layout.checks[c].prep_z ? Kind::PrepZ : Kind::PrepX,
                                 layout.ancilla(c), -1});
    pad_with_idles(prep, nq);
    sched.layers.push_back(std::move(prep));

    bool tailored = false;
    for (const auto& ck : layout.checks)
        if (ck.type == Pauli::Y) tailored = true;

    std::vector<Sub> subs = tailored ? std::vector<Sub>{Sub::CzHalf, Sub::CxHalf}
                                     : std::vector<Sub>{Sub::Single};
    for (int slot = 0; slot < layout.n_slots; slot++) {
        for (Sub sub : subs) {
            Layer layer{Layer::Kind::GateCX, {}};
            for (int c = 0; c < layout.n_checks(); c++) {
                CliffordElement el;
                if (slot_gate(layout, c, slot, sub, &el)) layer.elements.push_back(el);
            }
            bool any_cz = false, any_cx = false;
            for (auto& el : layer.elements) {
                any_cz |= el.kind == Kind::CZ;
                any_cx |= el.kind == Kind::CX;
            }
            if (any_cz && any_cx) throw std::logic_error("mixed gate kinds in layer");
            layer.kind = any_cz ? Layer::Kind::GateCZ : Layer::Kind::GateCX;
            pad_with_idles(layer, nq);
            sched.layers.push_back(std::move(layer));
        }
    }

    Layer meas{Layer::Kind::Meas, {}};
    sched.meas_element.resize(layout.n_checks());
    for (int c = 0; c < layout.n_checks(); c++) {
        sched.meas_element[c] = int(meas.elements.size());
        meas.elements.push_back({layout.checks[c].prep_z ? Kind::MeasZ : Kind::MeasX,
                                 layout.ancilla(c), -1});
    }
    pad_with_idles(meas, nq);
    sched.layers.push_back(std::move(meas));
    return sched;
}

int Schedule::count_elements(CliffordElement::Kind k) const {
    int n = 0;
    for (const auto& layer : layers)
        for (const auto& el : layer.elements)
            if (el.kind == k) n++;
    return n;
}

PauliString backpropagated_readout(const Schedule& sched, int check) {
    const auto& ck = sched.layout.checks[check];
    PauliString p(sched.layout.ancilla(check), ck.prep_z ? Pauli::Z : Pauli::X);
    for (auto it = sched.layers.rbegin(); it != sched.layers.rend(); ++it) {
        if (it->kind != Layer::Kind::GateCX && it->kind != Layer::Kind::GateCZ) continue;
        for (const auto& el : it->elements) p = propagate(p, el);
    }
    return p;
}

} // namespace catqec
