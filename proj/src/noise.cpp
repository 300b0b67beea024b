#include "catqec/noise.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace catqec {

void ElementNoise::add(const FaultOutcome& f, double p) {
    if (p <= 0) return;
    total += p;
    cum.push_back(total);
    outs.push_back(f);
}

const FaultOutcome* ElementNoise::sample(double u) const {
    if (u >= total) return nullptr;
    size_t i = std::upper_bound(cum.begin(), cum.end(), u) - cum.begin();
    return &outs[i];
}

double GenericNoise::p_z() const {
    double denom = cx_kind == CxKind::BiasPreserving ? 2.0 + 12.0 / zeta : 2.0 + 10.0 / zeta;
    return p_cx / denom;
}
double GenericNoise::cz_infidelity() const { return p_z() * (2.0 + 13.0 / zeta); }
double GenericNoise::idle_infidelity() const { return p_z() * (1.0 + 2.0 / zeta); }
double GenericNoise::flip_prob() const { return p_z() * (1.0 + 1.0 / zeta); }

namespace {

constexpr int pidx(Pauli a, Pauli b) { return 4 * int(a) + int(b); }

} // namespace

std::vector<double> GenericNoise::cx_probs() const {
    const double pz = p_z();
    std::vector<double> p(16, pz / zeta);
    p[0] = 0.0;
    p[pidx(Pauli::Z, Pauli::I)] = pz;
    if (cx_kind == CxKind::BiasPreserving) {
        p[pidx(Pauli::I, Pauli::Z)] = pz / 2;
        p[pidx(Pauli::Z, Pauli::Z)] = pz / 2;
    } else {
        p[pidx(Pauli::I, Pauli::Z)] = 0.375 * pz;
        p[pidx(Pauli::Z, Pauli::Z)] = 0.375 * pz;
        p[pidx(Pauli::I, Pauli::Y)] = 0.125 * pz;
        p[pidx(Pauli::Z, Pauli::Y)] = 0.125 * pz;
    }
    return p;
}

std::vector<double> GenericNoise::cz_probs() const {
    const double pz = p_z();
    std::vector<double> p(16, pz / zeta);
    p[0] = 0.0;
    p[pidx(Pauli::Z, Pauli::I)] = pz;
    p[pidx(Pauli::I, Pauli::Z)] = pz;
    return p;
}

std::vector<double> GenericNoise::idle_probs() const {
    const double pz = p_z();
    std::vector<double> p(4);
    p[int(Pauli::X)] = pz / zeta;
    p[int(Pauli::Z)] = pz;
    p[int(Pauli::Y)] = pz / zeta;
    return p;
}

namespace {

ElementNoise two_qubit_channel(const std::vector<double>& probs) {
    ElementNoise en;
    for (int a = 0; a < 4; a++) {
        for (int b = 0; b < 4; b++) {
            if (a == 0 && b == 0) continue;
            FaultOutcome f;
            f.xa = has_x(Pauli(a));
            f.za = has_z(Pauli(a));
            f.xb = has_x(Pauli(b));
            f.zb = has_z(Pauli(b));
            en.add(f, probs[4 * a + b]);
        }
    }
    return en;
}

ElementNoise one_qubit_channel(const std::vector<double>& probs) {
    ElementNoise en;
    for (int a = 1; a < 4; a++) {
        FaultOutcome f;
        f.xa = has_x(Pauli(a));
        f.za = has_z(Pauli(a));
        en.add(f, probs[a]);
    }
    return en;
}

ElementNoise flip_channel(double p) {
    ElementNoise en;
    FaultOutcome f;
    f.flip = 1;
    en.add(f, p);
    return en;
}

// prep noise as a Pauli channel after the reset; flips of the prepared basis
// are dropped since they act trivially on the fresh eigenstate
ElementNoise prep_channel(const std::vector<double>& probs, bool prep_z) {
    ElementNoise en;
    for (int a = 1; a < 4; a++) {
        Pauli p = Pauli(a);
        if (!prep_z && p == Pauli::X) continue;
        if (prep_z && p == Pauli::Z) continue;
        FaultOutcome f;
        f.xa = has_x(p);
        f.za = has_z(p);
        en.add(f, probs[a]);
    }
    return en;
}

} // namespace

NoiseModel build_generic_noise(const Schedule& sched, const GenericNoise& params) {
    using K = CliffordElement::Kind;
    NoiseModel model;
    auto cx = two_qubit_channel(params.cx_probs());
    auto cz = two_qubit_channel(params.cz_probs());
    auto idle = one_qubit_channel(params.idle_probs());
    std::vector<double> prep_probs(4, 0.0);
    prep_probs[int(Pauli::Z)] = params.flip_prob(); // Z flips |+>, X dropped for |0>
    prep_probs[int(Pauli::X)] = params.flip_prob();
    auto flip = flip_channel(params.flip_prob());

    for (const auto& layer : sched.layers) {
        std::vector<ElementNoise> row;
        row.reserve(layer.elements.size());
        for (const auto& el : layer.elements) {
            switch (el.kind) {
                case K::CX: row.push_back(cx); break;
                case K::CZ: row.push_back(cz); break;
                case K::Idle: row.push_back(idle); break;
                case K::PrepX: row.push_back(prep_channel(prep_probs, false)); break;
                case K::PrepZ: row.push_back(prep_channel(prep_probs, true)); break;
                case K::MeasX:
                case K::MeasZ: row.push_back(flip); break;
                default: row.push_back(ElementNoise{}); break;
            }
        }
        model.layers.push_back(std::move(row));
    }
    return model;
}

NoiseModel build_table_noise(const Schedule& sched, const ChannelTable& table) {
    using K = CliffordElement::Kind;
    NoiseModel model;
    auto cx = two_qubit_channel(table.cx);
    auto cz = two_qubit_channel(table.cz);
    auto flip = flip_channel(table.meas_flip);

    for (const auto& layer : sched.layers) {
        const std::vector<double>* idle_probs = nullptr;
        switch (layer.kind) {
            case Layer::Kind::Prep: idle_probs = &table.idle_prep; break;
            case Layer::Kind::Meas: idle_probs = &table.idle_meas; break;
            case Layer::Kind::GateCX: idle_probs = &table.idle_cx; break;
            case Layer::Kind::GateCZ: idle_probs = &table.idle_cz; break;
        }
        ElementNoise idle = one_qubit_channel(*idle_probs);

        std::vector<ElementNoise> row;
        row.reserve(layer.elements.size());
        for (const auto& el : layer.elements) {
            switch (el.kind) {
                case K::CX: row.push_back(cx); break;
                case K::CZ: row.push_back(cz); break;
                case K::Idle: row.push_back(idle); break;
                case K::PrepX: row.push_back(prep_channel(table.prep, false)); break;
                case K::PrepZ: row.push_back(prep_channel(table.prep, true)); break;
                case K::MeasX:
                case K::MeasZ: row.push_back(flip); break;
                default: row.push_back(ElementNoise{}); break;
            }
        }
        model.layers.push_back(std::move(row));
    }
    return model;
}

} // namespace catqec
