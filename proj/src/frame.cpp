#include "catqec/frame.hpp"

#include <cassert>
#include <cstring>

namespace catqec {

bool frame_anticommutes(const std::vector<uint8_t>& x, const std::vector<uint8_t>& z,
                        const PauliString& p) {
    int anti = 0;
    for (const auto& [q, op] : p.ops) {
        if (has_x(op)) anti ^= z[q];
        if (has_z(op)) anti ^= x[q];
    }
    return anti;
}

void FrameSimulator::run(uint64_t shot, int noisy_rounds, ShotResult* out) const {
    run_impl(shot, true, nullptr, nullptr, nullptr, noisy_rounds, out);
}

void FrameSimulator::run_forced(const std::vector<ForcedFault>& faults, int noisy_rounds,
                                ShotResult* out) const {
    run_impl(0, false, &faults, nullptr, nullptr, noisy_rounds, out);
}

void FrameSimulator::run_with_initial(const std::vector<uint8_t>& x0,
                                      const std::vector<uint8_t>& z0, int noisy_rounds,
                                      ShotResult* out) const {
    run_impl(0, false, nullptr, &x0, &z0, noisy_rounds, out);
}

void FrameSimulator::run_impl(uint64_t shot, bool sample_noise,
                              const std::vector<ForcedFault>* forced,
                              const std::vector<uint8_t>* x0, const std::vector<uint8_t>* z0,
                              int noisy_rounds, ShotResult* out) const {
    using K = CliffordElement::Kind;
    const Schedule& sched = *sched_;
    const CodeLayout& lay = sched.layout;
    const int nq = lay.n_qubits();
    const int nc = lay.n_checks();
    const int total_rounds = noisy_rounds + 1;

    out->n_rounds = noisy_rounds;
    out->n_checks = nc;
    out->outcomes.assign(total_rounds * nc, 0);
    out->defects.assign(total_rounds * nc, 0);
    out->data_x.assign(nq, 0);
    out->data_z.assign(nq, 0);
    if (x0) std::memcpy(out->data_x.data(), x0->data(), x0->size());
    if (z0) std::memcpy(out->data_z.data(), z0->data(), z0->size());

    uint8_t* x = out->data_x.data();
    uint8_t* z = out->data_z.data();

    for (int r = 0; r < total_rounds; r++) {
        const bool noisy = sample_noise && r < noisy_rounds;
        for (size_t l = 0; l < sched.layers.size(); l++) {
            const Layer& layer = sched.layers[l];
            const ElementNoise* noise_row = noise_->layers[l].data();
            for (size_t e = 0; e < layer.elements.size(); e++) {
                const CliffordElement& el = layer.elements[e];
                uint8_t meas_flip = 0;
                const FaultOutcome* f = nullptr;
                if (noisy && noise_row[e].total > 0.0) {
                    double u = rng_.uniform(shot, r, uint32_t(l), uint32_t(e));
                    f = noise_row[e].sample(u);
                }
                if (forced) {
                    for (const auto& ff : *forced)
                        if (ff.round == r && ff.layer == int(l) && ff.element == int(e))
                            f = &ff.fault;
                }

                switch (el.kind) {
                    case K::CX:
                        x[el.b] ^= x[el.a];
                        z[el.a] ^= z[el.b];
                        break;
                    case K::CZ:
                        z[el.a] ^= x[el.b];
                        z[el.b] ^= x[el.a];
                        break;
                    case K::H:
                        std::swap(x[el.a], z[el.a]);
                        break;
                    case K::PrepX:
                    case K::PrepZ:
                        x[el.a] = z[el.a] = 0;
                        break;
                    case K::MeasX:
                    case K::MeasZ: {
                        uint8_t bit = (el.kind == K::MeasX) ? z[el.a] : x[el.a];
                        if (f) meas_flip = f->flip;
                        // element order in the meas layer matches check order
                        out->outcomes[r * nc + int(e)] = bit ^ meas_flip;
                        break;
                    }
                    case K::Idle:
                        break;
                }
                if (f && el.kind != K::MeasX && el.kind != K::MeasZ) {
                    x[el.a] ^= f->xa;
                    z[el.a] ^= f->za;
                    if (el.b >= 0) {
                        x[el.b] ^= f->xb;
                        z[el.b] ^= f->zb;
                    }
                }
            }
        }
    }

    for (int r = 0; r < total_rounds; r++)
        for (int c = 0; c < nc; c++)
            out->defects[r * nc + c] =
                out->outcomes[r * nc + c] ^ (r > 0 ? out->outcomes[(r - 1) * nc + c] : 0);
}

} // namespace catqec
