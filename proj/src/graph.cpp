#include "catqec/graph.hpp"

#include "catqec/code.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace catqec {

namespace {

struct Defect {
    int r, c;
    bool operator<(const Defect& o) const { return r != o.r ? r < o.r : c < o.c; }
};

// canonical interior key: same round sorted by check, else earlier check first
void canon(Defect a, Defect b, int* c1, int* c2, int* dr) {
    if (a.r > b.r) std::swap(a, b);
    *dr = b.r - a.r;
    if (*dr == 0 && a.c > b.c) std::swap(a.c, b.c);
    *c1 = a.c;
    *c2 = b.c;
}

struct Composite {
    std::vector<Defect> defects;
    double p;
};

struct Builder {
    const Schedule* sched;
    const NoiseModel* noise;
    DetectorGraph* g;
    FrameSimulator sim;
    std::map<std::pair<std::pair<int, int>, int>, int> interior; // ((c1,c2),dr) -> id
    std::vector<Composite> composites;
    ShotResult shot;

    static constexpr int kRounds = 3;
    static constexpr int kFaultRound = 1;

    Builder(const Schedule& s, const NoiseModel& n, DetectorGraph* graph)
        : sched(&s), noise(&n), g(graph), sim(s, n, 0) {}

    std::vector<Defect> run(int layer, int element, const FaultOutcome& fo) {
        ForcedFault ff;
        ff.round = kFaultRound;
        ff.layer = layer;
        ff.element = element;
        ff.fault = fo;
        sim.run_forced({ff}, kRounds, &shot);
        std::vector<Defect> ds;
        for (int r = 0; r <= kRounds; r++)
            for (int c = 0; c < g->n_checks; c++)
                if (shot.defect(r, c)) ds.push_back({r, c});
        for (const Defect& d : ds)
            if (d.r != kFaultRound && d.r != kFaultRound + 1)
                throw std::logic_error("defect outside the fault window");
        return ds;
    }

    // a mechanism can become an edge only if its defects sit in one decoding
    // family; anything else has to break apart first
    bool bookable(const std::vector<Defect>& ds) const {
        if (ds.size() > 2) return false;
        if (ds.size() == 2 && sched->layout.checks[ds[0].c].family !=
                                  sched->layout.checks[ds[1].c].family)
            return false;
        return true;
    }

    void book(const std::vector<Defect>& ds, double p) {
        if (ds.empty()) {
            // undetectable: fine as long as the stored logical is untouched
            // (bias-axis errors on the repetition code land here)
            if (frame_anticommutes(shot.data_x, shot.data_z, sched->layout.logical_x))
                throw std::logic_error("silent fault flips the stored logical");
            return;
        }
        if (ds.size() == 1) {
            int c = ds[0].c;
            int id = g->boundary_of[c];
            if (id < 0) {
                EdgeTemplate t;
                t.c1 = c;
                id = int(g->boundary.size());
                g->boundary_of[c] = id;
                g->boundary.push_back(std::move(t));
            }
            merge(&g->boundary[id], p);
            return;
        }
        int c1, c2, dr;
        canon(ds[0], ds[1], &c1, &c2, &dr);
        if (dr > 1) throw std::logic_error("defect pair spans two rounds");
        auto key = std::make_pair(std::make_pair(c1, c2), dr);
        auto it = interior.find(key);
        if (it == interior.end()) {
            EdgeTemplate t;
            t.c1 = c1;
            t.c2 = c2;
            t.dr = dr;
            interior[key] = int(g->edges.size());
            g->edges.push_back(std::move(t));
            it = interior.find(key);
        }
        merge(&g->edges[it->second], p);
    }

    void merge(EdgeTemplate* t, double p) {
        t->p = t->p + p - t->p * p;
        if (p > t->best_mech_p) {
            t->best_mech_p = p;
            // frame vectors cover ancillas too; templates only need data
            t->corr_x.assign(shot.data_x.begin(), shot.data_x.begin() + g->n_data);
            t->corr_z.assign(shot.data_z.begin(), shot.data_z.begin() + g->n_data);
        }
    }

    // try the fault as one mechanism; above 2 defects, split per qubit, and a
    // single-qubit Pauli that still overshoots splits into the two
    // complementary Paulis whose frames xor back to it
    void process(int layer, int element, const FaultOutcome& fo, double p) {
        auto ds = run(layer, element, fo);
        if (bookable(ds)) {
            book(ds, p);
            return;
        }
        int units = (fo.flip ? 1 : 0) + (fo.xa || fo.za ? 1 : 0) + (fo.xb || fo.zb ? 1 : 0);
        if (units > 1) {
            if (fo.flip) {
                FaultOutcome u;
                u.flip = 1;
                process_unit(layer, element, u, p);
            }
            if (fo.xa || fo.za) {
                FaultOutcome u;
                u.xa = fo.xa;
                u.za = fo.za;
                process_unit(layer, element, u, p);
            }
            if (fo.xb || fo.zb) {
                FaultOutcome u;
                u.xb = fo.xb;
                u.zb = fo.zb;
                process_unit(layer, element, u, p);
            }
        } else {
            split_unit(layer, element, fo, p, ds);
        }
    }

    void process_unit(int layer, int element, const FaultOutcome& u, double p) {
        auto ds = run(layer, element, u);
        if (bookable(ds)) book(ds, p);
        else split_unit(layer, element, u, p, ds);
    }

    void split_unit(int layer, int element, const FaultOutcome& u, double p,
                    const std::vector<Defect>& whole_ds) {
        if (u.flip) {
            // a readout flip cannot split further
            composites.push_back({whole_ds, p});
            return;
        }
        bool side_a = u.xa || u.za;
        uint8_t x = side_a ? u.xa : u.xb;
        uint8_t z = side_a ? u.za : u.zb;
        // complementary pair: Y -> X,Z; Z -> X,Y; X -> Y,Z
        std::pair<uint8_t, uint8_t> halves[2];
        if (x && z) {
            halves[0] = {1, 0};
            halves[1] = {0, 1};
        } else if (z) {
            halves[0] = {1, 0};
            halves[1] = {1, 1};
        } else {
            halves[0] = {1, 1};
            halves[1] = {0, 1};
        }
        std::vector<Defect> d0, d1;
        FaultOutcome h0, h1;
        (side_a ? h0.xa : h0.xb) = halves[0].first;
        (side_a ? h0.za : h0.zb) = halves[0].second;
        (side_a ? h1.xa : h1.xb) = halves[1].first;
        (side_a ? h1.za : h1.zb) = halves[1].second;
        d0 = run(layer, element, h0);
        if (bookable(d0)) {
            book(d0, p);
            d1 = run(layer, element, h1);
            if (bookable(d1)) book(d1, p);
            else composites.push_back({d1, p});
            return;
        }
        d1 = run(layer, element, h1);
        if (bookable(d1)) {
            book(d1, p);
            composites.push_back({d0, p});
            return;
        }
        // neither split helps; keep the whole mechanism for the cover pass
        composites.push_back({whole_ds, p});
    }

    void resolve_composites() {
        for (const Composite& comp : composites) {
            std::vector<Defect> left = comp.defects;
            bool progress = true;
            while (left.size() >= 2 && progress) {
                progress = false;
                for (size_t i = 0; i < left.size() && !progress; i++)
                    for (size_t j = i + 1; j < left.size() && !progress; j++) {
                        int c1, c2, dr;
                        canon(left[i], left[j], &c1, &c2, &dr);
                        if (dr > 1) continue;
                        auto it = interior.find({{c1, c2}, dr});
                        if (it == interior.end()) continue;
                        EdgeTemplate& t = g->edges[it->second];
                        t.p = t.p + comp.p - t.p * comp.p;
                        left.erase(left.begin() + j);
                        left.erase(left.begin() + i);
                        progress = true;
                    }
            }
            for (const Defect& d : left) {
                if (g->boundary_of[d.c] < 0)
                    throw std::logic_error("composite fault defies template decomposition");
                EdgeTemplate& t = g->boundary[g->boundary_of[d.c]];
                t.p = t.p + comp.p - t.p * comp.p;
            }
        }
    }
};

} // namespace

int64_t DetectorGraph::weight_of(double p) const {
    double q = std::clamp(p, 1e-15, 0.499999);
    return int64_t(std::llround(double(scale) * std::log((1.0 - q) / q)));
}

DetectorGraph build_detector_graph(const Schedule& sched, const NoiseModel& noise) {
    DetectorGraph g;
    g.n_checks = sched.layout.n_checks();
    g.n_data = sched.layout.n_data;
    g.boundary_of.assign(g.n_checks, -1);

    Builder b(sched, noise, &g);
    for (int l = 0; l < int(sched.layers.size()); l++) {
        for (int e = 0; e < int(noise.layers[l].size()); e++) {
            const ElementNoise& en = noise.layers[l][e];
            if (en.total <= 0) continue;
            for (size_t k = 0; k < en.outs.size(); k++) {
                double p = en.cum[k] - (k ? en.cum[k - 1] : 0.0);
                if (p > 0) b.process(l, int(e), en.outs[k], p);
            }
        }
    }
    b.resolve_composites();

    for (auto& t : g.edges) t.w = g.weight_of(t.p);
    for (auto& t : g.boundary) t.w = g.weight_of(t.p);

    g.adj.assign(g.n_checks, {});
    for (int i = 0; i < int(g.edges.size()); i++) {
        g.adj[g.edges[i].c1].push_back(i);
        g.adj[g.edges[i].c2].push_back(i);
    }
    return g;
}

} // namespace catqec
