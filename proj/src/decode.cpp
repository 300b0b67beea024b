#include "catqec/decode.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace catqec {

namespace {

constexpr int64_t DINF = std::numeric_limits<int64_t>::max() / 4;

// expand the translation-invariant templates around one space-time node
template <class F>
void for_neighbors(const DetectorGraph& g, int node, int n_rounds, F&& fn) {
    int r = node / g.n_checks;
    int c = node % g.n_checks;
    for (int id : g.adj[c]) {
        const EdgeTemplate& t = g.edges[id];
        if (t.dr == 0) {
            int o = (c == t.c1) ? t.c2 : t.c1;
            fn(r * g.n_checks + o, t);
        } else if (t.c1 == t.c2) {
            if (r + 1 <= n_rounds) fn((r + 1) * g.n_checks + c, t);
            if (r - 1 >= 0) fn((r - 1) * g.n_checks + c, t);
        } else if (c == t.c1) {
            if (r + 1 <= n_rounds) fn((r + 1) * g.n_checks + t.c2, t);
        } else {
            if (r - 1 >= 0) fn((r - 1) * g.n_checks + t.c1, t);
        }
    }
}

struct Search {
    const DetectorGraph& g;
    int n_rounds;
    int n_nodes;
    // scratch reused across runs to avoid reallocation
    std::vector<int64_t> dist;
    std::vector<int> parent;      // predecessor node
    std::vector<int> parent_edge; // interior template id used to reach node
    std::vector<int> touched;

    std::vector<uint8_t> done;

    Search(const DetectorGraph& gr, int rounds)
        : g(gr), n_rounds(rounds), n_nodes((rounds + 1) * gr.n_checks),
          dist(n_nodes, DINF), parent(n_nodes, -1), parent_edge(n_nodes, -1),
          done(n_nodes, 0) {}

    void reset() {
        for (int v : touched) {
            dist[v] = DINF;
            parent[v] = -1;
            parent_edge[v] = -1;
            done[v] = 0;
        }
        touched.clear();
    }

    // Dijkstra from src. stop_defects > 0 ends the search once that many
    // defect nodes are settled and a boundary attachment is known; target >= 0
    // ends it when the target settles. Returns settled defect nodes.
    struct Result {
        std::vector<std::pair<int, int64_t>> defects; // node, dist
        int64_t boundary_dist = DINF;
        int boundary_node = -1;
    };

    Result run(int src, const std::vector<uint8_t>& is_defect, int stop_defects, int target) {
        reset();
        Result res;
        using Item = std::pair<int64_t, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> q;
        dist[src] = 0;
        touched.push_back(src);
        q.push({0, src});
        while (!q.empty()) {
            auto [d, v] = q.top();
            q.pop();
            if (done[v]) continue;
            done[v] = 1;
            int c = v % g.n_checks;
            if (g.boundary_of[c] >= 0) {
                int64_t bd = d + g.boundary[g.boundary_of[c]].w;
                if (bd < res.boundary_dist) {
                    res.boundary_dist = bd;
                    res.boundary_node = v;
                }
            }
            if (v != src && is_defect[v]) res.defects.push_back({v, d});
            if (v == target) break;
            // stop once enough defects are settled and no unexplored node can
            // still improve the boundary attachment (queue min exceeds it)
            if (stop_defects > 0 && int(res.defects.size()) >= stop_defects &&
                res.boundary_node >= 0 &&
                (q.empty() || q.top().first >= res.boundary_dist))
                break;
            for_neighbors(g, v, n_rounds, [&](int u, const EdgeTemplate& t) {
                int64_t nd = d + t.w;
                if (nd < dist[u]) {
                    if (dist[u] == DINF) touched.push_back(u);
                    dist[u] = nd;
                    parent[u] = v;
                    parent_edge[u] = int(&t - g.edges.data());
                    q.push({nd, u});
                }
            });
        }
        return res;
    }
};

} // namespace

DecodeResult Decoder::decode(const ShotResult& shot) const {
    DecodeResult out;
    const int nr = shot.n_rounds;
    const int nc = g_->n_checks;

    std::vector<int> defect_nodes;
    std::vector<uint8_t> is_defect((nr + 1) * nc, 0);
    for (int r = 0; r <= nr; r++)
        for (int c = 0; c < nc; c++)
            if (shot.defect(r, c)) {
                defect_nodes.push_back(r * nc + c);
                is_defect[r * nc + c] = 1;
            }
    out.n_defects = int(defect_nodes.size());

    std::vector<uint8_t> cx = shot.data_x, cz = shot.data_z;
    if (!defect_nodes.empty()) {
        Search search(*g_, nr);
        const int nd = int(defect_nodes.size());
        std::vector<int> node_index((nr + 1) * nc, -1);
        for (int i = 0; i < nd; i++) node_index[defect_nodes[i]] = i;

        int stop = prune_k_ > 0 ? std::min(prune_k_, nd - 1) : 0;
        std::vector<MatchEdge> cand;
        std::vector<int64_t> bw(nd, -1);
        std::vector<int> bnode(nd, -1);
        for (int i = 0; i < nd; i++) {
            auto res = search.run(defect_nodes[i], is_defect, stop, -1);
            for (auto [v, d] : res.defects) {
                int j = node_index[v];
                if (j > i) cand.push_back({i, j, d});
            }
            if (res.boundary_node >= 0) {
                bw[i] = res.boundary_dist;
                bnode[i] = res.boundary_node;
            }
        }

        auto matching = min_weight_boundary_matching(nd, cand, bw);
        out.matched_weight = matching.weight;

        auto xor_path_to = [&](int i, int target_node) {
            // retrace: rerun a targeted search and walk parents
            search.run(defect_nodes[i], is_defect, 0, target_node);
            int v = target_node;
            if (search.dist[v] >= DINF) throw std::logic_error("matched pair unreachable");
            while (v != defect_nodes[i]) {
                const EdgeTemplate& t = g_->edges[search.parent_edge[v]];
                for (int q = 0; q < int(t.corr_x.size()); q++) {
                    cx[q] ^= t.corr_x[q];
                    cz[q] ^= t.corr_z[q];
                }
                v = search.parent[v];
            }
        };

        for (int i = 0; i < nd; i++) {
            int j = matching.mate[i];
            if (j > i) {
                xor_path_to(i, defect_nodes[j]);
            } else if (j < 0) {
                if (bnode[i] < 0) throw std::logic_error("boundary match without boundary");
                xor_path_to(i, bnode[i]);
                const EdgeTemplate& t = g_->boundary[g_->boundary_of[bnode[i] % nc]];
                for (int q = 0; q < int(t.corr_x.size()); q++) {
                    cx[q] ^= t.corr_x[q];
                    cz[q] ^= t.corr_z[q];
                }
            }
        }
    }

    out.fail_x = frame_anticommutes(cx, cz, lay_->logical_x);
    out.fail_z = frame_anticommutes(cx, cz, lay_->logical_z);
    return out;
}

} // namespace catqec
