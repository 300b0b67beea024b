#include "catqec/matching.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

// Blossom algorithm for minimum-weight perfect matching.
//
// All alternating trees grow simultaneously and share one global dual
// increment, tracked as a virtual time `now`: instead of updating duals tree
// by tree, each top-level node records when its label last changed and the
// actual dual of a vertex is y[v] plus label * (now - t_label). Tight-edge
// events (grow, augment/shrink) and blossom-expansion events live in lazy
// priority queues keyed by the time at which they become tight, and are
// revalidated when popped. Augmenting dissolves only the two trees involved;
// everything else keeps evolving, which is what makes dense defect clouds
// cheap to match.
//
// Weights are scaled by 4 internally so that duals and event times stay
// integral (optimal duals of the matching LP are half-integral). Every solve
// finishes by checking the complementary-slackness certificate.

namespace catqec {

namespace {

constexpr int64_t KINF = std::numeric_limits<int64_t>::max() / 4;

struct Solver {
    int n = 0, m = 0;
    std::vector<int> eu, ev;
    std::vector<int64_t> ew; // input * 4

    std::vector<int> adj_start, adj_edge; // vertex-level CSR, each edge twice

    struct BNode {
        int parent = -1;
        int base = -1;
        int64_t z = 0;
        int label = 0;
        int64_t t_label = 0;
        int tree_parent_edge = -1;
        int root = -1;
        std::vector<int> cycle;       // blossoms only, cycle[0] holds the base
        std::vector<int> cycle_edges; // cycle_edges[i] joins cycle[i], cycle[i+1]
        std::vector<int> vertices;    // real vertices inside (for laziness folds)
        bool is_blossom = false;
        bool alive = true;
    };
    std::vector<BNode> nodes;
    std::vector<int> top_of;    // vertex -> top node
    std::vector<int64_t> y;     // vertex duals, valid as of top's t_label
    std::vector<int> mate_edge; // base vertices of top nodes only
    int64_t now = 0;
    int n_unmatched = 0;

    using Ev = std::pair<int64_t, int>;
    std::priority_queue<Ev, std::vector<Ev>, std::greater<Ev>> q_pp, q_pf, q_expand;

    struct Odd {
        std::vector<int> verts;
        int64_t z;
    };

    // ---------- basic helpers ----------

    int top(int v) const { return top_of[v]; }

    int64_t y_act(int v) const {
        const BNode& t = nodes[top_of[v]];
        return y[v] + int64_t(t.label) * (now - t.t_label);
    }

    int64_t z_act(int b) const {
        const BNode& t = nodes[b];
        return t.z + 2 * int64_t(t.label) * (now - t.t_label);
    }

    int64_t slack(int e) const { return ew[e] - y_act(eu[e]) - y_act(ev[e]); }

    int other(int e, int v) const { return eu[e] == v ? ev[e] : eu[e]; }

    // endpoint of edge e lying inside top node t
    int endpoint_in(int e, int t) const { return top_of[eu[e]] == t ? eu[e] : ev[e]; }

    void materialize(int b) {
        BNode& nd = nodes[b];
        if (nd.label != 0) {
            int64_t dt = now - nd.t_label;
            for (int v : nd.vertices) y[v] += int64_t(nd.label) * dt;
            if (nd.is_blossom) nd.z += 2 * int64_t(nd.label) * dt;
        }
        nd.t_label = now;
    }

    // scan edges incident to top node b and queue the events its new label enables
    void schedule_events(int b) {
        BNode& nd = nodes[b];
        if (nd.label < 0) {
            if (nd.is_blossom) q_expand.push({now + z_act(b) / 2, b});
            return;
        }
        if (nd.label == 0) {
            // neighbours that are outer can now grow onto us
            for (int v : nd.vertices)
                for (int k = adj_start[v]; k < adj_start[v + 1]; k++) {
                    int e = adj_edge[k];
                    int o = top_of[other(e, v)];
                    if (o == b || !nodes[o].alive) continue;
                    if (nodes[o].label > 0) q_pf.push({now + slack(e), e});
                }
            return;
        }
        for (int v : nd.vertices) {
            for (int k = adj_start[v]; k < adj_start[v + 1]; k++) {
                int e = adj_edge[k];
                int o = top_of[other(e, v)];
                if (o == b) continue;
                int lab = nodes[o].label;
                if (lab > 0) q_pp.push({now + slack(e) / 2, e});
                else if (lab == 0) q_pf.push({now + slack(e), e});
            }
        }
    }

    void set_label(int b, int label, int root, int parent_edge) {
        materialize(b);
        nodes[b].label = label;
        nodes[b].root = root;
        nodes[b].tree_parent_edge = parent_edge;
        schedule_events(b);
    }

    // ---------- setup ----------

    void build(int n_in, const std::vector<MatchEdge>& edges) {
        n = n_in;
        if (n % 2) throw std::invalid_argument("odd number of vertices");
        for (const auto& e : edges) {
            if (e.u == e.v) continue;
            if (e.w < 0) throw std::invalid_argument("negative edge weight");
            eu.push_back(e.u);
            ev.push_back(e.v);
            ew.push_back(4 * e.w);
        }
        m = int(eu.size());

        adj_start.assign(n + 1, 0);
        for (int e = 0; e < m; e++) {
            adj_start[eu[e] + 1]++;
            adj_start[ev[e] + 1]++;
        }
        for (int v = 0; v < n; v++) adj_start[v + 1] += adj_start[v];
        adj_edge.resize(2 * m);
        std::vector<int> fill(adj_start.begin(), adj_start.end() - 1);
        for (int e = 0; e < m; e++) {
            adj_edge[fill[eu[e]]++] = e;
            adj_edge[fill[ev[e]]++] = e;
        }

        nodes.resize(n);
        top_of.resize(n);
        y.assign(n, 0);
        mate_edge.assign(n, -1);
        for (int v = 0; v < n; v++) {
            nodes[v].base = v;
            nodes[v].vertices = {v};
            top_of[v] = v;
        }

        // greedy duals: half the cheapest incident edge, then match tight edges
        for (int v = 0; v < n; v++) {
            int64_t best = KINF;
            for (int k = adj_start[v]; k < adj_start[v + 1]; k++)
                best = std::min(best, ew[adj_edge[k]]);
            y[v] = best == KINF ? 0 : best / 2;
        }
        for (int e = 0; e < m; e++) {
            int u = eu[e], v = ev[e];
            if (mate_edge[u] < 0 && mate_edge[v] < 0 && ew[e] - y[u] - y[v] == 0) {
                mate_edge[u] = e;
                mate_edge[v] = e;
            }
        }

        n_unmatched = 0;
        for (int v = 0; v < n; v++) {
            if (mate_edge[v] < 0) {
                n_unmatched++;
                set_label(v, +1, v, -1);
            }
        }
    }

    // ---------- structural operations ----------

    int node_containing(int b, int x) const {
        // child of blossom b (or b itself if x is direct) on x's parent chain
        int c = x;
        while (nodes[c].parent != b) {
            c = nodes[c].parent;
            if (c < 0) throw std::logic_error("vertex not inside blossom");
        }
        return c;
    }

    void set_base(int b, int x) {
        if (!nodes[b].is_blossom) {
            assert(b == x);
            return;
        }
        BNode& nd = nodes[b];
        int c = node_containing(b, x);
        auto it = std::find(nd.cycle.begin(), nd.cycle.end(), c);
        assert(it != nd.cycle.end());
        int k = int(it - nd.cycle.begin());
        std::rotate(nd.cycle.begin(), nd.cycle.begin() + k, nd.cycle.end());
        std::rotate(nd.cycle_edges.begin(), nd.cycle_edges.begin() + k, nd.cycle_edges.end());
        set_base(c, x);
        nd.base = x;
    }

    int new_blossom_id() {
        nodes.emplace_back();
        return int(nodes.size()) - 1;
    }

    // tops from b up to the root, following tree parent edges
    std::vector<int> tree_path(int b) const {
        std::vector<int> path{b};
        while (nodes[path.back()].tree_parent_edge >= 0) {
            int pe = nodes[path.back()].tree_parent_edge;
            int x = endpoint_in(pe, path.back());
            path.push_back(top_of[other(pe, x)]);
        }
        return path;
    }

    void shrink(int e) {
        int U = top_of[eu[e]], V = top_of[ev[e]];
        std::vector<int> pu = tree_path(U), pv = tree_path(V);
        // find LCA: deepest common suffix
        int i = int(pu.size()) - 1, j = int(pv.size()) - 1;
        while (i > 0 && j > 0 && pu[i - 1] == pv[j - 1]) {
            i--;
            j--;
        }
        int lca = pu[i];
        assert(lca == pv[j]);

        int b = new_blossom_id();
        BNode& nd = nodes[b];
        nd.is_blossom = true;
        nd.alive = true;
        nd.z = 0;
        nd.base = nodes[lca].base;
        nd.label = 0; // set properly below
        nd.t_label = now;

        // cycle: lca -> ... -> U -(e)-> V -> ... -> lca
        for (int k = i; k >= 1; k--) {
            nd.cycle.push_back(pu[k]);
            nd.cycle_edges.push_back(nodes[pu[k - 1]].tree_parent_edge);
        }
        nd.cycle.push_back(pu[0]);
        nd.cycle_edges.push_back(e);
        for (int k = 0; k < j; k++) {
            nd.cycle.push_back(pv[k]);
            nd.cycle_edges.push_back(nodes[pv[k]].tree_parent_edge);
        }
        assert(nd.cycle.size() % 2 == 1);

        int root = nodes[lca].root;
        int parent_edge = nodes[lca].tree_parent_edge;
        std::vector<int> was_inner;
        for (int c : nd.cycle) {
            materialize(c);
            if (nodes[c].label < 0) was_inner.push_back(c);
            nodes[c].parent = b;
            nodes[c].alive = true;
            for (int v : nodes[c].vertices) {
                nd.vertices.push_back(v);
                top_of[v] = b;
            }
        }
        nd.label = +1;
        nd.root = root;
        nd.tree_parent_edge = parent_edge;
        // vertices of previously inner children flipped trajectory: rescan
        for (int c : was_inner) {
            for (int v : nodes[c].vertices)
                for (int k = adj_start[v]; k < adj_start[v + 1]; k++) {
                    int ed = adj_edge[k];
                    int o = top_of[other(ed, v)];
                    if (o == b) continue;
                    int lab = nodes[o].label;
                    if (lab > 0) q_pp.push({now + slack(ed) / 2, ed});
                    else if (lab == 0) q_pf.push({now + slack(ed), ed});
                }
        }
    }

    void expand(int b) {
        BNode& nd = nodes[b];
        assert(nd.is_blossom && nd.label < 0);
        materialize(b);
        assert(nd.z == 0);

        int pe = nd.tree_parent_edge;
        int x = endpoint_in(pe, b); // tree attachment vertex
        int root = nd.root;

        for (int c : nd.cycle) {
            nodes[c].parent = -1;
            nodes[c].label = 0;
            nodes[c].t_label = now;
            nodes[c].tree_parent_edge = -1;
            for (int v : nodes[c].vertices) top_of[v] = c;
        }

        int k = int(std::find(nd.cycle.begin(), nd.cycle.end(), node_containing_top(x)) -
                    nd.cycle.begin());
        assert(k < int(nd.cycle.size()));
        const int sz = int(nd.cycle.size());

        // walk from entry child k to base child 0 using the even-length side
        std::vector<int> path_nodes, path_edges;
        if (k % 2 == 0) { // k, k-1, ..., 0 has k edges
            for (int t = k; t >= 0; t--) {
                path_nodes.push_back(nd.cycle[t]);
                if (t > 0) path_edges.push_back(nd.cycle_edges[t - 1]);
            }
        } else { // k, k+1, ..., sz-1, 0 has sz-k edges
            for (int t = k; t < sz; t++) {
                path_nodes.push_back(nd.cycle[t]);
                path_edges.push_back(nd.cycle_edges[t]);
            }
            path_nodes.push_back(nd.cycle[0]);
        }
        assert(path_edges.size() % 2 == 0);

        // matched edges along the path are those at even offsets
        for (size_t t = 0; t < path_edges.size(); t += 2) {
            int f = path_edges[t];
            int a = path_nodes[t], c = path_nodes[t + 1];
            int xa = endpoint_in(f, a), xc = endpoint_in(f, c);
            set_base(a, xa);
            set_base(c, xc);
            mate_edge[xa] = f;
            mate_edge[xc] = f;
        }

        // labels along the path alternate -,+,...,-; last node keeps the base
        for (size_t t = 0; t < path_nodes.size(); t++) {
            int c = path_nodes[t];
            int lab = (t % 2 == 0) ? -1 : +1;
            int parent_edge = (t == 0) ? pe : path_edges[t - 1];
            set_label(c, lab, root, parent_edge);
        }

        // remaining children pair up among themselves and leave the tree
        std::vector<char> on_path(sz, 0);
        for (int c : path_nodes)
            on_path[int(std::find(nd.cycle.begin(), nd.cycle.end(), c) - nd.cycle.begin())] = 1;
        std::vector<int> rest;
        for (int t = 0; t < sz; t++)
            if (!on_path[t]) rest.push_back(t);
        assert(rest.size() % 2 == 0);
        for (size_t t = 0; t < rest.size(); t += 2) {
            assert(rest[t + 1] == rest[t] + 1);
            int f = nd.cycle_edges[rest[t]];
            int a = nd.cycle[rest[t]], c = nd.cycle[rest[t + 1]];
            int xa = endpoint_in(f, a), xc = endpoint_in(f, c);
            set_base(a, xa);
            set_base(c, xc);
            mate_edge[xa] = f;
            mate_edge[xc] = f;
            schedule_events(a); // free nodes: let outer neighbours grow here
            schedule_events(c);
        }

        nd.alive = false;
        nd.vertices.clear();
        nd.cycle.clear();
        nd.cycle_edges.clear();
    }

    // top-level node of x within a dissolving blossom context: after parents
    // were cleared, this is just the current top
    int node_containing_top(int x) const { return top_of[x]; }

    // ---------- augmenting ----------

    void flip_path(int T, int enter_vertex, int enter_edge) {
        // T outer; matches enter_edge at enter_vertex and flips up to the root
        std::vector<int> path = tree_path(T);
        set_base(T, enter_vertex);
        mate_edge[enter_vertex] = enter_edge;
        for (size_t i = 1; i + 1 < path.size(); i += 2) {
            int inner = path[i];
            int f = nodes[inner].tree_parent_edge; // unmatched edge toward parent
            int xa = endpoint_in(f, inner);
            int parent = path[i + 1];
            int xb = endpoint_in(f, parent);
            set_base(inner, xa);
            set_base(parent, xb);
            mate_edge[xa] = f;
            mate_edge[xb] = f;
        }
    }

    void dissolve_tree(int root_node) {
        // collect current tops of this tree by walking all alive tops
        for (int b = 0; b < int(nodes.size()); b++) {
            if (!nodes[b].alive || nodes[b].parent != -1) continue;
            if (nodes[b].label != 0 && nodes[b].root == root_node) {
                set_label(b, 0, -1, -1);
            }
        }
    }

    void augment(int e) {
        int U = top_of[eu[e]], V = top_of[ev[e]];
        int ru = nodes[U].root, rv = nodes[V].root;
        flip_path(U, endpoint_in(e, U), e);
        flip_path(V, endpoint_in(e, V), e);
        n_unmatched -= 2;
        dissolve_tree(ru);
        dissolve_tree(rv);
    }

    // ---------- main loop ----------

    void grow(int e) {
        int U, V;
        if (nodes[top_of[eu[e]]].label > 0) {
            U = top_of[eu[e]];
            V = top_of[ev[e]];
        } else {
            U = top_of[ev[e]];
            V = top_of[eu[e]];
        }
        set_label(V, -1, nodes[U].root, e);
        int base = nodes[V].base;
        int me = mate_edge[base];
        assert(me >= 0);
        int W = top_of[other(me, base)];
        assert(nodes[W].label == 0);
        set_label(W, +1, nodes[U].root, me);
    }

    bool valid_pp(int e) const {
        int U = top_of[eu[e]], V = top_of[ev[e]];
        return U != V && nodes[U].alive && nodes[V].alive && nodes[U].label > 0 &&
               nodes[V].label > 0;
    }
    bool valid_pf(int e) const {
        int U = top_of[eu[e]], V = top_of[ev[e]];
        if (U == V) return false;
        int lu = nodes[U].label, lv = nodes[V].label;
        return (lu > 0 && lv == 0) || (lv > 0 && lu == 0);
    }

    void run() {
        while (n_unmatched > 0) {
            int64_t t_pp = q_pp.empty() ? KINF : q_pp.top().first;
            int64_t t_pf = q_pf.empty() ? KINF : q_pf.top().first;
            int64_t t_ex = q_expand.empty() ? KINF : q_expand.top().first;
            int64_t t = std::min({t_pp, t_pf, t_ex});
            if (t >= KINF) throw std::invalid_argument("no perfect matching exists");
            assert(t >= now);
            now = t;

            if (t == t_pp) {
                int e = q_pp.top().second;
                q_pp.pop();
                if (!valid_pp(e)) continue;
                int64_t s = slack(e);
                if (s > 0) {
                    // s is even by the parity invariant; a stall here means it broke
                    if (now + s / 2 == t) throw std::logic_error("dual parity violation");
                    q_pp.push({now + s / 2, e});
                    continue;
                }
                if (nodes[top_of[eu[e]]].root == nodes[top_of[ev[e]]].root) shrink(e);
                else augment(e);
            } else if (t == t_pf) {
                int e = q_pf.top().second;
                q_pf.pop();
                if (!valid_pf(e)) continue;
                int64_t s = slack(e);
                if (s > 0) {
                    q_pf.push({now + s, e});
                    continue;
                }
                grow(e);
            } else {
                int b = q_expand.top().second;
                q_expand.pop();
                if (!nodes[b].alive || nodes[b].parent != -1 || !nodes[b].is_blossom ||
                    nodes[b].label >= 0)
                    continue;
                int64_t z = z_act(b);
                if (z > 0) {
                    if (now + z / 2 == t) throw std::logic_error("dual parity violation");
                    q_expand.push({now + z / 2, b});
                    continue;
                }
                expand(b);
            }
        }
    }

    // ---------- extraction and certificate ----------

    void extract_blossom(int b, int base_vertex) {
        if (!nodes[b].is_blossom) return;
        set_base(b, base_vertex);
        BNode& nd = nodes[b];
        for (size_t i = 1; i < nd.cycle.size(); i += 2) {
            int f = nd.cycle_edges[i];
            int a = nd.cycle[i], c = nd.cycle[i + 1];
            int xa = in_child(f, a), xc = in_child(f, c);
            mate_edge[xa] = f;
            mate_edge[xc] = f;
            extract_blossom(a, xa);
            extract_blossom(c, xc);
        }
        extract_blossom(nd.cycle[0], base_vertex);
    }

    // endpoint of f inside child node c (parents may point at dead tops)
    int in_child(int f, int c) const {
        for (int x : {eu[f], ev[f]}) {
            int t = x;
            while (t >= 0) {
                if (t == c) return x;
                t = nodes[t].parent;
            }
        }
        throw std::logic_error("edge endpoint not in child");
    }

    MatchingResult finish() {
        // materialize every alive top so y and z are final
        for (int b = 0; b < int(nodes.size()); b++)
            if (nodes[b].alive && nodes[b].parent == -1) materialize(b);

        // collect blossoms with positive dual before expansion destroys order
        std::vector<Odd> odds;
        for (int b = n; b < int(nodes.size()); b++) {
            if (!nodes[b].alive || !nodes[b].is_blossom) continue;
            if (nodes[b].z > 0) {
                std::vector<int> verts;
                collect_vertices(b, &verts);
                odds.push_back({std::move(verts), nodes[b].z});
            }
        }

        for (int b = n; b < int(nodes.size()); b++)
            if (nodes[b].alive && nodes[b].parent == -1 && nodes[b].is_blossom)
                extract_blossom(b, nodes[b].base);

        MatchingResult res;
        res.mate.assign(n, -1);
        int64_t weight4 = 0;
        for (int v = 0; v < n; v++) {
            int e = mate_edge[v];
            if (e < 0 || other(e, v) == v) throw std::logic_error("unmatched vertex");
            res.mate[v] = other(e, v);
        }
        for (int v = 0; v < n; v++) {
            if (res.mate[res.mate[v]] != v) throw std::logic_error("mate array inconsistent");
            if (v < res.mate[v]) weight4 += ew[mate_edge[v]];
        }

        verify_certificate(weight4, odds);
        res.weight = weight4 / 4;
        return res;
    }

    void collect_vertices(int b, std::vector<int>* out) const {
        if (!nodes[b].is_blossom) {
            out->push_back(b);
            return;
        }
        for (int c : nodes[b].cycle) collect_vertices(c, out);
    }

    void verify_certificate(int64_t weight4, const std::vector<Odd>& odds);
};

void Solver::verify_certificate(int64_t weight4, const std::vector<Odd>& odds) {
    // LP duality with floor-coefficient blossom constraints: the constraint for
    // edge e reads y_u + y_v - sum_{B containing both} z_B <= w_e, the dual
    // objective is sum y_v - sum z_B * floor(|B|/2), and complementary
    // slackness makes matched edges tight and closes the gap
    std::vector<int64_t> extra(m, 0);
    std::vector<char> mark(n, 0);
    for (const auto& od : odds) {
        if (od.z < 0) throw std::logic_error("matching certificate: negative blossom dual");
        for (int v : od.verts) mark[v] = 1;
        for (int e = 0; e < m; e++)
            if (mark[eu[e]] && mark[ev[e]]) extra[e] += od.z;
        for (int v : od.verts) mark[v] = 0;
    }
    for (int e = 0; e < m; e++) {
        int64_t s = ew[e] - y[eu[e]] - y[ev[e]] + extra[e];
        if (s < 0) throw std::logic_error("matching certificate: negative slack");
        bool matched = mate_edge[eu[e]] == e && mate_edge[ev[e]] == e;
        if (matched && s != 0) throw std::logic_error("matching certificate: loose matched edge");
    }
    int64_t dual = 0;
    for (int v = 0; v < n; v++) dual += y[v];
    for (const auto& od : odds) dual -= od.z * int64_t(od.verts.size() / 2);
    if (dual != weight4) throw std::logic_error("matching certificate: duality gap");
}

} // namespace

MatchingResult min_weight_perfect_matching(int n, const std::vector<MatchEdge>& edges) {
    Solver s;
    s.build(n, edges);
    s.run();
    return s.finish();
}

BoundaryMatchingResult min_weight_boundary_matching(int n, const std::vector<MatchEdge>& edges,
                                                    const std::vector<int64_t>& boundary_w) {
    std::vector<MatchEdge> doubled;
    doubled.reserve(2 * edges.size() + n);
    for (const auto& e : edges) {
        doubled.push_back(e);
        doubled.push_back({e.u + n, e.v + n, e.w});
    }
    for (int v = 0; v < n; v++)
        if (boundary_w[v] >= 0) doubled.push_back({v, v + n, 2 * boundary_w[v]});

    MatchingResult full = min_weight_perfect_matching(2 * n, doubled);

    BoundaryMatchingResult res;
    res.mate.assign(n, -1);
    for (int v = 0; v < n; v++) {
        int mv = full.mate[v];
        if (mv < n) {
            res.mate[v] = mv;
        } else {
            if (mv != v + n) throw std::logic_error("mirror matched to wrong vertex");
            res.mate[v] = -1;
        }
    }
    for (int v = 0; v < n; v++)
        if (res.mate[v] >= 0 && res.mate[res.mate[v]] != v)
            throw std::logic_error("boundary matching inconsistent");
    // each copy's restriction is a valid boundary matching; the two sum to the
    // doubled optimum (cross edges cost 2*b so each copy books b once), and a
    // doubled optimal boundary matching achieves exactly twice its cost, so
    // both restrictions are optimal and the cost is half the doubled weight
    if (full.weight % 2 != 0) throw std::logic_error("doubled matching weight is odd");
    res.weight = full.weight / 2;
    return res;
}

} // namespace catqec
