#include "knotgrid/separator.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>

namespace knotgrid {

void WeightSystem::check_total(const PlaneGraph& g) const {
    long long total = 0;
    for (VertexId v : g.vertices()) total += vertex_num[v];
    for (long long f : face_num) total += f;
    require(total == den, Err::Internal, "weights must sum to 1");
}

std::vector<Cycle> bfs_fundamental_cycles(const PlaneGraph& g) {
    std::vector<Cycle> out;
    if (g.num_vertices() == 0) return out;
    int cap = g.vertex_capacity();
    std::vector<VertexId> par(cap, -2);
    std::vector<EdgeId> par_edge(cap, -1);
    std::vector<int> depth(cap, 0);
    VertexId root = g.vertices().front();
    par[root] = -1;
    std::queue<VertexId> q;
    q.push(root);
    std::set<EdgeId> tree;
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop();
        for (DartId d : g.vertex(v).rot) {
            VertexId w = g.dart_head(d);
            if (par[w] == -2) {
                par[w] = v;
                par_edge[w] = dart_edge(d);
                depth[w] = depth[v] + 1;
                tree.insert(dart_edge(d));
                q.push(w);
            }
        }
    }
    for (EdgeId e : g.edges()) {
        if (tree.count(e)) continue;
        VertexId a = g.edge(e).ends[0], b = g.edge(e).ends[1];
        if (a == b) continue;
        std::vector<std::pair<VertexId, EdgeId>> up_a, up_b;
        VertexId x = a, y = b;
        while (x != y) {
            if (depth[x] >= depth[y]) {
                up_a.push_back({x, par_edge[x]});
                x = par[x];
            } else {
                up_b.push_back({y, par_edge[y]});
                y = par[y];
            }
        }
        Cycle c;
        for (auto& [v, pe] : up_a) {
            c.verts.push_back(v);
            c.edges.push_back(pe);
        }
        c.verts.push_back(x);
        if (!up_b.empty()) {
            c.edges.push_back(up_b.back().second);
            for (int i = (int)up_b.size() - 1; i > 0; --i) {
                c.verts.push_back(up_b[i].first);
                c.edges.push_back(up_b[i - 1].second);
            }
            c.verts.push_back(up_b[0].first);
        }
        c.edges.push_back(e);
        if (c.length() >= 2 && is_cycle_in(g, c)) out.push_back(c);
    }
    return out;
}

namespace {

struct SideMap {
    std::vector<int> vertex_side; // -1 cycle, 0 left, 1 right
    std::vector<int> face_side;
};

SideMap cycle_sides(const PlaneGraph& g, const FaceSet& fs, const Cycle& c) {
    SideMap sm;
    sm.vertex_side.assign(g.vertex_capacity(), -2);
    for (VertexId v : c.verts) sm.vertex_side[v] = -1;
    int n = c.length();
    std::vector<std::pair<VertexId, int>> seeds;
    std::map<DartId, int> wedge;
    for (int i = 0; i < n; ++i) {
        VertexId v = c.verts[i];
        EdgeId eo = c.edges[i], ei = c.edges[(i - 1 + n) % n];
        DartId d_out = g.edge(eo).ends[0] == v ? make_dart(eo, 0) : make_dart(eo, 1);
        DartId d_in = g.edge(ei).ends[0] == v ? make_dart(ei, 0) : make_dart(ei, 1);
        DartId d = g.rot_next(d_out);
        while (d != d_in) {
            wedge[d] = 0;
            seeds.push_back({g.dart_head(d), 0});
            d = g.rot_next(d);
        }
        d = g.rot_next(d_in);
        while (d != d_out) {
            wedge[d] = 1;
            seeds.push_back({g.dart_head(d), 1});
            d = g.rot_next(d);
        }
    }
    std::queue<VertexId> q;
    for (auto [v, s] : seeds)
        if (sm.vertex_side[v] == -2) {
            sm.vertex_side[v] = s;
            q.push(v);
        }
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop();
        for (DartId d : g.vertex(v).rot) {
            VertexId w = g.dart_head(d);
            if (sm.vertex_side[w] == -2) {
                sm.vertex_side[w] = sm.vertex_side[v];
                q.push(w);
            }
        }
    }
    std::set<VertexId> on_cycle(c.verts.begin(), c.verts.end());
    std::set<EdgeId> cyc_edges(c.edges.begin(), c.edges.end());
    sm.face_side.assign(fs.faces.size(), -1);
    for (int fi = 0; fi < (int)fs.faces.size(); ++fi) {
        const Face& f = fs.faces[fi];
        int side = -1;
        for (DartId d : f.walk) {
            VertexId v = g.dart_tail(d);
            if (!on_cycle.count(v)) {
                side = sm.vertex_side[v];
                break;
            }
            if (!cyc_edges.count(dart_edge(d))) {
                if (auto it = wedge.find(d); it != wedge.end()) {
                    side = it->second;
                    break;
                }
            }
        }
        if (side == -1) {
            // Boundary lies on the cycle: the whole face is one side.
            DartId d0 = f.walk[0];
            VertexId tail = g.dart_tail(d0), head = g.dart_head(d0);
            int pos = -1;
            for (int i = 0; i < n; ++i)
                if (c.verts[i] == tail) pos = i;
            require(pos >= 0, Err::Internal, "cycle face side");
            side = (c.verts[(pos + 1) % n] == head && c.edges[pos] == dart_edge(d0)) ? 0 : 1;
        }
        sm.face_side[fi] = side;
    }
    return sm;
}

} // namespace

std::pair<long long, long long> cycle_side_weights(const PlaneGraph& g, const WeightSystem& w,
                                                   const Cycle& c) {
    FaceSet fs = trace_faces(g);
    SideMap sm = cycle_sides(g, fs, c);
    long long left = 0, right = 0;
    for (VertexId v : g.vertices()) {
        if (sm.vertex_side[v] == 0) left += w.vertex_num[v];
        if (sm.vertex_side[v] == 1) right += w.vertex_num[v];
    }
    for (int fi = 0; fi < (int)fs.faces.size() && fi < (int)w.face_num.size(); ++fi) {
        if (sm.face_side[fi] == 0) left += w.face_num[fi];
        if (sm.face_side[fi] == 1) right += w.face_num[fi];
    }
    return {left, right};
}

namespace {

std::vector<Cycle> short_cycles(const PlaneGraph& g, std::size_t cap = 5000) {
    std::vector<Cycle> out;
    std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> par;
    for (EdgeId e : g.edges()) {
        VertexId a = g.edge(e).ends[0], b = g.edge(e).ends[1];
        if (a == b) continue;
        par[{std::min(a, b), std::max(a, b)}].push_back(e);
    }
    for (auto& [vs, es] : par) {
        for (std::size_t i = 0; i < es.size() && out.size() < cap; ++i)
            for (std::size_t j = i + 1; j < es.size() && out.size() < cap; ++j) {
                Cycle c;
                c.verts = {vs.first, vs.second};
                c.edges = {es[i], es[j]};
                out.push_back(c);
            }
    }
    for (VertexId u : g.vertices()) {
        if (g.degree(u) > 64) continue;
        for (DartId d1 : g.vertex(u).rot) {
            VertexId v = g.dart_head(d1);
            if (v <= u || g.degree(v) > 64) continue;
            for (DartId d2 : g.vertex(v).rot) {
                VertexId x = g.dart_head(d2);
                if (x <= v) continue;
                for (DartId d3 : g.vertex(x).rot) {
                    if (g.dart_head(d3) != u) continue;
                    Cycle c;
                    c.verts = {u, v, x};
                    c.edges = {dart_edge(d1), dart_edge(d2), dart_edge(d3)};
                    if (is_cycle_in(g, c)) out.push_back(c);
                    if (out.size() >= cap) return out;
                    break;
                }
            }
        }
    }
    return out;
}

struct Ranked {
    long long est_spread;
    int length;
    std::size_t index;
    auto key() const { return std::tie(est_spread, length, index); }
    bool operator<(const Ranked& o) const { return key() < o.key(); }
};

} // namespace

CycleCutResult cycle_cut(const PlaneGraph& g, const WeightSystem& w) {
    w.check_total(g);
    FaceSet fs = trace_faces(g);
    for (int fi = 0; fi < (int)fs.faces.size() && fi < (int)w.face_num.size(); ++fi)
        require(3 * w.face_num[fi] <= 2 * w.den, Err::PreconditionFaceWeight,
                "face weight exceeds 2/3");

    std::vector<Cycle> cands = short_cycles(g);
    {
        std::vector<Cycle> fund = bfs_fundamental_cycles(g);
        cands.insert(cands.end(), fund.begin(), fund.end());
    }
    require(!cands.empty(), Err::Internal, "graph has no cycles");

    std::vector<long long> face_charge(fs.faces.size(), 0);
    for (int fi = 0; fi < (int)fs.faces.size() && fi < (int)w.face_num.size(); ++fi)
        face_charge[fi] += w.face_num[fi];
    for (VertexId v : g.vertices())
        if (!g.vertex(v).rot.empty())
            face_charge[fs.face_of(g.vertex(v).rot.front())] += w.vertex_num[v];

    auto estimate = [&](const Cycle& c) -> long long {
        std::set<EdgeId> blocked(c.edges.begin(), c.edges.end());
        std::vector<char> vis(fs.faces.size(), 0);
        std::queue<int> q;
        q.push(0);
        vis[0] = 1;
        long long reach = face_charge[0];
        while (!q.empty()) {
            int f = q.front();
            q.pop();
            for (DartId d : fs.faces[f].walk) {
                if (blocked.count(dart_edge(d))) continue;
                int o = fs.face_of(dart_mate(d));
                if (!vis[o]) {
                    vis[o] = 1;
                    reach += face_charge[o];
                    q.push(o);
                }
            }
        }
        return std::llabs(2 * reach - w.den);
    };

    std::vector<Ranked> ranked(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i)
        ranked[i] = {0, cands[i].length(), i};
    std::size_t est_cap = g.num_edges() > 4000 ? 600 : cands.size();
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
        return std::tie(a.length, a.index) < std::tie(b.length, b.index);
    });
    for (std::size_t i = 0; i < ranked.size(); ++i)
        ranked[i].est_spread = i < est_cap ? estimate(cands[ranked[i].index]) : 4 * w.den;
    std::sort(ranked.begin(), ranked.end());

    bool have = false;
    CycleCutResult best;
    auto consider = [&](const Cycle& c) -> bool {
        auto [l, r] = cycle_side_weights(g, w, c);
        if (3 * std::max(l, r) > 2 * w.den) return false;
        if (!have || c.length() < best.cycle.length() ||
            (c.length() == best.cycle.length() && std::max(l, r) < best.max_side())) {
            best.cycle = c;
            best.w_left = l;
            best.w_right = r;
            best.den = w.den;
            have = true;
        }
        return true;
    };
    int exact_budget = 64;
    for (const Ranked& rc : ranked) {
        if (have && exact_budget <= 0) break;
        --exact_budget;
        consider(cands[rc.index]);
        if (have && best.cycle.length() <= 2) break;
    }
    if (!have) {
        std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
            return std::tie(a.length, a.index) < std::tie(b.length, b.index);
        });
        for (const Ranked& rc : ranked)
            if (consider(cands[rc.index])) break;
    }
    require(have, Err::Internal, "no 2/3 cycle cut found");
    return best;
}

CutChoice cut_vertex_or_cycle(const PlaneGraph& g, const WeightSystem& w) {
    w.check_total(g);
    CutChoice out;
    if (g.num_vertices() == 1) {
        out.is_vertex = true;
        out.vertex = g.vertices().front();
        return out;
    }
    long long best_heavy = -1;
    VertexId best_v = -1;
    for (VertexId v : g.vertices()) {
        std::vector<char> vis(g.vertex_capacity(), 0);
        vis[v] = 1;
        long long heaviest = 0;
        int comps = 0;
        for (VertexId s : g.vertices()) {
            if (vis[s]) continue;
            ++comps;
            long long total = 0;
            std::queue<VertexId> q;
            q.push(s);
            vis[s] = 1;
            while (!q.empty()) {
                VertexId x = q.front();
                q.pop();
                total += w.vertex_num[x];
                for (DartId d : g.vertex(x).rot) {
                    VertexId y = g.dart_head(d);
                    if (!vis[y]) {
                        vis[y] = 1;
                        q.push(y);
                    }
                }
            }
            heaviest = std::max(heaviest, total);
        }
        if (comps >= 2 && 3 * heaviest <= 2 * w.den) {
            if (best_v == -1 || heaviest < best_heavy || (heaviest == best_heavy && v < best_v)) {
                best_heavy = heaviest;
                best_v = v;
            }
        }
    }
    if (best_v != -1) {
        out.is_vertex = true;
        out.vertex = best_v;
        return out;
    }
    out.is_vertex = false;
    out.cycle = cycle_cut(g, w);
    return out;
}

// ───────────────────────── balanced subdivision ───────────────────────────

namespace {

// Lemma-style weights on one BRT-component: component reds 1/m, blues 0,
// each face weighted by the number of foreign reds it contains.
WeightSystem component_weights(const BRTGraph& b, const BRComponent& comp, int m) {
    const PlaneGraph& ind = comp.induced;
    WeightSystem w;
    w.den = m;
    w.vertex_num.assign(ind.vertex_capacity(), 0);
    for (VertexId v : comp.red_vertices) w.vertex_num[v] = 1;
    FaceSet fs = trace_faces(ind);
    w.face_num.assign(fs.faces.size(), 0);

    std::set<VertexId> in_comp(comp.red_vertices.begin(), comp.red_vertices.end());
    in_comp.insert(comp.blue_vertices.begin(), comp.blue_vertices.end());

    // Face owning the rotation gap a foreign dart occupies: the corner after
    // the nearest kept dart (counterclockwise) belongs to
    // face_of(rot_next_induced(kept)).
    std::vector<int> home(b.g.vertex_capacity(), -1);
    for (VertexId x : in_comp) {
        const auto& grot = b.g.vertex(x).rot;
        const auto& irot = ind.vertex(x).rot;
        if (irot.empty()) continue;
        std::set<DartId> kept(irot.begin(), irot.end());
        int n = (int)grot.size();
        for (int i = 0; i < n; ++i) {
            DartId d = grot[i];
            if (kept.count(d)) continue;
            int j = (i - 1 + n) % n;
            while (!kept.count(grot[j])) j = (j - 1 + n) % n;
            int face = fs.face_of(ind.rot_next(grot[j]));
            VertexId far = b.g.dart_head(d);
            if (!in_comp.count(far) && home[far] == -1) home[far] = face;
        }
    }
    bool grew = true;
    while (grew) {
        grew = false;
        for (EdgeId e : b.g.edges()) {
            VertexId a = b.g.edge(e).ends[0], v = b.g.edge(e).ends[1];
            if (in_comp.count(a) || in_comp.count(v)) continue;
            if (home[a] != -1 && home[v] == -1) home[v] = home[a], grew = true;
            else if (home[v] != -1 && home[a] == -1) home[a] = home[v], grew = true;
        }
    }
    for (VertexId v : b.g.vertices()) {
        if (in_comp.count(v) || b.g.vertex(v).color != VColor::Red) continue;
        require(home[v] != -1, Err::Internal, "foreign red without a home face");
        w.face_num[home[v]] += 1;
    }
    w.check_total(ind);
    return w;
}

} // namespace

BalancedCut balanced_subdivision(const BRTGraph& b, const AlgorithmConstants& k) {
    int W = b.standard_weight();
    require(W > k.w0, Err::BelowThreshold,
            "standard weight " + std::to_string(W) + " <= W0 " + std::to_string(k.w0));
    auto comps = brt_components(b);

    auto edge_cut_in_component = [&](const BRComponent& comp) -> BalancedCut {
        WeightSystem w = component_weights(b, comp, W);
        CycleCutResult cut = cycle_cut(comp.induced, w);
        Cycle nc = normalize_cycle(b, cut.cycle);
        BalancedCut out;
        out.sub = edge_cut_subdivide(b, nc);
        out.vertex_cut = false;
        for (VertexId v : nc.verts)
            if (b.g.vertex(v).color == VColor::Red) out.cycle_red_len++;
        return out;
    };

    for (const BRComponent& comp : comps)
        if (2 * (int)comp.red_vertices.size() >= W) return edge_cut_in_component(comp);

    ComponentTree t = build_tree(b);
    int nodes = t.n_components + (int)t.blue_nodes.size();
    PlaneGraph tg;
    for (int i = 0; i < nodes; ++i) tg.add_vertex(VColor::Uncolored);
    for (std::size_t i = 0; i < t.edges.size(); ++i)
        tg.add_edge(t.edges[i].first, t.edges[i].second, (Label)i + 1);
    WeightSystem tw;
    tw.den = W;
    tw.vertex_num.assign(nodes, 0);
    for (int i = 0; i < t.n_components; ++i)
        tw.vertex_num[i] = (long long)t.component_red[i].size();
    CutChoice choice = cut_vertex_or_cycle(tg, tw);
    require(choice.is_vertex, Err::Internal, "component tree must yield a cut vertex");

    if (choice.vertex < t.n_components) return edge_cut_in_component(comps[choice.vertex]);

    // Blue cut vertex: select disk-components.
    VertexId u = t.blue_nodes[choice.vertex - t.n_components];
    const auto& rot = b.g.vertex(u).rot;
    int deg = (int)rot.size();
    std::vector<int> comp_of(b.g.vertex_capacity(), -1);
    std::vector<long long> comp_w;
    for (VertexId s : b.g.vertices()) {
        if (s == u || comp_of[s] != -1) continue;
        int id = (int)comp_w.size();
        comp_w.push_back(0);
        std::queue<VertexId> q;
        q.push(s);
        comp_of[s] = id;
        while (!q.empty()) {
            VertexId x = q.front();
            q.pop();
            if (b.g.vertex(x).color == VColor::Red) comp_w[id]++;
            for (DartId d : b.g.vertex(x).rot) {
                VertexId y = b.g.dart_head(d);
                if (y != u && comp_of[y] == -1) {
                    comp_of[y] = id;
                    q.push(y);
                }
            }
        }
    }
    auto interval_comps = [&](int s, int len) {
        std::set<int> in;
        for (int i = 0; i < len; ++i) in.insert(comp_of[b.g.dart_head(rot[(s + i) % deg])]);
        return in;
    };
    auto interval_ok = [&](int s, int len) {
        auto in = interval_comps(s, len);
        std::set<int> outc;
        for (int i = len; i < deg; ++i) outc.insert(comp_of[b.g.dart_head(rot[(s + i) % deg])]);
        for (int cmp : in)
            if (outc.count(cmp)) return false;
        return !in.empty() && !outc.empty();
    };
    auto interval_weight = [&](int s, int len) {
        long long sum = 0;
        for (int cmp : interval_comps(s, len)) sum += comp_w[cmp];
        return sum;
    };

    std::vector<char> sel(deg, 0);
    {
        int best_s = -1, best_len = -1;
        long long best_min = -1;
        for (int s = 0; s < deg; ++s)
            for (int len = 1; len < deg; ++len) {
                if (!interval_ok(s, len)) continue;
                long long in_w = interval_weight(s, len);
                if (6 * in_w < W || 6 * in_w > 5 * W) continue;
                long long mn = std::min(in_w, W - in_w);
                if (mn > best_min) {
                    best_min = mn;
                    best_s = s;
                    best_len = len;
                }
            }
        if (best_s != -1)
            for (int i = 0; i < best_len; ++i) sel[(best_s + i) % deg] = 1;
    }
    if (std::count(sel.begin(), sel.end(), (char)1) == 0) {
        // No single disk lands in [W/6, 5W/6]; pack maximal proper
        // sub-intervals of the smallest oversized disk.
        long long best_over = -1;
        int os = -1, ol = -1;
        for (int s = 0; s < deg; ++s)
            for (int len = 1; len < deg; ++len) {
                if (!interval_ok(s, len)) continue;
                long long in_w = interval_weight(s, len);
                if (6 * in_w > 5 * W && (best_over == -1 || in_w < best_over)) {
                    best_over = in_w;
                    os = s;
                    ol = len;
                }
            }
        if (os != -1) {
            std::vector<std::pair<int, int>> subs;
            for (int len = ol - 1; len >= 1; --len)
                for (int s0 = 0; s0 < ol; ++s0) {
                    int s = (os + s0) % deg;
                    if (s0 + len > ol) continue;
                    if (!interval_ok(s, len)) continue;
                    bool contained = false;
                    for (auto& [s2, l2] : subs) {
                        int rel = ((s - s2) % deg + deg) % deg;
                        if (rel + len <= l2) contained = true;
                    }
                    if (!contained) subs.push_back({s, len});
                }
            long long acc = 0;
            for (auto& [s, len] : subs) {
                if (6 * acc >= W) break;
                for (int i = 0; i < len; ++i) sel[(s + i) % deg] = 1;
                std::set<int> in;
                for (int i = 0; i < deg; ++i)
                    if (sel[i]) in.insert(comp_of[b.g.dart_head(rot[i])]);
                acc = 0;
                for (int cmp : in) acc += comp_w[cmp];
            }
        }
    }
    int picked = (int)std::count(sel.begin(), sel.end(), (char)1);
    if (picked == 0 || picked == deg) {
        // Best-effort: the most balanced single split component.
        int best_cmp = -1;
        long long bm = -1;
        for (int cmp = 0; cmp < (int)comp_w.size(); ++cmp) {
            long long mn = std::min(comp_w[cmp], (long long)W - comp_w[cmp]);
            if (mn > bm) {
                bm = mn;
                best_cmp = cmp;
            }
        }
        for (int i = 0; i < deg; ++i) sel[i] = comp_of[b.g.dart_head(rot[i])] == best_cmp;
    }
    BalancedCut out;
    out.sub = vertex_cut_subdivide(b, u, sel);
    out.vertex_cut = true;
    return out;
}

int SubdivisionTree::depth() const {
    int d = 0;
    for (const auto& n : nodes)
        if (n.terminal) d = std::max(d, n.depth);
    return d;
}

std::string SubdivisionTree::dump() const {
    std::ostringstream os;
    for (const auto& n : nodes)
        os << n.depth << ' ' << n.index << ' ' << n.graph.standard_weight() << ' '
           << (n.terminal ? "leaf" : n.vertex_cut ? "vcut" : "ecut") << ' ' << n.cycle_red_len
           << '\n';
    return os.str();
}

SubdivisionTree recursive_subdivide(const BRTGraph& b, const AlgorithmConstants& k) {
    SubdivisionTree t;
    make_brt(b);
    std::function<int(const BRTGraph&, int, int)> go = [&](const BRTGraph& g, int depth,
                                                           int index) -> int {
        int id = (int)t.nodes.size();
        t.nodes.push_back({});
        t.nodes[id].graph = g;
        t.nodes[id].depth = depth;
        t.nodes[id].index = index;
        if (g.standard_weight() <= k.w0) {
            t.nodes[id].terminal = true;
            return id;
        }
        BalancedCut cut = balanced_subdivision(g, k);
        int l = go(cut.sub.left, depth + 1, 2 * index - 1);
        int r = go(cut.sub.right, depth + 1, 2 * index);
        t.nodes[id].terminal = false;
        t.nodes[id].instr = cut.sub.instr;
        t.nodes[id].child[0] = l;
        t.nodes[id].child[1] = r;
        t.nodes[id].vertex_cut = cut.vertex_cut;
        t.nodes[id].cycle_red_len = cut.cycle_red_len;
        return id;
    };
    t.root = go(b, 0, 1);
    return t;
}

} // namespace knotgrid
