#include "knotgrid/brt.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace knotgrid {

int BRTGraph::standard_weight() const {
    int w = 0;
    for (VertexId v : g.vertices())
        if (g.vertex(v).color == VColor::Red) ++w;
    return w;
}

namespace {

// 0 when `cut` is a forward linear cut of the cyclic `rot`, 1 when a backward
// cut, -1 when neither.
int cyclic_cut_direction(const std::vector<DartId>& rot, const std::vector<DartId>& cut) {
    int n = (int)rot.size();
    if ((int)cut.size() != n) return -1;
    if (n == 0) return 0;
    for (int dir = 0; dir < 2; ++dir) {
        for (int s = 0; s < n; ++s) {
            bool ok = true;
            for (int i = 0; i < n && ok; ++i) {
                int idx = dir == 0 ? (s + i) % n : ((s - i) % n + n) % n;
                ok = rot[idx] == cut[i];
            }
            if (ok) return dir;
        }
    }
    return -1;
}

std::vector<VertexId> articulation_points(const PlaneGraph& g) {
    int cap = g.vertex_capacity();
    std::vector<int> disc(cap, -1), low(cap, 0), parent(cap, -1);
    std::vector<char> ap(cap, 0);
    int timer = 0;
    for (VertexId root : g.vertices()) {
        if (disc[root] != -1) continue;
        std::vector<std::pair<VertexId, int>> stack{{root, 0}};
        disc[root] = low[root] = timer++;
        int root_children = 0;
        while (!stack.empty()) {
            auto& [v, idx] = stack.back();
            if (idx < (int)g.vertex(v).rot.size()) {
                DartId d = g.vertex(v).rot[idx++];
                VertexId w = g.dart_head(d);
                if (w == v) continue;
                if (disc[w] == -1) {
                    parent[w] = v;
                    if (v == root) ++root_children;
                    disc[w] = low[w] = timer++;
                    stack.push_back({w, 0});
                } else if (w != parent[v]) {
                    low[v] = std::min(low[v], disc[w]);
                }
            } else {
                VertexId done = v;
                stack.pop_back();
                if (!stack.empty()) {
                    VertexId p = stack.back().first;
                    low[p] = std::min(low[p], low[done]);
                    if (p != root && low[done] >= disc[p]) ap[p] = 1;
                }
            }
        }
        if (root_children > 1) ap[root] = 1;
    }
    std::vector<VertexId> out;
    for (VertexId v : g.vertices())
        if (ap[v]) out.push_back(v);
    return out;
}

} // namespace

bool BRTGraph::band_flipped(VertexId v) const {
    auto it = blue.find(v);
    require(it != blue.end(), Err::Internal, "band_flipped: not a blue vertex");
    int dir = cyclic_cut_direction(g.vertex(v).rot, it->second.band_order);
    require(dir >= 0, Err::OrderConflict, "band order inconsistent with rotation");
    return dir == 1;
}

BRTGraph brt_from_red(const PlaneGraph& g) {
    BRTGraph b;
    b.g = g;
    for (VertexId v : b.g.vertices()) b.g.vertex(v).color = VColor::Red;
    return b;
}

std::vector<BRComponent> brt_components(const BRTGraph& b) {
    const PlaneGraph& g = b.g;
    std::vector<int> uf(g.vertex_capacity());
    for (int i = 0; i < (int)uf.size(); ++i) uf[i] = i;
    std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
    for (EdgeId e : g.edges()) {
        VertexId a = g.edge(e).ends[0], v = g.edge(e).ends[1];
        if (g.vertex(a).color == VColor::Red && g.vertex(v).color == VColor::Red)
            uf[find(a)] = find(v);
    }
    std::map<int, BRComponent> comps;
    for (VertexId v : g.vertices())
        if (g.vertex(v).color == VColor::Red) comps[find(v)].red_vertices.push_back(v);
    for (auto& [root, comp] : comps) {
        std::set<VertexId> blues;
        for (VertexId v : comp.red_vertices)
            for (DartId d : g.vertex(v).rot) {
                VertexId w = g.dart_head(d);
                if (g.vertex(w).color == VColor::Blue) blues.insert(w);
            }
        comp.blue_vertices.assign(blues.begin(), blues.end());
        std::vector<VertexId> keep = comp.red_vertices;
        keep.insert(keep.end(), comp.blue_vertices.begin(), comp.blue_vertices.end());
        comp.induced = subgraph_induced(g, keep);
        // A shared blue may bring along edges into other red components; the
        // vertex filter already removed those (their reds are absent).
    }
    std::vector<BRComponent> out;
    for (auto& [root, comp] : comps) out.push_back(std::move(comp));
    std::sort(out.begin(), out.end(), [](const BRComponent& a, const BRComponent& c) {
        return a.red_vertices.front() < c.red_vertices.front();
    });
    return out;
}

void make_brt(const BRTGraph& b) {
    const PlaneGraph& g = b.g;
    g.check_rotations();
    require(g.num_vertices() > 0, Err::Internal, "empty graph");
    require(g.connected(), Err::Internal, "BRT-graph must be connected");
    for (EdgeId e : g.edges()) {
        require(!g.is_loop(e), Err::LoopEdge, "loop edge " + std::to_string(g.edge(e).label));
        VColor c0 = g.vertex(g.edge(e).ends[0]).color;
        VColor c1 = g.vertex(g.edge(e).ends[1]).color;
        require(c0 != VColor::Uncolored && c1 != VColor::Uncolored, Err::Internal, "uncolored");
        require(!(c0 == VColor::Blue && c1 == VColor::Blue), Err::BlueBlueEdge,
                "blue-blue edge " + std::to_string(g.edge(e).label));
    }
    for (VertexId v : g.vertices()) {
        if (g.vertex(v).color == VColor::Red)
            require(g.degree(v) <= 12, Err::Internal, "red degree exceeds 12");
        if (g.vertex(v).color == VColor::Blue)
            require(b.blue.count(v) > 0, Err::Internal, "blue vertex without linear-order record");
    }
    for (auto& [v, rec] : b.blue) {
        require(g.vertex_alive(v) && g.vertex(v).color == VColor::Blue, Err::Internal,
                "stale blue record");
        require(cyclic_cut_direction(g.vertex(v).rot, rec.band_order) >= 0, Err::OrderConflict,
                "band order of blue " + std::to_string(v) + " inconsistent with rotation");
    }
    for (const BRComponent& comp : brt_components(b)) {
        if (comp.induced.num_edges() <= 1) continue;
        FaceSet fs = trace_faces(comp.induced);
        for (const Face& f : fs.faces) {
            require(f.size() <= 3, Err::UntriangulatedComponent,
                    "face of size " + std::to_string(f.size()) + " in component of red " +
                        std::to_string(comp.red_vertices.front()));
            std::set<VertexId> blues;
            for (DartId d : f.walk)
                if (comp.induced.vertex(comp.induced.dart_tail(d)).color == VColor::Blue)
                    blues.insert(comp.induced.dart_tail(d));
            require(blues.size() <= 1, Err::UntriangulatedComponent,
                    "component face with two blue vertices");
        }
    }
    for (VertexId v : articulation_points(g))
        require(g.vertex(v).color == VColor::Blue, Err::UntriangulatedComponent,
                "red cut vertex " + std::to_string(v));
    int reds = 0, blues = 0;
    for (VertexId v : g.vertices()) (g.vertex(v).color == VColor::Red ? reds : blues)++;
    if (reds + blues >= 4)
        require(blues <= 3 * reds, Err::Internal, "blue/red population bound violated");
}

ComponentTree build_tree(const BRTGraph& b) {
    ComponentTree t;
    auto comps = brt_components(b);
    t.n_components = (int)comps.size();
    std::map<VertexId, int> blue_node;
    for (int i = 0; i < t.n_components; ++i) {
        t.component_red.push_back(comps[i].red_vertices);
        for (VertexId bv : comps[i].blue_vertices) {
            if (!blue_node.count(bv)) {
                blue_node[bv] = t.n_components + (int)t.blue_nodes.size();
                t.blue_nodes.push_back(bv);
            }
            t.edges.push_back({i, blue_node[bv]});
        }
    }
    int nodes = t.n_components + (int)t.blue_nodes.size();
    require((int)t.edges.size() == nodes - 1 || nodes <= 1, Err::TreeViolation,
            "component incidence graph has a cycle");
    if (nodes > 1) {
        std::vector<std::vector<int>> adj(nodes);
        for (auto [a, c] : t.edges) adj[a].push_back(c), adj[c].push_back(a);
        std::vector<char> vis(nodes, 0);
        std::queue<int> q;
        q.push(0);
        vis[0] = 1;
        int cnt = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj[v])
                if (!vis[w]) vis[w] = 1, ++cnt, q.push(w);
        }
        require(cnt == nodes, Err::TreeViolation, "component tree disconnected");
    }
    return t;
}

bool is_cycle_in(const PlaneGraph& g, const Cycle& c) {
    int n = c.length();
    if (n < 2 || (int)c.edges.size() != n) return false;
    std::set<VertexId> seen(c.verts.begin(), c.verts.end());
    if ((int)seen.size() != n) return false;
    std::set<EdgeId> es(c.edges.begin(), c.edges.end());
    if ((int)es.size() != n) return false;
    for (int i = 0; i < n; ++i) {
        EdgeId e = c.edges[i];
        if (!g.edge_alive(e)) return false;
        VertexId a = c.verts[i], v = c.verts[(i + 1) % n];
        VertexId x = g.edge(e).ends[0], y = g.edge(e).ends[1];
        if (!((x == a && y == v) || (x == v && y == a))) return false;
    }
    return true;
}

namespace {

// The third edge closing (uv, vw) into a face triangle, or -1.
EdgeId empty_triangle_close(const FaceSet& fs, EdgeId uv, EdgeId vw) {
    for (const Face& f : fs.faces) {
        if (f.size() != 3) continue;
        std::set<EdgeId> es;
        for (DartId d : f.walk) es.insert(dart_edge(d));
        if (es.count(uv) && es.count(vw) && es.size() == 3) {
            for (EdgeId e : es)
                if (e != uv && e != vw) return e;
        }
    }
    return -1;
}

} // namespace

bool is_normal_cycle(const BRTGraph& b, const Cycle& c) {
    if (!is_cycle_in(b.g, c) || c.length() < 2) return false;
    FaceSet fs = trace_faces(b.g);
    int n = c.length();
    if (n == 3) {
        bool all_red = true;
        for (VertexId v : c.verts) all_red &= b.g.vertex(v).color == VColor::Red;
        if (all_red) {
            for (const Face& f : fs.faces) {
                if (f.size() != 3) continue;
                std::set<EdgeId> es;
                for (DartId d : f.walk) es.insert(dart_edge(d));
                if (es == std::set<EdgeId>(c.edges.begin(), c.edges.end())) return false;
            }
        }
        return true;
    }
    for (int i = 0; i < n; ++i) {
        VertexId u = c.verts[i], v = c.verts[(i + 1) % n], w = c.verts[(i + 2) % n];
        if (b.g.vertex(u).color != VColor::Red || b.g.vertex(v).color != VColor::Red ||
            b.g.vertex(w).color != VColor::Red)
            continue;
        EdgeId close = empty_triangle_close(fs, c.edges[i], c.edges[(i + 1) % n]);
        if (close != -1) return false;
    }
    return true;
}

Cycle normalize_cycle(const BRTGraph& b, const Cycle& c0) {
    require(is_cycle_in(b.g, c0), Err::Internal, "normalize_cycle: not a cycle");
    Cycle c = c0;
    bool changed = true;
    FaceSet fs = trace_faces(b.g);
    while (changed && c.length() > 3) {
        changed = false;
        int n = c.length();
        for (int i = 0; i < n; ++i) {
            VertexId u = c.verts[i], v = c.verts[(i + 1) % n], w = c.verts[(i + 2) % n];
            (void)u;
            (void)w;
            if (b.g.vertex(c.verts[i]).color != VColor::Red ||
                b.g.vertex(v).color != VColor::Red ||
                b.g.vertex(c.verts[(i + 2) % n]).color != VColor::Red)
                continue;
            EdgeId close = empty_triangle_close(fs, c.edges[i], c.edges[(i + 1) % n]);
            if (close == -1) continue;
            Cycle next;
            for (int j = 0; j < n; ++j) {
                if (j == (i + 1) % n) continue;
                next.verts.push_back(c.verts[j]);
                EdgeId e = (j == i) ? close : c.edges[j];
                next.edges.push_back(e);
            }
            c = next;
            changed = true;
            break;
        }
    }
    require(is_normal_cycle(b, c), Err::NotNormal,
            "cycle cannot be normalized (it shrinks onto a face boundary)");
    return c;
}

// ───────────────────────── push-off construction ─────────────────────────

namespace {

struct RichItem {
    PushItem::Kind kind;
    EdgeId edge = -1;       // Cross
    VertexId near_red = -1; // Cross: the gamma-red next to the crossing
    DartId near_dart = -1;
    VertexId blue = -1; // Blue passage
    std::vector<DartId> left_darts;
    std::vector<DartId> right_darts; // [d_in, chords..., d_out]
};

struct WalkStep {
    VertexId v;
    DartId d_in, d_out;
};

Cycle canonicalize(const PlaneGraph& g, const Cycle& c) {
    int n = c.length();
    int start = 0;
    for (int i = 1; i < n; ++i)
        if (c.verts[i] < c.verts[start]) start = i;
    Cycle fwd, rev;
    for (int i = 0; i < n; ++i) {
        fwd.verts.push_back(c.verts[(start + i) % n]);
        fwd.edges.push_back(c.edges[(start + i) % n]);
    }
    for (int i = 0; i < n; ++i) {
        rev.verts.push_back(c.verts[((start - i) % n + n) % n]);
        rev.edges.push_back(c.edges[((start - i - 1) % n + n) % n]);
    }
    if (g.edge(fwd.edges[0]).label <= g.edge(rev.edges[0]).label) return fwd;
    return rev;
}

std::vector<WalkStep> walk_of(const PlaneGraph& g, const Cycle& c) {
    int n = c.length();
    std::vector<WalkStep> w(n);
    for (int i = 0; i < n; ++i) {
        WalkStep& s = w[i];
        s.v = c.verts[i];
        EdgeId eo = c.edges[i], ei = c.edges[(i - 1 + n) % n];
        if (eo == ei) {
            // Length-2 cycle: the two parallel edges; darts distinguished by end.
        }
        s.d_out = g.edge(eo).ends[0] == s.v ? make_dart(eo, 0) : make_dart(eo, 1);
        s.d_in = g.edge(ei).ends[0] == s.v ? make_dart(ei, 0) : make_dart(ei, 1);
        require(g.dart_tail(s.d_out) == s.v && g.dart_tail(s.d_in) == s.v, Err::Internal,
                "cycle walk darts");
    }
    return w;
}

std::vector<DartId> ccw_between(const PlaneGraph& g, DartId from, DartId to) {
    std::vector<DartId> out;
    DartId d = g.rot_next(from);
    while (d != to) {
        out.push_back(d);
        d = g.rot_next(d);
        require((int)out.size() <= g.degree(g.dart_tail(from)), Err::Internal, "ccw_between");
    }
    return out;
}

std::vector<RichItem> raw_sequence(const BRTGraph& b, const Cycle& c) {
    const PlaneGraph& g = b.g;
    std::vector<RichItem> seq;
    for (const WalkStep& s : walk_of(g, c)) {
        if (g.vertex(s.v).color == VColor::Red) {
            auto left = ccw_between(g, s.d_out, s.d_in); // y_1..y_q
            for (int j = (int)left.size() - 1; j >= 0; --j) {
                RichItem it;
                it.kind = PushItem::Kind::Cross;
                it.edge = dart_edge(left[j]);
                it.near_red = s.v;
                it.near_dart = left[j];
                seq.push_back(it);
            }
        } else {
            RichItem it;
            it.kind = PushItem::Kind::Blue;
            it.blue = s.v;
            it.left_darts = ccw_between(g, s.d_out, s.d_in);
            it.right_darts.push_back(s.d_in);
            auto z = ccw_between(g, s.d_in, s.d_out);
            it.right_darts.insert(it.right_darts.end(), z.begin(), z.end());
            it.right_darts.push_back(s.d_out);
            seq.push_back(it);
        }
    }
    return seq;
}

void cancel_empty_digons(std::vector<RichItem>& seq) {
    bool changed = true;
    while (changed && seq.size() >= 2) {
        changed = false;
        int n = (int)seq.size();
        for (int i = 0; i < n; ++i) {
            int j = (i + 1) % n;
            if (i == j) break;
            if (seq[i].kind == PushItem::Kind::Cross && seq[j].kind == PushItem::Kind::Cross &&
                seq[i].edge == seq[j].edge) {
                if (i < j) {
                    seq.erase(seq.begin() + j);
                    seq.erase(seq.begin() + i);
                } else {
                    seq.erase(seq.begin() + i);
                    seq.erase(seq.begin() + j);
                }
                changed = true;
                break;
            }
        }
    }
}

} // namespace

CrossingSequence push_off(const BRTGraph& b, const Cycle& c) {
    require(is_normal_cycle(b, c), Err::NotNormal, "push_off needs a normal cycle");
    Cycle cc = canonicalize(b.g, c);
    auto seq = raw_sequence(b, cc);
    cancel_empty_digons(seq);
    CrossingSequence out;
    for (const RichItem& it : seq) {
        PushItem p;
        p.kind = it.kind;
        p.edge = it.edge;
        p.blue = it.blue;
        p.label = it.edge >= 0 ? b.g.edge(it.edge).label : -1;
        out.push_back(p);
    }
    return out;
}

// ───────────────────────── edge-cut subdivision ──────────────────────────

namespace {

struct Sides {
    std::vector<int> side; // 0 left, 1 right, 2 gamma-red, 3 gamma-blue
};

Sides assign_sides(const BRTGraph& b, const Cycle& c, const std::vector<RichItem>& seq) {
    const PlaneGraph& g = b.g;
    Sides s;
    s.side.assign(g.vertex_capacity(), -1);
    std::set<VertexId> on_cycle(c.verts.begin(), c.verts.end());
    for (VertexId v : c.verts)
        s.side[v] = g.vertex(v).color == VColor::Red ? 2 : 3;
    std::map<EdgeId, int> crossings;
    for (const RichItem& it : seq)
        if (it.kind == PushItem::Kind::Cross) crossings[it.edge]++;

    std::vector<std::pair<VertexId, int>> seeds;
    auto seed = [&](VertexId v, int side) {
        if (s.side[v] >= 2) return;
        if (s.side[v] == -1) seeds.push_back({v, side});
        else
            require(s.side[v] == side, Err::Internal, "push-off side conflict");
    };
    for (const RichItem& it : seq) {
        if (it.kind == PushItem::Kind::Cross) {
            if (crossings[it.edge] == 2) continue; // chord between gamma reds
            const auto& e = g.edge(it.edge);
            VertexId far = e.ends[0] == it.near_red ? e.ends[1] : e.ends[0];
            seed(far, 0);
        } else {
            for (DartId d : it.left_darts) seed(g.dart_head(d), 0);
            for (DartId d : it.right_darts) seed(g.dart_head(d), 1);
        }
    }
    for (const WalkStep& st : walk_of(g, c)) {
        if (g.vertex(st.v).color != VColor::Red) continue;
        for (DartId d : ccw_between(g, st.d_in, st.d_out)) seed(g.dart_head(d), 1);
        // Cancelled (hugged) chords sit in the left wedge but stay right;
        // their endpoints are on the cycle, so no seeding is needed.
        for (DartId d : ccw_between(g, st.d_out, st.d_in)) {
            if (!crossings.count(dart_edge(d))) {
                VertexId far = g.dart_head(d);
                require(on_cycle.count(far) > 0, Err::Internal,
                        "uncrossed left dart to an off-cycle vertex");
            }
        }
    }
    std::queue<VertexId> q;
    for (auto [v, side] : seeds) {
        if (s.side[v] == -1) {
            s.side[v] = side;
            q.push(v);
        }
    }
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop();
        for (DartId d : g.vertex(v).rot) {
            VertexId w = g.dart_head(d);
            if (s.side[w] >= 2) continue;
            if (crossings.count(dart_edge(d))) continue;
            if (s.side[w] == -1) {
                s.side[w] = s.side[v];
                q.push(w);
            } else {
                require(s.side[w] == s.side[v], Err::Internal, "side BFS conflict");
            }
        }
    }
    for (VertexId v : g.vertices())
        require(s.side[v] != -1, Err::Internal, "unassigned side for vertex " + std::to_string(v));
    return s;
}

} // namespace

Subdivision edge_cut_subdivide(const BRTGraph& b, const Cycle& c0) {
    const PlaneGraph& g = b.g;
    require(is_normal_cycle(b, c0), Err::NotNormal, "edge_cut_subdivide");
    Cycle c = canonicalize(g, c0);
    auto seq = raw_sequence(b, c);
    cancel_empty_digons(seq);
    if (seq.empty()) {
        // The chosen side hugs a face; push off to the other side instead.
        std::reverse(c.verts.begin(), c.verts.end());
        std::rotate(c.verts.begin(), c.verts.end() - 1, c.verts.end());
        std::reverse(c.edges.begin(), c.edges.end());
        seq = raw_sequence(b, c);
        cancel_empty_digons(seq);
    }
    require(!seq.empty(), Err::InvalidSelection,
            "cycle bounds faces on both sides: the cut would separate nothing");
    Sides sides = assign_sides(b, c, seq);

    std::map<EdgeId, std::vector<int>> cross_of_edge;
    for (int i = 0; i < (int)seq.size(); ++i)
        if (seq[i].kind == PushItem::Kind::Cross) cross_of_edge[seq[i].edge].push_back(i);

    // Canonical start: the item after the lowest-labeled crossed edge.
    if (!seq.empty()) {
        int best = -1;
        for (int i = 0; i < (int)seq.size(); ++i) {
            if (seq[i].kind != PushItem::Kind::Cross) continue;
            if (best == -1 || g.edge(seq[i].edge).label < g.edge(seq[best].edge).label) best = i;
        }
        if (best == -1) best = (int)seq.size() - 1;
        std::rotate(seq.begin(), seq.begin() + (best + 1) % seq.size(), seq.end());
        cross_of_edge.clear();
        for (int i = 0; i < (int)seq.size(); ++i)
            if (seq[i].kind == PushItem::Kind::Cross) cross_of_edge[seq[i].edge].push_back(i);
    }

    Subdivision out;
    out.instr.kind = GluingInstruction::Kind::EdgeCut;
    GluingInstruction& N = out.instr;

    out.left.g = g;
    out.right.g = g;
    out.left.blue = b.blue;
    out.right.blue = b.blue;
    PlaneGraph& L = out.left.g;
    PlaneGraph& R = out.right.g;
    VertexId vbL = L.add_vertex(VColor::Blue);
    VertexId vbR = R.add_vertex(VColor::Blue);
    N.blue_left = vbL;
    N.blue_right = vbR;

    for (const RichItem& it : seq) {
        GluingInstruction::Item item;
        item.kind = it.kind;
        if (it.kind == PushItem::Kind::Cross) {
            item.parent_edge = it.edge;
            item.label = g.edge(it.edge).label;
        } else {
            item.blue = it.blue;
            for (DartId d : it.left_darts) {
                item.left_labels.push_back(g.dart_label(d));
                item.left_parent_darts.push_back(d);
            }
            for (DartId d : it.right_darts) {
                item.right_labels.push_back(g.dart_label(d));
                item.right_parent_darts.push_back(d);
            }
            for (DartId d : b.blue.at(it.blue).band_order)
                item.band_order.push_back(g.dart_label(d));
        }
        N.items.push_back(item);
    }

    // ---- right child ---------------------------------------------------
    std::vector<DartId> right_rot;
    for (int i = 0; i < (int)seq.size(); ++i) {
        const RichItem& it = seq[i];
        if (it.kind == PushItem::Kind::Cross) {
            EdgeId pe = it.edge;
            if (cross_of_edge[pe].size() == 1) {
                // Once-cut: the stub keeps the parent id; its far end moves
                // onto the new blue (the far vertex leaves this child anyway).
                int near_end = dart_end(it.near_dart);
                VertexId old_far = g.edge(pe).ends[near_end ^ 1];
                R.edge(pe).ends[near_end ^ 1] = vbR;
                auto& rot = R.vertex(old_far).rot;
                rot.erase(std::remove(rot.begin(), rot.end(), dart_mate(it.near_dart)), rot.end());
                right_rot.push_back(dart_mate(it.near_dart));
            } else {
                // Twice-cut chord: both stubs are fresh edges; the parent
                // edge disappears from this child entirely.
                EdgeId stub = R.add_edge_detached(it.near_red, vbR, g.edge(pe).label,
                                                  g.edge(pe).artificial);
                auto& rot = R.vertex(it.near_red).rot;
                auto pos = std::find(rot.begin(), rot.end(), it.near_dart);
                require(pos != rot.end(), Err::Internal, "stub dart replace");
                *pos = make_dart(stub, 0);
                right_rot.push_back(make_dart(stub, 1));
                if (cross_of_edge[pe][1] == i) R.edge(pe).alive = false;
            }
        } else {
            for (DartId d : it.right_darts) {
                R.edge(dart_edge(d)).ends[dart_end(d)] = vbR;
                right_rot.push_back(d);
            }
        }
    }
    R.vertex(vbR).rot = right_rot;

    // ---- left child ------------------------------------------------------
    struct LeftSlot {
        GluingInstruction::Anchor anchor;
        DartId dart = -1;
        EdgeId edge = -1;
        VertexId blue_far = -1;
    };
    std::vector<LeftSlot> left_slots;
    for (int i = (int)seq.size() - 1; i >= 0; --i) {
        const RichItem& it = seq[i];
        if (it.kind == PushItem::Kind::Cross) {
            LeftSlot sl;
            sl.anchor = {i, -1};
            sl.edge = it.edge;
            const auto& e = g.edge(it.edge);
            VertexId far = e.ends[0] == it.near_red ? e.ends[1] : e.ends[0];
            bool twice = cross_of_edge[it.edge].size() == 2;
            if (twice) {
                sl.dart = -1;
            } else if (sides.side[far] == 3) {
                sl.dart = -1;
                sl.blue_far = far;
            } else {
                require(sides.side[far] == 0, Err::Internal, "far end of cut edge not left");
                L.edge(it.edge).ends[dart_end(it.near_dart)] = vbL;
                sl.dart = it.near_dart;
            }
            left_slots.push_back(sl);
        } else {
            for (int k = 0; k < (int)it.left_darts.size(); ++k) {
                LeftSlot sl;
                sl.anchor = {i, k};
                DartId d = it.left_darts[k];
                sl.edge = dart_edge(d);
                if (cross_of_edge.count(dart_edge(d))) {
                    sl.dart = -1;
                    sl.blue_far = it.blue;
                } else {
                    L.edge(dart_edge(d)).ends[dart_end(d)] = vbL;
                    sl.dart = d;
                }
                left_slots.push_back(sl);
            }
        }
    }

    // Loop records from holes.
    {
        std::map<EdgeId, std::vector<GluingInstruction::Anchor>> hole_anchors;
        for (const LeftSlot& sl : left_slots)
            if (sl.dart == -1) hole_anchors[sl.edge].push_back(sl.anchor);
        for (auto& [e, anchors] : hole_anchors) {
            GluingInstruction::Loop lp;
            lp.left = true;
            lp.label = g.edge(e).label;
            lp.parent_edge = e;
            require(anchors.size() == 2, Err::Internal, "loop without both anchors");
            lp.a = anchors[0];
            lp.b = anchors[1];
            for (const LeftSlot& sl : left_slots)
                if (sl.edge == e && sl.blue_far != -1) lp.passage_blue = sl.blue_far;
            N.loops.push_back(lp);
        }
    }

    std::vector<DartId> left_rot;
    for (const LeftSlot& sl : left_slots)
        if (sl.dart != -1) left_rot.push_back(sl.dart);
    L.vertex(vbL).rot = left_rot;

    auto prune = [&](PlaneGraph& G, BRTGraph& child, bool left_child, VertexId vb) {
        auto keep_side = [&](VertexId x) {
            if (x == vb) return true;
            int sd = sides.side[x];
            if (sd == 2) return !left_child;
            if (sd == 3) return false;
            return left_child ? sd == 0 : sd == 1;
        };
        for (EdgeId e : g.edges()) {
            if (!G.edge_alive(e)) continue;
            VertexId a = G.edge(e).ends[0], v = G.edge(e).ends[1];
            if (!keep_side(a) || !keep_side(v)) {
                for (int s = 0; s < 2; ++s) {
                    VertexId x = G.edge(e).ends[s];
                    auto& rot = G.vertex(x).rot;
                    rot.erase(std::remove(rot.begin(), rot.end(), make_dart(e, s)), rot.end());
                }
                G.edge(e).alive = false;
            }
        }
        for (VertexId v : g.vertices()) {
            if (!keep_side(v)) {
                G.vertex(v).rot.clear();
                G.vertex(v).alive = false;
                child.blue.erase(v);
            }
        }
    };
    prune(L, out.left, true, vbL);
    prune(R, out.right, false, vbR);

    // ---- blue-blue contractions on the left child -------------------------
    {
        std::map<VertexId, std::vector<DartId>> merge;
        for (DartId d : L.vertex(vbL).rot) {
            VertexId w = L.dart_head(d);
            if (L.vertex(w).color == VColor::Blue && w != vbL) merge[w].push_back(d);
        }
        for (auto& [w, darts] : merge) {
            DartId cd = darts[0];
            for (DartId d : darts)
                if (L.dart_label(d) < L.dart_label(cd)) cd = d;
            GluingInstruction::Contraction rec;
            rec.left = true;
            rec.blue = w;
            rec.contracted_label = L.dart_label(cd);
            for (const LeftSlot& sl : left_slots)
                if (sl.dart == cd) rec.contracted_at = sl.anchor;
            auto wrot = L.vertex(w).rot;
            auto itf = std::find(wrot.begin(), wrot.end(), dart_mate(cd));
            require(itf != wrot.end(), Err::Internal, "contraction dart");
            std::rotate(wrot.begin(), itf, wrot.end());
            for (DartId d : wrot) rec.rot_labels.push_back(L.dart_label(d));
            for (DartId d : out.left.blue.at(w).band_order)
                rec.band_order.push_back(g.dart_label(d));
            int ci = (int)N.contractions.size();

            auto& rot = L.vertex(vbL).rot;
            auto pos = std::find(rot.begin(), rot.end(), cd);
            require(pos != rot.end(), Err::Internal, "contraction splice");
            std::vector<DartId> tail(wrot.begin() + 1, wrot.end());
            for (DartId d : tail) L.edge(dart_edge(d)).ends[dart_end(d)] = vbL;
            pos = rot.erase(pos);
            rot.insert(pos, tail.begin(), tail.end());
            L.edge(dart_edge(cd)).alive = false;
            L.vertex(w).rot.clear();
            L.vertex(w).alive = false;
            out.left.blue.erase(w);

            // Loops created by the merge: the other cut edges of w.
            std::map<EdgeId, int> cnt;
            for (DartId d : rot) cnt[dart_edge(d)]++;
            for (auto& [e, k] : cnt) {
                if (k != 2) continue;
                GluingInstruction::Loop lp;
                lp.left = true;
                lp.label = L.edge(e).label;
                lp.parent_edge = e;
                bool have_a = false;
                for (const LeftSlot& sl : left_slots)
                    if (sl.dart != -1 && dart_edge(sl.dart) == e) {
                        lp.a = sl.anchor;
                        have_a = true;
                    }
                require(have_a, Err::Internal, "merge loop anchor");
                for (int j = 1; j < (int)wrot.size(); ++j)
                    if (dart_edge(wrot[j]) == e) {
                        lp.b = rec.contracted_at;
                        lp.b.slot = 1000 + j;
                    }
                require(lp.b.slot >= 1000, Err::Internal, "merge loop sub-slot");
                N.loops.push_back(lp);
                rot.erase(std::remove_if(rot.begin(), rot.end(),
                                         [&, e = e](DartId d) { return dart_edge(d) == e; }),
                          rot.end());
                L.edge(e).alive = false;
            }
            (void)ci;
            N.contractions.push_back(rec);
        }
    }

    {
        BlueRecord recL, recR;
        recL.band_order = L.vertex(vbL).rot;
        std::reverse(recL.band_order.begin(), recL.band_order.end());
        recR.band_order = R.vertex(vbR).rot;
        out.left.blue[vbL] = recL;
        out.right.blue[vbR] = recR;
    }

    N.ws_left = out.left.standard_weight();
    N.ws_right = out.right.standard_weight();
    require(N.ws_left + N.ws_right == b.standard_weight(), Err::Internal,
            "standard weight not conserved");
    make_brt(out.left);
    make_brt(out.right);
    return out;
}

// ───────────────────────── vertex-cut subdivision ────────────────────────

Subdivision vertex_cut_subdivide(const BRTGraph& b, VertexId v,
                                 const std::vector<char>& dart_to_left) {
    const PlaneGraph& g = b.g;
    require(g.vertex_alive(v) && g.vertex(v).color == VColor::Blue, Err::NotCutVertex,
            "vertex cut needs a blue vertex");
    {
        auto arts = articulation_points(g);
        require(std::find(arts.begin(), arts.end(), v) != arts.end(), Err::NotCutVertex,
                "vertex " + std::to_string(v) + " is not a cut vertex");
    }
    const auto rot = g.vertex(v).rot;
    require(dart_to_left.size() == rot.size(), Err::InvalidSelection, "selection size");

    {
        std::vector<int> comp(g.vertex_capacity(), -1);
        int nc = 0;
        for (VertexId s : g.vertices()) {
            if (s == v || comp[s] != -1) continue;
            std::queue<VertexId> q;
            q.push(s);
            comp[s] = nc;
            while (!q.empty()) {
                VertexId x = q.front();
                q.pop();
                for (DartId d : g.vertex(x).rot) {
                    VertexId y = g.dart_head(d);
                    if (y != v && comp[y] == -1) {
                        comp[y] = nc;
                        q.push(y);
                    }
                }
            }
            ++nc;
        }
        std::map<int, char> comp_side;
        for (int i = 0; i < (int)rot.size(); ++i) {
            int cmp = comp[g.dart_head(rot[i])];
            auto it = comp_side.find(cmp);
            if (it == comp_side.end())
                comp_side[cmp] = dart_to_left[i];
            else
                require(it->second == dart_to_left[i], Err::InvalidSelection,
                        "selection splits a split component");
        }
        bool any_left = false, any_right = false;
        for (auto [cmp, sd] : comp_side) (sd ? any_left : any_right) = true;
        require(any_left && any_right, Err::InvalidSelection, "one side is empty");
    }

    Subdivision out;
    out.instr.kind = GluingInstruction::Kind::VertexCut;
    GluingInstruction& N = out.instr;
    N.cut_vertex = v;
    for (DartId d : rot) N.cut_rotation.push_back(g.dart_label(d));
    N.dart_side.assign(rot.size(), 0);
    for (int i = 0; i < (int)rot.size(); ++i) N.dart_side[i] = dart_to_left[i] ? 0 : 1;
    for (DartId d : b.blue.at(v).band_order) N.cut_band_order.push_back(g.dart_label(d));
    N.cut_band_flip = b.band_flipped(v);

    out.left.g = g;
    out.right.g = g;
    out.left.blue = b.blue;
    out.right.blue = b.blue;
    out.left.blue.erase(v);
    out.right.blue.erase(v);
    VertexId vbL = out.left.g.add_vertex(VColor::Blue);
    VertexId vbR = out.right.g.add_vertex(VColor::Blue);
    N.blue_left = vbL;
    N.blue_right = vbR;

    auto split = [&](BRTGraph& child, VertexId vb, bool left) {
        PlaneGraph& G = child.g;
        std::vector<DartId> new_rot;
        for (int i = 0; i < (int)rot.size(); ++i) {
            DartId d = rot[i];
            if ((dart_to_left[i] != 0) == left) {
                G.edge(dart_edge(d)).ends[dart_end(d)] = vb;
                new_rot.push_back(d);
            }
        }
        G.vertex(vb).rot = new_rot;
        G.vertex(v).rot.clear();
        G.vertex(v).alive = false;
        std::vector<char> keep(G.vertex_capacity(), 0);
        keep[vb] = 1;
        std::queue<VertexId> q;
        q.push(vb);
        while (!q.empty()) {
            VertexId x = q.front();
            q.pop();
            for (DartId d : G.vertex(x).rot) {
                VertexId y = G.dart_head(d);
                if (!keep[y]) {
                    keep[y] = 1;
                    q.push(y);
                }
            }
        }
        for (EdgeId e : G.edges())
            if (!keep[G.edge(e).ends[0]] || !keep[G.edge(e).ends[1]]) G.remove_edge(e);
        for (VertexId x : G.vertices())
            if (!keep[x]) {
                G.vertex(x).rot.clear();
                G.vertex(x).alive = false;
                child.blue.erase(x);
            }
        BlueRecord rec;
        for (DartId d : b.blue.at(v).band_order) {
            int i = -1;
            for (int j = 0; j < (int)rot.size(); ++j)
                if (rot[j] == d) i = j;
            require(i >= 0, Err::Internal, "band order dart missing");
            if ((dart_to_left[i] != 0) == left) rec.band_order.push_back(d);
        }
        child.blue[vb] = rec;
    };
    split(out.left, vbL, true);
    split(out.right, vbR, false);

    N.ws_left = out.left.standard_weight();
    N.ws_right = out.right.standard_weight();
    require(N.ws_left + N.ws_right == b.standard_weight(), Err::Internal, "weight conservation");
    make_brt(out.left);
    make_brt(out.right);
    return out;
}

// ───────────────────────────── reconstruction ────────────────────────────

namespace {

BRTGraph reconstruct_vertex_cut(const BRTGraph& left, const BRTGraph& right,
                                const GluingInstruction& N) {
    BRTGraph out;
    PlaneGraph& P = out.g;
    int cap = std::max(left.g.vertex_capacity(), right.g.vertex_capacity());
    cap = std::max(cap, N.cut_vertex + 1);
    while (P.vertex_capacity() < cap) P.add_vertex();
    for (int v = 0; v < P.vertex_capacity(); ++v) P.vertex(v).alive = false;
    P.vertex(N.cut_vertex).alive = true;
    P.vertex(N.cut_vertex).color = VColor::Blue;

    std::map<DartId, DartId> mapL, mapR;
    auto copy_side = [&](const BRTGraph& child, VertexId vb, std::map<DartId, DartId>& dmap) {
        for (VertexId v : child.g.vertices()) {
            if (v == vb) continue;
            require(!P.vertex(v).alive, Err::LabelMismatch, "vertex id collision");
            P.vertex(v).alive = true;
            P.vertex(v).color = child.g.vertex(v).color;
        }
        for (EdgeId e : child.g.edges()) {
            const auto& er = child.g.edge(e);
            VertexId a = er.ends[0] == vb ? N.cut_vertex : er.ends[0];
            VertexId bb = er.ends[1] == vb ? N.cut_vertex : er.ends[1];
            EdgeId pe = P.add_edge_detached(a, bb, er.label, er.artificial);
            dmap[make_dart(e, 0)] = make_dart(pe, 0);
            dmap[make_dart(e, 1)] = make_dart(pe, 1);
        }
        for (VertexId v : child.g.vertices()) {
            if (v == vb) continue;
            for (DartId d : child.g.vertex(v).rot) P.vertex(v).rot.push_back(dmap.at(d));
        }
    };
    copy_side(left, N.blue_left, mapL);
    copy_side(right, N.blue_right, mapR);

    const auto& rotL = left.g.vertex(N.blue_left).rot;
    const auto& rotR = right.g.vertex(N.blue_right).rot;
    int il = 0, ir = 0;
    std::vector<DartId> rot;
    for (int i = 0; i < (int)N.dart_side.size(); ++i) {
        DartId d;
        if (N.dart_side[i] == 0) {
            require(il < (int)rotL.size(), Err::OrderConflict, "left rotation short");
            d = mapL.at(rotL[il++]);
        } else {
            require(ir < (int)rotR.size(), Err::OrderConflict, "right rotation short");
            d = mapR.at(rotR[ir++]);
        }
        require(P.dart_label(d) == N.cut_rotation[i], Err::LabelMismatch,
                "vertex-cut label mismatch at slot " + std::to_string(i));
        rot.push_back(d);
    }
    require(il == (int)rotL.size() && ir == (int)rotR.size(), Err::OrderConflict,
            "rotation leftovers");
    P.vertex(N.cut_vertex).rot = rot;

    for (auto& [v, rec] : left.blue)
        if (v != N.blue_left) {
            BlueRecord r2;
            for (DartId d : rec.band_order) r2.band_order.push_back(mapL.at(d));
            out.blue[v] = r2;
        }
    for (auto& [v, rec] : right.blue)
        if (v != N.blue_right) {
            BlueRecord r2;
            for (DartId d : rec.band_order) r2.band_order.push_back(mapR.at(d));
            out.blue[v] = r2;
        }
    BlueRecord cutrec;
    {
        std::vector<char> used(rot.size(), 0);
        for (Label lbl : N.cut_band_order) {
            bool found = false;
            for (int i = 0; i < (int)rot.size() && !found; ++i) {
                if (!used[i] && P.dart_label(rot[i]) == lbl) {
                    used[i] = 1;
                    cutrec.band_order.push_back(rot[i]);
                    found = true;
                }
            }
            require(found, Err::LabelMismatch, "band order label missing");
        }
    }
    out.blue[N.cut_vertex] = cutrec;
    make_brt(out);
    return out;
}

} // namespace

BRTGraph reconstruct(const BRTGraph& left, const BRTGraph& right, const GluingInstruction& N) {
    if (N.kind == GluingInstruction::Kind::VertexCut)
        return reconstruct_vertex_cut(left, right, N);

    BRTGraph out;
    PlaneGraph& P = out.g;
    int cap = std::max(left.g.vertex_capacity(), right.g.vertex_capacity());
    for (const auto& item : N.items)
        if (item.kind == PushItem::Kind::Blue) cap = std::max(cap, item.blue + 1);
    for (const auto& rec : N.contractions) cap = std::max(cap, rec.blue + 1);
    while (P.vertex_capacity() < cap) P.add_vertex();
    for (int v = 0; v < P.vertex_capacity(); ++v) P.vertex(v).alive = false;

    std::map<DartId, DartId> mapL, mapR;
    auto copy_side = [&](const BRTGraph& child, VertexId vb, std::map<DartId, DartId>& dmap) {
        for (VertexId v : child.g.vertices()) {
            if (v == vb) continue;
            require(!P.vertex(v).alive, Err::LabelMismatch, "vertex collision");
            P.vertex(v).alive = true;
            P.vertex(v).color = child.g.vertex(v).color;
        }
        for (EdgeId e : child.g.edges()) {
            const auto& er = child.g.edge(e);
            if (er.ends[0] == vb || er.ends[1] == vb) continue;
            EdgeId pe = P.add_edge_detached(er.ends[0], er.ends[1], er.label, er.artificial);
            dmap[make_dart(e, 0)] = make_dart(pe, 0);
            dmap[make_dart(e, 1)] = make_dart(pe, 1);
        }
    };
    copy_side(left, N.blue_left, mapL);
    copy_side(right, N.blue_right, mapR);

    for (const auto& item : N.items)
        if (item.kind == PushItem::Kind::Blue) {
            P.vertex(item.blue).alive = true;
            P.vertex(item.blue).color = VColor::Blue;
        }
    for (const auto& rec : N.contractions) {
        P.vertex(rec.blue).alive = true;
        P.vertex(rec.blue).color = VColor::Blue;
    }

    // Parse child rotations at the cut blues against the slot layout.
    std::map<std::pair<int, int>, DartId> right_dart, left_dart;
    {
        const auto& rot = right.g.vertex(N.blue_right).rot;
        int pos = 0;
        for (int i = 0; i < (int)N.items.size(); ++i) {
            const auto& item = N.items[i];
            int slots = item.kind == PushItem::Kind::Cross ? 1 : (int)item.right_labels.size();
            for (int s = 0; s < slots; ++s) {
                require(pos < (int)rot.size(), Err::OrderConflict, "outer rotation too short");
                DartId d = rot[pos++];
                Label want = item.kind == PushItem::Kind::Cross ? item.label : item.right_labels[s];
                require(right.g.dart_label(d) == want, Err::LabelMismatch,
                        "outer boundary label mismatch");
                right_dart[{i, item.kind == PushItem::Kind::Cross ? -1 : s}] = d;
            }
        }
        require(pos == (int)rot.size(), Err::OrderConflict, "outer rotation too long");
    }
    {
        std::set<std::pair<int, int>> holes;
        for (const auto& lp : N.loops) {
            if (lp.b.slot < 1000) {
                holes.insert({lp.a.item, lp.a.slot});
                holes.insert({lp.b.item, lp.b.slot});
            } else {
                holes.insert({lp.a.item, lp.a.slot});
            }
        }
        std::map<std::pair<int, int>, int> contr_at;
        for (int ci = 0; ci < (int)N.contractions.size(); ++ci)
            contr_at[{N.contractions[ci].contracted_at.item,
                      N.contractions[ci].contracted_at.slot}] = ci;

        const auto& rot = left.g.vertex(N.blue_left).rot;
        int pos = 0;
        auto take = [&](Label want, const char* what) {
            require(pos < (int)rot.size(), Err::OrderConflict, "inner rotation too short");
            DartId d = rot[pos++];
            require(left.g.dart_label(d) == want, Err::LabelMismatch, what);
            return d;
        };
        for (int i = (int)N.items.size() - 1; i >= 0; --i) {
            const auto& item = N.items[i];
            int slots = item.kind == PushItem::Kind::Cross ? 1 : (int)item.left_labels.size();
            for (int s = 0; s < slots; ++s) {
                std::pair<int, int> key{i, item.kind == PushItem::Kind::Cross ? -1 : s};
                if (auto it = contr_at.find(key); it != contr_at.end()) {
                    const auto& rec = N.contractions[it->second];
                    for (int j = 1; j < (int)rec.rot_labels.size(); ++j) {
                        bool is_loop_sub = false;
                        for (const auto& lp : N.loops)
                            if (lp.b.slot >= 1000 && lp.b.item == rec.contracted_at.item &&
                                lp.b.slot == 1000 + j)
                                is_loop_sub = true;
                        if (is_loop_sub) continue;
                        DartId d = take(rec.rot_labels[j], "splice label mismatch");
                        left_dart[{-100 - it->second, j}] = d;
                    }
                    continue;
                }
                if (holes.count(key)) continue;
                Label want = item.kind == PushItem::Kind::Cross ? item.label : item.left_labels[s];
                DartId d = take(want, "inner boundary label mismatch");
                left_dart[key] = d;
            }
        }
        require(pos == (int)rot.size(), Err::OrderConflict, "inner rotation too long");
    }

    std::map<std::pair<int, int>, DartId> blue_slot_dart; // re-created blue rotations
    std::set<int> joined;

    auto stub_far = [&](DartId d) {
        return right.g.edge(dart_edge(d)).ends[dart_end(d) ^ 1];
    };

    // Loops first (they own their anchors).
    for (const auto& lp : N.loops) {
        if (lp.passage_blue == -1 && lp.b.slot < 1000) {
            // Twice-cut chord: join the two right stubs.
            DartId sa = right_dart.at({lp.a.item, -1});
            DartId sb = right_dart.at({lp.b.item, -1});
            EdgeId pe = P.add_edge_detached(stub_far(sa), stub_far(sb), lp.label,
                                            right.g.edge(dart_edge(sa)).artificial);
            mapR[dart_mate(sa)] = make_dart(pe, 0);
            mapR[dart_mate(sb)] = make_dart(pe, 1);
            joined.insert(lp.a.item);
            joined.insert(lp.b.item);
        } else if (lp.passage_blue != -1) {
            // Passage loop: the cross anchor is whichever of a/b is a cross.
            auto cross = lp.a.slot == -1 ? lp.a : lp.b;
            auto pass = lp.a.slot == -1 ? lp.b : lp.a;
            DartId stub = right_dart.at({cross.item, -1});
            EdgeId pe = P.add_edge_detached(stub_far(stub), lp.passage_blue, lp.label,
                                            right.g.edge(dart_edge(stub)).artificial);
            mapR[dart_mate(stub)] = make_dart(pe, 0);
            blue_slot_dart[{pass.item, pass.slot}] = make_dart(pe, 1);
            joined.insert(cross.item);
        } else {
            // Blue-merge loop: stub joins the absorbed blue at a splice slot.
            int ci = -1;
            for (int k = 0; k < (int)N.contractions.size(); ++k)
                if (N.contractions[k].contracted_at.item == lp.b.item) ci = k;
            require(ci >= 0, Err::Internal, "merge loop without contraction");
            DartId stub = right_dart.at({lp.a.item, -1});
            EdgeId pe = P.add_edge_detached(stub_far(stub), N.contractions[ci].blue, lp.label,
                                            right.g.edge(dart_edge(stub)).artificial);
            mapR[dart_mate(stub)] = make_dart(pe, 0);
            blue_slot_dart[{-1000 - ci, lp.b.slot - 1000}] = make_dart(pe, 1);
            joined.insert(lp.a.item);
        }
    }

    // Contracted edges re-expand.
    for (int ci = 0; ci < (int)N.contractions.size(); ++ci) {
        const auto& rec = N.contractions[ci];
        require(rec.contracted_at.slot == -1, Err::Internal, "contraction anchored off a cross");
        DartId stub = right_dart.at({rec.contracted_at.item, -1});
        EdgeId pe = P.add_edge_detached(stub_far(stub), rec.blue, rec.contracted_label,
                                        right.g.edge(dart_edge(stub)).artificial);
        mapR[dart_mate(stub)] = make_dart(pe, 0);
        blue_slot_dart[{-1000 - ci, 0}] = make_dart(pe, 1);
        joined.insert(rec.contracted_at.item);
    }

    // Plain cross rejoins.
    for (int i = 0; i < (int)N.items.size(); ++i) {
        const auto& item = N.items[i];
        if (item.kind != PushItem::Kind::Cross || joined.count(i)) continue;
        DartId stub = right_dart.at({i, -1});
        DartId lfar = left_dart.at({i, -1});
        VertexId far = left.g.edge(dart_edge(lfar)).ends[dart_end(lfar) ^ 1];
        require(left.g.dart_label(lfar) == item.label, Err::LabelMismatch, "rejoin label");
        EdgeId pe = P.add_edge_detached(stub_far(stub), far, item.label,
                                        right.g.edge(dart_edge(stub)).artificial);
        mapR[dart_mate(stub)] = make_dart(pe, 0);
        mapL[dart_mate(lfar)] = make_dart(pe, 1);
    }

    // Whole edges hanging off re-created blues.
    for (int ci = 0; ci < (int)N.contractions.size(); ++ci) {
        const auto& rec = N.contractions[ci];
        for (int j = 1; j < (int)rec.rot_labels.size(); ++j) {
            auto it = left_dart.find({-100 - ci, j});
            if (it == left_dart.end()) continue; // loop sub-slot
            DartId d = it->second;
            VertexId far = left.g.edge(dart_edge(d)).ends[dart_end(d) ^ 1];
            EdgeId pe = P.add_edge_detached(rec.blue, far, rec.rot_labels[j],
                                            left.g.edge(dart_edge(d)).artificial);
            blue_slot_dart[{-1000 - ci, j}] = make_dart(pe, 0);
            mapL[dart_mate(d)] = make_dart(pe, 1);
        }
    }
    for (int i = 0; i < (int)N.items.size(); ++i) {
        const auto& item = N.items[i];
        if (item.kind != PushItem::Kind::Blue) continue;
        for (int s = 0; s < (int)item.left_labels.size(); ++s) {
            auto it = left_dart.find({i, s});
            if (it == left_dart.end()) continue; // hole: loop end already made
            DartId d = it->second;
            VertexId far = left.g.edge(dart_edge(d)).ends[dart_end(d) ^ 1];
            EdgeId pe = P.add_edge_detached(item.blue, far, item.left_labels[s],
                                            left.g.edge(dart_edge(d)).artificial);
            blue_slot_dart[{i, s}] = make_dart(pe, 0);
            mapL[dart_mate(d)] = make_dart(pe, 1);
        }
        for (int s = 0; s < (int)item.right_labels.size(); ++s) {
            DartId d = right_dart.at({i, s});
            VertexId far = right.g.edge(dart_edge(d)).ends[dart_end(d) ^ 1];
            EdgeId pe = P.add_edge_detached(item.blue, far, item.right_labels[s],
                                            right.g.edge(dart_edge(d)).artificial);
            blue_slot_dart[{i, 1000 + s}] = make_dart(pe, 0);
            mapR[dart_mate(d)] = make_dart(pe, 1);
        }
    }

    auto emit_rotations = [&](const BRTGraph& child, VertexId vb,
                              const std::map<DartId, DartId>& dmap) {
        for (VertexId v : child.g.vertices()) {
            if (v == vb) continue;
            for (DartId d : child.g.vertex(v).rot) {
                auto it = dmap.find(d);
                require(it != dmap.end(), Err::Internal, "unmapped dart in reconstruction");
                P.vertex(v).rot.push_back(it->second);
            }
        }
    };
    emit_rotations(left, N.blue_left, mapL);
    emit_rotations(right, N.blue_right, mapR);

    for (int i = 0; i < (int)N.items.size(); ++i) {
        const auto& item = N.items[i];
        if (item.kind != PushItem::Kind::Blue) continue;
        auto& rot = P.vertex(item.blue).rot;
        for (int s = 0; s < (int)item.right_labels.size(); ++s)
            rot.push_back(blue_slot_dart.at({i, 1000 + s}));
        for (int s = 0; s < (int)item.left_labels.size(); ++s)
            rot.push_back(blue_slot_dart.at({i, s}));
    }
    for (int ci = 0; ci < (int)N.contractions.size(); ++ci) {
        const auto& rec = N.contractions[ci];
        auto& rot = P.vertex(rec.blue).rot;
        for (int j = 0; j < (int)rec.rot_labels.size(); ++j)
            rot.push_back(blue_slot_dart.at({-1000 - ci, j}));
    }

    for (auto& [v, rec] : left.blue)
        if (v != N.blue_left) {
            BlueRecord r2;
            for (DartId d : rec.band_order) r2.band_order.push_back(mapL.at(d));
            out.blue[v] = r2;
        }
    for (auto& [v, rec] : right.blue)
        if (v != N.blue_right) {
            BlueRecord r2;
            for (DartId d : rec.band_order) r2.band_order.push_back(mapR.at(d));
            out.blue[v] = r2;
        }
    auto order_from_labels = [&](VertexId v, const std::vector<Label>& labels) {
        BlueRecord r2;
        std::vector<char> used(P.vertex(v).rot.size(), 0);
        for (Label lbl : labels) {
            bool found = false;
            for (int i = 0; i < (int)P.vertex(v).rot.size() && !found; ++i) {
                if (!used[i] && P.dart_label(P.vertex(v).rot[i]) == lbl) {
                    used[i] = 1;
                    r2.band_order.push_back(P.vertex(v).rot[i]);
                    found = true;
                }
            }
            require(found, Err::LabelMismatch, "band label unresolved");
        }
        return r2;
    };
    for (const auto& item : N.items)
        if (item.kind == PushItem::Kind::Blue)
            out.blue[item.blue] = order_from_labels(item.blue, item.band_order);
    for (const auto& rec : N.contractions)
        out.blue[rec.blue] = order_from_labels(rec.blue, rec.band_order);

    make_brt(out);
    return out;
}

std::string GluingInstruction::dump() const {
    std::ostringstream os;
    if (kind == Kind::VertexCut) {
        os << "vertex-cut v=" << cut_vertex << " wsL=" << ws_left << " wsR=" << ws_right << '\n';
        os << "rotation:";
        for (std::size_t i = 0; i < cut_rotation.size(); ++i)
            os << ' ' << cut_rotation[i] << (dart_side[i] == 0 ? "L" : "R");
        os << '\n' << "order:";
        for (Label l : cut_band_order) os << ' ' << l;
        os << (cut_band_flip ? " (flipped)" : "") << '\n';
        return os.str();
    }
    os << "edge-cut wsL=" << ws_left << " wsR=" << ws_right << '\n';
    os << "outer:";
    for (const auto& it : items) {
        if (it.kind == PushItem::Kind::Cross)
            os << ' ' << it.label;
        else {
            os << " [b" << it.blue << ":";
            for (Label l : it.right_labels) os << ' ' << l;
            os << " ]";
        }
    }
    os << '\n' << "inner:";
    for (auto it = items.rbegin(); it != items.rend(); ++it) {
        if (it->kind == PushItem::Kind::Cross)
            os << ' ' << it->label;
        else {
            os << " [b" << it->blue << ":";
            for (Label l : it->left_labels) os << ' ' << l;
            os << " ]";
        }
    }
    os << '\n';
    for (const auto& lp : loops)
        os << "loop: label=" << lp.label << " at (" << lp.a.item << ',' << lp.a.slot << ")-("
           << lp.b.item << ',' << lp.b.slot << ")\n";
    for (const auto& ct : contractions) {
        os << "contract: blue=" << ct.blue << " label=" << ct.contracted_label << " rot=[";
        for (Label l : ct.rot_labels) os << ' ' << l;
        os << " ]\n";
    }
    return os.str();
}

} // namespace knotgrid
