#include "doctest.h"

#include <map>
#include <queue>
#include <random>
#include <set>

#include "knotgrid/brt.hpp"
#include "knotgrid/diagram.hpp"
#include "knotgrid/triangulate.hpp"

using namespace knotgrid;

namespace {

const char* kTrefoil = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

BRTGraph trefoil_brt() {
    KnotDiagram d = parse_pd(kTrefoil);
    return brt_from_red(triangulate(d.shadow));
}

// All fundamental cycles of a BFS tree.
std::vector<Cycle> fundamental_cycles(const PlaneGraph& g) {
    std::map<VertexId, std::pair<VertexId, EdgeId>> par;
    std::vector<Cycle> out;
    if (g.num_vertices() == 0) return out;
    VertexId root = g.vertices().front();
    par[root] = {-1, -1};
    std::queue<VertexId> q;
    q.push(root);
    std::set<EdgeId> tree;
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop();
        for (DartId d : g.vertex(v).rot) {
            VertexId w = g.dart_head(d);
            if (!par.count(w)) {
                par[w] = {v, dart_edge(d)};
                tree.insert(dart_edge(d));
                q.push(w);
            }
        }
    }
    auto path_to_root = [&](VertexId v) {
        std::vector<std::pair<VertexId, EdgeId>> p;
        while (par[v].first != -1) {
            p.push_back({v, par[v].second});
            v = par[v].first;
        }
        p.push_back({v, -1});
        return p;
    };
    for (EdgeId e : g.edges()) {
        if (tree.count(e)) continue;
        VertexId a = g.edge(e).ends[0], b = g.edge(e).ends[1];
        if (a == b) continue;
        auto pa = path_to_root(a), pb = path_to_root(b);
        int ia = (int)pa.size() - 1, ib = (int)pb.size() - 1;
        while (ia > 0 && ib > 0 && pa[ia - 1].first == pb[ib - 1].first) --ia, --ib;
        Cycle c;
        for (int i = 0; i <= ia; ++i) c.verts.push_back(pa[i].first);
        for (int i = ib - 1; i >= 0; --i) c.verts.push_back(pb[i].first);
        for (std::size_t i = 0; i + 1 < c.verts.size(); ++i) {
            VertexId u = c.verts[i], w = c.verts[i + 1];
            EdgeId found = -1;
            for (DartId dd : g.vertex(u).rot)
                if (g.dart_head(dd) == w && tree.count(dart_edge(dd))) found = dart_edge(dd);
            if (found == -1)
                for (DartId dd : g.vertex(u).rot)
                    if (g.dart_head(dd) == w) found = dart_edge(dd);
            REQUIRE(found != -1);
            c.edges.push_back(found);
        }
        c.edges.push_back(e);
        if (c.length() >= 2 && is_cycle_in(g, c)) out.push_back(c);
    }
    return out;
}

void insert_in_face(PlaneGraph& g, const Face& f, Label& next) {
    VertexId x = g.add_vertex(VColor::Red);
    for (DartId d : f.walk) {
        VertexId v = g.dart_tail(d);
        EdgeId e = g.add_edge_detached(v, x, next++);
        auto& rot = g.vertex(v).rot;
        auto pos = std::find(rot.begin(), rot.end(), d);
        rot.insert(pos, make_dart(e, 0));
        g.vertex(x).rot.push_back(make_dart(e, 1));
    }
    std::reverse(g.vertex(x).rot.begin(), g.vertex(x).rot.end());
}

PlaneGraph base_triangle() {
    PlaneGraph g;
    for (int i = 0; i < 3; ++i) g.add_vertex(VColor::Red);
    EdgeId e01 = g.add_edge_detached(0, 1, 1);
    EdgeId e12 = g.add_edge_detached(1, 2, 2);
    EdgeId e20 = g.add_edge_detached(2, 0, 3);
    g.vertex(0).rot = {make_dart(e01, 0), make_dart(e20, 1)};
    g.vertex(1).rot = {make_dart(e12, 0), make_dart(e01, 1)};
    g.vertex(2).rot = {make_dart(e20, 0), make_dart(e12, 1)};
    return g;
}

// Random stacked (Apollonian-style) triangulation with n vertices, all red.
BRTGraph random_stacked(int n, unsigned seed) {
    PlaneGraph g = base_triangle();
    Label next = 4;
    std::mt19937 rng(seed);
    while (g.num_vertices() < n) {
        FaceSet fs = trace_faces(g);
        std::vector<int> tri;
        for (int i = 0; i < (int)fs.faces.size(); ++i) {
            std::set<VertexId> vs;
            bool ok = fs.faces[i].size() == 3;
            for (DartId d : fs.faces[i].walk) {
                vs.insert(g.dart_tail(d));
                ok &= g.degree(g.dart_tail(d)) <= 11; // keep red degrees <= 12
            }
            if (ok && vs.size() == 3) tri.push_back(i);
        }
        if (tri.empty()) break;
        insert_in_face(g, fs.faces[tri[rng() % tri.size()]], next);
    }
    trace_faces(g);
    return brt_from_red(g);
}

// Round-trips a cycle; returns false when the cycle is degenerate (cannot be
// normalized or bounds a face).
bool try_round_trip(const BRTGraph& b, const Cycle& c) {
    Cycle nc;
    try {
        nc = normalize_cycle(b, c);
    } catch (const Error& e) {
        if (e.code() == Err::NotNormal) return false;
        throw;
    }
    Subdivision sub;
    try {
        sub = edge_cut_subdivide(b, nc);
    } catch (const Error& e) {
        if (e.code() == Err::InvalidSelection) return false;
        throw;
    }
    BRTGraph back = reconstruct(sub.left, sub.right, sub.instr);
    auto w = cyclic_order_isomorphic(b.g, back.g);
    REQUIRE_MESSAGE(w.has_value(), "round trip failed:\n", b.g.dump(), "\n-- got --\n",
                    back.g.dump(), sub.instr.dump());
    return true;
}

} // namespace

TEST_CASE("make_brt accepts the triangulated trefoil shadow") {
    BRTGraph b = trefoil_brt();
    CHECK(b.standard_weight() == 3);
    make_brt(b);
    CHECK(brt_components(b).size() == 1);
}

TEST_CASE("make_brt rejects blue-blue edges") {
    PlaneGraph g;
    g.add_vertex(VColor::Blue);
    g.add_vertex(VColor::Blue);
    g.add_edge(0, 1, 1);
    BRTGraph b;
    b.g = g;
    b.blue[0].band_order = {make_dart(0, 0)};
    b.blue[1].band_order = {make_dart(0, 1)};
    CHECK_THROWS_WITH_AS(make_brt(b), doctest::Contains("BlueBlueEdge"), Error);
}

TEST_CASE("make_brt rejects an untriangulated component") {
    PlaneGraph g;
    for (int i = 0; i < 4; ++i) g.add_vertex(VColor::Red);
    for (int i = 0; i < 4; ++i) g.add_edge(i, (i + 1) % 4, i + 1);
    BRTGraph b;
    b.g = g;
    CHECK_THROWS_WITH_AS(make_brt(b), doctest::Contains("Untriangulated"), Error);
}

TEST_CASE("build_tree: single component") {
    BRTGraph b = trefoil_brt();
    ComponentTree t = build_tree(b);
    CHECK(t.n_components == 1);
    CHECK(t.blue_nodes.empty());
}

TEST_CASE("normal cycles: empty red triangles are shrunk or rejected") {
    BRTGraph b = random_stacked(8, 7);
    int usable = 0;
    for (const Cycle& c : fundamental_cycles(b.g)) {
        try {
            Cycle nc = normalize_cycle(b, c);
            CHECK(is_normal_cycle(b, nc));
            CHECK(nc.length() <= c.length());
            CHECK(nc.length() >= 2);
            ++usable;
        } catch (const Error& e) {
            CHECK(e.code() == Err::NotNormal);
        }
    }
    CHECK(usable > 0);
}

TEST_CASE("push_off properties on the triangulated trefoil shadow") {
    BRTGraph b = trefoil_brt();
    int checked = 0;
    for (const Cycle& c : fundamental_cycles(b.g)) {
        if (!is_normal_cycle(b, c)) continue;
        CrossingSequence seq = push_off(b, c);
        std::map<EdgeId, int> count;
        for (const PushItem& p : seq)
            if (p.kind == PushItem::Kind::Cross) count[p.edge]++;
        std::set<EdgeId> on_cycle(c.edges.begin(), c.edges.end());
        std::set<VertexId> cyc(c.verts.begin(), c.verts.end());
        for (auto [e, k] : count) {
            CHECK(!on_cycle.count(e));
            int ends_on = (int)cyc.count(b.g.edge(e).ends[0]) + (int)cyc.count(b.g.edge(e).ends[1]);
            CHECK(k <= (ends_on >= 2 ? 2 : 1));
        }
        for (std::size_t i = 0; i < seq.size() && seq.size() >= 2; ++i) {
            const PushItem& a = seq[i];
            const PushItem& nb = seq[(i + 1) % seq.size()];
            if (a.kind == PushItem::Kind::Cross && nb.kind == PushItem::Kind::Cross)
                CHECK(a.edge != nb.edge);
        }
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("edge-cut round trips on knot shadow triangulations") {
    for (const char* pd :
         {kTrefoil, "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)",
          "X(1,6,2,7) X(3,8,4,9) X(5,10,6,1) X(7,2,8,3) X(9,4,10,5)"}) {
        KnotDiagram d = parse_pd(pd);
        BRTGraph b = brt_from_red(triangulate(d.shadow));
        int tested = 0;
        for (const Cycle& c : fundamental_cycles(b.g))
            if (try_round_trip(b, c)) ++tested;
        CHECK(tested > 0);
    }
}

TEST_CASE("cycle around a single red vertex cuts off weight 1") {
    // Triangle 0,1,2 with 3 inside, then 4 inside face (0,1,3): the triangle
    // (0,1,3) encloses exactly vertex 4.
    PlaneGraph g = base_triangle();
    Label next = 4;
    FaceSet fs = trace_faces(g);
    int inner = fs.faces[0].size() == 3 ? 0 : 1;
    for (int i = 0; i < (int)fs.faces.size(); ++i)
        if (fs.faces[i].size() == 3) inner = i;
    insert_in_face(g, fs.faces[inner], next); // vertex 3
    fs = trace_faces(g);
    for (int i = 0; i < (int)fs.faces.size(); ++i) {
        std::set<VertexId> vs;
        for (DartId d : fs.faces[i].walk) vs.insert(g.dart_tail(d));
        if (vs == std::set<VertexId>{0, 1, 3}) {
            insert_in_face(g, fs.faces[i], next); // vertex 4
            break;
        }
    }
    BRTGraph b = brt_from_red(g);
    make_brt(b);
    // The cycle through 0,1,3.
    Cycle c;
    c.verts = {0, 1, 3};
    auto edge_between = [&](VertexId u, VertexId w) {
        for (DartId d : g.vertex(u).rot)
            if (g.dart_head(d) == w) return dart_edge(d);
        return -1;
    };
    c.edges = {edge_between(0, 1), edge_between(1, 3), edge_between(3, 0)};
    REQUIRE(is_cycle_in(g, c));
    REQUIRE(is_normal_cycle(b, c));
    Subdivision sub = edge_cut_subdivide(b, c);
    CHECK(std::min(sub.instr.ws_left, sub.instr.ws_right) == 1);
    CHECK(sub.instr.ws_left + sub.instr.ws_right == 5);
    BRTGraph back = reconstruct(sub.left, sub.right, sub.instr);
    CHECK(cyclic_order_isomorphic(b.g, back.g).has_value());
}

TEST_CASE("second-level cuts: children of cuts can be cut and reconstructed") {
    BRTGraph b = random_stacked(14, 11);
    auto cycles = fundamental_cycles(b.g);
    REQUIRE(!cycles.empty());
    Subdivision sub;
    bool have = false;
    for (const Cycle& c : cycles) {
        try {
            sub = edge_cut_subdivide(b, normalize_cycle(b, c));
            have = true;
            break;
        } catch (const Error&) {
        }
    }
    REQUIRE(have);
    for (BRTGraph* child : {&sub.left, &sub.right}) {
        if (child->standard_weight() < 3) continue;
        int tested = 0;
        for (const Cycle& c : fundamental_cycles(child->g)) {
            if (tested >= 4) break;
            if (try_round_trip(*child, c)) ++tested;
        }
    }
}

TEST_CASE("vertex cut on a star of components and round trip") {
    // Three digon lobes (one red each) sharing a blue hub.
    PlaneGraph g;
    VertexId hub = g.add_vertex(VColor::Blue);
    for (int k = 0; k < 3; ++k) {
        VertexId a = g.add_vertex(VColor::Red);
        g.add_edge(hub, a, 10 * (k + 1));
        g.add_edge(hub, a, 10 * (k + 1) + 1);
        // Fix rotation at a so the two parallel edges bound a digon.
    }
    BRTGraph b;
    b.g = g;
    b.blue[hub].band_order = g.vertex(hub).rot;
    make_brt(b);

    ComponentTree t = build_tree(b);
    CHECK(t.n_components == 3);
    CHECK(t.blue_nodes.size() == 1);

    std::vector<char> sel = {1, 1, 0, 0, 0, 0}; // first lobe left
    Subdivision sub = vertex_cut_subdivide(b, hub, sel);
    CHECK(sub.instr.ws_left == 1);
    CHECK(sub.instr.ws_right == 2);
    BRTGraph back = reconstruct(sub.left, sub.right, sub.instr);
    CHECK(cyclic_order_isomorphic(b.g, back.g).has_value());

    std::vector<char> bad = {1, 0, 1, 0, 0, 0};
    CHECK_THROWS_WITH_AS(vertex_cut_subdivide(b, hub, bad), doctest::Contains("InvalidSelection"),
                         Error);
}

TEST_CASE("reconstruct detects corrupted instruction") {
    BRTGraph b = trefoil_brt();
    for (const Cycle& c0 : fundamental_cycles(b.g)) {
        Cycle c;
        Subdivision sub;
        try {
            c = normalize_cycle(b, c0);
            sub = edge_cut_subdivide(b, c);
        } catch (const Error&) {
            continue;
        }
        GluingInstruction bad = sub.instr;
        bool mutated = false;
        for (auto& item : bad.items)
            if (!mutated && item.kind == PushItem::Kind::Cross) {
                item.label += 1000;
                mutated = true;
            }
        if (!mutated) continue;
        CHECK_THROWS_AS(reconstruct(sub.left, sub.right, bad), Error);
        return;
    }
    FAIL("no usable cycle");
}

TEST_CASE("randomized round trips over stacked triangulations and their children") {
    std::mt19937 rng(2024);
    int trips = 0;
    for (int iter = 0; iter < 40; ++iter) {
        BRTGraph b = random_stacked(5 + (int)(rng() % 18), (unsigned)rng());
        auto cycles = fundamental_cycles(b.g);
        if (cycles.empty()) continue;
        for (int k = 0; k < 2 && k < (int)cycles.size(); ++k)
            if (try_round_trip(b, cycles[rng() % cycles.size()])) ++trips;
        Subdivision sub;
        bool have = false;
        for (int k = 0; k < (int)cycles.size() && !have; ++k) {
            try {
                sub = edge_cut_subdivide(b, normalize_cycle(b, cycles[rng() % cycles.size()]));
                have = true;
            } catch (const Error&) {
            }
        }
        if (!have) continue;
        for (BRTGraph* child : {&sub.left, &sub.right}) {
            auto cc = fundamental_cycles(child->g);
            if (cc.empty()) continue;
            if (try_round_trip(*child, cc[rng() % cc.size()])) ++trips;
        }
    }
    CHECK(trips >= 80);
}
