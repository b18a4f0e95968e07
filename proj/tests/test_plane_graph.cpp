#include "doctest.h"

#include <algorithm>

#include "knotgrid/plane_graph.hpp"

using namespace knotgrid;

namespace {

// K4 drawn planar: outer triangle 0,1,2 with vertex 3 inside.
PlaneGraph k4_planar() {
    PlaneGraph g;
    for (int i = 0; i < 4; ++i) g.add_vertex();
    EdgeId e01 = g.add_edge_detached(0, 1, 1);
    EdgeId e12 = g.add_edge_detached(1, 2, 2);
    EdgeId e20 = g.add_edge_detached(2, 0, 3);
    EdgeId e03 = g.add_edge_detached(0, 3, 4);
    EdgeId e13 = g.add_edge_detached(1, 3, 5);
    EdgeId e23 = g.add_edge_detached(2, 3, 6);
    // Counterclockwise rotations for outer triangle 0(bottom left),
    // 1(bottom right), 2(top), 3(center).
    g.vertex(0).rot = {make_dart(e01, 0), make_dart(e03, 0), make_dart(e20, 1)};
    g.vertex(1).rot = {make_dart(e12, 0), make_dart(e13, 0), make_dart(e01, 1)};
    g.vertex(2).rot = {make_dart(e20, 0), make_dart(e23, 0), make_dart(e12, 1)};
    g.vertex(3).rot = {make_dart(e03, 1), make_dart(e13, 1), make_dart(e23, 1)};
    return g;
}

PlaneGraph theta_graph() {
    PlaneGraph g;
    g.add_vertex();
    g.add_vertex();
    EdgeId a = g.add_edge_detached(0, 1, 1);
    EdgeId b = g.add_edge_detached(0, 1, 2);
    EdgeId c = g.add_edge_detached(0, 1, 3);
    g.vertex(0).rot = {make_dart(a, 0), make_dart(b, 0), make_dart(c, 0)};
    g.vertex(1).rot = {make_dart(c, 1), make_dart(b, 1), make_dart(a, 1)};
    return g;
}

} // namespace

TEST_CASE("K4 planar drawing has 4 triangular faces") {
    PlaneGraph g = k4_planar();
    FaceSet fs = trace_faces(g);
    CHECK(fs.faces.size() == 4);
    for (const Face& f : fs.faces) CHECK(f.size() == 3);
}

TEST_CASE("theta graph has 3 digon faces") {
    PlaneGraph g = theta_graph();
    FaceSet fs = trace_faces(g);
    CHECK(fs.faces.size() == 3);
    for (const Face& f : fs.faces) CHECK(f.size() == 2);
}

TEST_CASE("face partition is independent of starting dart") {
    PlaneGraph g = k4_planar();
    FaceSet a = trace_faces(g);
    FaceSet b = trace_faces(g);
    // Same dart -> face-size association.
    for (EdgeId e : g.edges())
        for (int s = 0; s < 2; ++s) {
            DartId d = make_dart(e, s);
            CHECK(a.faces[a.face_of(d)].size() == b.faces[b.face_of(d)].size());
        }
}

TEST_CASE("corrupt rotation detected") {
    PlaneGraph g = theta_graph();
    g.vertex(0).rot.pop_back();
    CHECK_THROWS_AS(trace_faces(g), Error);
}

TEST_CASE("cyclic order isomorphism: identity and relabeled copy") {
    PlaneGraph g = k4_planar();
    auto w = cyclic_order_isomorphic(g, g);
    REQUIRE(w.has_value());
    for (VertexId v : g.vertices()) CHECK(w->vertex_map[v] == v);

    // Same map, different vertex ids (cyclically shifted construction).
    PlaneGraph h = k4_planar();
    CHECK(cyclic_order_isomorphic(g, h).has_value());
}

TEST_CASE("mirror image is rejected by the orientation-preserving check") {
    PlaneGraph g = k4_planar();
    PlaneGraph m = g;
    for (VertexId v : m.vertices())
        std::reverse(m.vertex(v).rot.begin(), m.vertex(v).rot.end());
    // K4's planar drawing happens to be isomorphic to its mirror only via a
    // relabeling that our label-respecting check forbids.
    CHECK_FALSE(cyclic_order_isomorphic(g, m).has_value());
    CHECK(cyclic_order_isomorphic(m, m).has_value());
}

TEST_CASE("subgraph induced by all / none / some vertices") {
    PlaneGraph g = k4_planar();
    PlaneGraph full = subgraph_induced(g, g.vertices());
    CHECK(cyclic_order_isomorphic(g, full).has_value());

    PlaneGraph empty = subgraph_induced(g, {});
    CHECK(empty.num_vertices() == 0);
    CHECK(empty.num_edges() == 0);

    PlaneGraph tri = subgraph_induced(g, {0, 1, 2});
    CHECK(tri.num_vertices() == 3);
    CHECK(tri.num_edges() == 3);
    // Rotation of kept vertices is the original cyclic order restricted.
    for (VertexId v : tri.vertices()) {
        std::vector<DartId> expect;
        for (DartId d : g.vertex(v).rot)
            if (g.dart_head(d) != 3) expect.push_back(d);
        CHECK(tri.vertex(v).rot == expect);
    }
    CHECK_THROWS_AS(subgraph_induced(g, {99}), Error);
}
