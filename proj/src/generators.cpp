#include "knotgrid/generators.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace knotgrid {

PDCode torus2_pd(int k) {
    require(k >= 2, Err::MalformedCode, "torus2_pd needs k >= 2");
    // Close the 2-braid sigma_1^k.  Temporary arc ids per strand segment;
    // closure identifies the last outgoing pair with the first incoming pair.
    // Crossing with under-in a (position 1), over-in b (position 2), fresh
    // under-out c, over-out d: positive tuple X(a, d, c, b).
    int next = 1;
    int pos1 = next++, pos2 = next++;
    int first1 = pos1, first2 = pos2;
    struct Raw {
        int a, d, c, b;
    };
    std::vector<Raw> raws;
    for (int i = 0; i < k; ++i) {
        int c = next++, d = next++;
        raws.push_back({pos1, d, c, pos2});
        pos1 = d; // over-out returns to position 1
        pos2 = c; // under-out goes to position 2
    }
    // Closure: identify (pos1 -> first1), (pos2 -> first2).
    std::map<int, int> repl;
    repl[pos1] = first1;
    repl[pos2] = first2;
    auto res = [&](int x) {
        while (repl.count(x)) x = repl[x];
        return x;
    };
    // Renumber arcs 1..2k in order of appearance.
    std::map<int, int> dense;
    auto id = [&](int x) {
        x = res(x);
        auto it = dense.find(x);
        if (it != dense.end()) return it->second;
        int v = (int)dense.size() + 1;
        dense[x] = v;
        return v;
    };
    PDCode pd;
    for (const Raw& r : raws) {
        Crossing c{};
        c.arc = {id(r.a), id(r.d), id(r.c), id(r.b)};
        pd.crossings.push_back(c);
    }
    return pd;
}

namespace {

void insert_vertex_in_face(PlaneGraph& g, const Face& f, Label& next) {
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

PlaneGraph triangle() {
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

} // namespace

PlaneGraph random_maximal_planar(int n, unsigned seed) {
    require(n >= 3, Err::Internal, "need n >= 3");
    PlaneGraph g = triangle();
    Label next = 4;
    std::mt19937 rng(seed);
    // Insert into uniformly random faces; O(1) face bookkeeping via retrace
    // every batch to keep this simple but not quadratic in practice.
    while (g.num_vertices() < n) {
        FaceSet fs = trace_faces(g);
        std::vector<int> tri;
        for (int i = 0; i < (int)fs.faces.size(); ++i) {
            std::set<VertexId> vs;
            for (DartId d : fs.faces[i].walk) vs.insert(g.dart_tail(d));
            if (fs.faces[i].size() == 3 && vs.size() == 3) tri.push_back(i);
        }
        // Batch: insert into several distinct faces per retrace.
        std::set<int> used;
        int batch = std::max(1, (int)tri.size() / 2);
        for (int t = 0; t < batch && g.num_vertices() < n; ++t) {
            int f = tri[rng() % tri.size()];
            if (used.count(f)) continue;
            used.insert(f);
            insert_vertex_in_face(g, fs.faces[f], next);
        }
    }
    return g;
}

PlaneGraph disk_triangulation(int rings) {
    // Hub plus `rings` concentric 8-gons; annuli triangulated with spokes
    // (w[r][i], w[r-1][i]) and diagonals (w[r][i], w[r-1][i+1]).
    const int m = 8;
    PlaneGraph g;
    Label next = 1;
    VertexId hub = g.add_vertex(VColor::Red);
    std::vector<std::vector<VertexId>> w(rings + 1);
    w[0] = {hub};
    for (int r = 1; r <= rings; ++r)
        for (int i = 0; i < m; ++i) w[r].push_back(g.add_vertex(VColor::Red));

    std::map<std::pair<VertexId, VertexId>, EdgeId> eid;
    auto edge = [&](VertexId a, VertexId b) {
        auto key = std::minmax(a, b);
        auto it = eid.find({key.first, key.second});
        if (it != eid.end()) return it->second;
        EdgeId e = g.add_edge_detached(a, b, next++);
        eid[{key.first, key.second}] = e;
        return e;
    };
    auto dart_at = [&](VertexId v, VertexId to) {
        EdgeId e = edge(v, to);
        return g.edge(e).ends[0] == v ? make_dart(e, 0) : make_dart(e, 1);
    };
    for (int r = 1; r <= rings; ++r)
        for (int i = 0; i < m; ++i) {
            edge(w[r][i], w[r][(i + 1) % m]);
            edge(w[r][i], w[r - 1][r == 1 ? 0 : i]);
            if (r >= 2) edge(w[r][i], w[r - 1][(i + 1) % m]);
        }
    // Rotations, counterclockwise (out-spoke, ring+, in-diag, in-spoke,
    // ring-, out-diag), trimmed at the hub, first ring, and outer boundary.
    for (int i = 0; i < m; ++i) g.vertex(hub).rot.push_back(dart_at(hub, w[1][i]));
    for (int r = 1; r <= rings; ++r)
        for (int i = 0; i < m; ++i) {
            VertexId v = w[r][i];
            auto& rot = g.vertex(v).rot;
            if (r < rings) rot.push_back(dart_at(v, w[r + 1][i]));
            rot.push_back(dart_at(v, w[r][(i + 1) % m]));
            if (r >= 2) rot.push_back(dart_at(v, w[r - 1][(i + 1) % m]));
            rot.push_back(dart_at(v, w[r - 1][r == 1 ? 0 : i]));
            rot.push_back(dart_at(v, w[r][(i + m - 1) % m]));
            if (r < rings) rot.push_back(dart_at(v, w[r + 1][(i + m - 1) % m]));
        }
    trace_faces(g); // validates planarity
    return g;
}

} // namespace knotgrid
