#include "knotgrid/triangulate.hpp"

#include <algorithm>
#include <deque>

namespace knotgrid {

namespace {

void insert_before(PlaneGraph& g, DartId anchor, DartId d) {
    auto& rot = g.vertex(g.dart_tail(anchor)).rot;
    auto it = std::find(rot.begin(), rot.end(), anchor);
    require(it != rot.end(), Err::CorruptRotation, "insert_before");
    rot.insert(it, d);
}

// Adds a chord between walk corners i and j (tails must differ); returns the
// chord darts (at corner i, at corner j).
std::pair<DartId, DartId> add_chord(PlaneGraph& g, const std::deque<DartId>& poly, int i, int j,
                                    Label label) {
    VertexId u = g.dart_tail(poly[i]);
    VertexId w = g.dart_tail(poly[j]);
    EdgeId e = g.add_edge_detached(u, w, label, /*artificial=*/true);
    DartId cu = make_dart(e, 0), cw = make_dart(e, 1);
    insert_before(g, poly[i], cu);
    insert_before(g, poly[j], cw);
    return {cu, cw};
}

void triangulate_face(PlaneGraph& g, std::vector<DartId> walk, Label& next_label) {
    if ((int)walk.size() <= 3) return;
    // Deterministic anchor: rotate so the smallest (vertex, label) corner leads.
    int best = 0;
    for (int i = 1; i < (int)walk.size(); ++i) {
        auto key = std::make_pair(g.dart_tail(walk[i]), g.dart_label(walk[i]));
        auto bk = std::make_pair(g.dart_tail(walk[best]), g.dart_label(walk[best]));
        if (key < bk) best = i;
    }
    std::rotate(walk.begin(), walk.begin() + best, walk.end());
    std::deque<DartId> poly(walk.begin(), walk.end());

    bool front_turn = true;
    while ((int)poly.size() > 3) {
        int k = (int)poly.size();
        auto tails_differ = [&](int a, int b) { return g.dart_tail(poly[a]) != g.dart_tail(poly[b]); };
        bool cut = false;
        for (int attempt = 0; attempt < 2 && !cut; ++attempt) {
            bool front = front_turn ^ (attempt == 1);
            if (front && tails_differ(1, k - 1)) {
                auto [cu, cw] = add_chord(g, poly, 1, k - 1, next_label++);
                (void)cu;
                poly.pop_front();
                poly.pop_back();
                poly.push_back(cw);
                cut = true;
            } else if (!front && tails_differ(0, k - 2)) {
                auto [cu, cw] = add_chord(g, poly, 0, k - 2, next_label++);
                (void)cu;
                poly.pop_back();
                poly.pop_back();
                poly.push_back(cw);
                cut = true;
            }
        }
        if (!cut) {
            // Repeated boundary vertices block both ends: cut any valid ear.
            for (int i = 0; i < k && !cut; ++i) {
                int a = i, b = (i + 2) % k;
                if (!tails_differ(a, b)) continue;
                auto [cu, cw] = add_chord(g, poly, a, b, next_label++);
                (void)cw;
                std::deque<DartId> next;
                for (int t = 0; t < k; ++t) {
                    if (t == a) {
                        next.push_back(cu);
                        ++t; // skip a and a+1
                        continue;
                    }
                    next.push_back(poly[t]);
                }
                if (a == k - 1) next.pop_front(); // a+1 wrapped to 0
                poly = std::move(next);
                cut = true;
            }
            require(cut, Err::Internal, "face cannot be triangulated without loops");
        }
        front_turn = !front_turn;
    }
}

} // namespace

PlaneGraph triangulate(const PlaneGraph& g) {
    require(g.connected(), Err::NotFourRegular, "triangulate: graph must be connected");
    for (VertexId v : g.vertices())
        require(g.degree(v) == 4, Err::NotFourRegular,
                "triangulate: vertex " + std::to_string(v) + " has degree " +
                    std::to_string(g.degree(v)));
    for (EdgeId e : g.edges())
        require(!g.is_loop(e), Err::LoopEdge, "triangulate: loop edges not allowed");

    PlaneGraph out = g;
    for (VertexId v : out.vertices()) out.vertex(v).color = VColor::Red;
    Label next_label = 0;
    for (EdgeId e : out.edges()) next_label = std::max(next_label, out.edge(e).label + 1);

    FaceSet fs = trace_faces(out);
    for (const Face& f : fs.faces) triangulate_face(out, f.walk, next_label);

    FaceSet check = trace_faces(out);
    for (const Face& f : check.faces)
        require(f.size() <= 3, Err::Internal, "triangulation left a large face");
    for (VertexId v : out.vertices())
        require(out.degree(v) <= 12, Err::Internal, "triangulation exceeded degree 12");
    return out;
}

PlaneGraph strip_artificial(const PlaneGraph& g) {
    PlaneGraph out = g;
    for (EdgeId e : g.edges())
        if (g.edge(e).artificial) out.remove_edge(e);
    return out;
}

} // namespace knotgrid
