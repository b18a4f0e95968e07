#include "knotgrid/plane_graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace knotgrid {

const char* err_name(Err e) {
    switch (e) {
        case Err::MalformedCode: return "MalformedCode";
        case Err::NonplanarCode: return "NonplanarCode";
        case Err::CorruptRotation: return "CorruptRotation";
        case Err::SizeMismatch: return "SizeMismatch";
        case Err::UnknownVertex: return "UnknownVertex";
        case Err::NotFourRegular: return "NotFourRegular";
        case Err::BlueBlueEdge: return "BlueBlueEdge";
        case Err::LoopEdge: return "LoopEdge";
        case Err::UntriangulatedComponent: return "UntriangulatedComponent";
        case Err::TreeViolation: return "TreeViolation";
        case Err::NotNormal: return "NotNormal";
        case Err::NotCutVertex: return "NotCutVertex";
        case Err::InvalidSelection: return "InvalidSelection";
        case Err::LabelMismatch: return "LabelMismatch";
        case Err::OrderConflict: return "OrderConflict";
        case Err::PreconditionFaceWeight: return "PreconditionFaceWeight";
        case Err::BelowThreshold: return "BelowThreshold";
        case Err::NotTerminal: return "NotTerminal";
        case Err::OrderMisalignment: return "OrderMisalignment";
        case Err::UnknownLabel: return "UnknownLabel";
        case Err::DegreeNotFour: return "DegreeNotFour";
        case Err::ComponentMismatch: return "ComponentMismatch";
        case Err::SelfIntersection: return "SelfIntersection";
        case Err::EmptyInput: return "EmptyInput";
        case Err::TooManyCrossings: return "TooManyCrossings";
        case Err::NoGenericDirection: return "NoGenericDirection";
        case Err::Unsupported: return "Unsupported";
        case Err::Internal: return "Internal";
    }
    return "Unknown";
}

VertexId PlaneGraph::add_vertex(VColor c) {
    VertexRec r;
    r.color = c;
    r.alive = true;
    verts_.push_back(std::move(r));
    return (VertexId)verts_.size() - 1;
}

EdgeId PlaneGraph::add_edge_detached(VertexId a, VertexId b, Label label, bool artificial) {
    require(vertex_alive(a) && vertex_alive(b), Err::UnknownVertex, "add_edge endpoint");
    EdgeRec r;
    r.ends[0] = a;
    r.ends[1] = b;
    r.label = label;
    r.artificial = artificial;
    r.alive = true;
    edges_.push_back(r);
    return (EdgeId)edges_.size() - 1;
}

EdgeId PlaneGraph::add_edge(VertexId a, VertexId b, Label label, bool artificial) {
    EdgeId e = add_edge_detached(a, b, label, artificial);
    verts_[a].rot.push_back(make_dart(e, 0));
    verts_[b].rot.push_back(make_dart(e, 1));
    return e;
}

void PlaneGraph::remove_edge(EdgeId e) {
    require(edge_alive(e), Err::Internal, "remove_edge: dead edge");
    for (int s = 0; s < 2; ++s) {
        auto& rot = verts_[edges_[e].ends[s]].rot;
        rot.erase(std::remove(rot.begin(), rot.end(), make_dart(e, s)), rot.end());
    }
    edges_[e].alive = false;
}

void PlaneGraph::remove_vertex(VertexId v) {
    require(vertex_alive(v), Err::UnknownVertex, "remove_vertex");
    require(verts_[v].rot.empty(), Err::Internal, "remove_vertex: incident edges remain");
    verts_[v].alive = false;
}

std::vector<VertexId> PlaneGraph::vertices() const {
    std::vector<VertexId> out;
    for (int v = 0; v < (int)verts_.size(); ++v)
        if (verts_[v].alive) out.push_back(v);
    return out;
}

std::vector<EdgeId> PlaneGraph::edges() const {
    std::vector<EdgeId> out;
    for (int e = 0; e < (int)edges_.size(); ++e)
        if (edges_[e].alive) out.push_back(e);
    return out;
}

int PlaneGraph::num_vertices() const { return (int)vertices().size(); }
int PlaneGraph::num_edges() const { return (int)edges().size(); }

int PlaneGraph::rot_index(DartId d) const {
    const auto& rot = verts_[dart_tail(d)].rot;
    for (int i = 0; i < (int)rot.size(); ++i)
        if (rot[i] == d) return i;
    fail(Err::CorruptRotation, "dart missing from rotation");
}

DartId PlaneGraph::rot_next(DartId d) const {
    const auto& rot = verts_[dart_tail(d)].rot;
    int i = rot_index(d);
    return rot[(i + 1) % rot.size()];
}

DartId PlaneGraph::rot_prev(DartId d) const {
    const auto& rot = verts_[dart_tail(d)].rot;
    int i = rot_index(d);
    return rot[(i + rot.size() - 1) % rot.size()];
}

void PlaneGraph::check_rotations() const {
    std::vector<int> seen(2 * edges_.size(), 0);
    for (int v = 0; v < (int)verts_.size(); ++v) {
        if (!verts_[v].alive) continue;
        for (DartId d : verts_[v].rot) {
            EdgeId e = dart_edge(d);
            require(edge_alive(e), Err::CorruptRotation, "rotation references dead edge");
            require(dart_tail(d) == v, Err::CorruptRotation, "dart listed at wrong vertex");
            seen[d]++;
        }
    }
    for (int e = 0; e < (int)edges_.size(); ++e) {
        if (!edges_[e].alive) continue;
        for (int s = 0; s < 2; ++s)
            require(seen[make_dart(e, s)] == 1, Err::CorruptRotation, "dart count != 1");
    }
}

bool PlaneGraph::connected() const { return component_count() <= 1; }

int PlaneGraph::component_count() const {
    std::vector<char> vis(verts_.size(), 0);
    int comps = 0;
    for (int s = 0; s < (int)verts_.size(); ++s) {
        if (!verts_[s].alive || vis[s]) continue;
        ++comps;
        std::queue<VertexId> q;
        q.push(s);
        vis[s] = 1;
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop();
            for (DartId d : verts_[v].rot) {
                VertexId w = dart_head(d);
                if (!vis[w]) {
                    vis[w] = 1;
                    q.push(w);
                }
            }
        }
    }
    return comps;
}

std::string PlaneGraph::dump() const {
    std::ostringstream os;
    for (VertexId v : vertices()) {
        os << v << (vertex(v).color == VColor::Red    ? " R"
                    : vertex(v).color == VColor::Blue ? " B"
                                                      : " U")
           << ":";
        for (DartId d : vertex(v).rot) os << ' ' << dart_label(d) << (dart_end(d) ? '\'' : ' ');
        os << '\n';
    }
    return os.str();
}

FaceSet trace_faces(const PlaneGraph& g) {
    g.check_rotations();
    FaceSet fs;
    fs.face_of_dart.assign(2 * g.edge_capacity(), -1);
    for (EdgeId e : g.edges()) {
        for (int s = 0; s < 2; ++s) {
            DartId d0 = make_dart(e, s);
            if (fs.face_of_dart[d0] != -1) continue;
            Face f;
            DartId d = d0;
            do {
                fs.face_of_dart[d] = (int)fs.faces.size();
                f.walk.push_back(d);
                d = g.face_next(d);
                require((int)f.walk.size() <= 2 * g.edge_capacity() + 1, Err::CorruptRotation,
                        "face walk does not close");
            } while (d != d0);
            fs.faces.push_back(std::move(f));
        }
    }
    int V = g.num_vertices(), E = g.num_edges(), F = (int)fs.faces.size();
    int C = g.component_count();
    require(V - E + F == 1 + C, Err::CorruptRotation, "Euler identity violated");
    return fs;
}

namespace {

// Propagates a candidate dart correspondence across sigma and alpha.
std::optional<IsoWitness> try_map(const PlaneGraph& g1, const PlaneGraph& g2, DartId seed1,
                                  DartId seed2) {
    std::vector<DartId> dmap(2 * g1.edge_capacity(), -1);
    std::vector<DartId> dused(2 * g2.edge_capacity(), -1);
    std::vector<DartId> stack{seed1};
    auto assign = [&](DartId a, DartId b) -> bool {
        if (dmap[a] != -1) return dmap[a] == b;
        if (dused[b] != -1) return false;
        if (g1.dart_label(a) != g2.dart_label(b)) return false;
        if (g1.vertex(g1.dart_tail(a)).color != g2.vertex(g2.dart_tail(b)).color) return false;
        if (g1.degree(g1.dart_tail(a)) != g2.degree(g2.dart_tail(b))) return false;
        dmap[a] = b;
        dused[b] = a;
        stack.push_back(a);
        return true;
    };
    if (!assign(seed1, seed2)) return std::nullopt;
    while (!stack.empty()) {
        DartId a = stack.back();
        stack.pop_back();
        DartId b = dmap[a];
        if (!assign(g1.rot_next(a), g2.rot_next(b))) return std::nullopt;
        if (!assign(dart_mate(a), dart_mate(b))) return std::nullopt;
    }
    // Connectivity of g1 guarantees full coverage.
    IsoWitness w;
    w.vertex_map.assign(g1.vertex_capacity(), -1);
    w.edge_map.assign(g1.edge_capacity(), -1);
    for (EdgeId e : g1.edges()) {
        for (int s = 0; s < 2; ++s) {
            DartId d = make_dart(e, s);
            if (dmap[d] == -1) return std::nullopt; // g1 not connected
            VertexId v1 = g1.dart_tail(d);
            VertexId v2 = g2.dart_tail(dmap[d]);
            if (w.vertex_map[v1] != -1 && w.vertex_map[v1] != v2) return std::nullopt;
            w.vertex_map[v1] = v2;
        }
        w.edge_map[e] = dart_edge(dmap[make_dart(e, 0)]);
    }
    return w;
}

} // namespace

std::optional<IsoWitness> cyclic_order_isomorphic(const PlaneGraph& g1, const PlaneGraph& g2) {
    if (g1.num_vertices() != g2.num_vertices() || g1.num_edges() != g2.num_edges())
        return std::nullopt; // SizeMismatch shortcut
    auto labels = [](const PlaneGraph& g) {
        std::vector<Label> ls;
        for (EdgeId e : g.edges()) ls.push_back(g.edge(e).label);
        std::sort(ls.begin(), ls.end());
        return ls;
    };
    if (labels(g1) != labels(g2)) return std::nullopt;
    if (g1.num_edges() == 0) {
        if (g1.num_vertices() == 0) return IsoWitness{};
        if (g1.num_vertices() == 1 && g2.num_vertices() == 1) {
            IsoWitness w;
            w.vertex_map.assign(g1.vertex_capacity(), -1);
            w.vertex_map[g1.vertices()[0]] = g2.vertices()[0];
            return w;
        }
        return std::nullopt;
    }
    DartId seed1 = make_dart(g1.edges().front(), 0);
    Label want = g1.dart_label(seed1);
    for (EdgeId e : g2.edges()) {
        if (g2.edge(e).label != want) continue;
        for (int s = 0; s < 2; ++s) {
            if (auto w = try_map(g1, g2, seed1, make_dart(e, s))) return w;
        }
    }
    return std::nullopt;
}

PlaneGraph subgraph_induced(const PlaneGraph& g, const std::vector<VertexId>& keep) {
    for (VertexId v : keep) require(g.vertex_alive(v), Err::UnknownVertex, "subgraph_induced");
    std::vector<char> in(g.vertex_capacity(), 0);
    for (VertexId v : keep) in[v] = 1;
    PlaneGraph out = g;
    for (EdgeId e : g.edges()) {
        if (!in[g.edge(e).ends[0]] || !in[g.edge(e).ends[1]]) out.remove_edge(e);
    }
    for (VertexId v : g.vertices()) {
        if (!in[v]) out.remove_vertex(v);
    }
    return out;
}

} // namespace knotgrid
