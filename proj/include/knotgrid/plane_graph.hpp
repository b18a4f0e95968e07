#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "knotgrid/errors.hpp"

namespace knotgrid {

using VertexId = int;
using EdgeId = int;
using DartId = int; // 2*edge + end
using Label = int;

enum class VColor : std::uint8_t { Uncolored, Red, Blue };

inline EdgeId dart_edge(DartId d) { return d >> 1; }
inline int dart_end(DartId d) { return d & 1; }
inline DartId make_dart(EdgeId e, int end) { return (e << 1) | end; }
inline DartId dart_mate(DartId d) { return d ^ 1; }

/// Plane multigraph given by a rotation system: per-vertex counterclockwise
/// cyclic order of darts (edge-ends).  Vertex and edge ids are stable across
/// copies and deletions; labels identify edges across subdivision surgery and
/// need not be unique (the two stubs of a twice-cut edge share one label).
class PlaneGraph {
public:
    struct VertexRec {
        std::vector<DartId> rot; // ccw
        VColor color = VColor::Uncolored;
        bool alive = false;
    };
    struct EdgeRec {
        VertexId ends[2] = {-1, -1};
        Label label = -1;
        bool artificial = false;
        bool alive = false;
    };

    PlaneGraph() = default;

    VertexId add_vertex(VColor c = VColor::Uncolored);
    /// Adds an edge and appends its darts at the end of each endpoint rotation.
    EdgeId add_edge(VertexId a, VertexId b, Label label, bool artificial = false);
    /// Adds an edge without touching rotations; caller inserts the darts.
    EdgeId add_edge_detached(VertexId a, VertexId b, Label label, bool artificial = false);

    void remove_edge(EdgeId e);
    void remove_vertex(VertexId v); // must have no incident edges

    bool vertex_alive(VertexId v) const { return v >= 0 && v < (int)verts_.size() && verts_[v].alive; }
    bool edge_alive(EdgeId e) const { return e >= 0 && e < (int)edges_.size() && edges_[e].alive; }

    const VertexRec& vertex(VertexId v) const { return verts_[v]; }
    VertexRec& vertex(VertexId v) { return verts_[v]; }
    const EdgeRec& edge(EdgeId e) const { return edges_[e]; }
    EdgeRec& edge(EdgeId e) { return edges_[e]; }

    VertexId dart_tail(DartId d) const { return edges_[dart_edge(d)].ends[dart_end(d)]; }
    VertexId dart_head(DartId d) const { return edges_[dart_edge(d)].ends[dart_end(d) ^ 1]; }
    Label dart_label(DartId d) const { return edges_[dart_edge(d)].label; }

    int vertex_capacity() const { return (int)verts_.size(); }
    int edge_capacity() const { return (int)edges_.size(); }
    std::vector<VertexId> vertices() const;
    std::vector<EdgeId> edges() const;
    int num_vertices() const;
    int num_edges() const;
    int degree(VertexId v) const { return (int)verts_[v].rot.size(); }

    bool is_loop(EdgeId e) const { return edges_[e].ends[0] == edges_[e].ends[1]; }

    /// Next dart counterclockwise around the tail of `d`.
    DartId rot_next(DartId d) const;
    DartId rot_prev(DartId d) const;
    /// Position of dart in its tail's rotation.
    int rot_index(DartId d) const;

    /// Face-walk successor: sigma(alpha(d)); the face lies to the LEFT of each
    /// dart's tail->head direction when rotations are counterclockwise.
    DartId face_next(DartId d) const { return rot_next(dart_mate(d)); }

    bool connected() const;
    int component_count() const;

    /// Structural validation: every dart of every live edge appears exactly
    /// once in its tail's rotation and nowhere else.
    void check_rotations() const; // throws CorruptRotation

    std::string dump() const; // one line per vertex: id, color, ccw dart labels

private:
    std::vector<VertexRec> verts_;
    std::vector<EdgeRec> edges_;
};

struct Face {
    std::vector<DartId> walk; // closed boundary walk
    int size() const { return (int)walk.size(); }
};

struct FaceSet {
    std::vector<Face> faces;
    std::vector<int> face_of_dart; // indexed by DartId; -1 when absent
    int face_of(DartId d) const { return face_of_dart[d]; }
};

/// Traces all faces of g.  Euler's relation V - E + F = 1 + C is asserted.
FaceSet trace_faces(const PlaneGraph& g);

struct IsoWitness {
    std::vector<VertexId> vertex_map; // g1 id -> g2 id (-1 when unmapped)
    std::vector<EdgeId> edge_map;
};

/// Orientation-preserving, label- and color-respecting isomorphism test of
/// connected plane graphs (the executable stand-in for plane isotopy).
std::optional<IsoWitness> cyclic_order_isomorphic(const PlaneGraph& g1, const PlaneGraph& g2);

/// Subgraph induced by `keep` (ids preserved); rotations are the original
/// cyclic orders restricted to surviving edges.
PlaneGraph subgraph_induced(const PlaneGraph& g, const std::vector<VertexId>& keep);

} // namespace knotgrid
