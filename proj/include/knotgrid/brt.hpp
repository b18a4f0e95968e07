#pragma once

#include <map>
#include <string>
#include <vector>

#include "knotgrid/plane_graph.hpp"

namespace knotgrid {

/// Per-blue-vertex linear order: the order in which the vertex's band
/// presents its strands.  Always a linear cut of the ccw rotation, read
/// forward (flip = false) or backward (flip = true; blues born as the
/// inside child of an edge-cut).
struct BlueRecord {
    std::vector<DartId> band_order;
};

struct BRTGraph {
    PlaneGraph g;
    std::map<VertexId, BlueRecord> blue;

    int standard_weight() const;
    bool is_blue(VertexId v) const { return g.vertex(v).color == VColor::Blue; }
    /// true when band_order runs against the ccw rotation.
    bool band_flipped(VertexId v) const;
};

/// Validation gate for Definition of BRT-graphs: connected, no blue-blue
/// edges, no loops, every BR-component triangulated, at most one blue vertex
/// per component face, every cut vertex blue, red degree <= 12, and each blue
/// band order consistent with the rotation.
void make_brt(const BRTGraph& b);

/// Wraps an all-red plane graph (e.g. a triangulated shadow).
BRTGraph brt_from_red(const PlaneGraph& g);

struct BRComponent {
    std::vector<VertexId> red_vertices;
    std::vector<VertexId> blue_vertices;
    PlaneGraph induced; // G(V*_M)
};
std::vector<BRComponent> brt_components(const BRTGraph& b);

/// Bipartite incidence tree T_G: node per blue vertex and per red component.
struct ComponentTree {
    int n_components = 0;
    std::vector<VertexId> blue_nodes;                 // node id = n_components + index
    std::vector<std::pair<int, int>> edges;           // (component node, blue node)
    std::vector<std::vector<VertexId>> component_red; // reds per component node
};
ComponentTree build_tree(const BRTGraph& b);

struct Cycle {
    std::vector<VertexId> verts;
    std::vector<EdgeId> edges; // edges[i] joins verts[i], verts[i+1 mod n]
    int length() const { return (int)verts.size(); }
};

bool is_cycle_in(const PlaneGraph& g, const Cycle& c);
bool is_normal_cycle(const BRTGraph& b, const Cycle& c);

/// Shrinks empty red triangles off the cycle until it is normal.
Cycle normalize_cycle(const BRTGraph& b, const Cycle& c);

/// One passage of the push-off gamma' along the cycle, in walk order.
struct PushItem {
    enum class Kind { Cross, Blue } kind;
    EdgeId edge = -1;     // Cross: parent edge crossed here
    Label label = -1;     // Cross: its label
    VertexId blue = -1;   // Blue: the gamma-blue vertex passed through
};
using CrossingSequence = std::vector<PushItem>;

/// Combinatorial push-off of a normal cycle: the cyclic sequence of edge
/// crossings and blue-vertex passages, with empty-digon pairs cancelled.
CrossingSequence push_off(const BRTGraph& b, const Cycle& c);

/// Exact annulus/disk record enabling reconstruction of the parent.
struct GluingInstruction {
    enum class Kind { EdgeCut, VertexCut } kind;

    // --- edge-cut data -----------------------------------------------------
    struct Anchor {
        int item = -1; // index into items
        int slot = -1; // -1: the cross dart; else index into a side list
        auto operator<=>(const Anchor&) const = default;
    };
    struct Item {
        PushItem::Kind kind;
        EdgeId parent_edge = -1; // Cross
        Label label = -1;
        VertexId blue = -1;                     // Blue passage: parent blue id
        std::vector<Label> left_labels;         // passage side lists (slot -> label)
        std::vector<Label> right_labels;        // [gamma-edge, chords..., gamma-edge]
        std::vector<DartId> left_parent_darts;  // parent darts per slot
        std::vector<DartId> right_parent_darts;
        std::vector<Label> band_order;          // the passage blue's stored order
    };
    std::vector<Item> items; // canonical: index 0 = first item after beta
    struct Loop {
        Anchor a, b;   // the two passage positions of the deleted loop piece
        bool left;     // which child lost the loop
        Label label;
        EdgeId parent_edge;
        VertexId passage_blue = -1; // set when one end terminates at a gamma-blue
    };
    std::vector<Loop> loops;
    struct Contraction {
        bool left;
        VertexId blue;                 // absorbed off-cycle blue vertex
        Label contracted_label;
        Anchor contracted_at;
        std::vector<Label> rot_labels; // its full ccw rotation, contracted edge first
        std::vector<Label> band_order;
        std::vector<Anchor> cut_anchors; // anchors of all its cut edges, rotation order
    };
    std::vector<Contraction> contractions;

    // --- vertex-cut data ---------------------------------------------------
    VertexId cut_vertex = -1;
    std::vector<Label> cut_rotation;  // ccw rotation of the cut vertex (labels)
    std::vector<int> dart_side;       // per rotation slot: 0 = G1, 1 = G2
    std::vector<Label> cut_band_order;
    bool cut_band_flip = false;

    // --- common -------------------------------------------------------------
    VertexId blue_left = -1, blue_right = -1; // new blue vertex ids
    int ws_left = 0, ws_right = 0;

    std::string dump() const; // two boundary lines + loop/contraction records
};

struct Subdivision {
    BRTGraph left;  // inside-gamma' child (or the disk-component side)
    BRTGraph right;
    GluingInstruction instr;
};

Subdivision edge_cut_subdivide(const BRTGraph& b, const Cycle& c);

/// Side selection for a vertex cut: the set of darts at the cut vertex that
/// go with G1 (must be a union of complete split components).
Subdivision vertex_cut_subdivide(const BRTGraph& b, VertexId v,
                                 const std::vector<char>& dart_to_left);

/// Inverse of subdivision; output is cyclic-order-isomorphic to the parent.
BRTGraph reconstruct(const BRTGraph& left, const BRTGraph& right, const GluingInstruction& n);

} // namespace knotgrid
