#pragma once

#include <array>
#include <string>
#include <vector>

#include "knotgrid/plane_graph.hpp"

namespace knotgrid {

/// One crossing: arc labels counterclockwise from the incoming under-strand.
/// Slots 0,2 form the under pass; slots 1,3 the over pass.
struct Crossing {
    std::array<Label, 4> arc;
};

struct PDCode {
    std::vector<Crossing> crossings;
};

/// A diagram together with its validated shadow (4-regular plane graph).
struct KnotDiagram {
    PDCode pd;
    PlaneGraph shadow;                            // vertex i per tuple, all red
    std::vector<std::array<EdgeId, 4>> slot_edge; // shadow edge id per (crossing, slot)
    int components = 0;                           // closed strand cycles
    int extra_unknots = 0;                        // crossing-free components (from curl reduction)

    int crossing_count() const { return (int)pd.crossings.size(); }
};

PDCode parse_pd_text(const std::string& text);
PDCode gauss_to_pd(const std::string& text);

/// Builds and validates the diagram from PD text: 4-regular shadow with the
/// tuple order as counterclockwise rotation; planarity checked via Euler.
KnotDiagram parse_pd(const std::string& text);
KnotDiagram build_diagram(const PDCode& pd);

/// Detects whether `text` looks like Gauss code and dispatches accordingly.
KnotDiagram parse_diagram(const std::string& text);

std::string serialize_pd(const PDCode& pd);

/// Removes Reidemeister-I curls (loop arcs, which in a connected planar
/// diagram always bound empty monogons).  Knot type is preserved exactly.
/// Components whose crossings all vanish are counted in extra_unknots.
KnotDiagram reduce_curls(const KnotDiagram& d);

/// Mirror image: swaps over/under at every crossing.
KnotDiagram mirror_diagram(const KnotDiagram& d);

/// Per-crossing signs (+1/-1) under a fixed per-component orientation, and
/// the self-writhe (sum of signs over crossings where a component crosses
/// itself), which is independent of the chosen orientations.
struct WritheInfo {
    std::vector<int> sign;  // per crossing
    std::vector<int> comp_of_crossing_under;
    std::vector<int> comp_of_crossing_over;
    int writhe = 0;
    int self_writhe = 0;
};
WritheInfo compute_writhe(const PDCode& pd);

} // namespace knotgrid
