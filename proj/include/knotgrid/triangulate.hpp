#pragma once

#include "knotgrid/plane_graph.hpp"

namespace knotgrid {

/// Adds artificial chords so every face becomes a triangle or digon.
/// Each face contributes at most two new darts per vertex, so a 4-regular
/// input (each vertex on at most 4 face corners... at most 4 faces) ends with
/// degree at most 12.  Chords between repeated walk vertices are skipped, so
/// no loops are created.  Deterministic: faces processed in trace order, the
/// zig-zag anchored at the walk position with the smallest (vertex, label).
PlaneGraph triangulate(const PlaneGraph& g);

/// Deletes every artificial edge; strip_artificial(triangulate(g)) is
/// cyclic-order-isomorphic to g.
PlaneGraph strip_artificial(const PlaneGraph& g);

} // namespace knotgrid
