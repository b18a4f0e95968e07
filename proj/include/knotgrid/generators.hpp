#pragma once

#include "knotgrid/diagram.hpp"

namespace knotgrid {

/// PD code of the (2,k) torus knot/link (closure of a k-crossing 2-braid).
PDCode torus2_pd(int k);

/// Random maximal planar graph (simple triangulation) built by repeated
/// vertex insertion into faces; deterministic for a given seed.
PlaneGraph random_maximal_planar(int n, unsigned seed);

/// Concentric-ring triangulated disk with roughly n vertices (small BFS
/// radius; handy as a well-conditioned separator fixture).
PlaneGraph disk_triangulation(int rings);

} // namespace knotgrid
