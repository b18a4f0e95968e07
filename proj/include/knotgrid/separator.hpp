#pragma once

#include <string>
#include <vector>

#include "knotgrid/brt.hpp"

namespace knotgrid {

/// Exact weights: numerators over one common denominator; total must equal
/// the denominator (sum of weights = 1).  Edge weights are fixed at zero.
struct WeightSystem {
    std::vector<long long> vertex_num; // indexed by VertexId
    std::vector<long long> face_num;   // aligned with trace_faces(g)
    long long den = 1;

    void check_total(const PlaneGraph& g) const;
};

struct AlgorithmConstants {
    int w0 = 24;                  // terminal threshold
    long long n0 = 3'000'000;     // terminal box area bound
    int c_t = 17;                 // per-level red-blue turning growth
    int m = 24;                   // terminal turning bound
    int g = 12;                   // red degree bound
    int d = 3;                    // max face size after triangulation
    double balance_floor = 1.0 / 6.0;
    double balance_ceil = 5.0 / 6.0;
    double height_base = 0.18232155679; // ln(6/5)
    int crossing_budget = 24;     // state-sum limit for certification
};

struct CycleCutResult {
    Cycle cycle;
    long long w_left = 0, w_right = 0; // numerators over `den`
    long long den = 1;
    long long max_side() const { return std::max(w_left, w_right); }
};

/// Weighted 2/3 cycle cut: both open sides weigh at most 2/3 of the total.
/// Candidates are BFS-tree fundamental cycles (ranked by a dual-subtree
/// estimate) plus all short cycles; sides are evaluated exactly.
CycleCutResult cycle_cut(const PlaneGraph& g, const WeightSystem& w);

/// Exact side weights of a candidate cycle (left = push-off side).
std::pair<long long, long long> cycle_side_weights(const PlaneGraph& g, const WeightSystem& w,
                                                   const Cycle& c);

struct CutChoice {
    bool is_vertex = false;
    VertexId vertex = -1;
    CycleCutResult cycle;
};

/// Theorem-style dichotomy for zero face weights: a 2/3 cycle cut or a cut
/// vertex whose removal leaves components of weight at most 2/3.
CutChoice cut_vertex_or_cycle(const PlaneGraph& g, const WeightSystem& w);

/// All BFS-tree fundamental cycles (deterministic root and order).
std::vector<Cycle> bfs_fundamental_cycles(const PlaneGraph& g);

struct BalancedCut {
    Subdivision sub;
    bool vertex_cut = false;
    int cycle_red_len = 0; // red vertices on the cycle (edge cuts)
};

/// Balanced subdivision: min side >= W_s/6 whenever attainable, following
/// the two weight-system cases (heavy BRT-component, else component tree).
BalancedCut balanced_subdivision(const BRTGraph& b, const AlgorithmConstants& k);

struct SubdivisionNode {
    BRTGraph graph;
    int depth = 0, index = 1; // (i, j) in the recursion
    bool terminal = true;
    GluingInstruction instr;  // valid when !terminal
    int child[2] = {-1, -1};
    bool vertex_cut = false;
    int cycle_red_len = 0;
};

struct SubdivisionTree {
    std::vector<SubdivisionNode> nodes;
    int root = 0;
    int depth() const; // max leaf depth
    std::string dump() const; // one node per line: i j W_s kind len
};

SubdivisionTree recursive_subdivide(const BRTGraph& b, const AlgorithmConstants& k);

} // namespace knotgrid
