#pragma once

#include <map>
#include <string>

#include "knotgrid/diagram.hpp"

namespace knotgrid {

/// Single-variable Laurent polynomial with integer coefficients; zero
/// coefficients are never stored, so the representation is canonical.
class LaurentPoly {
public:
    LaurentPoly() = default;
    static LaurentPoly mono(int exp, long long coeff = 1);

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly pow(int k) const; // k >= 0
    LaurentPoly mirrored() const; // A -> A^-1
    bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }
    bool is_zero() const { return c_.empty(); }
    int term_count() const { return (int)c_.size(); }
    std::string str() const; // e.g. "-A^5 - A^-3 + A^-7"

    const std::map<int, long long>& terms() const { return c_; }
    void set(int exp, long long coeff);

private:
    std::map<int, long long> c_;
};

/// delta = -A^2 - A^-2 (the loop value of the bracket).
LaurentPoly bracket_delta();

/// Kauffman bracket by full state sum; <unknot> = 1.  Empty PD codes count
/// as a single unknot.  Throws TooManyCrossings above the budget.
LaurentPoly kauffman_bracket(const PDCode& pd, int crossing_budget = 24);

/// Writhe-normalized bracket (-A^3)^(-w) <D>.  The self-writhe (signs of
/// crossings where a component crosses itself) is used so the value does not
/// depend on component orientations; for knots this is the usual normalized
/// bracket.  Crossing-free components contribute a delta factor each.
LaurentPoly normalized_invariant(const KnotDiagram& d, int crossing_budget = 24);

/// Invariant-safe combinatorial simplification: Reidemeister I kinks and
/// Reidemeister II pokes removed until fixpoint.  The normalized invariant
/// of the result equals that of the input.
PDCode simplify_diagram(const PDCode& pd);

} // namespace knotgrid
