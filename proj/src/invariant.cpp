#include "knotgrid/invariant.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <vector>

namespace knotgrid {

LaurentPoly LaurentPoly::mono(int exp, long long coeff) {
    LaurentPoly p;
    if (coeff != 0) p.c_[exp] = coeff;
    return p;
}

void LaurentPoly::set(int exp, long long coeff) {
    if (coeff == 0)
        c_.erase(exp);
    else
        c_[exp] = coeff;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly out = *this;
    for (auto& [e, k] : o.c_) {
        long long v = (out.c_.count(e) ? out.c_[e] : 0) + k;
        out.set(e, v);
    }
    return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    LaurentPoly out = *this;
    for (auto& [e, k] : o.c_) {
        long long v = (out.c_.count(e) ? out.c_[e] : 0) - k;
        out.set(e, v);
    }
    return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly out;
    for (auto& [e1, k1] : c_)
        for (auto& [e2, k2] : o.c_) {
            long long v = (out.c_.count(e1 + e2) ? out.c_[e1 + e2] : 0) + k1 * k2;
            out.set(e1 + e2, v);
        }
    return out;
}

LaurentPoly LaurentPoly::pow(int k) const {
    LaurentPoly out = mono(0, 1);
    for (int i = 0; i < k; ++i) out = out * *this;
    return out;
}

LaurentPoly LaurentPoly::mirrored() const {
    LaurentPoly out;
    for (auto& [e, k] : c_) out.c_[-e] = k;
    return out;
}

std::string LaurentPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        auto [e, k] = *it;
        if (!first) os << (k < 0 ? " - " : " + ");
        else if (k < 0)
            os << "-";
        long long a = std::llabs(k);
        if (a != 1 || e == 0) os << a;
        if (e != 0) {
            os << "A";
            if (e != 1) os << "^" << e;
        }
        first = false;
    }
    return os.str();
}

LaurentPoly bracket_delta() {
    return LaurentPoly::mono(2, -1) + LaurentPoly::mono(-2, -1);
}

LaurentPoly kauffman_bracket(const PDCode& pd, int crossing_budget) {
    int n = (int)pd.crossings.size();
    require(n <= crossing_budget, Err::TooManyCrossings,
            std::to_string(n) + " crossings exceed the state-sum budget " +
                std::to_string(crossing_budget));
    if (n == 0) return LaurentPoly::mono(0, 1);

    // Slots 4c..4c+3; arcs link their two occurrences.
    std::map<Label, std::vector<int>> occ;
    for (int c = 0; c < n; ++c)
        for (int s = 0; s < 4; ++s) occ[pd.crossings[c].arc[s]].push_back(4 * c + s);
    std::vector<int> arc_mate(4 * n, -1);
    for (auto& [a, slots] : occ) {
        require(slots.size() == 2, Err::MalformedCode, "arc count");
        arc_mate[slots[0]] = slots[1];
        arc_mate[slots[1]] = slots[0];
    }

    std::vector<int> uf(4 * n);
    std::vector<int> loops_of_state((std::size_t)1 << n, 0);
    LaurentPoly delta = bracket_delta();
    // Precompute delta powers.
    std::vector<LaurentPoly> dpow(n + 2);
    dpow[0] = LaurentPoly::mono(0, 1);
    for (int i = 1; i <= n + 1; ++i) dpow[i] = dpow[i - 1] * delta;

    std::function<int(int)> find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };

    LaurentPoly total;
    for (long long state = 0; state < (1LL << n); ++state) {
        std::iota(uf.begin(), uf.end(), 0);
        int a_count = 0;
        for (int c = 0; c < n; ++c) {
            bool a_smooth = !((state >> c) & 1);
            if (a_smooth) ++a_count;
            int s0 = 4 * c;
            // A: join (0,1) and (2,3); B: join (0,3) and (1,2).
            int p1 = a_smooth ? s0 + 1 : s0 + 3;
            int p2 = a_smooth ? s0 + 3 : s0 + 1;
            uf[find(s0)] = find(p1);
            uf[find(s0 + 2)] = find(p2);
        }
        for (int s = 0; s < 4 * n; ++s) uf[find(s)] = find(arc_mate[s]);
        int comps = 0;
        for (int s = 0; s < 4 * n; ++s)
            if (find(s) == s) ++comps;
        int exponent = a_count - (n - a_count);
        total = total + LaurentPoly::mono(exponent) * dpow[comps - 1];
    }
    return total;
}

LaurentPoly normalized_invariant(const KnotDiagram& d, int crossing_budget) {
    LaurentPoly bracket = kauffman_bracket(d.pd, crossing_budget);
    WritheInfo w = compute_writhe(d.pd);
    // (-A^3)^(-w_self)
    LaurentPoly norm = LaurentPoly::mono(-3 * w.self_writhe, (w.self_writhe % 2 == 0) ? 1 : -1);
    LaurentPoly out = bracket * norm;
    int extra = d.extra_unknots;
    if (d.crossing_count() == 0 && extra > 0) extra -= 1; // the empty bracket is one unknot
    return out * bracket_delta().pow(extra);
}

namespace {

// Removes one RI kink if present.
bool reduce_r1(PDCode& pd) {
    for (std::size_t c = 0; c < pd.crossings.size(); ++c) {
        auto& t = pd.crossings[c].arc;
        for (int i = 0; i < 4; ++i) {
            if (t[i] != t[(i + 1) % 4]) continue;
            Label keep = t[(i + 2) % 4], drop = t[(i + 3) % 4];
            pd.crossings.erase(pd.crossings.begin() + c);
            if (keep != drop) {
                for (auto& x : pd.crossings)
                    for (auto& a : x.arc)
                        if (a == drop) a = keep;
            }
            return true;
        }
    }
    return false;
}

// Removes one RII poke if present: crossings c1, c2 sharing arcs x, y where
// x runs under at both and y over at both, adjacent in both tuples.
bool reduce_r2(PDCode& pd) {
    int n = (int)pd.crossings.size();
    for (int c1 = 0; c1 < n; ++c1) {
        for (int c2 = c1 + 1; c2 < n; ++c2) {
            const auto& t1 = pd.crossings[c1].arc;
            const auto& t2 = pd.crossings[c2].arc;
            for (int i = 0; i < 4; ++i) {
                Label x = t1[i], y = t1[(i + 1) % 4];
                if (x == y) continue;
                for (int j = 0; j < 4; ++j) {
                    // x under at c1 iff slot parity even; demand same role at
                    // c2 for x (and hence for y).
                    if (t2[j] != x && t2[j] != y) continue;
                    bool fwd = t2[j] == x && t2[(j + 1) % 4] == y;
                    bool rev = t2[j] == y && t2[(j + 1) % 4] == x;
                    if (!fwd && !rev) continue;
                    int xi = i, xj = fwd ? j : (j + 1) % 4;
                    if ((xi % 2) != (xj % 2)) continue; // same strand role
                    // Both occurrences of x must be these two crossings.
                    int x_count = 0, y_count = 0;
                    for (int s = 0; s < 4; ++s) {
                        x_count += (t1[s] == x) + (t2[s] == x);
                        y_count += (t1[s] == y) + (t2[s] == y);
                    }
                    if (x_count != 2 || y_count != 2) continue;
                    // External arcs: partners of x and y on their passes.
                    Label p1 = t1[(xi + 2) % 4];                      // x pass at c1
                    Label q1 = t1[(((i + 1) % 4) + 2) % 4];           // y pass at c1
                    int yj = fwd ? (j + 1) % 4 : j;
                    Label p2 = t2[(xj + 2) % 4];
                    Label q2 = t2[(yj + 2) % 4];
                    std::set<Label> ext{p1, q1, p2, q2};
                    if (ext.count(x) || ext.count(y)) continue;
                    if (p1 == p2 || q1 == q2) {
                        // Would close a free loop; leave for RI handling.
                        continue;
                    }
                    // Splice: p1-p2 and q1-q2.
                    PDCode out;
                    for (int c = 0; c < n; ++c)
                        if (c != c1 && c != c2) out.crossings.push_back(pd.crossings[c]);
                    for (auto& cr : out.crossings)
                        for (auto& a : cr.arc) {
                            if (a == p2) a = p1;
                            if (a == q2) a = q1;
                        }
                    pd = out;
                    return true;
                }
            }
        }
    }
    return false;
}

} // namespace

PDCode simplify_diagram(const PDCode& pd0) {
    PDCode pd = pd0;
    bool changed = true;
    while (changed) {
        changed = reduce_r1(pd);
        if (!changed) changed = reduce_r2(pd);
    }
    return pd;
}

} // namespace knotgrid
