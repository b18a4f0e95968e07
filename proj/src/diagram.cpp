#include "knotgrid/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace knotgrid {

namespace {

// Face trace without the planarity assertion; returns face count.
int count_faces_raw(const PlaneGraph& g) {
    std::vector<char> seen(2 * g.edge_capacity(), 0);
    int faces = 0;
    for (EdgeId e : g.edges()) {
        for (int s = 0; s < 2; ++s) {
            DartId d0 = make_dart(e, s);
            if (seen[d0]) continue;
            ++faces;
            DartId d = d0;
            do {
                seen[d] = 1;
                d = g.face_next(d);
            } while (d != d0);
        }
    }
    return faces;
}

} // namespace

PDCode parse_pd_text(const std::string& text) {
    PDCode pd;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (std::isspace((unsigned char)text[i]) || text[i] == ','))
            ++i;
    };
    skip_ws();
    // Tolerate an optional PD[...] wrapper.
    if (i + 2 < text.size() && (text[i] == 'P' || text[i] == 'p') &&
        (text[i + 1] == 'D' || text[i + 1] == 'd'))
        i += 2;
    skip_ws();
    if (i < text.size() && text[i] == '[') ++i;
    while (true) {
        skip_ws();
        if (i >= text.size() || text[i] == ']') break;
        require(text[i] == 'X' || text[i] == 'x', Err::MalformedCode,
                "expected X(a,b,c,d) at position " + std::to_string(i));
        ++i;
        skip_ws();
        require(i < text.size() && (text[i] == '(' || text[i] == '['), Err::MalformedCode,
                "expected ( after X");
        char close = text[i] == '(' ? ')' : ']';
        ++i;
        Crossing c{};
        for (int k = 0; k < 4; ++k) {
            skip_ws();
            std::size_t j = i;
            while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
            require(j > i, Err::MalformedCode, "expected arc label");
            c.arc[k] = std::stoi(text.substr(i, j - i));
            require(c.arc[k] > 0, Err::MalformedCode, "arc labels are positive");
            i = j;
        }
        skip_ws();
        require(i < text.size() && text[i] == close, Err::MalformedCode, "unterminated tuple");
        ++i;
        pd.crossings.push_back(c);
    }
    require(!pd.crossings.empty(), Err::MalformedCode, "empty input");
    return pd;
}

PDCode gauss_to_pd(const std::string& text) {
    // Signed Gauss code of a knot: tokens O<n><sign> / U<n><sign>.
    struct Tok {
        bool over;
        int id;
        int sign;
    };
    std::vector<Tok> toks;
    std::size_t i = 0;
    while (i < text.size()) {
        char ch = text[i];
        if (std::isspace((unsigned char)ch) || ch == ',') {
            ++i;
            continue;
        }
        Tok t{};
        if (ch == 'O' || ch == 'o')
            t.over = true;
        else if (ch == 'U' || ch == 'u')
            t.over = false;
        else
            fail(Err::MalformedCode, "expected O or U in Gauss code");
        ++i;
        std::size_t j = i;
        while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
        require(j > i, Err::MalformedCode, "expected crossing number in Gauss code");
        t.id = std::stoi(text.substr(i, j - i));
        i = j;
        require(i < text.size() && (text[i] == '+' || text[i] == '-'), Err::MalformedCode,
                "expected sign in Gauss code");
        t.sign = text[i] == '+' ? 1 : -1;
        ++i;
        toks.push_back(t);
    }
    require(!toks.empty() && toks.size() % 2 == 0, Err::MalformedCode, "bad Gauss token count");
    int m = (int)toks.size(); // = 2n; arc k runs from token k-1 to token k (1-based, cyclic)
    std::map<int, std::pair<int, int>> under_at, over_at; // crossing id -> (token idx, sign)
    for (int k = 0; k < m; ++k) {
        auto& slot = toks[k].over ? over_at : under_at;
        require(!slot.count(toks[k].id), Err::MalformedCode, "crossing visited twice as same pass");
        slot[toks[k].id] = {k, toks[k].sign};
    }
    require(under_at.size() == over_at.size() && (int)under_at.size() * 2 == m, Err::MalformedCode,
            "each crossing needs one O and one U visit");
    PDCode pd;
    for (auto& [id, uv] : under_at) {
        auto it = over_at.find(id);
        require(it != over_at.end(), Err::MalformedCode, "missing O visit");
        require(uv.second == it->second.second, Err::MalformedCode, "inconsistent signs");
        auto arc = [&](int tok) { return tok + 1; };          // arc entering token `tok`
        auto arc_out = [&](int tok) { return tok % m + 2 > m ? 1 : tok + 2; };
        int ui = arc(uv.first), uo = arc_out(uv.first);
        int oi = arc(it->second.first), oo = arc_out(it->second.first);
        Crossing c{};
        if (uv.second > 0)
            c.arc = {ui, oo, uo, oi};
        else
            c.arc = {ui, oi, uo, oo};
        pd.crossings.push_back(c);
    }
    return pd;
}

std::string serialize_pd(const PDCode& pd) {
    std::ostringstream os;
    for (std::size_t i = 0; i < pd.crossings.size(); ++i) {
        if (i) os << ' ';
        const auto& c = pd.crossings[i];
        os << "X(" << c.arc[0] << ',' << c.arc[1] << ',' << c.arc[2] << ',' << c.arc[3] << ')';
    }
    return os.str();
}

KnotDiagram build_diagram(const PDCode& pd) {
    KnotDiagram d;
    d.pd = pd;
    int n = (int)pd.crossings.size();
    std::map<Label, std::vector<std::pair<int, int>>> occ; // arc -> [(crossing, slot)]
    for (int c = 0; c < n; ++c)
        for (int s = 0; s < 4; ++s) occ[pd.crossings[c].arc[s]].push_back({c, s});
    for (auto& [arc, places] : occ)
        require(places.size() == 2, Err::MalformedCode,
                "arc " + std::to_string(arc) + " appears " + std::to_string(places.size()) +
                    " times (need 2)");

    for (int c = 0; c < n; ++c) d.shadow.add_vertex(VColor::Red);
    d.slot_edge.assign(n, {-1, -1, -1, -1});
    for (auto& [arc, places] : occ) {
        auto [c1, s1] = places[0];
        auto [c2, s2] = places[1];
        EdgeId e = d.shadow.add_edge_detached(c1, c2, arc);
        d.slot_edge[c1][s1] = e;
        d.slot_edge[c2][s2] = e;
    }
    // Rotation = tuple order; for a loop arc both darts sit in the same tuple.
    for (int c = 0; c < n; ++c) {
        std::map<EdgeId, int> used;
        for (int s = 0; s < 4; ++s) {
            EdgeId e = d.slot_edge[c][s];
            int end;
            if (d.shadow.edge(e).ends[0] == c && d.shadow.edge(e).ends[1] == c)
                end = used[e]++; // loop: first visit takes end 0
            else
                end = d.shadow.edge(e).ends[0] == c ? 0 : 1;
            d.shadow.vertex(c).rot.push_back(make_dart(e, end));
        }
    }
    d.shadow.check_rotations();
    require(d.shadow.connected(), Err::MalformedCode, "diagram must be connected");
    int F = count_faces_raw(d.shadow);
    require(n - 2 * n + F == 2, Err::NonplanarCode,
            "rotation system is not planar (V-E+F=" + std::to_string(n - 2 * n + F) + ")");

    // Strand trace: passes pair slots (0,2) and (1,3).
    std::vector<std::array<char, 4>> seen(n, {0, 0, 0, 0});
    auto other_occ = [&](int c, int s) -> std::pair<int, int> {
        for (auto& p : occ[pd.crossings[c].arc[s]])
            if (p != std::make_pair(c, s)) return p;
        fail(Err::Internal, "arc occurrence lookup");
    };
    for (int c0 = 0; c0 < n; ++c0) {
        for (int s0 = 0; s0 < 4; ++s0) {
            if (seen[c0][s0]) continue;
            ++d.components;
            int c = c0, s = s0;
            do {
                seen[c][s] = 1;
                int out = (s + 2) % 4;
                seen[c][out] = 1;
                auto [nc, ns] = other_occ(c, out);
                c = nc, s = ns;
            } while (!(c == c0 && s == s0));
        }
    }
    return d;
}

KnotDiagram parse_pd(const std::string& text) { return build_diagram(parse_pd_text(text)); }

KnotDiagram parse_diagram(const std::string& text) {
    for (char ch : text) {
        if (std::isspace((unsigned char)ch)) continue;
        if (ch == 'O' || ch == 'o' || ch == 'U' || ch == 'u')
            return build_diagram(gauss_to_pd(text));
        break;
    }
    return parse_pd(text);
}

KnotDiagram reduce_curls(const KnotDiagram& d) {
    PDCode pd = d.pd;
    int freed = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t c = 0; c < pd.crossings.size(); ++c) {
            auto& t = pd.crossings[c].arc;
            for (int i = 0; i < 4; ++i) {
                if (t[i] != t[(i + 1) % 4]) continue;
                Label keep = t[(i + 2) % 4], drop = t[(i + 3) % 4];
                pd.crossings.erase(pd.crossings.begin() + c);
                if (keep == drop) {
                    ++freed;
                } else {
                    for (auto& x : pd.crossings)
                        for (auto& a : x.arc)
                            if (a == drop) a = keep;
                }
                changed = true;
                break;
            }
            if (changed) break;
        }
    }
    KnotDiagram out;
    if (pd.crossings.empty()) {
        out.components = d.components;
        out.extra_unknots = d.components;
        return out;
    }
    require(freed == 0, Err::Unsupported, "curl reduction split the diagram");
    out = build_diagram(pd);
    out.extra_unknots = 0;
    require(out.components == d.components, Err::Internal, "curl reduction changed components");
    return out;
}

KnotDiagram mirror_diagram(const KnotDiagram& d) {
    PDCode pd = d.pd;
    for (auto& c : pd.crossings) {
        auto a = c.arc;
        c.arc = {a[1], a[2], a[3], a[0]};
    }
    return build_diagram(pd);
}

WritheInfo compute_writhe(const PDCode& pd) {
    int n = (int)pd.crossings.size();
    WritheInfo w;
    w.sign.assign(n, 0);
    w.comp_of_crossing_under.assign(n, -1);
    w.comp_of_crossing_over.assign(n, -1);
    if (n == 0) return w;
    std::map<Label, std::vector<std::pair<int, int>>> occ;
    for (int c = 0; c < n; ++c)
        for (int s = 0; s < 4; ++s) occ[pd.crossings[c].arc[s]].push_back({c, s});
    auto other_occ = [&](int c, int s) -> std::pair<int, int> {
        for (auto& p : occ[pd.crossings[c].arc[s]])
            if (p != std::make_pair(c, s)) return p;
        fail(Err::Internal, "arc occurrence lookup");
    };
    std::vector<std::array<char, 4>> in_slot(n, {0, 0, 0, 0});
    std::vector<std::array<char, 4>> visited(n, {0, 0, 0, 0});
    int comp = 0;
    std::vector<std::array<int, 2>> pass_comp(n, {-1, -1}); // per crossing: component of pass 0/1
    for (int c0 = 0; c0 < n; ++c0) {
        for (int s0 = 0; s0 < 4; ++s0) {
            if (visited[c0][s0]) continue;
            // Trace a component, marking arrival slots; mark both directions visited.
            int c = c0, s = s0;
            do {
                visited[c][s] = 1;
                in_slot[c][s] = 1;
                pass_comp[c][s % 2] = comp;
                int out = (s + 2) % 4;
                visited[c][out] = 1;
                auto [nc, ns] = other_occ(c, out);
                c = nc, s = ns;
            } while (!(c == c0 && s == s0));
            ++comp;
        }
    }
    for (int c = 0; c < n; ++c) {
        int u_in = in_slot[c][0] ? 0 : 2;
        int o_in = in_slot[c][1] ? 1 : 3;
        int u_out = (u_in + 2) % 4, o_out = (o_in + 2) % 4;
        w.sign[c] = (o_out == (u_out + 3) % 4) ? 1 : -1;
        w.comp_of_crossing_under[c] = pass_comp[c][0];
        w.comp_of_crossing_over[c] = pass_comp[c][1];
        w.writhe += w.sign[c];
        if (pass_comp[c][0] == pass_comp[c][1]) w.self_writhe += w.sign[c];
    }
    return w;
}

} // namespace knotgrid
