#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "colormaps/colormap.hpp"

// Local transformations of color maps: openings and arrows, arrow reversal,
// the replacement move, the bottom-structure decomposition of a map whose
// west column is sorted, lozenge/trapeze region utilities, column grouping,
// and full reduction with exact exchange accounting.

namespace colormaps {

// optional step log: human-readable lines "(operation, site, detail)"
using trace_log = std::vector<std::string>;

inline void trace_add(trace_log* t, const std::string& line)
{
    if (t) t->push_back(line);
}

// ---- openings and arrows ---------------------------------------------------

// two same-color line edges of types l+1 and l+2 sharing the center vertex:
// either both leave it (outward wedge) or both enter it
struct opening {
    vertex center;
    int open_type = 0;  // l
    color col = color::c0;
    bool inward = false;

    edge_id e_plus() const
    {
        int t = (open_type + 1) % 3;
        return inward ? edge_id{t, center - edge_dir(t)} : edge_id{t, center};
    }
    edge_id e_minus() const
    {
        int t = (open_type + 2) % 3;
        return inward ? edge_id{t, center - edge_dir(t)} : edge_id{t, center};
    }

    friend bool operator==(const opening& a, const opening& b)
    {
        return a.center == b.center && a.open_type == b.open_type && a.col == b.col &&
               a.inward == b.inward;
    }
};

inline std::string to_string(const opening& o)
{
    return "type" + std::to_string(o.open_type) + (o.inward ? "-in" : "-out") + " " +
           std::string(1, to_char(o.col)) + "-opening at " + to_string(o.center);
}

// r alternating 3/m lozenge pairs capped by a monochrome face pair
struct arrow {
    opening open;
    int length = 0;
    std::vector<int> region;  // sorted edge indices, 7*length + 5 of them
};

// every opening of the map: centers in row order (south to north, west to
// east), then wedge type, then outward before inward
inline std::vector<opening> find_openings(const color_map& C)
{
    int n = C.size();
    std::vector<opening> out;
    for (int s = 0; s <= n; ++s)
        for (int r = 0; r + s <= n; ++r)
            for (int l = 0; l < 3; ++l)
                for (bool inward : {false, true}) {
                    opening o{{r, s}, l, color::c0, inward};
                    edge_id ep = o.e_plus(), em = o.e_minus();
                    if (!edge_in_lattice(ep, n) || !edge_in_lattice(em, n)) continue;
                    color c = C.at(ep);
                    if (!is_line_color(c) || C.at(em) != c) continue;
                    o.col = c;
                    out.push_back(o);
                }
    return out;
}

namespace detail {

// the arrow layout in a reference frame where the opening is outward of
// type 0 at the origin: r lozenge pairs along the axis, closed by a
// monochrome pair. Every slot lists its two endpoints and expected color.
struct arrow_slot {
    vertex a, b;
    color expect;
};

inline std::vector<arrow_slot> arrow_slots(int r, color c)
{
    color cb = c == color::c0 ? color::c1 : color::c0;
    color low = c == color::c0 ? color::cm : color::c3;   // type-2 diagonals
    color high = c == color::c0 ? color::c3 : color::cm;  // type-1 diagonals
    std::vector<arrow_slot> slots;
    slots.reserve(static_cast<std::size_t>(7 * r + 5));
    for (int k = 0; k <= r; ++k) {
        slots.push_back({{k, 0}, {k + 1, 0}, k < r ? cb : c});     // axis
        slots.push_back({{k, 0}, {k + 1, -1}, c});                 // lower wedge sides
        slots.push_back({{k, 0}, {k, 1}, c});                      // upper wedge sides
        slots.push_back({{k + 1, -1}, {k + 1, 0}, k < r ? low : c});
        slots.push_back({{k, 1}, {k + 1, 0}, k < r ? high : c});
    }
    for (int k = 0; k < r; ++k) {
        slots.push_back({{k + 1, -1}, {k + 2, -1}, cb});  // lower rim
        slots.push_back({{k, 1}, {k + 1, 1}, cb});        // upper rim
    }
    return slots;
}

// map a reference-frame vertex into the lattice for a given opening
inline vertex arrow_frame(const opening& o, vertex v)
{
    vertex u = xi_pow(2 * o.open_type);
    return o.center + cmul(v, o.inward ? -u : u);
}

}  // namespace detail

// the unique maximal arrow at an opening. In a valid map the walk always
// closes inside the lattice and the whole layout carries the expected
// colors; violations are internal errors, not user errors.
inline arrow arrow_at(const color_map& C, const opening& o)
{
    int n = C.size();
    const lattice& lat = C.lat();
    edge_id ep = o.e_plus(), em = o.e_minus();
    if (!edge_in_lattice(ep, n) || !edge_in_lattice(em, n) || C.at(ep) != o.col ||
        C.at(em) != o.col || !is_line_color(o.col))
        throw std::invalid_argument("arrow_at: " + to_string(o) + " is not an opening of the map");

    auto inst = [&](vertex v) { return detail::arrow_frame(o, v); };
    int len = -1;
    for (int k = 0;; ++k) {
        vertex a = inst({k, 0}), b = inst({k + 1, 0});
        if (!in_lattice(a, n) || !in_lattice(b, n))
            throw std::logic_error("arrow_at: walk left the lattice at " + to_string(o));
        color mid = C.at(edge_between(a, b, n));
        if (mid == o.col) {
            len = k;
            break;
        }
        if (!is_line_color(mid))
            throw std::logic_error("arrow_at: walk hit a lozenge color at " + to_string(o));
        if (k > n) throw std::logic_error("arrow_at: runaway walk at " + to_string(o));
    }

    arrow A{o, len, {}};
    for (const auto& s : detail::arrow_slots(len, o.col)) {
        vertex a = inst(s.a), b = inst(s.b);
        if (!in_lattice(a, n) || !in_lattice(b, n))
            throw std::logic_error("arrow_at: layout leaves the lattice at " + to_string(o));
        int ei = lat.index_of(edge_between(a, b, n));
        if (C.at(ei) != s.expect)
            throw std::logic_error("arrow_at: unexpected color inside the arrow at " +
                                   to_string(o));
        A.region.push_back(ei);
    }
    std::sort(A.region.begin(), A.region.end());
    return A;
}

// rotate the arrow's configuration by half a turn: the value at each slot
// moves to the centrally opposite slot. Edges outside the region keep their
// colors, and the result is again valid. Callers holding a defect nearby
// (a gash mid-flight) list its edges as exempt so the face check does not
// flag faces that are theirs to repair.
inline color_map reverse_arrow(const color_map& C, const arrow& a, trace_log* trace = nullptr,
                               const std::vector<edge_id>& exempt = {})
{
    arrow fresh = arrow_at(C, a.open);  // also re-validates the layout
    if (fresh.length != a.length || fresh.region != a.region)
        throw std::invalid_argument("reverse_arrow: arrow does not match the map");
    const lattice& lat = C.lat();
    color_map out = C;
    auto slots = detail::arrow_slots(a.length, a.open.col);
    for (const auto& s : slots) {
        // source slot -> centrally opposite destination slot
        vertex sig_a = vertex{a.length + 1, 0} - s.a;
        vertex sig_b = vertex{a.length + 1, 0} - s.b;
        edge_id src = edge_between(detail::arrow_frame(a.open, s.a),
                                   detail::arrow_frame(a.open, s.b), C.size());
        edge_id dst = edge_between(detail::arrow_frame(a.open, sig_a),
                                   detail::arrow_frame(a.open, sig_b), C.size());
        out.set(dst, C.at(src));
    }
    std::vector<int> skip;
    for (const edge_id& e : exempt) skip.push_back(lat.index_of(e));
    for (int ei : a.region)
        for (int fi : lat.edge_face[static_cast<std::size_t>(ei)]) {
            if (fi < 0) continue;
            const auto& fe = lat.face_edge[static_cast<std::size_t>(fi)];
            bool exempted = false;
            for (int se : skip)
                if (fe[0] == se || fe[1] == se || fe[2] == se) exempted = true;
            if (!exempted && !face_valid(out, static_cast<std::size_t>(fi)))
                throw std::logic_error("reverse_arrow: produced an invalid face at " +
                                       to_string(lat.faces[static_cast<std::size_t>(fi)]));
        }
    trace_add(trace, "(reverse_arrow, " + to_string(a.open) + ", length " +
                         std::to_string(a.length) + ", " + std::to_string(a.region.size()) +
                         " edges)");
    return out;
}

// the opening carrying the reversed arrow: same color and wedge type at the
// far end of the axis, with the opposite orientation. Reversing there undoes
// the first reversal.
inline opening reversed_opening(const arrow& a)
{
    return {detail::arrow_frame(a.open, {a.length + 1, 0}), a.open.open_type, a.open.col,
            !a.open.inward};
}

// ---- the replacement move --------------------------------------------------

// exchange the 3-lozenge north-west of v for an m-lozenge north-east of it,
// shifting the "10" in the bottom word at v to "01"
inline color_map replacement(const color_map& C, vertex v, trace_log* trace = nullptr)
{
    int n = C.size();
    edge_id diag = edge_between(v + xi - one, v, n);  // type 1 into v
    edge_id east = edge_between(v + one, v, n);       // type 0 into v
    if (C.at(diag) != color::c3 || C.at(east) != color::c0)
        throw std::invalid_argument("replacement: preconditions fail at " + to_string(v));
    color_map out = C;
    out.set(edge_between(v, v - one, n), color::c0);
    out.set(east, color::c1);
    out.set(diag, color::c0);
    out.set(edge_between(v, v + xi, n), color::cm);

    const lattice& lat = C.lat();
    for (edge_id e : {edge_id{0, v}, east, diag, edge_id{2, v}})
        for (int fi : lat.edge_face[static_cast<std::size_t>(lat.index_of(e))])
            if (fi >= 0 && !face_valid(out, static_cast<std::size_t>(fi)))
                throw std::invalid_argument("replacement: produced an invalid face at " +
                                            to_string(lat.faces[static_cast<std::size_t>(fi)]));
    trace_add(trace, "(replacement, " + to_string(v) + ", 4 edges)");
    return out;
}

// ---- bottom structure ------------------------------------------------------

// the south row colors read west to east
inline std::string bottom_word(const color_map& C)
{
    std::string w = side_string(C, 0);
    std::reverse(w.begin(), w.end());
    return w;
}

// maximal 0-blocks of the bottom word: block i (0-based) occupies word
// positions x[i]+1 .. y[i], so r(i) = y[i]-x[i] zeros sit there and b(i)
// ones separate it from the previous block. A map with an all-1 bottom
// degenerates to one empty block.
struct bottom_info {
    int p = 1;
    std::vector<int> x, y;

    int r(std::size_t i) const { return y[i] - x[i]; }
    int b(std::size_t i) const { return x[i] - (i ? y[i - 1] : 0); }
};

inline bottom_info bottom_structure(const color_map& C)
{
    if (gash_number(C, 2) != 0)
        throw std::invalid_argument("bottom_structure: needs a sorted west column");
    std::string w = bottom_word(C);
    bottom_info out;
    out.p = 0;
    int n = C.size();
    for (int u = 1; u <= n; ++u) {
        if (w[static_cast<std::size_t>(u - 1)] != '0') continue;
        if (out.p > 0 && out.y.back() == u - 1) {
            out.y.back() = u;  // extend the current block
        } else {
            ++out.p;
            out.x.push_back(u - 1);
            out.y.push_back(u);
        }
    }
    if (out.p == 0) {  // no zeros at all
        out.p = 1;
        out.x = {0};
        out.y = {0};
    }
    return out;
}

// ---- lozenge and trapeze regions -------------------------------------------

// L[r, s, base]: all edges with both endpoints in the rhombus
// {base + u + v*xi : 0 <= u <= r, 0 <= v <= s}
struct lozenge_region {
    vertex base;
    int r = 0;
    int s = 0;
};

// T[r, s, base] (r <= s): same with the staircase cut u + v <= s
struct trapeze_region {
    vertex base;
    int r = 0;
    int s = 0;
};

namespace detail {

template <typename Grid>
std::vector<int> region_edges(const lattice& lat, vertex base, int r, int s, Grid in_grid)
{
    std::vector<int> out;
    for (int v = 0; v <= s; ++v)
        for (int u = 0; u <= r; ++u) {
            if (!in_grid(u, v)) continue;
            vertex a = base + vertex{u, v};
            if (!in_lattice(a, lat.size()))
                throw std::invalid_argument("region leaves the lattice at " + to_string(a));
            for (int t = 0; t < 3; ++t) {
                vertex b = a + edge_dir(t);
                vertex d = b - base;
                if (d.r < 0 || d.r > r || d.s < 0 || d.s > s || !in_grid(d.r, d.s)) continue;
                out.push_back(lat.index_of({t, a}));
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

inline std::vector<int> region_edges(const lattice& lat, const lozenge_region& L)
{
    return detail::region_edges(lat, L.base, L.r, L.s, [](int, int) { return true; });
}

inline std::vector<int> region_edges(const lattice& lat, const trapeze_region& T)
{
    int s = T.s;
    return detail::region_edges(lat, T.base, T.r, T.s,
                                [s](int u, int v) { return u + v <= s; });
}

// does the forced filling hold: type 0 -> 1, type 1 -> 3, type 2 -> 0
inline bool check_lozenge_region(const color_map& C, const lozenge_region& L)
{
    const lattice& lat = C.lat();
    constexpr color want[3] = {color::c1, color::c3, color::c0};
    for (int ei : region_edges(lat, L))
        if (C.at(ei) != want[lat.edges[static_cast<std::size_t>(ei)].type]) return false;
    return true;
}

// clear a trapeze region to all-0 by reversing the arrows at the 0 openings
// climbing each column strip; requires the region's south and west boundary
// edges to be colored 0 already
inline color_map normalize_trapeze(const color_map& C0, const trapeze_region& T,
                                   trace_log* trace = nullptr)
{
    if (T.r > T.s || T.r < 0)
        throw std::invalid_argument("normalize_trapeze: needs 0 <= r <= s");
    int n = C0.size();
    for (int u = 1; u <= T.r; ++u)
        if (C0.at(edge_between(T.base + vertex{u, 0}, T.base + vertex{u - 1, 0}, n)) !=
            color::c0)
            throw std::invalid_argument("normalize_trapeze: south boundary is not all 0");
    for (int v = 0; v <= T.s - 1; ++v)
        if (C0.at(edge_between(T.base + vertex{0, v}, T.base + vertex{0, v + 1}, n)) !=
            color::c0)
            throw std::invalid_argument("normalize_trapeze: west boundary is not all 0");

    color_map C = C0;
    for (int k = 0; k < T.r; ++k) {
        int sk = T.s - k;
        for (int v = 1; v <= sk - 1; ++v) {
            opening o{T.base + vertex{k, v}, 0, color::c0, false};
            if (C.at(o.e_plus()) != color::c0 || C.at(o.e_minus()) != color::c0)
                throw std::logic_error("normalize_trapeze: missing 0 opening at " +
                                       to_string(o.center));
            arrow a = arrow_at(C, o);
            if (a.length > 0) C = reverse_arrow(C, a, trace);
        }
    }
    for (int ei : region_edges(C.lat(), T))
        if (C.at(ei) != color::c0)
            throw std::logic_error("normalize_trapeze: region not cleared at " +
                                   to_string(C.lat().edges[static_cast<std::size_t>(ei)]));
    return C;
}

// ---- column grouping and reduction -----------------------------------------

namespace detail {

// bring the alternating lozenge/trapeze stack above the south row into its
// standard form: lozenge regions hold 3-lozenges, trapeze regions hold 0s
inline color_map normalize_bottom_regions(const color_map& C0, const bottom_info& bs,
                                          int n0, trace_log* trace)
{
    color_map C = C0;
    int s_run = n0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(bs.p); ++i) {
        int y_prev = i ? bs.y[i - 1] : 0;
        lozenge_region L{{y_prev, 0}, bs.b(i), s_run};
        if (!check_lozenge_region(C, L))
            throw std::logic_error("reduce: lozenge region at " + to_string(L.base) +
                                   " is not in standard form");
        if (bs.r(i) > 0) {
            trapeze_region T{{bs.x[i], 0}, bs.r(i), s_run};
            C = normalize_trapeze(C, T, trace);
        }
        s_run -= bs.r(i);
    }
    return C;
}

// one grouping pass: migrate the westmost zero of the last block against
// the previous block, then clean up with the chain of arrow reversals
// climbing from the merge point
inline color_map grouping_round(const color_map& C0, int n0, int* exchanged, trace_log* trace)
{
    bottom_info bs = bottom_structure(C0);
    color_map C = normalize_bottom_regions(C0, bs, n0, trace);

    std::size_t p = static_cast<std::size_t>(bs.p);
    int y_prev = p > 1 ? bs.y[p - 2] : 0;
    for (int v = bs.x[p - 1]; v >= y_prev + 1; --v) {
        C = replacement(C, {v, 0}, trace);
        ++*exchanged;
    }
    for (int q = 1; q <= C.size(); ++q) {
        opening o{vertex{y_prev, 0} + vertex{0, q}, 0, color::c0, false};
        if (!edge_in_lattice(o.e_plus(), C.size()) || !edge_in_lattice(o.e_minus(), C.size()))
            break;
        if (C.at(o.e_plus()) != color::c0 || C.at(o.e_minus()) != color::c0) break;
        arrow a = arrow_at(C, o);
        if (a.length == 0) break;
        C = reverse_arrow(C, a, trace);
    }
    return C;
}

}  // namespace detail

// merge the two easternmost 0-blocks of the bottom word into one, exchanging
// exactly r_p * b_p edges of color 3 for m
inline color_map group_columns(const color_map& C0, trace_log* trace = nullptr)
{
    bottom_info bs = bottom_structure(C0);
    if (bs.p < 2) throw std::invalid_argument("group_columns: needs at least two 0-blocks");
    int n0 = 0;
    for (std::size_t i = 0; i < bs.x.size(); ++i) n0 += bs.r(i);
    std::size_t p = static_cast<std::size_t>(bs.p);
    int rp = bs.r(p - 1), bp = bs.b(p - 1), rq = bs.r(p - 2);

    color_map C = C0;
    int exchanged = 0;
    for (int round = 0; round < rp; ++round)
        C = detail::grouping_round(C, n0, &exchanged, trace);
    if (exchanged != rp * bp)
        throw std::logic_error("group_columns: exchanged " + std::to_string(exchanged) +
                               " edges, expected " + std::to_string(rp * bp));
    bottom_info after = bottom_structure(C);
    if (after.p != bs.p - 1 ||
        after.r(static_cast<std::size_t>(after.p) - 1) != rp + rq)
        throw std::logic_error("group_columns: block structure did not merge as expected");
    return C;
}

// full reduction: sort the bottom word, turning M = n0*n1 - G0 edges of
// color 3 into m edges; the north-east side never changes
struct reduce_result {
    color_map map;
    int exchanged = 0;
};

inline reduce_result reduce(const color_map& C0, trace_log* trace = nullptr)
{
    if (gash_number(C0, 2) != 0)
        throw std::invalid_argument("reduce: needs a sorted west column");
    std::string w0 = bottom_word(C0);
    int n0 = static_cast<int>(std::count(w0.begin(), w0.end(), '0'));
    int n1 = C0.size() - n0;
    int target = n0 * n1 - gash_number(C0, 0);

    reduce_result out{C0, 0};
    int rounds = 0;
    while (bottom_word(out.map).find("10") != std::string::npos) {
        if (++rounds > C0.size() * C0.size() + 2)
            throw std::logic_error("reduce: did not converge");
        out.map = detail::grouping_round(out.map, n0, &out.exchanged, trace);
    }
    if (out.exchanged != target)
        throw std::logic_error("reduce: exchanged " + std::to_string(out.exchanged) +
                               " edges, expected " + std::to_string(target));
    validate(out.map);
    return out;
}

}  // namespace colormaps
