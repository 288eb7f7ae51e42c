#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "colormaps/lattice.hpp"

// Color maps: total edge labelings of T_n by {0, 1, 3, m} in which every
// face's clockwise color triple is a cyclic rotation of (0,0,0), (1,1,1),
// (1,0,3) or (0,1,m), and every boundary edge carries a line color (0 or 1).

namespace colormaps {

enum class color : std::uint8_t { c0 = 0, c1 = 1, c3 = 2, cm = 3 };

inline constexpr std::array<color, 4> all_colors{color::c0, color::c1, color::c3, color::cm};

inline constexpr char to_char(color c)
{
    constexpr char repr[4] = {'0', '1', '3', 'm'};
    return repr[static_cast<std::size_t>(c)];
}

inline color from_char(char ch)
{
    switch (ch) {
        case '0': return color::c0;
        case '1': return color::c1;
        case '3': return color::c3;
        case 'm': return color::cm;
        default: throw std::invalid_argument(std::string("from_char: bad color '") + ch + "'");
    }
}

inline constexpr bool is_line_color(color c) { return c == color::c0 || c == color::c1; }

namespace detail {

// validity and unit-propagation tables over the eight admissible clockwise
// triples; built at compile time, and the completion table doubles as a
// proof that any two placed colors admit at most one completion
struct face_tables {
    bool ok[4][4][4] = {};
    // comp[k][x][y]: color completing slot k when slot k+1 holds x and
    // slot k+2 holds y (indices mod 3); -1 when no valid triple matches
    signed char comp[3][4][4];
};

consteval face_tables make_face_tables()
{
    constexpr int triples[8][3] = {
        {0, 0, 0}, {1, 1, 1},            // monochrome line faces
        {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, // (1,0,3) and rotations
        {0, 1, 3}, {1, 3, 0}, {3, 0, 1}, // (0,1,m) and rotations
    };
    face_tables t{};
    for (auto& plane : t.comp)
        for (auto& row : plane)
            for (auto& cell : row) cell = -1;
    for (const auto& tr : triples) {
        t.ok[tr[0]][tr[1]][tr[2]] = true;
        for (int k = 0; k < 3; ++k) {
            signed char& slot = t.comp[k][tr[(k + 1) % 3]][tr[(k + 2) % 3]];
            if (slot != -1) throw "completion not unique";  // compile-time canary
            slot = static_cast<signed char>(tr[k]);
        }
    }
    return t;
}

inline constexpr face_tables face_tab = make_face_tables();

}  // namespace detail

// is (c1, c2, c3) an admissible clockwise face triple
inline constexpr bool face_ok(color a, color b, color c)
{
    return detail::face_tab.ok[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]
                              [static_cast<std::size_t>(c)];
}

// the unique color at clockwise position pos_missing (1..3) given the colors
// at the other two positions, or nullopt when no valid triple matches
inline std::optional<color> complete_face(int pos_a, color c_a, int pos_b, color c_b)
{
    if (pos_a < 1 || pos_a > 3 || pos_b < 1 || pos_b > 3 || pos_a == pos_b)
        throw std::invalid_argument("complete_face: positions must be distinct in 1..3");
    int miss = 6 - pos_a - pos_b;           // 1-based missing position
    int k = miss - 1;
    // color at slot (k+1)%3 first, slot (k+2)%3 second
    color x, y;
    if ((k + 1) % 3 == pos_a - 1) {
        x = c_a;
        y = c_b;
    } else {
        x = c_b;
        y = c_a;
    }
    signed char r =
        detail::face_tab.comp[k][static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
    if (r < 0) return std::nullopt;
    return static_cast<color>(r);
}

// a total edge coloring of T_n; value type with the canonical edge order of
// lattice::of(n)
class color_map {
public:
    explicit color_map(int n, color fill = color::c0)
        : n_(n), lat_(&lattice::of(n)), colors_(lat_->edge_count(), fill)
    {
    }

    int size() const { return n_; }
    const lattice& lat() const { return *lat_; }

    color at(int idx) const { return colors_[static_cast<std::size_t>(idx)]; }
    color at(edge_id e) const { return colors_[static_cast<std::size_t>(lat_->index_of(e))]; }
    void set(int idx, color c) { colors_[static_cast<std::size_t>(idx)] = c; }
    void set(edge_id e, color c)
    {
        colors_[static_cast<std::size_t>(lat_->index_of(e))] = c;
    }

    const std::vector<color>& raw() const { return colors_; }
    std::vector<color>& raw() { return colors_; }

    friend bool operator==(const color_map& a, const color_map& b)
    {
        return a.n_ == b.n_ && a.colors_ == b.colors_;
    }
    friend bool operator!=(const color_map& a, const color_map& b) { return !(a == b); }
    friend bool operator<(const color_map& a, const color_map& b)
    {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        return a.colors_ < b.colors_;
    }

private:
    int n_;
    const lattice* lat_;
    std::vector<color> colors_;
};

inline bool face_valid(const color_map& C, std::size_t face_index)
{
    const auto& fe = C.lat().face_edge[face_index];
    return face_ok(C.at(fe[0]), C.at(fe[1]), C.at(fe[2]));
}

inline bool is_valid(const color_map& C)
{
    const lattice& lat = C.lat();
    for (std::size_t fi = 0; fi < lat.faces.size(); ++fi)
        if (!face_valid(C, fi)) return false;
    for (const auto& side : lat.boundary)
        for (int ei : side)
            if (!is_line_color(C.at(ei))) return false;
    return true;
}

// throwing variant naming the first offender
inline void validate(const color_map& C)
{
    const lattice& lat = C.lat();
    for (std::size_t fi = 0; fi < lat.faces.size(); ++fi)
        if (!face_valid(C, fi))
            throw std::invalid_argument("validate: face " + to_string(lat.faces[fi]) +
                                        " carries an inadmissible triple");
    for (const auto& side : lat.boundary)
        for (int ei : side)
            if (!is_line_color(C.at(ei)))
                throw std::invalid_argument("validate: boundary edge " +
                                            to_string(lat.edges[static_cast<std::size_t>(ei)]) +
                                            " has a lozenge color");
}

// the side-l boundary colors in increasing height order, as characters
inline std::string side_string(const color_map& C, int side)
{
    if (side < 0 || side > 2) throw std::invalid_argument("side_string: side must be 0..2");
    std::string out;
    for (int ei : C.lat().boundary[static_cast<std::size_t>(side)]) out += to_char(C.at(ei));
    return out;
}

inline std::array<std::string, 3> boundary_of(const color_map& C)
{
    return {side_string(C, 0), side_string(C, 1), side_string(C, 2)};
}

// inversion count of a string over {0,1,2}: pairs (j < i) with u_j = '1'
// and u_i = '0'; the symbol '2' is transparent
inline int string_g(std::string_view u)
{
    int ones = 0, g = 0;
    for (char ch : u) {
        if (ch == '1')
            ++ones;
        else if (ch == '0')
            g += ones;
        else if (ch != '2')
            throw std::invalid_argument(std::string("string_g: bad symbol '") + ch + "'");
    }
    return g;
}

// gash number of side l: for every 0-colored edge on the side, the number
// of 1-colored edges at strictly smaller height
inline int gash_number(const color_map& C, int side)
{
    if (side < 0 || side > 2) throw std::invalid_argument("gash_number: side must be 0..2");
    int ones = 0, g = 0;
    for (int ei : C.lat().boundary[static_cast<std::size_t>(side)]) {
        color c = C.at(ei);
        if (c == color::c1)
            ++ones;
        else if (c == color::c0)
            g += ones;
    }
    return g;
}

// three boundary strings in increasing-height order with equal 0/1 counts
// on every side
struct boundary_condition {
    int n0 = 0;  // zeros per side
    int n1 = 0;  // ones per side
    std::array<std::string, 3> side;

    boundary_condition(std::string s0, std::string s1, std::string s2)
        : side{std::move(s0), std::move(s1), std::move(s2)}
    {
        if (side[0].empty()) throw std::invalid_argument("boundary_condition: empty side");
        for (const auto& s : side) {
            if (s.size() != side[0].size())
                throw std::invalid_argument("boundary_condition: side lengths differ");
            for (char ch : s)
                if (ch != '0' && ch != '1')
                    throw std::invalid_argument(
                        std::string("boundary_condition: bad symbol '") + ch + "'");
        }
        auto zeros = [](const std::string& s) {
            return static_cast<int>(std::count(s.begin(), s.end(), '0'));
        };
        n0 = zeros(side[0]);
        if (zeros(side[1]) != n0 || zeros(side[2]) != n0)
            throw std::invalid_argument("boundary_condition: sides disagree on 0/1 counts");
        n1 = static_cast<int>(side[0].size()) - n0;
    }

    int n() const { return n0 + n1; }

    friend bool operator==(const boundary_condition& a, const boundary_condition& b)
    {
        return a.side == b.side;
    }
};

struct prediction {
    int m_pred = 0;  // predicted m-edge count; negative means no map exists
    int s_pred = 0;  // predicted 3-edge count; same caveat
};

// closed-form edge counts from the boundary alone
inline prediction predict_counts(const boundary_condition& b)
{
    int gsum = string_g(b.side[0]) + string_g(b.side[1]) + string_g(b.side[2]);
    int lozenges = b.n0 * b.n1;
    return {gsum - lozenges, 2 * lozenges - gsum};
}

// the same arithmetic at the puzzle-boundary level: strings over {0,1,2},
// returning (label-7 count, soft-crossing count)
inline std::pair<int, int> predict_puzzle_counts(std::string_view u, std::string_view v,
                                                 std::string_view w)
{
    auto tally = [](std::string_view s) {
        std::array<int, 2> c{0, 0};
        for (char ch : s) {
            if (ch == '0')
                ++c[0];
            else if (ch == '1')
                ++c[1];
            else if (ch != '2')
                throw std::invalid_argument(
                    std::string("predict_puzzle_counts: bad symbol '") + ch + "'");
        }
        return c;
    };
    auto cu = tally(u), cv = tally(v), cw = tally(w);
    if (cu != cv || cu != cw)
        throw std::invalid_argument("predict_puzzle_counts: sides disagree on 0/1 counts (" +
                                    std::to_string(cu[0]) + "/" + std::to_string(cu[1]) + ", " +
                                    std::to_string(cv[0]) + "/" + std::to_string(cv[1]) + ", " +
                                    std::to_string(cw[0]) + "/" + std::to_string(cw[1]) + ")");
    int gsum = string_g(u) + string_g(v) + string_g(w);
    int lozenges = cu[0] * cu[1];
    return {gsum - lozenges, 2 * lozenges - gsum};
}

inline int count_color(const color_map& C, color c)
{
    int k = 0;
    for (color x : C.raw())
        if (x == c) ++k;
    return k;
}

// monochrome faces of line color j: (upward count, downward count)
inline std::pair<int, int> count_mono_faces(const color_map& C, int j)
{
    if (j != 0 && j != 1) throw std::invalid_argument("count_mono_faces: color must be 0 or 1");
    color c = j == 0 ? color::c0 : color::c1;
    int direct = 0, reversed = 0;
    const lattice& lat = C.lat();
    for (std::size_t fi = 0; fi < lat.faces.size(); ++fi) {
        const auto& fe = lat.face_edge[fi];
        if (C.at(fe[0]) == c && C.at(fe[1]) == c && C.at(fe[2]) == c)
            (lat.faces[fi].rev ? reversed : direct)++;
    }
    return {direct, reversed};
}

// ---- text serialization ----------------------------------------------------
//
// line 1: "n <n>", then one line per edge in canonical order:
// "<type> <r> <s> <color>" with r, s the edge origin. Serializing a parsed
// map reproduces the input byte for byte.

class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

inline std::string to_text(const color_map& C)
{
    std::string out = "n " + std::to_string(C.size()) + "\n";
    const lattice& lat = C.lat();
    for (std::size_t ei = 0; ei < lat.edges.size(); ++ei) {
        edge_id e = lat.edges[ei];
        out += std::to_string(e.type) + ' ' + std::to_string(e.o.r) + ' ' +
               std::to_string(e.o.s) + ' ';
        out += to_char(C.at(static_cast<int>(ei)));
        out += '\n';
    }
    return out;
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line)
{
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline int parse_int(const std::string& tok, std::size_t line, const char* what)
{
    try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw parse_error(line, std::string("expected ") + what + ", got '" + tok + "'");
    }
}

}  // namespace detail

// parse one map record from `in`, starting at *line_no; returns nullopt at
// end of input (only blank lines remain); *line_no tracks position for
// error messages
inline std::optional<color_map> parse_map_record(std::istream& in, std::size_t* line_no)
{
    std::string line;
    std::vector<std::string> toks;
    // skip blank lines between records
    for (;;) {
        if (!std::getline(in, line)) return std::nullopt;
        ++*line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        toks = detail::split_ws(line);
        if (!toks.empty()) break;
    }
    if (toks.size() != 2 || toks[0] != "n")
        throw parse_error(*line_no, "expected header 'n <size>'");
    int n = detail::parse_int(toks[1], *line_no, "size");
    if (n < 1) throw parse_error(*line_no, "size must be positive");

    const lattice& lat = lattice::of(n);
    color_map C(n);
    std::vector<bool> seen(lat.edge_count(), false);
    for (std::size_t k = 0; k < lat.edge_count(); ++k) {
        if (!std::getline(in, line))
            throw parse_error(*line_no, "unexpected end of input: " +
                                            std::to_string(lat.edge_count() - k) +
                                            " edge lines missing");
        ++*line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        toks = detail::split_ws(line);
        if (toks.size() != 4)
            throw parse_error(*line_no, "expected '<type> <r> <s> <color>'");
        edge_id e{detail::parse_int(toks[0], *line_no, "edge type"),
                  {detail::parse_int(toks[1], *line_no, "origin r"),
                   detail::parse_int(toks[2], *line_no, "origin s")}};
        int ei = lat.try_index(e);
        if (ei < 0) throw parse_error(*line_no, to_string(e) + " is not an edge of the lattice");
        if (seen[static_cast<std::size_t>(ei)])
            throw parse_error(*line_no, to_string(e) + " listed twice");
        seen[static_cast<std::size_t>(ei)] = true;
        if (toks[3].size() != 1) throw parse_error(*line_no, "bad color '" + toks[3] + "'");
        try {
            C.set(ei, from_char(toks[3][0]));
        } catch (const std::invalid_argument&) {
            throw parse_error(*line_no, "bad color '" + toks[3] + "'");
        }
    }
    return C;
}

inline color_map parse_map(std::istream& in)
{
    std::size_t line_no = 0;
    auto C = parse_map_record(in, &line_no);
    if (!C) throw parse_error(line_no, "empty input");
    return *C;
}

inline color_map parse_map(const std::string& text)
{
    std::istringstream in(text);
    return parse_map(in);
}

// parse a whole stream of blank-line-separated records
inline std::vector<color_map> parse_maps(std::istream& in)
{
    std::vector<color_map> out;
    std::size_t line_no = 0;
    while (auto C = parse_map_record(in, &line_no)) out.push_back(std::move(*C));
    return out;
}

}  // namespace colormaps
