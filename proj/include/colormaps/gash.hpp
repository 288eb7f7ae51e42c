#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "colormaps/transforms.hpp"

// Gashes: a movable two-edge defect used to sort the west column one
// adjacent transposition at a time. A gash occupies two same-type edges
// meeting at its center; the map still stores their original colors, and
// the intended (swapped) colors get written onto vacated edges as the gash
// propagates east until it is removed or absorbed into the north-east side.

namespace colormaps {

enum class gash_phase { original, swapped };

struct gash {
    int gash_type = 2;  // 1 or 2
    vertex center;
    gash_phase phase = gash_phase::original;

    // the edge leaving the center and the one entering it
    edge_id head() const { return {gash_type, center}; }
    edge_id tail() const { return {gash_type, center - edge_dir(gash_type)}; }
    color head_original() const { return gash_type == 2 ? color::c0 : color::c1; }
    color tail_original() const { return gash_type == 2 ? color::c1 : color::c0; }
    color head_swapped() const { return tail_original(); }
    color tail_swapped() const { return head_original(); }
};

struct gashed_map {
    color_map map;
    gash g;
    int step_count = 0;
};

enum class config_kind { i, ii, iii, iv, v, vi, boundary1 };

inline std::string to_string(config_kind k)
{
    switch (k) {
        case config_kind::i: return "i";
        case config_kind::ii: return "ii";
        case config_kind::iii: return "iii";
        case config_kind::iv: return "iv";
        case config_kind::v: return "v";
        case config_kind::vi: return "vi";
        case config_kind::boundary1: return "boundary1";
    }
    return "?";
}

// both gash edges exist and still carry their original colors
inline void check_gash(const color_map& C, const gash& g)
{
    int n = C.size();
    if (g.gash_type != 1 && g.gash_type != 2)
        throw std::invalid_argument("gash type must be 1 or 2");
    if (!edge_in_lattice(g.head(), n) || !edge_in_lattice(g.tail(), n))
        throw std::invalid_argument("gash at " + to_string(g.center) + " leaves the lattice");
    if (g.phase == gash_phase::original &&
        (C.at(g.head()) != g.head_original() || C.at(g.tail()) != g.tail_original()))
        throw std::invalid_argument("gash at " + to_string(g.center) +
                                    " does not carry its original colors");
}

namespace detail {

// the five probed edges around a gash, in table order
inline std::array<edge_id, 5> gash_probes(const gash& g)
{
    vertex x = g.center;
    if (g.gash_type == 2)
        return {edge_id{1, x + xi}, edge_id{0, x + one}, edge_id{1, x}, edge_id{0, x + cxi},
                edge_id{2, x + cxi}};
    return {edge_id{0, x + one}, edge_id{2, x + cxi}, edge_id{0, x + xi}, edge_id{2, x},
            edge_id{1, x + xi}};
}

// one adjacent configuration: the probe colors identifying it, the probe
// rewrites it performs, and where the gash goes (type 0 = gash dissolved)
struct gash_rule {
    config_kind kind;
    std::array<color, 5> pattern;
    struct probe_write {
        int slot;
        color value;
    };
    std::array<probe_write, 3> writes;
    int write_count;
    vertex step;    // center displacement
    int next_type;  // 1, 2, or 0 when terminal
};

constexpr color K0 = color::c0, K1 = color::c1, K3 = color::c3, KM = color::cm;

// probe order: t1 north-east, t0 east, t1 south, t0 south-east, t2 south-east
inline constexpr std::array<gash_rule, 6> type2_rules{{
    {config_kind::i, {K0, K0, K0, K3, K0}, {{{1, K3}, {3, K0}, {}}}, 2, {1, -1}, 2},
    {config_kind::ii, {K3, K1, K1, K1, K1}, {{{0, K1}, {2, K3}, {}}}, 2, {1, 0}, 2},
    {config_kind::iii, {K0, K0, K1, K1, K3}, {{{2, K3}, {1, K1}, {4, K0}}}, 3, {1, 0}, 1},
    {config_kind::iv, {K3, K1, K0, K3, KM}, {{{}, {}, {}}}, 0, {0, 0}, 2},
    {config_kind::v, {K1, KM, K1, K1, K0}, {{{1, K1}, {2, K3}, {}}}, 2, {0, 0}, 0},
    {config_kind::vi, {K0, K0, KM, K0, K1}, {{{1, K3}, {2, K0}, {}}}, 2, {0, 0}, 0},
}};

// probe order: t0 east, t2 south-east, t0 north, t2 north, t1 north-east
inline constexpr std::array<gash_rule, 6> type1_rules{{
    {config_kind::i, {K1, K1, K3, K1, K1}, {{{0, K3}, {2, K1}, {}}}, 2, {0, 1}, 1},
    {config_kind::ii, {K0, K3, K0, K0, K0}, {{{3, K3}, {1, K0}, {}}}, 2, {1, 0}, 1},
    {config_kind::iii, {K1, K1, K0, K0, K3}, {{{3, K3}, {4, K1}, {0, K0}}}, 3, {1, 0}, 2},
    {config_kind::iv, {K0, K3, K3, K1, KM}, {{{}, {}, {}}}, 0, {0, 0}, 1},
    {config_kind::v, {KM, K0, K0, K0, K1}, {{{0, K0}, {3, K3}, {}}}, 2, {0, 0}, 0},
    {config_kind::vi, {K1, K1, K1, KM, K0}, {{{0, K3}, {3, K1}, {}}}, 2, {0, 0}, 0},
}};

inline const gash_rule& rule_for(const gashed_map& G, config_kind k)
{
    const auto& rules = G.g.gash_type == 2 ? type2_rules : type1_rules;
    for (const auto& r : rules)
        if (r.kind == k) return r;
    throw std::logic_error("rule_for: no rule for " + to_string(k));
}

// write the swapped colors onto the (vacated) gash edges plus the rule's
// probe rewrites
inline void apply_writes(gashed_map& G, const gash_rule& rule)
{
    auto probes = gash_probes(G.g);
    G.map.set(G.g.head(), G.g.head_swapped());
    G.map.set(G.g.tail(), G.g.tail_swapped());
    for (int w = 0; w < rule.write_count; ++w)
        G.map.set(probes[static_cast<std::size_t>(rule.writes[static_cast<std::size_t>(w)].slot)],
                  rule.writes[static_cast<std::size_t>(w)].value);
}

}  // namespace detail

inline config_kind classify(const gashed_map& G)
{
    check_gash(G.map, G.g);
    int n = G.map.size();
    if (G.g.gash_type == 1 && G.g.center.r + G.g.center.s == n) return config_kind::boundary1;
    auto probes = detail::gash_probes(G.g);
    std::array<color, 5> got;
    for (std::size_t i = 0; i < 5; ++i) {
        if (!edge_in_lattice(probes[i], n))
            throw std::logic_error("classify: probe off the lattice at " +
                                   to_string(G.g.center));
        got[i] = G.map.at(probes[i]);
    }
    const auto& rules = G.g.gash_type == 2 ? detail::type2_rules : detail::type1_rules;
    for (const auto& r : rules)
        if (r.pattern == got) return r.kind;
    std::string seen;
    for (color c : got) seen += to_char(c);
    throw std::logic_error("classify: unmatched configuration " + seen + " for a type-" +
                           std::to_string(G.g.gash_type) + " gash at " + to_string(G.g.center));
}

// every face not touching a gash edge must be valid, and the gash edges
// must still hold their original colors
inline void check_gash_invariant(const gashed_map& G)
{
    check_gash(G.map, G.g);
    const lattice& lat = G.map.lat();
    int hi = lat.index_of(G.g.head()), ti = lat.index_of(G.g.tail());
    for (std::size_t fi = 0; fi < lat.faces.size(); ++fi) {
        const auto& fe = lat.face_edge[fi];
        if (fe[0] == hi || fe[1] == hi || fe[2] == hi) continue;
        if (fe[0] == ti || fe[1] == ti || fe[2] == ti) continue;
        if (!face_valid(G.map, fi))
            throw std::logic_error("gash invariant broken at " + to_string(lat.faces[fi]));
    }
}

// advance the gash one position per its adjacent configuration; only the
// pass-through kinds (i)-(iv) are legal here
inline gashed_map propagate_step(const gashed_map& G0, trace_log* trace = nullptr)
{
    config_kind k = classify(G0);
    if (k != config_kind::i && k != config_kind::ii && k != config_kind::iii &&
        k != config_kind::iv)
        throw std::invalid_argument("propagate_step: terminal configuration " + to_string(k));

    gashed_map G = G0;
    config_kind seen = k;
    if (k == config_kind::iv) {
        // a same-color arrow sits at the center; reverting it exposes (i)
        opening o{G.g.center, 0, G.g.gash_type == 2 ? color::c0 : color::c1, false};
        arrow a = arrow_at(G.map, o);
        if (a.length == 0)
            throw std::logic_error("propagate_step: configuration iv with a length-0 arrow");
        G.map = reverse_arrow(G.map, a, trace, {G.g.head(), G.g.tail()});
        if (classify(G) != config_kind::i)
            throw std::logic_error("propagate_step: arrow reversal did not expose i");
        k = config_kind::i;
    }

    const detail::gash_rule& rule = detail::rule_for(G, k);
    detail::apply_writes(G, rule);
    G.g.center = G.g.center + rule.step;
    G.g.gash_type = rule.next_type;
    ++G.step_count;
    check_gash_invariant(G);
    trace_add(trace, "(step " + std::to_string(G.step_count) + ", " + to_string(seen) + ", " +
                         std::to_string(G.g.center.r) + ", " + std::to_string(G.g.center.s) +
                         ", type " + std::to_string(G.g.gash_type) + ")");
    return G;
}

// run the gash east until it reaches a terminal configuration
inline std::pair<gashed_map, config_kind> propagate(const color_map& C, const gash& g,
                                                    trace_log* trace = nullptr)
{
    gashed_map G{C, g, 0};
    int bound = (C.size() + 1) * (C.size() + 1);
    for (;;) {
        config_kind k = classify(G);
        if (k == config_kind::v || k == config_kind::vi || k == config_kind::boundary1)
            return {std::move(G), k};
        if (G.step_count >= bound)
            throw std::logic_error("propagate: exceeded the termination bound");
        G = propagate_step(G, trace);
    }
}

// dissolve a gash in configuration (v) or (vi): the gash edges take their
// swapped colors and the east lozenge collapses, trading one m for one 3
inline color_map remove_gash(const gashed_map& G0, trace_log* trace = nullptr)
{
    config_kind k = classify(G0);
    if (k != config_kind::v && k != config_kind::vi)
        throw std::invalid_argument("remove_gash: configuration " + to_string(k) +
                                    " is not removable");
    gashed_map G = G0;
    detail::apply_writes(G, detail::rule_for(G, k));
    G.g.phase = gash_phase::swapped;
    validate(G.map);
    trace_add(trace, "(step " + std::to_string(G.step_count + 1) + ", " + to_string(k) +
                         " removal, " + std::to_string(G.g.center.r) + ", " +
                         std::to_string(G.g.center.s) + ", type " +
                         std::to_string(G.g.gash_type) + ")");
    return G.map;
}

// absorb a gash that reached the north-east side: its two boundary edges
// simply take their swapped colors
inline color_map finish_on_boundary(const gashed_map& G0, trace_log* trace = nullptr)
{
    if (classify(G0) != config_kind::boundary1)
        throw std::invalid_argument("finish_on_boundary: gash is not on the north-east side");
    gashed_map G = G0;
    G.map.set(G.g.head(), G.g.head_swapped());
    G.map.set(G.g.tail(), G.g.tail_swapped());
    G.g.phase = gash_phase::swapped;
    validate(G.map);
    trace_add(trace, "(step " + std::to_string(G.step_count + 1) + ", boundary1, " +
                         std::to_string(G.g.center.r) + ", " + std::to_string(G.g.center.s) +
                         ", type " + std::to_string(G.g.gash_type) + ")");
    return G.map;
}

// one induction step of the west-column sort: open a gash at the lowest
// adjacent 1-below-0 pair on side 2, run it east, and finish it
enum class decrement_case { removal, boundary };

struct decrement_result {
    color_map map;
    decrement_case kind;
};

inline decrement_result decrement_g2(const color_map& C, trace_log* trace = nullptr)
{
    if (gash_number(C, 2) < 1)
        throw std::invalid_argument("decrement_g2: west column is already sorted");
    std::string w = side_string(C, 2);
    int start = -1;
    for (int h = 1; h < C.size(); ++h)
        if (w[static_cast<std::size_t>(h)] == '0' && w[static_cast<std::size_t>(h - 1)] == '1') {
            start = h;
            break;
        }
    if (start < 0) throw std::logic_error("decrement_g2: positive gash number without a pair");

    auto [G, terminal] = propagate(C, gash{2, {0, start}}, trace);
    color_map out = terminal == config_kind::boundary1 ? finish_on_boundary(G, trace)
                                                       : remove_gash(G, trace);
    if (gash_number(out, 2) != gash_number(C, 2) - 1 ||
        gash_number(out, 0) != gash_number(C, 0) || side_string(out, 0) != side_string(C, 0))
        throw std::logic_error("decrement_g2: postcondition violated");
    return {std::move(out),
            terminal == config_kind::boundary1 ? decrement_case::boundary
                                               : decrement_case::removal};
}

}  // namespace colormaps
