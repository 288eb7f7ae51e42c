#pragma once

#include <climits>
#include <string>
#include <utility>
#include <vector>

#include "colormaps/transforms.hpp"

// Reduced maps as path families. Once the west column is sorted and the
// bottom zeros sit in one block at the far west, the triangle below the
// diagonal r + s = n0 is forced to 0 and the rest of the map decomposes
// into n0 non-intersecting paths of 0 colored type-1 edges: each step
// crosses an m lozenge (east) or a 3 lozenge (north-east), and the step
// words alone rebuild the map. Counting the families with the standard
// determinant then counts the reduced maps per north-east side.

namespace colormaps {

inline bool is_reduced(const color_map& C)
{
    if (gash_number(C, 2) != 0) return false;
    bottom_info bs = bottom_structure(C);
    return bs.p == 1 && bs.b(0) == 0;
}

struct path_family {
    int n = 0, n0 = 0, n1 = 0;
    std::vector<std::string> steps;  // one line per path, 'H'/'V', length n1
    std::vector<int> targets;        // heights of the 0 edges on side 1, descending
};

// one line per path
inline std::string to_text(const path_family& pf)
{
    std::string out;
    for (const auto& line : pf.steps) {
        out += line;
        out += '\n';
    }
    return out;
}

inline path_family extract_paths(const color_map& C)
{
    if (!is_reduced(C)) throw std::invalid_argument("extract_paths: map is not reduced");
    int n = C.size();
    int n0 = 0;
    for (char c : side_string(C, 1)) n0 += c == '0';
    int n1 = n - n0;
    const lattice& lat = C.lat();

    // the forced all-0 triangle below the diagonal
    trapeze_region tri{{0, 0}, n0, n0};
    std::vector<char> in_paths_region(lat.edges.size(), 1);
    for (int ei : region_edges(lat, tri)) {
        if (C.at(ei) != color::c0)
            throw std::logic_error("extract_paths: the south-west triangle is not all 0");
        in_paths_region[static_cast<std::size_t>(ei)] = 0;
    }
    // the diagonal edges themselves carry the path starts
    for (int i = 1; i <= n0; ++i)
        in_paths_region[static_cast<std::size_t>(
            lat.index_of(edge_id{1, vertex{n0 - i, i}}))] = 1;
    // everything 0 colored out here lies on a path, hence has type 1
    for (std::size_t ei = 0; ei < lat.edges.size(); ++ei)
        if (in_paths_region[ei] && C.at(static_cast<int>(ei)) == color::c0 &&
            lat.edges[ei].type != 1)
            throw std::logic_error("extract_paths: a 0 edge of type " +
                                   std::to_string(lat.edges[ei].type) + " at " +
                                   to_string(lat.edges[ei].o) + " blocks the path reading");

    path_family pf{n, n0, n1, std::vector<std::string>(static_cast<std::size_t>(n0)), {}};
    std::vector<vertex> front(static_cast<std::size_t>(n0));
    for (int i = 1; i <= n0; ++i) front[static_cast<std::size_t>(i - 1)] = {n0 - i, i};

    for (int step = 0; step < n1; ++step) {
        for (std::size_t i = 0; i < front.size(); ++i) {
            vertex o = front[i];
            if (C.at(edge_id{1, o}) != color::c0)
                throw std::logic_error("extract_paths: path left the 0 edges at " + to_string(o));
            // the face north-east of the current edge holds the next lozenge
            color east = C.at(edge_id{0, o + one});
            color diag = C.at(edge_id{2, o + cxi});
            if (east == color::c3 && diag == color::c1) {
                pf.steps[i] += 'V';
                front[i] = o + xi;
            } else if (east == color::c1 && diag == color::cm) {
                pf.steps[i] += 'H';
                front[i] = o + one;
            } else {
                throw std::logic_error("extract_paths: no lozenge north-east of " + to_string(o));
            }
        }
        for (std::size_t i = 0; i + 1 < front.size(); ++i)
            if (front[i].s >= front[i + 1].s)
                throw std::logic_error("extract_paths: paths touched after step " +
                                       std::to_string(step + 1));
    }

    // paths end on the 0 colored side-1 edges, highest first
    for (vertex o : front) pf.targets.push_back(o.r);
    std::vector<int> expected;
    std::string s1 = side_string(C, 1);
    for (int h = n - 1; h >= 0; --h)
        if (s1[static_cast<std::size_t>(h)] == '0') expected.push_back(h);
    if (pf.targets != expected)
        throw std::logic_error("extract_paths: targets do not match side 1");
    return pf;
}

// (horizontal, vertical) step totals, from the target heights alone
inline std::pair<long long, long long> step_counts(const path_family& pf)
{
    long long n3 = 0;
    for (int i = 1; i <= pf.n0; ++i) n3 += pf.n - pf.targets[static_cast<std::size_t>(i - 1)] - i;
    return {static_cast<long long>(pf.n0) * pf.n1 - n3, n3};
}

// rebuild the reduced map: all-0 triangle, lozenges along the paths, 1s
// everywhere else
inline color_map reconstruct(const path_family& pf)
{
    if (static_cast<int>(pf.steps.size()) != pf.n0 || pf.n != pf.n0 + pf.n1)
        throw std::invalid_argument("reconstruct: inconsistent family shape");
    color_map out(pf.n, color::c1);
    const lattice& lat = out.lat();
    for (int ei : region_edges(lat, trapeze_region{{0, 0}, pf.n0, pf.n0}))
        out.set(ei, color::c0);
    for (int i = 1; i <= pf.n0; ++i) {
        const std::string& word = pf.steps[static_cast<std::size_t>(i - 1)];
        if (static_cast<int>(word.size()) != pf.n1)
            throw std::invalid_argument("reconstruct: path " + std::to_string(i) +
                                        " has the wrong number of steps");
        vertex o{pf.n0 - i, i};
        for (char c : word) {
            if (c == 'V') {
                out.set(edge_id{0, o + one}, color::c3);
                o = o + xi;
            } else if (c == 'H') {
                out.set(edge_id{2, o + cxi}, color::cm);
                o = o + one;
            } else {
                throw std::invalid_argument("reconstruct: steps must be 'H' or 'V'");
            }
            out.set(edge_id{1, o}, color::c0);
        }
    }
    validate(out);
    return out;
}

namespace detail {

inline long long binomial(int n, int k)
{
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned long long r = 1;
    for (int j = 1; j <= k; ++j) {
        unsigned long long f = static_cast<unsigned long long>(n - k + j);
        if (r > ULLONG_MAX / f) throw std::overflow_error("binomial overflow");
        r = r * f / static_cast<unsigned long long>(j);  // integral at every step
    }
    if (r > static_cast<unsigned long long>(LLONG_MAX))
        throw std::overflow_error("binomial overflow");
    return static_cast<long long>(r);
}

// fraction-free elimination; every division is exact
inline long long bareiss_det(std::vector<std::vector<long long>> m)
{
    int size = static_cast<int>(m.size());
    if (size == 0) return 1;
    long long sign = 1, prev = 1;
    auto clamped = [](__int128 t) {
        if (t > LLONG_MAX || t < LLONG_MIN) throw std::overflow_error("determinant overflow");
        return static_cast<long long>(t);
    };
    for (int k = 0; k + 1 < size; ++k) {
        if (m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < size; ++i)
                if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return 0;
            std::swap(m[static_cast<std::size_t>(k)], m[static_cast<std::size_t>(swap_row)]);
            sign = -sign;
        }
        for (int i = k + 1; i < size; ++i)
            for (int j = k + 1; j < size; ++j) {
                auto& mi = m[static_cast<std::size_t>(i)];
                const auto& mk = m[static_cast<std::size_t>(k)];
                __int128 t = static_cast<__int128>(mi[static_cast<std::size_t>(j)]) *
                                 mk[static_cast<std::size_t>(k)] -
                             static_cast<__int128>(mi[static_cast<std::size_t>(k)]) *
                                 mk[static_cast<std::size_t>(j)];
                mi[static_cast<std::size_t>(j)] = clamped(t / prev);
            }
        prev = m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    }
    return sign * m[static_cast<std::size_t>(size - 1)][static_cast<std::size_t>(size - 1)];
}

}  // namespace detail

// entry (i, j): ways for path i to end at the j-th highest 0 edge of side 1
inline std::vector<std::vector<long long>> lgv_matrix(const std::string& side1)
{
    int n = static_cast<int>(side1.size());
    std::vector<int> zeros_desc;
    for (int h = n - 1; h >= 0; --h) {
        char c = side1[static_cast<std::size_t>(h)];
        if (c != '0' && c != '1')
            throw std::invalid_argument("lgv_matrix: side string must be over {0, 1}");
        if (c == '0') zeros_desc.push_back(h);
    }
    int n0 = static_cast<int>(zeros_desc.size()), n1 = n - n0;
    std::vector<std::vector<long long>> a(static_cast<std::size_t>(n0),
                                          std::vector<long long>(static_cast<std::size_t>(n0)));
    for (int i = 1; i <= n0; ++i)
        for (int j = 1; j <= n0; ++j)
            a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                detail::binomial(n1, n - zeros_desc[static_cast<std::size_t>(j - 1)] - i);
    return a;
}

// the number of reduced maps whose side-1 string is side1
inline long long lgv_count(const std::string& side1)
{
    return detail::bareiss_det(lgv_matrix(side1));
}

}  // namespace colormaps
