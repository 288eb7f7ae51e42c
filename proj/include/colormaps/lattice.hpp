#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

// Geometry of the size-n triangular lattice T_n.
//
// Vertices are r + s*xi with integer r, s >= 0 and r + s <= n, where
// xi = exp(i*pi/3). Since xi^2 = xi - 1, the ring Z[xi] is closed under
// multiplication with integer (r, s) coordinates, so all geometry here is
// exact integer arithmetic.
//
// Edges come in three types; a type-l edge travels along d_l = -xi^(2l):
//   type 0: (-1, 0)  westward
//   type 1: ( 1,-1)  south-eastward
//   type 2: ( 0, 1)  north-eastward
// An edge is identified by its type and its origin vertex.
//
// Faces are the unit triangles: the "direct" (upward) triangle anchored at a
// has corners {a, a+1, a+xi}; the "reversed" (downward) one has corners
// {a, a+1, a+cxi} with cxi = conj(xi).

namespace colormaps {

struct vertex {
    int r = 0;
    int s = 0;

    friend constexpr vertex operator+(vertex a, vertex b) { return {a.r + b.r, a.s + b.s}; }
    friend constexpr vertex operator-(vertex a, vertex b) { return {a.r - b.r, a.s - b.s}; }
    constexpr vertex operator-() const { return {-r, -s}; }
    friend constexpr vertex operator*(int k, vertex v) { return {k * v.r, k * v.s}; }
    friend constexpr bool operator==(vertex a, vertex b) { return a.r == b.r && a.s == b.s; }
    friend constexpr bool operator!=(vertex a, vertex b) { return !(a == b); }
    // row-major: by s, then r (matches the canonical edge order)
    friend constexpr bool operator<(vertex a, vertex b)
    {
        if (a.s != b.s) return a.s < b.s;
        return a.r < b.r;
    }
};

inline constexpr vertex xi{0, 1};    // exp(i*pi/3)
inline constexpr vertex cxi{1, -1};  // conj(xi) = 1 - xi = xi^5
inline constexpr vertex one{1, 0};

// product in Z[xi]: (a + b xi)(c + d xi) = (ac - bd) + (ad + bc + bd) xi
inline constexpr vertex cmul(vertex a, vertex b)
{
    return {a.r * b.r - a.s * b.s, a.r * b.s + a.s * b.r + a.s * b.s};
}

// xi^k for any integer k; xi is a primitive 6th root of unity
inline constexpr vertex xi_pow(int k)
{
    constexpr std::array<vertex, 6> tab{{{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};
    int m = k % 6;
    if (m < 0) m += 6;
    return tab[static_cast<std::size_t>(m)];
}

// direction a type-l edge points in: d_l = -xi^(2l)
inline constexpr vertex edge_dir(int type) { return -xi_pow(2 * type); }

inline constexpr bool in_lattice(vertex v, int n)
{
    return v.r >= 0 && v.s >= 0 && v.r + v.s <= n;
}

inline std::string to_string(vertex v)
{
    return "(" + std::to_string(v.r) + "," + std::to_string(v.s) + ")";
}

// barycentric-style coordinates (x0, x1, x2) = (n - r - s, r, s); they are
// nonnegative and sum to n exactly for lattice vertices
inline std::array<int, 3> coords(vertex v, int n)
{
    if (!in_lattice(v, n))
        throw std::invalid_argument("coords: vertex " + to_string(v) + " outside lattice of size " +
                                    std::to_string(n));
    return {n - v.r - v.s, v.r, v.s};
}

struct edge_id {
    int type = 0;  // 0, 1, or 2
    vertex o;      // origin; the edge runs from o to o + edge_dir(type)

    constexpr vertex target() const { return o + edge_dir(type); }

    // height of an edge: coordinate `type` of its origin; boundary side l
    // carries heights 0..n-1 under this convention
    int height(int n) const { return coords(o, n)[static_cast<std::size_t>(type)]; }

    friend constexpr bool operator==(edge_id a, edge_id b) { return a.type == b.type && a.o == b.o; }
    friend constexpr bool operator!=(edge_id a, edge_id b) { return !(a == b); }
    friend constexpr bool operator<(edge_id a, edge_id b)
    {
        if (a.type != b.type) return a.type < b.type;
        return a.o < b.o;
    }
};

inline std::string to_string(edge_id e)
{
    return "t" + std::to_string(e.type) + "@" + to_string(e.o);
}

inline constexpr bool edge_in_lattice(edge_id e, int n)
{
    return in_lattice(e.o, n) && in_lattice(e.target(), n);
}

// the unique lattice edge joining two adjacent vertices, in canonical
// orientation; throws if the vertices are not nearest neighbours in T_n
inline edge_id edge_between(vertex a, vertex b, int n)
{
    if (!in_lattice(a, n) || !in_lattice(b, n))
        throw std::invalid_argument("edge_between: endpoint outside lattice");
    for (int t = 0; t < 3; ++t) {
        if (b - a == edge_dir(t)) return {t, a};
        if (a - b == edge_dir(t)) return {t, b};
    }
    throw std::invalid_argument("edge_between: " + to_string(a) + " and " + to_string(b) +
                                " are not adjacent");
}

struct face_id {
    bool rev = false;  // false: upward {a, a+1, a+xi}; true: downward {a, a+1, a+cxi}
    vertex a;

    friend constexpr bool operator==(face_id x, face_id y) { return x.rev == y.rev && x.a == y.a; }
    friend constexpr bool operator!=(face_id x, face_id y) { return !(x == y); }
    friend constexpr bool operator<(face_id x, face_id y)
    {
        if (x.rev != y.rev) return !x.rev;
        return x.a < y.a;
    }
};

inline std::string to_string(face_id f)
{
    return std::string(f.rev ? "reversed@" : "direct@") + to_string(f.a);
}

inline constexpr std::array<vertex, 3> face_vertices(face_id f)
{
    if (f.rev) return {f.a, f.a + one, f.a + cxi};
    return {f.a, f.a + one, f.a + xi};
}

// the three edges of a face in clockwise order (y axis pointing up);
// for an upward triangle the cycle starts at the left side, for a downward
// one at the top side
inline constexpr std::array<edge_id, 3> face_edges(face_id f)
{
    if (f.rev) return {edge_id{0, f.a + one}, edge_id{2, f.a + cxi}, edge_id{1, f.a}};
    return {edge_id{2, f.a}, edge_id{1, f.a + xi}, edge_id{0, f.a + one}};
}

inline constexpr bool face_in_lattice(face_id f, int n)
{
    for (vertex v : face_vertices(f))
        if (!in_lattice(v, n)) return false;
    return true;
}

// the one or two faces an edge lies on, direct candidate first
inline std::vector<face_id> incident_faces(edge_id e, int n)
{
    face_id dir, rev;
    switch (e.type) {
        case 0: dir = {false, e.o - one}; rev = {true, e.o - one}; break;
        case 1: dir = {false, e.o - xi}; rev = {true, e.o}; break;
        case 2: dir = {false, e.o}; rev = {true, e.o - cxi}; break;
        default: throw std::invalid_argument("incident_faces: bad edge type");
    }
    std::vector<face_id> out;
    if (face_in_lattice(dir, n)) out.push_back(dir);
    if (face_in_lattice(rev, n)) out.push_back(rev);
    return out;
}

// Cached integer-indexed view of T_n. Everything downstream (maps, the
// enumerator, the transformations) works with dense edge indices from here.
class lattice {
public:
    // canonical edge order: by type, then origin s, then origin r
    std::vector<edge_id> edges;
    // faces in a south-to-north, west-to-east sweep; within one horizontal
    // strip upward and downward triangles alternate
    std::vector<face_id> faces;
    // clockwise edge indices of each face
    std::vector<std::array<int, 3>> face_edge;
    // face indices incident to each edge, -1 when absent (boundary edges
    // have exactly one face)
    std::vector<std::array<int, 2>> edge_face;
    // per side, the edge indices in increasing height order:
    //   side 0: south row, east to west
    //   side 1: north-east diagonal, north to south
    //   side 2: west column, south to north
    std::array<std::vector<int>, 3> boundary;
    // boundary side of each edge, -1 for interior edges
    std::vector<signed char> side_of;

    int size() const { return n_; }
    std::size_t edge_count() const { return edges.size(); }

    int index_of(edge_id e) const
    {
        int i = try_index(e);
        if (i < 0)
            throw std::invalid_argument("index_of: " + to_string(e) + " not in lattice of size " +
                                        std::to_string(n_));
        return i;
    }

    int try_index(edge_id e) const
    {
        if (e.type < 0 || e.type > 2) return -1;
        if (e.o.r < 0 || e.o.s < 0 || e.o.r > n_ || e.o.s > n_) return -1;
        return index_[static_cast<std::size_t>(e.type)]
                     [static_cast<std::size_t>(e.o.s * (n_ + 1) + e.o.r)];
    }

    // shared, lazily built instances (thread safe)
    static const lattice& of(int n)
    {
        static std::mutex mu;
        static std::map<int, std::unique_ptr<lattice>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it == cache.end())
            it = cache.emplace(n, std::unique_ptr<lattice>(new lattice(n))).first;
        return *it->second;
    }

private:
    int n_;
    std::array<std::vector<int>, 3> index_;  // per type, s*(n+1)+r -> edge index

    explicit lattice(int n) : n_(n)
    {
        if (n < 1) throw std::invalid_argument("lattice: size must be at least 1");

        for (auto& t : index_)
            t.assign(static_cast<std::size_t>((n + 1) * (n + 1)), -1);

        auto add_edge = [&](edge_id e) {
            index_[static_cast<std::size_t>(e.type)]
                  [static_cast<std::size_t>(e.o.s * (n + 1) + e.o.r)] =
                static_cast<int>(edges.size());
            edges.push_back(e);
        };
        for (int s = 0; s <= n - 1; ++s)
            for (int r = 1; r <= n - s; ++r) add_edge({0, {r, s}});
        for (int s = 1; s <= n; ++s)
            for (int r = 0; r <= n - s; ++r) add_edge({1, {r, s}});
        for (int s = 0; s <= n - 1; ++s)
            for (int r = 0; r <= n - 1 - s; ++r) add_edge({2, {r, s}});
        if (edges.size() != static_cast<std::size_t>(3 * n * (n + 1) / 2))
            throw std::logic_error("lattice: edge count mismatch");

        for (int k = 0; k <= n - 1; ++k) {
            faces.push_back({false, {0, k}});
            for (int r = 0; r <= n - 2 - k; ++r) {
                faces.push_back({true, {r, k + 1}});
                faces.push_back({false, {r + 1, k}});
            }
        }
        if (faces.size() != static_cast<std::size_t>(n * n))
            throw std::logic_error("lattice: face count mismatch");

        edge_face.assign(edges.size(), {-1, -1});
        face_edge.reserve(faces.size());
        for (std::size_t fi = 0; fi < faces.size(); ++fi) {
            std::array<int, 3> ids{};
            auto es = face_edges(faces[fi]);
            for (int k = 0; k < 3; ++k) {
                int ei = index_of(es[static_cast<std::size_t>(k)]);
                ids[static_cast<std::size_t>(k)] = ei;
                auto& ff = edge_face[static_cast<std::size_t>(ei)];
                if (ff[0] < 0)
                    ff[0] = static_cast<int>(fi);
                else if (ff[1] < 0)
                    ff[1] = static_cast<int>(fi);
                else
                    throw std::logic_error("lattice: edge on more than two faces");
            }
            face_edge.push_back(ids);
        }

        for (int h = 0; h <= n - 1; ++h) {
            boundary[0].push_back(index_of({0, {n - h, 0}}));
            boundary[1].push_back(index_of({1, {h, n - h}}));
            boundary[2].push_back(index_of({2, {0, h}}));
        }

        side_of.assign(edges.size(), -1);
        for (int side = 0; side < 3; ++side)
            for (int ei : boundary[static_cast<std::size_t>(side)])
                side_of[static_cast<std::size_t>(ei)] = static_cast<signed char>(side);

        for (std::size_t ei = 0; ei < edges.size(); ++ei) {
            bool bdry = side_of[ei] >= 0;
            int cnt = (edge_face[ei][0] >= 0 ? 1 : 0) + (edge_face[ei][1] >= 0 ? 1 : 0);
            if (cnt != (bdry ? 1 : 2))
                throw std::logic_error("lattice: face incidence mismatch at " +
                                       to_string(edges[ei]));
        }
    }
};

}  // namespace colormaps
