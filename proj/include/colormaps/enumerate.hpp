#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

#include "colormaps/colormap.hpp"

// Exhaustive enumeration of valid color maps under a boundary condition.
//
// The solver pins the boundary edges, then branches face by face in sweep
// order (lowest unfinished face first, colors tried in order 0, 1, 3, m)
// with unit propagation: a face with one undetermined edge forces it via the
// completion table, a fully colored face is checked against the validity
// table. Boundary edges only ever take line colors.

namespace colormaps {

namespace detail {

class searcher {
public:
    static constexpr std::uint8_t unset = 0xFF;

    // sink receives the complete color assignment; returning false stops
    // the whole search
    using sink_t = std::function<bool(const std::vector<std::uint8_t>&)>;

    explicit searcher(int n) : lat_(lattice::of(n))
    {
        col_.assign(lat_.edge_count(), unset);
        undet_.assign(lat_.faces.size(), 3);
    }

    const lattice& lat() const { return lat_; }
    const std::vector<std::uint8_t>& state() const { return col_; }

    // force an edge color before or during search; false signals a
    // contradiction (the state is left consistent for undo_to)
    bool pin(int ei, std::uint8_t c) { return assign(ei, c) && drain(); }

    std::size_t mark() const { return trail_.size(); }

    void undo_to(std::size_t mark)
    {
        pending_.clear();
        while (trail_.size() > mark) {
            int ei = trail_.back();
            trail_.pop_back();
            col_[static_cast<std::size_t>(ei)] = unset;
            for (int fi : lat_.edge_face[static_cast<std::size_t>(ei)])
                if (fi >= 0) ++undet_[static_cast<std::size_t>(fi)];
        }
    }

    // branch edge under the face-sweep rule, or -1 when all edges are set
    int branch_edge() const
    {
        for (std::size_t fi = 0; fi < undet_.size(); ++fi) {
            if (undet_[fi] == 0) continue;
            for (int ei : lat_.face_edge[fi])
                if (col_[static_cast<std::size_t>(ei)] == unset) return ei;
            throw std::logic_error("searcher: undetermined face with no unset edge");
        }
        return -1;
    }

    // depth-first over all completions of the current state
    bool run(const sink_t& sink)
    {
        int ei = branch_edge();
        if (ei < 0) return sink(col_);
        for (std::uint8_t c = 0; c < 4; ++c) {
            std::size_t m = mark();
            bool keep_going = true;
            if (pin(ei, c)) keep_going = run(sink);
            undo_to(m);
            if (!keep_going) return false;
        }
        return true;
    }

private:
    const lattice& lat_;
    std::vector<std::uint8_t> col_;
    std::vector<std::int8_t> undet_;  // undetermined edges per face
    std::vector<int> trail_;
    std::vector<int> pending_;  // faces that reached one undetermined edge

    bool assign(int ei, std::uint8_t c)
    {
        std::uint8_t& cur = col_[static_cast<std::size_t>(ei)];
        if (cur != unset) return cur == c;
        if (c > 1 && lat_.side_of[static_cast<std::size_t>(ei)] >= 0) return false;
        cur = c;
        trail_.push_back(ei);
        bool ok = true;
        for (int fi : lat_.edge_face[static_cast<std::size_t>(ei)]) {
            if (fi < 0) continue;
            std::int8_t& u = undet_[static_cast<std::size_t>(fi)];
            --u;
            if (u == 0) {
                const auto& fe = lat_.face_edge[static_cast<std::size_t>(fi)];
                if (!face_ok(static_cast<color>(col_[static_cast<std::size_t>(fe[0])]),
                             static_cast<color>(col_[static_cast<std::size_t>(fe[1])]),
                             static_cast<color>(col_[static_cast<std::size_t>(fe[2])])))
                    ok = false;
            } else if (u == 1) {
                pending_.push_back(fi);
            }
        }
        return ok;
    }

    bool drain()
    {
        while (!pending_.empty()) {
            int fi = pending_.back();
            pending_.pop_back();
            if (undet_[static_cast<std::size_t>(fi)] != 1) continue;
            const auto& fe = lat_.face_edge[static_cast<std::size_t>(fi)];
            int k = 0;
            while (col_[static_cast<std::size_t>(fe[static_cast<std::size_t>(k)])] != unset) ++k;
            signed char forced =
                face_tab.comp[k][col_[static_cast<std::size_t>(fe[static_cast<std::size_t>((k + 1) % 3)])]]
                             [col_[static_cast<std::size_t>(fe[static_cast<std::size_t>((k + 2) % 3)])]];
            if (forced < 0) return false;
            if (!assign(fe[static_cast<std::size_t>(k)], static_cast<std::uint8_t>(forced)))
                return false;
        }
        return true;
    }
};

// pin a boundary condition onto a fresh searcher; false when the pins are
// already contradictory
inline bool pin_boundary(searcher& s, const boundary_condition& b)
{
    const lattice& lat = s.lat();
    for (int side = 0; side < 3; ++side)
        for (int h = 0; h < b.n(); ++h) {
            int ei = lat.boundary[static_cast<std::size_t>(side)][static_cast<std::size_t>(h)];
            auto c = static_cast<std::uint8_t>(
                b.side[static_cast<std::size_t>(side)][static_cast<std::size_t>(h)] - '0');
            if (!s.pin(ei, c)) return false;
        }
    return true;
}

inline color_map map_from_state(int n, const std::vector<std::uint8_t>& state)
{
    color_map C(n);
    for (std::size_t i = 0; i < state.size(); ++i)
        C.set(static_cast<int>(i), static_cast<color>(state[i]));
    return C;
}

// solve for any single valid map extending the given edge pins; a test and
// fixture-building utility
inline std::optional<color_map> solve_pins(int n,
                                           const std::vector<std::pair<edge_id, color>>& pins)
{
    searcher s(n);
    const lattice& lat = s.lat();
    for (const auto& [e, c] : pins)
        if (!s.pin(lat.index_of(e), static_cast<std::uint8_t>(c))) return std::nullopt;
    std::optional<color_map> found;
    s.run([&](const std::vector<std::uint8_t>& state) {
        found = map_from_state(n, state);
        return false;  // first hit wins
    });
    return found;
}

// split the search into at least `want` independent subtrees (breadth-first
// on the branch decisions); solutions met along the way go to `done`
inline std::vector<std::vector<std::pair<int, std::uint8_t>>> split_search(
    const boundary_condition& b, std::size_t want, std::vector<std::vector<std::uint8_t>>& done)
{
    using node = std::vector<std::pair<int, std::uint8_t>>;
    std::vector<node> open;
    searcher probe(b.n());
    if (!pin_boundary(probe, b)) return open;
    open.push_back({});
    std::size_t next = 0;
    while (open.size() - next < want && next < open.size()) {
        node cur = std::move(open[next]);
        ++next;
        std::size_t base = probe.mark();
        bool alive = true;
        for (auto [ei, c] : cur)
            if (!probe.pin(ei, c)) {
                alive = false;
                break;
            }
        if (!alive) throw std::logic_error("split_search: recorded decision failed to replay");
        int ei = probe.branch_edge();
        if (ei < 0) {
            done.push_back(probe.state());
        } else {
            for (std::uint8_t c = 0; c < 4; ++c) {
                std::size_t m = probe.mark();
                if (probe.pin(ei, c)) {
                    node child = cur;
                    child.emplace_back(ei, c);
                    open.push_back(std::move(child));
                }
                probe.undo_to(m);
            }
        }
        probe.undo_to(base);
    }
    open.erase(open.begin(), open.begin() + static_cast<std::ptrdiff_t>(next));
    return open;
}

// run fn over every seed's subtree on `jobs` threads
inline void run_seeds(const boundary_condition& b,
                      const std::vector<std::vector<std::pair<int, std::uint8_t>>>& seeds,
                      int jobs,
                      const std::function<void(std::size_t, const std::vector<std::uint8_t>&)>& fn)
{
    std::atomic<std::size_t> cursor{0};
    auto work = [&] {
        searcher s(b.n());
        if (!pin_boundary(s, b)) throw std::logic_error("run_seeds: boundary replay failed");
        std::size_t base = s.mark();
        for (;;) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= seeds.size()) return;
            for (auto [ei, c] : seeds[i])
                if (!s.pin(ei, c)) throw std::logic_error("run_seeds: seed replay failed");
            s.run([&](const std::vector<std::uint8_t>& state) {
                fn(i, state);
                return true;
            });
            s.undo_to(base);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
}

}  // namespace detail

// visit every valid map with boundary b, in search order (deterministic,
// single-threaded)
inline void for_each_map(const boundary_condition& b,
                         const std::function<void(const color_map&)>& fn)
{
    detail::searcher s(b.n());
    if (!detail::pin_boundary(s, b)) return;
    s.run([&](const std::vector<std::uint8_t>& state) {
        fn(detail::map_from_state(b.n(), state));
        return true;
    });
}

// all valid maps with boundary b, sorted lexicographically by canonical edge
// order with 0 < 1 < 3 < m
inline std::vector<color_map> enumerate(const boundary_condition& b, int jobs = 1)
{
    std::vector<color_map> out;
    if (jobs <= 1) {
        for_each_map(b, [&](const color_map& C) { out.push_back(C); });
    } else {
        std::vector<std::vector<std::uint8_t>> done;
        auto seeds = detail::split_search(b, static_cast<std::size_t>(8 * jobs), done);
        for (const auto& state : done) out.push_back(detail::map_from_state(b.n(), state));
        std::vector<std::vector<color_map>> per_seed(seeds.size());
        std::mutex mu;
        detail::run_seeds(b, seeds, jobs,
                          [&](std::size_t i, const std::vector<std::uint8_t>& state) {
                              color_map C = detail::map_from_state(b.n(), state);
                              std::lock_guard<std::mutex> lock(mu);
                              per_seed[i].push_back(std::move(C));
                          });
        for (auto& chunk : per_seed)
            for (auto& C : chunk) out.push_back(std::move(C));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// |enumerate(b)| without materializing the maps
inline long long count_maps(const boundary_condition& b, int jobs = 1)
{
    if (jobs <= 1) {
        long long cnt = 0;
        detail::searcher s(b.n());
        if (!detail::pin_boundary(s, b)) return 0;
        s.run([&](const std::vector<std::uint8_t>&) {
            ++cnt;
            return true;
        });
        return cnt;
    }
    std::vector<std::vector<std::uint8_t>> done;
    auto seeds = detail::split_search(b, static_cast<std::size_t>(8 * jobs), done);
    std::atomic<long long> cnt{static_cast<long long>(done.size())};
    detail::run_seeds(b, seeds, jobs,
                      [&](std::size_t, const std::vector<std::uint8_t>&) { ++cnt; });
    return cnt.load();
}

// brute-force oracle: try all 4^(interior edge count) colorings and filter;
// guarded to tiny sizes
inline std::vector<color_map> naive_filter(const boundary_condition& b)
{
    if (b.n() > 3)
        throw std::invalid_argument("naive_filter: guarded to n <= 3 (got " +
                                    std::to_string(b.n()) + ")");
    const lattice& lat = lattice::of(b.n());
    color_map C(b.n());
    std::vector<int> interior;
    for (std::size_t ei = 0; ei < lat.edge_count(); ++ei)
        if (lat.side_of[ei] < 0) interior.push_back(static_cast<int>(ei));
    for (int side = 0; side < 3; ++side)
        for (int h = 0; h < b.n(); ++h)
            C.set(lat.boundary[static_cast<std::size_t>(side)][static_cast<std::size_t>(h)],
                  from_char(b.side[static_cast<std::size_t>(side)][static_cast<std::size_t>(h)]));

    std::vector<color_map> out;
    std::vector<std::size_t> odo(interior.size(), 0);
    for (;;) {
        if (is_valid(C)) out.push_back(C);
        std::size_t k = 0;
        while (k < odo.size()) {
            if (++odo[k] < 4) {
                C.set(interior[k], all_colors[odo[k]]);
                break;
            }
            odo[k] = 0;
            C.set(interior[k], all_colors[0]);
            ++k;
        }
        if (k == odo.size()) break;
    }
    return out;
}

}  // namespace colormaps
