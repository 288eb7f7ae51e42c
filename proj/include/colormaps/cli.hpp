#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "colormaps/colormap.hpp"
#include "colormaps/enumerate.hpp"
#include "colormaps/gash.hpp"
#include "colormaps/paths.hpp"
#include "colormaps/render.hpp"
#include "colormaps/transforms.hpp"

// Command-line front end. Every subcommand assembles an ordered report and
// prints it as plain text or as JSON carrying the same fields, so scripts can
// switch formats without losing information.
//
// Exit codes: 0 on success, 1 when a checked property fails to hold (or a
// computation overflows), 2 on usage or input errors.

namespace colormaps {
namespace cli {

using report = nlohmann::ordered_json;

namespace detail {

inline std::string scalar_text(const report& v)
{
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

inline void print_block(std::ostream& out, const std::string& block)
{
    out << block;
    if (block.empty() || block.back() != '\n') out << '\n';
}

inline bool is_multiline(const report& v)
{
    return v.is_string() && v.get_ref<const std::string&>().find('\n') != std::string::npos;
}

// text rendering of a report: scalars as "key: value", scalar lists on one
// line, matrices one row per line, multi-line strings as indentation-free
// blocks (lists of them separated by blank lines)
inline void emit_text(const report& rep, std::ostream& out)
{
    for (const auto& [key, val] : rep.items()) {
        if (val.is_array() && !val.empty() && val[0].is_array()) {
            out << key << ":\n";
            for (const auto& row : val) {
                out << " ";
                for (const auto& x : row) out << ' ' << scalar_text(x);
                out << '\n';
            }
        } else if (val.is_array() && !val.empty() && is_multiline(val[0])) {
            out << key << ":\n";
            bool first = true;
            for (const auto& x : val) {
                if (!first) out << '\n';
                first = false;
                print_block(out, x.get<std::string>());
            }
        } else if (val.is_array()) {
            out << key << ":";
            for (const auto& x : val) out << ' ' << scalar_text(x);
            out << '\n';
        } else if (is_multiline(val)) {
            out << key << ":\n";
            print_block(out, val.get<std::string>());
        } else {
            out << key << ": " << scalar_text(val) << '\n';
        }
    }
}

inline void emit(const report& rep, const std::string& format, std::ostream& out)
{
    if (format == "json")
        out << rep.dump(2) << '\n';
    else
        emit_text(rep, out);
}

// run a command body, translating library errors into exit codes: malformed
// input is a usage error, a violated invariant or an overflow is a failure
// the caller must not mistake for success
template <typename F>
int guarded(std::ostream& err, F&& body)
{
    try {
        return body();
    } catch (const parse_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& data)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
    out << data;
    out.flush();
    if (!out) throw std::invalid_argument("short write to " + path);
}

inline std::string join_lines(const trace_log& trace)
{
    std::string out;
    for (const auto& line : trace) {
        out += line;
        out += '\n';
    }
    return out;
}

// every side string of length n with the given number of zeros, in
// lexicographic order
inline std::vector<std::string> side_strings(int n, int zeros)
{
    std::vector<std::string> out;
    std::string s(static_cast<std::size_t>(zeros), '0');
    s.append(static_cast<std::size_t>(n - zeros), '1');
    do out.push_back(s);
    while (std::next_permutation(s.begin(), s.end()));
    return out;
}

// violations of the checked invariants on one map: face validity, the
// predicted m and 3 counts, the lozenge budget, and the monochrome face
// census for both line colors
inline long long map_violations(const color_map& C, const boundary_condition& b)
{
    long long bad = 0;
    try {
        validate(C);
    } catch (const std::exception&) {
        ++bad;
    }
    prediction p = predict_counts(b);
    int m = count_color(C, color::cm);
    int s = count_color(C, color::c3);
    if (m != p.m_pred) ++bad;
    if (s != p.s_pred) ++bad;
    if (m + s != b.n0 * b.n1) ++bad;
    for (int j = 0; j < 2; ++j) {
        int nj = j == 0 ? b.n0 : b.n1;
        auto [mono_direct, mono_reversed] = count_mono_faces(C, j);
        if (mono_direct != nj * (nj + 1) / 2) ++bad;
        if (mono_reversed != nj * (nj - 1) / 2) ++bad;
    }
    return bad;
}

}  // namespace detail

inline int cmd_predict(const std::vector<std::string>& sides, const std::string& format,
                       std::ostream& out)
{
    const std::string& u = sides[0];
    const std::string& v = sides[1];
    const std::string& w = sides[2];
    auto [n7, nsc] = predict_puzzle_counts(u, v, w);
    int n0 = 0, n1 = 0;
    for (char ch : u) {
        if (ch == '0') ++n0;
        if (ch == '1') ++n1;
    }
    report rep;
    rep["u"] = u;
    rep["v"] = v;
    rep["w"] = w;
    rep["g_u"] = string_g(u);
    rep["g_v"] = string_g(v);
    rep["g_w"] = string_g(w);
    rep["n0"] = n0;
    rep["n1"] = n1;
    rep["n7"] = n7;
    rep["nsc"] = nsc;
    if (n7 < 0 || nsc < 0)
        rep["warning"] = "negative prediction: no labeling realizes this boundary";
    detail::emit(rep, format, out);
    return 0;
}

inline int cmd_enumerate(const std::vector<std::string>& sides, int jobs,
                         const std::string& out_path, const std::string& format,
                         std::ostream& out)
{
    boundary_condition b(sides[0], sides[1], sides[2]);
    std::vector<color_map> maps = enumerate(b, jobs);
    prediction p = predict_counts(b);
    report rep;
    rep["boundary"] = b.side;
    rep["n"] = b.n();
    rep["n0"] = b.n0;
    rep["n1"] = b.n1;
    rep["m_pred"] = p.m_pred;
    rep["s_pred"] = p.s_pred;
    rep["count"] = maps.size();
    if (!out_path.empty()) {
        std::string blob;
        for (const auto& C : maps) {
            blob += to_text(C);
            blob += '\n';
        }
        detail::write_file(out_path, blob);
        rep["out"] = out_path;
    } else {
        report records = report::array();
        for (const auto& C : maps) records.push_back(to_text(C));
        rep["maps"] = std::move(records);
    }
    detail::emit(rep, format, out);
    return 0;
}

inline int cmd_verify(int n_max, int guard, int jobs, bool inject, const std::string& format,
                      std::ostream& out, std::ostream& err)
{
    if (n_max > guard) {
        err << "error: --n " << n_max << " exceeds --guard " << guard
            << "; raise --guard to confirm a long sweep\n";
        return 2;
    }
    auto t0 = std::chrono::steady_clock::now();

    std::vector<boundary_condition> all;
    for (int n = 1; n <= n_max; ++n)
        for (int zeros = 0; zeros <= n; ++zeros) {
            auto strings = detail::side_strings(n, zeros);
            for (const auto& s0 : strings)
                for (const auto& s1 : strings)
                    for (const auto& s2 : strings) all.emplace_back(s0, s1, s2);
        }

    std::atomic<long long> maps{0};
    std::atomic<long long> violations{0};
    std::atomic<std::size_t> cursor{0};
    auto work = [&] {
        for (;;) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= all.size()) return;
            const boundary_condition& b = all[i];
            long long local_maps = 0, local_bad = 0;
            for_each_map(b, [&](const color_map& C) {
                ++local_maps;
                local_bad += detail::map_violations(C, b);
            });
            maps += local_maps;
            violations += local_bad;
        }
    };
    if (jobs <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 1; t < jobs; ++t) pool.emplace_back(work);
        work();
        for (auto& th : pool) th.join();
    }

    if (inject) {
        // deliberately corrupt one map and make sure the checks catch it:
        // any single edge flip breaks a face, because no two admissible
        // face triples differ in just one slot
        bool planted = false;
        for (const auto& b : all) {
            std::vector<color_map> got = enumerate(b);
            if (got.empty()) continue;
            color_map C = got.front();
            C.set(0, C.at(0) == color::c0 ? color::c1 : color::c0);
            violations += detail::map_violations(C, b);
            planted = true;
            break;
        }
        if (!planted) throw std::logic_error("verify: found no map to corrupt");
    }

    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    report rep;
    rep["n_max"] = n_max;
    rep["boundaries"] = all.size();
    rep["maps"] = maps.load();
    rep["violations"] = violations.load();
    rep["injected"] = inject;
    rep["elapsed_ms"] = elapsed;
    rep["status"] = violations.load() == 0 ? "ok" : "violations found";
    detail::emit(rep, format, out);
    return violations.load() == 0 ? 0 : 1;
}

inline int cmd_reduce(const std::string& in_path, const std::string& out_path, bool want_trace,
                      const std::string& format, std::ostream& out)
{
    color_map C = parse_map(detail::read_file(in_path));
    trace_log trace;
    reduce_result res = reduce(C, want_trace ? &trace : nullptr);
    report rep;
    rep["n"] = C.size();
    rep["exchanged"] = res.exchanged;
    rep["m_before"] = count_color(C, color::cm);
    rep["m_after"] = count_color(res.map, color::cm);
    rep["s_before"] = count_color(C, color::c3);
    rep["s_after"] = count_color(res.map, color::c3);
    rep["side1"] = side_string(res.map, 1);
    rep["reduced"] = is_reduced(res.map);
    if (want_trace) rep["trace"] = detail::join_lines(trace);
    if (!out_path.empty()) {
        detail::write_file(out_path, to_text(res.map));
        rep["out"] = out_path;
    } else {
        rep["map"] = to_text(res.map);
    }
    detail::emit(rep, format, out);
    return 0;
}

inline int cmd_decrement(const std::string& in_path, const std::string& out_path,
                         bool want_trace, const std::string& format, std::ostream& out)
{
    color_map C = parse_map(detail::read_file(in_path));
    trace_log trace;
    decrement_result res = decrement_g2(C, want_trace ? &trace : nullptr);
    report rep;
    rep["n"] = C.size();
    rep["case"] = res.kind == decrement_case::removal ? "removal" : "boundary";
    rep["g2_before"] = gash_number(C, 2);
    rep["g2_after"] = gash_number(res.map, 2);
    rep["g1_before"] = gash_number(C, 1);
    rep["g1_after"] = gash_number(res.map, 1);
    rep["m_before"] = count_color(C, color::cm);
    rep["m_after"] = count_color(res.map, color::cm);
    rep["s_before"] = count_color(C, color::c3);
    rep["s_after"] = count_color(res.map, color::c3);
    if (want_trace) rep["trace"] = detail::join_lines(trace);
    if (!out_path.empty()) {
        detail::write_file(out_path, to_text(res.map));
        rep["out"] = out_path;
    } else {
        rep["map"] = to_text(res.map);
    }
    detail::emit(rep, format, out);
    return 0;
}

inline int cmd_lgv(const std::string& side1, const std::string& format, std::ostream& out)
{
    std::vector<std::vector<long long>> a = lgv_matrix(side1);
    long long count = lgv_count(side1);
    int n0 = static_cast<int>(a.size());
    report rep;
    rep["side1"] = side1;
    rep["n"] = side1.size();
    rep["n0"] = n0;
    rep["n1"] = static_cast<int>(side1.size()) - n0;
    rep["matrix"] = a;
    rep["count"] = count;
    detail::emit(rep, format, out);
    return 0;
}

inline int cmd_render(const std::string& in_path, const std::string& out_path,
                      const std::string& format, std::ostream& out)
{
    color_map C = parse_map(detail::read_file(in_path));
    std::string svg = render_svg(C);
    report rep;
    rep["n"] = C.size();
    if (!out_path.empty()) {
        detail::write_file(out_path, svg);
        rep["out"] = out_path;
        rep["bytes"] = svg.size();
        detail::emit(rep, format, out);
    } else if (format == "json") {
        rep["svg"] = svg;
        detail::emit(rep, format, out);
    } else {
        // bare document so the output can be piped straight into a viewer
        out << svg;
    }
    return 0;
}

// args holds the words after the program name, in natural order
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"color maps on the triangular lattice: enumeration, count "
                 "predictions, sorting moves, path counting, rendering"};
    app.name("colormaps");
    app.require_subcommand(1);

    int rc = 0;
    const std::string format_help = "output format, text or json";
    auto add_format = [&](CLI::App* sub, std::string& var) {
        sub->add_option("--format", var, format_help)->check(CLI::IsMember({"text", "json"}));
    };

    std::vector<std::string> pred_sides;
    std::string pred_format = "text";
    std::string pred_corner = "sw";
    auto* predict = app.add_subcommand(
        "predict", "inversion numbers and predicted m/3 edge counts for a boundary");
    predict->add_option("--boundary", pred_sides, "three side strings u,v,w, each read in "
                                                  "increasing-height order")
        ->required()
        ->delimiter(',')
        ->expected(3);
    predict->add_option("--clockwise-from", pred_corner,
                        "corner the clockwise boundary reading starts from; only sw "
                        "(south-west) is supported, and it matches the increasing-height "
                        "order on all three sides")
        ->check(CLI::IsMember({"sw"}));
    add_format(predict, pred_format);
    predict->callback([&] {
        rc = detail::guarded(err, [&] { return cmd_predict(pred_sides, pred_format, out); });
    });

    std::vector<std::string> enum_sides;
    std::string enum_format = "text", enum_out;
    int enum_jobs = 1;
    auto* enum_cmd =
        app.add_subcommand("enumerate", "list every valid map with the given boundary");
    enum_cmd->add_option("--boundary", enum_sides, "three side strings over {0,1}, "
                                                   "comma separated")
        ->required()
        ->delimiter(',')
        ->expected(3);
    enum_cmd->add_option("--jobs", enum_jobs, "worker threads")->check(CLI::Range(1, 256));
    enum_cmd->add_option("--out", enum_out, "write the map records to this file instead of "
                                            "the report");
    add_format(enum_cmd, enum_format);
    enum_cmd->callback([&] {
        rc = detail::guarded(
            err, [&] { return cmd_enumerate(enum_sides, enum_jobs, enum_out, enum_format, out); });
    });

    int ver_n = 1, ver_guard = 5, ver_jobs = 1;
    bool ver_inject = false;
    std::string ver_format = "text";
    auto* verify_cmd = app.add_subcommand(
        "verify", "sweep every boundary up to size --n and recheck the predicted counts "
                  "on every enumerated map");
    verify_cmd->add_option("--n", ver_n, "largest lattice size to sweep")
        ->required()
        ->check(CLI::Range(1, 12));
    verify_cmd->add_option("--guard", ver_guard,
                           "refuse sweeps past this size; raise it deliberately for long runs");
    verify_cmd->add_option("--jobs", ver_jobs, "worker threads")->check(CLI::Range(1, 256));
    verify_cmd->add_flag("--inject-corruption", ver_inject,
                         "also check one deliberately corrupted map; the sweep must then "
                         "report a violation and exit nonzero");
    add_format(verify_cmd, ver_format);
    verify_cmd->callback([&] {
        rc = detail::guarded(err, [&] {
            return cmd_verify(ver_n, ver_guard, ver_jobs, ver_inject, ver_format, out, err);
        });
    });

    std::string red_file, red_out, red_format = "text";
    bool red_trace = false;
    auto* reduce_cmd = app.add_subcommand(
        "reduce", "group the 0 columns of a map whose west side is sorted, trading "
                  "3-lozenges for m-lozenges until the map is reduced");
    reduce_cmd->add_option("file", red_file, "map record to read")->required();
    reduce_cmd->add_option("--out", red_out, "write the reduced map to this file");
    reduce_cmd->add_flag("--trace", red_trace, "log every exchange in the report");
    add_format(reduce_cmd, red_format);
    reduce_cmd->callback([&] {
        rc = detail::guarded(
            err, [&] { return cmd_reduce(red_file, red_out, red_trace, red_format, out); });
    });

    std::string dec_file, dec_out, dec_format = "text";
    bool dec_trace = false;
    auto* dec_cmd = app.add_subcommand(
        "decrement", "open a gash at the lowest west-side descent and propagate it until "
                     "the side-2 inversion number drops by one");
    dec_cmd->add_option("file", dec_file, "map record to read")->required();
    dec_cmd->add_option("--out", dec_out, "write the resulting map to this file");
    dec_cmd->add_flag("--trace", dec_trace, "log every propagation step in the report");
    add_format(dec_cmd, dec_format);
    dec_cmd->callback([&] {
        rc = detail::guarded(
            err, [&] { return cmd_decrement(dec_file, dec_out, dec_trace, dec_format, out); });
    });

    std::string lgv_side, lgv_format = "text";
    auto* lgv_cmd = app.add_subcommand(
        "lgv", "count the reduced maps with the given north-east side by a path "
               "determinant");
    lgv_cmd->add_option("side1", lgv_side, "north-east side string over {0,1}")->required();
    add_format(lgv_cmd, lgv_format);
    lgv_cmd->callback(
        [&] { rc = detail::guarded(err, [&] { return cmd_lgv(lgv_side, lgv_format, out); }); });

    std::string ren_file, ren_out, ren_format = "text";
    auto* render_cmd = app.add_subcommand("render", "draw a map as an SVG document");
    render_cmd->add_option("file", ren_file, "map record to read")->required();
    render_cmd->add_option("--out", ren_out, "write the SVG to this file");
    add_format(render_cmd, ren_format);
    render_cmd->callback([&] {
        rc = detail::guarded(err,
                             [&] { return cmd_render(ren_file, ren_out, ren_format, out); });
    });

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }
    return rc;
}

inline int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    return run_cli(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace cli
}  // namespace colormaps
