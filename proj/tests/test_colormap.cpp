#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "colormaps/colormap.hpp"

using namespace colormaps;

TEST_CASE("color characters", "[colormap]")
{
    CHECK(to_char(color::c0) == '0');
    CHECK(to_char(color::c1) == '1');
    CHECK(to_char(color::c3) == '3');
    CHECK(to_char(color::cm) == 'm');
    for (color c : all_colors) CHECK(from_char(to_char(c)) == c);
    CHECK_THROWS_AS(from_char('2'), std::invalid_argument);
    CHECK_THROWS_AS(from_char('x'), std::invalid_argument);
}

TEST_CASE("admissible face triples", "[colormap]")
{
    CHECK(face_ok(color::c0, color::c1, color::cm));
    CHECK(face_ok(color::c0, color::c0, color::c0));
    CHECK(face_ok(color::c1, color::c1, color::c1));
    CHECK(face_ok(color::c1, color::c0, color::c3));
    CHECK(face_ok(color::c0, color::c3, color::c1));
    CHECK(face_ok(color::c3, color::c1, color::c0));
    CHECK(face_ok(color::c1, color::cm, color::c0));
    CHECK(face_ok(color::cm, color::c0, color::c1));
    CHECK_FALSE(face_ok(color::c0, color::cm, color::c1));
    CHECK_FALSE(face_ok(color::c3, color::c3, color::c3));
    CHECK_FALSE(face_ok(color::cm, color::cm, color::cm));
    CHECK_FALSE(face_ok(color::c0, color::c0, color::c1));

    // exactly eight triples pass
    int admissible = 0;
    for (color a : all_colors)
        for (color b : all_colors)
            for (color c : all_colors)
                if (face_ok(a, b, c)) ++admissible;
    CHECK(admissible == 8);
}

TEST_CASE("face completion", "[colormap]")
{
    CHECK(complete_face(1, color::c0, 2, color::c1) == color::cm);
    CHECK(complete_face(2, color::c1, 1, color::c0) == color::cm);  // order-insensitive
    CHECK(complete_face(1, color::c0, 2, color::c0) == color::c0);
    CHECK(complete_face(1, color::c3, 2, color::cm) == std::nullopt);
    CHECK(complete_face(2, color::c0, 3, color::c3) == color::c1);  // (1,0,3)
    CHECK(complete_face(1, color::cm, 3, color::c1) == color::c0);  // (m,0,1)
    CHECK_THROWS_AS(complete_face(1, color::c0, 1, color::c0), std::invalid_argument);
    CHECK_THROWS_AS(complete_face(0, color::c0, 2, color::c0), std::invalid_argument);

    // completion agrees with the validity table everywhere it fires
    for (int pa = 1; pa <= 3; ++pa)
        for (int pb = 1; pb <= 3; ++pb) {
            if (pa == pb) continue;
            int pm = 6 - pa - pb;
            for (color a : all_colors)
                for (color b : all_colors) {
                    auto got = complete_face(pa, a, pb, b);
                    int hits = 0;
                    for (color m : all_colors) {
                        color slot[4] = {color::c0, color::c0, color::c0, color::c0};
                        slot[pa] = a;
                        slot[pb] = b;
                        slot[pm] = m;
                        if (face_ok(slot[1], slot[2], slot[3])) {
                            ++hits;
                            CHECK(got == m);
                        }
                    }
                    if (hits == 0) CHECK(got == std::nullopt);
                    CHECK(hits <= 1);
                }
        }
}

TEST_CASE("validation", "[colormap]")
{
    color_map zero(3);
    CHECK(is_valid(zero));
    CHECK_NOTHROW(validate(zero));

    color_map ones(3, color::c1);
    CHECK(is_valid(ones));

    // one recolored interior edge breaks its faces
    color_map bad(3);
    bad.set(edge_id{1, {0, 1}}, color::c1);
    CHECK_FALSE(is_valid(bad));
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);

    // a lozenge color on the boundary is rejected even with valid faces
    color_map bdry(1);
    bdry.set(edge_id{0, {1, 0}}, color::c3);
    bdry.set(edge_id{1, {0, 1}}, color::c1);
    bdry.set(edge_id{2, {0, 0}}, color::c0);
    // face (0 at slot1=t2, 1 at slot2=t1, 3 at slot3=t0)? check table first
    CHECK(face_ok(color::c0, color::c1, color::c3) == false);
    bdry.set(edge_id{2, {0, 0}}, color::c1);
    bdry.set(edge_id{1, {0, 1}}, color::c0);
    // (1, 0, 3) is admissible, yet 3 sits on the boundary
    CHECK(face_ok(color::c1, color::c0, color::c3));
    CHECK_FALSE(is_valid(bdry));
    CHECK_THROWS_AS(validate(bdry), std::invalid_argument);
}

TEST_CASE("string inversions", "[colormap]")
{
    CHECK(string_g("10110") == 4);
    CHECK(string_g("00011") == 0);
    CHECK(string_g("2102") == 1);
    CHECK(string_g("") == 0);
    CHECK(string_g("11001") == 4);
    CHECK(string_g("01011") == 1);
    CHECK(string_g("10") == 1);
    CHECK_THROWS_AS(string_g("01x1"), std::invalid_argument);

    // deleting 2s never changes the count
    CHECK(string_g("120210") == string_g("1010"));
    // swapping an adjacent "10" to "01" drops the count by exactly 1
    CHECK(string_g("1100") - string_g("1010") == 1);
    CHECK(string_g("1010") - string_g("0110") == 1);
}

TEST_CASE("boundary strings and gash numbers", "[colormap]")
{
    color_map zero(2);
    CHECK(side_string(zero, 0) == "00");
    CHECK(boundary_of(zero) == std::array<std::string, 3>{"00", "00", "00"});
    CHECK(gash_number(zero, 0) == 0);
    CHECK(gash_number(zero, 1) == 0);
    CHECK(gash_number(zero, 2) == 0);

    // recolor side 2 bottom-up as "10": one 1 below one 0
    color_map m(2, color::c1);
    m.set(edge_id{2, {0, 1}}, color::c0);
    CHECK(side_string(m, 2) == "10");
    CHECK(gash_number(m, 2) == 1);
    CHECK(gash_number(m, 2) == string_g(side_string(m, 2)));
    CHECK_THROWS_AS(gash_number(m, 3), std::invalid_argument);
}

TEST_CASE("boundary conditions", "[colormap]")
{
    boundary_condition b("10110", "11001", "01011");
    CHECK(b.n0 == 2);
    CHECK(b.n1 == 3);
    CHECK(b.n() == 5);
    CHECK_THROWS_AS(boundary_condition("01", "01", "011"), std::invalid_argument);
    CHECK_THROWS_AS(boundary_condition("01", "01", "11"), std::invalid_argument);
    CHECK_THROWS_AS(boundary_condition("0x", "01", "01"), std::invalid_argument);
    CHECK_THROWS_AS(boundary_condition("", "", ""), std::invalid_argument);
}

TEST_CASE("closed-form count predictions", "[colormap]")
{
    auto p = predict_counts(boundary_condition("10110", "11001", "01011"));
    CHECK(p.m_pred == 3);  // 4 + 4 + 1 - 2*3
    CHECK(p.s_pred == 3);  // 2*2*3 - 9

    auto zero = predict_counts(boundary_condition("000", "000", "000"));
    CHECK(zero.m_pred == 0);
    CHECK(zero.s_pred == 0);

    auto neg = predict_counts(boundary_condition("01", "01", "01"));
    CHECK(neg.m_pred == -1);
    CHECK(neg.s_pred == 2);
}

TEST_CASE("puzzle-level predictions", "[colormap]")
{
    CHECK(predict_puzzle_counts("10110", "11001", "01011") == std::pair<int, int>(3, 3));
    CHECK(predict_puzzle_counts("01", "01", "01") == std::pair<int, int>(-1, 2));
    // 2s are transparent
    CHECK(predict_puzzle_counts("210", "120", "102") == predict_puzzle_counts("10", "10", "10"));
    // all-inverted sides: (2 n0 n1, -n0 n1)
    CHECK(predict_puzzle_counts("1100", "1100", "1100") == std::pair<int, int>(8, -4));
    CHECK_THROWS_AS(predict_puzzle_counts("10", "10", "11"), std::invalid_argument);
}

TEST_CASE("color and face counters", "[colormap]")
{
    color_map zero(3);
    CHECK(count_color(zero, color::c0) == 18);
    CHECK(count_color(zero, color::c1) == 0);
    CHECK(count_mono_faces(zero, 0) == std::pair<int, int>(6, 3));
    CHECK(count_mono_faces(zero, 1) == std::pair<int, int>(0, 0));
    CHECK_THROWS_AS(count_mono_faces(zero, 2), std::invalid_argument);
}

TEST_CASE("text round-trip", "[colormap]")
{
    color_map m(2, color::c0);
    m.set(edge_id{2, {0, 1}}, color::c1);
    std::string text = to_text(m);
    CHECK(text.substr(0, 4) == "n 2\n");
    CHECK(text.find("0 1 0 0\n") != std::string::npos);
    CHECK(text.find("2 0 1 1\n") != std::string::npos);

    color_map back = parse_map(text);
    CHECK(back == m);
    CHECK(to_text(back) == text);  // byte-identical round trip

    // multi-record stream
    std::istringstream multi(to_text(m) + "\n" + to_text(color_map(1, color::c1)));
    auto maps = parse_maps(multi);
    REQUIRE(maps.size() == 2);
    CHECK(maps[0] == m);
    CHECK(maps[1].size() == 1);
    CHECK(count_color(maps[1], color::c1) == 3);
}

TEST_CASE("parse errors carry line numbers", "[colormap]")
{
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_map(text);
        } catch (const parse_error& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("bogus\n") == 1);
    CHECK(line_of("n -1\n") == 1);
    CHECK(line_of("n 1\n0 1 0 0\nnot an edge line\n2 0 0 0\n") == 3);
    CHECK(line_of("n 1\n0 1 0 0\n1 0 1 7\n2 0 0 0\n") == 3);   // bad color
    CHECK(line_of("n 1\n0 1 0 0\n0 1 0 1\n2 0 0 0\n") == 3);   // duplicate edge
    CHECK(line_of("n 1\n0 1 0 0\n1 5 5 0\n2 0 0 0\n") == 3);   // not an edge
    CHECK(line_of("n 1\n0 1 0 0\n1 0 1 0\n") == 3);            // truncated
    CHECK(line_of("") == 0);
    CHECK_THROWS_AS(parse_map(""), parse_error);
}
