#include <catch2/catch_amalgamated.hpp>

#include "colormaps/enumerate.hpp"
#include "colormaps/paths.hpp"

using namespace colormaps;

namespace {

std::vector<std::string> strings_with_zeros(int n, int n0)
{
    std::vector<std::string> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::string s;
        int zeros = 0;
        for (int i = 0; i < n; ++i) {
            bool one = (mask >> i) & 1u;
            s += one ? '1' : '0';
            zeros += !one;
        }
        if (zeros == n0) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// the boundary shape shared by all reduced maps with the given side 1
boundary_condition reduced_boundary(const std::string& s1)
{
    int n0 = 0;
    for (char c : s1) n0 += c == '0';
    int n1 = static_cast<int>(s1.size()) - n0;
    std::string zeros(static_cast<std::size_t>(n0), '0');
    std::string ones(static_cast<std::size_t>(n1), '1');
    return boundary_condition(ones + zeros, s1, zeros + ones);
}

}  // namespace

TEST_CASE("reduced means sorted west column and one far-west zero block", "[paths]")
{
    CHECK(is_reduced(color_map(3, color::c0)));
    for (const auto& C : enumerate(boundary_condition("01", "01", "10")))
        CHECK_FALSE(is_reduced(C));  // west column unsorted
    for (const auto& C : enumerate(boundary_condition("10", "01", "01")))
        CHECK(is_reduced(C));
    // sorted west column but zeros not in one far-west bottom block
    bool saw_unreduced = false;
    for (const auto& s1 : strings_with_zeros(3, 2))
        for (const auto& C : enumerate(boundary_condition("010", s1, "001"))) {
            CHECK_FALSE(is_reduced(C));
            saw_unreduced = true;
        }
    CHECK(saw_unreduced);
}

TEST_CASE("the single-crossing family is one vertical step", "[paths]")
{
    auto maps = enumerate(reduced_boundary("01"));
    REQUIRE(maps.size() == 1);
    path_family pf = extract_paths(maps[0]);
    CHECK(pf.n0 == 1);
    CHECK(pf.n1 == 1);
    CHECK(pf.steps == std::vector<std::string>{"V"});
    CHECK(pf.targets == std::vector<int>{0});
    auto [nm, n3] = step_counts(pf);
    CHECK(nm == 0);
    CHECK(n3 == 1);
    CHECK(to_text(pf) == "V\n");
    CHECK(reconstruct(pf) == maps[0]);
}

TEST_CASE("path families round-trip every reduced map, n <= 4", "[paths]")
{
    long long families = 0;
    for (int n = 1; n <= 4; ++n)
        for (int n0 = 0; n0 <= n; ++n0)
            for (const auto& s1 : strings_with_zeros(n, n0)) {
                auto maps = enumerate(reduced_boundary(s1));
                CHECK(static_cast<long long>(maps.size()) == lgv_count(s1));
                for (const auto& C : maps) {
                    REQUIRE(is_reduced(C));
                    path_family pf = extract_paths(C);
                    ++families;

                    long long h_letters = 0, v_letters = 0;
                    for (const auto& w : pf.steps) {
                        CHECK(static_cast<int>(w.size()) == pf.n1);
                        for (char c : w) (c == 'H' ? h_letters : v_letters) += 1;
                    }
                    // horizontal steps are the m lozenges, vertical the 3s
                    CHECK(h_letters == count_color(C, color::cm));
                    CHECK(v_letters == count_color(C, color::c3));
                    CHECK(h_letters == gash_number(C, 1));
                    CHECK(h_letters + v_letters ==
                          static_cast<long long>(pf.n0) * pf.n1);

                    auto [nm, n3] = step_counts(pf);
                    CHECK(nm == h_letters);
                    CHECK(n3 == v_letters);

                    CHECK(reconstruct(pf) == C);
                }
            }
    CHECK(families == 39);
}

TEST_CASE("extraction refuses maps that are not reduced", "[paths]")
{
    auto maps = enumerate(boundary_condition("01", "01", "10"));
    REQUIRE(!maps.empty());
    CHECK_THROWS_AS(extract_paths(maps[0]), std::invalid_argument);
}

TEST_CASE("families with inconsistent shape are rejected", "[paths]")
{
    CHECK_THROWS_AS(reconstruct(path_family{2, 1, 1, {"V", "V"}, {1}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(reconstruct(path_family{3, 1, 2, {"V"}, {1}}), std::invalid_argument);
    CHECK_THROWS_AS(reconstruct(path_family{2, 1, 1, {"X"}, {1}}), std::invalid_argument);
}

TEST_CASE("matrix entries count the admissible endpoints", "[paths]")
{
    CHECK(lgv_matrix("01") == std::vector<std::vector<long long>>{{1}});
    CHECK(lgv_matrix("0101") == std::vector<std::vector<long long>>{{2, 0}, {1, 1}});
    CHECK(lgv_matrix("111").empty());
    CHECK_THROWS_AS(lgv_matrix("0x1"), std::invalid_argument);
}

TEST_CASE("counting corner cases", "[paths]")
{
    CHECK(lgv_count("01") == 1);
    CHECK(lgv_count("111") == 1);   // no paths at all
    CHECK(lgv_count("000") == 1);   // the all-0 map
    CHECK(lgv_count("0101") == 2);
    // a sorted side 1 forces the unique all-vertical family
    for (int n = 1; n <= 6; ++n)
        for (int n0 = 0; n0 <= n; ++n0) {
            std::string s1 = std::string(static_cast<std::size_t>(n0), '0') +
                             std::string(static_cast<std::size_t>(n - n0), '1');
            CHECK(lgv_count(s1) == 1);
        }
}

TEST_CASE("exact integer helpers", "[paths]")
{
    CHECK(detail::binomial(5, 2) == 10);
    CHECK(detail::binomial(5, 0) == 1);
    CHECK(detail::binomial(5, -1) == 0);
    CHECK(detail::binomial(5, 6) == 0);
    CHECK(detail::binomial(62, 31) == 465428353255261088LL);
    CHECK_THROWS_AS(detail::binomial(68, 34), std::overflow_error);

    CHECK(detail::bareiss_det({}) == 1);
    CHECK(detail::bareiss_det({{7}}) == 7);
    CHECK(detail::bareiss_det({{0, 1}, {1, 0}}) == -1);  // needs the row swap
    CHECK(detail::bareiss_det({{1, 1}, {1, 1}}) == 0);
    CHECK(detail::bareiss_det({{0, 3}, {0, 5}}) == 0);
    CHECK(detail::bareiss_det({{2, 0, 1}, {0, 3, 0}, {1, 0, 2}}) == 9);
}
