#include "doctest.h"

#include "flagsph/rootdata.hpp"
#include "oracles.hpp"

using namespace flagsph;

namespace {

ReductiveType simple(Series s, int r) { return ReductiveType{{SimpleFactor{s, r}}, 0, {}}; }

std::vector<int> unit(int r, int i, int c = 1) {
    std::vector<int> v(r, 0);
    v[i] = c;
    return v;
}

std::map<std::string, std::int64_t> tensor(const ReductiveType& t, const std::string& a, const std::string& b) {
    auto x = formal_character(t, parse_weight(t, a));
    auto y = formal_character(t, parse_weight(t, b));
    std::map<std::string, std::int64_t> out;
    for (const auto& [w, m] : decompose(multiply(x, y))) out[format_weight(t, w)] += m;
    return out;
}

}  // namespace

TEST_SUITE("rootdata") {

TEST_CASE("Cartan matrices") {
    const auto& g2 = cartan_data(SimpleFactor{Series::G, 2});
    CHECK(g2.cartan == std::vector<std::vector<int>>{{2, -1}, {-3, 2}});
    CHECK(g2.pos_roots.size() == 6);
    CHECK(cartan_data(SimpleFactor{Series::B, 3}).pos_roots.size() == 9);
    CHECK(cartan_data(SimpleFactor{Series::C, 4}).pos_roots.size() == 16);
    CHECK(cartan_data(SimpleFactor{Series::D, 5}).pos_roots.size() == 20);
    CHECK(cartan_data(SimpleFactor{Series::A, 4}).pos_roots.size() == 10);
}

TEST_CASE("fundamental dimensions match closed formulas") {
    for (auto [s, c, lo, hi] : {std::tuple{Series::A, 'A', 1, 5}, std::tuple{Series::B, 'B', 2, 6},
                                std::tuple{Series::C, 'C', 2, 6}, std::tuple{Series::D, 'D', 4, 7}})
        for (int r = lo; r <= hi; ++r)
            for (int i = 0; i < r; ++i) {
                CAPTURE(r);
                CAPTURE(i);
                CHECK(weyl_dim(SimpleFactor{s, r}, unit(r, i)) == oracle::fundamental_dim(c, r, i + 1));
            }
}

TEST_CASE("G2 and small dimensions") {
    SimpleFactor g2{Series::G, 2};
    CHECK(weyl_dim(g2, {1, 0}) == 7);
    CHECK(weyl_dim(g2, {0, 1}) == 14);
    CHECK(weyl_dim(g2, {2, 0}) == 27);
    CHECK(weyl_dim(g2, {1, 1}) == 64);
    CHECK(weyl_dim(g2, {3, 0}) == 77);
    CHECK(weyl_dim(SimpleFactor{Series::B, 3}, {2, 0, 0}) == 27);
    CHECK(weyl_dim(SimpleFactor{Series::C, 2}, {0, 2}) == 14);
    CHECK(weyl_dim(SimpleFactor{Series::A, 1}, {5}) == 6);
}

TEST_CASE("Freudenthal characters have Weyl dimension") {
    for (auto t : {simple(Series::B, 3), simple(Series::C, 3), simple(Series::D, 4), simple(Series::G, 2), simple(Series::A, 3)}) {
        int r = t.factors[0].rank;
        for (int i = 0; i < r; ++i)
            for (int c = 1; c <= 2; ++c) {
                Weight w{unit(r, i, 2 * c)};
                CHECK(formal_character(t, w).dim() == weyl_dim(t, w));
            }
    }
}

TEST_CASE("tensor products") {
    auto a1 = simple(Series::A, 1);
    CHECK(tensor(a1, "pi1", "pi1") == std::map<std::string, std::int64_t>{{"2*pi1", 1}, {"0", 1}});
    auto b3 = simple(Series::B, 3);
    // spin x spin = 1 + 7 + 21 + 35
    CHECK(tensor(b3, "pi3", "pi3") == std::map<std::string, std::int64_t>{{"0", 1}, {"pi1", 1}, {"pi2", 1}, {"2*pi3", 1}});
    auto g2 = simple(Series::G, 2);
    // 7 x 7 = 1 + 7 + 14 + 27
    CHECK(tensor(g2, "pi1", "pi1") == std::map<std::string, std::int64_t>{{"0", 1}, {"pi1", 1}, {"pi2", 1}, {"2*pi1", 1}});
}

TEST_CASE("symmetric powers") {
    auto b3 = simple(Series::B, 3);
    auto v = formal_character(b3, parse_weight(b3, "pi1"));
    auto s2 = decompose(symmetric_power_character(v, 2));
    std::map<std::string, std::int64_t> got;
    for (const auto& [w, m] : s2) got[format_weight(b3, w)] += m;
    CHECK(got == std::map<std::string, std::int64_t>{{"2*pi1", 1}, {"0", 1}});
    CHECK(symmetric_power_character(v, 3).dim() == 84);
}

TEST_CASE("decompose rejects what no module has") {
    // only dominant weights are read, so the missing zero weight of 2*pi1 is what gives it away
    auto a1 = simple(Series::A, 1);
    FormalCharacter bad{a1, {{{4}, 1}}};
    CHECK_THROWS_AS(decompose(bad), std::runtime_error);
}

TEST_CASE("weight notation") {
    ReductiveType t{{SimpleFactor{Series::B, 3}, SimpleFactor{Series::A, 1}}, 1, {"chi"}};
    Weight w = parse_weight(t, "pi1@1+2*pi3@1+pi1@2+chi/2");
    CHECK(w.twice == std::vector<int>{2, 0, 4, 2, 1});
    CHECK(format_weight(t, w) == "pi1@1+2*pi3@1+pi1@2+chi/2");
    CHECK(parse_weight(t, "0").twice == std::vector<int>(5, 0));
    CHECK(parse_weight(t, "pi0@1+chi").twice == std::vector<int>{0, 0, 0, 0, 2});
    CHECK_THROWS(parse_weight(t, "pi1"));      // factor index required
    CHECK_THROWS(parse_weight(t, "pi4@1"));    // out of range
    CHECK_THROWS(parse_weight(t, "psi"));
    CHECK_THROWS(parse_weight(t, "chi/3"));
}

TEST_CASE("Cartan maps") {
    auto b3 = simple(Series::B, 3);
    auto id = CartanMap::identity(b3);
    CHECK(id.apply({2, 0, 1}) == std::vector<int>{2, 0, 1});
    auto v = formal_character(b3, parse_weight(b3, "pi3"));
    CHECK(restrict_character(v, id).dim() == 8);
}

}
