#include "doctest.h"

#include "flagsph/partitions.hpp"
#include "oracles.hpp"

using namespace flagsph;

TEST_SUITE("partitions") {

TEST_CASE("parsing and printing") {
    CHECK(parse_partition("3,1,1,1").str() == "3,1,1,1");
    CHECK(parse_partition("[3,1^3]").parts == std::vector<int>{3, 1, 1, 1});
    CHECK(parse_partition("3,1,1,1").exponent() == "[3,1^3]");
    CHECK(from_exponent({{2, 2}, {1, 3}}).str() == "2,2,1,1,1");
    CHECK_THROWS_AS(make_partition({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(make_partition({2, 0}), std::invalid_argument);
    CHECK_THROWS(parse_partition("3,x"));
}

TEST_CASE("partition counts") {
    const int p[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
    for (int d = 1; d <= 12; ++d) CHECK(enumerate_partitions(d).size() == static_cast<size_t>(p[d]));
    CHECK_THROWS(enumerate_partitions(31));
}

TEST_CASE("dual matches the transpose oracle") {
    for (int d = 1; d <= 10; ++d)
        for (const auto& a : oracle::partitions(d)) CHECK(dual(make_partition(a)).parts == oracle::transpose(a));
    CHECK(dual(make_composition({1, 3, 3, 1})).str() == "4,2,2");
    CHECK(is_symmetric(make_composition({1, 3, 3, 1})));
    CHECK_FALSE(is_symmetric(make_composition({1, 3, 2})));
}

TEST_CASE("dominance and parity agree with the oracles") {
    for (int d = 1; d <= 8; ++d) {
        auto all = oracle::partitions(d);
        for (const auto& a : all) {
            CHECK(in_parity_class(make_partition(a), ParityClass(1)) == oracle::parity_ok(a, 1));
            CHECK(in_parity_class(make_partition(a), ParityClass(-1)) == oracle::parity_ok(a, -1));
            for (const auto& b : all) CHECK(dominates(make_partition(a), make_partition(b)) == oracle::dominated(a, b));
        }
    }
}

TEST_CASE("collapse matches the exhaustive maximum") {
    for (int d = 1; d <= 10; ++d)
        for (int eps : {1, -1}) {
            if (eps == -1 && d % 2) continue;
            for (const auto& a : oracle::partitions(d)) CHECK(collapse(make_partition(a), ParityClass(eps)).parts == oracle::collapse(a, eps));
        }
}

TEST_CASE("collapse examples") {
    CHECK(collapse(parse_partition("3,1,1,1"), ParityClass(-1)).str() == "2,2,1,1");
    CHECK(collapse(parse_partition("2,1"), ParityClass(1)).str() == "1,1,1");
    CHECK(collapse(parse_partition("4,4"), ParityClass(1)).str() == "4,4");
    // already in the class: fixed
    CHECK(collapse(parse_partition("3,3,1,1"), ParityClass(1)).str() == "3,3,1,1");
}

TEST_CASE("very even") {
    CHECK(is_very_even(parse_partition("2,2,2,2")));
    CHECK(is_very_even(parse_partition("4,4,2,2")));
    CHECK_FALSE(is_very_even(parse_partition("3,3,1,1")));
    CHECK_FALSE(is_very_even(parse_partition("2,2,1,1")));
}

TEST_CASE("parity class sizes") {
    // nilpotent orbit partitions of sp(6) and so(7)
    CHECK(enumerate_partitions(6, ParityClass(-1)).size() == 8);
    CHECK(enumerate_partitions(7, ParityClass(1)).size() == 7);
}

}
