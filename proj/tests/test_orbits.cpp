#include "doctest.h"

#include <algorithm>

#include "flagsph/embeddings.hpp"
#include "flagsph/orbits.hpp"
#include "oracles.hpp"

using namespace flagsph;

namespace {

std::vector<std::string> names(const std::vector<FlagDescriptor>& fs) {
    std::vector<std::string> out;
    for (const auto& f : fs) out.push_back(f.str());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> class_of(const GroupKind& g, const FlagDescriptor& f) {
    ClassKey k = class_key(f);
    for (const auto& c : flag_poset(g).classes)
        if (c.key == k) return names(c.members);
    return {};
}

std::vector<std::string> sorted(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_SUITE("orbits") {

TEST_CASE("enumerated flags") {
    GroupKind so7(Kind::Orthogonal, 7);
    CHECK(names(enumerate_flags(so7)) ==
          sorted({"(1,5,1)", "(2,3,2)", "(3,1,3)", "(1,1,3,1,1)", "(1,2,1,2,1)", "(2,1,1,1,2)", "(1,1,1,1,1,1,1)"}));
    GroupKind sp4(Kind::Symplectic, 4);
    CHECK(names(enumerate_flags(sp4)) == sorted({"(1,2,1)", "(2,2)", "(1,1,1,1)"}));
    GroupKind so8(Kind::Orthogonal, 8);
    auto fs = enumerate_flags(so8);
    CHECK(std::count_if(fs.begin(), fs.end(), [](const FlagDescriptor& f) { return f.composition.parts == std::vector<int>{4, 4}; }) == 2);
}

TEST_CASE("index sets") {
    CHECK(flag_to_index_set(make_flag(GroupKind(Kind::Symplectic, 6), {1, 4, 1})) == std::set<int>{1});
    GroupKind so8(Kind::Orthogonal, 8);
    CHECK(flag_to_index_set(make_flag(so8, {1, 3, 3, 1}, Sign::Plus)) == std::set<int>{1, 4});
    CHECK(flag_to_index_set(make_flag(so8, {1, 3, 3, 1}, Sign::Minus)) == std::set<int>{1, 3});
    CHECK(flag_to_index_set(make_flag(so8, {1, 2, 2, 2, 1})) == std::set<int>{1, 3, 4});
    CHECK(flag_to_index_set(make_flag(so8, {2, 4, 2})) == std::set<int>{2});
    CHECK(flag_to_index_set(make_flag(so8, {3, 2, 3})) == std::set<int>{3, 4});
    CHECK(flag_to_index_set(make_flag(GroupKind(Kind::Orthogonal, 7), {3, 1, 3})) == std::set<int>{3});
    CHECK_THROWS(make_flag(so8, {3, 4}));
    CHECK_THROWS(make_flag(so8, {4, 4}));  // sign required
}

TEST_CASE("index sets name varieties of the right dimension") {
    for (auto g : {GroupKind(Kind::Symplectic, 6), GroupKind(Kind::Symplectic, 8), GroupKind(Kind::Orthogonal, 7),
                   GroupKind(Kind::Orthogonal, 8), GroupKind(Kind::Orthogonal, 10)}) {
        ClassicalAlgebra a = ambient(g);
        for (const auto& f : enumerate_flags(g)) {
            CAPTURE(f.str());
            CHECK(flag_dimension(a, flag_to_index_set(f)) == oracle::flag_dim(f.composition.parts, g.epsilon()));
        }
    }
}

TEST_CASE("Richardson orbits have twice the flag dimension") {
    for (int d = 4; d <= 11; ++d)
        for (Kind k : {Kind::Symplectic, Kind::Orthogonal}) {
            if (k == Kind::Symplectic && d % 2) continue;
            GroupKind g(k, d);
            for (const auto& f : enumerate_flags(g)) {
                CAPTURE(f.str());
                OrbitLabel o = richardson(f);
                CHECK(in_parity_class(o.partition, ParityClass(g.epsilon())));
                CHECK(oracle::orbit_dim(o.partition.parts, g.epsilon()) == 2 * oracle::flag_dim(f.composition.parts, g.epsilon()));
            }
        }
}

TEST_CASE("Richardson examples") {
    GroupKind sp6(Kind::Symplectic, 6);
    CHECK(richardson(make_flag(sp6, {1, 4, 1})).partition.str() == "2,2,1,1");
    CHECK(richardson(make_flag(sp6, {3, 3})).partition.str() == "2,2,2");
    GroupKind so8(Kind::Orthogonal, 8);
    CHECK(richardson(make_flag(so8, {1, 6, 1})).partition.str() == "3,1,1,1,1,1");
    CHECK(nil_equivalent(make_flag(GroupKind(Kind::Symplectic, 4), {1, 2, 1}), make_flag(GroupKind(Kind::Symplectic, 4), {2, 2})));
    CHECK_FALSE(nil_equivalent(make_flag(so8, {4, 4}, Sign::Plus), make_flag(so8, {4, 4}, Sign::Minus)));
}

TEST_CASE("closure order") {
    GroupKind so8(Kind::Orthogonal, 8);
    OrbitLabel small{parse_partition("3,1,1,1,1,1")}, big{parse_partition("3,3,1,1")};
    CHECK(closure_leq(so8, small, big));
    CHECK_FALSE(closure_leq(so8, big, small));
    OrbitLabel p{parse_partition("2,2,2,2"), Sign::Plus}, m{parse_partition("2,2,2,2"), Sign::Minus};
    CHECK_FALSE(closure_leq(so8, p, m));
    CHECK_FALSE(closure_leq(so8, m, p));
}

TEST_CASE("class contents") {
    GroupKind sp4(Kind::Symplectic, 4);
    CHECK(class_of(sp4, make_flag(sp4, {1, 2, 1})) == sorted({"(1,2,1)", "(2,2)"}));
    GroupKind sp6(Kind::Symplectic, 6);
    CHECK(class_of(sp6, make_flag(sp6, {1, 4, 1})) == sorted({"(1,4,1)"}));
    GroupKind so5(Kind::Orthogonal, 5);
    CHECK(class_of(so5, make_flag(so5, {1, 3, 1})) == sorted({"(1,3,1)", "(2,1,2)"}));
    GroupKind so6(Kind::Orthogonal, 6);
    CHECK(class_of(so6, make_flag(so6, {2, 2, 2})) == sorted({"(2,2,2)", "(1,2,2,1)+", "(1,2,2,1)-"}));
    GroupKind so8(Kind::Orthogonal, 8);
    CHECK(class_of(so8, make_flag(so8, {2, 4, 2})) == sorted({"(2,4,2)", "(3,2,3)", "(1,3,3,1)+", "(1,3,3,1)-"}));
    GroupKind so10(Kind::Orthogonal, 10);
    CHECK(class_of(so10, make_flag(so10, {2, 6, 2})) == sorted({"(2,6,2)"}));
}

TEST_CASE("minimal classes") {
    for (int n = 2; n <= 5; ++n) CHECK(minimal_classes(GroupKind(Kind::Symplectic, 2 * n)).size() == 1);
    for (int k = 2; k <= 5; ++k) CHECK(minimal_classes(GroupKind(Kind::Orthogonal, 2 * k + 1)).size() == 1);
    CHECK(minimal_classes(GroupKind(Kind::Orthogonal, 10)).size() == 2);
    CHECK(minimal_classes(GroupKind(Kind::Orthogonal, 14)).size() == 2);
    CHECK(minimal_classes(GroupKind(Kind::Orthogonal, 8)).size() == 3);
    CHECK(minimal_classes(GroupKind(Kind::Orthogonal, 12)).size() == 3);
}

TEST_CASE("poset edges go up in dominance") {
    for (auto g : {GroupKind(Kind::Symplectic, 8), GroupKind(Kind::Orthogonal, 9), GroupKind(Kind::Orthogonal, 8)}) {
        FlagPoset p = flag_poset(g);
        for (size_t i = 0; i < p.classes.size(); ++i)
            for (size_t j = 0; j < p.classes.size(); ++j)
                if (p.less[i][j]) CHECK(oracle::dominated(p.classes[i].key.partition.parts, p.classes[j].key.partition.parts));
        std::string dot = p.dot();
        CHECK(dot.rfind("digraph", 0) == 0);
        CHECK(std::count(dot.begin(), dot.end(), '>') == static_cast<long>(p.covers().size()));
    }
}

}
