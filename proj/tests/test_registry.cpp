#include "doctest.h"

#include "flagsph/embeddings.hpp"
#include "flagsph/registry.hpp"
#include "flagsph/sphericity.hpp"

using namespace flagsph;

namespace {

const FieldResult* field(const CaseReport& r, const std::string& name) {
    for (const auto& f : r.fields)
        if (f.name == name) return &f;
    return nullptr;
}

}  // namespace

TEST_SUITE("registry") {

TEST_CASE("integer expressions") {
    Params v{{"m", 3}, {"l", 2}};
    CHECK(eval_int("2*m+4", v) == 10);
    CHECK(eval_int("5-delta(m,1)", v) == 5);
    CHECK(eval_int("5-delta(m,3)", v) == 4);
    CHECK(eval_int("min(2*l,2*m+1)+1", v) == 5);
    CHECK(eval_int("max(l,m)", v) == 3);
    CHECK(eval_int("(2*m+1)/2", v) == 3);
    CHECK(eval_int("-7/2", v) == -4);
    CHECK(eval_int("-7%2", v) == 1);
    CHECK(eval_int("l>=2 && m>=1", v) == 1);
    CHECK(eval_int("l>=3 || !(m==3)", v) == 0);
    CHECK(eval_int("1+2*3-4", v) == 3);
    CHECK_THROWS_AS(eval_int("k+1", v), std::invalid_argument);
    CHECK_THROWS_AS(eval_int("m/0", v), std::invalid_argument);
    CHECK_THROWS_AS(eval_int("(m", v), std::invalid_argument);
    CHECK_THROWS_AS(eval_int("foo(m)", v), std::invalid_argument);
    CHECK_THROWS_AS(eval_int("m m", v), std::invalid_argument);
}

TEST_CASE("templates") {
    Params v{{"m", 2}};
    CHECK(substitute("sp(${2*m+4}): sp(${2*m}) : F${2*m}", v) == "sp(8): sp(4) : F4");
    CHECK(substitute("pi${m-2}@1", v) == "pi0@1");
    CHECK(substitute("no templates", v) == "no templates");
    CHECK_THROWS(substitute("F${m", v));
}

TEST_CASE("instantiation") {
    const CaseRecord& c = builtin_registry().find("so2l-so2m1-f1/I=n");
    Params p = instantiate(c, {{"l", 3}, {"m", 2}});
    CHECK(p.at("n") == 6);
    CHECK(p.at("r") == 5);
    CHECK_THROWS_AS(instantiate(c, {{"l", 1}, {"m", 2}}), std::out_of_range);
    CHECK_THROWS_AS(instantiate(c, {{"l", 3}}), std::invalid_argument);
    CHECK_THROWS_AS(instantiate(c, {{"l", 3}, {"m", 2}, {"k", 1}}), std::invalid_argument);
    CHECK_THROWS_AS(builtin_registry().find("no-such-case"), std::out_of_range);
}

TEST_CASE("registry parsing errors") {
    CHECK_THROWS(parse_registry("{"));
    CHECK_THROWS(parse_registry(R"({"cases": [{"id": "a", "spec": "x", "expect": "maybe"}]})"));
    CHECK_THROWS(parse_registry(R"({"cases": [{"id": "a", "spec": "x", "expect": "spherical"},
                                               {"id": "a", "spec": "y", "expect": "spherical"}]})"));
    CHECK_THROWS(parse_registry(R"({"cases": [{"id": "a", "kind": "other", "spec": "x", "expect": "spherical"}]})"));
    Registry r = parse_registry(R"({"cases": [{"id": "a", "spec": "so(8): g2 : F7+F1", "index": "4",
                                               "expect": "spherical", "rank": 2}]})");
    REQUIRE(r.cases.size() == 1);
    CHECK(r.cases[0].samples.size() == 1);
    CHECK(verify_case(r.cases[0], {}).pass);
}

TEST_CASE("documented examples") {
    CaseReport a = verify_case("g2-so7/I=1,2", {});
    CHECK(a.pass);
    CHECK(field(a, "rank")->computed == "4");
    CHECK(field(a, "generator count")->computed == "4");
    CaseReport b = verify_case("g2-f1-so8/I=4", {});
    CHECK(b.pass);
    CHECK(field(b, "rank")->computed == "2");
    CaseReport c = verify_case("sp-sp2m-sl2-sl2/I=n", {{"m", 1}});
    CHECK(c.pass);
    CHECK(field(c, "rank")->computed == "4");
    CHECK(field(c, "generators")->computed.find("(pi3; 0)") == std::string::npos);
    CaseReport d = verify_case("sp-sp2m-sl2-sl2/I=n", {{"m", 2}});
    CHECK(d.pass);
    CHECK(field(d, "generators")->computed.find("(pi4; 0)") != std::string::npos);
}

TEST_CASE("an unexpected verdict fails the case") {
    Registry r = parse_registry(R"({"cases": [{"id": "wrong", "spec": "so(7): g2 : F7", "index": "1,2,3",
                                               "expect": "spherical"}]})");
    CaseReport rep = verify_case(r.cases[0], {});
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.known_discrepancy);
    Registry bad = parse_registry(R"({"cases": [{"id": "bad", "spec": "so(9): g2 : F7", "expect": "spherical"}]})");
    CaseReport e = verify_case(bad.cases[0], {});
    CHECK_FALSE(e.pass);
    CHECK_FALSE(e.error.empty());
}

TEST_CASE("whole registry") {
    auto reports = verify_all(builtin_registry());
    std::set<std::string> known;
    for (const auto& r : reports) {
        CAPTURE(r.id);
        CHECK((r.pass || r.known_discrepancy));
        if (r.known_discrepancy) known.insert(r.id);
    }
    CHECK(known == std::set<std::string>{"spin7-so2l/I=n", "spin7-gl2-so12/I=6"});
    std::string text = reports_to_text(reports);
    CHECK(text.find("0 failed") != std::string::npos);
    CHECK(reports_to_json(reports) == reports_to_json(verify_all(builtin_registry())));
}

TEST_CASE("minimal elements") {
    for (int d : {4, 6, 8, 10}) CHECK(verify_minimal_elements(GroupKind(Kind::Symplectic, d)).pass);
    for (int d : {5, 7, 8, 9, 10, 11, 12, 14}) CHECK(verify_minimal_elements(GroupKind(Kind::Orthogonal, d)).pass);
    CHECK(verify_minimal_elements(GroupKind(Kind::Orthogonal, 12)).computed.size() == 3);
}

TEST_CASE("descent") {
    DescentReport g2 = verify_descent("so(7): g2 : F7");
    CHECK(g2.pass);
    CHECK(g2.spherical_classes == g2.classes - 1);
    DescentReport full = verify_descent("sp(6): sp(6) : F6");
    CHECK(full.pass);
    CHECK(full.spherical_classes == full.classes);
    DescentReport sp4 = verify_descent("so(8): sp(4) : omega(F4)");
    CHECK(sp4.pass);
    CHECK(sp4.pairs_checked > 0);
}

TEST_CASE("outer automorphism symmetry of the maximal Grassmannians") {
    // with a full SO factor the two families of maximal isotropic subspaces behave alike
    for (auto [spec, n] : {std::pair{"so(8): so(4)*so(3) : F4@1+F3@2+F1", 4}, std::pair{"so(8): so(5) : F5+omega(F1_chi)+F1", 4},
                           std::pair{"so(10): so(6)*so(3) : F6@1+F3@2+F1", 5}}) {
        EmbeddedSubgroup e = build_subalgebra(std::string(spec));
        CAPTURE(spec);
        CHECK(is_spherical_flag(e, {n}).spherical() == is_spherical_flag(e, {n - 1}).spherical());
    }
}

}
