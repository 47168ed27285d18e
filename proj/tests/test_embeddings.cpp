#include "doctest.h"

#include "flagsph/embeddings.hpp"
#include "flagsph/registry.hpp"
#include "oracles.hpp"

using namespace flagsph;

namespace {

oracle::Matrix to_oracle(const QMat& m) {
    REQUIRE(m.rows == m.cols);
    return {m.rows, m.a};
}

std::vector<oracle::Matrix> gens(const EmbeddedSubgroup& e) {
    std::vector<oracle::Matrix> out;
    for (const auto& g : e.gens) out.push_back(to_oracle(g));
    return out;
}

}  // namespace

TEST_SUITE("embeddings") {

TEST_CASE("ambient algebras") {
    for (auto [g, dim] : {std::pair{GroupKind(Kind::Symplectic, 6), 21}, std::pair{GroupKind(Kind::Orthogonal, 7), 21},
                          std::pair{GroupKind(Kind::Orthogonal, 8), 28}}) {
        ClassicalAlgebra a = ambient(g);
        CHECK(a.dim() == dim);
        std::vector<oracle::Matrix> ms;
        for (const auto& b : a.basis) ms.push_back(to_oracle(b));
        CHECK(oracle::span_dim(ms) == dim);
        CHECK(oracle::preserves_form(ms, to_oracle(a.form)));
        CHECK(oracle::lower_part_dim(ms) == (dim + a.rank()) / 2);
    }
}

TEST_CASE("G2 in SO7") {
    EmbeddedSubgroup e = g2_in_so7();
    auto ms = gens(e);
    CHECK(oracle::span_dim(ms) == 14);
    CHECK(e.dim_h == 14);
    CHECK(oracle::bracket_closed(ms));
    CHECK(oracle::preserves_form(ms, to_oracle(e.g.form)));
    CHECK(oracle::lower_part_dim(ms) == 8);
    CHECK(e.borel_dim() == 8);
}

TEST_CASE("Spin7 in SO8") {
    for (Sign s : {Sign::Plus, Sign::Minus}) {
        EmbeddedSubgroup e = spin7_in_so8(s);
        auto ms = gens(e);
        CHECK(oracle::span_dim(ms) == 21);
        CHECK(oracle::bracket_closed(ms));
        CHECK(oracle::preserves_form(ms, to_oracle(e.g.form)));
        CHECK(oracle::lower_part_dim(ms) == 12);
        CHECK(e.borel_dim() == 12);
    }
}

TEST_CASE("every registry subgroup is a subalgebra of the ambient one") {
    std::set<std::string> seen;
    for (const auto& c : builtin_registry().cases) {
        Params p = instantiate(c, c.samples.front());
        std::string spec = substitute(c.spec, p);
        if (!seen.insert(spec).second) continue;
        CAPTURE(spec);
        EmbeddedSubgroup e = build_subalgebra(spec);
        auto ms = gens(e);
        CHECK(oracle::span_dim(ms) == e.dim_h);
        CHECK(oracle::preserves_form(ms, to_oracle(e.g.form)));
        CHECK(oracle::lower_part_dim(ms) == e.borel_dim());
        // the form used by the ambient algebra is antidiagonal
        const QMat& f = e.g.form;
        for (int i = 0; i < f.rows; ++i)
            for (int j = 0; j < f.cols; ++j)
                if (i + j != f.rows - 1) CHECK(f(i, j) == 0);
    }
}

TEST_CASE("subalgebras are closed under brackets") {
    for (auto spec : {"so(10): g2*so(3) : F7@1+F3@2", "sp(8): sp(4)*sl(2)*sl(2) : F4@1+F2@2+F2@3",
                      "so(12): spin(7)+*sl(2) : F8@1+omega([F2@2]_chi)", "so(8): sp(4)*sl(2) : [F4@1 x F2@2]"}) {
        CAPTURE(spec);
        CHECK(oracle::bracket_closed(gens(build_subalgebra(std::string(spec)))));
    }
}

TEST_CASE("reductive type of H") {
    EmbeddedSubgroup e = build_subalgebra("so(12): spin(7)+*sl(2) : F8@1+omega([F2@2]_chi)");
    CHECK(e.htype.name() == build_subalgebra("so(12): spin(7)-*sl(2) : F8@1+omega([F2@2]_chi)").htype.name());
    CHECK(e.htype.factors.size() == 2);
    CHECK(e.htype.torus_rank == 1);
    CHECK(e.dim_h == 21 + 3 + 1);
}

TEST_CASE("flag dimensions") {
    ClassicalAlgebra so7 = ambient(GroupKind(Kind::Orthogonal, 7));
    CHECK(flag_dimension(so7, {1}) == 5);
    CHECK(flag_dimension(so7, {3}) == 6);
    CHECK(flag_dimension(so7, {1, 2, 3}) == 9);
    ClassicalAlgebra sp6 = ambient(GroupKind(Kind::Symplectic, 6));
    CHECK(flag_dimension(sp6, {3}) == 6);
    CHECK(flag_dimension(sp6, {}) == 0);
}

TEST_CASE("spec errors") {
    CHECK_THROWS(build_subalgebra("so(9): g2 : F7"));          // wrong total dimension
    CHECK_THROWS(build_subalgebra("so(8): g2 : F7+F2"));       // no factor of dimension 2
    CHECK_THROWS(build_subalgebra("so(8) g2 F7+F1"));
    CHECK_THROWS(build_subalgebra("so(8): e8 : F7+F1"));
    CHECK_THROWS(build_subalgebra("so(8): sl(2)*sl(2) : F2+F2+F4"));  // ambiguous atom
    CHECK_THROWS(build_subalgebra("so(6): so(3) : omega(F3_chi"));
    CHECK_THROWS(build_subalgebra("sp(6): sl(3) : F3+F3"));    // no invariant symplectic form
}

TEST_CASE("quotient module dimension") {
    // G2 is transitive on the quadric: g = p + h
    EmbeddedSubgroup e = g2_in_so7();
    CHECK(quotient_module(e, {1}).action.dim == 0);
    // full flags: dim p + dim h - dim (p cap h) = 12 + 14 - 8
    CHECK(quotient_module(e, {1, 2, 3}).action.dim == 21 - 18);
    EmbeddedSubgroup full = build_subalgebra("sp(6): sp(6) : F6");
    CHECK(quotient_module(full, {1, 2, 3}).action.dim == 0);
}

}
