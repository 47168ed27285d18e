#pragma once

#include <set>
#include <string>
#include <vector>

#include "flagsph/linalg.hpp"
#include "flagsph/orbits.hpp"
#include "flagsph/rootdata.hpp"

namespace flagsph {

enum class BasisKind { Cartan, Positive, Negative };

// sp(d) or so(d) for the antidiagonal form `form`.
struct ClassicalAlgebra {
    GroupKind group;
    SimpleFactor type;
    QMat form;
    std::vector<QMat> basis;
    std::vector<BasisKind> kinds;
    std::vector<std::vector<int>> roots;          // simple-root coordinates; zero for Cartan elements
    std::vector<std::pair<int, int>> entry;       // a distinguished nonzero position of each element
    std::vector<std::vector<int>> fundamental_eps2;  // doubled epsilon coordinates of each pi_i

    int dim() const { return static_cast<int>(basis.size()); }
    int rank() const { return type.rank; }
    // Coordinates of an element of the algebra in `basis`.
    QVec coords(const QMat& x) const;
};

QMat standard_form(const GroupKind& g);
ClassicalAlgebra classical_algebra(const GroupKind& g, const QMat& form);
ClassicalAlgebra ambient(const GroupKind& g);

// A simple factor of H in its defining matrix representation.
struct FactorAlgebra {
    std::string label;
    SimpleFactor type;
    int def_dim = 0;
    std::vector<QMat> basis;  // simple coroots first (Bourbaki order), then root vectors
    std::vector<BasisKind> kinds;
    QMat form;
    bool has_form = false;
    bool symmetric = false;
};

FactorAlgebra make_factor(const std::string& label);  // "sl(3)", "sp(4)", "so(5)", "g2", "spin(7)-"

// ---------------------------------------------------------------------------
// Declarative description of (H, V)

struct Atom {
    enum class Kind { Defining, Trivial, Sym2, Wedge2 } kind = Kind::Trivial;
    int factor = -1;  // 0-based
};

struct Irrep {
    std::vector<Atom> tensor;
    std::vector<int> torus;  // integer coefficient per torus character
};

struct Summand {
    bool omega = false;
    Irrep rep;
};

struct PairSpec {
    bool has_group = false;
    GroupKind group;
    std::vector<std::string> factors;      // labels accepted by make_factor
    std::vector<std::string> torus_names;  // sorted
    std::vector<Summand> summands;
    std::string text;
};

PairSpec parse_pair_spec(const std::string& text);
PairSpec parse_module_spec(const std::string& text);  // "factors : summands", no ambient

// A representation of H given by matrices for every factor basis element and torus generator.
struct Rep {
    int dim = 0;
    std::vector<std::vector<QMat>> images;  // [factor][basis element]
    std::vector<QMat> torus;
    QMat form;
    bool has_form = false;
    bool symmetric = false;
};

Rep build_summand_rep(const std::vector<FactorAlgebra>& factors, int torus_rank, const Summand& s, bool symmetric_target);

struct EmbeddedSubgroup {
    PairSpec spec;
    ClassicalAlgebra g;
    ReductiveType htype;
    std::vector<FactorAlgebra> factors;
    std::vector<QMat> gens;               // images of all factor basis elements, then torus generators
    std::vector<BasisKind> gen_kinds;
    std::vector<QMat> cartan;             // t_H basis in htype coordinate order
    int dim_h = 0;
    CartanMap cmap;
    std::vector<Rep> summands;            // each summand in its own basis
    // doubled t_H weights of the basis vectors of each summand
    std::vector<std::vector<std::vector<int>>> summand_weights;

    SimpleFactor g_type() const { return g.type; }
    ReductiveType g_reductive() const { return ReductiveType{{g.type}, 0, {}}; }
    int borel_dim() const;                // dim b_H
    std::vector<QMat> borel_plus() const; // spanning set of b_H (upper triangular part)
    std::vector<QMat> nil_plus() const;
};

EmbeddedSubgroup build_subalgebra(const PairSpec& spec);
EmbeddedSubgroup build_subalgebra(const std::string& spec);
EmbeddedSubgroup g2_in_so7();
EmbeddedSubgroup spin7_in_so8(Sign sign);

// p_I^-: b^- plus the positive root spaces whose roots vanish on I (1-based indices).
std::vector<QMat> parabolic(const ClassicalAlgebra& g, const std::set<int>& I);
int flag_dimension(const ClassicalAlgebra& g, const std::set<int>& I);

// Levi subalgebra m of p_I^- cap h containing t_H.
struct Levi {
    std::vector<QMat> basis;  // t_H first, then root vectors
    std::vector<BasisKind> kinds;
    std::vector<QMat> cartan;
    ReductiveType type;       // identified from the root subsystem
    int dim() const { return static_cast<int>(basis.size()); }
};

Levi levi_of_intersection(const EmbeddedSubgroup& e, const std::set<int>& I);

// A linear action of a Lie algebra with a chosen Borel subalgebra.
struct ModuleAction {
    int dim = 0;
    std::vector<QMat> borel;  // b_M acting on V
    std::vector<QMat> nil;    // n_M acting on V
    std::string description;
};

struct QuotientModule {
    Levi m;
    ModuleAction action;
    std::vector<QMat> complement;  // representatives of a basis of g/(p + h)
};

QuotientModule quotient_module(const EmbeddedSubgroup& e, const std::set<int>& I);

// Module built directly from a module spec (no ambient group).
ModuleAction build_module(const PairSpec& spec);
ModuleAction build_module(const std::string& spec);

CartanMap cartan_restriction_map(const EmbeddedSubgroup& e);

// Identify a root system from a Cartan matrix (components in Bourbaki form).
std::vector<SimpleFactor> classify_cartan(const std::vector<std::vector<int>>& cartan);

}  // namespace flagsph
