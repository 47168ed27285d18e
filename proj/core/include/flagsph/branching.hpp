#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "flagsph/embeddings.hpp"
#include "flagsph/rootdata.hpp"

namespace flagsph {

// (lambda; mu) with lambda a G-weight and mu an H-weight, both doubled.
struct BranchPair {
    Weight lambda;
    Weight mu;
    auto operator<=>(const BranchPair&) const = default;
};

struct BranchingMonoid {
    ReductiveType g;
    ReductiveType h;
    std::vector<BranchPair> generators;
    int rank = 0;             // expected rank, or the generator count when none was given
    bool complete = false;
    bool multiplicity_free = true;
    int max_sum = 0;          // largest coefficient sum explored
    std::vector<Weight> explored;  // every lambda restricted along the way
    std::vector<std::string> notes;

    std::set<BranchPair> generator_set() const { return {generators.begin(), generators.end()}; }
};

using Restriction = std::vector<std::pair<Weight, std::int64_t>>;

Restriction restrict_irrep(const EmbeddedSubgroup& e, const Weight& lambda, const RootDataConfig& cfg = {});
bool is_multiplicity_free(const EmbeddedSubgroup& e, const Weight& lambda, const RootDataConfig& cfg = {});

// Dominant G-weights supported on I with the given coefficient sum, in lexicographic order.
std::vector<Weight> weights_on(const SimpleFactor& g, const std::set<int>& I, int sum);

// Indecomposable elements of Gamma_I(G,H) by increasing coefficient sum. The
// coefficient sum in which the expected rank is reached is finished before stopping.
BranchingMonoid gamma_generators(const EmbeddedSubgroup& e, const std::set<int>& I, int expected_rank = -1,
                                 int degree_bound = 4);

// Gamma_{1}(G,H) from the weight monoid of V under H x F^x (one F^x per summand
// when SO has two summands), via lambda = mu + k delta -> (k pi_1; mu).
BranchingMonoid rbm_via_weight_monoid(const EmbeddedSubgroup& e, int degree_bound = 4);

struct MultiplicityWitness {
    bool found = false;
    Weight lambda;
    Weight mu;
    std::int64_t multiplicity = 0;
};

MultiplicityWitness find_multiplicity_witness(const EmbeddedSubgroup& e, const std::set<int>& I, int max_sum);

std::string format_pair(const ReductiveType& g, const ReductiveType& h, const BranchPair& p);
BranchPair parse_pair(const ReductiveType& g, const ReductiveType& h, const std::string& lambda, const std::string& mu);

}  // namespace flagsph
