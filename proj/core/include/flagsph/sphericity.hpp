#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "flagsph/embeddings.hpp"
#include "flagsph/rootdata.hpp"

namespace flagsph {

enum class SphericityStatus { Spherical, NotSphericalLikely };
std::string to_string(SphericityStatus s);

// Spherical is certified by a sample point of full rank. The rank is taken
// modulo 2^61-1, which can only lower it, so a full rank mod p is a full
// rank over Q. NotSphericalLikely means no sample reached full rank.
struct SphericityVerdict {
    SphericityStatus status = SphericityStatus::NotSphericalLikely;
    int witness_rank = 0;  // best rank seen
    int target = 0;        // rank needed for an open Borel orbit
    int trials_used = 0;
    std::uint64_t seed = 0;
    bool spherical() const { return status == SphericityStatus::Spherical; }
};

constexpr int kDefaultTrials = 8;

// The identity is always tried first; then `trials` random group elements.
SphericityVerdict is_spherical_flag(const EmbeddedSubgroup& e, const std::set<int>& I,
                                    int trials = kDefaultTrials, std::uint64_t seed = 0);
// dim g - max dim(n_H + Ad(g) p_I^-); an independent route to the rank of X_I.
int flag_rank(const EmbeddedSubgroup& e, const std::set<int>& I, int trials = kDefaultTrials, std::uint64_t seed = 0);

SphericityVerdict is_spherical_module(const ModuleAction& m, int trials = kDefaultTrials, std::uint64_t seed = 0);
int module_rank(const ModuleAction& m, int trials = kDefaultTrials, std::uint64_t seed = 0);
int branching_rank(const EmbeddedSubgroup& e, const std::set<int>& I, int trials = kDefaultTrials, std::uint64_t seed = 0);

// True when target is a nonnegative integer combination of gens. Coordinate 0
// must be a positive grading on every generator (degree or coefficient sum).
bool in_nonneg_span(const std::vector<int>& target, const std::vector<std::vector<int>>& gens);

struct WeightMonoid {
    ReductiveType type;
    std::vector<Weight> generators;
    std::vector<int> degrees;  // degree in which each generator first appears
    bool complete = false;     // generator count reached the expected rank
};

// Indecomposable highest weights of S^k(V), k <= max_degree. With expected_rank
// >= 0 the search stops once that many generators are found.
WeightMonoid weight_monoid(const FormalCharacter& v, int max_degree, int expected_rank = -1);

}  // namespace flagsph
