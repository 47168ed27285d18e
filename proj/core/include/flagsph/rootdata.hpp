#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace flagsph {

enum class Series { A, B, C, D, G };

struct SimpleFactor {
    Series series = Series::A;
    int rank = 1;
    std::string name() const;  // e.g. "B3"
    bool operator==(const SimpleFactor&) const = default;
};

// Semisimple factors followed by a torus of the given rank.
struct ReductiveType {
    std::vector<SimpleFactor> factors;
    int torus_rank = 0;
    std::vector<std::string> torus_names;

    int ss_rank() const;
    int coords() const { return ss_rank() + torus_rank; }
    // Offset of factor k inside a weight vector.
    int offset(int k) const;
    std::string name() const;
};

// A weight stored with every coordinate doubled: value = twice[i] / 2.
// Semisimple coordinates are in the fundamental-weight basis.
struct Weight {
    std::vector<int> twice;
    auto operator<=>(const Weight&) const = default;
};

using Character = std::map<std::vector<int>, std::int64_t>;  // keys are doubled coordinates

struct FormalCharacter {
    ReductiveType type;
    Character mult;
    std::int64_t dim() const;
};

struct CartanData {
    SimpleFactor factor;
    int rank = 0;
    std::vector<std::vector<int>> cartan;     // cartan[i][j] = <alpha_i, alpha_j^vee>
    std::vector<int> sym;                     // (alpha_i, alpha_i) / 2, integral
    std::vector<std::vector<int>> pos_roots;  // simple-root coordinates
    std::vector<std::vector<int>> pos_roots_fund;  // fundamental coordinates
    std::int64_t scale = 1;                   // common denominator of the inverse Cartan matrix
    std::vector<std::vector<std::int64_t>> inv_scaled;  // scale * cartan^{-1}

    // Scaled inner product of weights in fundamental coordinates; result times `scale`.
    std::int64_t ip(const std::vector<int>& x, const std::vector<int>& y) const;
    // Height of a weight (sum of simple-root coordinates) times `scale`.
    std::int64_t height(const std::vector<int>& x) const;
    std::vector<int> reflect(const std::vector<int>& x, int i) const;
    std::vector<int> to_dominant(const std::vector<int>& x) const;
    bool is_dominant(const std::vector<int>& x) const;
};

const CartanData& cartan_data(const SimpleFactor& f);

struct RootDataConfig {
    std::int64_t dim_bound = 200000;
};

// Weyl dimension formula for one simple factor (plain integer coordinates).
std::int64_t weyl_dim(const SimpleFactor& f, const std::vector<int>& lambda);
// Product over the simple factors; torus coordinates ignored. Doubled input.
std::int64_t weyl_dim(const ReductiveType& t, const Weight& lambda);

// Dominant weights with multiplicities of the irreducible of one factor (Freudenthal).
std::map<std::vector<int>, std::int64_t> dominant_character(const SimpleFactor& f,
                                                            const std::vector<int>& lambda);
// Weyl orbit of a weight.
std::vector<std::vector<int>> weyl_orbit(const SimpleFactor& f, const std::vector<int>& dominant);

// Full weight multiset of the irreducible with highest weight lambda (doubled coordinates).
FormalCharacter formal_character(const ReductiveType& t, const Weight& lambda,
                                 const RootDataConfig& cfg = {});
// Dominant part only; cheaper and sufficient for peeling.
Character dominant_part(const ReductiveType& t, const Weight& lambda,
                        const RootDataConfig& cfg = {});

bool is_dominant(const ReductiveType& t, const std::vector<int>& twice);

// Highest weights (with multiplicity) of a genuine character; throws
// std::runtime_error("not a representation character") otherwise.
std::vector<std::pair<Weight, std::int64_t>> decompose(const FormalCharacter& ch,
                                                       const RootDataConfig& cfg = {});

FormalCharacter multiply(const FormalCharacter& x, const FormalCharacter& y);
FormalCharacter symmetric_power_character(const FormalCharacter& ch, int k,
                                          const RootDataConfig& cfg = {});

// Linear map on doubled coordinates: out = (matrix * in) / 2, with `matrix`
// rows indexed by target coordinates. Entries are doubled so spin weights stay integral.
struct CartanMap {
    ReductiveType source;
    ReductiveType target;
    std::vector<std::vector<std::int64_t>> matrix;  // target.coords() x source.coords()
    std::vector<int> apply(const std::vector<int>& twice) const;
    static CartanMap identity(const ReductiveType& t);
};

FormalCharacter restrict_character(const FormalCharacter& ch, const CartanMap& m);

// Notation helpers: "pi1+2*pi3@2+chi/2" style weights.
Weight parse_weight(const ReductiveType& t, const std::string& text);
std::string format_weight(const ReductiveType& t, const Weight& w);

}  // namespace flagsph
