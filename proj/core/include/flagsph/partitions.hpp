#pragma once

#include <string>
#include <vector>

namespace flagsph {

struct Composition {
    std::vector<int> parts;
    int total() const;
    bool operator==(const Composition&) const = default;
};

struct Partition {
    std::vector<int> parts;  // weakly decreasing, positive
    int total() const;
    std::string str() const;          // "3,1,1,1"
    std::string exponent() const;     // "[3,1^3]"
    auto operator<=>(const Partition&) const = default;
};

// +1 selects the orthogonal class, -1 the symplectic one.
struct ParityClass {
    int epsilon = 1;
    explicit ParityClass(int e);
};

struct PartitionConfig {
    int enumeration_bound = 30;
};

Composition make_composition(std::vector<int> parts);
Partition make_partition(std::vector<int> parts);  // validates ordering and positivity
Partition parse_partition(const std::string& text);  // "3,1,1,1" or "[3,1^3]"
Partition from_exponent(const std::vector<std::pair<int, int>>& blocks);

bool is_symmetric(const Composition& c);
Partition dual(const Composition& c);
Partition dual(const Partition& a);
// true iff a precedes-or-equals b in dominance order
bool dominates(const Partition& a, const Partition& b);
bool in_parity_class(const Partition& a, ParityClass eps);
Partition collapse(const Partition& a, ParityClass eps);
bool is_very_even(const Partition& a);
std::vector<Partition> enumerate_partitions(int d, const PartitionConfig& cfg = {});
std::vector<Partition> enumerate_partitions(int d, ParityClass eps, const PartitionConfig& cfg = {});

}  // namespace flagsph
