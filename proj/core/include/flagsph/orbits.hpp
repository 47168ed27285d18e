#pragma once

#include <set>
#include <string>
#include <vector>

#include "flagsph/partitions.hpp"

namespace flagsph {

enum class Kind { Symplectic, Orthogonal };
enum class Sign { None, Plus, Minus, Unresolved };

std::string to_string(Sign s);

struct GroupKind {
    Kind kind = Kind::Symplectic;
    int dim = 2;
    GroupKind() = default;
    GroupKind(Kind k, int d);
    int epsilon() const { return kind == Kind::Symplectic ? -1 : 1; }
    int rank() const { return dim / 2; }
    std::string str() const;  // "sp(6)", "so(8)"
    bool operator==(const GroupKind&) const = default;
};

struct OrbitLabel {
    Partition partition;
    Sign sign = Sign::None;
    std::string str() const;
    auto operator<=>(const OrbitLabel&) const = default;
};

struct FlagDescriptor {
    GroupKind group;
    Composition composition;
    Sign sign = Sign::None;
    std::string str() const;  // "(1,3,3,1)+"
};

FlagDescriptor make_flag(const GroupKind& g, std::vector<int> parts, Sign sign = Sign::None);
// True when the composition requires a sign for this group.
bool flag_needs_sign(const GroupKind& g, const Composition& c);

std::vector<OrbitLabel> orbit_labels(const GroupKind& g, const PartitionConfig& cfg = {});
bool closure_leq(const GroupKind& g, const OrbitLabel& o1, const OrbitLabel& o2);
OrbitLabel richardson(const FlagDescriptor& f);
bool nil_equivalent(const FlagDescriptor& f1, const FlagDescriptor& f2);
std::set<int> flag_to_index_set(const FlagDescriptor& f);
std::vector<FlagDescriptor> enumerate_flags(const GroupKind& g, const PartitionConfig& cfg = {});

// Key identifying a nil-equivalence class.
struct ClassKey {
    Partition partition;
    Sign sign = Sign::None;  // input flag sign, kept only for very even SO_{4k} outputs
    auto operator<=>(const ClassKey&) const = default;
    std::string str() const;
};

ClassKey class_key(const FlagDescriptor& f);

struct NilClass {
    ClassKey key;
    std::vector<FlagDescriptor> members;
};

struct FlagPoset {
    GroupKind group;
    std::vector<NilClass> classes;
    // less[i][j]: class i strictly below class j
    std::vector<std::vector<bool>> less;
    std::vector<std::pair<int, int>> covers() const;
    std::string dot() const;
};

// Flags naming the same variety (equal index sets) appear once in the classes.
FlagPoset flag_poset(const GroupKind& g, const PartitionConfig& cfg = {});
std::vector<NilClass> minimal_classes(const GroupKind& g, const PartitionConfig& cfg = {});

}  // namespace flagsph
