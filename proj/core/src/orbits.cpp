#include "flagsph/orbits.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace flagsph {

std::string to_string(Sign s) {
    switch (s) {
        case Sign::Plus: return "+";
        case Sign::Minus: return "-";
        case Sign::Unresolved: return "?";
        default: return "";
    }
}

GroupKind::GroupKind(Kind k, int d) : kind(k), dim(d) {
    if (k == Kind::Symplectic && (d < 2 || d % 2)) throw std::invalid_argument("symplectic dimension must be even and >= 2");
    if (k == Kind::Orthogonal && d < 3) throw std::invalid_argument("orthogonal dimension must be >= 3");
}

std::string GroupKind::str() const {
    return (kind == Kind::Symplectic ? "sp(" : "so(") + std::to_string(dim) + ")";
}

std::string OrbitLabel::str() const { return partition.exponent() + to_string(sign); }

std::string FlagDescriptor::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < composition.parts.size(); ++i) os << (i ? "," : "") << composition.parts[i];
    os << ")" << to_string(sign);
    return os.str();
}

std::string ClassKey::str() const { return partition.exponent() + to_string(sign); }

bool flag_needs_sign(const GroupKind& g, const Composition& c) {
    if (g.kind != Kind::Orthogonal || g.dim % 2) return false;
    size_t p = c.parts.size();
    if (p % 2) return false;
    return c.parts[p / 2 - 1] >= 2;
}

FlagDescriptor make_flag(const GroupKind& g, std::vector<int> parts, Sign sign) {
    Composition c = make_composition(std::move(parts));
    if (c.total() != g.dim) throw std::invalid_argument("composition does not sum to the dimension");
    if (!is_symmetric(c)) throw std::invalid_argument("composition is not symmetric");
    bool need = flag_needs_sign(g, c);
    if (need && sign != Sign::Plus && sign != Sign::Minus) throw std::invalid_argument("this flag variety needs a sign");
    if (!need && sign != Sign::None) throw std::invalid_argument("this flag variety takes no sign");
    return FlagDescriptor{g, c, sign};
}

std::vector<OrbitLabel> orbit_labels(const GroupKind& g, const PartitionConfig& cfg) {
    std::vector<OrbitLabel> out;
    for (auto& p : enumerate_partitions(g.dim, ParityClass(g.epsilon()), cfg)) {
        if (g.kind == Kind::Orthogonal && is_very_even(p)) {
            out.push_back({p, Sign::Plus});
            out.push_back({p, Sign::Minus});
        } else {
            out.push_back({p, Sign::None});
        }
    }
    return out;
}

bool closure_leq(const GroupKind& g, const OrbitLabel& o1, const OrbitLabel& o2) {
    if (o1.partition.total() != g.dim || o2.partition.total() != g.dim) throw std::invalid_argument("mismatched group");
    if (o1 == o2) return true;
    if (o1.partition == o2.partition) return false;
    return dominates(o1.partition, o2.partition);
}

OrbitLabel richardson(const FlagDescriptor& f) {
    ParityClass eps(f.group.epsilon());
    Partition p = collapse(dual(f.composition), eps);
    Sign s = (f.group.kind == Kind::Orthogonal && is_very_even(p)) ? Sign::Unresolved : Sign::None;
    return {p, s};
}

ClassKey class_key(const FlagDescriptor& f) {
    OrbitLabel r = richardson(f);
    return {r.partition, r.sign == Sign::Unresolved ? f.sign : Sign::None};
}

bool nil_equivalent(const FlagDescriptor& f1, const FlagDescriptor& f2) {
    if (!(f1.group == f2.group)) throw std::invalid_argument("mismatched group");
    return class_key(f1) == class_key(f2);
}

std::set<int> flag_to_index_set(const FlagDescriptor& f) {
    const auto& a = f.composition.parts;
    int p = static_cast<int>(a.size());
    if (p <= 1) throw std::invalid_argument("trivial flag variety");
    int n = f.group.dim / 2;
    std::set<int> I;
    auto partial = [&](int upto) {
        int s = 0;
        for (int i = 0; i < upto; ++i) {
            s += a[i];
            I.insert(s);
        }
    };
    if (f.group.kind == Kind::Symplectic || f.group.dim % 2) {
        partial(p / 2);
        return I;
    }
    if (p % 2) {
        if (a[p / 2] >= 4) {
            partial(p / 2);
        } else {
            partial(p / 2 - 1);
            I.insert(n - 1);
            I.insert(n);
        }
        return I;
    }
    int q = p / 2;
    partial(q - 1);
    if (a[q - 1] == 1) {
        I.insert(n - 1);
        I.insert(n);
    } else if (f.sign == Sign::Plus) {
        I.insert(n);
    } else if (f.sign == Sign::Minus) {
        I.insert(n - 1);
    } else {
        throw std::invalid_argument("flag variety needs a sign");
    }
    return I;
}

std::vector<FlagDescriptor> enumerate_flags(const GroupKind& g, const PartitionConfig& cfg) {
    if (g.dim > cfg.enumeration_bound) throw std::runtime_error("enumeration bound exceeded");
    std::vector<FlagDescriptor> out;
    // Symmetric compositions: choose the first half and an optional middle part.
    std::vector<int> half;
    std::function<void(int)> rec = [&](int rest) {
        // close with a middle part (possibly none)
        std::vector<int> parts = half;
        if (rest > 0) parts.push_back(rest);
        parts.insert(parts.end(), half.rbegin(), half.rend());
        if (parts.size() > 1) {
            Composition c{parts};
            if (flag_needs_sign(g, c)) {
                out.push_back({g, c, Sign::Plus});
                out.push_back({g, c, Sign::Minus});
            } else {
                out.push_back({g, c, Sign::None});
            }
        }
        for (int x = 1; 2 * x <= rest; ++x) {
            half.push_back(x);
            rec(rest - 2 * x);
            half.pop_back();
        }
    };
    rec(g.dim);
    std::stable_sort(out.begin(), out.end(), [](const FlagDescriptor& x, const FlagDescriptor& y) {
        if (x.composition.parts.size() != y.composition.parts.size())
            return x.composition.parts.size() < y.composition.parts.size();
        return x.composition.parts < y.composition.parts;
    });
    return out;
}

std::vector<std::pair<int, int>> FlagPoset::covers() const {
    std::vector<std::pair<int, int>> out;
    int n = static_cast<int>(classes.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!less[i][j]) continue;
            bool cover = true;
            for (int k = 0; k < n && cover; ++k)
                if (less[i][k] && less[k][j]) cover = false;
            if (cover) out.emplace_back(i, j);
        }
    return out;
}

std::string FlagPoset::dot() const {
    std::ostringstream os;
    os << "digraph flags {\n  rankdir=BT;\n";
    for (size_t i = 0; i < classes.size(); ++i) {
        os << "  c" << i << " [label=\"" << classes[i].key.partition.str() << to_string(classes[i].key.sign);
        os << "\\n";
        for (size_t m = 0; m < classes[i].members.size(); ++m) os << (m ? " " : "") << classes[i].members[m].str();
        os << "\"];\n";
    }
    for (auto [i, j] : covers()) os << "  c" << i << " -> c" << j << ";\n";
    os << "}\n";
    return os.str();
}

FlagPoset flag_poset(const GroupKind& g, const PartitionConfig& cfg) {
    FlagPoset poset;
    poset.group = g;
    std::map<ClassKey, size_t> index;
    // (k,1,1,k) and (k,2,k) name the same variety in SO(2n); keep the first one seen
    std::set<std::set<int>> seen;
    for (const auto& f : enumerate_flags(g, cfg)) {
        if (!seen.insert(flag_to_index_set(f)).second) continue;
        ClassKey k = class_key(f);
        auto it = index.find(k);
        if (it == index.end()) {
            index[k] = poset.classes.size();
            poset.classes.push_back({k, {f}});
        } else {
            poset.classes[it->second].members.push_back(f);
        }
    }
    size_t n = poset.classes.size();
    poset.less.assign(n, std::vector<bool>(n, false));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const auto& a = poset.classes[i].key.partition;
            const auto& b = poset.classes[j].key.partition;
            poset.less[i][j] = !(a == b) && dominates(a, b);
        }
    return poset;
}

std::vector<NilClass> minimal_classes(const GroupKind& g, const PartitionConfig& cfg) {
    FlagPoset p = flag_poset(g, cfg);
    std::vector<NilClass> out;
    for (size_t j = 0; j < p.classes.size(); ++j) {
        bool minimal = true;
        for (size_t i = 0; i < p.classes.size(); ++i)
            if (p.less[i][j]) minimal = false;
        if (minimal) out.push_back(p.classes[j]);
    }
    return out;
}

}  // namespace flagsph
