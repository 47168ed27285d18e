#include "flagsph/partitions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace flagsph {

int Composition::total() const { return std::accumulate(parts.begin(), parts.end(), 0); }
int Partition::total() const { return std::accumulate(parts.begin(), parts.end(), 0); }

std::string Partition::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
    return os.str();
}

std::string Partition::exponent() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < parts.size();) {
        size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        os << (i ? "," : "") << parts[i];
        if (j - i > 1) os << "^" << j - i;
        i = j;
    }
    os << "]";
    return os.str();
}

ParityClass::ParityClass(int e) : epsilon(e) {
    if (e != 1 && e != -1) throw std::invalid_argument("epsilon must be +1 or -1");
}

Composition make_composition(std::vector<int> parts) {
    for (int p : parts)
        if (p < 1) throw std::invalid_argument("composition parts must be positive");
    return Composition{std::move(parts)};
}

Partition make_partition(std::vector<int> parts) {
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] < 1) throw std::invalid_argument("partition parts must be positive");
        if (i && parts[i] > parts[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
    }
    return Partition{std::move(parts)};
}

Partition from_exponent(const std::vector<std::pair<int, int>>& blocks) {
    std::vector<int> p;
    for (auto [b, k] : blocks) p.insert(p.end(), k, b);
    return make_partition(p);
}

Partition parse_partition(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '[' && c != ']' && c != '(' && c != ')') s += c;
    std::vector<int> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw std::invalid_argument("empty part in '" + text + "'");
        auto hat = tok.find('^');
        int b = std::stoi(tok.substr(0, hat));
        int k = hat == std::string::npos ? 1 : std::stoi(tok.substr(hat + 1));
        parts.insert(parts.end(), k, b);
    }
    return make_partition(parts);
}

bool is_symmetric(const Composition& c) {
    auto r = c.parts;
    std::reverse(r.begin(), r.end());
    return r == c.parts;
}

Partition dual(const Composition& c) {
    int mx = c.parts.empty() ? 0 : *std::max_element(c.parts.begin(), c.parts.end());
    std::vector<int> d;
    for (int i = 1; i <= mx; ++i) {
        int cnt = 0;
        for (int a : c.parts)
            if (a >= i) ++cnt;
        d.push_back(cnt);
    }
    return Partition{d};
}

Partition dual(const Partition& a) { return dual(Composition{a.parts}); }

bool dominates(const Partition& a, const Partition& b) {
    if (a.total() != b.total()) throw std::invalid_argument("incomparable totals");
    int sa = 0, sb = 0;
    size_t n = std::max(a.parts.size(), b.parts.size());
    for (size_t i = 0; i < n; ++i) {
        sa += i < a.parts.size() ? a.parts[i] : 0;
        sb += i < b.parts.size() ? b.parts[i] : 0;
        if (sa > sb) return false;
    }
    return true;
}

bool in_parity_class(const Partition& a, ParityClass eps) {
    std::map<int, int> mult;
    for (int p : a.parts) ++mult[p];
    for (auto [p, k] : mult) {
        bool constrained = eps.epsilon == -1 ? (p % 2 == 1) : (p % 2 == 0);
        if (constrained && k % 2) return false;
    }
    return true;
}

bool is_very_even(const Partition& a) {
    for (int p : a.parts)
        if (p % 2) return false;
    return in_parity_class(a, ParityClass(1));
}

Partition collapse(const Partition& input, ParityClass eps) {
    std::vector<int> a = input.parts;
    while (true) {
        Partition cur{a};
        if (in_parity_class(cur, eps)) return cur;
        // largest m such that (a_1..a_m) lies in P_eps of its own sum
        int p = static_cast<int>(a.size());
        int m = 0;
        for (int i = 1; i <= p; ++i) {
            Partition prefix{std::vector<int>(a.begin(), a.begin() + i)};
            if (in_parity_class(prefix, eps)) m = i;
        }
        // smallest l >= m+2 with eps * (-1)^{a_l} = 1, zeros padded
        auto at = [&](int i) { return i <= static_cast<int>(a.size()) ? a[i - 1] : 0; };
        int l = m + 2;
        while (true) {
            int sign = at(l) % 2 == 0 ? 1 : -1;
            if (eps.epsilon * sign == 1) break;
            ++l;
        }
        if (l > static_cast<int>(a.size())) a.resize(l, 0);
        a[m] -= 1;
        a[l - 1] += 1;
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
}

std::vector<Partition> enumerate_partitions(int d, const PartitionConfig& cfg) {
    if (d < 1) throw std::invalid_argument("d must be positive");
    if (d > cfg.enumeration_bound) throw std::runtime_error("enumeration bound exceeded");
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int mx) {
        if (rest == 0) {
            out.push_back(Partition{cur});
            return;
        }
        for (int p = std::min(rest, mx); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(d, d);
    return out;
}

std::vector<Partition> enumerate_partitions(int d, ParityClass eps, const PartitionConfig& cfg) {
    std::vector<Partition> out;
    for (auto& p : enumerate_partitions(d, cfg))
        if (in_parity_class(p, eps)) out.push_back(std::move(p));
    return out;
}

}  // namespace flagsph
