#include "flagsph/sphericity.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

namespace flagsph {

std::string to_string(SphericityStatus s) {
    return s == SphericityStatus::Spherical ? "Spherical" : "NotSphericalLikely";
}

namespace {

using Row = std::vector<std::uint64_t>;

std::int64_t draw(std::mt19937_64& rng) { return static_cast<std::int64_t>(rng() % 19) - 9; }

// g and g^{-1} as products of root exponentials: positive roots, then negative ones.
std::pair<modp::Mat, modp::Mat> random_element(const std::vector<modp::Mat>& pos, const std::vector<modp::Mat>& neg,
                                               std::mt19937_64& rng, int d) {
    modp::Mat g = modp::Mat::identity(d), ginv = modp::Mat::identity(d);
    auto step = [&](const modp::Mat& x) {
        std::int64_t c = draw(rng);
        if (c == 0) return;
        g = g * modp::exp_nilpotent(x, modp::from_int(c));
        ginv = modp::exp_nilpotent(x, modp::from_int(-c)) * ginv;
    };
    for (const auto& x : pos) step(x);
    for (const auto& x : neg) step(x);
    return {g, ginv};
}

struct FlagSampler {
    int d;
    std::vector<modp::Mat> pos, neg, para;
    FlagSampler(const EmbeddedSubgroup& e, const std::set<int>& I) : d(e.g.group.dim) {
        for (int k = 0; k < e.g.dim(); ++k) {
            if (e.g.kinds[k] == BasisKind::Positive) pos.push_back(modp::from_q(e.g.basis[k]));
            if (e.g.kinds[k] == BasisKind::Negative) neg.push_back(modp::from_q(e.g.basis[k]));
        }
        for (const auto& x : parabolic(e.g, I)) para.push_back(modp::from_q(x));
    }
    // Runs the identity and then `trials` random conjugates; fold(rows) returns true to stop.
    template <class F>
    int run(const std::vector<Row>& fixed, int trials, std::uint64_t seed, F fold) const {
        std::mt19937_64 rng(seed);
        for (int t = 0; t <= trials; ++t) {
            modp::Mat g = modp::Mat::identity(d), ginv = g;
            if (t > 0) std::tie(g, ginv) = random_element(pos, neg, rng, d);
            std::vector<Row> rows = fixed;
            for (const auto& x : para) rows.push_back((g * x * ginv).a);
            if (fold(modp::rank(std::move(rows)))) return t + 1;
        }
        return trials + 1;
    }
};

std::vector<Row> flat(const std::vector<QMat>& xs) {
    std::vector<Row> out;
    for (const auto& x : xs) out.push_back(modp::from_q(x).a);
    return out;
}

void check_trials(int trials) {
    if (trials <= 0) throw std::invalid_argument("trials must be positive");
}

}  // namespace

SphericityVerdict is_spherical_flag(const EmbeddedSubgroup& e, const std::set<int>& I, int trials, std::uint64_t seed) {
    check_trials(trials);
    FlagSampler s(e, I);
    SphericityVerdict v;
    v.seed = seed;
    v.target = e.g.dim();
    v.trials_used = s.run(flat(e.borel_plus()), trials, seed, [&](int r) {
        v.witness_rank = std::max(v.witness_rank, r);
        return r == v.target;
    });
    v.status = v.witness_rank == v.target ? SphericityStatus::Spherical : SphericityStatus::NotSphericalLikely;
    return v;
}

int flag_rank(const EmbeddedSubgroup& e, const std::set<int>& I, int trials, std::uint64_t seed) {
    if (!is_spherical_flag(e, I, trials, seed).spherical()) throw std::runtime_error("flag not spherical");
    FlagSampler s(e, I);
    int best = 0;
    s.run(flat(e.nil_plus()), trials, seed, [&](int r) {
        best = std::max(best, r);
        return false;
    });
    return e.g.dim() - best;
}

namespace {

// Max over samples of rank{X v : X in family}, for each family.
std::vector<int> module_ranks(const ModuleAction& m, const std::vector<const std::vector<QMat>*>& families, int trials,
                              std::uint64_t seed, int stop_at) {
    std::vector<std::vector<modp::Mat>> mats;
    for (auto* f : families) {
        mats.emplace_back();
        for (const auto& x : *f) mats.back().push_back(modp::from_q(x));
    }
    std::vector<int> best(families.size(), 0);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        Row v(m.dim);
        for (auto& c : v) c = modp::from_int(draw(rng));
        for (size_t f = 0; f < mats.size(); ++f) {
            std::vector<Row> rows;
            for (const auto& x : mats[f]) rows.push_back(modp::apply(x, v));
            best[f] = std::max(best[f], modp::rank(std::move(rows)));
        }
        if (stop_at >= 0 && best[0] == stop_at) break;
    }
    return best;
}

}  // namespace

SphericityVerdict is_spherical_module(const ModuleAction& m, int trials, std::uint64_t seed) {
    check_trials(trials);
    SphericityVerdict v;
    v.seed = seed;
    v.target = m.dim;
    if (m.dim == 0) {
        v.status = SphericityStatus::Spherical;
        return v;
    }
    std::vector<modp::Mat> mats;
    for (const auto& x : m.borel) mats.push_back(modp::from_q(x));
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials && v.witness_rank < v.target; ++t) {
        Row vec(m.dim);
        for (auto& c : vec) c = modp::from_int(draw(rng));
        std::vector<Row> rows;
        for (const auto& x : mats) rows.push_back(modp::apply(x, vec));
        v.witness_rank = std::max(v.witness_rank, modp::rank(std::move(rows)));
        v.trials_used = t + 1;
    }
    v.status = v.witness_rank == v.target ? SphericityStatus::Spherical : SphericityStatus::NotSphericalLikely;
    return v;
}

int module_rank(const ModuleAction& m, int trials, std::uint64_t seed) {
    if (!is_spherical_module(m, trials, seed).spherical()) throw std::runtime_error("module not spherical");
    if (m.dim == 0) return 0;
    auto best = module_ranks(m, {&m.nil}, trials, seed, -1);
    return m.dim - best[0];
}

int branching_rank(const EmbeddedSubgroup& e, const std::set<int>& I, int trials, std::uint64_t seed) {
    if (!is_spherical_flag(e, I, trials, seed).spherical()) throw std::runtime_error("flag not spherical");
    return static_cast<int>(I.size()) + module_rank(quotient_module(e, I).action, trials, seed);
}

bool in_nonneg_span(const std::vector<int>& target, const std::vector<std::vector<int>>& gens) {
    if (std::all_of(target.begin(), target.end(), [](int x) { return x == 0; })) return true;
    for (const auto& g : gens)
        if (g.empty() || g[0] <= 0) throw std::invalid_argument("generators need a positive grading");
    std::set<std::vector<int>> dead;
    std::function<bool(const std::vector<int>&, size_t)> rec = [&](const std::vector<int>& rest, size_t from) {
        if (std::all_of(rest.begin(), rest.end(), [](int x) { return x == 0; })) return true;
        if (rest[0] <= 0) return false;
        std::vector<int> key = rest;
        key.push_back(static_cast<int>(from));
        if (dead.count(key)) return false;
        for (size_t k = from; k < gens.size(); ++k) {
            std::vector<int> next(rest.size());
            for (size_t i = 0; i < rest.size(); ++i) next[i] = rest[i] - gens[k][i];
            if (rec(next, k)) return true;
        }
        dead.insert(key);
        return false;
    };
    return rec(target, 0);
}

WeightMonoid weight_monoid(const FormalCharacter& v, int max_degree, int expected_rank) {
    if (max_degree < 1) throw std::invalid_argument("max_degree must be at least 1");
    WeightMonoid out;
    out.type = v.type;
    if (v.dim() == 0) {
        out.complete = true;
        return out;
    }
    std::vector<std::vector<int>> graded;
    for (int k = 1; k <= max_degree; ++k) {
        if (expected_rank >= 0 && static_cast<int>(out.generators.size()) >= expected_rank) break;
        FormalCharacter sk = symmetric_power_character(v, k);
        for (const auto& [w, mult] : decompose(sk)) {
            std::vector<int> g{k};
            g.insert(g.end(), w.twice.begin(), w.twice.end());
            if (in_nonneg_span(g, graded)) continue;
            graded.push_back(g);
            out.generators.push_back(w);
            out.degrees.push_back(k);
        }
    }
    out.complete = expected_rank >= 0 && static_cast<int>(out.generators.size()) == expected_rank;
    return out;
}

}  // namespace flagsph
