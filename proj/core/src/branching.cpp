#include "flagsph/branching.hpp"

#include <functional>
#include <stdexcept>

#include "flagsph/sphericity.hpp"

namespace flagsph {

Restriction restrict_irrep(const EmbeddedSubgroup& e, const Weight& lambda, const RootDataConfig& cfg) {
    ReductiveType g = e.g_reductive();
    if (!is_dominant(g, lambda.twice)) throw std::invalid_argument("lambda is not dominant");
    for (int x : lambda.twice)
        if (x % 2) throw std::invalid_argument("lambda is not integral");
    FormalCharacter ch = formal_character(g, lambda, cfg);
    return decompose(restrict_character(ch, e.cmap), cfg);
}

bool is_multiplicity_free(const EmbeddedSubgroup& e, const Weight& lambda, const RootDataConfig& cfg) {
    for (const auto& [mu, m] : restrict_irrep(e, lambda, cfg))
        if (m > 1) return false;
    return true;
}

std::vector<Weight> weights_on(const SimpleFactor& g, const std::set<int>& I, int sum) {
    std::vector<int> idx(I.begin(), I.end());
    std::vector<Weight> out;
    std::vector<int> coef(idx.size(), 0);
    std::function<void(size_t, int)> rec = [&](size_t k, int rest) {
        if (k + 1 == idx.size()) {
            coef[k] = rest;
            Weight w{std::vector<int>(g.rank, 0)};
            for (size_t i = 0; i < idx.size(); ++i) w.twice[idx[i] - 1] = 2 * coef[i];
            out.push_back(w);
            return;
        }
        for (int c = 0; c <= rest; ++c) {
            coef[k] = c;
            rec(k + 1, rest - c);
        }
    };
    if (!idx.empty()) rec(0, sum);
    return out;
}

namespace {

std::vector<int> graded(int sum, const BranchPair& p) {
    std::vector<int> v{sum};
    v.insert(v.end(), p.lambda.twice.begin(), p.lambda.twice.end());
    v.insert(v.end(), p.mu.twice.begin(), p.mu.twice.end());
    return v;
}

}  // namespace

BranchingMonoid gamma_generators(const EmbeddedSubgroup& e, const std::set<int>& I, int expected_rank, int degree_bound) {
    if (degree_bound < 1) throw std::invalid_argument("degree_bound must be at least 1");
    for (int i : I)
        if (i < 1 || i > e.g.rank()) throw std::invalid_argument("index out of range");
    BranchingMonoid out;
    out.g = e.g_reductive();
    out.h = e.htype;
    std::vector<std::vector<int>> found;
    for (int s = 1; s <= degree_bound; ++s) {
        if (expected_rank >= 0 && static_cast<int>(out.generators.size()) >= expected_rank) break;
        out.max_sum = s;
        for (const auto& lambda : weights_on(e.g.type, I, s)) {
            out.explored.push_back(lambda);
            for (const auto& [mu, m] : restrict_irrep(e, lambda)) {
                if (m > 1) out.multiplicity_free = false;
                BranchPair p{lambda, mu};
                auto v = graded(s, p);
                if (in_nonneg_span(v, found)) continue;
                found.push_back(v);
                out.generators.push_back(p);
            }
        }
    }
    int n = static_cast<int>(out.generators.size());
    out.rank = expected_rank >= 0 ? expected_rank : n;
    out.complete = expected_rank >= 0 && n == expected_rank;
    if (!out.multiplicity_free) out.notes.push_back("a restriction with multiplicity was met");
    return out;
}

BranchingMonoid rbm_via_weight_monoid(const EmbeddedSubgroup& e, int degree_bound) {
    bool symp = e.g.group.kind == Kind::Symplectic;
    int ns = static_cast<int>(e.summands.size());
    if (!symp && ns > 2) throw std::invalid_argument("orthogonal case needs one or two summands");
    int nd = (!symp && ns == 2) ? 2 : 1;
    ReductiveType k = e.htype;
    k.torus_rank += nd;
    if (nd == 1) k.torus_names.push_back("delta");
    else {
        k.torus_names.push_back("delta1");
        k.torus_names.push_back("delta2");
    }
    FormalCharacter v{k, {}};
    for (int s = 0; s < ns; ++s)
        for (const auto& w : e.summand_weights[s]) {
            std::vector<int> x = w;
            for (int j = 0; j < nd; ++j) x.push_back(nd == 1 || j == s ? 2 : 0);
            v.mult[x] += 1;
        }
    WeightMonoid wm = weight_monoid(v, degree_bound);

    BranchingMonoid out;
    out.g = e.g_reductive();
    out.h = e.htype;
    out.max_sum = degree_bound;
    int hc = e.htype.coords();
    std::set<BranchPair> seen;
    for (const auto& gen : wm.generators) {
        int kk = 0;
        for (int j = 0; j < nd; ++j) kk += gen.twice[hc + j];
        if (kk % 2) throw std::logic_error("odd delta degree");
        kk /= 2;
        BranchPair p{Weight{std::vector<int>(e.g.rank(), 0)}, Weight{std::vector<int>(gen.twice.begin(), gen.twice.begin() + hc)}};
        p.lambda.twice[0] = 2 * kk;
        bool mu_zero = std::all_of(p.mu.twice.begin(), p.mu.twice.end(), [](int x) { return x == 0; });
        if (!symp && nd == 1 && mu_zero && kk == 2) {
            out.notes.push_back("dropped 2delta");
            continue;
        }
        if (!seen.insert(p).second) {
            out.notes.push_back("coincident image " + format_pair(out.g, out.h, p));
            continue;
        }
        out.generators.push_back(p);
    }
    out.rank = static_cast<int>(out.generators.size());
    out.complete = true;
    return out;
}

MultiplicityWitness find_multiplicity_witness(const EmbeddedSubgroup& e, const std::set<int>& I, int max_sum) {
    MultiplicityWitness w;
    for (int s = 1; s <= max_sum; ++s)
        for (const auto& lambda : weights_on(e.g.type, I, s)) {
            // only lambdas genuinely supported on all of I
            bool full = true;
            for (int i : I) full = full && lambda.twice[i - 1] != 0;
            if (!full) continue;
            for (const auto& [mu, m] : restrict_irrep(e, lambda))
                if (m > 1) {
                    w.found = true;
                    w.lambda = lambda;
                    w.mu = mu;
                    w.multiplicity = m;
                    return w;
                }
        }
    return w;
}

std::string format_pair(const ReductiveType& g, const ReductiveType& h, const BranchPair& p) {
    return "(" + format_weight(g, p.lambda) + "; " + format_weight(h, p.mu) + ")";
}

BranchPair parse_pair(const ReductiveType& g, const ReductiveType& h, const std::string& lambda, const std::string& mu) {
    return {parse_weight(g, lambda), parse_weight(h, mu)};
}

}  // namespace flagsph
