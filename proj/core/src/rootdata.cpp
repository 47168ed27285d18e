#include "flagsph/rootdata.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace flagsph {

std::string SimpleFactor::name() const {
    const char* s = "ABCDG";
    return std::string(1, s[static_cast<int>(series)]) + std::to_string(rank);
}

int ReductiveType::ss_rank() const {
    int r = 0;
    for (const auto& f : factors) r += f.rank;
    return r;
}

int ReductiveType::offset(int k) const {
    int r = 0;
    for (int i = 0; i < k; ++i) r += factors[i].rank;
    return r;
}

std::string ReductiveType::name() const {
    std::string s;
    for (const auto& f : factors) s += (s.empty() ? "" : "x") + f.name();
    if (torus_rank) s += (s.empty() ? "" : "x") + std::string("T") + std::to_string(torus_rank);
    return s.empty() ? "trivial" : s;
}

std::int64_t FormalCharacter::dim() const {
    std::int64_t d = 0;
    for (const auto& [w, m] : mult) d += m;
    return d;
}

namespace {

std::vector<std::vector<int>> cartan_matrix(const SimpleFactor& f, std::vector<int>& sym) {
    int n = f.rank;
    std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) c[i][i] = 2;
    sym.assign(n, 1);
    auto link = [&](int i, int j) { c[i][j] = c[j][i] = -1; };
    switch (f.series) {
        case Series::A:
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            break;
        case Series::B:
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            if (n >= 2) {
                c[n - 2][n - 1] = -2;
                for (int i = 0; i + 1 < n; ++i) sym[i] = 2;
            }
            break;
        case Series::C:
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            if (n >= 2) {
                c[n - 1][n - 2] = -2;
                sym[n - 1] = 2;
            }
            break;
        case Series::D:
            if (n < 2) throw std::invalid_argument("D series needs rank >= 2");
            for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
            if (n >= 3) link(n - 3, n - 1);
            break;
        case Series::G:
            if (n != 2) throw std::invalid_argument("G2 has rank 2");
            c[0][1] = -1;
            c[1][0] = -3;
            sym = {1, 3};
            break;
    }
    return c;
}

CartanData build(const SimpleFactor& f) {
    CartanData cd;
    cd.factor = f;
    cd.rank = f.rank;
    cd.cartan = cartan_matrix(f, cd.sym);
    int n = f.rank;

    // Inverse Cartan matrix over Q, then a common integer scale.
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = cd.cartan[i][j];
        a[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (sgn(a[p][c]) == 0) ++p;
        std::swap(a[p], a[c]);
        mpq_class piv = a[c][c];
        for (auto& x : a[c]) x /= piv;
        for (int r = 0; r < n; ++r) {
            if (r == c || sgn(a[r][c]) == 0) continue;
            mpq_class g = a[r][c];
            for (int j = 0; j < 2 * n; ++j) a[r][j] -= g * a[c][j];
        }
    }
    mpz_class l = 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            mpz_class d = a[i][n + j].get_den();
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        }
    cd.scale = l.get_si();
    cd.inv_scaled.assign(n, std::vector<std::int64_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            mpq_class v = a[i][n + j] * l;
            cd.inv_scaled[i][j] = v.get_num().get_si();
        }

    // Positive roots by height.
    std::set<std::vector<int>> all;
    std::vector<std::vector<int>> level;
    for (int i = 0; i < n; ++i) {
        std::vector<int> e(n, 0);
        e[i] = 1;
        level.push_back(e);
        all.insert(e);
    }
    std::vector<std::vector<int>> roots = level;
    while (!level.empty()) {
        std::set<std::vector<int>> next;
        for (const auto& b : level)
            for (int i = 0; i < n; ++i) {
                int p = 0;
                std::vector<int> down = b;
                while (true) {
                    down[i] -= 1;
                    if (!all.count(down)) break;
                    ++p;
                }
                int pairing = 0;
                for (int j = 0; j < n; ++j) pairing += b[j] * cd.cartan[j][i];
                int q = p - pairing;
                if (q > 0) {
                    std::vector<int> up = b;
                    up[i] += 1;
                    if (!all.count(up)) next.insert(up);
                }
            }
        level.assign(next.begin(), next.end());
        for (const auto& r : level) {
            all.insert(r);
            roots.push_back(r);
        }
    }
    cd.pos_roots = roots;
    for (const auto& r : roots) {
        std::vector<int> fw(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) fw[j] += r[i] * cd.cartan[i][j];
        cd.pos_roots_fund.push_back(fw);
    }
    return cd;
}

}  // namespace

std::int64_t CartanData::ip(const std::vector<int>& x, const std::vector<int>& y) const {
    // (pi_i, pi_j) = (C^{-1})_{ij} d_j
    std::int64_t s = 0;
    for (int i = 0; i < rank; ++i) {
        if (!x[i]) continue;
        for (int j = 0; j < rank; ++j)
            if (y[j]) s += static_cast<std::int64_t>(x[i]) * y[j] * inv_scaled[i][j] * sym[j];
    }
    return s;
}

std::int64_t CartanData::height(const std::vector<int>& x) const {
    std::int64_t s = 0;
    for (int i = 0; i < rank; ++i)
        for (int k = 0; k < rank; ++k) s += static_cast<std::int64_t>(x[i]) * inv_scaled[i][k];
    return s;
}

std::vector<int> CartanData::reflect(const std::vector<int>& x, int i) const {
    std::vector<int> r = x;
    int c = x[i];
    for (int j = 0; j < rank; ++j) r[j] -= c * cartan[i][j];
    return r;
}

std::vector<int> CartanData::to_dominant(const std::vector<int>& x) const {
    std::vector<int> r = x;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < rank; ++i)
            if (r[i] < 0) {
                r = reflect(r, i);
                changed = true;
            }
    }
    return r;
}

bool CartanData::is_dominant(const std::vector<int>& x) const {
    for (int v : x)
        if (v < 0) return false;
    return true;
}

const CartanData& cartan_data(const SimpleFactor& f) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, CartanData> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(static_cast<int>(f.series), f.rank);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build(f)).first;
    return it->second;
}

std::int64_t weyl_dim(const SimpleFactor& f, const std::vector<int>& lambda) {
    const auto& cd = cartan_data(f);
    for (int v : lambda)
        if (v < 0) throw std::invalid_argument("weyl_dim needs a dominant weight");
    mpq_class prod = 1;
    for (const auto& b : cd.pos_roots) {
        std::int64_t num = 0, den = 0;
        for (int j = 0; j < cd.rank; ++j) {
            num += static_cast<std::int64_t>(b[j]) * (lambda[j] + 1) * cd.sym[j];
            den += static_cast<std::int64_t>(b[j]) * cd.sym[j];
        }
        mpq_class ratio(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
        ratio.canonicalize();
        prod *= ratio;
    }
    if (prod.get_den() != 1) throw std::logic_error("non-integral Weyl dimension");
    return prod.get_num().get_si();
}

static std::vector<int> factor_coords(const ReductiveType& t, const std::vector<int>& twice, int k) {
    int off = t.offset(k);
    std::vector<int> r(t.factors[k].rank);
    for (int i = 0; i < t.factors[k].rank; ++i) {
        if (twice[off + i] % 2) throw std::invalid_argument("non-integral semisimple weight");
        r[i] = twice[off + i] / 2;
    }
    return r;
}

std::int64_t weyl_dim(const ReductiveType& t, const Weight& lambda) {
    std::int64_t d = 1;
    for (size_t k = 0; k < t.factors.size(); ++k)
        d *= weyl_dim(t.factors[k], factor_coords(t, lambda.twice, static_cast<int>(k)));
    return d;
}

std::map<std::vector<int>, std::int64_t> dominant_character(const SimpleFactor& f,
                                                            const std::vector<int>& lambda) {
    const auto& cd = cartan_data(f);
    int n = cd.rank;
    std::set<std::vector<int>> seen{lambda};
    std::vector<std::vector<int>> queue{lambda};
    for (size_t q = 0; q < queue.size(); ++q)
        for (const auto& a : cd.pos_roots_fund) {
            std::vector<int> v = queue[q];
            for (int j = 0; j < n; ++j) v[j] -= a[j];
            if (cd.is_dominant(v) && !seen.count(v)) {
                seen.insert(v);
                queue.push_back(v);
            }
        }
    std::sort(queue.begin(), queue.end(), [&](const auto& x, const auto& y) {
        auto hx = cd.height(x), hy = cd.height(y);
        if (hx != hy) return hx > hy;
        return x > y;
    });
    std::vector<int> rho(n, 1);
    auto plus = [](std::vector<int> x, const std::vector<int>& y) {
        for (size_t i = 0; i < x.size(); ++i) x[i] += y[i];
        return x;
    };
    std::vector<int> lr = plus(lambda, rho);
    std::int64_t top = cd.ip(lr, lr);
    std::map<std::vector<int>, std::int64_t> m;
    m[lambda] = 1;
    for (size_t idx = 1; idx < queue.size(); ++idx) {
        const auto& mu = queue[idx];
        __int128 s = 0;
        for (const auto& a : cd.pos_roots_fund) {
            std::vector<int> v = mu;
            while (true) {
                for (int j = 0; j < n; ++j) v[j] += a[j];
                auto dom = cd.to_dominant(v);
                auto it = m.find(dom);
                if (it == m.end()) break;
                s += static_cast<__int128>(it->second) * cd.ip(v, a);
            }
        }
        std::vector<int> mr = plus(mu, rho);
        std::int64_t den = top - cd.ip(mr, mr);
        __int128 num = 2 * s;
        if (den <= 0 || num % den != 0) throw std::logic_error("Freudenthal recursion failed");
        std::int64_t val = static_cast<std::int64_t>(num / den);
        if (val > 0) m[mu] = val;
    }
    return m;
}

std::vector<std::vector<int>> weyl_orbit(const SimpleFactor& f, const std::vector<int>& dominant) {
    const auto& cd = cartan_data(f);
    std::set<std::vector<int>> seen{dominant};
    std::vector<std::vector<int>> out{dominant};
    for (size_t q = 0; q < out.size(); ++q)
        for (int i = 0; i < cd.rank; ++i)
            if (out[q][i] > 0) {
                auto r = cd.reflect(out[q], i);
                if (seen.insert(r).second) out.push_back(r);
            }
    return out;
}

bool is_dominant(const ReductiveType& t, const std::vector<int>& twice) {
    for (int i = 0; i < t.ss_rank(); ++i)
        if (twice[i] < 0) return false;
    return true;
}

namespace {

// Product of per-factor maps into a doubled-coordinate character.
Character assemble(const ReductiveType& t, const std::vector<std::map<std::vector<int>, std::int64_t>>& parts,
                   const std::vector<int>& torus_twice) {
    Character acc;
    std::vector<int> base(t.coords(), 0);
    for (int i = 0; i < t.torus_rank; ++i) base[t.ss_rank() + i] = torus_twice[i];
    acc[base] = 1;
    for (size_t k = 0; k < parts.size(); ++k) {
        Character next;
        int off = t.offset(static_cast<int>(k));
        for (const auto& [w, m] : acc)
            for (const auto& [v, c] : parts[k]) {
                auto x = w;
                for (size_t i = 0; i < v.size(); ++i) x[off + i] = 2 * v[i];
                next[x] += m * c;
            }
        acc.swap(next);
    }
    return acc;
}

std::vector<int> torus_part(const ReductiveType& t, const Weight& w) {
    return std::vector<int>(w.twice.begin() + t.ss_rank(), w.twice.end());
}

}  // namespace

FormalCharacter formal_character(const ReductiveType& t, const Weight& lambda, const RootDataConfig& cfg) {
    if (!is_dominant(t, lambda.twice)) throw std::invalid_argument("highest weight is not dominant");
    if (weyl_dim(t, lambda) > cfg.dim_bound) throw std::runtime_error("dimension bound exceeded");
    std::vector<std::map<std::vector<int>, std::int64_t>> parts;
    for (size_t k = 0; k < t.factors.size(); ++k) {
        auto dom = dominant_character(t.factors[k], factor_coords(t, lambda.twice, static_cast<int>(k)));
        std::map<std::vector<int>, std::int64_t> full;
        for (const auto& [w, m] : dom)
            for (const auto& o : weyl_orbit(t.factors[k], w)) full[o] += m;
        parts.push_back(std::move(full));
    }
    return FormalCharacter{t, assemble(t, parts, torus_part(t, lambda))};
}

Character dominant_part(const ReductiveType& t, const Weight& lambda, const RootDataConfig& cfg) {
    if (!is_dominant(t, lambda.twice)) throw std::invalid_argument("highest weight is not dominant");
    if (weyl_dim(t, lambda) > cfg.dim_bound) throw std::runtime_error("dimension bound exceeded");
    std::vector<std::map<std::vector<int>, std::int64_t>> parts;
    for (size_t k = 0; k < t.factors.size(); ++k)
        parts.push_back(dominant_character(t.factors[k], factor_coords(t, lambda.twice, static_cast<int>(k))));
    return assemble(t, parts, torus_part(t, lambda));
}

std::vector<std::pair<Weight, std::int64_t>> decompose(const FormalCharacter& ch, const RootDataConfig& cfg) {
    const auto& t = ch.type;
    Character rest;
    for (const auto& [w, m] : ch.mult)
        if (m != 0 && is_dominant(t, w)) rest[w] = m;
    std::int64_t lcm = 1;
    for (const auto& f : t.factors) lcm = std::lcm(lcm, cartan_data(f).scale);
    auto height = [&](const std::vector<int>& w) {
        std::int64_t h = 0;
        for (size_t k = 0; k < t.factors.size(); ++k) {
            const auto& cd = cartan_data(t.factors[k]);
            h += cd.height(factor_coords(t, w, static_cast<int>(k))) * (lcm / cd.scale);
        }
        return h;
    };
    std::vector<std::pair<Weight, std::int64_t>> out;
    while (!rest.empty()) {
        auto best = rest.begin();
        std::int64_t bh = height(best->first);
        for (auto it = std::next(rest.begin()); it != rest.end(); ++it) {
            std::int64_t h = height(it->first);
            if (h > bh || (h == bh && it->first > best->first)) {
                best = it;
                bh = h;
            }
        }
        std::int64_t m = best->second;
        if (m < 0) throw std::runtime_error("not a representation character");
        Weight top{best->first};
        out.emplace_back(top, m);
        for (const auto& [w, c] : dominant_part(t, top, cfg)) {
            auto it = rest.find(w);
            if (it == rest.end()) throw std::runtime_error("not a representation character");
            it->second -= m * c;
            if (it->second < 0) throw std::runtime_error("not a representation character");
            if (it->second == 0) rest.erase(it);
        }
    }
    return out;
}

FormalCharacter multiply(const FormalCharacter& x, const FormalCharacter& y) {
    FormalCharacter r{x.type, {}};
    for (const auto& [a, m] : x.mult)
        for (const auto& [b, n] : y.mult) {
            auto c = a;
            for (size_t i = 0; i < c.size(); ++i) c[i] += b[i];
            r.mult[c] += m * n;
        }
    return r;
}

FormalCharacter symmetric_power_character(const FormalCharacter& ch, int k, const RootDataConfig& cfg) {
    if (k < 0) throw std::invalid_argument("negative symmetric power");
    std::vector<FormalCharacter> s;
    FormalCharacter one{ch.type, {}};
    one.mult[std::vector<int>(ch.type.coords(), 0)] = 1;
    s.push_back(one);
    for (int j = 1; j <= k; ++j) {
        Character acc;
        for (int i = 1; i <= j; ++i) {
            FormalCharacter psi{ch.type, {}};
            for (const auto& [w, m] : ch.mult) {
                auto v = w;
                for (auto& c : v) c *= i;
                psi.mult[v] += m;
            }
            auto prod = multiply(psi, s[j - i]);
            for (const auto& [w, m] : prod.mult) acc[w] += m;
        }
        FormalCharacter next{ch.type, {}};
        std::int64_t total = 0;
        for (const auto& [w, m] : acc) {
            if (m % j) throw std::logic_error("Newton recursion not integral");
            if (m) next.mult[w] = m / j;
            total += m / j;
        }
        if (total > cfg.dim_bound) throw std::runtime_error("dimension bound exceeded");
        s.push_back(std::move(next));
    }
    return s[k];
}

std::vector<int> CartanMap::apply(const std::vector<int>& twice) const {
    std::vector<int> out(matrix.size());
    for (size_t r = 0; r < matrix.size(); ++r) {
        std::int64_t s = 0;
        for (size_t c = 0; c < twice.size(); ++c) s += matrix[r][c] * twice[c];
        if (s % 2) throw std::logic_error("cartan map produced a non-integral doubled weight");
        out[r] = static_cast<int>(s / 2);
    }
    return out;
}

CartanMap CartanMap::identity(const ReductiveType& t) {
    CartanMap m{t, t, {}};
    int n = t.coords();
    m.matrix.assign(n, std::vector<std::int64_t>(n, 0));
    for (int i = 0; i < n; ++i) m.matrix[i][i] = 2;
    return m;
}

FormalCharacter restrict_character(const FormalCharacter& ch, const CartanMap& m) {
    FormalCharacter r{m.target, {}};
    for (const auto& [w, c] : ch.mult) r.mult[m.apply(w)] += c;
    return r;
}

// ---------------------------------------------------------------------------
// Weight notation

static std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

Weight parse_weight(const ReductiveType& t, const std::string& text) {
    Weight w{std::vector<int>(t.coords(), 0)};
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty weight");
    size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("bad weight '" + text + "': " + why);
    };
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            fail("expected + or -");
        }
        long coef = 1;
        size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i && j < s.size() && s[j] == '*') {
            coef = std::stol(s.substr(i, j - i));
            i = j + 1;
        } else if (j > i && (j == s.size() || s[j] == '+' || s[j] == '-')) {
            // bare integer: only zero is meaningful
            if (std::stol(s.substr(i, j - i)) != 0) fail("bare nonzero integer");
            i = j;
            continue;
        } else if (j > i && std::isalpha(static_cast<unsigned char>(s[j]))) {
            coef = std::stol(s.substr(i, j - i));
            i = j;
        }
        // symbol
        size_t k = i;
        while (k < s.size() && (std::isalnum(static_cast<unsigned char>(s[k])) || s[k] == '\'' || s[k] == '@'))
            ++k;
        std::string sym = s.substr(i, k - i);
        i = k;
        int den = 1;
        if (i < s.size() && s[i] == '/') {
            size_t e = i + 1;
            while (e < s.size() && std::isdigit(static_cast<unsigned char>(s[e]))) ++e;
            den = std::stoi(s.substr(i + 1, e - i - 1));
            i = e;
        }
        if (den != 1 && den != 2) fail("only halves are supported");
        long twice_val = sign * coef * (den == 1 ? 2 : 1);
        if (sym.rfind("pi", 0) == 0) {
            size_t at = sym.find('@');
            int idx = std::stoi(sym.substr(2, at == std::string::npos ? std::string::npos : at - 2));
            int factor = at == std::string::npos ? 1 : std::stoi(sym.substr(at + 1));
            if (factor < 1 || factor > static_cast<int>(t.factors.size())) fail("factor index out of range");
            if (at == std::string::npos && t.factors.size() > 1) fail("factor index required");
            if (idx == 0) continue;
            if (idx < 1 || idx > t.factors[factor - 1].rank) fail("fundamental weight index out of range");
            w.twice[t.offset(factor - 1) + idx - 1] += static_cast<int>(twice_val);
        } else {
            auto it = std::find(t.torus_names.begin(), t.torus_names.end(), sym);
            if (it == t.torus_names.end()) fail("unknown symbol " + sym);
            w.twice[t.ss_rank() + (it - t.torus_names.begin())] += static_cast<int>(twice_val);
        }
    }
    return w;
}

std::string format_weight(const ReductiveType& t, const Weight& w) {
    std::ostringstream os;
    bool first = true;
    auto term = [&](int twice, const std::string& sym) {
        if (!twice) return;
        bool neg = twice < 0;
        int a = neg ? -twice : twice;
        if (!first || neg) os << (neg ? "-" : "+");
        first = false;
        if (a % 2 == 0) {
            if (a / 2 != 1) os << a / 2 << "*";
            os << sym;
        } else {
            if (a != 1) os << a << "*";
            os << sym << "/2";
        }
    };
    for (size_t k = 0; k < t.factors.size(); ++k)
        for (int i = 0; i < t.factors[k].rank; ++i) {
            std::string sym = "pi" + std::to_string(i + 1);
            if (t.factors.size() > 1) sym += "@" + std::to_string(k + 1);
            term(w.twice[t.offset(static_cast<int>(k)) + i], sym);
        }
    for (int i = 0; i < t.torus_rank; ++i) term(w.twice[t.ss_rank() + i], t.torus_names[i]);
    if (first) return "0";
    return trim(os.str());
}

}  // namespace flagsph
