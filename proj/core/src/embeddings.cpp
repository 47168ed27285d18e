#include "flagsph/embeddings.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace flagsph {

namespace {

QMat unit(int d, int i, int j) {
    QMat m(d, d);
    m(i, j) = 1;
    return m;
}

QMat zero(int d) { return QMat(d, d); }

std::pair<int, int> first_nonzero(const QMat& m) {
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (m(i, j) != 0) return {i, j};
    return {-1, -1};
}

bool is_antidiagonal(const QMat& j) {
    int d = j.rows;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            bool anti = a + b == d - 1;
            if (anti && j(a, b) == 0) return false;
            if (!anti && j(a, b) != 0) return false;
        }
    return true;
}

BasisKind kind_of(const QMat& x) {
    if (x.is_diagonal()) return BasisKind::Cartan;
    if (x.is_strictly_upper()) return BasisKind::Positive;
    if (x.is_strictly_lower()) return BasisKind::Negative;
    throw std::logic_error("basis element is not a root vector for the diagonal torus");
}

// Epsilon coordinates of the simple roots of the classical type.
QMat simple_roots_eps(const SimpleFactor& t) {
    int n = t.rank;
    QMat s(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        s(i, i) = 1;
        s(i, i + 1) = -1;
    }
    switch (t.series) {
        case Series::B: s(n - 1, n - 1) = 1; break;
        case Series::C: s(n - 1, n - 1) = 2; break;
        case Series::D:
            s(n - 1, n - 2) = 1;
            s(n - 1, n - 1) = 1;
            break;
        default: throw std::logic_error("not a classical orthogonal or symplectic type");
    }
    return s;
}

std::vector<std::vector<int>> fundamental_eps2(const SimpleFactor& t) {
    int n = t.rank;
    std::vector<std::vector<int>> out(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) out[i][j] = 2;
    if (t.series == Series::B) {
        for (int j = 0; j < n; ++j) out[n - 1][j] = 1;
    } else if (t.series == Series::D) {
        for (int j = 0; j < n; ++j) {
            out[n - 1][j] = 1;
            out[n - 2][j] = j == n - 1 ? -1 : 1;
        }
    }
    return out;
}

SimpleFactor classical_type(const GroupKind& g) {
    int n = g.dim / 2;
    if (g.kind == Kind::Symplectic) return {Series::C, n};
    if (g.dim % 2) return {Series::B, n};
    if (n < 2) throw std::invalid_argument("so(2) is not semisimple");
    return {Series::D, n};
}

}  // namespace

// ---------------------------------------------------------------------------
// Classical algebras

QMat standard_form(const GroupKind& g) {
    int d = g.dim;
    QMat j(d, d);
    for (int i = 0; i < d; ++i) j(i, d - 1 - i) = (g.kind == Kind::Symplectic && i >= d / 2) ? -1 : 1;
    return j;
}

QVec ClassicalAlgebra::coords(const QMat& x) const {
    QVec c(basis.size());
    for (size_t k = 0; k < basis.size(); ++k) {
        auto [a, b] = entry[k];
        c[k] = x(a, b) / basis[k](a, b);
    }
    return c;
}

ClassicalAlgebra classical_algebra(const GroupKind& g, const QMat& form) {
    int d = g.dim;
    if (form.rows != d || form.cols != d || !is_antidiagonal(form))
        throw std::invalid_argument("ambient form must be antidiagonal of size d");
    bool symp = g.kind == Kind::Symplectic;
    if (!(form.transpose() == (symp ? Q(-1) * form : form)))
        throw std::invalid_argument("ambient form has the wrong symmetry");
    ClassicalAlgebra A;
    A.group = g;
    A.type = classical_type(g);
    A.form = form;
    int n = A.type.rank;
    QMat jinv = inverse(form);

    struct Item {
        QMat x;
        BasisKind kind;
        std::vector<int> root;
        std::pair<int, int> pos;
    };
    std::vector<Item> items;
    auto eps_weight = [&](int a) {
        std::vector<int> w(n, 0);
        if (a < n) w[a] = 1;
        else if (a >= d - n) w[d - 1 - a] = -1;
        return w;
    };
    QMat sinv = inverse(simple_roots_eps(A.type));
    for (int i = 0; i < d; ++i)
        for (int j = symp ? i : i + 1; j < d; ++j) {
            QMat s(d, d);
            if (symp) {
                s(i, j) = 1;
                s(j, i) = 1;
            } else {
                s(i, j) = 1;
                s(j, i) = -1;
            }
            Item it;
            it.x = jinv * s;
            it.kind = kind_of(it.x);
            it.root.assign(n, 0);
            if (it.kind == BasisKind::Cartan) {
                int k = std::min(i, j);
                if (symp) k = std::min(i, d - 1 - i);
                it.pos = {k, k};
            } else {
                it.pos = first_nonzero(it.x);
                auto wa = eps_weight(it.pos.first), wb = eps_weight(it.pos.second);
                for (int c = 0; c < n; ++c) {
                    Q v = 0;
                    for (int e = 0; e < n; ++e) v += Q(wa[e] - wb[e]) * sinv(e, c);
                    if (v.get_den() != 1) throw std::logic_error("non-integral root coordinates");
                    it.root[c] = static_cast<int>(v.get_num().get_si());
                }
            }
            items.push_back(std::move(it));
        }
    auto height = [](const std::vector<int>& r) { return std::accumulate(r.begin(), r.end(), 0); };
    std::stable_sort(items.begin(), items.end(), [&](const Item& x, const Item& y) {
        if (x.kind != y.kind) return static_cast<int>(x.kind) < static_cast<int>(y.kind);
        if (x.kind == BasisKind::Cartan) return x.pos < y.pos;
        int hx = std::abs(height(x.root)), hy = std::abs(height(y.root));
        if (hx != hy) return hx < hy;
        return x.kind == BasisKind::Positive ? x.root > y.root : x.root < y.root;
    });
    for (auto& it : items) {
        A.basis.push_back(std::move(it.x));
        A.kinds.push_back(it.kind);
        A.roots.push_back(std::move(it.root));
        A.entry.push_back(it.pos);
    }
    A.fundamental_eps2 = fundamental_eps2(A.type);
    return A;
}

ClassicalAlgebra ambient(const GroupKind& g) { return classical_algebra(g, standard_form(g)); }

// ---------------------------------------------------------------------------
// Factor algebras

namespace {

struct RootVector {
    QMat x;
    std::vector<int> root;  // simple-root coordinates, negative for lowering operators
};

// Coroots from the simple root vectors, checked against the Bourbaki Cartan matrix.
FactorAlgebra finish_factor(std::string label, SimpleFactor type, int def_dim, std::vector<RootVector> roots) {
    FactorAlgebra f;
    f.label = std::move(label);
    f.type = type;
    f.def_dim = def_dim;
    int r = type.rank;
    auto find = [&](int i, int sign) -> const QMat& {
        for (const auto& rv : roots) {
            bool ok = true;
            for (int c = 0; c < r; ++c) ok = ok && rv.root[c] == (c == i ? sign : 0);
            if (ok) return rv.x;
        }
        throw std::logic_error("missing simple root vector in " + f.label);
    };
    std::vector<QMat> coroots;
    std::vector<QMat> es;
    for (int i = 0; i < r; ++i) {
        const QMat& e = find(i, 1);
        const QMat& fm = find(i, -1);
        QMat h = bracket(e, fm);
        auto [a, b] = first_nonzero(e);
        Q alpha = h(a, a) - h(b, b);
        if (alpha == 0) throw std::logic_error("degenerate sl2 triple in " + f.label);
        coroots.push_back(Q(2) / alpha * h);
        es.push_back(e);
    }
    const auto& cd = cartan_data(type);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            auto [a, b] = first_nonzero(es[i]);
            Q v = coroots[j](a, a) - coroots[j](b, b);
            if (v != cd.cartan[i][j]) throw std::logic_error("Cartan matrix mismatch in " + f.label);
        }
    for (auto& h : coroots) {
        f.basis.push_back(h);
        f.kinds.push_back(BasisKind::Cartan);
    }
    auto positive = [](const RootVector& v) {
        for (int c : v.root)
            if (c) return c > 0;
        return false;
    };
    std::stable_partition(roots.begin(), roots.end(), positive);
    for (auto& rv : roots) {
        f.kinds.push_back(kind_of(rv.x));
        f.basis.push_back(std::move(rv.x));
    }
    return f;
}

// Matrices given as a table of symbolic entries. Terms look like "x10", "-y21",
// "r2*x11" or "t1+t2"; r2 stands for sqrt 2 and is removed by the rescaling
// v_mid -> v_mid / sqrt 2 of the middle basis vector.
std::map<std::string, QMat> parse_table(const std::vector<std::vector<std::string>>& rows, int mid) {
    int d = static_cast<int>(rows.size());
    std::map<std::string, QMat> out;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            std::string s = rows[i][j];
            if (s == "0") continue;
            size_t p = 0;
            while (p < s.size()) {
                int sign = 1;
                if (s[p] == '+' || s[p] == '-') {
                    sign = s[p] == '-' ? -1 : 1;
                    ++p;
                }
                bool r2 = s.compare(p, 3, "r2*") == 0;
                if (r2) p += 3;
                size_t q = p;
                while (q < s.size() && std::isalnum(static_cast<unsigned char>(s[q]))) ++q;
                std::string var = s.substr(p, q - p);
                p = q;
                Q v = sign;
                if (r2) {
                    if (i == mid) v *= 2;
                    else if (j != mid) throw std::logic_error("sqrt 2 outside the middle row and column");
                }
                auto& m = out.try_emplace(var, d, d).first->second;
                m(i, j) += v;
            }
        }
    return out;
}

std::vector<std::vector<std::string>> split_rows(const std::vector<std::string>& lines) {
    std::vector<std::vector<std::string>> out;
    for (const auto& l : lines) {
        std::vector<std::string> row;
        std::stringstream ss(l);
        std::string cell;
        while (std::getline(ss, cell, '|')) {
            cell.erase(std::remove(cell.begin(), cell.end(), ' '), cell.end());
            row.push_back(cell);
        }
        out.push_back(row);
    }
    return out;
}

FactorAlgebra from_table(const std::string& label, SimpleFactor type, const std::vector<std::string>& lines, int mid) {
    auto table = parse_table(split_rows(lines), mid);
    int d = static_cast<int>(lines.size());
    std::vector<RootVector> roots;
    for (auto& [name, m] : table) {
        if (name[0] == 't') continue;
        std::vector<int> r;
        for (size_t k = 1; k < name.size(); ++k) r.push_back((name[0] == 'x' ? 1 : -1) * (name[k] - '0'));
        roots.push_back({m, r});
    }
    std::stable_sort(roots.begin(), roots.end(), [](const RootVector& x, const RootVector& y) {
        int hx = std::abs(std::accumulate(x.root.begin(), x.root.end(), 0));
        int hy = std::abs(std::accumulate(y.root.begin(), y.root.end(), 0));
        if (hx != hy) return hx < hy;
        return x.root > y.root;
    });
    return finish_factor(label, type, d, std::move(roots));
}

// G2 in its 7-dimensional representation, middle vector rescaled by 1/sqrt 2.
const std::vector<std::string> kG2 = {
    "t1+t2 | x10    | x11   | r2*x21  | x31     | x32    | 0",
    "y10   | t1     | x01   | -r2*x11 | x21     | 0      | -x32",
    "y11   | y01    | t2    | r2*x10  | 0       | -x21   | -x31",
    "r2*y21| -r2*y11| r2*y10| 0       | -r2*x10 | r2*x11 | -r2*x21",
    "y31   | y21    | 0     | -r2*y10 | -t2     | -x01   | -x11",
    "y32   | 0      | -y21  | r2*y11  | -y01    | -t1    | -x10",
    "0     | -y32   | -y31  | -r2*y21 | -y11    | -y10   | -t1-t2",
};

// Spin(7) in its 8-dimensional spin representation.
const std::vector<std::string> kSpin7 = {
    "t1+t2+t3 | x001  | x011  | x111  | x012  | x112  | x122  | 0",
    "y001     | t1    | x010  | x110  | -x011 | x111  | 0     | -x122",
    "y011     | y010  | t2    | x100  | x001  | 0     | -x111 | -x112",
    "y111     | y110  | y100  | t3    | 0     | -x001 | x011  | -x012",
    "y012     | -y011 | y001  | 0     | -t3   | -x100 | -x110 | -x111",
    "y112     | y111  | 0     | -y001 | -y100 | -t2   | -x010 | -x011",
    "y122     | 0     | -y111 | y011  | -y110 | -y010 | -t1   | -x001",
    "0        | -y122 | -y112 | -y012 | -y111 | -y011 | -y001 | -t1-t2-t3",
};

int parse_paren_int(const std::string& s, size_t open) {
    if (open >= s.size() || s[open] != '(' || s.back() != ')') throw std::invalid_argument("bad factor '" + s + "'");
    return std::stoi(s.substr(open + 1, s.size() - open - 2));
}

}  // namespace

FactorAlgebra make_factor(const std::string& label) {
    if (label == "g2") {
        FactorAlgebra f = from_table(label, {Series::G, 2}, kG2, 3);
        f.form = QMat(7, 7);
        for (int i = 0; i < 7; ++i) f.form(i, 6 - i) = i == 3 ? Q(1, 2) : Q(1);
        f.has_form = true;
        f.symmetric = true;
        return f;
    }
    if (label.rfind("spin(7)", 0) == 0) {
        std::string tail = label.substr(7);
        if (tail != "" && tail != "+" && tail != "-") throw std::invalid_argument("bad factor '" + label + "'");
        FactorAlgebra f = from_table(label, {Series::B, 3}, kSpin7, -1);
        if (tail == "-") {
            // conjugate by the transposition of the two middle basis vectors
            QMat p = QMat::identity(8);
            p(3, 3) = 0;
            p(4, 4) = 0;
            p(3, 4) = 1;
            p(4, 3) = 1;
            for (auto& x : f.basis) x = p * x * p;
        }
        f.form = standard_form(GroupKind(Kind::Orthogonal, 8));
        f.has_form = true;
        f.symmetric = true;
        return f;
    }
    if (label.rfind("sl", 0) == 0) {
        int n = parse_paren_int(label, 2);
        if (n < 2) throw std::invalid_argument("sl(n) needs n >= 2");
        std::vector<RootVector> roots;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                std::vector<int> r(n - 1, 0);
                for (int k = std::min(i, j); k < std::max(i, j); ++k) r[k] = i < j ? 1 : -1;
                roots.push_back({unit(n, i, j), r});
            }
        FactorAlgebra f = finish_factor(label, {Series::A, n - 1}, n, std::move(roots));
        if (n == 2) {
            f.form = QMat(2, 2);
            f.form(0, 1) = 1;
            f.form(1, 0) = -1;
            f.has_form = true;
            f.symmetric = false;
        }
        return f;
    }
    if (label.rfind("sp", 0) == 0 || label.rfind("so", 0) == 0) {
        int d = parse_paren_int(label, 2);
        GroupKind g(label[1] == 'p' ? Kind::Symplectic : Kind::Orthogonal, d);
        if (g.kind == Kind::Orthogonal && d < 3) throw std::invalid_argument("so(m) needs m >= 3");
        ClassicalAlgebra a = ambient(g);
        std::vector<RootVector> roots;
        for (int k = 0; k < a.dim(); ++k)
            if (a.kinds[k] != BasisKind::Cartan) {
                std::vector<int> r = a.roots[k];
                roots.push_back({a.basis[k], r});
            }
        FactorAlgebra f = finish_factor(label, a.type, d, std::move(roots));
        f.form = a.form;
        f.has_form = true;
        f.symmetric = g.kind == Kind::Orthogonal;
        return f;
    }
    throw std::invalid_argument("unknown factor '" + label + "'");
}

// ---------------------------------------------------------------------------
// Spec parsing

namespace {

std::string strip_spaces(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

// Split on `sep` at bracket depth zero.
std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') --depth;
        if (depth < 0) throw std::invalid_argument("unbalanced brackets in '" + s + "'");
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (depth != 0) throw std::invalid_argument("unbalanced brackets in '" + s + "'");
    out.push_back(cur);
    return out;
}

int factor_def_dim(const std::string& label) {
    if (label == "g2") return 7;
    if (label == "spin(7)" || label == "spin(7)+" || label == "spin(7)-") return 8;
    if (label.rfind("sl(", 0) == 0 || label.rfind("sp(", 0) == 0 || label.rfind("so(", 0) == 0)
        return parse_paren_int(label, 2);
    throw std::invalid_argument("unknown factor '" + label + "'");
}

// Terms "chi", "2chi1", "-chi2", "3*chi" joined by + and -.
std::map<std::string, int> parse_torus_expr(const std::string& expr) {
    std::map<std::string, int> out;
    size_t i = 0;
    if (expr.empty()) throw std::invalid_argument("empty torus character");
    while (i < expr.size()) {
        int sign = 1;
        if (expr[i] == '+' || expr[i] == '-') {
            sign = expr[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            throw std::invalid_argument("bad torus character '" + expr + "'");
        }
        size_t j = i;
        while (j < expr.size() && std::isdigit(static_cast<unsigned char>(expr[j]))) ++j;
        int coef = j > i ? std::stoi(expr.substr(i, j - i)) : 1;
        i = j;
        if (i < expr.size() && expr[i] == '*') ++i;
        if (i >= expr.size() || !std::isalpha(static_cast<unsigned char>(expr[i])))
            throw std::invalid_argument("bad torus character '" + expr + "'");
        j = i;
        while (j < expr.size() && std::isalnum(static_cast<unsigned char>(expr[j]))) ++j;
        out[expr.substr(i, j - i)] += sign * coef;
        i = j;
    }
    return out;
}

struct RawIrrep {
    std::vector<Atom> atoms;
    std::map<std::string, int> torus;
};

Atom parse_atom(const std::string& s, const std::vector<int>& dims) {
    Atom a;
    std::string body = s;
    if (s.rfind("S2(", 0) == 0 || s.rfind("L2(", 0) == 0) {
        if (s.back() != ')') throw std::invalid_argument("bad atom '" + s + "'");
        a.kind = s[0] == 'S' ? Atom::Kind::Sym2 : Atom::Kind::Wedge2;
        body = s.substr(3, s.size() - 4);
    } else {
        a.kind = Atom::Kind::Defining;
    }
    if (body.empty() || body[0] != 'F') throw std::invalid_argument("bad atom '" + s + "'");
    size_t at = body.find('@');
    int dim = std::stoi(body.substr(1, at == std::string::npos ? std::string::npos : at - 1));
    if (dim == 1 && a.kind == Atom::Kind::Defining) {
        a.kind = Atom::Kind::Trivial;
        return a;
    }
    if (at != std::string::npos) {
        int k = std::stoi(body.substr(at + 1)) - 1;
        if (k < 0 || k >= static_cast<int>(dims.size())) throw std::invalid_argument("factor index out of range in '" + s + "'");
        if (dims[k] != dim) throw std::invalid_argument("dimension mismatch in '" + s + "'");
        a.factor = k;
    } else {
        for (size_t k = 0; k < dims.size(); ++k)
            if (dims[k] == dim) {
                if (a.factor >= 0) throw std::invalid_argument("ambiguous atom '" + s + "'; add @k");
                a.factor = static_cast<int>(k);
            }
        if (a.factor < 0) throw std::invalid_argument("no factor with defining dimension " + std::to_string(dim));
    }
    return a;
}

RawIrrep parse_irrep(const std::string& s, const std::vector<int>& dims) {
    RawIrrep r;
    std::string body = s, torus;
    // the torus suffix follows the last top-level underscore
    int depth = 0;
    size_t us = std::string::npos;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') --depth;
        if (c == '_' && depth == 0) us = i;
    }
    if (us != std::string::npos) {
        body = s.substr(0, us);
        torus = s.substr(us + 1);
        if (!torus.empty() && torus.front() == '{') {
            if (torus.back() != '}') throw std::invalid_argument("bad torus character '" + torus + "'");
            torus = torus.substr(1, torus.size() - 2);
        }
        r.torus = parse_torus_expr(torus);
    }
    if (!body.empty() && body.front() == '[') {
        if (body.back() != ']') throw std::invalid_argument("bad irreducible '" + s + "'");
        body = body.substr(1, body.size() - 2);
    }
    for (const auto& tok : split_top(body, 'x')) r.atoms.push_back(parse_atom(tok, dims));
    if (r.atoms.empty()) throw std::invalid_argument("empty irreducible");
    return r;
}

PairSpec parse_parts(const std::string& text, bool want_group) {
    PairSpec spec;
    spec.text = text;
    auto parts = split_top(strip_spaces(text), ':');
    if (parts.size() != (want_group ? 3u : 2u))
        throw std::invalid_argument(want_group ? "expected 'group : factors : summands'" : "expected 'factors : summands'");
    size_t p = 0;
    if (want_group) {
        const std::string& g = parts[p++];
        if (g.size() < 5 || (g.rfind("sp(", 0) != 0 && g.rfind("so(", 0) != 0))
            throw std::invalid_argument("bad ambient group '" + g + "'");
        spec.group = GroupKind(g[1] == 'p' ? Kind::Symplectic : Kind::Orthogonal, parse_paren_int(g, 2));
        spec.has_group = true;
    }
    std::vector<int> dims;
    const std::string& fs = parts[p++];
    if (fs != "1" && !fs.empty()) {
        auto toks = split_top(fs, '*');
        for (size_t k = 0; k < toks.size(); ++k) {
            std::string t = toks[k];
            size_t hash = t.find('#');
            if (hash != std::string::npos) {
                if (std::stoi(t.substr(hash + 1)) != static_cast<int>(k) + 1)
                    throw std::invalid_argument("factor numbering out of order at '" + t + "'");
                t = t.substr(0, hash);
            }
            dims.push_back(factor_def_dim(t));
            spec.factors.push_back(t);
        }
    }
    std::vector<std::pair<bool, RawIrrep>> raw;
    std::set<std::string> names;
    for (const auto& tok : split_top(parts[p], '+')) {
        if (tok.empty()) throw std::invalid_argument("empty summand");
        bool omega = tok.rfind("omega(", 0) == 0;
        std::string body = tok;
        if (omega) {
            if (tok.back() != ')') throw std::invalid_argument("bad summand '" + tok + "'");
            body = tok.substr(6, tok.size() - 7);
        }
        raw.emplace_back(omega, parse_irrep(body, dims));
        for (auto& [n, c] : raw.back().second.torus) names.insert(n);
    }
    spec.torus_names.assign(names.begin(), names.end());
    for (auto& [omega, r] : raw) {
        Summand s;
        s.omega = omega;
        s.rep.tensor = r.atoms;
        s.rep.torus.assign(spec.torus_names.size(), 0);
        for (auto& [n, c] : r.torus)
            s.rep.torus[std::find(spec.torus_names.begin(), spec.torus_names.end(), n) - spec.torus_names.begin()] = c;
        spec.summands.push_back(s);
    }
    return spec;
}

}  // namespace

PairSpec parse_pair_spec(const std::string& text) { return parse_parts(text, true); }
PairSpec parse_module_spec(const std::string& text) { return parse_parts(text, false); }

// ---------------------------------------------------------------------------
// Representations

namespace {

struct AtomRep {
    int dim = 1;
    int factor = -1;
    std::vector<QMat> images;
    QMat form;
    bool has_form = false;
    bool symmetric = true;
};

// Second symmetric or exterior power, basis ordered by (j, i) with i <= j (i < j).
QMat power2(const QMat& x, bool sym) {
    int n = x.rows;
    std::map<std::pair<int, int>, int> index;
    std::vector<std::pair<int, int>> basis;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < (sym ? j + 1 : j); ++i) {
            index[{i, j}] = static_cast<int>(basis.size());
            basis.emplace_back(i, j);
        }
    int m = static_cast<int>(basis.size());
    QMat out(m, m);
    auto put = [&](int a, int b, const Q& c, int col) {
        if (c == 0 || (a == b && !sym)) return;
        Q v = c;
        if (a > b) {
            std::swap(a, b);
            if (!sym) v = -v;
        }
        out(index[{a, b}], col) += v;
    };
    for (int col = 0; col < m; ++col) {
        auto [i, j] = basis[col];
        for (int k = 0; k < n; ++k) {
            put(k, j, x(k, i), col);
            put(i, k, x(k, j), col);
        }
    }
    return out;
}

AtomRep atom_rep(const std::vector<FactorAlgebra>& factors, const Atom& a) {
    AtomRep r;
    if (a.kind == Atom::Kind::Trivial) {
        r.form = QMat::identity(1);
        r.has_form = true;
        return r;
    }
    const FactorAlgebra& f = factors.at(a.factor);
    r.factor = a.factor;
    if (a.kind == Atom::Kind::Defining) {
        r.dim = f.def_dim;
        r.images = f.basis;
        r.form = f.form;
        r.has_form = f.has_form;
        r.symmetric = f.symmetric;
        return r;
    }
    bool sym = a.kind == Atom::Kind::Sym2;
    for (const auto& x : f.basis) r.images.push_back(power2(x, sym));
    r.dim = r.images.front().rows;
    return r;
}

QMat block_diag(const std::vector<QMat>& blocks) {
    int n = 0;
    for (const auto& b : blocks) n += b.rows;
    QMat out(n, n);
    int off = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.rows; ++i)
            for (int j = 0; j < b.cols; ++j) out(off + i, off + j) = b(i, j);
        off += b.rows;
    }
    return out;
}

QMat reversal(int n) {
    QMat r(n, n);
    for (int i = 0; i < n; ++i) r(i, n - 1 - i) = 1;
    return r;
}

}  // namespace

Rep build_summand_rep(const std::vector<FactorAlgebra>& factors, int torus_rank, const Summand& s, bool symmetric_target) {
    std::vector<AtomRep> atoms;
    for (const auto& a : s.rep.tensor) atoms.push_back(atom_rep(factors, a));
    Rep w;
    w.dim = 1;
    for (const auto& a : atoms) w.dim *= a.dim;
    w.images.resize(factors.size());
    for (size_t k = 0; k < factors.size(); ++k) w.images[k].assign(factors[k].basis.size(), zero(w.dim));
    int before = 1;
    for (size_t t = 0; t < atoms.size(); ++t) {
        const auto& a = atoms[t];
        int after = w.dim / (before * a.dim);
        if (a.factor >= 0)
            for (size_t b = 0; b < a.images.size(); ++b)
                w.images[a.factor][b] = w.images[a.factor][b] +
                    kron(QMat::identity(after), kron(a.images[b], QMat::identity(before)));
        before *= a.dim;
    }
    // the last atom indexes the slowest coordinate
    w.has_form = true;
    w.symmetric = true;
    QMat form = QMat::identity(1);
    for (const auto& a : atoms) {
        w.has_form = w.has_form && a.has_form;
        if (!a.has_form) break;
        form = kron(a.form, form);
        if (!a.symmetric) w.symmetric = !w.symmetric;
    }
    if (w.has_form) w.form = form;
    bool charged = std::any_of(s.rep.torus.begin(), s.rep.torus.end(), [](int c) { return c != 0; });
    for (int j = 0; j < torus_rank; ++j) w.torus.push_back(Q(s.rep.torus.at(j)) * QMat::identity(w.dim));
    if (charged) w.has_form = false;
    if (!s.omega) return w;

    // Omega(W) = W + W^*, with W^* in the reversed dual basis.
    Rep o;
    int m = w.dim;
    o.dim = 2 * m;
    QMat R = reversal(m);
    auto dualize = [&](const QMat& x) { return Q(-1) * (R * x.transpose() * R); };
    o.images.resize(factors.size());
    for (size_t k = 0; k < factors.size(); ++k)
        for (const auto& x : w.images[k]) o.images[k].push_back(block_diag({x, dualize(x)}));
    for (const auto& t : w.torus) o.torus.push_back(block_diag({t, dualize(t)}));
    o.form = QMat(o.dim, o.dim);
    for (int i = 0; i < m; ++i) {
        o.form(i, o.dim - 1 - i) = 1;
        o.form(o.dim - 1 - i, i) = symmetric_target ? 1 : -1;
    }
    o.has_form = true;
    o.symmetric = symmetric_target;
    return o;
}

// ---------------------------------------------------------------------------
// Embedded subgroups

int EmbeddedSubgroup::borel_dim() const {
    std::vector<QVec> v;
    for (const auto& x : borel_plus()) v.push_back(flatten(x));
    return rank(v);
}

std::vector<QMat> EmbeddedSubgroup::borel_plus() const {
    std::vector<QMat> out;
    for (size_t k = 0; k < gens.size(); ++k)
        if (gen_kinds[k] != BasisKind::Negative) out.push_back(gens[k]);
    return out;
}

std::vector<QMat> EmbeddedSubgroup::nil_plus() const {
    std::vector<QMat> out;
    for (size_t k = 0; k < gens.size(); ++k)
        if (gen_kinds[k] == BasisKind::Positive) out.push_back(gens[k]);
    return out;
}

EmbeddedSubgroup build_subalgebra(const PairSpec& spec) {
    if (!spec.has_group) throw std::invalid_argument("pair spec needs an ambient group");
    EmbeddedSubgroup e;
    e.spec = spec;
    const GroupKind& g = spec.group;
    int d = g.dim;
    bool orth = g.kind == Kind::Orthogonal;
    for (const auto& l : spec.factors) e.factors.push_back(make_factor(l));
    int tr = static_cast<int>(spec.torus_names.size());
    for (const auto& f : e.factors) e.htype.factors.push_back(f.type);
    e.htype.torus_rank = tr;
    e.htype.torus_names = spec.torus_names;

    int total = 0;
    for (const auto& s : spec.summands) {
        Rep r = build_summand_rep(e.factors, tr, s, orth);
        if (!r.has_form || r.symmetric != orth)
            throw std::invalid_argument(std::string("summand carries no invariant ") + (orth ? "symmetric" : "symplectic") + " form");
        total += r.dim;
        e.summands.push_back(std::move(r));
    }
    if (total != d) throw std::invalid_argument("summands have total dimension " + std::to_string(total) + ", expected " + std::to_string(d));

    // Placement in listed order. Each summand takes vectors from the ordered list of still
    // available ambient vectors: even ones the first and last halves, odd ones the middle,
    // splitting the two central vectors into u = a + b and w = a - b when needed.
    int ns = static_cast<int>(e.summands.size());
    std::vector<int> offsets(ns, 0);
    for (int s = 1; s < ns; ++s) offsets[s] = offsets[s - 1] + e.summands[s - 1].dim;
    QMat qm(d, d);
    std::vector<Q> scale(ns, 0);
    std::vector<QVec> avail;
    for (int j = 0; j < d; ++j) {
        QVec v(d, Q(0));
        v[j] = 1;
        avail.push_back(v);
    }
    std::vector<bool> is_u(d, false), is_w(d, false);  // indexed like avail
    auto put = [&](int col, const QVec& v) {
        for (int r = 0; r < d; ++r) qm(r, col) = v[r];
    };
    for (int s = 0; s < ns; ++s) {
        const Rep& r = e.summands[s];
        int m = r.dim, D = static_cast<int>(avail.size()), k = m / 2;
        std::vector<QVec> rest;
        std::vector<bool> rest_u, rest_w;
        bool has_u = false, has_w = false;
        auto keep = [&](int j) {
            rest.push_back(avail[j]);
            rest_u.push_back(is_u[j]);
            rest_w.push_back(is_w[j]);
        };
        auto take = [&](int b, int j) {
            put(offsets[s] + b, avail[j]);
            has_u = has_u || is_u[j];
            has_w = has_w || is_w[j];
        };
        if (m % 2 == 0) {
            for (int b = 0; b < k; ++b) take(b, b);
            for (int b = 0; b < k; ++b) take(k + b, D - k + b);
            for (int j = k; j < D - k; ++j) keep(j);
        } else if (D % 2 == 1) {
            int l = D / 2;
            for (int b = 0; b < m; ++b) take(b, l - k + b);
            for (int j = 0; j < D; ++j)
                if (j < l - k || j > l + k) keep(j);
        } else {
            int l = D / 2;
            if (is_u[l - 1] || is_w[l - 1] || is_u[l] || is_w[l]) throw std::invalid_argument("placement of odd summands failed");
            for (int b = 0; b < k; ++b) take(b, b);
            QVec u(d), w(d);
            for (int r2 = 0; r2 < d; ++r2) {
                u[r2] = avail[l - 1][r2] + avail[l][r2];
                w[r2] = avail[l - 1][r2] - avail[l][r2];
            }
            put(offsets[s] + k, u);
            has_u = true;
            for (int b = 0; b < k; ++b) take(k + 1 + b, D - k + b);
            for (int j = k; j < l - 1; ++j) keep(j);
            rest.push_back(w);
            rest_u.push_back(false);
            rest_w.push_back(true);
            for (int j = l + 1; j < D - k; ++j) keep(j);
        }
        if (has_u && has_w) throw std::invalid_argument("placement of odd summands failed");
        if (has_u) scale[s] = Q(2) / r.form(k, k);
        else if (has_w) scale[s] = Q(-2) / r.form(k, k);
        else scale[s] = 1 / r.form(0, m - 1);
        avail = std::move(rest);
        is_u = std::move(rest_u);
        is_w = std::move(rest_w);
    }
    std::vector<QMat> forms;
    for (int s = 0; s < ns; ++s) forms.push_back(scale[s] * e.summands[s].form);
    QMat qinv = inverse(qm);
    QMat J = qinv.transpose() * block_diag(forms) * qinv;
    if (!is_antidiagonal(J)) throw std::logic_error("placement did not produce an antidiagonal form");
    e.g = classical_algebra(g, J);

    auto push = [&](std::vector<QMat> blocks, BasisKind kind) {
        QMat x = qm * block_diag(blocks) * qinv;
        if (!(x.transpose() * J + J * x).is_zero()) throw std::logic_error("image does not preserve the ambient form");
        if (kind_of(x) != kind && !x.is_zero()) throw std::logic_error("image is not aligned with the ambient Borel subalgebra");
        e.gens.push_back(std::move(x));
        e.gen_kinds.push_back(kind);
    };
    for (size_t k = 0; k < e.factors.size(); ++k)
        for (size_t b = 0; b < e.factors[k].basis.size(); ++b) {
            std::vector<QMat> blocks;
            for (const auto& r : e.summands) blocks.push_back(r.images[k][b]);
            push(blocks, e.factors[k].kinds[b]);
            if (e.factors[k].kinds[b] == BasisKind::Cartan) e.cartan.push_back(e.gens.back());
        }
    for (int j = 0; j < tr; ++j) {
        std::vector<QMat> blocks;
        for (const auto& r : e.summands) blocks.push_back(r.torus[j]);
        push(blocks, BasisKind::Cartan);
        e.cartan.push_back(e.gens.back());
    }
    // keep the Cartan list in htype order: factor coroots, then torus
    {
        std::vector<QVec> v;
        for (const auto& x : e.gens) v.push_back(flatten(x));
        e.dim_h = rank(v);
        std::vector<QVec> c;
        for (const auto& x : e.cartan) c.push_back(flatten(x));
        if (rank(c) != static_cast<int>(e.cartan.size())) throw std::invalid_argument("torus generators act dependently");
    }
    for (const auto& r : e.summands) {
        std::vector<std::vector<int>> ws;
        for (int b = 0; b < r.dim; ++b) {
            std::vector<int> w;
            for (size_t k = 0; k < e.factors.size(); ++k)
                for (size_t i = 0; i < e.factors[k].basis.size(); ++i)
                    if (e.factors[k].kinds[i] == BasisKind::Cartan) w.push_back(static_cast<int>(2 * r.images[k][i](b, b).get_num().get_si()));
            for (int j = 0; j < tr; ++j) w.push_back(static_cast<int>(2 * r.torus[j](b, b).get_num().get_si()));
            ws.push_back(w);
        }
        e.summand_weights.push_back(ws);
    }
    e.cmap.source = e.g_reductive();
    e.cmap.target = e.htype;
    int n = e.g.rank();
    for (const auto& h : e.cartan) {
        std::vector<std::int64_t> row;
        for (int i = 0; i < n; ++i) {
            Q s = 0;
            for (int j = 0; j < n; ++j) s += Q(e.g.fundamental_eps2[i][j]) * h(j, j);
            if (s.get_den() != 1) throw std::logic_error("non-integral Cartan restriction");
            row.push_back(s.get_num().get_si());
        }
        e.cmap.matrix.push_back(row);
    }
    return e;
}

EmbeddedSubgroup build_subalgebra(const std::string& spec) { return build_subalgebra(parse_pair_spec(spec)); }
EmbeddedSubgroup g2_in_so7() { return build_subalgebra("so(7) : g2 : F7"); }
EmbeddedSubgroup spin7_in_so8(Sign sign) {
    return build_subalgebra(sign == Sign::Minus ? "so(8) : spin(7)- : F8" : "so(8) : spin(7)+ : F8");
}

CartanMap cartan_restriction_map(const EmbeddedSubgroup& e) { return e.cmap; }

// ---------------------------------------------------------------------------
// Parabolics, Levi factors and the quotient module

namespace {

void check_index_set(const ClassicalAlgebra& g, const std::set<int>& I) {
    for (int i : I)
        if (i < 1 || i > g.rank()) throw std::invalid_argument("index " + std::to_string(i) + " out of range");
}

bool vanishes_on(const std::vector<int>& root, const std::set<int>& I) {
    for (int i : I)
        if (root[i - 1] != 0) return false;
    return true;
}

}  // namespace

std::vector<QMat> parabolic(const ClassicalAlgebra& g, const std::set<int>& I) {
    check_index_set(g, I);
    std::vector<QMat> out;
    for (int k = 0; k < g.dim(); ++k)
        if (g.kinds[k] != BasisKind::Positive || vanishes_on(g.roots[k], I)) out.push_back(g.basis[k]);
    return out;
}

int flag_dimension(const ClassicalAlgebra& g, const std::set<int>& I) {
    check_index_set(g, I);
    int n = 0;
    for (int k = 0; k < g.dim(); ++k)
        if (g.kinds[k] == BasisKind::Positive && !vanishes_on(g.roots[k], I)) ++n;
    return n;
}

std::vector<SimpleFactor> classify_cartan(const std::vector<std::vector<int>>& c) {
    int r = static_cast<int>(c.size());
    std::vector<int> comp(r, -1);
    std::vector<SimpleFactor> out;
    for (int s = 0; s < r; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> nodes{s};
        comp[s] = s;
        for (size_t q = 0; q < nodes.size(); ++q)
            for (int j = 0; j < r; ++j)
                if (comp[j] < 0 && c[nodes[q]][j] != 0) {
                    comp[j] = s;
                    nodes.push_back(j);
                }
        int n = static_cast<int>(nodes.size());
        bool triple = false, dbl = false, branch = false;
        int long_end = -1, short_end = -1;
        for (int i : nodes) {
            int deg = 0;
            for (int j : nodes)
                if (i != j && c[i][j] != 0) {
                    ++deg;
                    if (c[i][j] == -3) triple = true;
                    if (c[i][j] == -2) {
                        dbl = true;
                        long_end = i;
                        short_end = j;
                    }
                }
            if (deg > 2) branch = true;
        }
        if (n == 1) out.push_back({Series::A, 1});
        else if (triple) out.push_back({Series::G, 2});
        else if (dbl) {
            if (n == 2) {
                out.push_back({Series::B, 2});
            } else {
                // B_n has the short simple root at the end of the chain
                int deg_short = 0;
                for (int j : nodes)
                    if (j != short_end && c[short_end][j] != 0) ++deg_short;
                (void)long_end;
                out.push_back({deg_short == 1 ? Series::B : Series::C, n});
            }
        } else if (branch) {
            if (n > 8 || n < 4) throw std::invalid_argument("unsupported root system");
            int branch_node = -1;
            for (int i : nodes) {
                int deg = 0;
                for (int j : nodes)
                    if (i != j && c[i][j] != 0) ++deg;
                if (deg == 3) branch_node = i;
            }
            // D_n has two legs of length one at the branch node
            int short_legs = 0;
            for (int j : nodes)
                if (j != branch_node && c[branch_node][j] != 0) {
                    int deg = 0;
                    for (int k : nodes)
                        if (k != j && c[j][k] != 0) ++deg;
                    if (deg == 1) ++short_legs;
                }
            if (short_legs < 2) throw std::invalid_argument("exceptional root systems of type E are not supported");
            out.push_back({Series::D, n});
        } else {
            out.push_back({Series::A, n});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const SimpleFactor& x, const SimpleFactor& y) {
        if (x.series != y.series) return x.series < y.series;
        return x.rank > y.rank;
    });
    return out;
}

namespace {

// t_H-weight of a root vector, read off at its first nonzero entry.
std::vector<Q> weight_of(const EmbeddedSubgroup& e, const QMat& x) {
    auto [a, b] = first_nonzero(x);
    std::vector<Q> w;
    for (const auto& h : e.cartan) w.push_back(h(a, a) - h(b, b));
    return w;
}

Subspace span_of(const std::vector<QMat>& xs, int n) {
    Subspace s(n * n);
    for (const auto& x : xs) s.add(flatten(x));
    return s;
}

}  // namespace

Levi levi_of_intersection(const EmbeddedSubgroup& e, const std::set<int>& I) {
    int d = e.g.group.dim;
    Subspace p = span_of(parabolic(e.g, I), d);
    std::map<std::vector<Q>, std::vector<size_t>> spaces;
    for (size_t k = 0; k < e.gens.size(); ++k)
        if (e.gen_kinds[k] != BasisKind::Cartan && !e.gens[k].is_zero()) spaces[weight_of(e, e.gens[k])].push_back(k);
    Levi m;
    m.cartan = e.cartan;
    for (const auto& h : e.cartan) {
        m.basis.push_back(h);
        m.kinds.push_back(BasisKind::Cartan);
    }
    std::vector<size_t> positive_roots;
    std::map<std::vector<Q>, size_t> root_vector;
    for (const auto& [w, ks] : spaces) {
        std::vector<Q> neg(w.size());
        for (size_t i = 0; i < w.size(); ++i) neg[i] = -w[i];
        auto it = spaces.find(neg);
        if (it == spaces.end()) throw std::logic_error("root space without its opposite");
        bool in = true;
        for (size_t k : ks) in = in && p.contains(flatten(e.gens[k]));
        for (size_t k : it->second) in = in && p.contains(flatten(e.gens[k]));
        if (!in) continue;
        Subspace local(d * d);
        for (size_t k : ks)
            if (local.add(flatten(e.gens[k]))) {
                m.basis.push_back(e.gens[k]);
                m.kinds.push_back(e.gen_kinds[k]);
            }
        root_vector[w] = ks.front();
        if (e.gen_kinds[ks.front()] == BasisKind::Positive) positive_roots.push_back(ks.front());
    }
    // simple roots of m: positive roots that are not sums of two positive roots
    std::vector<std::vector<Q>> pos;
    for (size_t k : positive_roots) pos.push_back(weight_of(e, e.gens[k]));
    std::vector<size_t> simple;
    for (size_t a = 0; a < pos.size(); ++a) {
        bool decomposable = false;
        for (size_t b = 0; b < pos.size() && !decomposable; ++b)
            for (size_t c = 0; c < pos.size() && !decomposable; ++c) {
                bool eq = true;
                for (size_t i = 0; i < pos[a].size(); ++i) eq = eq && pos[a][i] == pos[b][i] + pos[c][i];
                decomposable = eq;
            }
        if (!decomposable) simple.push_back(a);
    }
    std::vector<QMat> coroots;
    for (size_t a : simple) {
        std::vector<Q> neg(pos[a].size());
        for (size_t i = 0; i < neg.size(); ++i) neg[i] = -pos[a][i];
        const QMat& x = e.gens[positive_roots[a]];
        const QMat& y = e.gens[root_vector.at(neg)];
        QMat h = bracket(x, y);
        auto [r, c] = first_nonzero(x);
        coroots.push_back(Q(2) / (h(r, r) - h(c, c)) * h);
    }
    std::vector<std::vector<int>> cm(simple.size(), std::vector<int>(simple.size()));
    for (size_t i = 0; i < simple.size(); ++i)
        for (size_t j = 0; j < simple.size(); ++j) {
            auto [r, c] = first_nonzero(e.gens[positive_roots[simple[i]]]);
            Q v = coroots[j](r, r) - coroots[j](c, c);
            cm[i][j] = static_cast<int>(v.get_num().get_si());
        }
    m.type.factors = classify_cartan(cm);
    m.type.torus_rank = static_cast<int>(e.cartan.size()) - static_cast<int>(simple.size());
    return m;
}

QuotientModule quotient_module(const EmbeddedSubgroup& e, const std::set<int>& I) {
    QuotientModule out;
    out.m = levi_of_intersection(e, I);
    const ClassicalAlgebra& g = e.g;
    int n = g.dim();
    Subspace w(n);
    for (int k = 0; k < n; ++k)
        if (g.kinds[k] != BasisKind::Positive || vanishes_on(g.roots[k], I)) {
            QVec u(n, 0);
            u[k] = 1;
            w.add(u);
        }
    for (const auto& x : e.gens) w.add(g.coords(x));
    std::vector<bool> is_pivot(n, false);
    for (int p : w.pivots()) is_pivot[p] = true;
    std::vector<int> free;
    for (int k = 0; k < n; ++k)
        if (!is_pivot[k]) free.push_back(k);
    int r = static_cast<int>(free.size());
    for (int k : free) out.complement.push_back(g.basis[k]);
    auto act = [&](const QMat& x) {
        QMat a(r, r);
        for (int j = 0; j < r; ++j) {
            QVec v = w.reduce(g.coords(bracket(x, g.basis[free[j]])));
            for (int i = 0; i < r; ++i) a(i, j) = v[free[i]];
        }
        return a;
    };
    out.action.dim = r;
    for (size_t k = 0; k < out.m.basis.size(); ++k) {
        if (out.m.kinds[k] == BasisKind::Negative) continue;
        QMat a = act(out.m.basis[k]);
        out.action.borel.push_back(a);
        if (out.m.kinds[k] == BasisKind::Positive) out.action.nil.push_back(a);
    }
    out.action.description = out.m.type.name() + " on a space of dimension " + std::to_string(r);
    return out;
}

ModuleAction build_module(const PairSpec& spec) {
    std::vector<FactorAlgebra> factors;
    for (const auto& l : spec.factors) factors.push_back(make_factor(l));
    int tr = static_cast<int>(spec.torus_names.size());
    std::vector<Rep> reps;
    for (const auto& s : spec.summands) reps.push_back(build_summand_rep(factors, tr, s, true));
    ModuleAction m;
    for (const auto& r : reps) m.dim += r.dim;
    for (size_t k = 0; k < factors.size(); ++k)
        for (size_t b = 0; b < factors[k].basis.size(); ++b) {
            if (factors[k].kinds[b] == BasisKind::Negative) continue;
            std::vector<QMat> blocks;
            for (const auto& r : reps) blocks.push_back(r.images[k][b]);
            QMat x = block_diag(blocks);
            m.borel.push_back(x);
            if (factors[k].kinds[b] == BasisKind::Positive) m.nil.push_back(x);
        }
    for (int j = 0; j < tr; ++j) {
        std::vector<QMat> blocks;
        for (const auto& r : reps) blocks.push_back(r.torus[j]);
        m.borel.push_back(block_diag(blocks));
    }
    ReductiveType t;
    for (const auto& f : factors) t.factors.push_back(f.type);
    t.torus_rank = tr;
    m.description = t.name() + " on a space of dimension " + std::to_string(m.dim);
    return m;
}

ModuleAction build_module(const std::string& spec) { return build_module(parse_module_spec(spec)); }

}  // namespace flagsph
