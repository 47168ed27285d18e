#include "flagsph/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace flagsph {

QMat QMat::identity(int n) {
    QMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

bool QMat::is_zero() const {
    for (const auto& x : a)
        if (sgn(x) != 0) return false;
    return true;
}

bool QMat::is_diagonal() const {
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (i != j && sgn((*this)(i, j)) != 0) return false;
    return true;
}

bool QMat::is_strictly_upper() const {
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j <= i && j < cols; ++j)
            if (sgn((*this)(i, j)) != 0) return false;
    return true;
}

bool QMat::is_strictly_lower() const {
    for (int i = 0; i < rows; ++i)
        for (int j = i; j < cols; ++j)
            if (sgn((*this)(i, j)) != 0) return false;
    return true;
}

QMat QMat::transpose() const {
    QMat t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

std::string QMat::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) os << (j ? " " : "") << (*this)(i, j);
        os << "\n";
    }
    return os.str();
}

QMat operator*(const QMat& x, const QMat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
    QMat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Q& v = x(i, k);
            if (sgn(v) == 0) continue;
            for (int j = 0; j < y.cols; ++j)
                if (sgn(y(k, j)) != 0) r(i, j) += v * y(k, j);
        }
    return r;
}

QMat operator+(const QMat& x, const QMat& y) {
    QMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

QMat operator-(const QMat& x, const QMat& y) {
    QMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

QMat operator*(const Q& s, const QMat& x) {
    QMat r = x;
    for (auto& v : r.a) v *= s;
    return r;
}

bool operator==(const QMat& x, const QMat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
}

QMat bracket(const QMat& x, const QMat& y) { return x * y - y * x; }

QMat inverse(const QMat& m) {
    int n = m.rows;
    QMat a = m;
    QMat b = QMat::identity(n);
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (sgn(a(r, c)) != 0) { p = r; break; }
        if (p < 0) throw std::runtime_error("singular matrix");
        if (p != c)
            for (int j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(b(p, j), b(c, j));
            }
        Q piv = a(c, c);
        for (int j = 0; j < n; ++j) { a(c, j) /= piv; b(c, j) /= piv; }
        for (int r = 0; r < n; ++r) {
            if (r == c || sgn(a(r, c)) == 0) continue;
            Q f = a(r, c);
            for (int j = 0; j < n; ++j) { a(r, j) -= f * a(c, j); b(r, j) -= f * b(c, j); }
        }
    }
    return b;
}

QMat kron(const QMat& major, const QMat& minor) {
    QMat r(major.rows * minor.rows, major.cols * minor.cols);
    for (int i = 0; i < major.rows; ++i)
        for (int j = 0; j < major.cols; ++j) {
            if (sgn(major(i, j)) == 0) continue;
            for (int k = 0; k < minor.rows; ++k)
                for (int l = 0; l < minor.cols; ++l)
                    r(i * minor.rows + k, j * minor.cols + l) = major(i, j) * minor(k, l);
        }
    return r;
}

QMat unflatten(const QVec& v, int rows, int cols) {
    QMat m(rows, cols);
    m.a = v;
    return m;
}

QVec Subspace::reduce(const QVec& v) const {
    QVec r = v;
    for (size_t k = 0; k < rows_.size(); ++k) {
        const Q& c = r[piv_[k]];
        if (sgn(c) == 0) continue;
        Q f = c;
        const QVec& row = rows_[k];
        for (int j = piv_[k]; j < n_; ++j)
            if (sgn(row[j]) != 0) r[j] -= f * row[j];
    }
    return r;
}

bool Subspace::contains(const QVec& v) const {
    QVec r = reduce(v);
    for (const auto& x : r)
        if (sgn(x) != 0) return false;
    return true;
}

bool Subspace::add(const QVec& v) {
    QVec r = reduce(v);
    int p = -1;
    for (int j = 0; j < n_; ++j)
        if (sgn(r[j]) != 0) { p = j; break; }
    if (p < 0) return false;
    Q f = r[p];
    for (int j = p; j < n_; ++j) r[j] /= f;
    // Keep rows fully reduced so reduce() stays a single pass.
    for (auto& row : rows_) {
        if (sgn(row[p]) == 0) continue;
        Q g = row[p];
        for (int j = p; j < n_; ++j) row[j] -= g * r[j];
    }
    // Insert keeping pivots sorted.
    size_t pos = 0;
    while (pos < piv_.size() && piv_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + static_cast<long>(pos), std::move(r));
    piv_.insert(piv_.begin() + static_cast<long>(pos), p);
    return true;
}

int rank(const std::vector<QVec>& vs) {
    if (vs.empty()) return 0;
    Subspace s(static_cast<int>(vs[0].size()));
    for (const auto& v : vs) s.add(v);
    return s.dim();
}

std::vector<QVec> nullspace(const QMat& m) {
    int n = m.cols;
    QMat a = m;
    std::vector<int> pivcol;
    int r = 0;
    for (int c = 0; c < n && r < a.rows; ++c) {
        int p = -1;
        for (int i = r; i < a.rows; ++i)
            if (sgn(a(i, c)) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < n; ++j) std::swap(a(p, j), a(r, j));
        Q piv = a(r, c);
        for (int j = c; j < n; ++j) a(r, j) /= piv;
        for (int i = 0; i < a.rows; ++i) {
            if (i == r || sgn(a(i, c)) == 0) continue;
            Q f = a(i, c);
            for (int j = c; j < n; ++j) a(i, j) -= f * a(r, j);
        }
        pivcol.push_back(c);
        ++r;
    }
    std::vector<bool> is_piv(n, false);
    for (int c : pivcol) is_piv[c] = true;
    std::vector<QVec> out;
    for (int f = 0; f < n; ++f) {
        if (is_piv[f]) continue;
        QVec v(n);
        v[f] = 1;
        for (size_t k = 0; k < pivcol.size(); ++k) v[pivcol[k]] = -a(static_cast<int>(k), f);
        out.push_back(std::move(v));
    }
    return out;
}

bool coordinates(const std::vector<QVec>& basis, const QVec& v, QVec& out) {
    int k = static_cast<int>(basis.size());
    int n = static_cast<int>(v.size());
    QMat a(n, k + 1);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) a(i, j) = basis[j][i];
    for (int i = 0; i < n; ++i) a(i, k) = -v[i];
    auto ns = nullspace(a);
    for (const auto& z : ns) {
        if (sgn(z[k]) == 0) continue;
        out.assign(k, Q(0));
        for (int j = 0; j < k; ++j) out[j] = z[j] / z[k];
        return true;
    }
    return false;
}

namespace modp {

std::uint64_t add(std::uint64_t x, std::uint64_t y) {
    std::uint64_t s = x + y;
    return s >= P ? s - P : s;
}

std::uint64_t sub(std::uint64_t x, std::uint64_t y) { return x >= y ? x - y : x + P - y; }

std::uint64_t mul(std::uint64_t x, std::uint64_t y) {
    __uint128_t z = static_cast<__uint128_t>(x) * y;
    std::uint64_t lo = static_cast<std::uint64_t>(z & P);
    std::uint64_t hi = static_cast<std::uint64_t>(z >> 61);
    std::uint64_t s = lo + hi;
    return s >= P ? s - P : s;
}

std::uint64_t pow(std::uint64_t x, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

std::uint64_t inv(std::uint64_t x) {
    if (x == 0) throw std::domain_error("inverse of zero mod p");
    return pow(x, P - 2);
}

std::uint64_t from_int(long long v) {
    long long m = static_cast<long long>(P);
    long long r = v % m;
    if (r < 0) r += m;
    return static_cast<std::uint64_t>(r);
}

static std::uint64_t from_z(const mpz_class& z) {
    static const mpz_class pz(static_cast<unsigned long>(P));
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), pz.get_mpz_t());
    return mpz_get_ui(r.get_mpz_t());
}

std::uint64_t from_q(const Q& q) {
    std::uint64_t num = from_z(q.get_num());
    std::uint64_t den = from_z(q.get_den());
    return mul(num, inv(den));
}

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat from_q(const QMat& m) {
    Mat r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i)
        if (sgn(m.a[i]) != 0) r.a[i] = from_q(m.a[i]);
    return r;
}

Mat operator*(const Mat& x, const Mat& y) {
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            std::uint64_t v = x(i, k);
            if (!v) continue;
            for (int j = 0; j < y.cols; ++j)
                if (y(k, j)) r(i, j) = add(r(i, j), mul(v, y(k, j)));
        }
    return r;
}

Mat operator+(const Mat& x, const Mat& y) {
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = add(r.a[i], y.a[i]);
    return r;
}

Mat scale(std::uint64_t s, const Mat& x) {
    Mat r = x;
    for (auto& v : r.a) v = mul(v, s);
    return r;
}

std::vector<std::uint64_t> apply(const Mat& m, const std::vector<std::uint64_t>& v) {
    std::vector<std::uint64_t> r(m.rows, 0);
    for (int i = 0; i < m.rows; ++i) {
        std::uint64_t s = 0;
        for (int j = 0; j < m.cols; ++j)
            if (m(i, j) && v[j]) s = add(s, mul(m(i, j), v[j]));
        r[i] = s;
    }
    return r;
}

int rank(std::vector<std::vector<std::uint64_t>> rows) {
    if (rows.empty()) return 0;
    int n = static_cast<int>(rows[0].size());
    int r = 0;
    int m = static_cast<int>(rows.size());
    for (int c = 0; c < n && r < m; ++c) {
        int p = -1;
        for (int i = r; i < m; ++i)
            if (rows[i][c]) { p = i; break; }
        if (p < 0) continue;
        std::swap(rows[p], rows[r]);
        std::uint64_t iv = inv(rows[r][c]);
        for (int j = c; j < n; ++j) rows[r][j] = mul(rows[r][j], iv);
        for (int i = r + 1; i < m; ++i) {
            std::uint64_t f = rows[i][c];
            if (!f) continue;
            for (int j = c; j < n; ++j)
                if (rows[r][j]) rows[i][j] = sub(rows[i][j], mul(f, rows[r][j]));
        }
        ++r;
    }
    return r;
}

Mat exp_nilpotent(const Mat& n, std::uint64_t t) {
    int d = n.rows;
    Mat result = Mat::identity(d);
    Mat term = Mat::identity(d);
    for (int k = 1; k <= d; ++k) {
        term = scale(mul(t, inv(static_cast<std::uint64_t>(k))), term * n);
        bool zero = true;
        for (auto v : term.a)
            if (v) { zero = false; break; }
        if (zero) break;
        result = result + term;
    }
    return result;
}

}  // namespace modp
}  // namespace flagsph
