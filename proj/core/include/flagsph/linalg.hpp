#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace flagsph {

using Q = mpq_class;
using QVec = std::vector<Q>;

// Dense square-or-rectangular matrix over Q, row-major.
struct QMat {
    int rows = 0;
    int cols = 0;
    std::vector<Q> a;

    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Q& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Q& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static QMat identity(int n);
    bool is_zero() const;
    bool is_diagonal() const;
    bool is_strictly_upper() const;
    bool is_strictly_lower() const;
    QMat transpose() const;
    std::string str() const;
};

QMat operator*(const QMat& x, const QMat& y);
QMat operator+(const QMat& x, const QMat& y);
QMat operator-(const QMat& x, const QMat& y);
QMat operator*(const Q& s, const QMat& x);
bool operator==(const QMat& x, const QMat& y);
QMat bracket(const QMat& x, const QMat& y);
QMat inverse(const QMat& m);  // throws on singular input

// Standard Kronecker product with `major` indexing the slow coordinate.
QMat kron(const QMat& major, const QMat& minor);

inline QVec flatten(const QMat& m) { return m.a; }
QMat unflatten(const QVec& v, int rows, int cols);

// Incrementally maintained row-echelon basis of a subspace of Q^n.
class Subspace {
public:
    explicit Subspace(int ambient_dim = 0) : n_(ambient_dim) {}
    int ambient_dim() const { return n_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    // Reduce v against the basis; returns the remainder.
    QVec reduce(const QVec& v) const;
    bool contains(const QVec& v) const;
    // Adds v if independent; returns true when the dimension grew.
    bool add(const QVec& v);
    const std::vector<QVec>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return piv_; }

private:
    int n_;
    std::vector<QVec> rows_;  // each row normalized to pivot 1
    std::vector<int> piv_;
};

int rank(const std::vector<QVec>& vs);
// Basis of {x : m x = 0}.
std::vector<QVec> nullspace(const QMat& m);
// Coordinates of v in the independent family `basis`; false if v is outside the span.
bool coordinates(const std::vector<QVec>& basis, const QVec& v, QVec& out);

// Arithmetic modulo the Mersenne prime 2^61 - 1.
namespace modp {
constexpr std::uint64_t P = (std::uint64_t{1} << 61) - 1;
std::uint64_t add(std::uint64_t x, std::uint64_t y);
std::uint64_t sub(std::uint64_t x, std::uint64_t y);
std::uint64_t mul(std::uint64_t x, std::uint64_t y);
std::uint64_t pow(std::uint64_t x, std::uint64_t e);
std::uint64_t inv(std::uint64_t x);
std::uint64_t from_int(long long v);
std::uint64_t from_q(const Q& q);

struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint64_t> a;
    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
    std::uint64_t& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    std::uint64_t operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    static Mat identity(int n);
};
Mat from_q(const QMat& m);
Mat operator*(const Mat& x, const Mat& y);
Mat operator+(const Mat& x, const Mat& y);
Mat scale(std::uint64_t s, const Mat& x);
std::vector<std::uint64_t> apply(const Mat& m, const std::vector<std::uint64_t>& v);
// Rank of the row family; rows are consumed.
int rank(std::vector<std::vector<std::uint64_t>> rows);
// exp(t*N) for nilpotent N.
Mat exp_nilpotent(const Mat& n, std::uint64_t t);
}  // namespace modp

}  // namespace flagsph
