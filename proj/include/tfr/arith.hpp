#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfr {

using Int = mpz_class;
using Rat = mpq_class;
using Vec = std::vector<Int>;
using Mat = std::vector<Vec>;
using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;

/// Error carrying a stable machine-readable code (e.g. "SpanMismatch").
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

Int dot(const Vec& a, const Vec& b);
Rat dot(const QVec& a, const QVec& b);
Rat dot(const Vec& a, const QVec& b);

QVec to_q(const Vec& v);
QMat to_q(const Mat& m);
bool is_zero(const Vec& v);
bool is_zero(const QVec& v);
Int content(const Vec& v);
/// divide by the gcd of the entries; zero stays zero
Vec primitive(const Vec& v);
/// positive multiple of a rational vector that is a primitive integer vector
Vec primitive(const QVec& v);
Vec neg(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Int& s, const Vec& v);
Mat transpose(const Mat& m, std::size_t cols);
Mat identity(std::size_t n);
Vec row_times(const Vec& y, const Mat& m, std::size_t cols);

Int det(const Mat& m);
Rat det(const QMat& m);
std::size_t rank(const Mat& m);
std::size_t rank(const QMat& m);
/// indices of a greedy maximal independent subset of rows
std::vector<std::size_t> independent_rows(const Mat& m);
std::optional<QMat> inverse(const QMat& m);

/// Reduced row echelon form over Q; returns pivot columns.
std::vector<std::size_t> rref(QMat& m, std::size_t cols);
/// Basis of {x : m x = 0} over Q.
QMat rational_kernel(const QMat& m, std::size_t cols);
/// Basis of {y : y m = 0} over Q.
QMat rational_left_kernel(const QMat& m, std::size_t cols);

struct RationalSolution {
    bool feasible = false;
    QVec x;               // particular solution, free variables set to zero
    QMat kernel;          // basis of the homogeneous solutions
    QVec certificate;     // y with y A = 0, y b != 0 when infeasible
};
RationalSolution solve_rational(const QMat& a, const QVec& b, std::size_t cols);

std::string str(const Int& v);
std::string str(const Rat& v);
std::string str(const Vec& v);
std::string str(const QVec& v);
std::string str(const Mat& m);

/// Parses "p", "-p" or "p/q"; decimals and anything else raise ParseError.
Rat parse_rational(const std::string& s);
Int parse_integer(const std::string& s);

bool is_prime(unsigned long p);

}  // namespace tfr
