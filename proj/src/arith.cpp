#include "tfr/arith.hpp"

#include <algorithm>
#include <cctype>

namespace tfr {

Int dot(const Vec& a, const Vec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const QVec& a, const QVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const Vec& a, const QVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
    return s;
}

QVec to_q(const Vec& v) {
    QVec r;
    r.reserve(v.size());
    for (const auto& x : v) r.emplace_back(x);
    return r;
}

QMat to_q(const Mat& m) {
    QMat r;
    r.reserve(m.size());
    for (const auto& row : m) r.push_back(to_q(row));
    return r;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

bool is_zero(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

Int content(const Vec& v) {
    Int g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

Vec primitive(const Vec& v) {
    Int g = content(v);
    if (g == 0 || g == 1) return v;
    Vec r = v;
    for (auto& x : r) x /= g;
    return r;
}

Vec primitive(const QVec& v) {
    Int l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    Vec r;
    r.reserve(v.size());
    for (const auto& x : v) {
        Rat y = x * l;
        r.push_back(y.get_num());
    }
    return primitive(r);
}

Vec neg(const Vec& v) {
    Vec r = v;
    for (auto& x : r) x = -x;
    return r;
}

Vec add(const Vec& a, const Vec& b) {
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec scale(const Int& s, const Vec& v) {
    Vec r = v;
    for (auto& x : r) x *= s;
    return r;
}

Mat transpose(const Mat& m, std::size_t cols) {
    Mat t(cols, Vec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
    return t;
}

Mat identity(std::size_t n) {
    Mat m(n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Vec row_times(const Vec& y, const Mat& m, std::size_t cols) {
    Vec r(cols, 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (y[i] == 0) continue;
        for (std::size_t j = 0; j < cols; ++j) r[j] += y[i] * m[i][j];
    }
    return r;
}

Rat det(const QMat& m0) {
    QMat m = m0;
    std::size_t n = m.size();
    Rat d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rat f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return d;
}

Int det(const Mat& m) {
    Rat d = det(to_q(m));
    return d.get_num();
}

std::vector<std::size_t> rref(QMat& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t p = row;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        Rat inv = 1 / m[row][c];
        std::size_t width = m[row].size();
        for (std::size_t k = 0; k < width; ++k) m[row][k] *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][c] == 0) continue;
            Rat f = m[r][c];
            for (std::size_t k = 0; k < width; ++k) m[r][k] -= f * m[row][k];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

std::size_t rank(const QMat& m) {
    if (m.empty()) return 0;
    QMat t = m;
    return rref(t, m[0].size()).size();
}

std::size_t rank(const Mat& m) { return rank(to_q(m)); }

std::vector<std::size_t> independent_rows(const Mat& m) {
    std::vector<std::size_t> keep;
    QMat basis;
    for (std::size_t i = 0; i < m.size(); ++i) {
        basis.push_back(to_q(m[i]));
        if (rank(basis) == basis.size())
            keep.push_back(i);
        else
            basis.pop_back();
    }
    return keep;
}

std::optional<QMat> inverse(const QMat& m) {
    std::size_t n = m.size();
    QMat a(n, QVec(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
        a[i][n + i] = 1;
    }
    auto piv = rref(a, n);
    if (piv.size() != n) return std::nullopt;
    QMat inv(n, QVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
}

QMat rational_kernel(const QMat& m, std::size_t cols) {
    QMat a = m;
    auto piv = rref(a, cols);
    std::vector<bool> is_piv(cols, false);
    for (auto p : piv) is_piv[p] = true;
    QMat ker;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        QVec v(cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -a[i][f];
        ker.push_back(v);
    }
    return ker;
}

QMat rational_left_kernel(const QMat& m, std::size_t cols) {
    QMat t(cols, QVec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
    return rational_kernel(t, m.size());
}

RationalSolution solve_rational(const QMat& a, const QVec& b, std::size_t cols) {
    RationalSolution out;
    QMat aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    auto piv = rref(aug, cols + 1);
    if (!piv.empty() && piv.back() == cols) {
        for (const auto& y : rational_left_kernel(a, cols)) {
            if (dot(y, b) != 0) {
                out.certificate = y;
                break;
            }
        }
        return out;
    }
    out.feasible = true;
    out.x.assign(cols, 0);
    for (std::size_t i = 0; i < piv.size(); ++i) out.x[piv[i]] = aug[i][cols];
    out.kernel = rational_kernel(a, cols);
    return out;
}

std::string str(const Int& v) { return v.get_str(); }

std::string str(const Rat& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

template <class V>
static std::string join_vec(const V& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += str(v[i]);
    }
    return s + ")";
}

std::string str(const Vec& v) { return join_vec(v); }
std::string str(const QVec& v) { return join_vec(v); }

std::string str(const Mat& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += ",";
        s += str(m[i]);
    }
    return s + "]";
}

static bool all_digits(const std::string& s, std::size_t from) {
    if (from >= s.size()) return false;
    for (std::size_t i = from; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Int parse_integer(const std::string& s) {
    std::size_t from = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (!all_digits(s, from)) throw Error("ParseError", "not an integer: \"" + s + "\"");
    return Int(s[0] == '+' ? s.substr(1) : s, 10);
}

Rat parse_rational(const std::string& s) {
    if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
        s.find('E') != std::string::npos)
        throw Error("ParseError", "decimal notation is not exact: \"" + s + "\"");
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_integer(s));
    Int p = parse_integer(s.substr(0, slash));
    std::string den = s.substr(slash + 1);
    if (!all_digits(den, 0)) throw Error("ParseError", "bad denominator in \"" + s + "\"");
    Int q(den, 10);
    if (q == 0) throw Error("ParseError", "zero denominator in \"" + s + "\"");
    Rat r(p, q);
    r.canonicalize();
    return r;
}

bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

}  // namespace tfr
