#include <algorithm>
#include <cmath>
#include <numeric>

#include "crnosc/matrix.hpp"

namespace crnosc {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(static_cast<long>(m(i, j)));
  return out;
}

RealMatrix to_real(const IntMatrix& m) {
  RealMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = static_cast<double>(m(i, j));
  return out;
}

RealMatrix to_real(const RatMatrix& m) {
  RealMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

std::size_t rank(const IntMatrix& m) {
  // Bareiss elimination keeps every intermediate entry an integer minor.
  const std::size_t rows = m.rows(), cols = m.cols();
  Matrix<Integer> a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = Integer(static_cast<long>(m(i, j)));
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(pivot, j), a(r, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer v = a(r, c) * a(i, j) - a(i, c) * a(r, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    Rational inv = 1 / a(r, c);
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return rref(a).size();
}

std::vector<std::size_t> row_basis(const RatMatrix& m) {
  std::vector<std::size_t> basis;
  RatMatrix acc(0, m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    RatMatrix trial(basis.size() + 1, m.cols());
    for (std::size_t k = 0; k < basis.size(); ++k)
      for (std::size_t j = 0; j < m.cols(); ++j) trial(k, j) = m(basis[k], j);
    for (std::size_t j = 0; j < m.cols(); ++j) trial(basis.size(), j) = m(i, j);
    if (rank(trial) == basis.size() + 1) basis.push_back(i);
  }
  return basis;
}

RatMatrix kernel(const RatMatrix& m) {
  RatMatrix a = m;
  auto pivots = rref(a);
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0, p = 0; c < m.cols(); ++c) {
    if (p < pivots.size() && pivots[p] == c) {
      ++p;
      continue;
    }
    free_cols.push_back(c);
  }
  RatMatrix k(m.cols(), free_cols.size(), Rational(0));
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    k(free_cols[f], f) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) k(pivots[r], f) = -a(r, free_cols[f]);
  }
  return k;
}

std::vector<Rational> primitive(const std::vector<Rational>& v) {
  Integer lcm_den = 1;
  for (const auto& q : v) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> ints;
  Integer g = 0;
  for (const auto& q : v) {
    Integer x = q.get_num() * (lcm_den / q.get_den());
    ints.push_back(x);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  std::vector<Rational> out;
  for (const auto& x : ints) out.emplace_back(g == 0 ? Integer(0) : Integer(x / g));
  return out;
}

RatMatrix left_kernel(const RatMatrix& m) {
  RatMatrix k = kernel(m.transpose());
  RatMatrix out(k.cols(), m.rows());
  for (std::size_t c = 0; c < k.cols(); ++c) {
    auto v = primitive(k.col(c));
    auto first = std::find_if(v.begin(), v.end(), [](const Rational& q) { return q != 0; });
    if (first != v.end() && *first < 0)
      for (auto& q : v) q = -q;
    for (std::size_t i = 0; i < v.size(); ++i) out(c, i) = v[i];
  }
  return out;
}

std::vector<Rational> solve_particular(const RatMatrix& a, const std::vector<Rational>& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve_particular: dimension mismatch");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols())
    throw std::domain_error("inconsistent linear system");
  std::vector<Rational> x(a.cols(), Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  RatMatrix a = m;
  Rational det = 1;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

std::vector<double> solve(RealMatrix a, std::vector<double> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve: dimension mismatch");
  double scale = 0;
  for (double v : a.data()) scale = std::max(scale, std::fabs(v));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (std::fabs(a(i, c)) > std::fabs(a(p, c))) p = i;
    if (std::fabs(a(p, c)) <= 1e-300 + 1e-14 * scale) throw std::domain_error("singular matrix");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      std::swap(b[p], b[c]);
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      double f = a(i, c) / a(c, c);
      if (f == 0) continue;
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
      b[i] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

double determinant(RealMatrix a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("determinant of non-square matrix");
  double det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (std::fabs(a(i, c)) > std::fabs(a(p, c))) p = i;
    if (a(p, c) == 0) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      double f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

}  // namespace crnosc
