#include "pcone/linalg.hpp"

#include <boost/multiprecision/gmp.hpp>

namespace pcone {

Rat dot(const VecR& a, const VecR& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  return a.dot(b);
}

VecR primitive(const VecR& v) {
  if (v.size() == 0) throw std::invalid_argument("primitive: empty vector");
  Int den_lcm = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    den_lcm = lcm(den_lcm, denominator(v[i]));
  }
  Int num_gcd = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    Int scaled = numerator(v[i]) * (den_lcm / denominator(v[i]));
    num_gcd = gcd(num_gcd, abs(scaled));
  }
  if (num_gcd == 0) throw std::invalid_argument("primitive: zero vector");
  VecR out(v.size());
  const Rat factor = Rat(den_lcm) / Rat(num_gcd);
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i] * factor;
  return out;
}

bool lex_less(const VecR& a, const VecR& b) {
  if (a.size() != b.size()) throw std::invalid_argument("lex_less: dimension mismatch");
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

namespace {

/// Row-reduce in place; returns the pivot columns.  Exact arithmetic, full
/// row pivoting by first nonzero entry.
std::vector<int> row_reduce(MatR& m) {
  std::vector<int> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index sel = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (m(r, col) != 0) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    m.row(sel).swap(m.row(row));
    const Rat inv = Rat(1) / Rat(m(row, col));
    m.row(row) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r != row && m(r, col) != 0) {
        // Materialize the factor: a lazy scalar expression would alias the
        // entry being zeroed during the row update.
        const Rat f = m(r, col);
        m.row(r) -= f * m.row(row);
      }
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  return pivots;
}

}  // namespace

int rank(MatR m) { return static_cast<int>(row_reduce(m).size()); }

Rat determinant(MatR m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: non-square matrix");
  const Eigen::Index n = m.rows();
  Rat det = 1;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index sel = -1;
    for (Eigen::Index r = col; r < n; ++r) {
      if (m(r, col) != 0) {
        sel = r;
        break;
      }
    }
    if (sel < 0) return 0;
    if (sel != col) {
      m.row(sel).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    const Rat inv = Rat(1) / Rat(m(col, col));
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (m(r, col) != 0) {
        const Rat f = m(r, col) * inv;
        m.row(r) -= f * m.row(col);
      }
    }
  }
  return det;
}

int rank_of(const std::vector<VecR>& vs) {
  if (vs.empty()) return 0;
  MatR m(static_cast<Eigen::Index>(vs.size()), vs.front().size());
  for (size_t i = 0; i < vs.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = vs[i].transpose();
  return rank(m);
}

std::optional<VecR> solve(MatR a, VecR b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve: dimension mismatch");
  MatR aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  const auto pivots = row_reduce(aug);
  // A pivot in the augmented column means the system is inconsistent.
  if (!pivots.empty() && pivots.back() == static_cast<int>(a.cols())) return std::nullopt;
  VecR x = VecR::Zero(a.cols());
  for (size_t i = 0; i < pivots.size(); ++i) {
    x[pivots[i]] = aug(static_cast<Eigen::Index>(i), a.cols());
  }
  return x;
}

std::vector<VecR> nullspace(MatR a) {
  const Eigen::Index n = a.cols();
  const auto pivots = row_reduce(a);
  std::vector<bool> is_pivot(n, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<VecR> basis;
  for (Eigen::Index free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    VecR v = VecR::Zero(n);
    v[free_col] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) {
      v[pivots[i]] = -a(static_cast<Eigen::Index>(i), free_col);
    }
    basis.push_back(v);
  }
  return basis;
}

VecR project_affine(const VecR& x, const std::vector<VecR>& basis, const VecR& origin) {
  if (x.size() != origin.size()) throw std::invalid_argument("project_affine: dimension mismatch");
  if (basis.empty()) return origin;
  MatR b(x.size(), static_cast<Eigen::Index>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j) b.col(static_cast<Eigen::Index>(j)) = basis[j];
  const MatR gram = b.transpose() * b;
  const VecR rhs = b.transpose() * (x - origin);
  const auto lambda = solve(gram, rhs);
  // The normal equations are always consistent for a projection.
  if (!lambda) throw std::logic_error("project_affine: normal equations inconsistent");
  return origin + b * (*lambda);
}

LinMaxResult linear_max(const VecR& dir, const std::vector<VecR>& points,
                        const std::vector<VecR>& rays) {
  if (points.empty()) throw std::invalid_argument("linear_max: no points");
  LinMaxResult res;
  for (const VecR& r : rays) {
    if (dot(dir, r) > 0) {
      res.unbounded = true;
      return res;
    }
  }
  res.argmax_point = 0;
  res.value = dot(dir, points[0]);
  for (size_t i = 1; i < points.size(); ++i) {
    Rat v = dot(dir, points[i]);
    if (v > res.value) {
      res.value = v;
      res.argmax_point = static_cast<int>(i);
    }
  }
  return res;
}

}  // namespace pcone
