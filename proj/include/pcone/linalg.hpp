#pragma once

#include "pcone/scalar.hpp"

namespace pcone {

/// Exact dot product with a dimension check.
Rat dot(const VecR& a, const VecR& b);

/// Scale a nonzero rational vector by a positive factor so its entries are
/// coprime integers.  Direction is preserved (the sign is never flipped).
VecR primitive(const VecR& v);

/// Strict lexicographic order on rational vectors of equal length.
bool lex_less(const VecR& a, const VecR& b);

/// Exact rank via fraction-free Gaussian elimination.
int rank(MatR m);

/// Exact determinant of a square rational matrix.
Rat determinant(MatR m);

/// Rank of the span of a set of vectors (given as a list, possibly empty).
int rank_of(const std::vector<VecR>& vs);

/// Solve A x = b exactly.  Returns std::nullopt when the system is
/// inconsistent; when the solution space is positive-dimensional an
/// arbitrary solution is returned.
std::optional<VecR> solve(MatR a, VecR b);

/// Basis of the nullspace of A (exact).
std::vector<VecR> nullspace(MatR a);

/// Orthogonal projection of x onto the affine hull origin + span(basis),
/// computed exactly through the normal equations.  The basis vectors need
/// not be independent.
VecR project_affine(const VecR& x, const std::vector<VecR>& basis, const VecR& origin);

/// Maximum of <dir, x> over conv(points) + cone(rays).
struct LinMaxResult {
  bool unbounded = false;
  Rat value = 0;       // meaningful only when !unbounded
  int argmax_point = -1;  // index into points, when bounded
};
LinMaxResult linear_max(const VecR& dir, const std::vector<VecR>& points,
                        const std::vector<VecR>& rays);

}  // namespace pcone
