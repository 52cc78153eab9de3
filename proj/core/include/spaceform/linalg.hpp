#pragma once

#include <optional>
#include <vector>

#include "spaceform/matrix.hpp"

namespace spaceform {

/// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ... | dr,
/// all diagonal entries >= 0.
struct SmithDecomposition {
  IntMatrix u;  // rows(M) x rows(M)
  IntMatrix d;  // rows(M) x cols(M)
  IntMatrix v;  // cols(M) x cols(M)

  std::size_t rank() const;
  /// Nonzero diagonal entries d1 | d2 | ...
  IntVec divisors() const;
};

/// Basis of a sublattice of Z^ambient, stored as row vectors in row-style
/// Hermite normal form. Vectors are linearly independent over Q.
struct LatticeBasis {
  std::size_t ambient = 0;
  std::vector<IntVec> vectors;

  std::size_t rank() const { return vectors.size(); }
  /// rank x ambient matrix with the basis vectors as rows.
  IntMatrix as_rows() const;
  /// ambient x rank matrix with the basis vectors as columns.
  IntMatrix as_cols() const;
};

/// Smith normal form. Pivot rule: smallest absolute nonzero entry, ties in
/// row-major order; diagonal made nonnegative at the end. Deterministic.
SmithDecomposition snf(const IntMatrix& m);

/// Same elimination tracking only the row transform; v is left empty.
/// Much cheaper when the input is very wide and the column transform is
/// not needed (cokernel computations).
SmithDecomposition snf_row_transform(const IntMatrix& m);

/// Row-style Hermite normal form of the row space: pivots positive, strictly
/// increasing pivot columns, entries above each pivot reduced into [0, pivot).
/// Zero rows are dropped.
IntMatrix hermite_rows(const IntMatrix& m);

/// Saturated kernel {x in Z^cols : M x = 0}, HNF-normalized.
LatticeBasis kernel_lattice(const IntMatrix& m);

/// Some integer solution of M x = b, if one exists.
std::optional<IntVec> solve_integer(const IntMatrix& m, const IntVec& b);

struct RationalSolution {
  RatVec particular;
  std::vector<RatVec> kernel;  // basis of the homogeneous solution space
};

/// Exact solution set of M x = b over Q, or nullopt if inconsistent.
/// The particular solution sets all free variables to zero (fixed
/// elimination order).
std::optional<RationalSolution> solve_rational(const RatMatrix& m, const RatVec& b);

/// Complement B with Z^n = sub (+) B, where sub must be saturated.
/// B maps injectively under map_to_quotient onto the image lattice.
/// Throws InternalInconsistencyError if sub is not saturated or the image
/// of the complement is rank-deficient.
LatticeBasis complement_in_lattice(const LatticeBasis& sub, const IntMatrix& map_to_quotient);

/// Complement of an arbitrary saturated sublattice (no quotient-map check).
LatticeBasis complement_of_saturated(const LatticeBasis& sub);

/// {x in Z^n : A x = x for every generator A}, saturated. Generators must
/// be square of equal size with determinant +-1.
LatticeBasis fixed_sublattice(const std::vector<IntMatrix>& generators);

/// Coefficients (c0..cn) of det(I + tA); cj = trace of the j-th exterior
/// power of A. Computed from power sums via Newton's identities.
IntVec exterior_trace_poly(const IntMatrix& a);
RatVec exterior_trace_poly(const RatMatrix& a);

/// Exact determinant (fraction-free Bareiss elimination).
Int determinant(const IntMatrix& m);

/// Inverse of a matrix with determinant +-1; throws if not unimodular.
IntMatrix inverse_unimodular(const IntMatrix& m);

/// Exact inverse over Q; throws std::invalid_argument if singular.
RatMatrix inverse_rational(const RatMatrix& m);

std::size_t rank_rational(const RatMatrix& m);
inline std::size_t rank_integer(const IntMatrix& m) { return rank_rational(to_rat(m)); }

/// j-th exterior power on the lex-ordered wedge basis of j-subsets;
/// entry (S, T) = det of the (S, T) minor. C(n,j)-dimensional.
IntMatrix wedge_power(const IntMatrix& a, std::size_t j);

/// All j-element subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets_lex(std::size_t n, std::size_t j);

/// Saturation (L (x) Q) intersect Z^n of the span of the given rows.
LatticeBasis saturate(const std::vector<IntVec>& rows, std::size_t ambient);

LatticeBasis lattice_from_rows(const IntMatrix& rows, std::size_t ambient);

}  // namespace spaceform
