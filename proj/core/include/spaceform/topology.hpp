#pragma once

#include "spaceform/crystal.hpp"

namespace spaceform {

/// First homology H1 = Z^free_rank (+) sum_i Z/d_i together with the
/// projection of the abelianization onto the free summand.
struct HomologyH1 {
  std::size_t free_rank = 0;
  IntVec torsion_divisors;  // d_1 | d_2 | ..., each >= 2

  // Projections from Z^(n_lattice + n_holonomy) (abelianized generator
  // exponents) onto the free part and onto the torsion coordinates
  // (the latter taken mod the matching divisor).
  IntMatrix projection;
  IntMatrix torsion_projection;
  std::size_t n_lattice = 0;
  std::size_t n_holonomy = 0;

  /// free_rank x n_lattice block: the map nu restricted to Z^n.
  IntMatrix lattice_projection() const;
  std::string to_string() const;
};

struct BettiVector {
  IntVec values;  // b_0..b_n

  Int sum() const;
  std::string to_string() const;
  bool operator==(const BettiVector& o) const { return values == o.values; }
};

HomologyH1 h1(const CrystalGroup& g, const HolonomyGroup& hol, const Presentation& pres);
HomologyH1 h1(const CrystalGroup& g);

/// b_j via character averaging: b_j = (1/|G|) sum_g c_j(A_g) where
/// det(I + t A_g) = sum c_j(g) t^j. Exact; throws NonIntegralAverageError
/// if an average fails to be integral (an internal bug).
BettiVector betti(const CrystalGroup& g, const HolonomyGroup& hol);
BettiVector betti(const CrystalGroup& g);

/// Independent brute-force route: rank of the averaging projector
/// (1/|G|) sum_g wedge^j(A_g) on the explicit C(n,j)-dimensional wedge
/// basis. Guarded to n <= 6 (DimensionTooLargeError).
Int betti_oracle(const CrystalGroup& g, const HolonomyGroup& hol, std::size_t j);

/// Rank of the holonomy-fixed sublattice: the translations commuting
/// with all of the group.
std::size_t center_rank(const CrystalGroup& g, const HolonomyGroup& hol);
std::size_t center_rank(const CrystalGroup& g);

/// Rank of the image of sub (a sublattice of Z^n acting by translations)
/// in the free part of H1.
std::size_t image_rank_in_h1(const HomologyH1& h, const LatticeBasis& sub);

}  // namespace spaceform
