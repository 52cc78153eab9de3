#include "spaceform/topology.hpp"

#include <sstream>

#include "spaceform/errors.hpp"

namespace spaceform {

IntMatrix HomologyH1::lattice_projection() const {
  IntMatrix p(free_rank, n_lattice);
  for (std::size_t i = 0; i < free_rank; ++i)
    for (std::size_t j = 0; j < n_lattice; ++j) p(i, j) = projection(i, j);
  return p;
}

std::string HomologyH1::to_string() const {
  std::ostringstream os;
  if (free_rank == 0 && torsion_divisors.empty()) return "0";
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const Int& d : torsion_divisors) {
    if (!first) os << " + ";
    os << "Z/" << d.get_str();
    first = false;
  }
  return os.str();
}

Int BettiVector::sum() const {
  Int s = 0;
  for (const Int& b : values) s += b;
  return s;
}

std::string BettiVector::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ", ";
    os << values[i].get_str();
  }
  os << ")";
  return os.str();
}

HomologyH1 h1(const CrystalGroup&, const HolonomyGroup&, const Presentation& pres) {
  const std::size_t gens = pres.generator_count();
  // Cokernel of the transposed relator matrix: y = U x puts the torsion
  // coordinates first (nonzero divisors) and the free coordinates last.
  // Only the row transform is needed.
  SmithDecomposition s = snf_row_transform(pres.abelianized().transposed());
  const std::size_t rank = s.rank();

  HomologyH1 h;
  h.n_lattice = pres.n_lattice;
  h.n_holonomy = pres.n_holonomy;
  h.free_rank = gens - rank;

  std::vector<std::size_t> torsion_rows;
  for (std::size_t i = 0; i < rank; ++i) {
    if (s.d(i, i) > 1) {
      h.torsion_divisors.push_back(s.d(i, i));
      torsion_rows.push_back(i);
    }
  }
  h.projection = IntMatrix(h.free_rank, gens);
  for (std::size_t i = 0; i < h.free_rank; ++i) {
    for (std::size_t j = 0; j < gens; ++j) h.projection(i, j) = s.u(rank + i, j);
  }
  h.torsion_projection = IntMatrix(torsion_rows.size(), gens);
  for (std::size_t i = 0; i < torsion_rows.size(); ++i) {
    for (std::size_t j = 0; j < gens; ++j) h.torsion_projection(i, j) = s.u(torsion_rows[i], j);
  }
  return h;
}

HomologyH1 h1(const CrystalGroup& g) {
  HolonomyGroup hol = generate_holonomy(g);
  return h1(g, hol, presentation(g, hol));
}

BettiVector betti(const CrystalGroup& g, const HolonomyGroup& hol) {
  const std::size_t n = g.dim;
  RatVec acc(n + 1, Rat(0));
  for (const IntMatrix& a : hol.elements) {
    IntVec c = exterior_trace_poly(a);
    for (std::size_t j = 0; j <= n; ++j) acc[j] += Rat(c[j]);
  }
  Rat inv_order = make_rat(1, Int(static_cast<unsigned long>(hol.order())));
  BettiVector b;
  b.values.resize(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    Rat avg = acc[j] * inv_order;
    if (!is_integral(avg)) {
      throw NonIntegralAverageError("betti: average of degree " + std::to_string(j) +
                                    " characters is " + rat_to_string(avg));
    }
    b.values[j] = to_int(avg);
  }
  return b;
}

BettiVector betti(const CrystalGroup& g) { return betti(g, generate_holonomy(g)); }

Int betti_oracle(const CrystalGroup& g, const HolonomyGroup& hol, std::size_t j) {
  const std::size_t n = g.dim;
  if (n > 6) {
    throw DimensionTooLargeError("betti_oracle: wedge construction guarded to n <= 6");
  }
  if (j > n) return 0;
  auto dim = subsets_lex(n, j).size();
  RatMatrix proj(dim, dim);
  for (const IntMatrix& a : hol.elements) {
    IntMatrix w = wedge_power(a, j);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) proj(r, c) += Rat(w(r, c));
  }
  Rat inv_order = make_rat(1, Int(static_cast<unsigned long>(hol.order())));
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) proj(r, c) *= inv_order;
  return Int(static_cast<unsigned long>(rank_rational(proj)));
}

std::size_t center_rank(const CrystalGroup&, const HolonomyGroup& hol) {
  return fixed_sublattice(hol.elements).rank();
}

std::size_t center_rank(const CrystalGroup& g) {
  return center_rank(g, generate_holonomy(g));
}

std::size_t image_rank_in_h1(const HomologyH1& h, const LatticeBasis& sub) {
  if (sub.ambient != h.n_lattice) {
    throw std::invalid_argument("image_rank_in_h1: ambient dimension mismatch");
  }
  if (sub.rank() == 0 || h.free_rank == 0) return 0;
  return rank_rational(to_rat(h.lattice_projection() * sub.as_cols()));
}

}  // namespace spaceform
