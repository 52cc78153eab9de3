#pragma once

#include <optional>

#include "spaceform/topology.hpp"

namespace spaceform {

/// Adapted splitting Z^n = Z^(n-k) (+) B where Z^(n-k) is the saturated
/// kernel of nu restricted to the lattice and B maps injectively onto the
/// finite-index image lattice A <= Z^k.
struct LatticeSplitting {
  std::size_t n = 0;
  std::size_t k = 0;
  LatticeBasis kernel;      // n-k rows
  LatticeBasis complement;  // k rows (the B-basis b_1..b_k)
  IntMatrix image_basis;    // k x k, column j = nu(b_j); spans A
  Int image_index;          // [Z^k : A]
  IntMatrix change_of_basis;        // T: kernel columns first, complement last
  IntMatrix change_of_basis_inv;    // T^-1

  /// Adapted coordinates (kernel part, complement part) of a lattice vector.
  IntVec adapted(const IntVec& x) const;
};

LatticeSplitting split_lattice(const CrystalGroup& g, const HomologyH1& h);

/// Conjugation of each holonomy element restricted to the kernel lattice,
/// expressed in the adapted basis. Verifies the block shape
/// [[phibar, *], [0, I_k]]; BlockStructureViolationError otherwise.
/// Index 0 is the identity element.
std::vector<IntMatrix> conjugation_blocks(const CrystalGroup& g, const HolonomyGroup& hol,
                                          const LatticeSplitting& split);

/// The block affine representation rho on the presentation generators:
/// linear part diag(phibar(gen), I_k), translation (top, bottom) with
/// top in Q^(n-k) and bottom = nu(gen) in Z^k.
struct BlockRepresentation {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<IntMatrix> phibar;  // per presentation generator
  std::vector<RatVec> top;
  std::vector<IntVec> bottom;

  std::size_t generator_count() const { return phibar.size(); }
  AffineElement image(std::size_t sym) const;
  AffineElement image_word(const Word& w) const;
};

/// The translation cochain: lambda on the B-basis (extended additively
/// over B) and one value per nontrivial holonomy symbol.
struct LambdaSolution {
  RatMatrix on_complement;            // (n-k) x k, column j = lambda(b_j)
  std::vector<RatVec> on_holonomy;    // per holonomy symbol
};

/// Solves the relator-induced linear system for lambda over Q and builds
/// rho. Existence is guaranteed for validated Bieberbach input; a failed
/// solve raises NoSolutionError.
std::pair<LambdaSolution, BlockRepresentation> solve_lambda(const CrystalGroup& g,
                                                            const HolonomyGroup& hol,
                                                            const Presentation& pres,
                                                            const HomologyH1& h,
                                                            const LatticeSplitting& split,
                                                            const std::vector<IntMatrix>& blocks);

/// tilde B = {(-ell lambda(b), ell b)}: lattice elements of the group whose
/// rho-images are pure translations in the last k coordinates.
struct TildeB {
  Int ell;
  std::vector<AffineElement> gens;        // pure lattice translations, original coordinates
  LatticeBasis lattice_part;              // span of the translation vectors
  std::vector<AffineElement> rho_images;  // adapted coordinates
};

TildeB build_tilde_B(const LatticeSplitting& split, const LambdaSolution& lambda,
                     const BlockRepresentation& rho);

struct CheckOutcome {
  bool pass = false;
  std::string witness;
};

/// Every symbolic translation in 0 x R^k must commute with every
/// rho-generator, checked by exact composition both ways.
CheckOutcome centralizer_check(const std::vector<AffineElement>& images, std::size_t k);
CheckOutcome centralizer_check(const BlockRepresentation& rho);

/// The k bottom translation vectors of rho(tilde B) must span Q^k.
bool cocompactness_check(const BlockRepresentation& rho, const TildeB& tb);

struct CertificateChecks {
  bool rho_homomorphism = false;
  bool rho_faithful_sample = false;
  bool tilde_B_translations = false;
  bool centralizer = false;
  bool cocompact = false;
  bool homological_injectivity = false;

  bool all() const {
    return rho_homomorphism && rho_faithful_sample && tilde_B_translations && centralizer &&
           cocompact && homological_injectivity;
  }
};

struct TorusActionCertificate {
  std::size_t k = 0;
  LatticeSplitting splitting;
  BlockRepresentation rho;
  LambdaSolution lambda;
  Int ell;
  std::vector<AffineElement> tilde_B;
  LatticeBasis tilde_B_lattice;
  CertificateChecks checks;
  std::string first_failure;  // empty when all checks pass
};

struct TorusActionResult {
  enum class Status { certified, rank_zero };
  Status status = Status::rank_zero;
  std::optional<TorusActionCertificate> certificate;

  bool all_checks_pass() const {
    return status == Status::rank_zero || (certificate && certificate->checks.all());
  }
};

/// Full pipeline: h1 -> splitting -> blocks -> lambda -> tilde B -> checks.
/// Assumes the group has been validated. k = 0 yields the rank_zero status
/// rather than an error.
TorusActionResult torus_action(const CrystalGroup& g);
TorusActionResult torus_action(const CrystalGroup& g, const HolonomyGroup& hol,
                               const Presentation& pres, const HomologyH1& h);

}  // namespace spaceform
