#pragma once

#include <optional>

#include "spaceform/calabi.hpp"

namespace spaceform {

struct DegreeCheck {
  std::size_t j = 0;
  Int binom;      // C(k, j)
  Int betti_j;    // b_j
  bool pass = false;
};

/// C(k,j) <= b_j for every degree j = 0..n (C(k,j) = 0 for j > k).
std::vector<DegreeCheck> binom_bound_check(std::size_t k, const BettiVector& betti);

struct SumCheck {
  Int bound;  // 2^k
  Int total;  // sum of b_j
  bool pass = false;
};

/// 2^k <= sum_j b_j.
SumCheck sum_bound_check(std::size_t k, const BettiVector& betti);

enum class TriState { pass, fail, not_applicable };
std::string to_string(TriState t);

struct HccVerdict {
  std::size_t k = 0;
  BettiVector betti;
  std::vector<DegreeCheck> per_degree;
  SumCheck sum_bound;
  TriState homologically_injective = TriState::not_applicable;
  bool maximal = false;

  bool overall() const;
};

/// Finite-index subgroup of the group over which the central extension by
/// the torus lattice splits as a direct product: the preimage of
/// (image of the torus lattice) (+) (free complement) in H1. Generator
/// words are Schreier generators over the H1-coset transversal.
struct SplittingSubgroup {
  Int index;
  std::vector<Word> generators;
  std::vector<std::string> generator_words;  // rendered against the presentation
  bool verified_direct_product = false;
};

/// Throws NotInjectiveError when the image of torus_lattice in the free
/// part of H1 has rank below torus_lattice's own rank.
SplittingSubgroup splitting_subgroup(const CrystalGroup& g, const HolonomyGroup& hol,
                                     const Presentation& pres, const HomologyH1& h,
                                     const LatticeBasis& torus_lattice);

/// Aggregated invariants + certificate + verdict for one group.
struct FullReport {
  std::string group_name;
  std::size_t dim = 0;
  ValidationReport validation;

  // Present only when validation passes.
  std::optional<HomologyH1> homology;
  std::optional<BettiVector> betti_vector;
  std::optional<std::size_t> center_rank_value;
  std::optional<std::size_t> k;
  std::optional<TorusActionResult> action;
  std::optional<HccVerdict> hcc;
  std::optional<SplittingSubgroup> splitting;
  std::vector<CheckResult> consistency;

  bool all_pass() const;
};

FullReport full_report(const CrystalGroup& g, const std::string& name);

}  // namespace spaceform
