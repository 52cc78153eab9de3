#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spaceform/affine.hpp"
#include "spaceform/linalg.hpp"

namespace spaceform {

/// A crystallographic group given by the standard lattice Z^n together
/// with a finite set of holonomy generators in GL(n,Z) and one rational
/// translation vector per generator. The group sits in E(n) as
/// < Z^n, (A_1, v_1), ..., (A_m, v_m) >.
struct CrystalGroup {
  std::size_t dim = 0;
  std::vector<IntMatrix> holonomy_gens;
  std::vector<RatVec> vectors;

  AffineElement generator(std::size_t i) const {
    return {to_rat(holonomy_gens[i]), vectors[i]};
  }
};

inline constexpr std::size_t kDefaultClosureBound = 1024;

/// Closure of the holonomy generators with multiplication table and one
/// representative translation per element, reduced to [0,1)^n. Element 0
/// is the identity; the order is breadth-first over right multiplication
/// by the generators.
struct HolonomyGroup {
  std::size_t dim = 0;
  std::vector<IntMatrix> elements;
  std::vector<RatVec> rep_vectors;
  std::vector<std::vector<std::size_t>> table;
  std::vector<std::size_t> generator_index;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t order() const { return elements.size(); }
  std::size_t index_of(const IntMatrix& m) const;
  std::size_t product(std::size_t g, std::size_t h) const { return table[g][h]; }
  std::size_t element_order(std::size_t i) const;
  /// Coset representative (A_i, v_i) as an affine element.
  AffineElement representative(std::size_t i) const;
  bool orientable() const;
};

/// Throws ClosureBoundError if the closure exceeds the bound.
HolonomyGroup generate_holonomy(const CrystalGroup& g, std::size_t bound = kDefaultClosureBound);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string witness;  // empty when the check passes
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  const CheckResult* find(const std::string& name) const;
};

/// Runs the Bieberbach conditions: well-formedness, lattice invariance,
/// holonomy finiteness, vector-system consistency mod Z^n, torsion
/// freeness. Failures are report entries with witnesses, not exceptions.
ValidationReport validate(const CrystalGroup& g, std::size_t bound = kDefaultClosureBound);

/// nullopt on pass; otherwise a torsion element (v + lambda, A).
std::optional<AffineElement> torsion_free_check(const CrystalGroup& g, const HolonomyGroup& hol);

/// Word in presentation generators as (symbol, exponent) pairs.
/// Symbols 0..n-1 are the lattice translations e_1..e_n; symbol n + j is
/// the (j+1)-th holonomy element (identity carries no symbol).
struct Word {
  std::vector<std::pair<std::size_t, long>> syms;

  void append(std::size_t sym, long exp) {
    if (exp == 0) return;
    if (!syms.empty() && syms.back().first == sym) {
      syms.back().second += exp;
      if (syms.back().second == 0) syms.pop_back();
      return;
    }
    syms.emplace_back(sym, exp);
  }
  Word inverse() const;
  std::string to_string(const std::vector<std::string>& names) const;
};

struct Presentation {
  std::size_t n_lattice = 0;
  std::size_t n_holonomy = 0;
  std::vector<Word> relators;

  std::size_t generator_count() const { return n_lattice + n_holonomy; }
  std::vector<std::string> generator_names() const;
  /// Exponent-sum matrix, one row per relator.
  IntMatrix abelianized() const;
};

/// Finite presentation of the group: lattice symbols, one symbol per
/// nontrivial holonomy element, commutator + conjugation + product
/// relators. Every relator is verified to evaluate to the identity in
/// E(n); InternalInconsistencyError otherwise.
Presentation presentation(const CrystalGroup& g, const HolonomyGroup& hol);

/// Tautological evaluation of a word: e_i |-> (I, e_i), g_j |-> coset
/// representative.
AffineElement evaluate_word(const CrystalGroup& g, const HolonomyGroup& hol, const Word& w);

/// Word for a pure lattice translation.
Word lattice_word(const IntVec& v);

/// Real Bott manifold group of a strictly upper-triangular binary matrix.
/// Generators (D_i, e_i/2) are renormalized onto the full translation
/// lattice of the group so the result uses the standard Z^n model.
/// Throws BadMatrixError on malformed input.
CrystalGroup from_bott_matrix(const IntMatrix& a);

/// True iff elem = (lattice translation) * (coset representative).
bool element_in_group(const CrystalGroup& g, const HolonomyGroup& hol, const AffineElement& elem);

/// Group file format:
///   dim n
///   gen        (one block per generator)
///   <n rows of n integers>
///   vec <n rationals "p/q" or "p">
/// Blank lines and '#' comments are ignored. Throws ParseError.
CrystalGroup parse_group(const std::string& text);
std::string format_group(const CrystalGroup& g);

}  // namespace spaceform
