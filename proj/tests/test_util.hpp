#pragma once

#include <cstdint>
#include <initializer_list>

#include "spaceform/crystal.hpp"
#include "spaceform/linalg.hpp"

namespace testutil {

using spaceform::Int;
using spaceform::IntMatrix;
using spaceform::IntVec;
using spaceform::Rat;
using spaceform::RatVec;

// Deterministic 64-bit LCG so property tests are reproducible.
struct Lcg {
  std::uint64_t state;
  explicit Lcg(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state >> 16;
  }
  // uniform in [lo, hi]
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

inline IntMatrix mat(std::size_t rows, std::size_t cols, std::initializer_list<long> entries) {
  IntMatrix m(rows, cols);
  auto it = entries.begin();
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Int(*it++);
  return m;
}

inline IntMatrix sqmat(std::size_t n, std::initializer_list<long> entries) {
  return mat(n, n, entries);
}

inline IntVec ivec(std::initializer_list<long> entries) {
  IntVec v;
  for (long e : entries) v.push_back(Int(e));
  return v;
}

inline RatVec rvec(std::initializer_list<const char*> entries) {
  RatVec v;
  for (const char* e : entries) v.push_back(*spaceform::parse_rational(e));
  return v;
}

inline IntMatrix random_matrix(Lcg& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Int(rng.range(lo, hi));
  return m;
}

inline spaceform::CrystalGroup group_of(std::size_t dim,
                                        std::initializer_list<IntMatrix> gens,
                                        std::initializer_list<RatVec> vecs) {
  spaceform::CrystalGroup g;
  g.dim = dim;
  for (const IntMatrix& m : gens) g.holonomy_gens.push_back(m);
  for (const RatVec& v : vecs) g.vectors.push_back(v);
  return g;
}

/// Product group acting block-diagonally on the direct sum of the two
/// coordinate spaces; handy source of higher-dimensional valid groups.
inline spaceform::CrystalGroup direct_sum(const spaceform::CrystalGroup& a,
                                          const spaceform::CrystalGroup& b) {
  spaceform::CrystalGroup g;
  g.dim = a.dim + b.dim;
  auto embed = [&](const IntMatrix& m, bool first) {
    IntMatrix out = IntMatrix::identity(g.dim);
    std::size_t off = first ? 0 : a.dim;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out(off + i, off + j) = m(i, j);
    return out;
  };
  for (std::size_t i = 0; i < a.holonomy_gens.size(); ++i) {
    g.holonomy_gens.push_back(embed(a.holonomy_gens[i], true));
    RatVec v(g.dim, Rat(0));
    for (std::size_t j = 0; j < a.dim; ++j) v[j] = a.vectors[i][j];
    g.vectors.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < b.holonomy_gens.size(); ++i) {
    g.holonomy_gens.push_back(embed(b.holonomy_gens[i], false));
    RatVec v(g.dim, Rat(0));
    for (std::size_t j = 0; j < b.dim; ++j) v[a.dim + j] = b.vectors[i][j];
    g.vectors.push_back(std::move(v));
  }
  return g;
}

}  // namespace testutil
