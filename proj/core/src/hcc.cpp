#include "spaceform/hcc.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "spaceform/errors.hpp"

namespace spaceform {

std::vector<DegreeCheck> binom_bound_check(std::size_t k, const BettiVector& betti) {
  std::vector<DegreeCheck> out;
  for (std::size_t j = 0; j < betti.values.size(); ++j) {
    DegreeCheck c;
    c.j = j;
    c.binom = binomial(k, j);
    c.betti_j = betti.values[j];
    c.pass = c.binom <= c.betti_j;
    out.push_back(std::move(c));
  }
  return out;
}

SumCheck sum_bound_check(std::size_t k, const BettiVector& betti) {
  SumCheck s;
  mpz_ui_pow_ui(s.bound.get_mpz_t(), 2, k);
  s.total = betti.sum();
  s.pass = s.bound <= s.total;
  return s;
}

std::string to_string(TriState t) {
  switch (t) {
    case TriState::pass: return "pass";
    case TriState::fail: return "fail";
    default: return "not-applicable";
  }
}

bool HccVerdict::overall() const {
  for (const DegreeCheck& c : per_degree) {
    if (!c.pass) return false;
  }
  return sum_bound.pass && homologically_injective != TriState::fail && maximal;
}

namespace {

// H1 seen as Z^(r+t) with the torsion coordinates understood modulo their
// divisors; elements are reached from abelianized exponent vectors.
struct H1Coords {
  const HomologyH1& h;

  IntVec of_exponents(const IntVec& exps) const {
    IntVec free = h.projection * exps;
    IntVec tors = h.torsion_projection * exps;
    IntVec out;
    out.reserve(free.size() + tors.size());
    for (const Int& x : free) out.push_back(x);
    for (const Int& x : tors) out.push_back(x);
    return out;
  }

  IntVec of_symbol(std::size_t sym, std::size_t gens) const {
    IntVec e(gens, Int(0));
    e[sym] = 1;
    return of_exponents(e);
  }
};

// Finite quotient Z^c / rowspace(M), addressed by canonical labels.
struct FiniteQuotient {
  IntMatrix u;       // from snf(M^T)
  IntVec moduli;     // diagonal divisors, all nonzero
  Int order;

  explicit FiniteQuotient(const IntMatrix& m) {
    SmithDecomposition s = snf(m.transposed());
    const std::size_t c = m.cols();
    if (s.rank() != c) {
      throw InternalInconsistencyError("FiniteQuotient: quotient is infinite");
    }
    u = s.u;
    order = 1;
    for (std::size_t i = 0; i < c; ++i) {
      moduli.push_back(s.d(i, i));
      order *= s.d(i, i);
    }
  }

  std::string label(const IntVec& x) const {
    IntVec y = u * x;
    std::string key;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (moduli[i] == 1) continue;
      Int m;
      mpz_fdiv_r(m.get_mpz_t(), y[i].get_mpz_t(), moduli[i].get_mpz_t());
      key += m.get_str();
      key += ",";
    }
    return key;
  }
};

Word concat(const Word& a, const Word& b) {
  Word w = a;
  for (const auto& s : b.syms) w.syms.push_back(s);
  return w;
}

// Sparse row: (column, value) pairs sorted by column, no zero values.
using SparseRow = std::vector<std::pair<std::size_t, Int>>;

// Streaming row-echelon accumulator over Z, keyed by pivot column. Rows
// stay sparse; no above-pivot normalization (the kernel computation only
// needs echelon shape).
struct EchelonAccumulator {
  std::map<std::size_t, SparseRow> rows;  // pivot column -> row

  // dst += c * src, merging sorted sparse rows
  static void axpy(SparseRow& dst, const Int& c, const SparseRow& src) {
    SparseRow out;
    out.reserve(dst.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
      if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
        out.push_back(std::move(dst[i++]));
      } else if (i == dst.size() || src[j].first < dst[i].first) {
        Int v = c * src[j].second;
        if (v != 0) out.emplace_back(src[j].first, std::move(v));
        ++j;
      } else {
        Int v = dst[i].second + c * src[j].second;
        if (v != 0) out.emplace_back(dst[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    dst = std::move(out);
  }

  void insert(SparseRow row) {
    while (!row.empty()) {
      std::size_t lead = row.front().first;
      auto it = rows.find(lead);
      if (it == rows.end()) {
        if (row.front().second < 0) {
          for (auto& [col, val] : row) val = -val;
        }
        rows.emplace(lead, std::move(row));
        return;
      }
      const Int& a = it->second.front().second;  // positive pivot
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), row.front().second.get_mpz_t(), a.get_mpz_t());
      if (q != 0) axpy(row, -q, it->second);
      if (!row.empty() && row.front().first == lead) {
        // remainder in [1, a): swap in as the smaller pivot and continue
        std::swap(row, it->second);
      }
    }
  }

  std::size_t rank() const { return rows.size(); }

  /// Saturated basis of {x in Z^cols : R x = 0}: the rational kernel by
  /// back-substitution over the free columns, cleared of denominators and
  /// saturated. Doubles as a projection of the cokernel onto its free part.
  LatticeBasis kernel(std::size_t cols) const {
    std::vector<bool> is_pivot(cols, false);
    for (const auto& [p, row] : rows) is_pivot[p] = true;
    std::vector<IntVec> gens;
    for (std::size_t f = 0; f < cols; ++f) {
      if (is_pivot[f]) continue;
      std::map<std::size_t, Rat> x;
      x[f] = Rat(1);
      for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        const auto& [p, row] = *it;
        Rat s(0);
        for (const auto& [col, val] : row) {
          if (col == p) continue;
          auto xv = x.find(col);
          if (xv != x.end()) s += Rat(val) * xv->second;
        }
        if (s != 0) x[p] = -s / Rat(row.front().second);
      }
      Int den(1);
      for (const auto& [col, val] : x) den = lcm(den, Int(val.get_den()));
      IntVec v(cols, Int(0));
      for (const auto& [col, val] : x) v[col] = to_int(Rat(den) * val);
      gens.push_back(std::move(v));
    }
    return saturate(gens, cols);
  }
};

}  // namespace

SplittingSubgroup splitting_subgroup(const CrystalGroup& g, const HolonomyGroup&,
                                     const Presentation& pres, const HomologyH1& h,
                                     const LatticeBasis& torus_lattice) {
  const std::size_t k = torus_lattice.rank();
  const std::size_t r = h.free_rank;
  const std::size_t t = h.torsion_divisors.size();
  const std::size_t gens = pres.generator_count();

  if (image_rank_in_h1(h, torus_lattice) != k) {
    throw NotInjectiveError(
        "splitting_subgroup: the sublattice is not homologically injective (image rank " +
        std::to_string(image_rank_in_h1(h, torus_lattice)) + " < " + std::to_string(k) + ")");
  }

  H1Coords coords{h};

  // Full H1 images of the torus lattice basis, and their free parts.
  std::vector<IntVec> image_full, image_free;
  for (const IntVec& v : torus_lattice.vectors) {
    IntVec exps(gens, Int(0));
    for (std::size_t i = 0; i < v.size(); ++i) exps[i] = v[i];
    IntVec full = coords.of_exponents(exps);
    image_free.push_back(IntVec(full.begin(), full.begin() + r));
    image_full.push_back(std::move(full));
  }

  // Free complement of the saturation of the image.
  LatticeBasis sat = saturate(image_free, r);
  LatticeBasis comp = complement_of_saturated(sat);

  // H' = <images> + <complement>; the quotient H1/H' is presented by the
  // torsion relations together with those generators.
  const std::size_t qrows = t + k + comp.rank();
  IntMatrix mq(qrows, r + t);
  for (std::size_t i = 0; i < t; ++i) mq(i, r + i) = h.torsion_divisors[i];
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < r + t; ++j) mq(t + i, j) = image_full[i][j];
  }
  for (std::size_t i = 0; i < comp.rank(); ++i) {
    for (std::size_t j = 0; j < r; ++j) mq(t + k + i, j) = comp.vectors[i][j];
  }
  FiniteQuotient quotient(mq);

  // Breadth-first transversal over the cosets; tree edges yield trivial
  // Schreier generators.
  std::vector<IntVec> sym_coords;
  for (std::size_t s = 0; s < gens; ++s) sym_coords.push_back(coords.of_symbol(s, gens));

  struct Coset {
    IntVec coords;
    Word word;
  };
  std::vector<Coset> cosets;
  std::map<std::string, std::size_t> coset_index;
  std::map<std::pair<std::size_t, std::size_t>, bool> tree_pair;  // (coset, sym) -> trivial

  cosets.push_back({IntVec(r + t, Int(0)), Word{}});
  coset_index[quotient.label(cosets[0].coords)] = 0;

  for (std::size_t head = 0; head < cosets.size(); ++head) {
    for (std::size_t s = 0; s < gens; ++s) {
      for (int dir : {+1, -1}) {
        IntVec next = cosets[head].coords;
        for (std::size_t j = 0; j < r + t; ++j) {
          next[j] += dir > 0 ? sym_coords[s][j] : Int(-sym_coords[s][j]);
        }
        std::string key = quotient.label(next);
        if (coset_index.count(key)) continue;
        Word w = cosets[head].word;
        w.append(s, dir);
        std::size_t idx = cosets.size();
        coset_index[key] = idx;
        cosets.push_back({std::move(next), std::move(w)});
        if (dir > 0) {
          tree_pair[{head, s}] = true;
        } else {
          tree_pair[{idx, s}] = true;
        }
      }
    }
  }
  if (Int(static_cast<unsigned long>(cosets.size())) != quotient.order) {
    throw InternalInconsistencyError("splitting_subgroup: transversal misses cosets");
  }

  // Schreier generator table over nontrivial (coset, symbol) pairs.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> schreier_index;
  std::vector<std::pair<std::size_t, std::size_t>> schreier_pairs;
  for (std::size_t c = 0; c < cosets.size(); ++c) {
    for (std::size_t s = 0; s < gens; ++s) {
      if (tree_pair.count({c, s})) continue;
      schreier_index[{c, s}] = schreier_pairs.size();
      schreier_pairs.emplace_back(c, s);
    }
  }
  const std::size_t n_sub = schreier_pairs.size();

  auto coset_of = [&](const IntVec& x) {
    auto it = coset_index.find(quotient.label(x));
    if (it == coset_index.end()) {
      throw InternalInconsistencyError("splitting_subgroup: unknown coset label");
    }
    return it->second;
  };

  // Abelianized Reidemeister-Schreier rewrite of a word starting at the
  // given coset; the word must return to that coset.
  auto rewrite_row = [&](const Word& w, std::size_t start) {
    std::map<std::size_t, Int> acc;
    auto bump = [&acc](std::size_t col, int delta) {
      auto [it, inserted] = acc.emplace(col, delta);
      if (!inserted) {
        it->second += delta;
        if (it->second == 0) acc.erase(it);
      }
    };
    IntVec cur = cosets[start].coords;
    std::size_t cur_idx = start;
    for (const auto& [sym, exp] : w.syms) {
      long reps = exp < 0 ? -exp : exp;
      for (long i = 0; i < reps; ++i) {
        if (exp > 0) {
          auto it = schreier_index.find({cur_idx, sym});
          if (it != schreier_index.end()) bump(it->second, 1);
          cur = cur + sym_coords[sym];
          cur_idx = coset_of(cur);
        } else {
          cur = cur - sym_coords[sym];
          cur_idx = coset_of(cur);
          auto it = schreier_index.find({cur_idx, sym});
          if (it != schreier_index.end()) bump(it->second, -1);
        }
      }
    }
    if (cur_idx != start) {
      throw InternalInconsistencyError("splitting_subgroup: rewrite left the coset");
    }
    return SparseRow(acc.begin(), acc.end());
  };

  // Abelianization of the subgroup: every relator at every coset, with
  // duplicates dropped and short rows eliminated first to limit fill-in.
  // The kernel of the relation rows is a projection of the abelianization
  // onto its free part.
  std::vector<SparseRow> rel_rows;
  {
    std::set<SparseRow> seen;
    for (std::size_t c = 0; c < cosets.size(); ++c) {
      for (const Word& rel : pres.relators) {
        SparseRow row = rewrite_row(rel, c);
        if (row.empty()) continue;
        if (seen.insert(row).second) rel_rows.push_back(std::move(row));
      }
    }
  }
  std::stable_sort(rel_rows.begin(), rel_rows.end(),
                   [](const SparseRow& a, const SparseRow& b) { return a.size() < b.size(); });
  EchelonAccumulator relations;
  for (SparseRow& row : rel_rows) relations.insert(std::move(row));
  LatticeBasis free_proj = relations.kernel(n_sub);
  const std::size_t sub_free = free_proj.rank();
  IntMatrix sub_projection = free_proj.as_rows();

  // The torus lattice must land in the subgroup's abelianization as a
  // direct Z^k summand: the matrix of free-part images has all elementary
  // divisors equal to 1.
  IntMatrix images(k, sub_free);
  for (std::size_t i = 0; i < k; ++i) {
    IntVec lat(g.dim);
    for (std::size_t j = 0; j < g.dim; ++j) lat[j] = torus_lattice.vectors[i][j];
    IntVec row(n_sub, Int(0));
    for (const auto& [col, val] : rewrite_row(lattice_word(lat), 0)) row[col] = val;
    IntVec proj = sub_projection * row;
    for (std::size_t j = 0; j < sub_free; ++j) images(i, j) = proj[j];
  }
  SmithDecomposition si = snf(images);
  bool split_ok = si.rank() == k;
  for (const Int& d : si.divisors()) {
    if (d != 1) split_ok = false;
  }

  SplittingSubgroup out;
  out.index = quotient.order;
  out.verified_direct_product = split_ok;
  std::vector<std::string> names = pres.generator_names();
  for (const auto& [c, sym] : schreier_pairs) {
    // t_c * s * t_{c s}^-1
    IntVec nxt = cosets[c].coords + sym_coords[sym];
    std::size_t target = coset_of(nxt);
    Word w = cosets[c].word;
    w.append(sym, 1);
    out.generators.push_back(concat(w, cosets[target].word.inverse()));
    out.generator_words.push_back(out.generators.back().to_string(names));
  }
  return out;
}

bool FullReport::all_pass() const {
  if (!validation.all_pass()) return false;
  if (action && !action->all_checks_pass()) return false;
  if (hcc && !hcc->overall()) return false;
  if (splitting && !splitting->verified_direct_product) return false;
  for (const CheckResult& c : consistency) {
    if (!c.pass) return false;
  }
  return true;
}

FullReport full_report(const CrystalGroup& g, const std::string& name) {
  FullReport rep;
  rep.group_name = name;
  rep.dim = g.dim;
  rep.validation = validate(g);
  if (!rep.validation.all_pass()) return rep;

  HolonomyGroup hol = generate_holonomy(g);
  Presentation pres = presentation(g, hol);
  HomologyH1 h = h1(g, hol, pres);
  BettiVector b = betti(g, hol);
  std::size_t cr = center_rank(g, hol);
  const std::size_t k = h.free_rank;

  rep.homology = h;
  rep.betti_vector = b;
  rep.center_rank_value = cr;
  rep.k = k;
  rep.action = torus_action(g, hol, pres, h);

  HccVerdict verdict;
  verdict.k = k;
  verdict.betti = b;
  verdict.per_degree = binom_bound_check(k, b);
  verdict.sum_bound = sum_bound_check(k, b);
  if (k == 0) {
    verdict.homologically_injective = TriState::not_applicable;
  } else {
    bool hi = rep.action->certificate && rep.action->certificate->checks.homological_injectivity;
    verdict.homologically_injective = hi ? TriState::pass : TriState::fail;
  }
  verdict.maximal = k == cr;
  rep.hcc = verdict;

  if (k >= 1 && rep.action->certificate &&
      rep.action->certificate->checks.homological_injectivity) {
    rep.splitting =
        splitting_subgroup(g, hol, pres, h, rep.action->certificate->tilde_B_lattice);
  }

  // Cross-checks between independently computed invariants.
  {
    bool ok = b.values[1] == Int(static_cast<unsigned long>(k));
    rep.consistency.push_back(
        {"b1_equals_h1_free_rank", ok,
         ok ? "" : "b1 = " + b.values[1].get_str() + ", free rank = " + std::to_string(k)});
  }
  {
    Int chi(0);
    for (std::size_t j = 0; j < b.values.size(); ++j) {
      if (j % 2 == 0) chi += b.values[j];
      else chi -= b.values[j];
    }
    rep.consistency.push_back({"euler_characteristic_zero", chi == 0,
                               chi == 0 ? "" : "chi = " + chi.get_str()});
  }
  {
    bool orient = hol.orientable();
    Int expect = orient ? 1 : 0;
    bool ok = b.values[g.dim] == expect;
    rep.consistency.push_back({"top_betti_matches_orientability", ok,
                               ok ? "" : "b_n = " + b.values[g.dim].get_str()});
    if (orient) {
      bool dual = true;
      for (std::size_t j = 0; j <= g.dim; ++j) {
        if (b.values[j] != b.values[g.dim - j]) dual = false;
      }
      rep.consistency.push_back({"poincare_duality", dual, dual ? "" : b.to_string()});
    }
  }
  return rep;
}

}  // namespace spaceform
