#include "spaceform/crystal.hpp"

#include <map>
#include <sstream>

#include "spaceform/errors.hpp"

namespace spaceform {

std::size_t HolonomyGroup::index_of(const IntMatrix& m) const {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] == m) return i;
  }
  return npos;
}

std::size_t HolonomyGroup::element_order(std::size_t i) const {
  std::size_t acc = i, ord = 1;
  while (acc != 0) {
    acc = table[acc][i];
    ++ord;
    if (ord > order()) {
      throw InternalInconsistencyError("element_order: table is not a group table");
    }
  }
  return ord;
}

AffineElement HolonomyGroup::representative(std::size_t i) const {
  return {to_rat(elements[i]), rep_vectors[i]};
}

bool HolonomyGroup::orientable() const {
  for (const IntMatrix& m : elements) {
    if (determinant(m) != 1) return false;
  }
  return true;
}

HolonomyGroup generate_holonomy(const CrystalGroup& g, std::size_t bound) {
  const std::size_t n = g.dim;
  HolonomyGroup hol;
  hol.dim = n;
  hol.elements.push_back(IntMatrix::identity(n));
  hol.rep_vectors.push_back(RatVec(n, Rat(0)));

  std::map<std::string, std::size_t> index;
  index[hol.elements[0].to_string()] = 0;

  // Breadth-first closure under right multiplication by the generators;
  // representative vectors extend along discovery edges and are reduced
  // into [0,1)^n.
  for (std::size_t head = 0; head < hol.elements.size(); ++head) {
    for (std::size_t i = 0; i < g.holonomy_gens.size(); ++i) {
      IntMatrix prod = hol.elements[head] * g.holonomy_gens[i];
      std::string key = prod.to_string();
      if (index.count(key)) continue;
      RatVec v = to_rat(hol.elements[head]) * g.vectors[i] + hol.rep_vectors[head];
      index[key] = hol.elements.size();
      hol.elements.push_back(std::move(prod));
      hol.rep_vectors.push_back(reduce_mod_lattice(v));
      if (hol.elements.size() > bound) {
        throw ClosureBoundError("holonomy closure exceeds bound of " + std::to_string(bound) +
                                " elements; input is not crystallographic");
      }
    }
  }

  const std::size_t m = hol.elements.size();
  hol.table.assign(m, std::vector<std::size_t>(m, HolonomyGroup::npos));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      std::size_t p = hol.index_of(hol.elements[a] * hol.elements[b]);
      if (p == HolonomyGroup::npos) {
        throw InternalInconsistencyError("holonomy closure is not closed under products");
      }
      hol.table[a][b] = p;
    }
  }
  hol.generator_index.resize(g.holonomy_gens.size());
  for (std::size_t i = 0; i < g.holonomy_gens.size(); ++i) {
    hol.generator_index[i] = hol.index_of(g.holonomy_gens[i]);
  }
  return hol;
}

bool ValidationReport::all_pass() const {
  for (const CheckResult& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const CheckResult& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::optional<AffineElement> torsion_free_check(const CrystalGroup& g, const HolonomyGroup& hol) {
  const std::size_t n = g.dim;
  for (std::size_t idx = 1; idx < hol.order(); ++idx) {
    const IntMatrix& a = hol.elements[idx];
    std::size_t m = hol.element_order(idx);
    // N = I + A + ... + A^(m-1)
    IntMatrix nmat(n, n);
    IntMatrix power = IntMatrix::identity(n);
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) nmat(i, j) += power(i, j);
      power = power * a;
    }
    // (v + lambda, A)^m = (N(v + lambda), I); torsion exists iff
    // N lambda = -N v has an integer solution.
    RatVec rhs = -(to_rat(nmat) * hol.rep_vectors[idx]);
    if (!is_integral_vec(rhs)) continue;
    std::optional<IntVec> lambda = solve_integer(nmat, to_int_vec(rhs));
    if (lambda) {
      RatVec t = hol.rep_vectors[idx] + to_rat_vec(*lambda);
      return AffineElement{to_rat(a), t};
    }
  }
  return std::nullopt;
}

ValidationReport validate(const CrystalGroup& g, std::size_t bound) {
  ValidationReport report;

  // Shape sanity first; everything downstream assumes it.
  {
    bool ok = g.dim >= 1 && g.holonomy_gens.size() == g.vectors.size();
    std::string witness;
    for (std::size_t i = 0; ok && i < g.holonomy_gens.size(); ++i) {
      if (g.holonomy_gens[i].rows() != g.dim || g.holonomy_gens[i].cols() != g.dim ||
          g.vectors[i].size() != g.dim) {
        ok = false;
        witness = "generator " + std::to_string(i + 1) + " has wrong shape";
      }
    }
    if (!ok && witness.empty()) witness = "dim or generator/vector counts inconsistent";
    report.checks.push_back({"well_formed", ok, witness});
    if (!ok) return report;
  }

  {
    bool ok = true;
    std::string witness;
    for (std::size_t i = 0; i < g.holonomy_gens.size(); ++i) {
      Int d = determinant(g.holonomy_gens[i]);
      if (d != 1 && d != -1) {
        ok = false;
        witness = "generator " + std::to_string(i + 1) + " has determinant " + d.get_str();
        break;
      }
    }
    report.checks.push_back({"lattice_invariance", ok, witness});
    if (!ok) return report;
  }

  HolonomyGroup hol;
  {
    bool ok = true;
    std::string witness;
    try {
      hol = generate_holonomy(g, bound);
    } catch (const ClosureBoundError& e) {
      ok = false;
      witness = e.what();
    }
    report.checks.push_back({"holonomy_finiteness", ok, witness});
    if (!ok) return report;
  }

  {
    bool ok = true;
    std::string witness;
    for (std::size_t i = 0; ok && i < g.holonomy_gens.size(); ++i) {
      std::size_t e = hol.generator_index[i];
      if (!is_integral_vec(g.vectors[i] - hol.rep_vectors[e])) {
        ok = false;
        witness = "generator " + std::to_string(i + 1) + " vector " + to_string(g.vectors[i]) +
                  " disagrees with representative " + to_string(hol.rep_vectors[e]) +
                  " of its holonomy element";
      }
    }
    for (std::size_t a = 0; ok && a < hol.order(); ++a) {
      for (std::size_t b = 0; ok && b < hol.order(); ++b) {
        std::size_t p = hol.table[a][b];
        RatVec expected = to_rat(hol.elements[a]) * hol.rep_vectors[b] + hol.rep_vectors[a];
        if (!is_integral_vec(expected - hol.rep_vectors[p])) {
          ok = false;
          witness = "cocycle mismatch at pair (" + std::to_string(a) + ", " + std::to_string(b) +
                    "): v_gh = " + to_string(hol.rep_vectors[p]) + " but A_g v_h + v_g = " +
                    to_string(expected);
        }
      }
    }
    report.checks.push_back({"vector_system_consistency", ok, witness});
    if (!ok) return report;
  }

  {
    std::optional<AffineElement> witness = torsion_free_check(g, hol);
    report.checks.push_back({"torsion_freeness", !witness,
                             witness ? "torsion element " + witness->to_string() : ""});
  }

  return report;
}

Word Word::inverse() const {
  Word w;
  for (auto it = syms.rbegin(); it != syms.rend(); ++it) {
    w.syms.emplace_back(it->first, -it->second);
  }
  return w;
}

std::string Word::to_string(const std::vector<std::string>& names) const {
  if (syms.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [sym, exp] : syms) {
    if (!first) os << " ";
    first = false;
    os << names.at(sym);
    if (exp != 1) os << "^" << exp;
  }
  return os.str();
}

std::vector<std::string> Presentation::generator_names() const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n_lattice; ++i) names.push_back("e" + std::to_string(i + 1));
  for (std::size_t j = 0; j < n_holonomy; ++j) names.push_back("g" + std::to_string(j + 1));
  return names;
}

IntMatrix Presentation::abelianized() const {
  IntMatrix m(relators.size(), generator_count());
  for (std::size_t r = 0; r < relators.size(); ++r) {
    for (const auto& [sym, exp] : relators[r].syms) {
      m(r, sym) += Int(exp);
    }
  }
  return m;
}

AffineElement evaluate_word(const CrystalGroup& g, const HolonomyGroup& hol, const Word& w) {
  const std::size_t n = g.dim;
  AffineElement acc = AffineElement::identity(n);
  for (const auto& [sym, exp] : w.syms) {
    AffineElement base;
    if (sym < n) {
      RatVec t(n, Rat(0));
      t[sym] = 1;
      base = AffineElement::pure_translation(t);
    } else {
      base = hol.representative(sym - n + 1);
    }
    if (exp < 0) base = base.inverse();
    long reps = exp < 0 ? -exp : exp;
    for (long r = 0; r < reps; ++r) acc = acc * base;
  }
  return acc;
}

Word lattice_word(const IntVec& v) {
  Word w;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!v[i].fits_slong_p()) {
      throw InternalInconsistencyError("lattice_word: exponent out of range");
    }
    w.append(i, v[i].get_si());
  }
  return w;
}

Presentation presentation(const CrystalGroup& g, const HolonomyGroup& hol) {
  const std::size_t n = g.dim;
  Presentation pres;
  pres.n_lattice = n;
  pres.n_holonomy = hol.order() - 1;

  auto hsym = [&](std::size_t elem_index) { return n + elem_index - 1; };

  // Lattice commutators.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Word w;
      w.append(i, 1);
      w.append(j, 1);
      w.append(i, -1);
      w.append(j, -1);
      pres.relators.push_back(std::move(w));
    }
  }

  // Conjugation: g e_i g^-1 = lattice word of (A_g e_i).
  for (std::size_t e = 1; e < hol.order(); ++e) {
    for (std::size_t i = 0; i < n; ++i) {
      Word w;
      w.append(hsym(e), 1);
      w.append(i, 1);
      w.append(hsym(e), -1);
      Word img = lattice_word(hol.elements[e].col(i));
      Word inv = img.inverse();
      for (const auto& s : inv.syms) w.append(s.first, s.second);
      pres.relators.push_back(std::move(w));
    }
  }

  // Products: g_a g_b = e^{t(a,b)} g_{ab} with the integer cocycle
  // t(a,b) = A_a v_b + v_a - v_{ab}.
  for (std::size_t a = 1; a < hol.order(); ++a) {
    for (std::size_t b = 1; b < hol.order(); ++b) {
      std::size_t p = hol.table[a][b];
      RatVec t = to_rat(hol.elements[a]) * hol.rep_vectors[b] + hol.rep_vectors[a] -
                 hol.rep_vectors[p];
      if (!is_integral_vec(t)) {
        throw InternalInconsistencyError(
            "presentation: vector system is inconsistent; validate first");
      }
      Word w;
      w.append(hsym(a), 1);
      w.append(hsym(b), 1);
      if (p != 0) w.append(hsym(p), -1);
      Word back = lattice_word(to_int_vec(t)).inverse();
      for (const auto& s : back.syms) w.append(s.first, s.second);
      pres.relators.push_back(std::move(w));
    }
  }

  for (const Word& w : pres.relators) {
    if (!evaluate_word(g, hol, w).is_identity()) {
      throw InternalInconsistencyError("presentation: relator " +
                                       w.to_string(pres.generator_names()) +
                                       " does not evaluate to the identity");
    }
  }
  return pres;
}

namespace {

// Kernel of the transpose of a over F_2; a is n x n with 0/1 entries.
std::vector<std::vector<int>> mod2_transpose_kernel(const IntMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = static_cast<int>(a(j, i).get_si() & 1);

  std::vector<std::size_t> pivot_of_col(n, static_cast<std::size_t>(-1));
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < n; ++col) {
    std::size_t p = static_cast<std::size_t>(-1);
    for (std::size_t i = r; i < n; ++i) {
      if (m[i][col]) {
        p = i;
        break;
      }
    }
    if (p == static_cast<std::size_t>(-1)) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != r && m[i][col]) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] ^= m[r][j];
      }
    }
    pivot_of_col[col] = r;
    ++r;
  }
  std::vector<std::vector<int>> kernel;
  for (std::size_t f = 0; f < n; ++f) {
    if (pivot_of_col[f] != static_cast<std::size_t>(-1)) continue;
    std::vector<int> v(n, 0);
    v[f] = 1;
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t p = pivot_of_col[col];
      if (p != static_cast<std::size_t>(-1) && m[p][f]) v[col] = 1;
    }
    kernel.push_back(std::move(v));
  }
  return kernel;
}

}  // namespace

CrystalGroup from_bott_matrix(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n || n == 0) {
    throw BadMatrixError("Bott matrix must be square and nonempty");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) != 0 && a(i, j) != 1) {
        throw BadMatrixError("Bott matrix entries must be 0 or 1");
      }
      if (j <= i && a(i, j) != 0) {
        throw BadMatrixError("Bott matrix must be strictly upper triangular");
      }
    }
  }

  std::vector<IntMatrix> dmats;
  for (std::size_t i = 0; i < n; ++i) {
    IntMatrix d = IntMatrix::identity(n);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a(i, j) == 1) d(j, j) = -1;
    }
    dmats.push_back(std::move(d));
  }

  // The full translation lattice of <(D_i, e_i/2)> is Z^n extended by the
  // half vectors (sum_{i in S} e_i)/2 over subsets S with prod D_i = I,
  // i.e. S in ker(A^T) over F_2. Work with the doubled lattice in Z^n.
  std::vector<std::vector<int>> half_sets = mod2_transpose_kernel(a);
  IntMatrix doubled(n + half_sets.size(), n);
  for (std::size_t i = 0; i < n; ++i) doubled(i, i) = 2;
  for (std::size_t s = 0; s < half_sets.size(); ++s) {
    for (std::size_t j = 0; j < n; ++j) doubled(n + s, j) = half_sets[s][j];
  }
  IntMatrix half_basis = hermite_rows(doubled);  // basis of 2L, n rows

  // Columns of C are the lattice basis vectors of L = (2L)/2.
  RatMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(j, i) = Rat(half_basis(i, j)) / 2;
  RatMatrix cinv = inverse_rational(c);

  CrystalGroup out;
  out.dim = n;
  for (std::size_t i = 0; i < n; ++i) {
    RatMatrix conj = cinv * to_rat(dmats[i]) * c;
    IntMatrix lin(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t col = 0; col < n; ++col) lin(r, col) = to_int(conj(r, col));
    RatVec v(n, Rat(0));
    v[i] = make_rat(1, 2);
    RatVec vc = reduce_mod_lattice(cinv * v);
    if (lin.is_identity()) {
      if (!is_zero_vec(vc)) {
        throw InternalInconsistencyError("from_bott_matrix: trivial holonomy generator "
                                         "escaped the translation lattice");
      }
      continue;  // pure lattice translation, absorbed
    }
    out.holonomy_gens.push_back(std::move(lin));
    out.vectors.push_back(std::move(vc));
  }
  return out;
}

bool element_in_group(const CrystalGroup& g, const HolonomyGroup& hol, const AffineElement& elem) {
  if (elem.dim() != g.dim) return false;
  IntMatrix lin(g.dim, g.dim);
  for (std::size_t i = 0; i < g.dim; ++i) {
    for (std::size_t j = 0; j < g.dim; ++j) {
      if (!is_integral(elem.linear(i, j))) return false;
      lin(i, j) = to_int(elem.linear(i, j));
    }
  }
  std::size_t idx = hol.index_of(lin);
  if (idx == HolonomyGroup::npos) return false;
  return is_integral_vec(elem.translation - hol.rep_vectors[idx]);
}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize_group_file(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
  }
  return lines;
}

Int parse_int_token(const std::string& tok, std::size_t line) {
  std::optional<Rat> q = parse_rational(tok);
  if (!q || !is_integral(*q)) {
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  }
  return to_int(*q);
}

}  // namespace

CrystalGroup parse_group(const std::string& text) {
  std::vector<Line> lines = tokenize_group_file(text);
  if (lines.empty()) throw ParseError(1, "empty group file");

  std::size_t pos = 0;
  const Line& head = lines[pos];
  if (head.tokens[0] != "dim" || head.tokens.size() != 2) {
    throw ParseError(head.number, "expected 'dim n'");
  }
  Int dim_val = parse_int_token(head.tokens[1], head.number);
  if (dim_val < 1 || dim_val > 32) {
    throw ParseError(head.number, "dim must be between 1 and 32");
  }
  const std::size_t n = static_cast<std::size_t>(dim_val.get_ui());
  ++pos;

  CrystalGroup g;
  g.dim = n;
  while (pos < lines.size()) {
    const Line& gen_line = lines[pos];
    if (gen_line.tokens[0] != "gen" || gen_line.tokens.size() != 1) {
      throw ParseError(gen_line.number, "expected 'gen'");
    }
    ++pos;
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (pos >= lines.size()) {
        throw ParseError(gen_line.number, "generator matrix is truncated");
      }
      const Line& row = lines[pos];
      if (row.tokens.size() != n) {
        throw ParseError(row.number, "matrix row has " + std::to_string(row.tokens.size()) +
                                         " entries, expected " + std::to_string(n));
      }
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) = parse_int_token(row.tokens[j], row.number);
      }
      ++pos;
    }
    if (pos >= lines.size() || lines[pos].tokens[0] != "vec") {
      std::size_t where = pos < lines.size() ? lines[pos].number : lines.back().number;
      throw ParseError(where, "expected 'vec' after generator matrix");
    }
    const Line& vec_line = lines[pos];
    if (vec_line.tokens.size() != n + 1) {
      throw ParseError(vec_line.number, "vec has " + std::to_string(vec_line.tokens.size() - 1) +
                                            " entries, expected " + std::to_string(n));
    }
    RatVec v(n);
    for (std::size_t j = 0; j < n; ++j) {
      std::optional<Rat> q = parse_rational(vec_line.tokens[j + 1]);
      if (!q) {
        throw ParseError(vec_line.number, "expected a rational, got '" + vec_line.tokens[j + 1] + "'");
      }
      v[j] = *q;
    }
    ++pos;
    g.holonomy_gens.push_back(std::move(m));
    g.vectors.push_back(std::move(v));
  }
  return g;
}

std::string format_group(const CrystalGroup& g) {
  std::ostringstream os;
  os << "dim " << g.dim << "\n";
  for (std::size_t i = 0; i < g.holonomy_gens.size(); ++i) {
    os << "gen\n";
    for (std::size_t r = 0; r < g.dim; ++r) {
      for (std::size_t c = 0; c < g.dim; ++c) {
        if (c) os << " ";
        os << g.holonomy_gens[i](r, c).get_str();
      }
      os << "\n";
    }
    os << "vec";
    for (std::size_t c = 0; c < g.dim; ++c) os << " " << rat_to_string(g.vectors[i][c]);
    os << "\n";
  }
  return os.str();
}

}  // namespace spaceform
