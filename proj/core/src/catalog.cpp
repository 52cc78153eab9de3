#include "spaceform/catalog.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "spaceform/errors.hpp"

namespace spaceform {
namespace catalog {

namespace {

IntMatrix mat(std::size_t n, std::initializer_list<long> entries) {
  IntMatrix m(n, n);
  auto it = entries.begin();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Int(*it++);
  return m;
}

RatVec vec(std::initializer_list<const char*> entries) {
  RatVec v;
  for (const char* e : entries) v.push_back(*parse_rational(e));
  return v;
}

CrystalGroup torus(std::size_t n) {
  CrystalGroup g;
  g.dim = n;
  return g;
}

// The ten closed flat 3-manifolds, entered from standard crystallographic
// presentations. Orientable: g1 (torus), g2..g5 (cyclic holonomy Z2, Z3,
// Z4, Z6 acting on the last two coordinates with a fractional translation
// along the first), g6 (Hantzsche-Wendt, holonomy Z2 x Z2). Non-orientable:
// b1, b2 (holonomy Z2), b3, b4 (holonomy Z2 x Z2). Every entry must pass
// the full validator suite; the tests enforce that.
std::map<std::string, CrystalGroup> build_entries() {
  std::map<std::string, CrystalGroup> entries;

  for (std::size_t n = 1; n <= 6; ++n) {
    entries["torus" + std::to_string(n)] = torus(n);
  }

  {
    CrystalGroup klein;
    klein.dim = 2;
    klein.holonomy_gens.push_back(mat(2, {1, 0, 0, -1}));
    klein.vectors.push_back(vec({"1/2", "0"}));
    entries["klein"] = klein;
  }

  entries["g1"] = torus(3);

  {
    CrystalGroup g;
    g.dim = 3;
    g.holonomy_gens.push_back(mat(3, {1, 0, 0, 0, -1, 0, 0, 0, -1}));
    g.vectors.push_back(vec({"1/2", "0", "0"}));
    entries["g2"] = g;
  }
  {
    CrystalGroup g;
    g.dim = 3;
    g.holonomy_gens.push_back(mat(3, {1, 0, 0, 0, 0, -1, 0, 1, -1}));
    g.vectors.push_back(vec({"1/3", "0", "0"}));
    entries["g3"] = g;
  }
  {
    CrystalGroup g;
    g.dim = 3;
    g.holonomy_gens.push_back(mat(3, {1, 0, 0, 0, 0, -1, 0, 1, 0}));
    g.vectors.push_back(vec({"1/4", "0", "0"}));
    entries["g4"] = g;
  }
  {
    CrystalGroup g;
    g.dim = 3;
    g.holonomy_gens.push_back(mat(3, {1, 0, 0, 0, 0, -1, 0, 1, 1}));
    g.vectors.push_back(vec({"1/6", "0", "0"}));
    entries["g5"] = g;
  }
  {
    CrystalGroup g;
    g.dim = 3;
    g.holonomy_gens.push_back(mat(3, {1, 0, 0, 0, -1, 0, 0, 0, -1}));
    g.vectors.push_back(vec({"1/2", "1/2", "0"}));
    g.holonomy_gens.push_back(mat(3, {-1, 0, 0, 0, 1, 0, 0, 0, -1}));
    g.vectors.push_back(vec({"0", "1/2", "1/2"}));
    entries["g6"] = g;
    entries["hantzsche-wendt"] = g;
  }

  {
    CrystalGroup g;
    g.dim = 3;
    g.holonomy_gens.push_back(mat(3, {1, 0, 0, 0, 1, 0, 0, 0, -1}));
    g.vectors.push_back(vec({"1/2", "0", "0"}));
    entries["b1"] = g;
  }
  {
    CrystalGroup g;
    g.dim = 3;
    g.holonomy_gens.push_back(mat(3, {0, 1, 0, 1, 0, 0, 0, 0, 1}));
    g.vectors.push_back(vec({"0", "0", "1/2"}));
    entries["b2"] = g;
  }
  {
    CrystalGroup g;
    g.dim = 3;
    g.holonomy_gens.push_back(mat(3, {1, 0, 0, 0, -1, 0, 0, 0, -1}));
    g.vectors.push_back(vec({"1/2", "0", "0"}));
    g.holonomy_gens.push_back(mat(3, {1, 0, 0, 0, 1, 0, 0, 0, -1}));
    g.vectors.push_back(vec({"0", "1/2", "0"}));
    entries["b3"] = g;
  }
  {
    CrystalGroup g;
    g.dim = 3;
    g.holonomy_gens.push_back(mat(3, {1, 0, 0, 0, -1, 0, 0, 0, -1}));
    g.vectors.push_back(vec({"1/2", "0", "0"}));
    g.holonomy_gens.push_back(mat(3, {1, 0, 0, 0, 1, 0, 0, 0, -1}));
    g.vectors.push_back(vec({"0", "1/2", "1/2"}));
    entries["b4"] = g;
  }

  return entries;
}

const std::map<std::string, CrystalGroup>& entries() {
  static const std::map<std::string, CrystalGroup> e = build_entries();
  return e;
}

}  // namespace

std::vector<std::string> list() {
  std::vector<std::string> names;
  for (const auto& [name, group] : entries()) names.push_back(name);
  std::sort(names.begin(), names.end());
  return names;
}

CatalogEntry get(const std::string& name) {
  auto it = entries().find(name);
  if (it == entries().end()) {
    std::ostringstream os;
    os << "unknown catalog entry '" << name << "'; available:";
    for (const std::string& n : list()) os << " " << n;
    throw UnknownEntryError(os.str());
  }
  return {name, it->second};
}

CatalogEntry bott(const IntMatrix& a) {
  const std::size_t n = a.rows();
  std::string bits;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) bits += a(i, j) == 1 ? '1' : '0';
  CatalogEntry e;
  e.name = "bott" + std::to_string(n) + "-" + bits;
  e.group = from_bott_matrix(a);
  return e;
}

CatalogEntry bott(std::size_t n, const std::string& bits) {
  if (n < 1 || n > 32) throw BadMatrixError("Bott matrix size must be between 1 and 32");
  const std::size_t expected = n * (n - 1) / 2;
  if (bits.size() != expected) {
    throw BadMatrixError("Bott bit string for n = " + std::to_string(n) + " must have " +
                         std::to_string(expected) + " bits, got " + std::to_string(bits.size()));
  }
  IntMatrix a(n, n);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      char c = bits[pos++];
      if (c != '0' && c != '1') throw BadMatrixError("Bott bit string must be over {0,1}");
      a(i, j) = c == '1' ? 1 : 0;
    }
  }
  return bott(a);
}

CatalogEntry resolve(const std::string& name) {
  if (name.rfind("bott", 0) == 0) {
    std::size_t dash = name.find('-');
    std::string size_part =
        dash == std::string::npos ? name.substr(4) : name.substr(4, dash - 4);
    std::string bits = dash == std::string::npos ? "" : name.substr(dash + 1);
    try {
      std::size_t n = std::stoul(size_part);
      return bott(n, bits);
    } catch (const std::logic_error&) {
      throw UnknownEntryError("malformed bott entry name '" + name + "'");
    }
  }
  return get(name);
}

}  // namespace catalog
}  // namespace spaceform
