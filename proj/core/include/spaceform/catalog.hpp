#pragma once

#include <string>
#include <vector>

#include "spaceform/crystal.hpp"

namespace spaceform {
namespace catalog {

struct CatalogEntry {
  std::string name;
  CrystalGroup group;
};

/// Names of the built-in groups, sorted: the ten closed flat 3-manifolds
/// (g1..g6 orientable, b1..b4 non-orientable), hantzsche-wendt (alias of
/// g6), klein, torus1..torus6.
std::vector<std::string> list();

/// Throws UnknownEntryError listing the available names.
CatalogEntry get(const std::string& name);

/// Real Bott manifold entry from a strictly upper-triangular binary
/// matrix; the name encodes the bits row-major ("bott<n>-<bits>", empty
/// bit string allowed for n = 1).
CatalogEntry bott(const IntMatrix& a);
CatalogEntry bott(std::size_t n, const std::string& bits);

/// Resolves a static catalog name or a "bott<n>-<bits>" name.
CatalogEntry resolve(const std::string& name);

}  // namespace catalog
}  // namespace spaceform
