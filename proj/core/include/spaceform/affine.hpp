#pragma once

#include <string>

#include "spaceform/matrix.hpp"

namespace spaceform {

/// Affine map x |-> A x + a on Q^n. Composition follows
/// (A, a) * (B, b) = (AB, Ab + a).
struct AffineElement {
  RatMatrix linear;
  RatVec translation;

  static AffineElement identity(std::size_t n);
  static AffineElement pure_translation(const RatVec& t);

  std::size_t dim() const { return translation.size(); }
  bool is_identity() const;
  bool is_translation() const { return linear.is_identity(); }

  AffineElement compose(const AffineElement& other) const;
  AffineElement inverse() const;
  RatVec apply(const RatVec& x) const;

  bool operator==(const AffineElement& o) const {
    return linear == o.linear && translation == o.translation;
  }
  bool operator!=(const AffineElement& o) const { return !(*this == o); }

  std::string to_string() const;
  /// Stable total encoding usable as an ordered-map key.
  std::string key() const;
};

inline AffineElement operator*(const AffineElement& a, const AffineElement& b) {
  return a.compose(b);
}

}  // namespace spaceform
