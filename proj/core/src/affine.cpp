#include "spaceform/affine.hpp"

namespace spaceform {

AffineElement AffineElement::identity(std::size_t n) {
  return {RatMatrix::identity(n), RatVec(n, Rat(0))};
}

AffineElement AffineElement::pure_translation(const RatVec& t) {
  return {RatMatrix::identity(t.size()), t};
}

bool AffineElement::is_identity() const {
  return linear.is_identity() && is_zero_vec(translation);
}

AffineElement AffineElement::compose(const AffineElement& other) const {
  return {linear * other.linear, linear * other.translation + translation};
}

AffineElement AffineElement::inverse() const {
  const std::size_t n = dim();
  // Solve linear * X = I by Gauss-Jordan; holonomy linear parts are
  // small and always invertible here.
  RatMatrix a = linear;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a(p, col) == 0) ++p;
    if (p == n) throw std::invalid_argument("AffineElement::inverse: singular linear part");
    a.swap_rows(col, p);
    inv.swap_rows(col, p);
    Rat s = 1 / a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= s;
      inv(col, j) *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      Rat f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return {inv, -(inv * translation)};
}

RatVec AffineElement::apply(const RatVec& x) const {
  return linear * x + translation;
}

std::string AffineElement::to_string() const {
  return "(" + linear.to_string() + ", " + spaceform::to_string(translation) + ")";
}

std::string AffineElement::key() const {
  std::string k = linear.to_string();
  k += "|";
  for (const Rat& q : translation) {
    k += rat_to_string(q);
    k += ",";
  }
  return k;
}

}  // namespace spaceform
