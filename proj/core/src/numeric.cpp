#include "spaceform/numeric.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace spaceform {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Int to_int(const Rat& q) {
  if (!is_integral(q)) {
    throw std::invalid_argument("to_int: " + rat_to_string(q) + " is not an integer");
  }
  return Int(q.get_num());
}

Int floor_rat(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rat frac_part(const Rat& q) {
  Rat r = q - Rat(floor_rat(q));
  r.canonicalize();
  return r;
}

Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::string rat_to_string(const Rat& q) {
  if (is_integral(q)) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::optional<Rat> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '-' || text[pos] == '+') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string num, den;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    num += text[pos++];
  }
  if (num.empty()) return std::nullopt;
  if (pos < text.size()) {
    if (text[pos] != '/') return std::nullopt;
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      den += text[pos++];
    }
    if (den.empty() || pos != text.size()) return std::nullopt;
  }
  Int n(num);
  Int d = den.empty() ? Int(1) : Int(den);
  if (d == 0) return std::nullopt;
  if (negative) n = -n;
  return make_rat(n, d);
}

std::string to_string(const IntVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i].get_str();
  }
  os << ")";
  return os.str();
}

std::string to_string(const RatVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << rat_to_string(v[i]);
  }
  os << ")";
  return os.str();
}

RatVec to_rat_vec(const IntVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

RatVec reduce_mod_lattice(const RatVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = frac_part(v[i]);
  return r;
}

bool is_integral_vec(const RatVec& v) {
  for (const Rat& q : v) {
    if (!is_integral(q)) return false;
  }
  return true;
}

IntVec to_int_vec(const RatVec& v) {
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = to_int(v[i]);
  return r;
}

Int common_denominator(const RatVec& v) {
  Int l = 1;
  for (const Rat& q : v) l = lcm(l, Int(q.get_den()));
  return l;
}

}  // namespace spaceform
