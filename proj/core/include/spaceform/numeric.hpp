#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace spaceform {

// Arbitrary-precision integers and rationals. All arithmetic in this
// library is exact; there is no floating point anywhere.
using Int = mpz_class;
using Rat = mpq_class;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

/// Reduced fraction num/den with den > 0. Throws on den == 0.
Rat make_rat(const Int& num, const Int& den);

inline Int numerator(const Rat& q) { return Int(q.get_num()); }
inline Int denominator(const Rat& q) { return Int(q.get_den()); }

inline bool is_integral(const Rat& q) { return q.get_den() == 1; }

/// Exact conversion; the value must be integral.
Int to_int(const Rat& q);

/// Largest integer <= q.
Int floor_rat(const Rat& q);

/// q - floor(q), in [0, 1).
Rat frac_part(const Rat& q);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

Int binomial(unsigned long n, unsigned long k);

/// Formats as "p" or "p/q"; locale-independent.
std::string rat_to_string(const Rat& q);

/// Accepts "p" or "p/q" with optional leading '-'. Returns nullopt on
/// malformed input (including q == 0).
std::optional<Rat> parse_rational(const std::string& text);

std::string to_string(const IntVec& v);
std::string to_string(const RatVec& v);

RatVec to_rat_vec(const IntVec& v);

/// Componentwise q - floor(q); canonical coset representative in [0,1)^n.
RatVec reduce_mod_lattice(const RatVec& v);

bool is_integral_vec(const RatVec& v);
IntVec to_int_vec(const RatVec& v);

/// lcm of the denominators of all entries (1 for the empty vector).
Int common_denominator(const RatVec& v);

}  // namespace spaceform
