#ifndef QTILT_FIELD_HPP
#define QTILT_FIELD_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qtilt {

// Exact scalar arithmetic. Two fields are supported: the rationals
// (arbitrary-precision) and prime fields F_p. All field operations go
// through a field object so that F_p can carry its modulus without
// storing it in every element.

using BigRat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct RatField {
  using Elt = BigRat;

  static constexpr int64_t characteristic() { return 0; }

  Elt zero() const { return Elt(0); }
  Elt one() const { return Elt(1); }
  Elt from_int(int64_t n) const { return Elt(n); }

  Elt add(const Elt& a, const Elt& b) const { return a + b; }
  Elt sub(const Elt& a, const Elt& b) const { return a - b; }
  Elt mul(const Elt& a, const Elt& b) const { return a * b; }
  Elt neg(const Elt& a) const { return -a; }
  Elt inv(const Elt& a) const {
    if (a == 0) throw std::domain_error("division by zero");
    return Elt(1) / a;
  }
  Elt div(const Elt& a, const Elt& b) const { return mul(a, inv(b)); }
  bool is_zero(const Elt& a) const { return a == 0; }
  bool eq(const Elt& a, const Elt& b) const { return a == b; }

  std::string to_string(const Elt& a) const { return a.str(); }
  // Round-trip used by the exactness property tests.
  Elt from_string(const std::string& s) const { return Elt(s); }

  bool operator==(const RatField&) const { return true; }
};

inline bool is_prime_int(int64_t p) {
  if (p < 2) return false;
  for (int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

struct PrimeField {
  using Elt = int64_t;  // canonical representative in [0, p)

  int64_t p;

  PrimeField() : p(2) {}  // default-constructible for container use; reassigned on build
  explicit PrimeField(int64_t p_) : p(p_) {
    if (!is_prime_int(p_)) throw std::invalid_argument("PrimeField: modulus must be prime");
  }

  int64_t characteristic() const { return p; }

  Elt zero() const { return 0; }
  Elt one() const { return 1 % p; }
  Elt from_int(int64_t n) const {
    Elt r = n % p;
    return r < 0 ? r + p : r;
  }

  Elt add(Elt a, Elt b) const { return (a + b) % p; }
  Elt sub(Elt a, Elt b) const { return from_int(a - b); }
  Elt mul(Elt a, Elt b) const { return (a * b) % p; }
  Elt neg(Elt a) const { return from_int(-a); }
  Elt inv(Elt a) const {
    if (a == 0) throw std::domain_error("division by zero");
    // extended Euclid
    int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
      int64_t q = r / nr;
      int64_t tmp = t - q * nt; t = nt; nt = tmp;
      tmp = r - q * nr; r = nr; nr = tmp;
    }
    return from_int(t);
  }
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  bool is_zero(Elt a) const { return a == 0; }
  bool eq(Elt a, Elt b) const { return a == b; }

  std::string to_string(Elt a) const { return std::to_string(a); }
  Elt from_string(const std::string& s) const { return from_int(std::stoll(s)); }

  bool operator==(const PrimeField& o) const { return p == o.p; }
};

}  // namespace qtilt

#endif
