#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace perlat {

// Exact rational scalars. All reference computations run over Q; a prime
// field is available as a faster drop-in for large batch runs.
using Rational = mpq_class;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline Rational inverse(const Rational& x) {
  if (is_zero(x)) throw std::domain_error("inverse of zero");
  return Rational(1) / x;
}
inline std::string to_string(const Rational& x) { return x.get_str(); }
inline Rational rational_from_string(const std::string& s) {
  Rational r(s);
  r.canonicalize();
  return r;
}

// Z/p with a process-wide odd prime modulus, set once before use.
struct Fp {
  int64_t v{0};

  Fp() = default;
  Fp(long x) : v(((x % modulus()) + modulus()) % modulus()) {}
  Fp(int x) : Fp(static_cast<long>(x)) {}

  static int64_t& modulus() {
    static int64_t p = 0;
    return p;
  }
  static void set_modulus(int64_t p) {
    if (p < 3 || p % 2 == 0 || p >= (int64_t(1) << 31))
      throw std::invalid_argument("field modulus must be an odd prime < 2^31");
    for (int64_t d = 3; d * d <= p; d += 2)
      if (p % d == 0) throw std::invalid_argument("field modulus must be prime");
    modulus() = p;
  }

  friend Fp operator+(Fp a, Fp b) { return Fp::raw((a.v + b.v) % modulus()); }
  friend Fp operator-(Fp a, Fp b) { return Fp::raw((a.v - b.v + modulus()) % modulus()); }
  friend Fp operator*(Fp a, Fp b) { return Fp::raw((a.v * b.v) % modulus()); }
  friend Fp operator-(Fp a) { return Fp::raw((modulus() - a.v) % modulus()); }
  friend Fp operator/(Fp a, Fp b) { return a * inverse(b); }
  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }
  friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
  friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }

  static Fp raw(int64_t x) {
    Fp r;
    r.v = x;
    return r;
  }

  friend Fp inverse(Fp a) {
    if (a.v == 0) throw std::domain_error("inverse of zero");
    // extended Euclid
    int64_t t = 0, newt = 1, r = modulus(), newr = a.v;
    while (newr != 0) {
      int64_t q = r / newr;
      t = std::exchange(newt, t - q * newt);
      r = std::exchange(newr, r - q * newr);
    }
    return Fp::raw(((t % modulus()) + modulus()) % modulus());
  }
  friend bool is_zero(Fp a) { return a.v == 0; }
  friend std::string to_string(Fp a) { return std::to_string(a.v); }
};

template <class K>
K field_zero() { return K(0); }
template <class K>
K field_one() { return K(1); }

}  // namespace perlat
