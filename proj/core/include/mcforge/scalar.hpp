#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace mcforge {

/// Exact field element: a rational number (characteristic 0) or a residue
/// modulo a prime p.
///
/// Rationals stay in a pair of int64 while they fit and spill into a GMP
/// rational otherwise. Mixing a rational with a residue reduces the rational
/// mod p, which fails loudly when its denominator is divisible by p. Mixing
/// two different primes is an error.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long long n);  // NOLINT(google-explicit-constructor)
  Scalar(long long num, long long den);
  explicit Scalar(const mpq_class& q);

  static Scalar residue(long long value, std::uint32_t prime);
  /// Parses "n", "-n" or "n/d". With prime != 0 the value is reduced mod prime.
  static Scalar parse(std::string_view text, std::uint32_t prime = 0);

  /// 0 for rationals, p for residues.
  std::uint32_t characteristic() const { return prime_; }
  bool is_zero() const;
  bool is_one() const;

  /// Same value in characteristic `prime` (0 keeps a rational rational;
  /// converting a residue back to characteristic 0 is rejected).
  Scalar in_characteristic(std::uint32_t prime) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// "num/den" (or "num" when den = 1); residues print their canonical
  /// representative in [0, p).
  std::string str() const;
  /// Exact value as a GMP rational (residues give their representative).
  mpq_class to_mpq() const;
  /// Residue representative; requires characteristic() != 0.
  std::uint64_t residue_value() const { return static_cast<std::uint64_t>(num_); }

 private:
  void set_big(mpq_class q);
  void normalize_small(__int128 n, __int128 d);
  static Scalar from_mod(std::uint64_t v, std::uint32_t p);
  Scalar reduce_mod(std::uint32_t p) const;
  void unify(Scalar& other);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::uint32_t prime_ = 0;
  std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// n! as a Scalar of characteristic `prime` (throws if p <= n).
Scalar factorial(int n, std::uint32_t prime = 0);

}  // namespace mcforge
