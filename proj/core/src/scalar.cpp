#include "mcforge/scalar.hpp"

#include <limits>
#include <ostream>

#include "mcforge/error.hpp"

namespace mcforge {

namespace {

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr __int128 kMin = -kMax;  // keep -num representable

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint32_t p) {
  // extended Euclid on (a, p)
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = static_cast<std::int64_t>(a % p);
  if (new_r == 0) throw ArithmeticError("division by a multiple of the characteristic " + std::to_string(p));
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

std::uint64_t mpz_mod(const mpz_class& z, std::uint32_t p) {
  return mpz_fdiv_ui(z.get_mpz_t(), p);
}

}  // namespace

Scalar::Scalar(long long n) : num_(n) {
  if (n == std::numeric_limits<long long>::min()) set_big(mpq_class(mpz_class(std::to_string(n))));
}

Scalar::Scalar(long long num, long long den) {
  if (den == 0) throw ArithmeticError("zero denominator");
  normalize_small(num, den);
}

Scalar::Scalar(const mpq_class& q) { set_big(q); }

Scalar Scalar::residue(long long value, std::uint32_t prime) {
  if (prime < 2) throw InvalidInput("residue requires a prime >= 2");
  long long v = value % static_cast<long long>(prime);
  if (v < 0) v += prime;
  return from_mod(static_cast<std::uint64_t>(v), prime);
}

Scalar Scalar::from_mod(std::uint64_t v, std::uint32_t p) {
  Scalar s;
  s.num_ = static_cast<std::int64_t>(v % p);
  s.den_ = 1;
  s.prime_ = p;
  return s;
}

Scalar Scalar::parse(std::string_view text, std::uint32_t prime) {
  std::string t(text);
  while (!t.empty() && t.front() == ' ') t.erase(t.begin());
  while (!t.empty() && t.back() == ' ') t.pop_back();
  if (t.empty()) throw InvalidInput("empty scalar literal");
  mpq_class q;
  try {
    auto slash = t.find('/');
    if (slash == std::string::npos) {
      q = mpq_class(mpz_class(t, 10));
    } else {
      mpz_class n(t.substr(0, slash), 10), d(t.substr(slash + 1), 10);
      if (d == 0) throw ArithmeticError("zero denominator in literal '" + t + "'");
      q = mpq_class(n, d);
      q.canonicalize();
    }
  } catch (const std::invalid_argument&) {
    throw InvalidInput("bad scalar literal '" + t + "'");
  }
  Scalar s(q);
  return prime == 0 ? s : s.reduce_mod(prime);
}

void Scalar::set_big(mpq_class q) {
  q.canonicalize();
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
    long n = q.get_num().get_si();
    long d = q.get_den().get_si();
    if (n != std::numeric_limits<long>::min()) {
      num_ = n;
      den_ = d;
      big_.reset();
      return;
    }
  }
  num_ = 0;
  den_ = 1;
  big_ = std::make_shared<const mpq_class>(std::move(q));
}

void Scalar::normalize_small(__int128 n, __int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (n == 0) d = 1;
  if (n <= kMax && n >= kMin && d <= kMax) {
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
    big_.reset();
    return;
  }
  auto to_mpz = [](__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(u >> 64));
    mpz_class lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  };
  set_big(mpq_class(to_mpz(n), to_mpz(d)));
}

mpq_class Scalar::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

Scalar Scalar::reduce_mod(std::uint32_t p) const {
  if (prime_ == p) return *this;
  if (prime_ != 0) throw ArithmeticError("mixing characteristics " + std::to_string(prime_) + " and " + std::to_string(p));
  std::uint64_t n, d;
  if (big_) {
    n = mpz_mod(big_->get_num(), p);
    d = mpz_mod(big_->get_den(), p);
  } else {
    long long m = num_ % static_cast<long long>(p);
    if (m < 0) m += p;
    n = static_cast<std::uint64_t>(m);
    d = static_cast<std::uint64_t>(den_ % static_cast<long long>(p));
  }
  if (d == 0) throw ArithmeticError("denominator of " + str() + " is divisible by the characteristic " + std::to_string(p));
  return from_mod((n * mod_inverse(d, p)) % p, p);
}

Scalar Scalar::in_characteristic(std::uint32_t prime) const {
  if (prime == prime_) return *this;
  if (prime == 0) throw ArithmeticError("cannot lift a residue mod " + std::to_string(prime_) + " to characteristic 0");
  return reduce_mod(prime);
}

void Scalar::unify(Scalar& other) {
  if (prime_ == other.prime_) return;
  if (prime_ == 0) {
    *this = reduce_mod(other.prime_);
  } else if (other.prime_ == 0) {
    other = other.reduce_mod(prime_);
  } else {
    throw ArithmeticError("mixing characteristics " + std::to_string(prime_) + " and " + std::to_string(other.prime_));
  }
}

bool Scalar::is_zero() const { return !big_ && num_ == 0; }
bool Scalar::is_one() const { return !big_ && num_ == 1 && den_ == 1; }

Scalar Scalar::operator-() const {
  if (prime_) return from_mod(num_ == 0 ? 0 : prime_ - static_cast<std::uint64_t>(num_), prime_);
  if (big_) return Scalar(mpq_class(-*big_));
  Scalar r = *this;
  r.num_ = -num_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o_in) {
  Scalar o = o_in;
  unify(o);
  if (prime_) {
    *this = from_mod(static_cast<std::uint64_t>(num_) + static_cast<std::uint64_t>(o.num_), prime_);
    return *this;
  }
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (big_ || o.big_) {
    set_big(to_mpq() + o.to_mpq());
    return *this;
  }
  if (den_ == 1 && o.den_ == 1) {
    normalize_small(static_cast<__int128>(num_) + o.num_, 1);
    return *this;
  }
  normalize_small(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                  static_cast<__int128>(den_) * o.den_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o_in) {
  Scalar o = o_in;
  unify(o);
  if (prime_) {
    *this = from_mod(static_cast<std::uint64_t>(num_) * static_cast<std::uint64_t>(o.num_), prime_);
    return *this;
  }
  if (is_zero() || o.is_zero()) {
    num_ = 0;
    den_ = 1;
    big_.reset();
    return *this;
  }
  if (big_ || o.big_) {
    set_big(to_mpq() * o.to_mpq());
    return *this;
  }
  normalize_small(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw ArithmeticError("division by zero");
  if (prime_) return from_mod(mod_inverse(static_cast<std::uint64_t>(num_), prime_), prime_);
  if (big_) return Scalar(mpq_class(1) / *big_);
  Scalar r;
  r.normalize_small(den_, num_);
  return r;
}

Scalar& Scalar::operator/=(const Scalar& o_in) {
  Scalar o = o_in;
  unify(o);
  return *this *= o.inverse();
}

bool operator==(const Scalar& a_in, const Scalar& b_in) {
  if (a_in.prime_ != b_in.prime_) {
    Scalar a = a_in, b = b_in;
    a.unify(b);
    return a == b;
  }
  if (a_in.big_ || b_in.big_) return a_in.to_mpq() == b_in.to_mpq();
  return a_in.num_ == b_in.num_ && a_in.den_ == b_in.den_;
}

std::string Scalar::str() const {
  if (big_) return big_->get_str();
  if (prime_ || den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Scalar factorial(int n, std::uint32_t prime) {
  if (prime != 0 && static_cast<std::uint32_t>(n) >= prime)
    throw ArithmeticError(std::to_string(n) + "! is not invertible in characteristic " + std::to_string(prime));
  Scalar r(1);
  for (int i = 2; i <= n; ++i) r *= Scalar(i);
  return prime ? r.in_characteristic(prime) : r;
}

}  // namespace mcforge
