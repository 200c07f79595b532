#ifndef FLAGGEOM_FIELD_HPP
#define FLAGGEOM_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace flaggeom {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an operation needs small integers to be invertible and they are not.
class FieldTooSmall : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// F_p with canonical representatives 0..p-1.
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p) || p >= (1u << 31))
      throw std::invalid_argument("field characteristic must be a prime below 2^31, got " +
                                  std::to_string(p));
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t characteristic() const { return p_; }
  bool is_finite() const { return true; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(value_type a) const { return a == 0; }

  value_type add(value_type a, value_type b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    return value_type(s >= p_ ? s - p_ : s);
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (p_ - b); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const {
    return value_type(std::uint64_t(a) * b % p_);
  }
  value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("division by zero in F_" + std::to_string(p_));
    // extended Euclid on (a, p)
    std::int64_t r0 = p_, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
      std::int64_t q = r0 / r1;
      std::int64_t r2 = r0 - q * r1;
      r0 = r1;
      r1 = r2;
      std::int64_t t2 = t0 - q * t1;
      t0 = t1;
      t1 = t2;
    }
    return from_int(t0);
  }
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }

  value_type from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return value_type(r);
  }
  // The integer n viewed as a scalar is invertible.
  bool int_invertible(long long n) const { return from_int(n) != 0; }

  std::string to_string(value_type a) const { return std::to_string(a); }
  std::string name() const { return "F_" + std::to_string(p_); }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

// The rationals, backed by GMP. Values are kept canonical.
class RationalField {
 public:
  using value_type = mpq_class;

  std::uint32_t characteristic() const { return 0; }
  bool is_finite() const { return false; }

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (is_zero(a)) throw std::domain_error("division by zero in Q");
    value_type r = 1 / a;
    r.canonicalize();
    return r;
  }
  value_type div(const value_type& a, const value_type& b) const { return mul(a, inv(b)); }

  value_type from_int(long long n) const { return value_type(static_cast<long>(n)); }
  value_type from_fraction(long long num, long long den) const {
    if (den == 0) throw std::domain_error("zero denominator");
    value_type r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
  }
  bool int_invertible(long long n) const { return n != 0; }

  std::string to_string(const value_type& a) const {
    return a.get_num().get_str() + "/" + a.get_den().get_str();
  }
  value_type parse(const std::string& s) const {
    value_type r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational '" + s + "'");
    if (sgn(r.get_den()) == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
  }
  std::string name() const { return "Q"; }

  bool operator==(const RationalField&) const { return true; }
};

// Every integer 2..m is invertible, as needed by exp/log on length-k flags (m = k-1).
template <class F>
void require_factorials_invertible(const F& field, int m, const std::string& what) {
  for (int i = 2; i <= m; ++i)
    if (!field.int_invertible(i))
      throw FieldTooSmall(what + " needs " + std::to_string(i) + " to be invertible in " +
                          field.name());
}

// Runtime choice of field, as read from the command line or JSON.
struct FieldSpec {
  bool rational = false;
  std::uint32_t p = 0;

  static FieldSpec prime(std::uint32_t p) {
    PrimeField check(p);
    return FieldSpec{false, p};
  }
  static FieldSpec rationals() { return FieldSpec{true, 0}; }
  static FieldSpec parse(const std::string& s) {
    if (s == "rat" || s == "Q" || s == "q") return rationals();
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("field must be a prime or 'rat', got '" + s + "'");
    }
    if (used != s.size()) throw std::invalid_argument("field must be a prime or 'rat', got '" + s + "'");
    return prime(static_cast<std::uint32_t>(v));
  }
  bool operator==(const FieldSpec&) const = default;
};

template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.rational) return fn(RationalField{});
  return fn(PrimeField(spec.p));
}

template <class F>
inline constexpr bool is_prime_field_v = std::is_same_v<F, PrimeField>;

}  // namespace flaggeom

#endif  // FLAGGEOM_FIELD_HPP
