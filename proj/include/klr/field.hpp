#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace klr {

struct FieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Rationals.

class Rational {
 public:
  Rational() = default;
  Rational(long n) : v_(n) {}
  Rational(long n, long d) : v_(n, d) { v_.canonicalize(); }
  explicit Rational(const mpq_class& v) : v_(v) {}

  const mpq_class& value() const { return v_; }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }

  Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
  Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
  Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
  Rational operator/(const Rational& o) const {
    if (o.is_zero()) throw FieldError("division by zero");
    return Rational(mpq_class(v_ / o.v_));
  }
  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }

  // a += b * c without temporaries.
  void add_mul(const Rational& b, const Rational& c) {
    if (b.is_zero() || c.is_zero()) return;
    thread_local mpq_class t;
    mpq_mul(t.get_mpq_t(), b.v_.get_mpq_t(), c.v_.get_mpq_t());
    mpq_add(v_.get_mpq_t(), v_.get_mpq_t(), t.get_mpq_t());
  }

  Rational inv() const { return Rational(1) / *this; }
  std::string to_string() const { return v_.get_str(); }

  static Rational from_int(long n, const Rational&) { return Rational(n); }
  static Rational random(std::mt19937_64& rng, const Rational&);

 private:
  mpq_class v_;
};

// ---------------------------------------------------------------------------
// Prime fields. p == 0 marks the untyped zero produced by default construction.

class ModP {
 public:
  ModP() = default;
  ModP(std::uint32_t v, std::uint32_t p) : v_(p ? v % p : 0), p_(p) {}

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  ModP operator+(const ModP& o) const {
    std::uint32_t p = p_ ? p_ : o.p_;
    std::uint32_t s = v_ + o.v_;
    if (p && s >= p) s -= p;
    return raw(s, p);
  }
  ModP operator-(const ModP& o) const {
    std::uint32_t p = p_ ? p_ : o.p_;
    return raw(v_ >= o.v_ ? v_ - o.v_ : v_ + p - o.v_, p);
  }
  ModP operator*(const ModP& o) const {
    std::uint32_t p = p_ ? p_ : o.p_;
    if (!p) return ModP();
    return raw(static_cast<std::uint32_t>(std::uint64_t(v_) * o.v_ % p), p);
  }
  ModP operator/(const ModP& o) const { return *this * o.inv(); }
  ModP operator-() const { return raw(v_ ? p_ - v_ : 0, p_); }
  ModP& operator+=(const ModP& o) { return *this = *this + o; }
  ModP& operator-=(const ModP& o) { return *this = *this - o; }
  ModP& operator*=(const ModP& o) { return *this = *this * o; }
  bool operator==(const ModP& o) const { return v_ == o.v_; }
  bool operator!=(const ModP& o) const { return v_ != o.v_; }
  void add_mul(const ModP& b, const ModP& c) { *this = *this + b * c; }

  ModP inv() const;
  std::string to_string() const { return std::to_string(v_); }

  static ModP from_int(long n, const ModP& proto);
  static ModP random(std::mt19937_64& rng, const ModP& proto);

 private:
  static ModP raw(std::uint32_t v, std::uint32_t p) {
    ModP r;
    r.v_ = v;
    r.p_ = p;
    return r;
  }
  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

// ---------------------------------------------------------------------------
// Q(zeta_n): polynomials over Q modulo the n-th cyclotomic polynomial.

struct CycloContext {
  int order = 1;
  std::vector<mpq_class> modulus;  // monic, low degree first
  int degree() const { return static_cast<int>(modulus.size()) - 1; }
};

std::vector<mpq_class> cyclotomic_polynomial(int n);

class Cyclo {
 public:
  Cyclo() = default;
  Cyclo(std::vector<mpq_class> c, std::shared_ptr<const CycloContext> ctx);

  const std::vector<mpq_class>& coeffs() const { return c_; }
  const std::shared_ptr<const CycloContext>& context() const { return ctx_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_rational() const { return c_.size() <= 1; }

  Cyclo operator+(const Cyclo& o) const;
  Cyclo operator-(const Cyclo& o) const;
  Cyclo operator*(const Cyclo& o) const;
  Cyclo operator/(const Cyclo& o) const { return *this * o.inv(); }
  Cyclo operator-() const;
  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
  Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }
  bool operator==(const Cyclo& o) const { return c_ == o.c_; }
  bool operator!=(const Cyclo& o) const { return !(*this == o); }
  void add_mul(const Cyclo& b, const Cyclo& c) { *this = *this + b * c; }

  Cyclo inv() const;
  std::string to_string() const;

  static Cyclo from_int(long n, const Cyclo& proto);
  static Cyclo random(std::mt19937_64& rng, const Cyclo& proto);

 private:
  void trim();
  std::vector<mpq_class> c_;
  std::shared_ptr<const CycloContext> ctx_;
};

// ---------------------------------------------------------------------------
// Field descriptions and handles.

enum class FieldKind { Rationals, PrimeField, Cyclotomic };

struct FieldSpec {
  FieldKind kind = FieldKind::Rationals;
  long modulus = 0;      // prime p, or cyclotomic order n
  mpq_class q = 1;       // value of q for Q and GF(p); ignored for Qzeta(n)
};

// Accepts "Q,q=2", "Q,q=-1/3", "Q", "GF(5),q=4", "GF(3)", "Qzeta(3)".
FieldSpec parse_field_spec(const std::string& text);
std::string format_field_spec(const FieldSpec& spec);
bool is_prime(long n);

template <class E>
class Field {
 public:
  Field(FieldSpec spec, E one, E q);

  const FieldSpec& spec() const { return spec_; }
  std::string name() const { return format_field_spec(spec_); }

  E zero() const { return E(); }
  E one() const { return one_; }
  E from_int(long n) const { return E::from_int(n, one_); }
  E q() const { return q_; }
  bool degenerate() const { return q_ == one_; }
  long characteristic() const { return spec_.kind == FieldKind::PrimeField ? spec_.modulus : 0; }
  int quantum_characteristic() const { return e_; }

  E q_power(long k) const;
  // Eigenvalue attached to residue i: i.1 when q = 1, q^i otherwise.
  E residue_value(long i) const { return degenerate() ? from_int(i) : q_power(i); }
  E random(std::mt19937_64& rng) const { return E::random(rng, one_); }

 private:
  int compute_e() const;
  FieldSpec spec_;
  E one_;
  E q_;
  int e_ = 0;
};

using RationalField = Field<Rational>;
using PrimeField = Field<ModP>;
using CycloField = Field<Cyclo>;
using AnyField = std::variant<RationalField, PrimeField, CycloField>;

AnyField make_field(const FieldSpec& spec);
AnyField make_field(const std::string& text);

template <class E>
int quantum_characteristic(const Field<E>& f) {
  return f.quantum_characteristic();
}

template <class E>
inline std::string to_string(const E& x) {
  return x.to_string();
}

}  // namespace klr
