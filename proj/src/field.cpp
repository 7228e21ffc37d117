#include "klr/field.hpp"

#include <regex>
#include <sstream>

namespace klr {

Rational Rational::random(std::mt19937_64& rng, const Rational&) {
  std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
  return Rational(num(rng), den(rng));
}

ModP ModP::inv() const {
  if (v_ == 0) throw FieldError("division by zero in GF(p)");
  // Extended Euclid on (v, p).
  long a = v_, b = p_, x0 = 1, x1 = 0;
  while (b) {
    long t = a / b;
    a -= t * b;
    std::swap(a, b);
    x0 -= t * x1;
    std::swap(x0, x1);
  }
  long r = x0 % static_cast<long>(p_);
  if (r < 0) r += p_;
  return ModP(static_cast<std::uint32_t>(r), p_);
}

ModP ModP::from_int(long n, const ModP& proto) {
  long p = proto.p_;
  long r = n % p;
  if (r < 0) r += p;
  return ModP(static_cast<std::uint32_t>(r), proto.p_);
}

ModP ModP::random(std::mt19937_64& rng, const ModP& proto) {
  std::uniform_int_distribution<std::uint32_t> d(0, proto.p_ - 1);
  return ModP(d(rng), proto.p_);
}

// ---------------------------------------------------------------------------

namespace {

using QPoly = std::vector<mpq_class>;

void trim(QPoly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

// Exact division of a by the monic polynomial b, both low degree first.
QPoly divide_exact(QPoly a, const QPoly& b) {
  trim(a);
  int db = static_cast<int>(b.size()) - 1;
  if (static_cast<int>(a.size()) - 1 < db) return {};
  QPoly q(a.size() - db);
  for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
    mpq_class c = a[k];
    q[k - db] = c;
    if (sgn(c) == 0) continue;
    for (int j = 0; j <= db; ++j) a[k - db + j] -= c * b[j];
  }
  trim(a);
  if (!a.empty()) throw FieldError("cyclotomic division not exact");
  return q;
}

}  // namespace

std::vector<mpq_class> cyclotomic_polynomial(int n) {
  if (n < 1) throw FieldError("cyclotomic order must be positive");
  QPoly p(n + 1);
  p[0] = -1;
  p[n] = 1;
  for (int k = 1; k < n; ++k)
    if (n % k == 0) p = divide_exact(p, cyclotomic_polynomial(k));
  return p;
}

Cyclo::Cyclo(std::vector<mpq_class> c, std::shared_ptr<const CycloContext> ctx)
    : c_(std::move(c)), ctx_(std::move(ctx)) {
  trim();
}

void Cyclo::trim() {
  if (ctx_) {
    const auto& m = ctx_->modulus;
    int D = ctx_->degree();
    for (int k = static_cast<int>(c_.size()) - 1; k >= D; --k) {
      mpq_class c = c_[k];
      if (sgn(c) == 0) continue;
      for (int j = 0; j <= D; ++j) c_[k - D + j] -= c * m[j];
    }
    if (static_cast<int>(c_.size()) > D) c_.resize(D);
  }
  klr::trim(c_);
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
  std::vector<mpq_class> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Cyclo(std::move(r), ctx_ ? ctx_ : o.ctx_);
}

Cyclo Cyclo::operator-(const Cyclo& o) const { return *this + (-o); }

Cyclo Cyclo::operator-() const {
  std::vector<mpq_class> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
  return Cyclo(std::move(r), ctx_);
}

Cyclo Cyclo::operator*(const Cyclo& o) const {
  if (c_.empty() || o.c_.empty()) return Cyclo({}, ctx_ ? ctx_ : o.ctx_);
  std::vector<mpq_class> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Cyclo(std::move(r), ctx_ ? ctx_ : o.ctx_);
}

Cyclo Cyclo::inv() const {
  if (is_zero()) throw FieldError("division by zero in cyclotomic field");
  int D = ctx_->degree();
  // Solve (multiplication by *this) * x = 1 by Gauss-Jordan on the D x D system.
  std::vector<std::vector<mpq_class>> a(D, std::vector<mpq_class>(D + 1));
  Cyclo basis({mpq_class(1)}, ctx_);
  Cyclo x({mpq_class(0), mpq_class(1)}, ctx_);
  for (int j = 0; j < D; ++j) {
    Cyclo col = *this * basis;
    for (int i = 0; i < static_cast<int>(col.c_.size()); ++i) a[i][j] = col.c_[i];
    basis = basis * x;
  }
  a[0][D] = 1;
  for (int c = 0; c < D; ++c) {
    int piv = c;
    while (sgn(a[piv][c]) == 0) ++piv;
    std::swap(a[piv], a[c]);
    mpq_class iv = 1 / a[c][c];
    for (int k = c; k <= D; ++k) a[c][k] *= iv;
    for (int r = 0; r < D; ++r) {
      if (r == c || sgn(a[r][c]) == 0) continue;
      mpq_class f = a[r][c];
      for (int k = c; k <= D; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<mpq_class> r(D);
  for (int i = 0; i < D; ++i) r[i] = a[i][D];
  return Cyclo(std::move(r), ctx_);
}

std::string Cyclo::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k) {
    if (sgn(c_[k]) == 0) continue;
    mpq_class c = c_[k];
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    mpq_class a = abs(c);
    if (k == 0 || a != 1) os << a.get_str();
    if (k > 0) os << (k == 0 || a != 1 ? "*z" : "z");
    if (k > 1) os << "^" << k;
    first = false;
  }
  return os.str();
}

Cyclo Cyclo::from_int(long n, const Cyclo& proto) {
  return Cyclo({mpq_class(n)}, proto.ctx_);
}

Cyclo Cyclo::random(std::mt19937_64& rng, const Cyclo& proto) {
  std::uniform_int_distribution<long> num(-4, 4), den(1, 3);
  std::vector<mpq_class> c(proto.ctx_->degree());
  for (auto& x : c) {
    x = mpq_class(num(rng), den(rng));
    x.canonicalize();
  }
  return Cyclo(std::move(c), proto.ctx_);
}

// ---------------------------------------------------------------------------

bool is_prime(long n) {
  if (n < 2) return false;
  for (long k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

FieldSpec parse_field_spec(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  static const std::regex rq(R"(Q(?:,q=([-+]?\d+(?:/\d+)?))?)");
  static const std::regex rgf(R"(GF\((\d+)\)(?:,q=([-+]?\d+))?)");
  static const std::regex rz(R"(Qzeta\(([-+]?\d+)\))");
  std::smatch m;
  FieldSpec spec;
  if (std::regex_match(text, m, rq)) {
    spec.kind = FieldKind::Rationals;
    spec.q = m[1].matched ? mpq_class(m[1].str()) : mpq_class(1);
    spec.q.canonicalize();
  } else if (std::regex_match(text, m, rgf)) {
    spec.kind = FieldKind::PrimeField;
    spec.modulus = std::stol(m[1].str());
    if (!is_prime(spec.modulus)) throw FieldError("GF modulus is not prime: " + m[1].str());
    long q = m[2].matched ? std::stol(m[2].str()) : 1;
    q %= spec.modulus;
    if (q < 0) q += spec.modulus;
    spec.q = q;
  } else if (std::regex_match(text, m, rz)) {
    spec.kind = FieldKind::Cyclotomic;
    spec.modulus = std::stol(m[1].str());
    if (spec.modulus < 1) throw FieldError("cyclotomic order must be positive");
    spec.q = 0;
  } else {
    throw FieldError("malformed field spec: " + raw);
  }
  if (spec.kind != FieldKind::Cyclotomic && sgn(spec.q) == 0) throw FieldError("q must be nonzero");
  return spec;
}

std::string format_field_spec(const FieldSpec& spec) {
  switch (spec.kind) {
    case FieldKind::Rationals: return "Q,q=" + spec.q.get_str();
    case FieldKind::PrimeField: return "GF(" + std::to_string(spec.modulus) + "),q=" + spec.q.get_str();
    case FieldKind::Cyclotomic: return "Qzeta(" + std::to_string(spec.modulus) + ")";
  }
  return "?";
}

template <class E>
Field<E>::Field(FieldSpec spec, E one, E q) : spec_(std::move(spec)), one_(std::move(one)), q_(std::move(q)) {
  if (q_.is_zero()) throw FieldError("q must be nonzero");
  e_ = compute_e();
}

template <class E>
int Field<E>::compute_e() const {
  long bound = 64;
  if (spec_.kind == FieldKind::PrimeField) bound = spec_.modulus;
  if (spec_.kind == FieldKind::Cyclotomic) bound = std::max<long>(64, 2 * spec_.modulus);
  E sum = zero(), pw = one_;
  for (long k = 1; k <= bound; ++k) {
    sum = sum + pw;
    if (sum.is_zero()) return static_cast<int>(k);
    pw = pw * q_;
  }
  return 0;
}

template <class E>
E Field<E>::q_power(long k) const {
  E base = k < 0 ? q_.inv() : q_;
  unsigned long n = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  E r = one_;
  while (n) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

template class Field<Rational>;
template class Field<ModP>;
template class Field<Cyclo>;

AnyField make_field(const FieldSpec& spec) {
  switch (spec.kind) {
    case FieldKind::Rationals:
      return RationalField(spec, Rational(1), Rational(spec.q));
    case FieldKind::PrimeField: {
      auto p = static_cast<std::uint32_t>(spec.modulus);
      if (!is_prime(spec.modulus)) throw FieldError("GF modulus is not prime");
      return PrimeField(spec, ModP(1, p), ModP(static_cast<std::uint32_t>(spec.q.get_num().get_ui()), p));
    }
    case FieldKind::Cyclotomic: {
      if (spec.modulus < 1) throw FieldError("cyclotomic order must be positive");
      auto ctx = std::make_shared<CycloContext>();
      ctx->order = static_cast<int>(spec.modulus);
      ctx->modulus = cyclotomic_polynomial(ctx->order);
      std::shared_ptr<const CycloContext> c = ctx;
      return CycloField(spec, Cyclo({mpq_class(1)}, c), Cyclo({mpq_class(0), mpq_class(1)}, c));
    }
  }
  throw FieldError("unknown field kind");
}

AnyField make_field(const std::string& text) { return make_field(parse_field_spec(text)); }

}  // namespace klr
