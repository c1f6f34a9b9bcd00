#pragma once

// Exact arithmetic in finite fields: prime fields F_p, extensions
// F_p[T]/(m), and relative extensions K[T]/(pi) used as residue fields of
// places.  Fields form explicit towers; an element always carries a pointer
// to its field descriptor and arithmetic between mismatched fields throws.
//
// Everything here is desk-scale by design: enumeration-style operations
// (generator search, norm-one subgroups, discrete logs) are gated by a cap
// that defaults to 1024 and can be overridden with IDELE_DESK_CAP.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace idelic {

class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

class cap_exceeded : public error {
 public:
  explicit cap_exceeded(const std::string& what) : error(what) {}
};

inline std::uint64_t desk_cap() {
  static const std::uint64_t cap = [] {
    if (const char* s = std::getenv("IDELE_DESK_CAP")) {
      const long long v = std::atoll(s);
      if (v > 1) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{1024};
  }();
  return cap;
}

#define IDELIC_CHECK(cond, msg)                      \
  do {                                               \
    if (!(cond)) throw ::idelic::error(msg);         \
  } while (0)

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Element of a finite field.  Prime-field elements hold a residue; extension
// elements hold a full-length coefficient vector over the base field.
class FF {
 public:
  FF() = default;
  FF(FieldPtr k, std::uint64_t residue);           // prime fields
  FF(FieldPtr k, std::vector<FF> coeffs);          // extensions

  const FieldPtr& field() const { return k_; }
  bool is_zero() const;
  bool is_one() const;

  FF operator+(const FF& o) const;
  FF operator-(const FF& o) const;
  FF operator*(const FF& o) const;
  FF operator/(const FF& o) const;
  FF operator-() const;
  FF& operator+=(const FF& o) { return *this = *this + o; }
  FF& operator-=(const FF& o) { return *this = *this - o; }
  FF& operator*=(const FF& o) { return *this = *this * o; }
  FF& operator/=(const FF& o) { return *this = *this / o; }
  bool operator==(const FF& o) const;
  bool operator!=(const FF& o) const { return !(*this == o); }

  FF inverse() const;
  FF pow(std::int64_t e) const;
  FF powu(std::uint64_t e) const;
  FF frobenius(std::uint64_t q) const { return powu(q); }

  // Multiplicative order; enumerative, so only for elements of capped fields.
  std::uint64_t mult_order() const;

  // Canonical enumeration index within the field (0 is zero, 1 is one).
  std::uint64_t index() const;

  // Norm down to `k`, which must lie on this element's base chain.
  // Frobenius-power product, computed as a single power map; N(0) = 0.
  FF norm_to(const FieldPtr& k) const;

  // True when this element lies in the canonical image of `k`.
  bool lies_in(const FieldPtr& k) const;
  // Project onto `k`; throws if the element is not in the image.
  FF project_to(const FieldPtr& k) const;

  std::string to_string() const;

  // Raw access for the polynomial layer.
  std::uint64_t residue() const { return v_; }
  const std::vector<FF>& coeffs() const { return c_; }

 private:
  FieldPtr k_;
  std::uint64_t v_ = 0;     // prime-field residue
  std::vector<FF> c_;       // extension coefficients over base, length = degree
};

class Field : public std::enable_shared_from_this<Field> {
 public:
  // F_p.
  static FieldPtr prime(std::uint64_t p);
  // F_{p^e} with the lexicographically least monic irreducible modulus.
  static FieldPtr make(std::uint64_t p, unsigned e);
  // Relative extension base[T]/(modulus); modulus monic of degree >= 2 and
  // irreducible over base (the caller guarantees irreducibility).
  static FieldPtr extension(FieldPtr base, std::vector<FF> modulus);

  std::uint64_t characteristic() const { return p_; }
  std::uint64_t order() const { return order_; }
  unsigned degree() const { return deg_; }              // over base
  unsigned absolute_degree() const { return abs_deg_; } // over F_p
  bool is_prime_field() const { return base_ == nullptr; }
  const FieldPtr& base() const { return base_; }
  const std::vector<FF>& modulus() const { return mod_; }

  FF zero() const;
  FF one() const;
  FF from_int(std::int64_t n) const;
  FF element(std::uint64_t idx) const;        // inverse of FF::index()
  // Class of the adjoined variable (extensions only).
  FF adjoined() const;
  // Embed an element of the (immediate or deeper) base chain, or of the
  // prime subfield, as a constant.
  FF embed(const FF& a) const;
  // Deterministic multiplicative generator; requires order() <= desk cap.
  FF generator() const;

  // [this : k] when k is on the base chain; throws otherwise.
  unsigned degree_over(const FieldPtr& k) const;
  bool on_base_chain(const FieldPtr& k) const;

  // Parse "0", "17", "g", "g^5", or "[a,b,c]" (coefficients over base).
  FF parse_element(const std::string& s) const;

  std::string describe() const;

  bool same(const FieldPtr& o) const { return o.get() == this; }

 private:
  Field() = default;
  friend class FF;

  std::uint64_t p_ = 0;
  std::uint64_t order_ = 0;
  unsigned deg_ = 1;
  unsigned abs_deg_ = 1;
  FieldPtr base_;
  std::vector<FF> mod_;  // monic, length deg_+1, over base_

  mutable std::optional<FF> gen_;
  mutable std::once_flag gen_once_;
};

namespace detail {

// Dense polynomial helpers over coefficient vectors (used both by the field
// tower itself and, later, by the Poly wrapper).  Vectors are low-to-high
// degree and need not be trimmed.

inline void vec_trim(std::vector<FF>& v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
}

inline int vec_deg(const std::vector<FF>& v) {
  for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
    if (!v[i].is_zero()) return i;
  return -1;
}

inline std::vector<FF> vec_add(const std::vector<FF>& a, const std::vector<FF>& b) {
  std::vector<FF> r = a.size() >= b.size() ? a : b;
  const std::vector<FF>& s = a.size() >= b.size() ? b : a;
  for (std::size_t i = 0; i < s.size(); ++i) r[i] = r[i] + s[i];
  return r;
}

inline std::vector<FF> vec_neg(std::vector<FF> a) {
  for (auto& x : a) x = -x;
  return a;
}

inline std::vector<FF> vec_sub(const std::vector<FF>& a, const std::vector<FF>& b) {
  return vec_add(a, vec_neg(b));
}

inline std::vector<FF> vec_mul(const std::vector<FF>& a, const std::vector<FF>& b,
                               const FF& zero) {
  if (vec_deg(a) < 0 || vec_deg(b) < 0) return {};
  std::vector<FF> r(a.size() + b.size() - 1, zero);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] = r[i + j] + a[i] * b[j];
    }
  }
  return r;
}

// Division with remainder by a monic divisor.
inline void vec_divmod_monic(std::vector<FF> num, const std::vector<FF>& den,
                             std::vector<FF>* quot, std::vector<FF>* rem,
                             const FF& zero) {
  const int dd = vec_deg(den);
  IDELIC_CHECK(dd >= 0 && den[dd].is_one(), "vec_divmod_monic: divisor not monic");
  int dn = vec_deg(num);
  std::vector<FF> q(dn >= dd ? dn - dd + 1 : 0, zero);
  while (dn >= dd) {
    FF c = num[dn];
    if (!c.is_zero()) {
      q[dn - dd] = c;
      for (int i = 0; i <= dd; ++i) num[dn - dd + i] = num[dn - dd + i] - c * den[i];
    }
    --dn;
  }
  vec_trim(num);
  if (quot) *quot = std::move(q);
  if (rem) *rem = std::move(num);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// FF implementation

inline FF::FF(FieldPtr k, std::uint64_t residue) : k_(std::move(k)), v_(residue) {
  IDELIC_CHECK(k_ && k_->is_prime_field(), "FF: residue constructor needs a prime field");
  v_ %= k_->characteristic();
}

inline FF::FF(FieldPtr k, std::vector<FF> coeffs) : k_(std::move(k)), c_(std::move(coeffs)) {
  IDELIC_CHECK(k_ && !k_->is_prime_field(), "FF: coefficient constructor needs an extension");
  IDELIC_CHECK(c_.size() == k_->degree(), "FF: coefficient vector has wrong length");
}

inline bool FF::is_zero() const {
  IDELIC_CHECK(k_, "FF: uninitialized element");
  if (k_->is_prime_field()) return v_ == 0;
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

inline bool FF::is_one() const {
  if (k_->is_prime_field()) return v_ == 1 % k_->characteristic();
  if (!c_[0].is_one()) return false;
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return true;
}

inline bool FF::operator==(const FF& o) const {
  IDELIC_CHECK(k_.get() == o.k_.get(), "FF: comparing elements of different fields");
  if (k_->is_prime_field()) return v_ == o.v_;
  return c_ == o.c_;
}

inline FF FF::operator+(const FF& o) const {
  IDELIC_CHECK(k_.get() == o.k_.get(), "FF: field mismatch in +");
  if (k_->is_prime_field()) return FF(k_, v_ + o.v_);
  std::vector<FF> r(c_);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] + o.c_[i];
  return FF(k_, std::move(r));
}

inline FF FF::operator-() const {
  if (k_->is_prime_field()) return FF(k_, (k_->characteristic() - v_) % k_->characteristic());
  std::vector<FF> r(c_);
  for (auto& x : r) x = -x;
  return FF(k_, std::move(r));
}

inline FF FF::operator-(const FF& o) const { return *this + (-o); }

inline FF FF::operator*(const FF& o) const {
  IDELIC_CHECK(k_.get() == o.k_.get(), "FF: field mismatch in *");
  if (k_->is_prime_field()) {
    const auto p = k_->characteristic();
    return FF(k_, (v_ % p) * (o.v_ % p) % p);  // p <= 2^32 region: no overflow at desk scale
  }
  const FF z = k_->base()->zero();
  std::vector<FF> prod = detail::vec_mul(c_, o.c_, z);
  std::vector<FF> rem;
  detail::vec_divmod_monic(std::move(prod), k_->modulus(), nullptr, &rem, z);
  rem.resize(k_->degree(), z);
  return FF(k_, std::move(rem));
}

inline FF FF::powu(std::uint64_t e) const {
  FF r = k_->one();
  FF b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

inline FF FF::inverse() const {
  IDELIC_CHECK(!is_zero(), "FF: inverse of zero");
  return powu(k_->order() - 2);
}

inline FF FF::pow(std::int64_t e) const {
  if (e >= 0) return powu(static_cast<std::uint64_t>(e));
  return inverse().powu(static_cast<std::uint64_t>(-e));
}

inline FF FF::operator/(const FF& o) const { return *this * o.inverse(); }

inline std::uint64_t FF::mult_order() const {
  IDELIC_CHECK(!is_zero(), "FF: order of zero");
  IDELIC_CHECK(k_->order() <= desk_cap(), "FF: mult_order beyond desk cap");
  FF x = *this;
  std::uint64_t n = 1;
  while (!x.is_one()) {
    x = x * *this;
    ++n;
  }
  return n;
}

inline std::uint64_t FF::index() const {
  if (k_->is_prime_field()) return v_;
  std::uint64_t idx = 0;
  const std::uint64_t qb = k_->base()->order();
  for (std::size_t i = c_.size(); i-- > 0;) idx = idx * qb + c_[i].index();
  return idx;
}

inline bool FF::lies_in(const FieldPtr& k) const {
  if (k.get() == k_.get()) return true;
  if (k_->is_prime_field()) return false;
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return c_[0].lies_in(k);
}

inline FF FF::project_to(const FieldPtr& k) const {
  if (k.get() == k_.get()) return *this;
  IDELIC_CHECK(!k_->is_prime_field(), "FF: element not in requested subfield");
  for (std::size_t i = 1; i < c_.size(); ++i)
    IDELIC_CHECK(c_[i].is_zero(), "FF: element not in requested subfield");
  return c_[0].project_to(k);
}

inline FF FF::norm_to(const FieldPtr& k) const {
  IDELIC_CHECK(k_->on_base_chain(k), "FF: norm target not on base chain");
  if (k.get() == k_.get()) return *this;
  if (is_zero()) return k->zero();
  const std::uint64_t e = (k_->order() - 1) / (k->order() - 1);
  return powu(e).project_to(k);
}

inline std::string FF::to_string() const {
  if (k_->is_prime_field()) return std::to_string(v_);
  if (is_zero()) return "0";
  if (is_one()) return "1";
  if (k_->order() <= desk_cap()) {
    const FF g = k_->generator();
    FF x = g;
    for (std::uint64_t e = 1; e < k_->order(); ++e) {
      if (x == *this) return e == 1 ? "g" : "g^" + std::to_string(e);
      x = x * g;
    }
  }
  std::string s = "[";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ",";
    s += c_[i].to_string();
  }
  return s + "]";
}

// ---------------------------------------------------------------------------
// Field implementation

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline FieldPtr Field::prime(std::uint64_t p) {
  IDELIC_CHECK(is_prime_u64(p), "Field::prime: " + std::to_string(p) + " is not prime");
  // Prime fields are interned so that base-chain checks work across
  // independently constructed towers.
  static std::mutex mu;
  static std::map<std::uint64_t, FieldPtr>* cache = new std::map<std::uint64_t, FieldPtr>();
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache->find(p);
  if (it != cache->end()) return it->second;
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->order_ = p;
  f->deg_ = 1;
  f->abs_deg_ = 1;
  (*cache)[p] = f;
  return f;
}

inline FieldPtr Field::extension(FieldPtr base, std::vector<FF> modulus) {
  IDELIC_CHECK(base, "Field::extension: null base");
  detail::vec_trim(modulus);
  const unsigned d = static_cast<unsigned>(modulus.size()) - 1;
  IDELIC_CHECK(modulus.size() >= 3, "Field::extension: modulus degree must be >= 2");
  IDELIC_CHECK(modulus.back().is_one(), "Field::extension: modulus must be monic");
  for (const auto& c : modulus)
    IDELIC_CHECK(c.field().get() == base.get(), "Field::extension: modulus not over base");
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = base->characteristic();
  f->deg_ = d;
  f->abs_deg_ = base->absolute_degree() * d;
  f->order_ = 1;
  for (unsigned i = 0; i < d; ++i) f->order_ *= base->order();
  f->base_ = std::move(base);
  f->mod_ = std::move(modulus);
  return f;
}

inline FF Field::zero() const {
  auto self = shared_from_this();
  if (is_prime_field()) return FF(self, 0);
  return FF(self, std::vector<FF>(deg_, base_->zero()));
}

inline FF Field::one() const { return from_int(1); }

inline FF Field::from_int(std::int64_t n) const {
  auto self = shared_from_this();
  const std::int64_t p = static_cast<std::int64_t>(p_);
  std::uint64_t r = static_cast<std::uint64_t>(((n % p) + p) % p);
  if (is_prime_field()) return FF(self, r);
  std::vector<FF> c(deg_, base_->zero());
  c[0] = base_->from_int(static_cast<std::int64_t>(r));
  return FF(self, std::move(c));
}

inline FF Field::element(std::uint64_t idx) const {
  IDELIC_CHECK(idx < order_, "Field::element: index out of range");
  auto self = shared_from_this();
  if (is_prime_field()) return FF(self, idx);
  std::vector<FF> c;
  c.reserve(deg_);
  const std::uint64_t qb = base_->order();
  for (unsigned i = 0; i < deg_; ++i) {
    c.push_back(base_->element(idx % qb));
    idx /= qb;
  }
  return FF(self, std::move(c));
}

inline FF Field::adjoined() const {
  IDELIC_CHECK(!is_prime_field(), "Field::adjoined: prime field has no adjoined variable");
  std::vector<FF> c(deg_, base_->zero());
  c[1] = base_->one();
  return FF(shared_from_this(), std::move(c));
}

inline FF Field::embed(const FF& a) const {
  if (a.field().get() == this) return a;
  IDELIC_CHECK(!is_prime_field(), "Field::embed: cannot embed into a smaller field");
  std::vector<FF> c(deg_, base_->zero());
  c[0] = base_->embed(a);
  return FF(shared_from_this(), std::move(c));
}

inline bool Field::on_base_chain(const FieldPtr& k) const {
  const Field* f = this;
  while (f) {
    if (f == k.get()) return true;
    f = f->base_.get();
  }
  return false;
}

inline unsigned Field::degree_over(const FieldPtr& k) const {
  IDELIC_CHECK(on_base_chain(k), "Field::degree_over: not on base chain");
  unsigned d = 1;
  const Field* f = this;
  while (f != k.get()) {
    d *= f->deg_;
    f = f->base_.get();
  }
  return d;
}

inline FF Field::generator() const {
  std::call_once(gen_once_, [this] {
    IDELIC_CHECK(order_ <= desk_cap(),
                 "Field::generator: field order " + std::to_string(order_) +
                     " exceeds desk cap");
    const std::uint64_t n = order_ - 1;
    std::vector<std::uint64_t> prime_divs;
    std::uint64_t m = n;
    for (std::uint64_t d = 2; d * d <= m; ++d)
      while (m % d == 0) {
        prime_divs.push_back(d);
        while (m % d == 0) m /= d;
        break;
      }
    if (m > 1) prime_divs.push_back(m);
    for (std::uint64_t idx = 1; idx < order_; ++idx) {
      FF x = element(idx);
      if (x.is_zero()) continue;
      bool primitive = true;
      for (std::uint64_t r : prime_divs)
        if (x.powu(n / r).is_one()) {
          primitive = false;
          break;
        }
      if (primitive) {
        gen_ = x;
        return;
      }
    }
    throw error("Field::generator: no generator found");
  });
  return *gen_;
}

inline FF Field::parse_element(const std::string& s) const {
  auto self = shared_from_this();
  IDELIC_CHECK(!s.empty(), "parse_element: empty string");
  if (s[0] == '[') {
    IDELIC_CHECK(!is_prime_field() && s.back() == ']', "parse_element: bad vector literal");
    std::vector<FF> c;
    std::string body = s.substr(1, s.size() - 2);
    std::size_t pos = 0;
    int depth = 0;
    std::string cur;
    for (char ch : body) {
      if (ch == '[') ++depth;
      if (ch == ']') --depth;
      if (ch == ',' && depth == 0) {
        c.push_back(base_->parse_element(cur));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!cur.empty()) c.push_back(base_->parse_element(cur));
    (void)pos;
    IDELIC_CHECK(c.size() <= deg_, "parse_element: too many coefficients");
    while (c.size() < deg_) c.push_back(base_->zero());
    return FF(self, std::move(c));
  }
  if (s[0] == 'g') {
    std::uint64_t e = 1;
    if (s.size() > 1) {
      IDELIC_CHECK(s[1] == '^', "parse_element: expected g^k");
      e = std::strtoull(s.c_str() + 2, nullptr, 10);
    }
    return generator().powu(e);
  }
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  IDELIC_CHECK(end && *end == '\0', "parse_element: cannot parse '" + s + "'");
  return from_int(v);
}

inline std::string Field::describe() const {
  if (is_prime_field()) return "F" + std::to_string(p_);
  std::string m;
  static const char* vars = "TUVW";
  const char v = vars[std::min<unsigned>(3, [this] {
    unsigned h = 0;
    for (const Field* f = this; f->base_; f = f->base_.get()) ++h;
    return h - 1;
  }())];
  for (int i = static_cast<int>(mod_.size()) - 1; i >= 0; --i) {
    if (mod_[i].is_zero()) continue;
    if (!m.empty()) m += "+";
    if (i == 0 || !mod_[i].is_one()) m += mod_[i].to_string();
    if (i > 0) {
      if (!mod_[i].is_one()) m += "*";
      m += v;
      if (i > 1) m += "^" + std::to_string(i);
    }
  }
  return base_->describe() + "[" + v + "]/(" + m + ")";
}

// ---------------------------------------------------------------------------
// gf_make_field: lexicographically least irreducible modulus.
//
// Candidates of degree e are scanned in increasing order of the non-leading
// coefficient vector read as a base-p integer with the constant term least
// significant.  Irreducibility: f of degree d is irreducible iff
// gcd(f, T^{q^i} - T) = 1 for all 1 <= i <= d/2.

namespace detail {

inline std::vector<FF> vec_powmod_q(std::vector<FF> x, std::uint64_t q,
                                    const std::vector<FF>& mod, const FF& zero) {
  // x^q mod `mod` by square and multiply
  std::vector<FF> r{zero.field()->one()};
  while (q) {
    if (q & 1) {
      auto t = vec_mul(r, x, zero);
      vec_divmod_monic(std::move(t), mod, nullptr, &r, zero);
    }
    auto t = vec_mul(x, x, zero);
    vec_divmod_monic(std::move(t), mod, nullptr, &x, zero);
    q >>= 1;
  }
  return r;
}

inline std::vector<FF> vec_gcd(std::vector<FF> a, std::vector<FF> b, const FF& zero) {
  vec_trim(a);
  vec_trim(b);
  while (vec_deg(b) >= 0) {
    // make b monic before dividing
    FF lc = b[vec_deg(b)];
    if (!lc.is_one()) {
      FF inv = lc.inverse();
      for (auto& c : b) c = c * inv;
    }
    std::vector<FF> r;
    vec_divmod_monic(a, b, nullptr, &r, zero);
    a = std::move(b);
    b = std::move(r);
  }
  if (vec_deg(a) >= 0) {
    FF lc = a[vec_deg(a)];
    if (!lc.is_one()) {
      FF inv = lc.inverse();
      for (auto& c : a) c = c * inv;
    }
  }
  return a;
}

inline bool vec_is_irreducible(const std::vector<FF>& f, const FieldPtr& k) {
  const int d = vec_deg(f);
  if (d <= 0) return false;
  if (d == 1) return true;
  const FF zero = k->zero();
  const std::uint64_t q = k->order();
  std::vector<FF> xq{zero, k->one()};  // T
  for (int i = 1; 2 * i <= d; ++i) {
    xq = vec_powmod_q(std::move(xq), q, f, zero);  // T^{q^i} mod f
    std::vector<FF> diff = xq;
    if (diff.size() < 2) diff.resize(2, zero);
    diff[1] = diff[1] - k->one();
    auto g = vec_gcd(f, diff, zero);
    if (vec_deg(g) != 0) return false;
  }
  return true;
}

inline std::vector<FF> lex_least_irreducible_vec(const FieldPtr& k, unsigned d) {
  IDELIC_CHECK(d >= 1, "lex_least_irreducible: degree must be >= 1");
  const std::uint64_t q = k->order();
  std::uint64_t count = 1;
  for (unsigned i = 0; i < d; ++i) {
    count *= q;
    IDELIC_CHECK(count <= (std::uint64_t{1} << 40), "lex_least_irreducible: search space too large");
  }
  for (std::uint64_t a = 0; a < count; ++a) {
    std::vector<FF> f;
    f.reserve(d + 1);
    std::uint64_t t = a;
    for (unsigned i = 0; i < d; ++i) {
      f.push_back(k->element(t % q));
      t /= q;
    }
    f.push_back(k->one());
    if (vec_is_irreducible(f, k)) return f;
  }
  throw error("lex_least_irreducible: none found");
}

}  // namespace detail

inline FieldPtr Field::make(std::uint64_t p, unsigned e) {
  IDELIC_CHECK(is_prime_u64(p), "gf_make_field: p must be prime");
  IDELIC_CHECK(e >= 1, "gf_make_field: e must be >= 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    IDELIC_CHECK(q <= desk_cap(), "gf_make_field: p^e exceeds desk cap");
  }
  FieldPtr fp = Field::prime(p);
  if (e == 1) return fp;
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, unsigned>, FieldPtr>* cache =
      new std::map<std::pair<std::uint64_t, unsigned>, FieldPtr>();
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, e);
  auto it = cache->find(key);
  if (it != cache->end()) return it->second;
  FieldPtr f = Field::extension(fp, detail::lex_least_irreducible_vec(fp, e));
  (*cache)[key] = f;
  return f;
}

// ---------------------------------------------------------------------------
// Norm-one subgroup and norm preimages.

// All elements of K of norm 1 down to k; |result| = (|K|-1)/(|k|-1).
inline std::vector<FF> norm_one_subgroup(const FieldPtr& K, const FieldPtr& k) {
  IDELIC_CHECK(K->on_base_chain(k), "norm_one_subgroup: k not on base chain");
  IDELIC_CHECK(K->order() <= desk_cap(), "norm_one_subgroup: field exceeds desk cap");
  std::vector<FF> out;
  for (std::uint64_t i = 1; i < K->order(); ++i) {
    FF x = K->element(i);
    if (x.norm_to(k).is_one()) out.push_back(x);
  }
  const std::uint64_t expect = (K->order() - 1) / (k->order() - 1);
  IDELIC_CHECK(out.size() == expect, "norm_one_subgroup: cardinality mismatch");
  return out;
}

// Some u in K* with N_{K/k}(u) = c, via a generator of K* and a brute-force
// discrete log in k*.
inline FF norm_preimage(const FF& c, const FieldPtr& K) {
  const FieldPtr k = c.field();
  IDELIC_CHECK(!c.is_zero(), "norm_preimage: c must be nonzero");
  IDELIC_CHECK(K->on_base_chain(k), "norm_preimage: k not on base chain");
  if (c.is_one()) return K->one();
  const FF g = K->generator();
  const FF g0 = g.norm_to(k);  // generates k*
  FF x = g0;
  FF u = g;
  for (std::uint64_t j = 1; j < k->order(); ++j) {
    if (x == c) return u;
    x = x * g0;
    u = u * g;
  }
  throw error("norm_preimage: no preimage found (norm not surjective?)");
}

}  // namespace idelic
