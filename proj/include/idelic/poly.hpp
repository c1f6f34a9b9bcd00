#pragma once

// Univariate polynomials over a finite field: arithmetic, gcds, resultants,
// irreducibility, deterministic irreducible enumeration, and full
// factorization (squarefree -> distinct-degree -> seeded equal-degree
// splitting).  Also the rational-function pair RatFun and the small
// expression parser shared by the CLI surfaces.

#include <cctype>
#include <map>
#include <utility>

#include "idelic/gf.hpp"
#include "idelic/rng.hpp"

namespace idelic {

class Poly {
 public:
  Poly() = default;
  Poly(FieldPtr k, std::vector<FF> coeffs) : k_(std::move(k)), c_(std::move(coeffs)) {
    for (const auto& x : c_)
      IDELIC_CHECK(x.field().get() == k_.get(), "Poly: coefficient field mismatch");
    detail::vec_trim(c_);
  }

  static Poly zero(FieldPtr k) { return Poly(std::move(k), {}); }
  static Poly constant(const FF& c) { return Poly(c.field(), {c}); }
  static Poly variable(const FieldPtr& k) { return Poly(k, {k->zero(), k->one()}); }

  const FieldPtr& field() const { return k_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  FF coeff(std::size_t i) const { return i < c_.size() ? c_[i] : k_->zero(); }
  const std::vector<FF>& coeffs() const { return c_; }
  FF lc() const {
    IDELIC_CHECK(!c_.empty(), "Poly: lc of zero");
    return c_.back();
  }

  Poly operator+(const Poly& o) const { return Poly(k_, detail::vec_add(c_, o.c_)); }
  Poly operator-(const Poly& o) const { return Poly(k_, detail::vec_sub(c_, o.c_)); }
  Poly operator-() const { return Poly(k_, detail::vec_neg(c_)); }
  Poly operator*(const Poly& o) const {
    IDELIC_CHECK(k_.get() == o.k_.get(), "Poly: field mismatch");
    return Poly(k_, detail::vec_mul(c_, o.c_, k_->zero()));
  }
  Poly operator*(const FF& s) const {
    std::vector<FF> r = c_;
    for (auto& x : r) x = x * s;
    return Poly(k_, std::move(r));
  }
  bool operator==(const Poly& o) const { return k_.get() == o.k_.get() && c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::pair<Poly, Poly> divmod(const Poly& d) const {
    IDELIC_CHECK(!d.is_zero(), "Poly: division by zero");
    FF inv_lc = d.lc().inverse();
    Poly dm = d * inv_lc;  // monic
    std::vector<FF> q, r;
    detail::vec_divmod_monic(c_, dm.c_, &q, &r, k_->zero());
    Poly quot(k_, std::move(q));
    return {quot * inv_lc, Poly(k_, std::move(r))};
  }
  Poly operator/(const Poly& d) const { return divmod(d).first; }
  Poly operator%(const Poly& d) const { return divmod(d).second; }

  bool divides(const Poly& f) const { return (f % *this).is_zero(); }

  Poly monic() const {
    IDELIC_CHECK(!is_zero(), "Poly: monic of zero");
    return *this * lc().inverse();
  }

  Poly derivative() const {
    if (c_.size() <= 1) return zero(k_);
    std::vector<FF> r;
    r.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * k_->from_int(static_cast<std::int64_t>(i)));
    return Poly(k_, std::move(r));
  }

  FF eval(const FF& x) const {
    FF r = x.field()->zero();
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + x.field()->embed(c_[i]);
    return r;
  }

  Poly powu(std::uint64_t e) const {
    Poly r = constant(k_->one());
    Poly b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  Poly powmod(std::uint64_t e, const Poly& mod) const {
    Poly r = constant(k_->one());
    Poly b = *this % mod;
    while (e) {
      if (e & 1) r = (r * b) % mod;
      b = (b * b) % mod;
      e >>= 1;
    }
    return r;
  }

  // pi-adic valuation: largest v with pi^v | *this (requires *this != 0)
  int valuation(const Poly& pi, Poly* unit_out = nullptr) const {
    IDELIC_CHECK(!is_zero(), "Poly: valuation of zero");
    Poly u = *this;
    int v = 0;
    for (;;) {
      auto [q, r] = u.divmod(pi);
      if (!r.is_zero()) break;
      u = q;
      ++v;
    }
    if (unit_out) *unit_out = u;
    return v;
  }

  // Coefficient reversal pinned at degree D >= degree(): s^D * p(1/s).
  Poly reverse_at(int D) const {
    IDELIC_CHECK(D >= degree(), "Poly: reverse_at degree too small");
    std::vector<FF> r(static_cast<std::size_t>(D) + 1, k_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) r[static_cast<std::size_t>(D) - i] = c_[i];
    return Poly(k_, std::move(r));
  }

  // Deterministic ordering: by degree, then top-down coefficient indices
  // (matches the scan order used for modulus selection).
  int compare(const Poly& o) const {
    if (degree() != o.degree()) return degree() < o.degree() ? -1 : 1;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const std::uint64_t a = c_[i].index(), b = o.c_[i].index();
      if (a != b) return a < b ? -1 : 1;
    }
    return 0;
  }
  bool operator<(const Poly& o) const { return compare(o) < 0; }

  std::string to_string(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      const std::string cs = c_[i].to_string();
      if (i == 0) {
        s += cs;
      } else {
        if (!c_[i].is_one()) s += cs + "*";
        s += var;
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }

 private:
  FieldPtr k_;
  std::vector<FF> c_;
};

inline Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = y;
    y = r;
  }
  return x.is_zero() ? x : x.monic();
}

inline Poly poly_lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.field());
  return ((a * b) / gcd(a, b)).monic();
}

// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic (or zero).
inline std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b) {
  const FieldPtr k = a.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(k->one()), s1 = Poly::zero(k);
  Poly t0 = Poly::zero(k), t1 = Poly::constant(k->one());
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = r1;
    r1 = r;
    Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  if (!r0.is_zero()) {
    FF inv = r0.lc().inverse();
    return {r0 * inv, s0 * inv, t0 * inv};
  }
  return {r0, s0, t0};
}

inline Poly invmod(const Poly& a, const Poly& m) {
  auto [g, s, t] = xgcd(a % m, m);
  IDELIC_CHECK(g.degree() == 0, "invmod: element not invertible");
  (void)t;
  return s % m;
}

// ---------------------------------------------------------------------------
// Irreducibility and deterministic enumeration

inline bool is_irreducible(const Poly& f) {
  return detail::vec_is_irreducible(f.coeffs(), f.field());
}

inline Poly lex_least_irreducible(const FieldPtr& k, unsigned d) {
  return Poly(k, detail::lex_least_irreducible_vec(k, d));
}

namespace detail {
inline int moebius_mu(unsigned n) {
  int mu = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

inline std::uint64_t irreducible_count(std::uint64_t q, unsigned d) {
  // necklace counting: (1/d) sum_{e|d} mu(e) q^{d/e}
  std::int64_t sum = 0;
  for (unsigned e = 1; e <= d; ++e) {
    if (d % e) continue;
    std::int64_t t = detail::moebius_mu(e);
    std::uint64_t pw = 1;
    for (unsigned i = 0; i < d / e; ++i) pw *= q;
    sum += t * static_cast<std::int64_t>(pw);
  }
  return static_cast<std::uint64_t>(sum) / d;
}
}  // namespace detail

// All monic irreducibles of degree <= B, sorted by (degree, coefficient scan
// order).  The per-degree count is checked against the necklace formula.
inline std::vector<Poly> irreducibles_up_to(const FieldPtr& k, unsigned B) {
  IDELIC_CHECK(B >= 1, "irreducibles_up_to: bound must be >= 1");
  const std::uint64_t q = k->order();
  std::vector<Poly> out;
  for (unsigned d = 1; d <= B; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) {
      count *= q;
      IDELIC_CHECK(count <= (std::uint64_t{1} << 24),
                   "irreducibles_up_to: enumeration cap exceeded");
    }
    std::uint64_t found = 0;
    for (std::uint64_t a = 0; a < count; ++a) {
      std::vector<FF> c;
      c.reserve(d + 1);
      std::uint64_t t = a;
      for (unsigned i = 0; i < d; ++i) {
        c.push_back(k->element(t % q));
        t /= q;
      }
      c.push_back(k->one());
      if (detail::vec_is_irreducible(c, k)) {
        out.emplace_back(k, std::move(c));
        ++found;
      }
    }
    IDELIC_CHECK(found == detail::irreducible_count(q, d),
                 "irreducibles_up_to: count disagrees with necklace formula");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Factorization

struct Factorization {
  FF lead;
  std::vector<std::pair<Poly, int>> factors;  // monic irreducible, multiplicity

  Poly reassemble() const {
    Poly r = Poly::constant(lead);
    for (const auto& [f, m] : factors) r = r * f.powu(static_cast<std::uint64_t>(m));
    return r;
  }
};

namespace detail {

inline Poly pth_root(const Poly& f) {
  // f is a polynomial in T^p; take the p-th root coefficientwise
  const FieldPtr k = f.field();
  const std::uint64_t p = k->characteristic();
  const std::uint64_t frob_inv = k->order() / p;  // x^(q/p) inverts x -> x^p
  std::vector<FF> c;
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p))
    c.push_back(f.coeff(static_cast<std::size_t>(i)).powu(frob_inv));
  return Poly(k, std::move(c));
}

inline void squarefree_decomp(const Poly& f, int outer_mult,
                              std::vector<std::pair<Poly, int>>& out) {
  // f monic; appends (squarefree part, multiplicity * outer_mult) pieces
  const FieldPtr k = f.field();
  if (f.degree() == 0) return;
  Poly u = gcd(f, f.derivative());
  Poly v = f / u;  // product of factors with multiplicity not divisible by p
  int i = 1;
  while (v.degree() > 0) {
    Poly h = gcd(v, u);
    Poly w = v / h;
    if (w.degree() > 0) out.emplace_back(w, i * outer_mult);
    v = h;
    u = u / h;
    ++i;
  }
  if (u.degree() > 0)
    squarefree_decomp(pth_root(u), outer_mult * static_cast<int>(k->characteristic()), out);
}

inline Poly random_poly_below(const FieldPtr& k, int deg_bound, std::mt19937_64& rng) {
  std::vector<FF> c;
  for (int i = 0; i < deg_bound; ++i) c.push_back(k->element(rand_below(rng, k->order())));
  return Poly(k, std::move(c));
}

// Equal-degree splitting of h = product of r distinct irreducibles of degree d.
inline void equal_degree_split(const Poly& h, unsigned d, std::mt19937_64& rng,
                               std::vector<Poly>& out) {
  const FieldPtr k = h.field();
  if (h.degree() == static_cast<int>(d)) {
    out.push_back(h.monic());
    return;
  }
  const std::uint64_t q = k->order();
  Poly split = Poly::zero(k);
  for (int tries = 0; tries < 256; ++tries) {
    Poly a = random_poly_below(k, h.degree(), rng);
    if (a.degree() < 1) continue;
    Poly b = Poly::zero(k);
    if (q % 2 == 1) {
      // a^((q^d-1)/2) = (prod_{i<d} a^{q^i})^((q-1)/2)
      Poly s = a % h;
      Poly fr = s;
      for (unsigned i = 1; i < d; ++i) {
        fr = fr.powmod(q, h);
        s = (s * fr) % h;
      }
      b = s.powmod((q - 1) / 2, h) - Poly::constant(k->one());
    } else {
      // characteristic 2: additive trace sum_{i < d*log2(q)} a^{2^i}
      unsigned m = 0;
      for (std::uint64_t t = q; t > 1; t >>= 1) ++m;
      Poly s = a % h;
      Poly acc = s;
      for (unsigned i = 1; i < d * m; ++i) {
        s = (s * s) % h;
        acc = acc + s;
      }
      b = acc % h;
    }
    Poly g = gcd(h, b);
    if (g.degree() > 0 && g.degree() < h.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(h / g, d, rng, out);
      return;
    }
  }
  throw error("equal_degree_split: splitting failed (bad randomness?)");
}

}  // namespace detail

inline constexpr std::uint64_t kDefaultFactorSeed = 0x1de11c0ffee5eedULL;

inline Factorization factor(const Poly& f, std::uint64_t seed = kDefaultFactorSeed) {
  IDELIC_CHECK(!f.is_zero(), "factor: zero polynomial");
  const FieldPtr k = f.field();
  Factorization out{f.lc(), {}};
  if (f.degree() == 0) return out;
  auto rng = SeedSplitter(seed).stream("poly-factor");

  std::vector<std::pair<Poly, int>> sqfree;
  detail::squarefree_decomp(f.monic(), 1, sqfree);
  for (const auto& [sq, mult] : sqfree) {
    // distinct-degree on sq
    Poly rest = sq;
    Poly xq = Poly::variable(k);  // running T^{q^d} mod rest
    const std::uint64_t q = k->order();
    for (unsigned d = 1; rest.degree() > 0 && 2 * static_cast<int>(d) <= rest.degree(); ++d) {
      xq = xq.powmod(q, rest);
      Poly diff = xq - Poly::variable(k);
      Poly g = gcd(rest, diff);
      if (g.degree() > 0) {
        std::vector<Poly> irr;
        detail::equal_degree_split(g, d, rng, irr);
        for (auto& h : irr) out.factors.emplace_back(std::move(h), mult);
        rest = rest / g;
        xq = xq % rest;
      }
    }
    if (rest.degree() > 0) out.factors.emplace_back(rest.monic(), mult);
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

// ---------------------------------------------------------------------------
// Resultants and the resultant-based norm oracle

inline FF resultant(const Poly& f, const Poly& g) {
  const FieldPtr k = f.field();
  if (f.is_zero() || g.is_zero()) return k->zero();
  FF res = k->one();
  Poly a = f, b = g;
  while (b.degree() > 0) {
    Poly r = a % b;
    const int da = a.degree(), db = b.degree(), dr = r.degree();
    if ((da * db) % 2 == 1) res = -res;
    res = res * b.lc().powu(static_cast<std::uint64_t>(da - (dr < 0 ? 0 : dr)));
    if (r.is_zero()) return dr < 0 && db > 0 ? k->zero() : res;
    a = b;
    b = r;
  }
  return res * b.lc().powu(static_cast<std::uint64_t>(a.degree()));
}

// N_{K/k}(a) computed as Res(modulus, rep(a)); independent cross-check for
// the Frobenius-power norm.
inline FF norm_via_resultant(const FF& a, const FieldPtr& k) {
  const FieldPtr K = a.field();
  if (K.get() == k.get()) return a;
  IDELIC_CHECK(K->base().get() == k.get(), "norm_via_resultant: one-level extensions only");
  Poly pi(k, K->modulus());
  Poly rep(k, a.coeffs());
  return resultant(pi, rep);
}

// ---------------------------------------------------------------------------
// Rational functions in one variable (canonical: coprime, monic denominator)

class RatFun {
 public:
  RatFun() = default;
  explicit RatFun(const Poly& num) : num_(num), den_(Poly::constant(num.field()->one())) {}
  RatFun(const Poly& num, const Poly& den) { normalize(num, den); }

  static RatFun zero(const FieldPtr& k) { return RatFun(Poly::zero(k)); }
  static RatFun one(const FieldPtr& k) { return RatFun(Poly::constant(k->one())); }
  static RatFun variable(const FieldPtr& k) { return RatFun(Poly::variable(k)); }
  static RatFun constant(const FF& c) { return RatFun(Poly::constant(c)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const FieldPtr& field() const { return num_.field(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  RatFun operator+(const RatFun& o) const {
    return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  RatFun operator-(const RatFun& o) const {
    return RatFun(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  RatFun operator*(const RatFun& o) const { return RatFun(num_ * o.num_, den_ * o.den_); }
  RatFun operator/(const RatFun& o) const {
    IDELIC_CHECK(!o.is_zero(), "RatFun: division by zero");
    return RatFun(num_ * o.den_, den_ * o.num_);
  }
  RatFun operator-() const { return RatFun(-num_, den_); }
  bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFun& o) const { return !(*this == o); }

  RatFun inverse() const {
    IDELIC_CHECK(!is_zero(), "RatFun: inverse of zero");
    return RatFun(den_, num_);
  }

  RatFun pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    RatFun r = one(field());
    RatFun b = *this;
    std::uint64_t u = static_cast<std::uint64_t>(e);
    while (u) {
      if (u & 1) r = r * b;
      b = b * b;
      u >>= 1;
    }
    return r;
  }

  // Substitute another rational function for the variable.
  RatFun substitute(const RatFun& s) const {
    RatFun n = eval_poly_at(num_, s);
    RatFun d = eval_poly_at(den_, s);
    IDELIC_CHECK(!d.is_zero(), "RatFun: substitution produced zero denominator");
    return n / d;
  }

  std::string to_string(const std::string& var = "t") const {
    if (den_.degree() == 0 && den_.lc().is_one()) return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
  }

 private:
  static RatFun eval_poly_at(const Poly& p, const RatFun& s) {
    RatFun r = RatFun::zero(p.field());
    for (std::size_t i = static_cast<std::size_t>(p.degree() + 1); i-- > 0;)
      r = r * s + RatFun::constant(p.coeff(i));
    return r;
  }

  void normalize(Poly num, Poly den) {
    IDELIC_CHECK(!den.is_zero(), "RatFun: zero denominator");
    if (num.is_zero()) {
      num_ = num;
      den_ = Poly::constant(num.field()->one());
      return;
    }
    Poly g = gcd(num, den);
    num = num / g;
    den = den / g;
    FF inv = den.lc().inverse();
    num_ = num * inv;
    den_ = den * inv;
  }

  Poly num_, den_;
};

// ---------------------------------------------------------------------------
// Expression parsing (shared by the polynomial and function-field surfaces)
//
// Grammar: expr := term (('+'|'-') term)*, term := unary (('*'|'/') unary)*,
// unary := ['-'|'+'] factor, factor := atom ['^' int], atom := uint | ident |
// '(' expr ')'.  The context maps identifiers and integers to values.

namespace detail {

template <class Ctx>
class ExprParser {
 public:
  using V = typename Ctx::value_type;
  ExprParser(const Ctx& ctx, std::string s) : ctx_(ctx), s_(std::move(s)) {}

  V parse() {
    V v = expr();
    skip();
    IDELIC_CHECK(pos_ == s_.size(), "expression parse: trailing input at '" + s_.substr(pos_) + "'");
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  V expr() {
    V v = term();
    for (;;) {
      if (eat('+'))
        v = ctx_.add(v, term());
      else if (eat('-'))
        v = ctx_.sub(v, term());
      else
        return v;
    }
  }
  V term() {
    V v = unary();
    for (;;) {
      if (eat('*'))
        v = ctx_.mul(v, unary());
      else if (eat('/'))
        v = ctx_.div(v, unary());
      else
        return v;
    }
  }
  V unary() {
    if (eat('-')) return ctx_.neg(unary());
    if (eat('+')) return unary();
    return factor();
  }
  V factor() {
    V v = atom();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      std::int64_t e = parse_uint();
      v = ctx_.pow(v, neg ? -e : e);
    }
    return v;
  }
  std::int64_t parse_uint() {
    skip();
    IDELIC_CHECK(pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])),
                 "expression parse: expected integer");
    std::int64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      v = v * 10 + (s_[pos_++] - '0');
    return v;
  }
  V atom() {
    skip();
    IDELIC_CHECK(pos_ < s_.size(), "expression parse: unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      V v = expr();
      IDELIC_CHECK(eat(')'), "expression parse: missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return ctx_.from_int(parse_uint());
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string name;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
        name += s_[pos_++];
      return ctx_.var(name);
    }
    throw error(std::string("expression parse: unexpected character '") + c + "'");
  }

  const Ctx& ctx_;
  std::string s_;
  std::size_t pos_ = 0;
};

struct RatFunCtx {
  using value_type = RatFun;
  FieldPtr k;
  std::string varname;
  RatFun from_int(std::int64_t n) const { return RatFun::constant(k->from_int(n)); }
  RatFun var(const std::string& name) const {
    if (name == varname) return RatFun::variable(k);
    if (name == "g" || name == "G") return RatFun::constant(k->generator());
    throw error("expression parse: unknown identifier '" + name + "'");
  }
  RatFun add(const RatFun& a, const RatFun& b) const { return a + b; }
  RatFun sub(const RatFun& a, const RatFun& b) const { return a - b; }
  RatFun mul(const RatFun& a, const RatFun& b) const { return a * b; }
  RatFun div(const RatFun& a, const RatFun& b) const { return a / b; }
  RatFun neg(const RatFun& a) const { return -a; }
  RatFun pow(const RatFun& a, std::int64_t e) const { return a.pow(e); }
};

}  // namespace detail

inline RatFun parse_ratfun(const FieldPtr& k, const std::string& s,
                           const std::string& var = "t") {
  detail::RatFunCtx ctx{k, var};
  return detail::ExprParser<detail::RatFunCtx>(ctx, s).parse();
}

inline Poly parse_poly(const FieldPtr& k, const std::string& s, const std::string& var = "t") {
  RatFun r = parse_ratfun(k, s, var);
  IDELIC_CHECK(r.den().degree() == 0 && r.den().lc().is_one(),
               "parse_poly: expression is not polynomial");
  return r.num();
}

}  // namespace idelic
