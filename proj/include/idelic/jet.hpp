#pragma once

// Truncated Laurent jets at a place: valuation, unit-part coefficients over
// the residue field, explicit precision.  A jet never represents zero; the
// leading coefficient is nonzero by invariant.  Binary operations return the
// minimum precision of their operands and anything that would need more
// precision than is stored fails instead of truncating silently.

#include "idelic/curve.hpp"

namespace idelic {

class LaurentJet {
 public:
  LaurentJet() = default;
  LaurentJet(PlacePtr place, long val, std::vector<FF> coeffs)
      : place_(std::move(place)), val_(val), c_(std::move(coeffs)) {
    IDELIC_CHECK(place_ != nullptr, "LaurentJet: null place");
    IDELIC_CHECK(!c_.empty(), "LaurentJet: precision must be >= 1");
    IDELIC_CHECK(!c_[0].is_zero(), "LaurentJet: leading coefficient must be nonzero");
    for (const auto& x : c_)
      IDELIC_CHECK(x.field().get() == place_->residue.get(),
                   "LaurentJet: coefficients must lie in the residue field");
  }

  static LaurentJet unit(const PlacePtr& place, unsigned prec = 1) {
    std::vector<FF> c(prec, place->residue->zero());
    c[0] = place->residue->one();
    return LaurentJet(place, 0, std::move(c));
  }

  static LaurentJet monomial(const PlacePtr& place, long val, unsigned prec = 1) {
    std::vector<FF> c(prec, place->residue->zero());
    c[0] = place->residue->one();
    return LaurentJet(place, val, std::move(c));
  }

  const PlacePtr& place() const { return place_; }
  long val() const { return val_; }
  unsigned prec() const { return static_cast<unsigned>(c_.size()); }
  const std::vector<FF>& coeffs() const { return c_; }
  const FF& lead() const { return c_[0]; }

  LaurentJet truncated(unsigned n) const {
    IDELIC_CHECK(n >= 1, "LaurentJet: precision must be >= 1");
    if (n >= c_.size()) return *this;
    return LaurentJet(place_, val_, std::vector<FF>(c_.begin(), c_.begin() + n));
  }

  bool same_place(const LaurentJet& o) const { return place_.get() == o.place_.get(); }

  // Equality of all data both jets carry (shared precision).
  bool eq_shared(const LaurentJet& o) const {
    if (!same_place(o) || val_ != o.val_) return false;
    const std::size_t n = std::min(c_.size(), o.c_.size());
    for (std::size_t i = 0; i < n; ++i)
      if (c_[i] != o.c_[i]) return false;
    return true;
  }

  LaurentJet operator*(const LaurentJet& o) const {
    IDELIC_CHECK(same_place(o), "LaurentJet: place mismatch");
    const std::size_t n = std::min(c_.size(), o.c_.size());
    const FF zero = place_->residue->zero();
    std::vector<FF> r(n, zero);
    for (std::size_t i = 0; i < n; ++i) {
      if (c_[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < n; ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return LaurentJet(place_, val_ + o.val_, std::move(r));
  }

  LaurentJet inverse() const {
    const FF zero = place_->residue->zero();
    std::vector<FF> b(c_.size(), zero);
    FF inv0 = c_[0].inverse();
    b[0] = inv0;
    for (std::size_t k = 1; k < c_.size(); ++k) {
      FF acc = zero;
      for (std::size_t i = 1; i <= k; ++i) acc = acc + c_[i] * b[k - i];
      b[k] = -acc * inv0;
    }
    return LaurentJet(place_, -val_, std::move(b));
  }

  LaurentJet pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    LaurentJet r = unit(place_, prec());
    LaurentJet b = *this;
    std::uint64_t u = static_cast<std::uint64_t>(e);
    while (u) {
      if (u & 1) r = r * b;
      b = b * b;
      u >>= 1;
    }
    return r;
  }

  // Multiply by a nonzero residue constant.
  LaurentJet scaled(const FF& s) const {
    IDELIC_CHECK(!s.is_zero(), "LaurentJet: scaling by zero");
    std::vector<FF> r = c_;
    const FF se = place_->residue->embed(s);
    for (auto& x : r) x = x * se;
    return LaurentJet(place_, val_, std::move(r));
  }

  LaurentJet negated() const { return scaled(-place_->residue->one()); }

  // 1 - jet, when the available precision determines it; nullopt otherwise.
  std::optional<LaurentJet> one_minus() const {
    const FieldPtr R = place_->residue;
    const FF one = R->one();
    const long end = val_ + static_cast<long>(c_.size());
    const long lo = std::min<long>(0, val_);
    std::vector<FF> out(static_cast<std::size_t>(end - lo), R->zero());
    if (0 >= lo && 0 < end) out[static_cast<std::size_t>(-lo)] = one;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      const std::size_t at = static_cast<std::size_t>(val_ + static_cast<long>(i) - lo);
      out[at] = out[at] - c_[i];
    }
    std::size_t first = 0;
    while (first < out.size() && out[first].is_zero()) ++first;
    if (first == out.size()) return std::nullopt;  // vanishes to stored precision
    return LaurentJet(place_, lo + static_cast<long>(first),
                      std::vector<FF>(out.begin() + static_cast<long>(first), out.end()));
  }

  std::string to_string() const {
    std::string s = "t^" + std::to_string(val_) + "*[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ",";
      s += c_[i].to_string();
    }
    return s + "]";
  }

 private:
  PlacePtr place_;
  long val_ = 0;
  std::vector<FF> c_;
};

}  // namespace idelic
