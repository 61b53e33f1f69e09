#pragma once

#include <algorithm>
#include <climits>
#include <string>
#include <vector>

#include "pvtau/error.hpp"

namespace pvtau {

// Truncated series in 1/L: coefficients of L^lead, L^(lead-1), ...
// Coefficients below the stored range are zero down to valid_low();
// below that they are unknown.
template <class R> class laurent_series {
 public:
  static constexpr int exact_low = INT_MIN / 4;

  laurent_series() : lead_(0), valid_low_(exact_low), c_{R(0)} {}
  laurent_series(const R& c) : lead_(0), valid_low_(exact_low), c_{c} {}

  // a*L + b, exact.
  static laurent_series linear(const R& a, const R& b) {
    laurent_series s;
    s.lead_ = 1;
    s.c_ = {a, b};
    return s;
  }

  int lead() const { return lead_; }
  int valid_low() const { return valid_low_; }
  bool exact() const { return valid_low_ == exact_low; }
  int stored_low() const { return lead_ - static_cast<int>(c_.size()) + 1; }

  R coeff(int power) const {
    if (power < valid_low_)
      throw error(errc::cancellation_failure, "laurent coefficient of power " + std::to_string(power) +
                                                  " lies below the truncation depth");
    if (power > lead_ || power < stored_low()) return R(0);
    return c_[lead_ - power];
  }

  // L^k * this
  laurent_series shifted(int k) const {
    laurent_series s = *this;
    s.lead_ += k;
    if (!exact()) s.valid_low_ += k;
    return s;
  }

  // Drop leading coefficients that are exactly zero.
  void trim() {
    std::size_t z = 0;
    while (z + 1 < c_.size() && c_[z] == R(0)) ++z;
    if (z) {
      c_.erase(c_.begin(), c_.begin() + z);
      lead_ -= static_cast<int>(z);
    }
  }

  laurent_series reciprocal(int depth) const {
    laurent_series a = *this;
    a.trim();
    if (a.c_[0] == R(0)) throw error(errc::non_invertible, "laurent reciprocal of a series with zero leading term");
    int d = depth;
    if (!a.exact()) d = std::min(d, a.lead_ - a.valid_low_);
    laurent_series r;
    r.lead_ = -a.lead_;
    r.valid_low_ = r.lead_ - d;
    r.c_.assign(d + 1, R(0));
    const R inv = R(1) / a.c_[0];
    r.c_[0] = inv;
    for (int k = 1; k <= d; ++k) {
      R acc(0);
      for (int j = 1; j <= k && j < static_cast<int>(a.c_.size()); ++j) acc += a.c_[j] * r.c_[k - j];
      r.c_[k] = -acc * inv;
    }
    return r;
  }

  friend laurent_series operator*(const laurent_series& a, const laurent_series& b) {
    laurent_series r;
    r.lead_ = a.lead_ + b.lead_;
    int vl = exact_low;
    if (!a.exact()) vl = std::max(vl, a.valid_low_ + b.lead_);
    if (!b.exact()) vl = std::max(vl, b.valid_low_ + a.lead_);
    r.valid_low_ = vl;
    int low = std::max(vl, a.stored_low() + b.stored_low());
    int n = r.lead_ - low + 1;
    r.c_.assign(std::max(n, 1), R(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == R(0)) continue;
      for (std::size_t j = 0; j < b.c_.size() && static_cast<int>(i + j) < n; ++j)
        r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }

  friend laurent_series operator*(const laurent_series& a, const R& s) {
    laurent_series r = a;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  friend laurent_series operator+(const laurent_series& a, const laurent_series& b) { return combine(a, b, false); }
  friend laurent_series operator-(const laurent_series& a, const laurent_series& b) { return combine(a, b, true); }
  friend laurent_series operator-(const laurent_series& a) { return a * R(-1); }
  laurent_series& operator+=(const laurent_series& b) { return *this = *this + b; }
  laurent_series& operator*=(const laurent_series& b) { return *this = *this * b; }

 private:
  static laurent_series combine(const laurent_series& a, const laurent_series& b, bool sub) {
    laurent_series r;
    r.lead_ = std::max(a.lead_, b.lead_);
    r.valid_low_ = std::max(a.valid_low_, b.valid_low_);
    int low = std::max(r.valid_low_, std::min(a.stored_low(), b.stored_low()));
    r.c_.assign(std::max(r.lead_ - low + 1, 1), R(0));
    for (int p = r.lead_; p >= low; --p) {
      R x = (p <= a.lead_ && p >= a.stored_low()) ? a.c_[a.lead_ - p] : R(0);
      R y = (p <= b.lead_ && p >= b.stored_low()) ? b.c_[b.lead_ - p] : R(0);
      r.c_[r.lead_ - p] = sub ? x - y : x + y;
    }
    r.trim();
    return r;
  }

  int lead_;
  int valid_low_;
  std::vector<R> c_;
};

}  // namespace pvtau
