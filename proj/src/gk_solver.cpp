#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include "pvtau/error.hpp"
#include "pvtau/tau_expansions.hpp"

namespace pvtau {

namespace {

// Coefficients of v^N s^m with v = e^{it/2} t^{-omega}, s = t^{-1/2}.
template <class C> struct formal_series {
  int nm, mlo, mhi, ncol;
  std::vector<C> a;

  formal_series(int nm_, int mlo_, int mhi_)
      : nm(nm_), mlo(mlo_), mhi(mhi_), ncol(mhi_ - mlo_ + 1), a((2 * nm_ + 1) * (mhi_ - mlo_ + 1), C(0)) {}

  C& at(int n, int m) { return a[(n + nm) * ncol + (m - mlo)]; }
  const C& at(int n, int m) const { return a[(n + nm) * ncol + (m - mlo)]; }
  bool inside(int n, int m) const { return n >= -nm && n <= nm && m >= mlo && m <= mhi; }

  formal_series zero() const { return formal_series(nm, mlo, mhi); }

  // first and last nonzero column of each row, -1 when empty
  std::vector<std::pair<int, int>> support() const {
    std::vector<std::pair<int, int>> s(2 * nm + 1, {-1, -1});
    for (int r = 0; r <= 2 * nm; ++r)
      for (int c = 0; c < ncol; ++c)
        if (a[r * ncol + c] != C(0)) {
          if (s[r].first < 0) s[r].first = c;
          s[r].second = c;
        }
    return s;
  }

  formal_series& operator+=(const formal_series& o) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
    return *this;
  }
  formal_series& operator-=(const formal_series& o) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= o.a[i];
    return *this;
  }
  formal_series& operator*=(const C& s) {
    for (auto& x : a) x *= s;
    return *this;
  }
  void add_constant(int m, const C& c) { at(0, m) += c; }
};

template <class C> formal_series<C> mul(const formal_series<C>& x, const formal_series<C>& y) {
  formal_series<C> r = x.zero();
  auto sx = x.support(), sy = y.support();
  const int nm = x.nm, nc = x.ncol, lo = x.mlo;
  for (int i = 0; i <= 2 * nm; ++i) {
    if (sx[i].first < 0) continue;
    for (int j = 0; j <= 2 * nm; ++j) {
      if (sy[j].first < 0) continue;
      int n = (i - nm) + (j - nm);
      if (n < -nm || n > nm) continue;
      C* out = &r.a[(n + nm) * nc];
      const C* xa = &x.a[i * nc];
      const C* ya = &y.a[j * nc];
      for (int p = sx[i].first; p <= sx[i].second; ++p) {
        const C xp = xa[p];
        if (xp == C(0)) continue;
        // column of the product: p + q + lo
        int qmax = std::min(sy[j].second, nc - 1 - p - lo);
        int qmin = std::max(sy[j].first, -p - lo);
        for (int q = qmin; q <= qmax; ++q) out[p + q + lo] += xp * ya[q];
      }
    }
  }
  return r;
}

template <class C> formal_series<C> derivative(const formal_series<C>& x, const C& omega) {
  formal_series<C> r = x.zero();
  const C half_i = imag_unit<C>() / C(2);
  for (int n = -x.nm; n <= x.nm; ++n)
    for (int m = x.mlo; m <= x.mhi; ++m) {
      C v = half_i * C(n) * x.at(n, m);
      if (m - 2 >= x.mlo) v -= (C(n) * omega + C(m - 2) / C(2)) * x.at(n, m - 2);
      r.at(n, m) = v;
    }
  return r;
}

// multiplication by t = s^{-2}
template <class C> formal_series<C> times_t(const formal_series<C>& x) {
  formal_series<C> r = x.zero();
  for (int n = -x.nm; n <= x.nm; ++n)
    for (int m = x.mlo; m + 2 <= x.mhi; ++m) r.at(n, m) = x.at(n, m + 2);
  return r;
}

// num/den with den = 1 + (terms of positive s-order)
template <class C> formal_series<C> divide(const formal_series<C>& num, const formal_series<C>& den) {
  formal_series<C> y = num.zero();
  const int nm = num.nm;
  for (int m = num.mlo; m <= num.mhi; ++m) {
    for (int n = -nm; n <= nm; ++n) y.at(n, m) = num.at(n, m);
    for (int j = 1; m - j >= num.mlo; ++j) {
      if (j > den.mhi) break;
      for (int a = -nm; a <= nm; ++a) {
        const C d = den.at(a, j);
        if (d == C(0)) continue;
        for (int b = std::max(-nm, -nm - a); b <= std::min(nm, nm - a); ++b) y.at(a + b, m) -= d * y.at(b, m - j);
      }
    }
  }
  return y;
}

template <class C> std::vector<C> fourier_weights(const C& omega, int nm) {
  using std::exp;
  auto ratio = [&](int m) {
    C g(1);
    if (m >= 0)
      for (int j = 1; j <= m; ++j) g *= omega + C(j);
    else
      for (int j = m + 1; j <= 0; ++j) g /= omega + C(j);
    return exp(C(-m) * C(log(real_t<C>(2))) - imag_unit<C>() * C(pi_v<C>()) * C(m) / C(2)) * g;
  };
  std::vector<C> w(2 * nm + 1);
  w[nm] = C(1);
  for (int n = 1; n <= nm; ++n) w[nm + n] = w[nm + n - 1] * ratio(n - 1);
  for (int n = -1; n >= -nm; --n) w[nm + n] = w[nm + n + 1] / ratio(n);
  return w;
}

struct bump {
  int n, m;
};

template <class C> class residual_builder {
 public:
  residual_builder(const pv_params<C>& p, int nm, int mhi) : p_(p), nm_(nm), mhi_(mhi) {}

  // Residual of the sigma-form equation for the sum with g[n+nm][k-1] = G_k(omega+n),
  // followed by its derivatives along each group of bumps.
  std::vector<formal_series<C>> operator()(const C& omega, const std::vector<std::vector<C>>& g,
                                           const std::vector<std::vector<bump>>& dirs) const {
    formal_series<C> s(nm_, -8, mhi_);
    auto w = fourier_weights(omega, nm_);
    for (int n = -nm_; n <= nm_; ++n) {
      if (n * n > mhi_) continue;
      s.at(n, n * n) += w[n + nm_];
      const auto& gn = g[n + nm_];
      for (std::size_t k = 1; k <= gn.size(); ++k) {
        int m = n * n + 2 * static_cast<int>(k);
        if (m <= mhi_) s.at(n, m) += w[n + nm_] * gn[k - 1];
      }
    }
    std::vector<formal_series<C>> ds;
    for (const auto& d : dirs) {
      formal_series<C> x = s.zero();
      for (const auto& b : d)
        if (x.inside(b.n, b.m)) x.at(b.n, b.m) += w[b.n + nm_];
      ds.push_back(std::move(x));
    }
    return evaluate(s, ds, omega);
  }

 private:
  std::vector<formal_series<C>> evaluate(const formal_series<C>& s, const std::vector<formal_series<C>>& ds,
                                         const C& omega) const {
    const C& a = p_.theta0;
    const C& b = p_.thetat;
    const C& c = p_.thetastar;
    const C kappa = a * a + b * b + c * c - C(real_t<C>(0.25));
    formal_series<C> y = divide(derivative(s, omega), s);
    formal_series<C> h = times_t(y);
    h.add_constant(-4, C(1) / C(16));
    h.add_constant(-2, imag_unit<C>() * omega / C(2));
    h.add_constant(0, kappa - omega * omega / C(2) - c * c / C(2));
    formal_series<C> hd = derivative(h, omega), hdd = derivative(hd, omega);
    formal_series<C> hd2 = mul(hd, hd);
    formal_series<C> pp = h;
    pp -= times_t(hd);
    pp += scaled(hd2, C(2));
    formal_series<C> f1 = scaled(hd2, C(4)), f2 = f1;
    f1 -= scaled(hd, C(4) * c);
    f2 += scaled(hd, C(4) * c);
    f1.add_constant(0, c * c - C(4) * a * a);
    f2.add_constant(0, c * c - C(4) * b * b);
    formal_series<C> th = times_t(hdd);

    std::vector<formal_series<C>> out;
    formal_series<C> r = mul(th, th);
    r -= mul(pp, pp);
    r += scaled(mul(f1, f2), C(real_t<C>(0.25)));
    out.push_back(std::move(r));

    for (const auto& d : ds) {
      // y' = (dS' - y dS)/S
      formal_series<C> dy = derivative(d, omega);
      dy -= mul(y, d);
      dy = divide(dy, s);
      formal_series<C> dh = times_t(dy);
      formal_series<C> dhd = derivative(dh, omega), dhdd = derivative(dhd, omega);
      formal_series<C> dhd2 = scaled(mul(hd, dhd), C(2));
      formal_series<C> dpp = dh;
      dpp -= times_t(dhd);
      dpp += scaled(dhd2, C(2));
      formal_series<C> df1 = scaled(dhd2, C(4)), df2 = df1;
      df1 -= scaled(dhd, C(4) * c);
      df2 += scaled(dhd, C(4) * c);
      formal_series<C> dth = times_t(dhdd);
      formal_series<C> dr = scaled(mul(th, dth), C(2));
      dr -= scaled(mul(pp, dpp), C(2));
      formal_series<C> ff = mul(df1, f2);
      ff += mul(f1, df2);
      dr += scaled(ff, C(real_t<C>(0.25)));
      out.push_back(std::move(dr));
    }
    return out;
  }

  static formal_series<C> scaled(formal_series<C> x, const C& f) {
    x *= f;
    return x;
  }

  pv_params<C> p_;
  int nm_, mhi_;
};

template <class C> C polyval(const std::vector<C>& c, const C& x) {
  C r(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

}  // namespace

template <class C> gk_table<C> gk_polynomials(const pv_params<C>& p, int order) {
  using std::abs;
  using std::exp;
  if (order < 0 || order > channel_defaults::gk_max)
    throw error(errc::config, "gk order " + std::to_string(order) + " outside [0," +
                                  std::to_string(channel_defaults::gk_max) + "]");
  using mat = Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>;
  using vec = Eigen::Matrix<C, Eigen::Dynamic, 1>;
  const int nm = order + 5, nrow = 2;
  std::vector<std::vector<C>> coef(order + 2);
  gk_table<C> out;
  for (int k = 1; k <= order + 1; ++k) {
    const int mhi = 2 * k + nrow + 2;
    const int deg = 3 * k, ns = deg + 3;
    const int nunk = deg + (k > 1 ? 1 : 0);
    coef[k].assign(deg + 1, C(0));
    residual_builder<C> build(p, nm, mhi);
    mat a(ns * (2 * nrow + 1), nunk);
    vec rhs(ns * (2 * nrow + 1));
    int row = 0;
    for (int i = 0; i < ns; ++i) {
      const real_t<C> phi = 2 * pi_v<C>() * i / ns;
      const C omega = exp(imag_unit<C>() * C(phi)) + C(real_t<C>(5) / 100, real_t<C>(2) / 100);
      std::vector<std::vector<C>> g(2 * nm + 1);
      for (int n = -nm; n <= nm; ++n)
        for (int kk = 1; kk <= k; ++kk) g[n + nm].push_back(polyval(coef[kk], C(omega + C(n))));
      std::vector<std::vector<bump>> dirs;
      for (int n = -nrow; n <= nrow; ++n) dirs.push_back({{n, n * n + 2 * k}});
      if (k > 1) {
        std::vector<bump> bumps;
        for (int n = -nm; n <= nm; ++n) bumps.push_back({n, n * n + 2 * k - 2});
        dirs.push_back(bumps);
      }
      auto ev = build(omega, g, dirs);
      const formal_series<C>& base = ev[0];
      const formal_series<C>* jac = &ev[1];
      const formal_series<C>& jconst = ev.back();
      for (int nn = -nrow; nn <= nrow; ++nn) {
        const int m = -6 + 2 * k + std::abs(nn);
        for (int j = 1; j <= deg; ++j) {
          C v(0);
          for (int n = -nrow; n <= nrow; ++n) {
            C pw(1);
            for (int e = 0; e < j; ++e) pw *= omega + C(n);
            v += pw * jac[n + nrow].at(nn, m);
          }
          a(row, j - 1) = v;
        }
        if (k > 1) a(row, deg) = jconst.at(nn, m);
        rhs(row) = -base.at(nn, m);
        ++row;
      }
    }
    std::vector<real_t<C>> colscale(nunk);
    for (int j = 0; j < nunk; ++j) {
      real_t<C> nrm = a.col(j).norm();
      colscale[j] = nrm > 0 ? nrm : real_t<C>(1);
      a.col(j) /= C(colscale[j]);
    }
    Eigen::ColPivHouseholderQR<mat> qr(a);
    if (qr.rank() < nunk)
      throw error(errc::non_solvable_order, "gk order " + std::to_string(k) + ": rank " + std::to_string(qr.rank()) +
                                                " below " + std::to_string(nunk));
    vec x = qr.solve(rhs);
    vec res = a * x - rhs;
    for (int j = 0; j < nunk; ++j) x(j) /= C(colscale[j]);
    double worst = 0, scale = 0;
    for (int i = 0; i < res.size(); ++i) {
      worst = std::max(worst, magnitude(C(res(i))));
      scale = std::max(scale, magnitude(C(rhs(i))));
    }
    double rel = scale > 0 ? worst / scale : worst;
    if (rel > 1e-6)
      throw error(errc::non_solvable_order, "gk order " + std::to_string(k) + ": inconsistent system, residual " +
                                                std::to_string(rel));
    if (k <= order) out.max_step_residual = std::max(out.max_step_residual, rel);
    for (int j = 1; j <= deg; ++j) coef[k][j] += x(j - 1);
    if (k > 1) coef[k - 1][0] += x(deg);
  }
  for (int k = 1; k <= order; ++k) out.poly.push_back(coef[k]);
  return out;
}

template gk_table<cplx> gk_polynomials(const pv_params<cplx>&, int);
template gk_table<xcplx> gk_polynomials(const pv_params<xcplx>&, int);

}  // namespace pvtau
