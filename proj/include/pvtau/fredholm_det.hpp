#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include "pvtau/numeric.hpp"
#include "pvtau/tau_expansions.hpp"

namespace pvtau {

template <class C> using dense_matrix = Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>;

// Modes p, q in {1/2, ..., N-1/2}; row 2p+i of a pairs with column 2q+j.
template <class C> struct fourier_block_matrix {
  int modes = 0;
  C s_minus;
  dense_matrix<C> a, d;

  dense_matrix<C> assembled() const;
  C determinant() const;
};

template <class C> C s_minus(const C& sigma, const C& eta, const pv_params<C>& p);

template <class C>
fourier_block_matrix<C> matrix_elements(const C& t, const C& sigma, const pv_params<C>& p, const C& sminus, int modes);

template <class C> C tau_fredholm(const C& t, const C& sigma, const C& eta, const pv_params<C>& p, int modes);

// Tr(a_{1/2,-1/2} d_{-1/2,1/2}).
template <class C> C leading_trace(const C& t, const C& sigma, const C& eta, const pv_params<C>& p);

}  // namespace pvtau
