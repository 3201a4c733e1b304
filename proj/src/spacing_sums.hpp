#pragma once

// Quadratic and cubic forms in the spacings of an ordered set of M values.
//
// The variance components and Edgeworth parameters of U_G share the same
// bracketed sums, once over population spacings (M = N) and once over sample
// spacings (M = n). Only the prefactors differ, so the sums live here and
// both the population and the plug-in formulas call them.

#include <span>

#include "gmd/hoeffding.hpp"

namespace gmd::detail {

// sum_i i(M-i) a_i^2 D_i^2 + 2 sum_{i<j} i(M-j) a_i a_j D_i D_j
double sigma1_bracket(std::span<const double> spacings, SumPath path);

// sum_i i(i-1)(M-i-1)(M-i) D_i^2 + 2 sum_{i<j} i(i-1)(M-j-1)(M-j) D_i D_j
double sigma2_bracket(std::span<const double> spacings, SumPath path);

// The four-term bracket of the closed-form skewness of U_G.
double alpha_bracket(std::span<const double> spacings, SumPath path);

// sum_{i,j,m} c_ijm a_j a_m D_i D_j D_m.
// Naive: the (M-1)^3 loop with compensated summation.
// Fast: for each (i, j) the sum over m is split into the case regions, on
// each of which c_ijm is a quadratic in m, and summed from prefix moments.
double kappa_bracket(std::span<const double> spacings, SumPath path);

// The six-branch coefficient, first matching branch in the printed order.
double kappa_coefficient(long i, long j, long m, long M);

}  // namespace gmd::detail
