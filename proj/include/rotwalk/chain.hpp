#pragma once

#include <vector>

#include "rotwalk/observable.hpp"

namespace rotwalk {

/// The walk at a rational angle p/q restricted to one orbit: a q-state
/// symmetric circulant chain with 1/2 on the +-p off-diagonals.
struct FiniteChain {
  Int q;  // odd
  Int p;  // coprime to q
  FiniteChain(Int q_, Int p_);
};

/// Eigenvalues cos(2 pi k p / q), k = 0..q-1. The mean-zero spectral radius
/// is cos(pi/q) for every coprime p.
std::vector<double> chain_spectrum(const FiniteChain& c);

struct MixingBound {
  double A;    // 1
  double rho;  // cos(pi/q)
};

/// (A, rho) with |(P^n)_{ij} - 1/q| <= A rho^n; the bound is certified by
/// exact dyadic matrix powers up to `verify_horizon`.
MixingBound mixing_bound(const FiniteChain& c, unsigned verify_horizon = 64);

/// Exact max_ij |(P^n)_{ij} - 1/q| for a single n (dyadic rational).
Rat chain_power_deviation(const FiniteChain& c, unsigned n);

/// Chebyshev bound on P(|S_n|/n^s > delta) for a single-frequency observable
/// a cos(2 pi q' x) with q' not a multiple of q:
///   [ a^2/2 + 2 A q a^2 / (1-rho) ] / (delta^2 n^{2s-1}).
double lemma2_bound(const CosineSeries& single_term, const FiniteChain& c, double n, double s_exp,
                    double delta);

/// Smallest n with lemma2_bound(...) < epsilon.
Int lemma2_find_N(const CosineSeries& single_term, const FiniteChain& c, double s_exp, double delta,
                  double epsilon);

}  // namespace rotwalk
