#pragma once

#include <map>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "rotwalk/observable.hpp"

namespace rotwalk {

/// A frequency where 1 - cos(2 pi n alpha) vanishes while phi-hat(n) does not:
/// the Poisson equation has no solution there.
class ResonanceError : public std::domain_error {
 public:
  ResonanceError(const Int& n, std::string what) : std::domain_error(std::move(what)), frequency(n) {}
  Int frequency;
};

/// Eigenvalue of I - T on exp(2 pi i n x): 1 - cos(2 pi n alpha).
/// Evaluated as 2 sin^2(pi d) with d the exact signed distance of n*alpha
/// to the nearest integer, which stays accurate near resonance.
double eigenvalue(const Int& n, const Angle& a);

/// True iff the eigenvalue at n is exactly zero (rational angle, q | n).
bool resonant(const Int& n, const Angle& a);

/// T phi for T phi(x) = (phi(x+alpha) + phi(x-alpha))/2: each term picks up
/// the factor cos(2 pi q_j alpha).
CosineSeries transfer_apply(const CosineSeries& s, const Angle& a);

/// Solution of T psi - psi = phi in Fourier space: psi-hat(n) = phi-hat(n) /
/// (1 - cos(2 pi n alpha)), psi-hat(0) = 0.
struct PoissonSolution {
  std::map<Int, double> psi_coeffs;  // n > 0; psi-hat(-n) = psi-hat(n)
  Int cutoff;
  double residual_bound = 0.0;
  CosineSeries as_series() const;
};

PoissonSolution poisson_solve(const CosineSeries& s, const Angle& a, const Int& cutoff);

/// Partial sums over 0 < |n| <= N of the three diagnostic series.
double kv_partial(const CosineSeries& s, const Angle& a, const Int& N);       // |phi|^2 / lambda
double poisson_partial(const CosineSeries& s, const Angle& a, const Int& N);  // |phi|^2 / lambda^2
double sigma2_partial(const CosineSeries& s, const Angle& a, const Int& N);   // (1+cos)/(1-cos) |phi|^2

struct Prop1Result {
  bool holds;
  double convergence_exponent;  // 2r - 2(gamma-1), valid when holds
};

/// r > gamma - 1/2 test; r = nullopt means C^infinity.
Prop1Result prop1_criterion(std::optional<unsigned> r, double gamma, double c);

struct SpectralRow {
  Int n;
  double lambda, kv_term, sigma2_term;
};

struct SpectralReport {
  nlohmann::json angle_json() const;
  Angle angle;
  CosineSeries series;
  Int cutoff;
  double kv = 0, poisson = 0, sigma2 = 0;
  std::vector<SpectralRow> rows;

  std::string to_csv() const;
  nlohmann::json summary_json() const;
};

SpectralReport spectral_report(const CosineSeries& s, const Angle& a, const Int& cutoff);

}  // namespace rotwalk
