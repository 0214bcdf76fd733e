#pragma once

#include <cstdint>
#include <string_view>
#include <utility>

#include "treemix/chain.hpp"

namespace treemix {

// Closed-form spectrum of the size-n down-up kernel: eigenvalue 1 once, then
// 1 - C(i,2)/C(n,2) with multiplicity T_i - T_{i-1} for i = 3..n, listed in
// descending eigenvalue order.  Multiplicities sum to T_n.
struct Spectrum {
  int n = 0;
  std::vector<std::pair<Rational, BigInt>> eigenvalues;
};
Spectrum down_up_spectrum(int n);

// Maximal separation distance of the size-n down-up chain after r steps,
// three independent routes.  All return exact rationals and agree entry for
// entry; r = 0 gives 1 when the chain has at least two states, else 0.

// Alternating eigenvalue sum (closed form, cheap at any n for moderate r).
Rational separation_eigen(int n, long r);

// Triangular A(r, k) recurrence on exact integers.
Rational separation_recurrence(int n, long r);

// Dense exact matrix power: max over pairs of 1 - K^r(t, t')/pi(t'),
// together with every pair attaining the max (row-major order).  Refuses
// n above the cap.
struct BruteforceSeparation {
  Rational value;
  std::vector<std::pair<Index, Index>> argmax;
};
inline constexpr int kBruteforceCap = 8;
BruteforceSeparation separation_bruteforce(int n, long r, int max_size = kBruteforceCap);

// Maximal separation of the size-n up-down chain after r steps (exact
// partial-fraction form); equals separation_eigen(n+1, r+1).
Rational separation_updown(int n, long r);

// Monte-Carlo estimate of the separation tail: s*(r) = P(T > r) where T is a
// sum of independent geometrics with success rates C(i,2)/C(n,2), i = 3..n,
// each supported on {1, 2, ...}.  Deterministic given the seed (mt19937_64).
double geometric_tail(int n, long r, long samples, std::uint64_t seed);

// The n -> infinity separation profile at time c*n^2: alternating series
// sum_{i>=3} (-1)^{i-1} (1/2)(2i-1)(i+1)(i-2) e^{-c i(i-1)}, truncated once
// terms are decreasing and the next omitted term is below tol (which then
// bounds the truncation error).
struct LimitSeries {
  double c = 0;
  double value = 0;
  int terms_used = 0;
  double tail_bound = 0;
};
LimitSeries limit_value(double c, double tol = 1e-12);

// Floating-point evaluation of the eigenvalue sum, for n far beyond exact
// practicality: log-domain first coefficient, incremental ratio updates,
// compensated summation.
double separation_float(int n, long r);

enum class SeparationRoute { kEigenFormula, kARecurrence, kMatrixPower };
std::string_view route_name(SeparationRoute route);

// Separation distance for every r = 0..r_max along one route.  Exact
// rationals except for the eigen route at large n, which switches to
// separation_float (and says so via `exact`).
struct SeparationCurve {
  int n = 0;
  SeparationRoute route = SeparationRoute::kEigenFormula;
  bool exact = true;
  std::vector<Rational> exact_values;  // index r, present when exact
  std::vector<double> float_values;    // index r, present when !exact
};
SeparationCurve separation_curve(int n, long r_max, SeparationRoute route,
                                 int bruteforce_cap = kBruteforceCap);

}  // namespace treemix
