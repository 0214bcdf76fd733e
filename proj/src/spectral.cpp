#include "treemix/spectral.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace treemix {

namespace {

// Exact eigen-formula curves switch to floating point above this size: the
// r-th powers of the eigenvalue rationals carry ~r*log2 C(n,2) bits each,
// which is pointless weight at the sizes where the float route is already
// accurate to ~1e-12.
constexpr int kExactEigenCurveCap = 30;

}  // namespace

Spectrum down_up_spectrum(int n) {
  if (n < 1) throw std::domain_error("down_up_spectrum: n must be >= 1");
  Spectrum s;
  s.n = n;
  s.eigenvalues.emplace_back(Rational(1), BigInt(1));
  const BigInt cn = choose2(n);
  BigInt t_prev = count_trees(2);  // T_2 = 1; loop starts at i = 3
  for (int i = 3; i <= n; ++i) {
    const BigInt t_i = count_trees(i);
    s.eigenvalues.emplace_back(1 - make_rational(choose2(i), cn), t_i - t_prev);
    t_prev = t_i;
  }
  return s;
}

Rational separation_eigen(int n, long r) {
  if (n < 1) throw std::domain_error("separation_eigen: n must be >= 1");
  if (r < 0) throw std::domain_error("separation_eigen: r must be >= 0");
  if (r == 0) return n >= 3 ? 1 : 0;  // the formula below assumes r >= 1
  Rational s = 0;
  const BigInt n_fact = factorial(static_cast<unsigned long>(n));
  const BigInt cn = choose2(n);
  for (int i = 3; i <= n - 1; ++i) {
    const BigInt num =
        BigInt(2 * i - 1) * (i + 1) * (i - 2) * n_fact * n_fact;
    const BigInt den = BigInt(2) * n * factorial(static_cast<unsigned long>(n - i)) *
                       factorial(static_cast<unsigned long>(n + i - 1));
    const Rational lam = 1 - make_rational(choose2(i), cn);
    const Rational term =
        make_rational(num, den) * rational_pow(lam, static_cast<unsigned long>(r));
    if (i % 2) {
      s += term;
    } else {
      s -= term;
    }
  }
  return s;
}

Rational separation_recurrence(int n, long r) {
  if (n < 1) throw std::domain_error("separation_recurrence: n must be >= 1");
  if (r < 0) throw std::domain_error("separation_recurrence: r must be >= 0");
  if (n == 1) return 0;  // single state
  // A(r, k) over k = 0..n-1, updated in place (descending k keeps the
  // A(r-1, k-1) term untouched until it is consumed)
  std::vector<BigInt> a(static_cast<size_t>(n), BigInt(0));
  a[0] = 1;
  const BigInt cn = choose2(n);
  std::vector<BigInt> coeff(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) coeff[static_cast<size_t>(k)] = cn - choose2(n - k);
  for (long step = 0; step < r; ++step) {
    for (int k = n - 1; k >= 1; --k) {
      a[static_cast<size_t>(k)] =
          a[static_cast<size_t>(k - 1)] + a[static_cast<size_t>(k)] * coeff[static_cast<size_t>(k)];
    }
    a[0] *= coeff[0];  // coeff[0] = 0, so the k = 0 entry dies after one step
  }
  BigInt z = 1;
  for (int i = 2; i <= n; ++i) z *= choose2(i);
  BigInt cn_pow;
  mpz_pow_ui(cn_pow.get_mpz_t(), cn.get_mpz_t(), static_cast<unsigned long>(r));
  return 1 - make_rational(z * (a[static_cast<size_t>(n - 2)] + a[static_cast<size_t>(n - 1)]),
                           cn_pow);
}

BruteforceSeparation separation_bruteforce(int n, long r, int max_size) {
  if (n < 1) throw std::domain_error("separation_bruteforce: n must be >= 1");
  if (r < 0) throw std::domain_error("separation_bruteforce: r must be >= 0");
  if (n > max_size) {
    throw ResourceLimitError("separation_bruteforce: n=" + std::to_string(n) +
                             " exceeds the dense-power cap " + std::to_string(max_size));
  }
  const RationalKernel k = down_up_kernel(n, max_size);
  const Measure pi = plancherel_measure(k.row_table);
  RationalMatrix power = RationalMatrix::Zero(k.entries.rows(), k.entries.cols());
  for (Index i = 0; i < power.rows(); ++i) power(i, i) = 1;
  for (long step = 0; step < r; ++step) power = (power * k.entries).eval();

  BruteforceSeparation out{Rational(0), {}};
  bool first = true;
  for (Index i = 0; i < power.rows(); ++i) {
    for (Index j = 0; j < power.cols(); ++j) {
      const Rational sep = 1 - power(i, j) / pi.probs(j);
      if (first || sep > out.value) {
        out.value = sep;
        out.argmax.clear();
        first = false;
      }
      if (sep == out.value) out.argmax.emplace_back(i, j);
    }
  }
  return out;
}

Rational separation_updown(int n, long r) {
  if (n < 1) throw std::domain_error("separation_updown: n must be >= 1");
  if (r < 0) throw std::domain_error("separation_updown: r must be >= 0");
  Rational s = 0;
  const BigInt cn1 = choose2(n + 1);
  for (int i = 3; i <= n; ++i) {
    Rational term = rational_pow(1 - make_rational(choose2(i), cn1),
                                 static_cast<unsigned long>(r));
    for (int j = 3; j <= n; ++j) {
      if (j == i) continue;
      term *= make_rational(choose2(j), choose2(j) - choose2(i));
    }
    s += term;
  }
  return s;
}

double geometric_tail(int n, long r, long samples, std::uint64_t seed) {
  if (n < 2) throw std::domain_error("geometric_tail: n must be >= 2");
  if (r < 0) throw std::domain_error("geometric_tail: r must be >= 0");
  if (samples < 1) throw std::domain_error("geometric_tail: samples must be >= 1");
  // success rates p_i = C(i,2)/C(n,2); p_n = 1 exactly, so that summand is
  // the constant 1 and consumes no randomness
  std::vector<double> log_one_minus_p;
  long constant_part = 0;
  for (int i = 3; i <= n; ++i) {
    const double p = static_cast<double>(i) * (i - 1) / (static_cast<double>(n) * (n - 1));
    if (p >= 1.0) {
      constant_part += 1;
    } else {
      log_one_minus_p.push_back(std::log1p(-p));
    }
  }
  std::mt19937_64 rng(seed);
  long long exceed = 0;
  for (long s = 0; s < samples; ++s) {
    long long total = constant_part;
    for (const double log1mp : log_one_minus_p) {
      // inverse CDF of the geometric on {1, 2, ...}: u in (0, 1] avoids
      // log(0), and u = 1 lands on the smallest value
      const double u = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
      total += 1 + static_cast<long long>(std::floor(std::log(u) / log1mp));
    }
    if (total > r) ++exceed;
  }
  return static_cast<double>(exceed) / static_cast<double>(samples);
}

LimitSeries limit_value(double c, double tol) {
  if (!(c > 0)) throw std::domain_error("limit_value: c must be positive");
  if (!(tol > 0)) throw std::domain_error("limit_value: tol must be positive");
  LimitSeries out;
  out.c = c;
  double prev_mag = std::numeric_limits<double>::infinity();
  for (int i = 3; i <= 1000000; ++i) {
    const double mag = 0.5 * (2.0 * i - 1) * (i + 1) * (i - 2) *
                       std::exp(-c * static_cast<double>(i) * (i - 1));
    if (mag <= tol && mag <= prev_mag) {
      // alternating with decreasing magnitudes from here on, so the first
      // omitted term bounds the truncation error
      out.tail_bound = mag;
      return out;
    }
    out.value += (i % 2 ? 1.0 : -1.0) * mag;
    out.terms_used += 1;
    prev_mag = mag;
  }
  throw std::domain_error("limit_value: series did not reach tol (c too small?)");
}

double separation_float(int n, long r) {
  if (n < 3) throw std::domain_error("separation_float: n must be >= 3");
  if (r < 0) throw std::domain_error("separation_float: r must be >= 0");
  if (r == 0) return 1.0;  // T_n >= 2 for n >= 3
  if (n == 3) return 0.0;  // empty eigenvalue sum
  // coefficient at i = 3 in the log domain, then incremental ratios
  double coeff = std::exp(std::log(10.0) + 2 * std::lgamma(n + 1.0) - std::log(double(n)) -
                          std::lgamma(n - 2.0) - std::lgamma(n + 3.0));
  double sum = 0;
  double comp = 0;
  for (int i = 3; i <= n - 1; ++i) {
    const double x =
        static_cast<double>(i) * (i - 1) / (static_cast<double>(n) * (n - 1));
    const double lam_pow = std::exp(static_cast<double>(r) * std::log1p(-x));
    const double term = (i % 2 ? 1.0 : -1.0) * coeff * lam_pow;
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (i < n - 1) {
      coeff *= (2.0 * i + 1) * (i + 2) * (i - 1) * (n - i) /
               ((2.0 * i - 1) * (i + 1) * (i - 2) * (n + i));
    }
  }
  return sum;
}

std::string_view route_name(SeparationRoute route) {
  switch (route) {
    case SeparationRoute::kEigenFormula:
      return "eigen-formula";
    case SeparationRoute::kARecurrence:
      return "A-recurrence";
    case SeparationRoute::kMatrixPower:
      return "matrix-power";
  }
  return "unknown";
}

SeparationCurve separation_curve(int n, long r_max, SeparationRoute route,
                                 int bruteforce_cap) {
  if (n < 1) throw std::domain_error("separation_curve: n must be >= 1");
  if (r_max < 0) throw std::domain_error("separation_curve: r_max must be >= 0");
  SeparationCurve out;
  out.n = n;
  out.route = route;
  switch (route) {
    case SeparationRoute::kEigenFormula: {
      if (n > kExactEigenCurveCap) {
        out.exact = false;
        out.float_values.reserve(static_cast<size_t>(r_max) + 1);
        for (long r = 0; r <= r_max; ++r) out.float_values.push_back(separation_float(n, r));
      } else {
        out.exact_values.reserve(static_cast<size_t>(r_max) + 1);
        for (long r = 0; r <= r_max; ++r) out.exact_values.push_back(separation_eigen(n, r));
      }
      break;
    }
    case SeparationRoute::kARecurrence: {
      out.exact_values.reserve(static_cast<size_t>(r_max) + 1);
      if (n == 1) {
        out.exact_values.assign(static_cast<size_t>(r_max) + 1, Rational(0));
        break;
      }
      // same recurrence as separation_recurrence, advanced incrementally
      std::vector<BigInt> a(static_cast<size_t>(n), BigInt(0));
      a[0] = 1;
      const BigInt cn = choose2(n);
      std::vector<BigInt> coeff(static_cast<size_t>(n));
      for (int k = 0; k < n; ++k) coeff[static_cast<size_t>(k)] = cn - choose2(n - k);
      BigInt z = 1;
      for (int i = 2; i <= n; ++i) z *= choose2(i);
      BigInt cn_pow = 1;
      for (long r = 0; r <= r_max; ++r) {
        if (r > 0) {
          for (int k = n - 1; k >= 1; --k) {
            a[static_cast<size_t>(k)] = a[static_cast<size_t>(k - 1)] +
                                        a[static_cast<size_t>(k)] * coeff[static_cast<size_t>(k)];
          }
          a[0] *= coeff[0];
          cn_pow *= cn;
        }
        out.exact_values.push_back(
            1 - make_rational(z * (a[static_cast<size_t>(n - 2)] + a[static_cast<size_t>(n - 1)]),
                              cn_pow));
      }
      break;
    }
    case SeparationRoute::kMatrixPower: {
      if (n > bruteforce_cap) {
        throw ResourceLimitError("separation_curve: matrix-power route capped at n=" +
                                 std::to_string(bruteforce_cap));
      }
      const RationalKernel k = down_up_kernel(n, std::max(bruteforce_cap, kMaxEnumerationSize));
      const Measure pi = plancherel_measure(k.row_table);
      RationalMatrix power = RationalMatrix::Zero(k.entries.rows(), k.entries.cols());
      for (Index i = 0; i < power.rows(); ++i) power(i, i) = 1;
      out.exact_values.reserve(static_cast<size_t>(r_max) + 1);
      for (long r = 0; r <= r_max; ++r) {
        if (r > 0) power = (power * k.entries).eval();
        Rational best = 0;
        bool first = true;
        for (Index i = 0; i < power.rows(); ++i) {
          for (Index j = 0; j < power.cols(); ++j) {
            const Rational sep = 1 - power(i, j) / pi.probs(j);
            if (first || sep > best) {
              best = sep;
              first = false;
            }
          }
        }
        out.exact_values.push_back(std::move(best));
      }
      break;
    }
  }
  return out;
}

}  // namespace treemix
