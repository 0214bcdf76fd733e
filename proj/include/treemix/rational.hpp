#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace Eigen {

// Teach Eigen about GMP rationals so dense kernels, products and traces can
// be taken over exact arithmetic.  Costs are rough order-of-magnitude hints
// for Eigen's evaluators; exactness is what matters here, not speed.
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100,
  };
};

}  // namespace Eigen

namespace treemix {

using BigInt = mpz_class;
using Rational = mpq_class;
using Index = Eigen::Index;

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

// Thrown when a request exceeds a configured size cap; the CLI maps this to
// its resource exit code.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// C(n, 2) = n(n-1)/2; zero for n < 2.
inline BigInt choose2(long n) {
  if (n < 2) return 0;
  return BigInt(n) * (n - 1) / 2;
}

// C(n, k) for big n, small k.
inline BigInt binomial(const BigInt& n, unsigned long k) {
  BigInt r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

// num/den reduced to lowest terms; den must be nonzero.
inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("make_rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rational_pow(const Rational& base, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  return r;  // canonical inputs stay canonical under coordinate-wise powers
}

// Exact quotient a/b; throws if b does not divide a.  Used where a formula
// promises divisibility, so a failure here means the formula was violated.
inline BigInt exact_div(const BigInt& a, const BigInt& b, const char* what) {
  BigInt q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (r != 0) throw std::logic_error(std::string("exact_div: ") + what);
  return q;
}

// Canonical "p/q" rendering, denominator always present ("0/1", "1/1", ...).
inline std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace treemix
