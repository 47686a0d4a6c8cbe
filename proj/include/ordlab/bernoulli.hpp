#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordlab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt factorial_big(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline BigInt binomial_big(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt b = 1;
  for (int i = 0; i < k; ++i) {
    b *= (n - i);
    b /= (i + 1);
  }
  return b;
}

// H_n = 1 + 1/2 + ... + 1/n as an exact rational; H_0 = 0.
inline Rational harmonic_number(int n) {
  Rational h = 0;
  for (int i = 1; i <= n; ++i) h += Rational(1, i);
  return h;
}

// Monomial-basis coefficients of the Bernoulli polynomials, exact rationals.
// Built from B_0 = 1 by the derivative recurrence B_n' = n B_{n-1} with the
// constant term fixed by the mean-zero normalisation on [0,1]. Coefficient
// cancellation is severe, so doubles are derived from the rationals only at
// the final evaluation step.
class BernoulliTable {
 public:
  static constexpr int kDegreeCap = 30;

  BernoulliTable() {
    if (!load_cache()) {
      build();
      save_cache();
    }
    coeffs_dbl_.resize(coeffs_.size());
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
      for (const auto& c : coeffs_[n])
        coeffs_dbl_[n].push_back(static_cast<double>(c));
    }
  }

  // coefficients(n)[k] multiplies x^k in B_n(x).
  const std::vector<Rational>& coefficients(int n) const {
    check_degree(n);
    return coeffs_[n];
  }

  Rational eval_exact(int n, const Rational& x) const {
    check_degree(n);
    Rational acc = 0;
    for (int k = n; k >= 0; --k) acc = acc * x + coeffs_[n][k];
    return acc;
  }

  double eval(int n, double x) const {
    check_degree(n);
    double acc = 0.0;
    for (int k = n; k >= 0; --k) acc = acc * x + coeffs_dbl_[n][k];
    return acc;
  }

 private:
  void check_degree(int n) const {
    if (n < 0 || n > kDegreeCap)
      throw std::domain_error("Bernoulli degree outside 0..30");
  }

  void build() {
    coeffs_.assign(kDegreeCap + 1, {});
    coeffs_[0] = {Rational(1)};
    for (int n = 1; n <= kDegreeCap; ++n) {
      std::vector<Rational> c(n + 1, Rational(0));
      for (int k = 0; k < n; ++k) c[k + 1] = Rational(n) * coeffs_[n - 1][k] / (k + 1);
      Rational integral = 0;
      for (int k = 1; k <= n; ++k) integral += c[k] / (k + 1);
      c[0] = -integral;
      coeffs_[n] = std::move(c);
    }
  }

  // Optional on-disk reuse of the coefficient table, honouring ORDLAB_CACHE.
  // The format is plain text: "n k numerator/denominator" per line.
  static std::string cache_path() {
    const char* dir = std::getenv("ORDLAB_CACHE");
    if (!dir || !*dir) return {};
    return std::string(dir) + "/bernoulli_coefficients_v1.txt";
  }

  bool load_cache() {
    const std::string path = cache_path();
    if (path.empty()) return false;
    std::ifstream in(path);
    if (!in) return false;
    std::vector<std::vector<Rational>> loaded(kDegreeCap + 1);
    int n, k;
    std::string value;
    while (in >> n >> k >> value) {
      if (n < 0 || n > kDegreeCap || k < 0 || k > n) return false;
      if (loaded[n].empty()) loaded[n].assign(n + 1, Rational(0));
      try {
        loaded[n][k] = Rational(value);
      } catch (const std::exception&) {
        return false;
      }
    }
    for (int d = 0; d <= kDegreeCap; ++d)
      if (loaded[d].size() != static_cast<std::size_t>(d) + 1) return false;
    if (loaded[0][0] != 1) return false;
    coeffs_ = std::move(loaded);
    return true;
  }

  void save_cache() const {
    const std::string path = cache_path();
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) return;
    for (int n = 0; n <= kDegreeCap; ++n)
      for (int k = 0; k <= n; ++k)
        out << n << " " << k << " " << coeffs_[n][k] << "\n";
  }

  std::vector<std::vector<Rational>> coeffs_;
  std::vector<std::vector<double>> coeffs_dbl_;
};

inline const BernoulliTable& bernoulli_table() {
  static const BernoulliTable table;
  return table;
}

inline double bernoulli_poly(int n, double x) {
  return bernoulli_table().eval(n, x);
}

inline Rational bernoulli_poly_exact(int n, const Rational& x) {
  return bernoulli_table().eval_exact(n, x);
}

// Zeros of B_n in [0,1]. Odd n >= 3: exactly {0, 1/2, 1}. Even n: exactly one
// zero in (0,1/2) and one in (1/2,1), found by bisection. The counts are
// re-verified by a sign scan; a mismatch means the evaluator itself is broken.
inline std::vector<double> bernoulli_zeros(int n) {
  if (n < 2) throw std::domain_error("bernoulli_zeros: need n >= 2");
  const auto& table = bernoulli_table();

  const int grid = 4096;
  int sign_changes = 0;
  double prev = table.eval(n, 0.5 / grid);
  for (int i = 2; i < 2 * grid; ++i) {
    const double x = i * 0.5 / grid;
    const double val = table.eval(n, x);
    if (prev * val < 0) ++sign_changes;
    if (val != 0.0) prev = val;
  }

  if (n % 2 == 1) {
    if (table.eval_exact(n, Rational(0)) != 0 ||
        table.eval_exact(n, Rational(1, 2)) != 0 ||
        table.eval_exact(n, Rational(1)) != 0 || sign_changes != 1)
      throw std::logic_error("bernoulli_zeros: odd-degree zero structure violated");
    return {0.0, 0.5, 1.0};
  }

  if (sign_changes != 2)
    throw std::logic_error("bernoulli_zeros: even-degree zero count violated");
  auto bisect = [&](double lo, double hi) {
    double flo = table.eval(n, lo);
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fmid = table.eval(n, mid);
      if (fmid == 0.0) return mid;
      if ((flo < 0) == (fmid < 0)) {
        lo = mid;
        flo = fmid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };
  // B_n(0) and B_n(1/2) have opposite signs for even n.
  return {bisect(0.0, 0.5), bisect(0.5, 1.0)};
}

// P^j_k(alpha): with X_1..X_{n-1} i.i.d. U(0,1) and X_n defined so the sum of
// all n is alpha mod 1, the probability that j extra independent uniforms all
// fall below X_k while X_1 < X_2 < ... < X_n.
struct FormulaTerms {
  double value = 0.0;
  double main_term = 0.0;
  double correction = 0.0;
};

inline Rational addx_probability_exact(int n, int k, const Rational& alpha,
                                       int j) {
  if (n < 2 || k < 1 || k > n) throw std::domain_error("addx: need n >= 2, 1 <= k <= n");
  if (alpha < 0 || alpha > 1) throw std::domain_error("addx: alpha outside [0,1]");
  if (j != 1 && j != 2) throw std::domain_error("addx: j must be 1 or 2");
  const int sign = ((n - k) % 2 == 0) ? 1 : -1;
  if (j == 1) {
    Rational main = Rational(k) / factorial_big(n + 1);
    Rational corr = Rational(sign) * Rational(binomial_big(n - 1, k - 1)) /
                    (factorial_big(n) * factorial_big(n)) *
                    bernoulli_poly_exact(n, alpha);
    return main + corr;
  }
  Rational main = Rational(BigInt(k) * (k + 1)) / factorial_big(n + 2);
  Rational bracket = Rational(n + 1) * bernoulli_poly_exact(n, alpha) +
                     2 * harmonic_number(n) * bernoulli_poly_exact(n + 1, alpha);
  Rational corr = Rational(sign) * Rational(binomial_big(n - 1, k - 1)) /
                  (factorial_big(n) * factorial_big(n + 1)) * bracket;
  return main + corr;
}

inline FormulaTerms addx_probability_terms(int n, int k, double alpha, int j) {
  if (n < 2 || k < 1 || k > n) throw std::domain_error("addx: need n >= 2, 1 <= k <= n");
  if (alpha < 0.0 || alpha > 1.0) throw std::domain_error("addx: alpha outside [0,1]");
  if (j != 1 && j != 2) throw std::domain_error("addx: j must be 1 or 2");
  const double sign = ((n - k) % 2 == 0) ? 1.0 : -1.0;
  FormulaTerms t;
  if (j == 1) {
    t.main_term = static_cast<double>(Rational(k) / factorial_big(n + 1));
    const double scale = static_cast<double>(
        Rational(binomial_big(n - 1, k - 1)) / (factorial_big(n) * factorial_big(n)));
    t.correction = sign * scale * bernoulli_poly(n, alpha);
  } else {
    t.main_term =
        static_cast<double>(Rational(BigInt(k) * (k + 1)) / factorial_big(n + 2));
    const double scale = static_cast<double>(
        Rational(binomial_big(n - 1, k - 1)) /
        (factorial_big(n) * factorial_big(n + 1)));
    const double bracket = (n + 1) * bernoulli_poly(n, alpha) +
                           2.0 * static_cast<double>(harmonic_number(n)) *
                               bernoulli_poly(n + 1, alpha);
    t.correction = sign * scale * bracket;
  }
  t.value = t.main_term + t.correction;
  return t;
}

inline double addx_probability(int n, int k, double alpha, int j) {
  return addx_probability_terms(n, k, alpha, j).value;
}

// Order-statistic asymmetries for the edge-signed conditioning: the sum of
// all X_i has coefficient -1 on two designated vertices and +1 elsewhere.
enum class DeltaOrder { pair, triple };

inline Rational edgedist_delta_exact(int n, const Rational& alpha,
                                     DeltaOrder order) {
  if (alpha < 0 || alpha > 1) throw std::domain_error("edgedist: alpha outside [0,1]");
  const int sign = (n % 2 == 0) ? 1 : -1;
  if (order == DeltaOrder::pair) {
    if (n < 3) throw std::domain_error("edgedist pair: need n >= 3");
    return Rational(sign) * Rational(binomial_big(n, 2)) / factorial_big(n - 1) *
           bernoulli_poly_exact(n - 1, alpha);
  }
  if (n < 4) throw std::domain_error("edgedist triple: need n >= 4");
  Rational first = Rational(sign) *
                   (Rational(n - 3) + 2 * harmonic_number(n - 3)) /
                   factorial_big(n - 1) * bernoulli_poly_exact(n - 1, alpha);
  Rational second = Rational(sign) / factorial_big(n - 2) *
                    bernoulli_poly_exact(n - 2, alpha);
  return first + second;
}

inline FormulaTerms edgedist_delta_terms(int n, double alpha, DeltaOrder order) {
  if (alpha < 0.0 || alpha > 1.0) throw std::domain_error("edgedist: alpha outside [0,1]");
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  FormulaTerms t;
  if (order == DeltaOrder::pair) {
    if (n < 3) throw std::domain_error("edgedist pair: need n >= 3");
    t.main_term = sign *
                  static_cast<double>(Rational(binomial_big(n, 2)) / factorial_big(n - 1)) *
                  bernoulli_poly(n - 1, alpha);
    t.correction = 0.0;
  } else {
    if (n < 4) throw std::domain_error("edgedist triple: need n >= 4");
    t.main_term = sign *
                  static_cast<double>((Rational(n - 3) + 2 * harmonic_number(n - 3)) /
                                      factorial_big(n - 1)) *
                  bernoulli_poly(n - 1, alpha);
    t.correction = sign * static_cast<double>(Rational(1) / factorial_big(n - 2)) *
                   bernoulli_poly(n - 2, alpha);
  }
  t.value = t.main_term + t.correction;
  return t;
}

inline double edgedist_delta(int n, double alpha, DeltaOrder order) {
  return edgedist_delta_terms(n, alpha, order).value;
}

// Default alpha: the grid point maximising |B_degree|, which stays clear of
// every zero of the polynomial.
inline double pick_alpha_auto(int degree) {
  const auto& table = bernoulli_table();
  double best_x = 0.0;
  double best = -1.0;
  for (int i = 0; i <= 10000; ++i) {
    const double x = i * 1e-4;
    const double v = std::fabs(table.eval(degree, x));
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace ordlab
