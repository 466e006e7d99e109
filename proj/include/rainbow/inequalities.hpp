#pragma once

// Numeric evaluators for the analytic inequalities behind the product-type
// bounds. Floating point is confined to these checkers; comparisons use an
// absolute tolerance and report boundary cases as indeterminate instead of
// forcing a side.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace rainbow {

inline constexpr double kInequalityTolerance = 1e-9;

// f(t) = t*(ln k1^2 + ln t - ln n) - ln(k1*k2) + 2 ln n. Negative once n is
// large relative to k1^2 t; decreasing in t while ln(k1^2 t / n) + 1 < 0.
inline double eval_f_lemma32(std::uint64_t t, std::uint64_t n, std::uint64_t k1,
                             std::uint64_t k2) {
  if (t < 1 || k1 < 1 || k2 < 1 || n < 2)
    throw std::domain_error("eval_f_lemma32: need t, k1, k2 >= 1 and n >= 2");
  const double td = static_cast<double>(t);
  const double nd = static_cast<double>(n);
  const double k1d = static_cast<double>(k1);
  const double k2d = static_cast<double>(k2);
  return td * (std::log(k1d * k1d) + std::log(td) - std::log(nd)) -
         std::log(k1d * k2d) + 2.0 * std::log(nd);
}

// Derivative of f in t: ln(k1^2) + ln t - ln n + 1.
inline double eval_f_lemma32_derivative(std::uint64_t t, std::uint64_t n, std::uint64_t k1) {
  if (t < 1 || k1 < 1 || n < 2)
    throw std::domain_error("eval_f_lemma32_derivative: need t, k1 >= 1 and n >= 2");
  return std::log(static_cast<double>(k1) * static_cast<double>(k1)) +
         std::log(static_cast<double>(t)) - std::log(static_cast<double>(n)) + 1.0;
}

struct Lemma34Check {
  double lhs = 0.0;          // (k1 k2 / n^2)^(1/t)
  double rhs = 0.0;          // 1 - (1 - sum k_i / n)^{k1} / 2
  bool holds = false;        // lhs > rhs beyond tolerance
  bool indeterminate = false;  // |lhs - rhs| within tolerance
  bool conforming = false;   // the sum of uniformities sits in the stated window
  std::string note;
};

// Checks (k1 k2 / n^2)^(1/t) > 1 - (1 - sum k_i/n)^{k1} / 2 for uniformities
// sorted descending. The conforming window for sum k_i is
//   n(1-epsilon) <= sum <= n - n*(8 k1 ln n / n)^(1/k1),
// with all k_i >= 2. Out-of-window inputs still evaluate, flagged
// exploratory; too-small n is an error.
inline Lemma34Check check_lemma34(std::uint64_t n, const std::vector<std::uint32_t>& ks,
                                  double epsilon = 0.2) {
  if (n < 1000)
    throw std::invalid_argument("check_lemma34: n below the guard (n >= 1000)");
  if (ks.empty()) throw std::invalid_argument("check_lemma34: need at least one uniformity");
  for (std::size_t i = 1; i < ks.size(); ++i)
    if (ks[i - 1] < ks[i])
      throw std::invalid_argument("check_lemma34: uniformities must be nonincreasing");
  if (ks.back() < 1) throw std::invalid_argument("check_lemma34: uniformities must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("check_lemma34: epsilon must be in (0, 1)");

  const double nd = static_cast<double>(n);
  const double k1 = static_cast<double>(ks.front());
  const double k2 = static_cast<double>(ks.size() >= 2 ? ks[1] : ks[0]);
  const double t = static_cast<double>(ks.size());
  const double sum = std::accumulate(ks.begin(), ks.end(), 0.0);

  Lemma34Check out;
  out.lhs = std::pow(k1 * k2 / (nd * nd), 1.0 / t);
  out.rhs = 1.0 - 0.5 * std::pow(1.0 - sum / nd, k1);

  const double upper = nd - nd * std::pow(8.0 * k1 * std::log(nd) / nd, 1.0 / k1);
  const double lower = nd * (1.0 - epsilon);
  out.conforming = (sum >= lower && sum <= upper && ks.back() >= 2 && ks.size() >= 2);
  if (!out.conforming) {
    out.note = "outside the conforming window [" + std::to_string(lower) + ", " +
               std::to_string(upper) + "]; evaluated as exploratory";
  }

  const double gap = out.lhs - out.rhs;
  if (std::fabs(gap) <= kInequalityTolerance) {
    out.indeterminate = true;
    out.holds = false;
  } else {
    out.holds = gap > 0.0;
  }
  return out;
}

}  // namespace rainbow
