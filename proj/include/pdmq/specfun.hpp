#pragma once

// Power-series evaluation of Kummer's 1F1 and the biconfluent Heun function
// H_B(alpha, beta, gamma, delta; r), plus the polynomial-termination test for
// H_B. Terms and partial sums are carried in double-double so that
// alternating series keep their digits.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "pdmq/detail/double_double.hpp"
#include "pdmq/error.hpp"

namespace pdmq {

struct SeriesResult {
  double value = 0.0;
  std::size_t terms_used = 0;
  double truncation_estimate = 0.0;  // |last added term|
};

inline constexpr std::size_t kSeriesTermCap = 10000;

namespace detail {

inline bool is_nonpositive_integer(double x) noexcept { return x <= 0.0 && std::floor(x) == x; }

// Two consecutive negligible terms, past the point where terms can still grow.
struct StopRule {
  double rel = 1e-16;
  std::size_t k_min = 0;
  int quiet = 0;

  bool update(std::size_t k, double term_mag, double scale) noexcept {
    if (term_mag <= rel * scale) {
      ++quiet;
    } else {
      quiet = 0;
    }
    return quiet >= 2 && k >= k_min;
  }
};

}  // namespace detail

/// 1F1(a; b; x) = sum_k (a)_k / (b)_k x^k / k!.
/// Terminates exactly at k = n when a = -n. Throws PoleError when a
/// Pochhammer zero of b is reached first, NoConvergence past the term cap.
inline SeriesResult kummer_1f1(double a, double b, double x) {
  using detail::DoubleDouble;
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(x))
    throw Error(ErrorKind::DomainError, "1F1 arguments must be finite");

  DoubleDouble term(1.0);
  DoubleDouble sum(1.0);
  detail::StopRule stop{1e-16, static_cast<std::size_t>(std::ceil(std::abs(x))), 0};

  for (std::size_t k = 0; k < kSeriesTermCap; ++k) {
    const double kd = static_cast<double>(k);
    const DoubleDouble a_k = detail::two_sum(a, kd);
    if (a_k.hi == 0.0 && a_k.lo == 0.0) return {sum.value(), k + 1, 0.0};
    const DoubleDouble b_k = detail::two_sum(b, kd);
    if (b_k.hi == 0.0 && b_k.lo == 0.0)
      throw Error(ErrorKind::PoleError, "1F1 denominator (b)_k vanishes at k = " + std::to_string(k + 1));

    term = term * a_k * DoubleDouble(x) / (b_k * DoubleDouble(kd + 1.0));
    sum += term;
    const double mag = detail::abs(term);
    if (stop.update(k + 1, mag, detail::abs(sum))) return {sum.value(), k + 2, mag};
  }
  throw Error(ErrorKind::NoConvergence, "1F1 series did not converge within the term cap (x = " +
                                            std::to_string(x) + ")");
}

struct HeunParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
};

namespace detail {

inline void check_heun_params(const HeunParams& p) {
  if (!(p.alpha > -1.0)) throw Error(ErrorKind::DomainError, "H_B requires alpha > -1");
  if (!std::isfinite(p.beta) || !std::isfinite(p.gamma) || !std::isfinite(p.delta) || !std::isfinite(p.alpha))
    throw Error(ErrorKind::DomainError, "H_B parameters must be finite");
}

// Power-series coefficients of
//   r u'' + (1 + alpha - beta r - 2 r^2) u' + ((gamma - 2 - alpha) r - D) u = 0,
//   D = (delta + (1 + alpha) beta) / 2.
// Matching r^0 gives (1 + alpha) A_1 = D A_0; matching r^(k+1) gives
//   (k+2)(k+2+alpha) A_{k+2} = (beta (k+1) + D) A_{k+1} - (gamma - 2 - alpha - 2k) A_k.
// With a scale r the recurrence runs on T_k = A_k r^k, which stays
// representable where A_k alone would underflow.
class HeunRecurrence {
 public:
  explicit HeunRecurrence(const HeunParams& p, double scale = 1.0)
      : p_(p),
        scale_(scale),
        one_plus_alpha_(two_sum(1.0, p.alpha)),
        big_d_((DoubleDouble(p.delta) + DoubleDouble(p.beta) * one_plus_alpha_) * DoubleDouble(0.5)),
        shift_(DoubleDouble(p.gamma) - DoubleDouble(2.0) - DoubleDouble(p.alpha)) {
    prev_ = DoubleDouble(1.0);
    curr_ = big_d_ / one_plus_alpha_ * scale_;
  }

  // T_k for the current k (starting at k = 0).
  const DoubleDouble& current() const noexcept { return k_ == 0 ? prev_ : curr_; }

  void advance() noexcept {
    if (k_ == 0) {
      k_ = 1;
      return;
    }
    // produce A_{k+1} from A_k (curr_) and A_{k-1} (prev_)
    const double j = static_cast<double>(k_ - 1);  // recurrence index
    const DoubleDouble lead = DoubleDouble(p_.beta) * DoubleDouble(j + 1.0) + big_d_;
    const DoubleDouble lag = shift_ - DoubleDouble(2.0 * j);
    const DoubleDouble denom = DoubleDouble(j + 2.0) * (DoubleDouble(j + 2.0) + DoubleDouble(p_.alpha));
    const DoubleDouble next = (lead * curr_ * scale_ - lag * prev_ * (scale_ * scale_)) / denom;
    prev_ = curr_;
    curr_ = next;
    ++k_;
  }

  std::size_t index() const noexcept { return k_; }

 private:
  HeunParams p_;
  DoubleDouble scale_;
  DoubleDouble one_plus_alpha_;
  DoubleDouble big_d_;
  DoubleDouble shift_;
  DoubleDouble prev_;
  DoubleDouble curr_;
  std::size_t k_ = 0;
};

}  // namespace detail

/// First `count` power-series coefficients A_0 .. A_{count-1} of H_B.
inline std::vector<double> heun_coefficients(const HeunParams& p, std::size_t count) {
  detail::check_heun_params(p);
  std::vector<double> out;
  out.reserve(count);
  detail::HeunRecurrence rec(p);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(rec.current().value());
    rec.advance();
  }
  return out;
}

struct HeunSeries {
  SeriesResult value;
  double derivative = 0.0;
  double second_derivative = 0.0;
};

/// H_B and its first two derivatives by term-wise differentiation.
inline HeunSeries heun_biconfluent_with_derivatives(const HeunParams& p, double r) {
  using detail::DoubleDouble;
  detail::check_heun_params(p);
  if (!(r >= 0.0) || !std::isfinite(r)) throw Error(ErrorKind::DomainError, "H_B requires r >= 0");

  if (r == 0.0) {
    detail::HeunRecurrence rec(p);
    rec.advance();
    const double a1 = rec.current().value();
    rec.advance();
    const double a2 = rec.current().value();
    return {{1.0, 1, 0.0}, a1, 2.0 * a2};
  }

  detail::HeunRecurrence rec(p, r);
  DoubleDouble sum(0.0), d1(0.0), d2(0.0);
  const double k_min = 2.0 * r * r + std::abs(p.beta) * r + 2.0;
  detail::StopRule stop{1e-16, static_cast<std::size_t>(std::ceil(k_min)), 0};

  for (std::size_t k = 0; k < kSeriesTermCap; ++k) {
    const double kd = static_cast<double>(k);
    const DoubleDouble term = rec.current();  // A_k r^k
    sum += term;
    // r u' and r^2 u'' are accumulated with exact integer factors
    if (k >= 1) d1 += term * DoubleDouble(kd);
    if (k >= 2) d2 += term * DoubleDouble(kd * (kd - 1.0));

    const double mag = detail::abs(term);
    const double scale = detail::abs(sum) + detail::abs(d1) + detail::abs(d2);
    if (stop.update(k, mag * std::max(1.0, kd * kd), scale)) {
      const DoubleDouble rr(r);
      return {{sum.value(), k + 1, mag}, (d1 / rr).value(), (d2 / (rr * rr)).value()};
    }
    rec.advance();
  }
  throw Error(ErrorKind::NoConvergence, "H_B series did not converge within the term cap (r = " +
                                            std::to_string(r) + ")");
}

inline SeriesResult heun_biconfluent(const HeunParams& p, double r) {
  return heun_biconfluent_with_derivatives(p, r).value;
}

struct HeunTermination {
  bool first_condition = false;        // gamma - 2 - alpha = 2n
  bool coefficient_condition = false;  // A_{n+1} = 0 (relative to A_0..A_n)
  double a_next_magnitude = 0.0;       // |A_{n+1}|

  bool terminates() const noexcept { return first_condition && coefficient_condition; }
};

/// H_B is a polynomial of degree n iff gamma - 2 - alpha = 2n and A_{n+1} = 0.
inline HeunTermination heun_termination_check(const HeunParams& p, std::size_t n) {
  const auto coeffs = heun_coefficients(p, n + 2);
  double largest = 0.0;
  for (std::size_t k = 0; k <= n; ++k) largest = std::max(largest, std::abs(coeffs[k]));

  HeunTermination out;
  const double shift = p.gamma - 2.0 - p.alpha - 2.0 * static_cast<double>(n);
  out.first_condition = std::abs(shift) <= 1e-10;
  out.a_next_magnitude = std::abs(coeffs[n + 1]);
  out.coefficient_condition = out.a_next_magnitude <= 1e-10 * largest;
  return out;
}

}  // namespace pdmq
