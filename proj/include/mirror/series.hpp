#pragma once

/**
 * @file series.hpp
 * @brief Truncated formal power series over exact rationals.
 *
 * A TruncSeries of order M stores the coefficients of z^0 .. z^M. Binary
 * operations truncate to the smaller operand order; the result's order()
 * is the effective order. Nothing here evaluates a series numerically.
 */

#include "mirror/padic.hpp"
#include "mirror/report.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace mirror {

class TruncSeries {
 public:
  /// Zero series of order 0.
  TruncSeries() : coeffs_(1) {}
  /// Zero series of the given order.
  explicit TruncSeries(std::size_t order) : coeffs_(order + 1) {}
  /// Takes ownership of the coefficients; order = size - 1 (must be non-empty).
  explicit TruncSeries(std::vector<Rational> coeffs);

  static TruncSeries constant(const Rational& c, std::size_t order);
  /// The series z (order >= 1).
  static TruncSeries variable(std::size_t order);
  static TruncSeries from_integers(const std::vector<long>& coeffs);

  std::size_t order() const { return coeffs_.size() - 1; }

  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  Rational& operator[](std::size_t i) { return coeffs_[i]; }

  const std::vector<Rational>& coeffs() const { return coeffs_; }

  TruncSeries truncated(std::size_t order) const;

  bool is_zero() const;

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<Rational> coeffs_;
};

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator-(const TruncSeries& a);
TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator*(const Rational& c, const TruncSeries& a);
/// Throws ParameterError when b has zero constant term.
TruncSeries operator/(const TruncSeries& a, const TruncSeries& b);

enum class ArithOp { add, sub, mul, div };
TruncSeries arith(const TruncSeries& a, const TruncSeries& b, ArithOp op);

/// 1/b; b must have nonzero constant term.
TruncSeries inverse(const TruncSeries& b);

/// d/dz; the result has order M - 1 (order 0 input gives the zero series).
TruncSeries derivative(const TruncSeries& s);

/// z d/dz, order preserved.
TruncSeries theta(const TruncSeries& s);

/// z^{-1} s for s with zero constant term; order drops by one.
TruncSeries divide_by_z(const TruncSeries& s);

/// z s, truncated back to the input order.
TruncSeries multiply_by_z(const TruncSeries& s);

/// exp(t) for t with zero constant term.
TruncSeries exp_series(const TruncSeries& t);

/// log(s) for s with constant term 1.
TruncSeries log_series(const TruncSeries& s);

/// s^e for s with constant term 1, via (s^e)' s = e s' s^e.
TruncSeries pow_rational(const TruncSeries& s, const Rational& e);

/// exp(e G/F) for G(0) = 0 and F(0) = 1, from F^2 E' = e (G'F - GF') E.
///
/// Never forms 1/F. With stop_at_nonintegral the result is cut right after
/// the first coefficient that is not an integer, so a failed integrality
/// search costs only up to the witness index.
TruncSeries exp_of_quotient(const TruncSeries& G, const TruncSeries& F,
                            const Rational& e, std::size_t order,
                            bool stop_at_nonintegral = false);

/// s(z^p), same order as s.
TruncSeries substitute_pth_power(const TruncSeries& s, std::size_t p);

/// outer(inner(q)) for inner with zero constant term, Horner scheme.
/// Output order is min(outer.order(), inner.order()).
TruncSeries compose(const TruncSeries& outer, const TruncSeries& inner);

/// Compositional inverse of s = z + O(z^2).
TruncSeries reversion(const TruncSeries& s);

/// Pass iff every coefficient is an integer; otherwise the first offending
/// index with its denominator factorization in the detail text.
CertReport integrality_report(const TruncSeries& s);

struct MinValuation {
  Valuation value = Valuation::infinity();
  std::optional<std::size_t> index;
};

/// Minimum vp over coefficients with index >= from_index (zeros ignored).
MinValuation min_valuation_report(const TruncSeries& s, std::uint64_t p,
                                  std::size_t from_index = 0);

/// A(z) + B(z) log z, both parts of one order.
struct LogSeries {
  TruncSeries plain;
  TruncSeries logpart;

  LogSeries() = default;
  LogSeries(TruncSeries a, TruncSeries b);

  std::size_t order() const { return plain.order(); }
};

LogSeries operator+(const LogSeries& a, const LogSeries& b);
LogSeries operator-(const LogSeries& a, const LogSeries& b);
LogSeries operator*(const Rational& c, const LogSeries& a);

/// theta(A + B log z) = (theta A + B) + (theta B) log z.
LogSeries apply_theta_operator(const LogSeries& s);

/// z (A + B log z), truncated to the input order.
LogSeries multiply_by_z(const LogSeries& s);

}  // namespace mirror
