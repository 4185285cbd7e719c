#include "mirror/series.hpp"

#include <algorithm>
#include <sstream>

namespace mirror {

namespace {

// Coefficients i = 0..order as num[i] / den with a single common denominator.
struct CommonDenominator {
  std::vector<Integer> num;
  Integer den = 1;
};

CommonDenominator to_common(const TruncSeries& s, std::size_t order) {
  CommonDenominator out;
  for (std::size_t i = 0; i <= order; ++i) {
    const Integer& d = s[i].get_den();
    if (d != 1) {
      out.den = lcm(out.den, d);
    }
  }
  out.num.resize(order + 1);
  for (std::size_t i = 0; i <= order; ++i) {
    if (s[i].get_den() == out.den) {
      out.num[i] = s[i].get_num();
    } else {
      out.num[i] = s[i].get_num() * (out.den / s[i].get_den());
    }
  }
  return out;
}

void require_unit_constant(const TruncSeries& s, const char* what) {
  if (s[0] != 1) {
    throw ParameterError(std::string(what) + " needs constant term 1");
  }
}

}  // namespace

TruncSeries::TruncSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw ParameterError("series needs at least one coefficient");
  }
  for (auto& c : coeffs_) {
    c.canonicalize();
  }
}

TruncSeries TruncSeries::constant(const Rational& c, std::size_t order) {
  TruncSeries s(order);
  s[0] = c;
  return s;
}

TruncSeries TruncSeries::variable(std::size_t order) {
  if (order == 0) {
    throw ParameterError("the series z needs order >= 1");
  }
  TruncSeries s(order);
  s[1] = 1;
  return s;
}

TruncSeries TruncSeries::from_integers(const std::vector<long>& coeffs) {
  std::vector<Rational> out;
  out.reserve(coeffs.size());
  for (long c : coeffs) {
    out.emplace_back(c);
  }
  return TruncSeries(std::move(out));
}

TruncSeries TruncSeries::truncated(std::size_t order) const {
  if (order > this->order()) {
    throw ParameterError("cannot extend a truncated series");
  }
  return TruncSeries(std::vector<Rational>(coeffs_.begin(),
                                           coeffs_.begin() + order + 1));
}

bool TruncSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Rational& c) { return c == 0; });
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  auto m = std::min(a.order(), b.order());
  TruncSeries out(m);
  for (std::size_t i = 0; i <= m; ++i) {
    out[i] = a[i] + b[i];
  }
  return out;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
  auto m = std::min(a.order(), b.order());
  TruncSeries out(m);
  for (std::size_t i = 0; i <= m; ++i) {
    out[i] = a[i] - b[i];
  }
  return out;
}

TruncSeries operator-(const TruncSeries& a) {
  TruncSeries out(a.order());
  for (std::size_t i = 0; i <= a.order(); ++i) {
    out[i] = -a[i];
  }
  return out;
}

TruncSeries operator*(const Rational& c, const TruncSeries& a) {
  TruncSeries out(a.order());
  for (std::size_t i = 0; i <= a.order(); ++i) {
    out[i] = c * a[i];
  }
  return out;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  auto m = std::min(a.order(), b.order());
  auto ca = to_common(a, m);
  auto cb = to_common(b, m);
  Integer den = ca.den * cb.den;
  TruncSeries out(m);
  Integer acc;
  for (std::size_t n = 0; n <= m; ++n) {
    acc = 0;
    for (std::size_t j = 0; j <= n; ++j) {
      if (ca.num[j] != 0 && cb.num[n - j] != 0) {
        mpz_addmul(acc.get_mpz_t(), ca.num[j].get_mpz_t(),
                   cb.num[n - j].get_mpz_t());
      }
    }
    out[n] = make_rational(acc, den);
  }
  return out;
}

TruncSeries inverse(const TruncSeries& b) {
  if (b[0] == 0) {
    throw ParameterError("division by a series with zero constant term");
  }
  auto m = b.order();
  auto cb = to_common(b, m);
  const Integer& b0 = cb.num[0];
  // 1/B = sum Y_n z^n / b0^{n+1}, with Y_n = -sum_{j>=1} B_j Y_{n-j} b0^{j-1}.
  std::vector<Integer> pow_b0(m + 2);
  pow_b0[0] = 1;
  for (std::size_t i = 1; i <= m + 1; ++i) {
    pow_b0[i] = pow_b0[i - 1] * b0;
  }
  bool unit = (b0 == 1 || b0 == -1);
  std::vector<Integer> y(m + 1);
  y[0] = 1;
  Integer acc, term;
  for (std::size_t n = 1; n <= m; ++n) {
    acc = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      if (cb.num[j] == 0 || y[n - j] == 0) {
        continue;
      }
      if (unit) {
        term = cb.num[j] * y[n - j];
        if (b0 == -1 && (j - 1) % 2 == 1) {
          term = -term;
        }
        acc += term;
      } else {
        term = cb.num[j] * y[n - j];
        acc += term * pow_b0[j - 1];
      }
    }
    y[n] = -acc;
  }
  TruncSeries out(m);
  for (std::size_t n = 0; n <= m; ++n) {
    out[n] = make_rational(y[n] * cb.den, pow_b0[n + 1]);
  }
  return out;
}

TruncSeries operator/(const TruncSeries& a, const TruncSeries& b) {
  auto m = std::min(a.order(), b.order());
  return a.truncated(m) * inverse(b.truncated(m));
}

TruncSeries arith(const TruncSeries& a, const TruncSeries& b, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return a + b;
    case ArithOp::sub:
      return a - b;
    case ArithOp::mul:
      return a * b;
    case ArithOp::div:
      return a / b;
  }
  throw ParameterError("unknown series operation");
}

TruncSeries derivative(const TruncSeries& s) {
  if (s.order() == 0) {
    return TruncSeries(0);
  }
  TruncSeries out(s.order() - 1);
  for (std::size_t i = 1; i <= s.order(); ++i) {
    out[i - 1] = s[i] * static_cast<unsigned long>(i);
  }
  return out;
}

TruncSeries theta(const TruncSeries& s) {
  TruncSeries out(s.order());
  for (std::size_t i = 1; i <= s.order(); ++i) {
    out[i] = s[i] * static_cast<unsigned long>(i);
  }
  return out;
}

TruncSeries divide_by_z(const TruncSeries& s) {
  if (s[0] != 0) {
    throw ParameterError("divide_by_z needs zero constant term");
  }
  if (s.order() == 0) {
    throw ParameterError("divide_by_z needs order >= 1");
  }
  TruncSeries out(s.order() - 1);
  for (std::size_t i = 1; i <= s.order(); ++i) {
    out[i - 1] = s[i];
  }
  return out;
}

TruncSeries multiply_by_z(const TruncSeries& s) {
  TruncSeries out(s.order());
  for (std::size_t i = 1; i <= s.order(); ++i) {
    out[i] = s[i - 1];
  }
  return out;
}

TruncSeries exp_series(const TruncSeries& t) {
  if (t[0] != 0) {
    throw ParameterError("exp_series needs zero constant term");
  }
  auto m = t.order();
  auto ct = to_common(t, m);
  // n e_n = sum_{j=1}^n j t_j e_{n-j}
  std::vector<Integer> jt(m + 1);
  for (std::size_t j = 1; j <= m; ++j) {
    jt[j] = ct.num[j] * static_cast<unsigned long>(j);
  }
  TruncSeries out(m);
  out[0] = 1;
  Rational acc;
  for (std::size_t n = 1; n <= m; ++n) {
    acc = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      if (jt[j] != 0 && out[n - j] != 0) {
        acc += out[n - j] * jt[j];
      }
    }
    out[n] = acc / (ct.den * static_cast<unsigned long>(n));
  }
  return out;
}

TruncSeries log_series(const TruncSeries& s) {
  require_unit_constant(s, "log_series");
  auto m = s.order();
  TruncSeries out(m);
  if (m == 0) {
    return out;
  }
  auto q = derivative(s) / s.truncated(m - 1);
  for (std::size_t n = 1; n <= m; ++n) {
    out[n] = q[n - 1] / static_cast<unsigned long>(n);
  }
  return out;
}

TruncSeries pow_rational(const TruncSeries& s, const Rational& e) {
  require_unit_constant(s, "pow_rational");
  auto m = s.order();
  // n y_n = sum_{j=1}^n (e j - (n - j)) s_j y_{n-j}
  TruncSeries y(m);
  y[0] = 1;
  Rational acc, w;
  for (std::size_t n = 1; n <= m; ++n) {
    acc = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      if (s[j] == 0 || y[n - j] == 0) {
        continue;
      }
      w = e * static_cast<unsigned long>(j);
      w -= static_cast<unsigned long>(n - j);
      acc += w * s[j] * y[n - j];
    }
    y[n] = acc / static_cast<unsigned long>(n);
  }
  return y;
}

namespace {

// Integer product truncated to indices 0..order.
std::vector<Integer> convolve(const std::vector<Integer>& a,
                              const std::vector<Integer>& b,
                              std::size_t order) {
  std::vector<Integer> out(order + 1);
  for (std::size_t n = 0; n <= order; ++n) {
    for (std::size_t j = 0; j <= n; ++j) {
      if (a[j] != 0 && b[n - j] != 0) {
        mpz_addmul(out[n].get_mpz_t(), a[j].get_mpz_t(), b[n - j].get_mpz_t());
      }
    }
  }
  return out;
}

std::vector<Integer> integer_derivative(const std::vector<Integer>& a) {
  std::vector<Integer> out(a.size() > 1 ? a.size() - 1 : 1);
  for (std::size_t j = 1; j < a.size(); ++j) {
    out[j - 1] = a[j] * static_cast<unsigned long>(j);
  }
  return out;
}

}  // namespace

TruncSeries exp_of_quotient(const TruncSeries& G, const TruncSeries& F,
                            const Rational& e, std::size_t order,
                            bool stop_at_nonintegral) {
  if (G[0] != 0) {
    throw ParameterError("exp_of_quotient needs G(0) = 0");
  }
  if (F[0] != 1) {
    throw ParameterError("exp_of_quotient needs F(0) = 1");
  }
  const std::size_t m = std::min({order, G.order(), F.order()});
  TruncSeries out(m);
  out[0] = 1;
  if (m == 0 || e == 0) {
    return out;
  }
  auto cg = to_common(G, m);
  auto cf = to_common(F, m);
  // Fn^2 E' = (e DF / D) (Gn' Fn - Gn Fn') E with F = Fn / DF, G = Gn / D.
  const std::size_t w_order = m - 1;
  auto w = convolve(integer_derivative(cg.num), cf.num, w_order);
  auto w2 = convolve(cg.num, integer_derivative(cf.num), w_order);
  for (std::size_t j = 0; j <= w_order; ++j) {
    w[j] -= w2[j];
  }
  auto pp = convolve(cf.num, cf.num, w_order);

  const Integer a = e.get_num() * cf.den;
  const Integer bd = e.get_den() * cg.den;
  const Integer base = bd * pp[0];

  // scaled[k] = e_k * lcm_den, kept integral.
  Integer lcm_den = 1;
  std::vector<Integer> scaled(m + 1);
  scaled[0] = 1;
  Integer t1, t2, den;
  for (std::size_t i = 0; i < m; ++i) {
    t1 = 0;
    t2 = 0;
    for (std::size_t j = 0; j <= i; ++j) {
      if (w[j] != 0 && scaled[i - j] != 0) {
        mpz_addmul(t1.get_mpz_t(), w[j].get_mpz_t(), scaled[i - j].get_mpz_t());
      }
    }
    for (std::size_t j = 1; j <= i; ++j) {
      if (pp[j] != 0 && scaled[i - j + 1] != 0) {
        Integer term = pp[j] * scaled[i - j + 1];
        mpz_addmul_ui(t2.get_mpz_t(), term.get_mpz_t(),
                      static_cast<unsigned long>(i - j + 1));
      }
    }
    den = base * lcm_den * static_cast<unsigned long>(i + 1);
    out[i + 1] = make_rational(a * t1 - bd * t2, den);
    const Integer& d = out[i + 1].get_den();
    if (stop_at_nonintegral && d != 1) {
      return out.truncated(i + 1);
    }
    if (!mpz_divisible_p(lcm_den.get_mpz_t(), d.get_mpz_t())) {
      Integer next = lcm(lcm_den, d);
      Integer factor = next / lcm_den;
      for (std::size_t k = 0; k <= i; ++k) {
        scaled[k] *= factor;
      }
      lcm_den = next;
    }
    scaled[i + 1] = out[i + 1].get_num() * (lcm_den / d);
  }
  return out;
}

TruncSeries substitute_pth_power(const TruncSeries& s, std::size_t p) {
  if (p == 0) {
    throw ParameterError("substitute_pth_power needs p >= 1");
  }
  TruncSeries out(s.order());
  for (std::size_t i = 0; i * p <= s.order(); ++i) {
    out[i * p] = s[i];
  }
  return out;
}

TruncSeries compose(const TruncSeries& outer, const TruncSeries& inner) {
  if (inner[0] != 0) {
    throw ParameterError("compose needs an inner series with zero constant term");
  }
  auto m = std::min(outer.order(), inner.order());
  auto in = inner.truncated(m);
  TruncSeries acc = TruncSeries::constant(outer[m], m);
  for (std::size_t i = m; i-- > 0;) {
    acc = acc * in;
    acc[0] += outer[i];
  }
  return acc;
}

TruncSeries reversion(const TruncSeries& s) {
  if (s.order() < 1 || s[0] != 0 || s[1] != 1) {
    throw ParameterError("reversion needs s = z + O(z^2)");
  }
  auto m = s.order();
  // Lagrange: [q^n] t = (1/n) [z^{n-1}] (z / s(z))^n.
  TruncSeries out(m);
  out[1] = 1;
  if (m == 1) {
    return out;
  }
  auto phi = inverse(divide_by_z(s));  // order m - 1
  TruncSeries power = phi;
  for (std::size_t n = 2; n <= m; ++n) {
    power = power * phi;  // phi^n
    out[n] = power[n - 1] / static_cast<unsigned long>(n);
  }
  return out;
}

CertReport integrality_report(const TruncSeries& s) {
  for (std::size_t i = 0; i <= s.order(); ++i) {
    if (!is_integral(s[i])) {
      std::ostringstream os;
      const Integer& den = s[i].get_den();
      os << "coefficient " << i << " has denominator " << den << " =";
      bool first = true;
      for (const auto& [prime, e] : factorize(den)) {
        os << (first ? " " : " * ") << prime;
        if (e > 1) {
          os << "^" << e;
        }
        first = false;
      }
      return CertReport::failed(s.order(), i, os.str());
    }
  }
  return CertReport::passed(s.order(), "all coefficients integral");
}

MinValuation min_valuation_report(const TruncSeries& s, std::uint64_t p,
                                  std::size_t from_index) {
  MinValuation best;
  for (std::size_t i = from_index; i <= s.order(); ++i) {
    if (s[i] == 0) {
      continue;
    }
    auto v = vp_rat(s[i], p);
    if (!best.index || v < best.value) {
      best.value = v;
      best.index = i;
    }
  }
  return best;
}

// --- LogSeries ------------------------------------------------------------

LogSeries::LogSeries(TruncSeries a, TruncSeries b) {
  auto m = std::min(a.order(), b.order());
  plain = a.order() == m ? std::move(a) : a.truncated(m);
  logpart = b.order() == m ? std::move(b) : b.truncated(m);
}

LogSeries operator+(const LogSeries& a, const LogSeries& b) {
  return LogSeries(a.plain + b.plain, a.logpart + b.logpart);
}

LogSeries operator-(const LogSeries& a, const LogSeries& b) {
  return LogSeries(a.plain - b.plain, a.logpart - b.logpart);
}

LogSeries operator*(const Rational& c, const LogSeries& a) {
  return LogSeries(c * a.plain, c * a.logpart);
}

LogSeries apply_theta_operator(const LogSeries& s) {
  return LogSeries(theta(s.plain) + s.logpart, theta(s.logpart));
}

LogSeries multiply_by_z(const LogSeries& s) {
  return LogSeries(multiply_by_z(s.plain), multiply_by_z(s.logpart));
}

}  // namespace mirror
