#include "mirror/mirror_maps.hpp"

#include <algorithm>
#include <sstream>

namespace mirror {

namespace {

void require_positive(unsigned N, unsigned k) {
  if (N == 0 || k == 0) {
    throw ParameterError("N and k must be >= 1");
  }
}

std::vector<Integer> powered_table(unsigned N, unsigned k, std::size_t order) {
  auto table = bN_table(N, order);
  if (k > 1) {
    for (auto& b : table) {
      mpz_pow_ui(b.get_mpz_t(), b.get_mpz_t(), k);
    }
  }
  return table;
}

std::vector<Integer> family_table(const NVector& Nvec, Family family,
                                  std::size_t order) {
  CoefficientSequence seq(family, Nvec);
  std::vector<Integer> out(order + 1);
  for (std::size_t m = 0; m <= order; ++m) {
    out[m] = seq.at(static_cast<long>(m));
  }
  return out;
}

TruncSeries from_table(const std::vector<Integer>& table) {
  std::vector<Rational> c(table.begin(), table.end());
  return TruncSeries(std::move(c));
}

void require_L(const NVector& Nvec, unsigned L) {
  if (Nvec.empty()) {
    throw ParameterError("empty N vector");
  }
  unsigned top = *std::max_element(Nvec.begin(), Nvec.end());
  if (L < 1 || L > top) {
    throw ParameterError("L must satisfy 1 <= L <= max(N) = " +
                         std::to_string(top));
  }
}

// z exp(G/F) to order; exp(G/F) is only needed through order - 1.
TruncSeries z_times_exp(const TruncSeries& G, const TruncSeries& F,
                        std::size_t order) {
  auto e = exp_of_quotient(G, F, 1, order - 1);
  TruncSeries out(order);
  for (std::size_t i = 0; i + 1 <= order && i <= e.order(); ++i) {
    out[i + 1] = e[i];
  }
  return out;
}

}  // namespace

NVector repeated(unsigned N, unsigned k) { return NVector(k, N); }

TruncSeries build_FN(unsigned N, unsigned k, std::size_t order) {
  require_positive(N, k);
  return from_table(powered_table(N, k, order));
}

TruncSeries build_GN(unsigned N, unsigned k, std::size_t order,
                     GConstruction how) {
  require_positive(N, k);
  auto table = powered_table(N, k, order);
  TruncSeries out(order);
  if (how == GConstruction::harmonic_difference) {
    for (std::size_t m = 1; m <= order; ++m) {
      Rational w = harmonic(static_cast<std::uint64_t>(N) * m) - harmonic(m);
      out[m] = w * table[m] * (k * N);
    }
    return out;
  }
  // Running value of sum_{j=1}^{N-1} H(j/N, m) - (N-1) H(1, m).
  Rational weight = 0;
  for (std::size_t m = 1; m <= order; ++m) {
    const std::size_t n = m - 1;
    for (unsigned j = 1; j < N; ++j) {
      weight += make_rational(N, static_cast<unsigned long>(j + n * N));
    }
    weight -= make_rational(N - 1, static_cast<unsigned long>(m));
    out[m] = weight * table[m] * k;
  }
  return out;
}

MirrorInstance build_qN(unsigned N, unsigned k, std::size_t order) {
  if (order == 0) {
    throw ParameterError("order must be >= 1");
  }
  MirrorInstance inst;
  inst.spec = {repeated(N, k), N, Family::plain};
  inst.k = k;
  inst.order = order;
  inst.F = build_FN(N, k, order);
  inst.G = build_GN(N, k, order);
  inst.q = z_times_exp(inst.G, inst.F, order);
  inst.has_z_factor = true;
  return inst;
}

TruncSeries build_F(const NVector& Nvec, Family family, std::size_t order) {
  return from_table(family_table(Nvec, family, order));
}

TruncSeries build_GL(const NVector& Nvec, unsigned L, Family family,
                     std::size_t order) {
  require_L(Nvec, L);
  auto table = family_table(Nvec, family, order);
  TruncSeries out(order);
  for (std::size_t m = 1; m <= order; ++m) {
    out[m] = harmonic(static_cast<std::uint64_t>(L) * m) * table[m];
  }
  return out;
}

MirrorInstance build_qLN(const NVector& Nvec, unsigned L, std::size_t order,
                         Family family) {
  require_L(Nvec, L);
  MirrorInstance inst;
  inst.spec = {Nvec, L, family};
  inst.k = static_cast<unsigned>(Nvec.size());
  inst.order = order;
  inst.F = build_F(Nvec, family, order);
  inst.G = build_GL(Nvec, L, family, order);
  inst.q = exp_of_quotient(inst.G, inst.F, 1, order);
  inst.has_z_factor = false;
  return inst;
}

TruncSeries build_bold_G(const NVector& Nvec, std::size_t order) {
  auto table = family_table(Nvec, Family::zudilin, order);
  TruncSeries out(order);
  for (std::size_t m = 1; m <= order; ++m) {
    Rational w = 0;
    for (auto N : Nvec) {
      w += hN(N, m, HMode::alphabeta);
    }
    out[m] = w * table[m];
  }
  return out;
}

MirrorInstance build_bold_q(const NVector& Nvec, std::size_t order) {
  if (order == 0) {
    throw ParameterError("order must be >= 1");
  }
  MirrorInstance inst;
  inst.spec = {Nvec, 1, Family::zudilin};
  inst.k = static_cast<unsigned>(Nvec.size());
  inst.order = order;
  inst.F = build_F(Nvec, Family::zudilin, order);
  inst.G = build_bold_G(Nvec, order);
  inst.q = z_times_exp(inst.G, inst.F, order);
  return inst;
}

TruncSeries build_G_tilde(unsigned N, unsigned k, std::size_t order) {
  require_positive(N, k);
  auto table = powered_table(N, k, order);
  TruncSeries out(order);
  for (std::size_t m = 1; m <= order; ++m) {
    out[m] = (harmonic(static_cast<std::uint64_t>(N) * m) - harmonic(m)) *
             table[m];
  }
  return out;
}

MirrorInstance build_q_tilde(unsigned N, unsigned k, std::size_t order) {
  if (N < 2) {
    throw ParameterError("q-tilde needs N >= 2");
  }
  MirrorInstance inst;
  inst.spec = {repeated(N, k), N, Family::plain};
  inst.k = k;
  inst.order = order;
  inst.F = build_FN(N, k, order);
  inst.G = build_G_tilde(N, k, order);
  inst.q = exp_of_quotient(inst.G, inst.F, 1, order);
  inst.has_z_factor = false;
  return inst;
}

CertReport truemap_check(unsigned N, unsigned k, std::size_t order) {
  auto lhs = build_qN(N, k, order).q;
  auto Nvec = repeated(N, k);
  auto F = build_F(Nvec, Family::plain, order);
  const Rational kn = static_cast<unsigned long>(k) * N;
  auto top = exp_of_quotient(build_GL(Nvec, N, Family::plain, order), F, kn,
                             order);
  auto bottom = exp_of_quotient(build_GL(Nvec, 1, Family::plain, order), F,
                                -kn, order);
  auto rhs = multiply_by_z(top * bottom);
  for (std::size_t i = 0; i <= order; ++i) {
    if (lhs[i] != rhs[i]) {
      std::ostringstream os;
      os << "coefficient " << i << ": " << lhs[i] << " vs " << rhs[i];
      return CertReport::failed(order, i, os.str());
    }
  }
  return CertReport::passed(order, "identity holds");
}

PicardFuchsResiduals picard_fuchs_residuals(const NVector& Nvec,
                                            std::size_t order) {
  if (Nvec.empty()) {
    throw ParameterError("empty N vector");
  }
  PicardFuchsResiduals out;
  Integer C = 1;
  std::vector<Rational> shifts;
  for (auto N : Nvec) {
    const auto& d = zudilin_data(N);
    out.degree += d.phi;
    C *= d.C;
    for (auto r : d.residues) {
      shifts.push_back(make_rational(r, N));
    }
  }
  const Rational c = C;

  auto F = build_F(Nvec, Family::zudilin, order);
  TruncSeries left = F;
  TruncSeries right = F;
  for (unsigned i = 0; i < out.degree; ++i) {
    left = theta(left);
  }
  for (const auto& s : shifts) {
    right = theta(right) + s * right;
  }
  out.on_F = left - c * multiply_by_z(right);

  LogSeries solution(build_bold_G(Nvec, order), F);
  LogSeries log_left = solution;
  LogSeries log_right = solution;
  for (unsigned i = 0; i < out.degree; ++i) {
    log_left = apply_theta_operator(log_left);
  }
  for (const auto& s : shifts) {
    log_right = apply_theta_operator(log_right) + s * log_right;
  }
  out.on_log_solution = log_left - c * multiply_by_z(log_right);
  return out;
}

CertReport picard_fuchs_check(const NVector& Nvec, std::size_t order) {
  auto res = picard_fuchs_residuals(Nvec, order);
  auto check = [&](const TruncSeries& s, const char* what) -> std::optional<CertReport> {
    for (std::size_t i = 0; i < order; ++i) {
      if (s[i] != 0) {
        std::ostringstream os;
        os << "operator leaves " << s[i] << " at index " << i << " of " << what;
        if (res.degree == 1) {
          os << " (first-order operator, no logarithmic solution)";
        }
        return CertReport::failed(order, i, os.str());
      }
    }
    return std::nullopt;
  };
  if (auto bad = check(res.on_F, "F")) {
    return *bad;
  }
  if (auto bad = check(res.on_log_solution.plain, "G + log z F")) {
    return *bad;
  }
  if (auto bad = check(res.on_log_solution.logpart, "G + log z F")) {
    return *bad;
  }
  return CertReport::passed(order, "annihilated through index " +
                                       std::to_string(order - 1));
}

}  // namespace mirror
