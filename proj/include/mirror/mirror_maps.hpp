#pragma once

/**
 * @file mirror_maps.hpp
 * @brief Builders for the hypergeometric series F, G and the maps q.
 *
 * Canonical coordinates have the shape q = z exp(G/F) (zero constant term,
 * unit linear coefficient); the L-maps and the q-tilde root have the shape
 * exp(G/F) (constant term 1). Every builder computes exp(G/F) through
 * exp_of_quotient, so roots of a map are obtained by scaling the exponent.
 */

#include "mirror/coefficients.hpp"
#include "mirror/report.hpp"
#include "mirror/series.hpp"

#include <cstddef>

namespace mirror {

struct MirrorInstance {
  HyperSpec spec;
  unsigned k = 1;
  std::size_t order = 0;
  TruncSeries F;
  TruncSeries G;
  TruncSeries q;
  /// True when q = z exp(G/F), false when q = exp(G/F).
  bool has_z_factor = true;
};

/// How G_N is assembled: from the shifted harmonic sums H(j/N, m), or from
/// the equivalent N (H_{Nm} - H_m) form.
enum class GConstruction { shifted, harmonic_difference };

TruncSeries build_FN(unsigned N, unsigned k, std::size_t order);
TruncSeries build_GN(unsigned N, unsigned k, std::size_t order,
                     GConstruction how = GConstruction::shifted);
MirrorInstance build_qN(unsigned N, unsigned k, std::size_t order);

/// F_Nvec (plain) or bold F_Nvec (zudilin).
TruncSeries build_F(const NVector& Nvec, Family family, std::size_t order);
/// sum H_{Lm} B(m) z^m over the chosen family.
TruncSeries build_GL(const NVector& Nvec, unsigned L, Family family,
                     std::size_t order);
/// q_{L,Nvec} = exp(G_{L,Nvec}/F_Nvec); requires 1 <= L <= max(Nvec).
MirrorInstance build_qLN(const NVector& Nvec, unsigned L, std::size_t order,
                         Family family);

/// sum (sum_j bold H_{N_j}(m)) bold B_Nvec(m) z^m.
TruncSeries build_bold_G(const NVector& Nvec, std::size_t order);
MirrorInstance build_bold_q(const NVector& Nvec, std::size_t order);

/// (z^{-1} q_N)^{1/(kN)} = exp(G~/F) with G~ = sum B^k (H_{Nm} - H_m) z^m.
TruncSeries build_G_tilde(unsigned N, unsigned k, std::size_t order);
MirrorInstance build_q_tilde(unsigned N, unsigned k, std::size_t order);

/// Coefficientwise check of q_N = z q_{N,N}^{kN} q_{1,N}^{-kN}.
CertReport truemap_check(unsigned N, unsigned k, std::size_t order);

/// Images of bold F and bold G + log z bold F under the Picard-Fuchs
/// operator theta^D - z C prod prod (theta + r/N_j), D = sum phi(N_j).
struct PicardFuchsResiduals {
  unsigned degree = 0;
  TruncSeries on_F;
  LogSeries on_log_solution;
};
PicardFuchsResiduals picard_fuchs_residuals(const NVector& Nvec,
                                            std::size_t order);

/// Applies theta^D - z C prod prod (theta + r/N_j) to bold F and to
/// bold G + log z bold F; passes when indices 0..order-1 vanish.
CertReport picard_fuchs_check(const NVector& Nvec, std::size_t order);

/// (N^k): the vector with k copies of N.
NVector repeated(unsigned N, unsigned k);

}  // namespace mirror
