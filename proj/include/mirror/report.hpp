#pragma once

#include "mirror/padic.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace mirror {

/// Outcome of a finite-order integrality or congruence certification.
///
/// A failing report always carries the index of the first offending
/// coefficient. Passing reports are evidence up to `order` only.
struct CertReport {
  bool pass = true;
  std::size_t order = 0;
  std::optional<std::size_t> witness_index;
  std::optional<Valuation> witness_valuation;
  std::string detail;

  static CertReport passed(std::size_t order, std::string detail = {}) {
    CertReport r;
    r.order = order;
    r.detail = std::move(detail);
    return r;
  }

  static CertReport failed(std::size_t order, std::size_t index,
                           std::string detail = {},
                           std::optional<Valuation> valuation = std::nullopt) {
    CertReport r;
    r.pass = false;
    r.order = order;
    r.witness_index = index;
    r.witness_valuation = valuation;
    r.detail = std::move(detail);
    return r;
  }
};

}  // namespace mirror
