#pragma once

#include <optional>
#include <set>
#include <string>

#include "microwidths/params.hpp"

namespace microwidths {

enum class RateKind { NotCompact, Exact, TwoSided, Open };

/// Verdict of the decision engine for one s-number scale.
///
/// Exact:    s_k ~ k^{-kappa}.
/// TwoSided: k^{-kappa_lb} <~ s_k <~ k^{-kappa_ub} with kappa_ub <= kappa_lb.
/// Open:     the point lies on a region boundary or in a region the theorems
///           leave unsolved; notes carries the reason.
struct RateResult {
  RateKind kind = RateKind::Open;
  std::optional<Rational> kappa;
  std::optional<Rational> kappa_lb;
  std::optional<Rational> kappa_ub;
  std::string case_id;  // stable public contract, e.g. "T1.iii", "T2.besides.i.a"
  std::string notes;
};

RateResult rate_approximation(const EmbeddingParams& params);
RateResult rate_kolmogorov(const EmbeddingParams& params);
RateResult rate_gelfand(const EmbeddingParams& params);

enum class WidthRelation { ApproxGelfand, ApproxKolmogorov, GelfandKolmogorov };

/// The sufficient conditions under which two of the three scales share the
/// same asymptotic order; returns exactly the relations whose conditions hold.
std::set<WidthRelation> compare_widths(const EmbeddingParams& params);

std::string to_string(RateKind kind);
std::string to_string(WidthRelation rel);

}  // namespace microwidths
