#include "microwidths/rates.hpp"

#include <cassert>
#include <stdexcept>
#include <vector>

namespace microwidths {

namespace {

// Strict inequalities in the clause hypotheses are evaluated three-valued so
// that equality cases surface as Open instead of silently picking a side.
enum class Tri { No, Boundary, Yes };

Tri lt(const Rational& a, const Rational& b) {
  if (a < b) return Tri::Yes;
  if (a == b) return Tri::Boundary;
  return Tri::No;
}

Tri gt(const Rational& a, const Rational& b) { return lt(b, a); }

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::No || b == Tri::No) return Tri::No;
  if (a == Tri::Boundary || b == Tri::Boundary) return Tri::Boundary;
  return Tri::Yes;
}

Tri tri_and(Tri a, Tri b, Tri c) { return tri_and(tri_and(a, b), c); }
Tri tri_and(Tri a, Tri b, Tri c, Tri d) { return tri_and(tri_and(a, b), tri_and(c, d)); }

Tri tri_or(Tri a, Tri b) {
  if (a == Tri::Yes || b == Tri::Yes) return Tri::Yes;
  if (a == Tri::Boundary || b == Tri::Boundary) return Tri::Boundary;
  return Tri::No;
}

struct Clause {
  std::string id;
  Tri fired;
  RateResult payload;
};

RateResult exact_result(const std::string& id, const Rational& kappa) {
  RateResult r;
  r.kind = RateKind::Exact;
  r.kappa = kappa;
  r.case_id = id;
  assert(kappa > 0);
  return r;
}

RateResult two_sided_result(const std::string& id, const Rational& lb, const Rational& ub,
                            const std::string& notes) {
  RateResult r;
  r.kind = RateKind::TwoSided;
  r.kappa_lb = lb;
  r.kappa_ub = ub;
  r.case_id = id;
  r.notes = notes;
  assert(Rational(0) < ub && ub <= lb);
  return r;
}

RateResult open_result(const std::string& notes) {
  RateResult r;
  r.kind = RateKind::Open;
  r.notes = notes;
  return r;
}

// min(delta/d, x) with the d = 0 convention delta/d = +inf.
Rational min_with_delta_over_d(const EmbeddingParams& e, const Rational& x) {
  if (e.d == 0) return x;
  const Rational dd = e.delta / e.d;
  return dd < x ? dd : x;
}

// The clause family shared by the three theorems on the p1 < p2 crossing
// regions. R is the decision threshold (1/t, 1/p2 or 1/p1', possibly scaled
// by theta/theta1); tau = 1/base_recip is the exponent scale of clause (iv)
// and the Besides bounds. When `suppressed` is set the refinement clauses
// vanish and only the main clause is emitted.
void emit_split_clauses(const EmbeddingParams& e, const std::string& prefix,
                        const std::string& main_label, const Rational& main_kappa,
                        const std::string& iv_label, const std::string& besides_a,
                        const std::string& besides_b, const Rational& base_recip,
                        const Rational& theta_hat, bool suppressed, std::vector<Clause>& out) {
  const Rational m = e.rate_min();
  const Rational R = base_recip * theta_hat;
  const Rational& delta = e.delta;
  const Rational& sp = e.s_prime;
  const Rational dn2 = Rational(2) * e.d - e.n;  // 2d - n

  out.push_back({prefix + "." + main_label, gt(m, R), exact_result(prefix + "." + main_label, main_kappa)});
  if (suppressed) return;

  assert(base_recip > 0);
  const Rational tau = Rational(1) / base_recip;
  const Rational half_tau = tau / 2;

  const Tri below = lt(delta, sp);
  const Tri above = gt(delta, sp);
  const Tri bracket_a = tri_and(lt(delta, e.d * R), lt(delta - sp, dn2 * R));
  const Tri bracket_b = tri_and(lt(delta + sp, Rational(e.n) * R), gt(delta - sp, dn2 * R));

  out.push_back({prefix + "." + iv_label, tri_and(above, tri_or(bracket_a, bracket_b)),
                 exact_result(prefix + "." + iv_label, sp / e.n * half_tau)});

  const std::string note =
      "two-sided estimate only; the exact order in this region is open";
  out.push_back({prefix + "." + besides_a,
                 tri_and(below, bracket_a, lt(sp, Rational(e.n) * R)),
                 two_sided_result(prefix + "." + besides_a, half_tau * m,
                                  half_tau * min_with_delta_over_d(e, (delta + sp) / (2 * e.n)),
                                  note)});

  const Rational quarter_sum = (delta + sp) / 4;
  const Rational ub_b = tau / e.n * (delta < quarter_sum ? delta : quarter_sum);
  out.push_back({prefix + "." + besides_b, tri_and(below, bracket_b),
                 two_sided_result(prefix + "." + besides_b, half_tau * m, ub_b, note)});
}

RateResult resolve(const std::vector<Clause>& clauses, const std::string& uncovered_note) {
  const Clause* hit = nullptr;
  for (const auto& c : clauses) {
    if (c.fired != Tri::Yes) continue;
    // Hypotheses are mutually exclusive by construction; a second hit means
    // the transcription of the tables is wrong.
    if (hit != nullptr) throw std::logic_error("rate engine: clauses " + hit->id + " and " + c.id + " both fired");
    hit = &c;
  }
  if (hit != nullptr) return hit->payload;

  std::string boundary_ids;
  for (const auto& c : clauses) {
    if (c.fired == Tri::Boundary) boundary_ids += (boundary_ids.empty() ? "" : ", ") + c.id;
  }
  if (!boundary_ids.empty())
    return open_result("region boundary (equality in a strict hypothesis) of: " + boundary_ids +
                       "; the theorems leave these cases open");
  return open_result(uncovered_note);
}

const std::string kUncovered =
    "uncovered region; the optimal order is open and may even depend on q1 and q2";

std::optional<RateResult> compactness_gate(const EmbeddingParams& e) {
  if (is_compact(e)) return std::nullopt;
  RateResult r;
  r.kind = RateKind::NotCompact;
  r.notes = "embedding is not compact: requires delta > d/p* and s' > n/p*";
  return r;
}

}  // namespace

RateResult rate_approximation(const EmbeddingParams& e) {
  if (auto gate = compactness_gate(e)) return *gate;

  const Rational u1 = e.inv_p1();
  const Rational u2 = e.inv_p2();
  const Rational m = e.rate_min();
  const Rational half(1, 2);

  if (u2 > u1)  // p2 < p1; compactness already forces p_tilde < p2
    return exact_result("T1.ii", m + u1 - u2);

  if (u2 >= half || u1 <= half)  // p1 <= p2 <= 2 or 2 <= p1 <= p2
    return exact_result("T1.i", m);

  // 0 < p1 < 2 < p2 <= inf
  const Rational inv_t = e.t.reciprocal();
  const bool suppressed = u1 >= 1 && e.p2().is_infinite();  // t = inf; clause (iv) and Besides vanish
  std::vector<Clause> clauses;
  emit_split_clauses(e, "T1", "iii", m + half - inv_t, "iv", "besides.i", "besides.ii", inv_t,
                     Rational(1), suppressed, clauses);
  return resolve(clauses, kUncovered);
}

RateResult rate_kolmogorov(const EmbeddingParams& e) {
  if (auto gate = compactness_gate(e)) return *gate;

  const Rational u1 = e.inv_p1();
  const Rational u2 = e.inv_p2();
  const Rational m = e.rate_min();
  const Rational half(1, 2);

  if (u2 > u1) return exact_result("T2.ii", m + u1 - u2);

  if (u2 >= half || u1 == u2)  // 0 < p1 <= p2 <= 2 or 2 < p1 = p2 <= inf
    return exact_result("T2.i", m);

  const bool suppressed = e.p2().is_infinite();
  std::vector<Clause> clauses;
  if (u1 > half) {
    // 0 < p1 < 2 < p2 <= inf
    emit_split_clauses(e, "T2", "iii", m + half - u2, "iv", "besides.i.a", "besides.i.b", u2,
                       Rational(1), suppressed, clauses);
  } else {
    // 2 <= p1 < p2 <= inf, so p2 > 2 and theta is present
    assert(e.theta.has_value());
    emit_split_clauses(e, "T2", "v", m + u1 - u2, "vi", "besides.ii.a", "besides.ii.b", u2,
                       *e.theta, suppressed, clauses);
  }
  return resolve(clauses, kUncovered);
}

RateResult rate_gelfand(const EmbeddingParams& e) {
  if (auto gate = compactness_gate(e)) return *gate;

  const Rational u1 = e.inv_p1();
  const Rational u2 = e.inv_p2();
  const Rational m = e.rate_min();
  const Rational half(1, 2);

  if (u2 > u1) return exact_result("T3.ii", m + u1 - u2);

  if (u1 <= half || u1 == u2)  // 2 <= p1 <= p2 <= inf or 0 < p1 = p2 < 2
    return exact_result("T3.i", m);

  const Rational v1 = conjugate(e.p1()).reciprocal();  // 1/p1'
  const bool suppressed = u1 >= 1;  // 0 < p1 <= 1: clauses (iv), (vi) and Besides vanish
  std::vector<Clause> clauses;
  if (u2 < half) {
    // 0 < p1 < 2 < p2 <= inf
    emit_split_clauses(e, "T3", "iii", m + u1 - half, "iv", "besides.i.a", "besides.i.b", v1,
                       Rational(1), suppressed, clauses);
  } else {
    // 0 < p1 < p2 <= 2, so p1 < 2 and theta1 is present
    assert(e.theta1.has_value());
    emit_split_clauses(e, "T3", "v", m + u1 - u2, "vi", "besides.ii.a", "besides.ii.b", v1,
                       *e.theta1, suppressed, clauses);
  }
  return resolve(clauses, kUncovered);
}

std::set<WidthRelation> compare_widths(const EmbeddingParams& e) {
  const Rational u1 = e.inv_p1();
  const Rational u2 = e.inv_p2();
  const Rational v1 = conjugate(e.p1()).reciprocal();
  const Rational m = e.rate_min();
  const Rational half(1, 2);

  const bool tilde_chain = e.inv_p_tilde() > u2 && u2 >= u1;  // p_tilde < p2 <= p1

  std::set<WidthRelation> rels;
  // a ~ c
  if ((u1 <= half && u2 < u1) || tilde_chain ||
      (u1 <= 1 && v1 < u1 && u2 <= v1 && m > v1))
    rels.insert(WidthRelation::ApproxGelfand);
  // a ~ d
  if ((u2 >= half && u2 < u1) || tilde_chain ||
      (u1 > half && u2 < half && u2 >= v1 && m > u2))
    rels.insert(WidthRelation::ApproxKolmogorov);
  // c ~ d
  if (tilde_chain || (u1 <= 1 && v1 < u1 && u2 == v1 && m > u2))
    rels.insert(WidthRelation::GelfandKolmogorov);
  return rels;
}

std::string to_string(RateKind kind) {
  switch (kind) {
    case RateKind::NotCompact: return "NotCompact";
    case RateKind::Exact: return "Exact";
    case RateKind::TwoSided: return "TwoSided";
    case RateKind::Open: return "Open";
  }
  return "?";
}

std::string to_string(WidthRelation rel) {
  switch (rel) {
    case WidthRelation::ApproxGelfand: return "a~c";
    case WidthRelation::ApproxKolmogorov: return "a~d";
    case WidthRelation::GelfandKolmogorov: return "c~d";
  }
  return "?";
}

}  // namespace microwidths
