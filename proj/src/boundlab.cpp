#include "microwidths/boundlab.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace microwidths {

double block_scale(int j, int i, const EmbeddingParams& params) {
  const double e = double(j) * to_double(params.delta) + double(i) * to_double(params.s_prime);
  return std::exp2(-e);
}

double ideal_norm(const std::vector<double>& values, const Rational& r) {
  if (!(r > 0)) throw std::invalid_argument("ideal_norm: r must be positive");
  double best = 0.0;
  const double inv_r = to_double(Rational(1) / r);
  for (std::size_t n = 0; n < values.size(); ++n) {
    if (n > 0 && values[n] > values[n - 1])
      throw std::invalid_argument("ideal_norm: sequence must be non-increasing");
    best = std::max(best, std::pow(double(n + 1), inv_r) * values[n]);
  }
  return best;
}

std::int64_t strict_floor(double a) {
  const double f = std::floor(a);
  return static_cast<std::int64_t>(f == a ? f - 1.0 : f);
}

namespace {

double rho_exponent(const EmbeddingParams& params) {
  // The target ell_{q2}(ell_{p2}) is a min(1, p2, q2)-Banach space.
  double rho = 1.0;
  if (!params.target.p.is_infinite()) rho = std::min(rho, params.target.p.as_double());
  if (!params.target.q.is_infinite()) rho = std::min(rho, params.target.q.as_double());
  return rho;
}

double block_width_value(SKind kind, const EmbeddingParams& params, std::int64_t M,
                         std::int64_t k) {
  if (M <= 0 || k > M) return 0.0;
  return order_width(kind, params.p1(), params.p2(), M, k).value;
}

AllocationPlan full_cover(const BlockPartition& part, std::int64_t K) {
  AllocationPlan plan;
  plan.requested = K;
  plan.ranks.assign(part.J + 1, std::vector<std::int64_t>(part.I_max + 1, 1));
  std::int64_t spent = 0;
  for (int j = 0; j <= part.J; ++j)
    for (int i = 0; i <= part.I_max; ++i) {
      plan.ranks[j][i] = part.size(j, i) + 1;
      spent += part.size(j, i);
    }
  plan.budget = 1 + spent;
  return plan;
}

AllocationPlan allocate_pq5(std::int64_t K, const BlockPartition& part) {
  AllocationPlan plan;
  plan.scheme = AllocScheme::PQ5;
  plan.requested = K;
  plan.ranks.assign(part.J + 1, std::vector<std::int64_t>(part.I_max + 1, 1));

  // Annihilate the largest corner square {j <= M, i <= M} that fits the budget
  // (the P^1 + Q^1 part of the division; the tails keep rank 1).
  std::int64_t spent = 0;
  int M = -1;
  while (M + 1 <= std::min(part.J, part.I_max)) {
    const int cand = M + 1;
    std::int64_t extra = 0;
    for (int j = 0; j <= cand; ++j)
      for (int i = 0; i <= cand; ++i)
        if (std::max(j, i) == cand) extra += part.size(j, i);
    if (spent + extra > K - 1) break;
    spent += extra;
    M = cand;
  }
  for (int j = 0; j <= std::min(M, part.J); ++j)
    for (int i = 0; i <= std::min(M, part.I_max); ++i) plan.ranks[j][i] = part.size(j, i) + 1;
  plan.M = M;
  plan.budget = 1 + spent;
  return plan;
}

struct PQ6Params {
  Rational eps, z1, z2, z3, z4;
};

Rational midpoint(const Rational& lo, const Rational& hi) { return (lo + hi) / 2; }

// Free parameters of the PQ6 budgets, chosen at interval midpoints of the
// feasible region (all inequalities strict), in exact rationals.
PQ6Params pq6_free_params(const EmbeddingParams& e) {
  if (e.t.is_infinite())
    throw std::invalid_argument("pq6: infeasible, t = min(p1', p2) is infinite");
  const Rational t = e.t.value();
  const Rational inv_t = Rational(1) / t;
  const Rational& delta = e.delta;
  const Rational& sp = e.s_prime;
  const Rational d = e.d;
  const Rational n(e.n);
  const Rational edge = (2 * d - n) * inv_t;  // (2d - n)/t

  if (!(sp < n * inv_t)) throw std::invalid_argument("pq6: infeasible, requires s' < n/t");
  if (delta == sp || delta - sp == edge)
    throw std::invalid_argument("pq6: infeasible on a region boundary (delta = s' or delta - s' = (2d-n)/t)");

  PQ6Params out;
  const Rational one(1);
  if (delta - sp < edge) {
    // first bracket: needs delta < d/t as well
    if (d == 0 || !(delta < d * inv_t))
      throw std::invalid_argument("pq6: infeasible, first bracket requires delta < d/t");
    Rational eps_hi = std::min(one, one - delta * t / d);
    eps_hi = std::min(eps_hi, one - sp * t / n);
    out.eps = eps_hi / 2;
    out.z2 = 2 * d * out.eps / t;  // eps = z2 t / (2d)
    const Rational beta = sp - delta + edge;
    out.z1 = midpoint(std::max(Rational(0), out.z2 - 2 * beta), out.z2);
  } else {
    // second bracket: delta + s' < n/t
    if (!(delta + sp < n * inv_t))
      throw std::invalid_argument("pq6: infeasible, second bracket requires delta + s' < n/t");
    Rational eps_hi = std::min(one, one - (delta + sp) * t / n);
    eps_hi = std::min(eps_hi, one - sp * t / n);
    out.eps = eps_hi / 2;
    const Rational w = 2 * n * out.eps / t;  // z1 + z2, eps = (z1+z2) t / (2n)
    const Rational alpha = delta - sp + (n - 2 * d) * inv_t;
    const Rational v = midpoint(Rational(0), std::min(2 * alpha, w));  // z1 - z2
    out.z1 = (w + v) / 2;
    out.z2 = (w - v) / 2;
  }
  // i >= j part shares eps: z3 = 2 n eps / t, so s' + z3/2 < n/t holds.
  out.z3 = 2 * n * out.eps / t;
  const Rational gamma = delta - sp + n * inv_t;
  out.z4 = midpoint(std::max(Rational(0), out.z3 - 2 * gamma), out.z3);

  assert(out.eps > 0 && out.eps < 1);
  assert(out.z1 > 0 && out.z2 > 0 && out.z3 > 0 && out.z4 > 0);
  assert(sp + out.z3 / 2 < n * inv_t);
  assert(Rational(0) < (out.z3 - out.z4) / 2 && (out.z3 - out.z4) / 2 < gamma);
  return out;
}

AllocationPlan allocate_pq6(std::int64_t K, const BlockPartition& part, const EmbeddingParams& e) {
  AllocationPlan plan;
  plan.scheme = AllocScheme::PQ6;
  plan.requested = K;
  plan.ranks.assign(part.J + 1, std::vector<std::int64_t>(part.I_max + 1, 1));
  if (K < 2) throw std::invalid_argument("pq6: budget too small");

  const PQ6Params fp = pq6_free_params(e);
  const Rational t = e.t.value();
  const double log2k = std::log2(double(K));
  const double dn = double(e.n);
  const double dd = to_double(e.d);
  const double th = to_double(t) / 2.0;

  const Rational two_d = 2 * e.d;
  std::int64_t M1;
  if (two_d < e.n)
    M1 = strict_floor(log2k / (dn / 2.0));
  else if (two_d > e.n)
    M1 = strict_floor(log2k / dd);
  else
    M1 = strict_floor(log2k / dd - std::log2(std::max(log2k, 2.0)) / dd);
  const Rational edge = (2 * e.d - e.n) / t;
  const std::int64_t M2 = e.delta - e.s_prime < edge ? strict_floor(th * log2k / dd)
                                                     : strict_floor(th * log2k / (dn / 2.0));
  const std::int64_t M3 = strict_floor(log2k / dn);
  const std::int64_t M4 = strict_floor(th * log2k / dn);
  if (!(M1 < M2 && M3 < M4))
    throw std::invalid_argument("pq6: cut levels unordered at this K (K below K0 for these params)");

  const double om_eps = 1.0 - to_double(fp.eps);
  const double z1 = to_double(fp.z1), z2 = to_double(fp.z2);
  const double z3 = to_double(fp.z3), z4 = to_double(fp.z4);

  std::int64_t spent = 0;
  for (int j = 0; j <= part.J; ++j)
    for (int i = 0; i <= part.I_max; ++i) {
      const std::int64_t s = j + i;
      std::int64_t k = 1;
      if (i < j) {
        if (s <= M1)
          k = part.size(j, i) + 1;
        else if (s <= M2)
          k = std::max<std::int64_t>(
              1, strict_floor(std::pow(double(K), om_eps) * std::exp2(double(i) * z1 + double(j) * z2)));
      } else {
        if (s <= M3)
          k = part.size(j, i) + 1;
        else if (s <= M4)
          k = std::max<std::int64_t>(
              1, strict_floor(std::pow(double(K), om_eps) * std::exp2(double(i) * z3 + double(j) * z4)));
      }
      // Any budget beyond the block's annihilation point is wasted.
      k = std::min(k, part.size(j, i) + 1);
      plan.ranks[j][i] = k;
      spent += k - 1;
    }
  plan.M1 = int(M1);
  plan.M2 = int(M2);
  plan.M3 = int(M3);
  plan.M4 = int(M4);
  plan.eps = fp.eps;
  plan.z1 = fp.z1;
  plan.z2 = fp.z2;
  plan.z3 = fp.z3;
  plan.z4 = fp.z4;
  plan.budget = 1 + spent;
  return plan;
}

AllocationPlan allocate_greedy(std::int64_t K, const BlockPartition& part,
                               const EmbeddingParams& e, SKind kind) {
  AllocationPlan plan;
  plan.scheme = AllocScheme::Greedy;
  plan.requested = K;
  plan.ranks.assign(part.J + 1, std::vector<std::int64_t>(part.I_max + 1, 1));

  const double rho = rho_exponent(e);
  const auto contrib = [&](int j, int i, std::int64_t k) {
    const double w = block_width_value(kind, e, part.size(j, i), k);
    return std::pow(block_scale(j, i, e) * w, rho);
  };
  // Width models are flat over long stretches (single units buy nothing) and
  // concave over others (early units look worthless although finishing the
  // block is cheap overall), so each block offers a menu of jumps: geometric
  // strides plus outright annihilation, priced per rank unit.
  const auto best_jump = [&](int j, int i, std::int64_t k) -> std::pair<double, std::int64_t> {
    const std::int64_t M = part.size(j, i);
    const double cur = contrib(j, i, k);
    double best_rate = 0.0;
    std::int64_t best_to = k;
    const auto consider = [&](std::int64_t to) {
      if (to <= k || to > M + 1) return;
      const double rate = (cur - contrib(j, i, to)) / double(to - k);
      if (rate > best_rate) {
        best_rate = rate;
        best_to = to;
      }
    };
    for (std::int64_t step = 1; k + step <= M + 1; step *= 2) consider(k + step);
    consider(M + 1);
    return {best_rate, best_to};
  };

  struct Entry {
    double rate;  // bound decrease per rank unit
    int j, i;
    std::int64_t from, to;
  };
  const auto cmp = [](const Entry& a, const Entry& b) { return a.rate < b.rate; };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
  const auto push_jump = [&](int j, int i, std::int64_t k) {
    if (k > part.size(j, i)) return;
    const auto [rate, to] = best_jump(j, i, k);
    if (rate > 0.0) heap.push({rate, j, i, k, to});
  };
  for (int j = 0; j <= part.J; ++j)
    for (int i = 0; i <= part.I_max; ++i)
      if (part.size(j, i) > 0) push_jump(j, i, 1);

  std::int64_t units = K - 1;
  std::int64_t spent = 0;
  while (units > 0 && !heap.empty()) {
    const Entry top = heap.top();
    heap.pop();
    auto& k = plan.ranks[top.j][top.i];
    const std::int64_t want = top.to - top.from;
    if (want <= units) {
      k = top.to;
      units -= want;
      spent += want;
      push_jump(top.j, top.i, k);
    } else {
      k += units;  // partial grant with the leftover budget
      spent += units;
      units = 0;
    }
  }
  plan.budget = 1 + spent;
  return plan;
}

}  // namespace

AllocationPlan allocate(std::int64_t K, const BlockPartition& part, const EmbeddingParams& params,
                        AllocScheme scheme, SKind kind) {
  if (K < 1) throw std::invalid_argument("allocate: K must be >= 1");
  if (K - 1 >= part.total()) {
    AllocationPlan plan = full_cover(part, K);
    plan.scheme = scheme;
    return plan;
  }
  switch (scheme) {
    case AllocScheme::PQ5: return allocate_pq5(K, part);
    case AllocScheme::PQ6: return allocate_pq6(K, part, params);
    case AllocScheme::Greedy: return allocate_greedy(K, part, params, kind);
  }
  throw std::logic_error("allocate: bad scheme");
}

double upper_bound(const AllocationPlan& plan, const BlockPartition& part,
                   const EmbeddingParams& params, SKind kind) {
  const double rho = rho_exponent(params);
  double acc = 0.0;
  for (int j = 0; j <= part.J; ++j)
    for (int i = 0; i <= part.I_max; ++i) {
      const std::int64_t M = part.size(j, i);
      const std::int64_t k = plan.ranks[j][i];
      if (M == 0 || k > M) continue;
      const double v = block_scale(j, i, params) *
                       order_width(kind, params.p1(), params.p2(), M, k).value;
      acc += std::pow(v, rho);
    }
  return std::pow(acc, 1.0 / rho);
}

double lower_bound(std::int64_t k, const BlockPartition& part, const EmbeddingParams& params,
                   SKind kind) {
  if (k < 1) throw std::invalid_argument("lower_bound: k must be >= 1");
  double best = 0.0;
  for (int j = 0; j <= part.J; ++j)
    for (int i = 0; i <= part.I_max; ++i) {
      const std::int64_t M = part.size(j, i);
      if (M < k) continue;
      const double v = block_scale(j, i, params) *
                       order_width_lower(kind, params.p1(), params.p2(), M, k).value;
      best = std::max(best, v);
    }
  return best;
}

SlopeFit fit_slope(const BoundCurve& curve, std::int64_t k_min, std::int64_t k_max) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [k, v] : curve.points)
    if (k >= k_min && k <= k_max && v > 0.0) pts.emplace_back(std::log(double(k)), std::log(v));
  if (pts.size() < 8)
    throw std::invalid_argument("fit_slope: degenerate fit, fewer than 8 positive points in range");

  double sx = 0, sy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double mx = sx / double(pts.size());
  const double my = sy / double(pts.size());
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_slope: all abscissae equal");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.used_points = static_cast<int>(pts.size());
  return fit;
}

std::vector<IdealRow> ideal_norm_table(SKind kind, const BlockPartition& part,
                                       const EmbeddingParams& params, const Rational& r) {
  if (!(r > 0)) throw std::invalid_argument("ideal_norm_table: r must be positive");
  const Rational inv_s = Rational(1) / r + Rational(1, 2);  // 1/s = 1/r + 1/2
  const double dis = to_double(inv_s);
  const Rational inv_t = params.t.reciprocal();
  const double expo = to_double(inv_t + Rational(1) / r);  // 1/t + 1/r
  const double d = part.model.dimension();

  std::vector<IdealRow> rows;
  for (int j = 0; j <= part.J; ++j)
    for (int i = 0; i <= part.I_max; ++i) {
      const std::int64_t M = part.size(j, i);
      if (M == 0) continue;
      const double scale = block_scale(j, i, params);
      double lhs = 0.0;
      for (std::int64_t k = 1; k <= M; ++k) {
        const double v = scale * order_width(kind, params.p1(), params.p2(), M, k).value;
        lhs = std::max(lhs, std::pow(double(k), dis) * v);
      }
      const double dims = i < j ? double(i) * params.n + d * double(j - i) : double(i) * params.n;
      const double model = scale * std::exp2(dims * expo);
      rows.push_back({j, i, lhs, model, lhs / model});
    }
  return rows;
}

std::string to_string(AllocScheme scheme) {
  switch (scheme) {
    case AllocScheme::PQ5: return "pq5";
    case AllocScheme::PQ6: return "pq6";
    case AllocScheme::Greedy: return "greedy";
  }
  return "?";
}

std::string to_string(CurveRole role) {
  switch (role) {
    case CurveRole::Upper: return "upper";
    case CurveRole::Lower: return "lower";
    case CurveRole::Exact: return "exact";
  }
  return "?";
}

AllocScheme parse_scheme(const std::string& text) {
  if (text == "pq5") return AllocScheme::PQ5;
  if (text == "pq6") return AllocScheme::PQ6;
  if (text == "greedy") return AllocScheme::Greedy;
  throw std::invalid_argument("unknown scheme '" + text + "' (expected pq5|pq6|greedy)");
}

void dump_curves_csv(std::ostream& os, const std::vector<BoundCurve>& curves) {
  os << "k,value,role,scheme\n";
  for (const auto& c : curves)
    for (const auto& [k, v] : c.points)
      os << k << ',' << v << ',' << to_string(c.role) << ',' << c.metadata << '\n';
}

}  // namespace microwidths
