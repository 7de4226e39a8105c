#include "microwidths/seqspace.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace microwidths {

void SeqElement::set(int j, std::vector<std::int64_t> ell, double value) {
  if (j < 0 || j > J) throw std::out_of_range("SeqElement::set: level outside truncation");
  const Key key{j, std::move(ell)};
  if (value == 0.0)
    entries.erase(key);
  else
    entries[key] = value;
}

double norm(const SeqElement& lambda, const SpaceSpec& spec) {
  // per-level weighted inner norms
  std::map<int, double> inner;  // j -> sum |v w|^p  (or max when p = inf)
  const bool p_inf = spec.p.is_infinite();
  const double pd = p_inf ? 0.0 : spec.p.as_double();
  for (const auto& [key, value] : lambda.entries) {
    const auto& [j, ell] = key;
    std::vector<double> x(ell.size());
    for (std::size_t c = 0; c < ell.size(); ++c) x[c] = std::ldexp(double(ell[c]), -j);
    const double w = weight(j, x, spec.U, spec.weight_exponent);
    const double term = std::abs(value) * w;
    auto& acc = inner[j];
    if (p_inf)
      acc = std::max(acc, term);
    else
      acc += std::pow(term, pd);
  }

  const bool q_inf = spec.q.is_infinite();
  const double qd = q_inf ? 0.0 : spec.q.as_double();
  const double sd = to_double(spec.s);
  double outer = 0.0;
  for (const auto& [j, acc] : inner) {
    const double level = std::exp2(double(j) * sd) * (p_inf ? acc : std::pow(acc, 1.0 / pd));
    if (q_inf)
      outer = std::max(outer, level);
    else
      outer += std::pow(level, qd);
  }
  return q_inf ? outer : std::pow(outer, 1.0 / qd);
}

SeqElement project(const SeqElement& lambda, int j, int i, const BlockPartition& part) {
  if (j > part.J || i > part.I_max) throw std::out_of_range("project: block outside truncation");
  SeqElement out;
  out.J = lambda.J;
  out.I_max = lambda.I_max;
  for (const auto& [key, value] : lambda.entries) {
    if (key.first != j) continue;
    if (block_index(part.model, j, key.second) == i) out.entries.emplace(key, value);
  }
  return out;
}

double diagonal_sigma(const EmbeddingParams& params, int j, double dist2_scaled) {
  const double delta = to_double(params.delta);
  const double sp = to_double(params.s_prime);
  return std::exp2(-double(j) * delta) * std::pow(1.0 + std::sqrt(dist2_scaled), -sp);
}

namespace {

void require_diagonal(const EmbeddingParams& params) {
  if (!(params.source.p == params.target.p && params.source.q == params.target.q &&
        params.source.q == params.source.p))
    throw std::invalid_argument(
        "as_diagonal: requires p1 = p2 = q1 = q2 (the embedding is not diagonal otherwise)");
}

}  // namespace

std::vector<double> as_diagonal(const EmbeddingParams& params, const BlockPartition& part) {
  require_diagonal(params);
  if (!part.has_points)
    throw std::invalid_argument("as_diagonal: partition was built without coordinates");
  std::vector<double> sigma;
  sigma.reserve(static_cast<std::size_t>(part.total()));
  const int n = part.model.n;
  std::vector<std::int64_t> ell(n);
  for (int j = 0; j <= part.J; ++j)
    for (int i = 0; i <= part.I_max; ++i) {
      const auto& flat = part.points[j][i];
      for (std::size_t o = 0; o < flat.size(); o += n) {
        std::copy(flat.begin() + o, flat.begin() + o + n, ell.begin());
        sigma.push_back(diagonal_sigma(params, j, scaled_dist2(part.model, j, ell)));
      }
    }
  std::sort(sigma.begin(), sigma.end(), std::greater<double>());
  return sigma;
}

std::vector<double> top_diagonal(const EmbeddingParams& params, const DSetModel& U, int J,
                                 int I_max, std::int64_t top_k) {
  require_diagonal(params);
  if (top_k < 1) throw std::invalid_argument("top_diagonal: top_k must be >= 1");
  if (params.s_prime <= 0)
    throw std::invalid_argument("top_diagonal: requires s' > 0");

  const double delta = to_double(params.delta);
  const double sp = to_double(params.s_prime);
  const double sqn = std::sqrt(double(U.n));

  struct Block {
    double sigma_max;
    int j, i;
  };
  std::vector<Block> blocks;
  blocks.reserve((J + 1) * (I_max + 1));
  for (int j = 0; j <= J; ++j)
    for (int i = 0; i <= I_max; ++i) {
      const double wmin = i == 0 ? 1.0 : std::pow(1.0 + sqn * std::exp2(double(i - 1)), sp);
      blocks.push_back({std::exp2(-double(j) * delta) / wmin, j, i});
    }
  std::sort(blocks.begin(), blocks.end(),
            [](const Block& a, const Block& b) { return a.sigma_max > b.sigma_max; });

  std::vector<double> pool;
  double kth = -1.0;
  for (const auto& b : blocks) {
    if (static_cast<std::int64_t>(pool.size()) >= top_k && b.sigma_max < kth) break;
    scan_block(U, b.j, b.i, [&](const std::vector<std::int64_t>&, double d2) {
      pool.push_back(diagonal_sigma(params, b.j, d2));
    });
    if (static_cast<std::int64_t>(pool.size()) >= top_k) {
      std::nth_element(pool.begin(), pool.begin() + (top_k - 1), pool.end(),
                       std::greater<double>());
      kth = pool[top_k - 1];
    }
  }
  std::sort(pool.begin(), pool.end(), std::greater<double>());
  if (static_cast<std::int64_t>(pool.size()) > top_k) pool.resize(top_k);
  return pool;
}

void dump_element_csv(std::ostream& os, const SeqElement& lambda, int n) {
  os << "j";
  for (int c = 1; c <= n; ++c) os << ",l" << c;
  os << ",value\n";
  for (const auto& [key, value] : lambda.entries) {
    os << key.first;
    for (auto l : key.second) os << ',' << l;
    os << ',' << value << '\n';
  }
}

}  // namespace microwidths
