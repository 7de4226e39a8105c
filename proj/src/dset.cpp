#include "microwidths/dset.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace microwidths {

namespace {

constexpr int kCantorDepth = 40;

double cantor_point_dist(double x, double th, double lo, double hi, int depth) {
  if (x <= lo) return lo - x;  // lo is a point of C
  if (x >= hi) return x - hi;
  if (depth == 0) return 0.0;  // inside a depth-40 interval, error <= theta^40
  const double len = hi - lo;
  const double a1 = lo + th * len;  // right end of left child
  const double b1 = hi - th * len;  // left end of right child
  if (x > a1 && x < b1) return std::min(x - a1, b1 - x);  // in the gap, exact
  if (x <= a1) return std::min(cantor_point_dist(x, th, lo, a1, depth - 1), b1 - x);
  return std::min(cantor_point_dist(x, th, b1, hi, depth - 1), x - a1);
}

double cantor_interval_dist(double a, double b, double th, double lo, double hi, int depth) {
  if (b <= lo) return lo - b;
  if (a >= hi) return a - hi;
  // [a,b] now meets (lo,hi); the construction endpoints belong to C
  if (a <= lo || b >= hi) return 0.0;
  if (depth == 0) return 0.0;
  const double len = hi - lo;
  const double a1 = lo + th * len;
  const double b1 = hi - th * len;
  if (a <= a1 && b >= a1) return 0.0;  // covers the left child's right endpoint
  if (a <= b1 && b >= b1) return 0.0;
  if (a > a1 && b < b1) return std::min(a - a1, b1 - b);  // inside the gap, exact
  if (b < a1) return std::min(cantor_interval_dist(a, b, th, lo, a1, depth - 1), b1 - b);
  return std::min(cantor_interval_dist(a, b, th, b1, hi, depth - 1), a - a1);
}

double clamp_gap(double x, double lo, double hi) {
  if (x < lo) return lo - x;
  if (x > hi) return x - hi;
  return 0.0;
}

std::int64_t isqrt64(std::int64_t t) {
  if (t < 0) return -1;
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(t)));
  while (s > 0 && s * s > t) --s;
  while ((s + 1) * (s + 1) <= t) ++s;
  return s;
}

// floor(sqrt(t)) for the double-budget (Cantor) paths
std::int64_t isqrt_d(double t) {
  if (t < 0) return -1;
  auto s = static_cast<std::int64_t>(std::sqrt(t));
  while (s > 0 && double(s) * double(s) > t) --s;
  while (double(s + 1) * double(s + 1) <= t) ++s;
  return s;
}

// One coordinate of the ambient lattice at level j, with its contribution to
// the scaled squared distance. Point gaps are scaled by 2^j, cube gaps by
// 2^{j+1} so that both stay integral for exact models.
struct Coord {
  enum class Type { Abs, AbsOffset, Clamp, Cantor };
  Type type = Type::Abs;
  std::int64_t len = 1;   // Clamp: 2^j
  double offset = 0.0;    // AbsOffset: 2^j * x0_c
  double theta = 0.0;     // Cantor
  int j = 0;

  double pgap(std::int64_t l) const {
    switch (type) {
      case Type::Abs: return double(std::llabs(l));
      case Type::AbsOffset: return std::abs(double(l) - offset);
      case Type::Clamp: return l < 0 ? double(-l) : (l > len ? double(l - len) : 0.0);
      case Type::Cantor: {
        const double scale = double(len);  // len = 2^j here too
        return scale * cantor_point_dist(double(l) / scale, theta, 0.0, 1.0, kCantorDepth);
      }
    }
    return 0.0;
  }
  double pgap2(std::int64_t l) const {
    const double g = pgap(l);
    return g * g;
  }

  // (2 * 2^j * cube gap), where the cube is [l-1/2, l+1/2] * 2^-j
  double cgap(std::int64_t l) const {
    switch (type) {
      case Type::Abs: {
        const std::int64_t g = 2 * std::llabs(l) - 1;
        return g > 0 ? double(g) : 0.0;
      }
      case Type::AbsOffset: {
        const double g = 2.0 * std::abs(double(l) - offset) - 1.0;
        return g > 0 ? g : 0.0;
      }
      case Type::Clamp: {
        if (l < 0) return double(-2 * l - 1);
        if (l > len) return double(2 * (l - len) - 1);
        return 0.0;
      }
      case Type::Cantor: {
        const double scale = double(len);
        return 2.0 * scale *
               cantor_interval_dist((double(l) - 0.5) / scale, (double(l) + 0.5) / scale, theta,
                                    0.0, 1.0, kCantorDepth);
      }
    }
    return 0.0;
  }
  double cgap2(std::int64_t l) const {
    const double g = cgap(l);
    return g * g;
  }

  bool closed_form() const { return type == Type::Abs || type == Type::Clamp; }

  // iteration range of l with point gap <= sqrt(budget)
  std::pair<std::int64_t, std::int64_t> prange(double budget) const {
    const std::int64_t r = isqrt_d(budget) + 1;
    switch (type) {
      case Type::Abs: return {-r, r};
      case Type::AbsOffset: {
        const auto c = static_cast<std::int64_t>(std::llround(offset));
        return {c - r - 1, c + r + 1};
      }
      case Type::Clamp: return {-r, len + r};
      case Type::Cantor: return {-r, len + r};
    }
    return {0, 0};
  }
  // range with cube gap <= sqrt(budget); cube gaps carry the extra factor 2
  std::pair<std::int64_t, std::int64_t> crange(double budget) const {
    const std::int64_t r = isqrt_d(budget) / 2 + 2;
    switch (type) {
      case Type::Abs: return {-r, r};
      case Type::AbsOffset: {
        const auto c = static_cast<std::int64_t>(std::llround(offset));
        return {c - r - 1, c + r + 1};
      }
      case Type::Clamp: return {-r, len + r};
      case Type::Cantor: return {-r, len + r};
    }
    return {0, 0};
  }

  // #{l : point gap^2 <= T}, closed form (Abs/Clamp only)
  std::int64_t pcount_le(double T) const {
    if (T < 0) return 0;
    const std::int64_t s = isqrt_d(T);
    return type == Type::Abs ? 2 * s + 1 : len + 1 + 2 * s;
  }
  // #{l : cube gap^2 <= T}
  std::int64_t ccount_le(double T) const {
    if (T < 0) return 0;
    const std::int64_t s = isqrt_d(T);
    const std::int64_t half = (s + 1) / 2;  // #{y >= 1 : (2y-1)^2 <= T}
    return type == Type::Abs ? 1 + 2 * half : len + 1 + 2 * half;
  }
};

std::vector<Coord> level_coords(const DSetModel& U, int j) {
  const std::int64_t len = std::int64_t(1) << j;
  std::vector<Coord> cs(U.n);
  for (int c = 0; c < U.n; ++c) {
    Coord& co = cs[c];
    co.j = j;
    co.len = len;
    switch (U.kind) {
      case DSetModel::Kind::Point:
        if (U.x0[c] == 0.0) {
          co.type = Coord::Type::Abs;
        } else {
          co.type = Coord::Type::AbsOffset;
          co.offset = U.x0[c] * double(len);
        }
        break;
      case DSetModel::Kind::FaceCube:
        co.type = c < U.m ? Coord::Type::Clamp : Coord::Type::Abs;
        break;
      case DSetModel::Kind::CantorProduct:
        if (c == 0) {
          co.type = Coord::Type::Cantor;
          co.theta = to_double(U.theta);
        } else {
          co.type = c <= U.m ? Coord::Type::Clamp : Coord::Type::Abs;
        }
        break;
    }
  }
  // Closed-form counting runs on the last coordinate; keep a non-Cantor one
  // there (Cantor only ever occupies slot 0, so n >= 2 is already fine).
  return cs;
}

// Recursive odometer over coords [0, last); calls leaf(partial_gap2) once per
// prefix tuple, with ell[0..last) filled in.
template <class Leaf>
void for_each_prefix(const std::vector<Coord>& cs, std::size_t last, double budget, bool cube,
                     std::vector<std::int64_t>& ell, std::size_t c, double partial,
                     const Leaf& leaf) {
  if (c == last) {
    leaf(partial);
    return;
  }
  const double rem = budget - partial;
  const auto [lo, hi] = cube ? cs[c].crange(rem) : cs[c].prange(rem);
  for (std::int64_t l = lo; l <= hi; ++l) {
    const double g2 = cube ? cs[c].cgap2(l) : cs[c].pgap2(l);
    if (g2 > rem) continue;
    ell[c] = l;
    for_each_prefix(cs, last, budget, cube, ell, c + 1, partial + g2, leaf);
  }
}

}  // namespace

double DSetModel::dimension() const {
  switch (kind) {
    case Kind::Point: return 0.0;
    case Kind::FaceCube: return double(m);
    case Kind::CantorProduct: return std::log(2.0) / std::log(1.0 / to_double(theta)) + double(m);
  }
  return 0.0;
}

bool DSetModel::lattice_exact() const {
  if (kind == Kind::CantorProduct) return false;
  if (kind == Kind::Point)
    return std::all_of(x0.begin(), x0.end(), [](double v) { return v == 0.0; });
  return true;
}

std::string DSetModel::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Point: os << "point(n=" << n << ")"; break;
    case Kind::FaceCube: os << "facecube(n=" << n << ", m=" << m << ")"; break;
    case Kind::CantorProduct:
      os << "cantor(n=" << n << ", theta=" << to_string(theta) << ", m=" << m << ")";
      break;
  }
  return os.str();
}

DSetModel point_set(std::vector<double> x0) {
  if (x0.empty()) throw std::invalid_argument("point_set: empty location");
  DSetModel u;
  u.kind = DSetModel::Kind::Point;
  u.n = static_cast<int>(x0.size());
  u.x0 = std::move(x0);
  return u;
}

DSetModel face_cube(int n, int m) {
  if (n < 1 || m < 0 || m > n) throw std::invalid_argument("face_cube: need 0 <= m <= n, n >= 1");
  DSetModel u;
  u.kind = DSetModel::Kind::FaceCube;
  u.n = n;
  u.m = m;
  return u;
}

DSetModel cantor_product(int n, const Rational& theta, int m) {
  if (n < 1 || m < 0 || m > n - 1)
    throw std::invalid_argument("cantor_product: need 0 <= m <= n-1");
  if (!(theta > 0 && theta < Rational(1, 2)))
    throw std::invalid_argument("cantor_product: theta must lie in (0, 1/2)");
  DSetModel u;
  u.kind = DSetModel::Kind::CantorProduct;
  u.n = n;
  u.m = m;
  u.theta = theta;
  return u;
}

double distance(const std::vector<double>& x, const DSetModel& U) {
  if (static_cast<int>(x.size()) != U.n)
    throw std::invalid_argument("distance: dimension mismatch");
  double sum = 0.0;
  switch (U.kind) {
    case DSetModel::Kind::Point:
      for (int c = 0; c < U.n; ++c) sum += (x[c] - U.x0[c]) * (x[c] - U.x0[c]);
      break;
    case DSetModel::Kind::FaceCube:
      for (int c = 0; c < U.n; ++c) {
        const double g = c < U.m ? clamp_gap(x[c], 0.0, 1.0) : std::abs(x[c]);
        sum += g * g;
      }
      break;
    case DSetModel::Kind::CantorProduct:
      for (int c = 0; c < U.n; ++c) {
        double g;
        if (c == 0)
          g = cantor_point_dist(x[0], to_double(U.theta), 0.0, 1.0, kCantorDepth);
        else
          g = c <= U.m ? clamp_gap(x[c], 0.0, 1.0) : std::abs(x[c]);
        sum += g * g;
      }
      break;
  }
  return std::sqrt(sum);
}

double weight(int j, const std::vector<double>& x, const DSetModel& U, const Rational& s_w) {
  if (j < 0) throw std::invalid_argument("weight: j must be >= 0");
  const double base = 1.0 + std::ldexp(distance(x, U), j);
  return std::pow(base, to_double(s_w));
}

double scaled_dist2(const DSetModel& U, int j, const std::vector<std::int64_t>& ell) {
  if (static_cast<int>(ell.size()) != U.n)
    throw std::invalid_argument("scaled_dist2: dimension mismatch");
  const auto cs = level_coords(U, j);
  double sum = 0.0;
  for (int c = 0; c < U.n; ++c) sum += cs[c].pgap2(ell[c]);
  return sum;
}

int block_index(const DSetModel& U, int j, const std::vector<std::int64_t>& ell) {
  const double d2 = scaled_dist2(U, j, ell);
  double bound = double(U.n);  // n * 4^i
  int i = 0;
  while (d2 > bound) {
    bound *= 4.0;
    ++i;
  }
  return i;
}

std::int64_t BlockPartition::total() const {
  std::int64_t t = 0;
  for (const auto& row : sizes)
    for (auto v : row) t += v;
  return t;
}

BlockPartition partition(const DSetModel& U, int J, int I_max, std::int64_t cap) {
  if (J < 0 || I_max < 0) throw std::invalid_argument("partition: J, I_max must be >= 0");
  BlockPartition part;
  part.model = U;
  part.J = J;
  part.I_max = I_max;
  part.has_points = true;
  part.sizes.assign(J + 1, std::vector<std::int64_t>(I_max + 1, 0));
  part.points.assign(J + 1, std::vector<std::vector<std::int64_t>>(I_max + 1));

  std::int64_t visited = 0;
  for (int j = 0; j <= J; ++j) {
    const auto cs = level_coords(U, j);
    const double budget = double(U.n) * std::ldexp(1.0, 2 * I_max);
    std::vector<std::int64_t> ell(U.n);
    for_each_prefix(cs, cs.size(), budget, /*cube=*/false, ell, 0, 0.0, [&](double d2) {
      if (++visited > cap)
        throw std::length_error("partition: enumeration cap exceeded (" + std::to_string(cap) + ")");
      double bound = double(U.n);
      int i = 0;
      while (d2 > bound) {
        bound *= 4.0;
        ++i;
      }
      part.sizes[j][i] += 1;
      auto& flat = part.points[j][i];
      flat.insert(flat.end(), ell.begin(), ell.end());
    });
  }
  return part;
}

BlockPartition partition_sizes(const DSetModel& U, int J, int I_max) {
  if (J < 0 || I_max < 0) throw std::invalid_argument("partition_sizes: J, I_max must be >= 0");
  BlockPartition part;
  part.model = U;
  part.J = J;
  part.I_max = I_max;
  part.sizes.assign(J + 1, std::vector<std::int64_t>(I_max + 1, 0));

  for (int j = 0; j <= J; ++j) {
    const auto cs = level_coords(U, j);
    const double budget = double(U.n) * std::ldexp(1.0, 2 * I_max);
    std::vector<std::int64_t> ell(U.n);
    const Coord& last = cs.back();
    if (last.closed_form()) {
      for_each_prefix(cs, cs.size() - 1, budget, false, ell, 0, 0.0, [&](double partial) {
        double prev = -1.0;  // count below the i=0 threshold starts from everything
        for (int i = 0; i <= I_max; ++i) {
          const double ti = double(U.n) * std::ldexp(1.0, 2 * i) - partial;
          part.sizes[j][i] += last.pcount_le(ti) - (prev < 0 ? 0 : last.pcount_le(prev));
          prev = ti;
        }
      });
    } else {
      // no closed form on the last coordinate (1-d Cantor, offset point)
      for_each_prefix(cs, cs.size(), budget, false, ell, 0, 0.0, [&](double d2) {
        double bound = double(U.n);
        int i = 0;
        while (d2 > bound) {
          bound *= 4.0;
          ++i;
        }
        part.sizes[j][i] += 1;
      });
    }
  }
  return part;
}

std::int64_t count_N(const DSetModel& U, int j, int i) {
  if (j < 0 || i < 0) throw std::invalid_argument("count_N: j, i must be >= 0");
  const auto cs = level_coords(U, j);
  // Window on (2 * 2^j * dist(Q, U))^2: (4 n 4^i, 64 n 4^i]
  const double lo = 4.0 * double(U.n) * std::ldexp(1.0, 2 * i);
  const double hi = 16.0 * lo;
  std::vector<std::int64_t> ell(U.n);
  std::int64_t count = 0;
  const Coord& last = cs.back();
  if (last.closed_form()) {
    for_each_prefix(cs, cs.size() - 1, hi, /*cube=*/true, ell, 0, 0.0, [&](double partial) {
      count += last.ccount_le(hi - partial) - last.ccount_le(lo - partial);
    });
  } else {
    for_each_prefix(cs, cs.size(), hi, true, ell, 0, 0.0, [&](double d2) {
      if (d2 > lo && d2 <= hi) ++count;
    });
  }
  return count;
}

double counting_model(const DSetModel& U, int j, int i) {
  const double d = U.dimension();
  const double in = double(i) * U.n;
  return i < j ? std::exp2(in + double(j - i) * d) : std::exp2(in);
}

void scan_block(const DSetModel& U, int j, int i,
                const std::function<void(const std::vector<std::int64_t>&, double)>& fn,
                std::int64_t cap) {
  const auto cs = level_coords(U, j);
  const double t_hi = double(U.n) * std::ldexp(1.0, 2 * i);
  const double t_lo = i == 0 ? -1.0 : t_hi / 4.0;
  std::vector<std::int64_t> ell(U.n);
  std::int64_t visited = 0;
  const auto emit = [&](double d2) {
    if (++visited > cap) throw std::length_error("scan_block: enumeration cap exceeded");
    fn(ell, d2);
  };
  const Coord& last = cs.back();
  if (last.closed_form()) {
    const std::size_t lc = cs.size() - 1;
    for_each_prefix(cs, lc, t_hi, false, ell, 0, 0.0, [&](double partial) {
      // annulus band on the last coordinate: t_lo - partial < g^2 <= t_hi - partial
      const double bhi = t_hi - partial;
      const double blo = t_lo - partial;
      const std::int64_t shi = isqrt_d(bhi);
      const std::int64_t slo = isqrt_d(blo);  // -1 when blo < 0
      if (last.type == Coord::Type::Abs) {
        for (std::int64_t a = slo + 1; a <= shi; ++a) {
          const double d2 = partial + double(a) * double(a);
          if (a == 0) {
            ell[lc] = 0;
            emit(d2);
          } else {
            ell[lc] = a;
            emit(d2);
            ell[lc] = -a;
            emit(d2);
          }
        }
      } else {  // Clamp
        if (blo < 0)
          for (std::int64_t l = 0; l <= last.len; ++l) {
            ell[lc] = l;
            emit(partial);
          }
        for (std::int64_t g = slo + 1; g <= shi; ++g) {
          if (g == 0) continue;
          const double d2 = partial + double(g) * double(g);
          ell[lc] = -g;
          emit(d2);
          ell[lc] = last.len + g;
          emit(d2);
        }
      }
    });
  } else {
    for_each_prefix(cs, cs.size(), t_hi, false, ell, 0, 0.0, [&](double d2) {
      if (d2 > t_lo && d2 <= t_hi) emit(d2);
    });
  }
}

void dump_partition_csv(std::ostream& os, const BlockPartition& part, bool with_counts) {
  os << "j,i,M_ji,N_ji\n";
  for (int j = 0; j <= part.J; ++j)
    for (int i = 0; i <= part.I_max; ++i) {
      os << j << ',' << i << ',' << part.size(j, i) << ',';
      if (with_counts) os << count_N(part.model, j, i);
      os << '\n';
    }
}

}  // namespace microwidths
