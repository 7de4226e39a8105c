#include "microwidths/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace microwidths {

namespace {

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> read_kv(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
    if (!kv.emplace(key, value).second)
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return kv;
}

template <class F>
auto wrap(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("key '" + key + "': " + e.what());
  }
}

}  // namespace

EmbeddingParams ExperimentConfig::params() const {
  // delta and s' are given directly; reconstruct smoothness fields so the
  // derivation identity delta = s1 - s2 - n(1/p1 - 1/p2) holds exactly.
  SpaceParams src{p1, q1, delta + Rational(n) * (p1.reciprocal() - p2.reciprocal()), s_prime};
  SpaceParams tgt{p2, q2, Rational(0), Rational(0)};
  return derive_params(src, tgt, n, d);
}

ExperimentConfig parse_config(std::istream& in) {
  auto kv = read_kv(in);
  ExperimentConfig c;

  const auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  const auto require = [&](const std::string& key) {
    auto v = take(key);
    if (!v) throw ConfigError("missing required key '" + key + "'");
    return *v;
  };

  c.p1 = wrap("p1", [&] { return parse_extrat(require("p1")); });
  c.p2 = wrap("p2", [&] { return parse_extrat(require("p2")); });
  c.q1 = c.p1;
  c.q2 = c.p2;
  if (auto v = take("q1")) c.q1 = wrap("q1", [&] { return parse_extrat(*v); });
  if (auto v = take("q2")) c.q2 = wrap("q2", [&] { return parse_extrat(*v); });
  c.delta = wrap("delta", [&] { return parse_rational(require("delta")); });
  c.s_prime = wrap("s_prime", [&] { return parse_rational(require("s_prime")); });
  c.n = wrap("n", [&] { return std::stoi(require("n")); });
  if (c.n < 1) throw ConfigError("n must be >= 1");

  const std::string set_kind = take("set").value_or("point");
  if (set_kind == "point") {
    std::vector<double> x0(c.n, 0.0);
    if (auto v = take("x0")) {
      std::istringstream xs(*v);
      std::string tok;
      x0.clear();
      while (std::getline(xs, tok, ','))
        x0.push_back(wrap("x0", [&] { return std::stod(tok); }));
      if (static_cast<int>(x0.size()) != c.n) throw ConfigError("x0 must have n coordinates");
    }
    c.model = point_set(x0);
    c.d = Rational(0);
  } else if (set_kind == "facecube") {
    const int m = wrap("m", [&] { return std::stoi(require("m")); });
    c.model = wrap("m", [&] { return face_cube(c.n, m); });
    c.d = Rational(m);
  } else if (set_kind == "cantor") {
    const Rational theta = wrap("theta", [&] { return parse_rational(require("theta")); });
    const int m = wrap("m", [&] { return std::stoi(take("m").value_or("0")); });
    c.model = wrap("theta", [&] { return cantor_product(c.n, theta, m); });
    // the Cantor dimension is irrational; the engine needs an explicit rational d
    c.d = wrap("d", [&] { return parse_rational(require("d")); });
  } else {
    throw ConfigError("unknown set '" + set_kind + "' (expected point|facecube|cantor)");
  }
  if (auto v = take("d")) c.d = wrap("d", [&] { return parse_rational(*v); });
  if (c.d < 0 || c.d > c.n) throw ConfigError("d must lie in [0, n]");

  if (auto v = take("J")) c.J = wrap("J", [&] { return std::stoi(*v); });
  if (auto v = take("I_max")) c.I_max = wrap("I_max", [&] { return std::stoi(*v); });
  if (c.J < 0 || c.I_max < 0) throw ConfigError("J and I_max must be >= 0");
  if (auto v = take("k_min")) c.k_min = wrap("k_min", [&] { return std::stoll(*v); });
  if (auto v = take("k_max")) c.k_max = wrap("k_max", [&] { return std::stoll(*v); });
  if (c.k_min < 1 || c.k_max < c.k_min) throw ConfigError("need 1 <= k_min <= k_max");
  if (auto v = take("k_points")) c.k_points = wrap("k_points", [&] { return std::stoi(*v); });
  if (c.k_points < 8) throw ConfigError("k_points must be >= 8");
  if (auto v = take("scheme")) c.scheme = wrap("scheme", [&] { return parse_scheme(*v); });
  if (auto v = take("tolerance")) c.tolerance = wrap("tolerance", [&] { return std::stod(*v); });
  if (!(c.tolerance > 0)) throw ConfigError("tolerance must be positive");

  if (!kv.empty()) throw ConfigError("unknown key '" + kv.begin()->first + "'");
  return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "p1 = " << to_string(c.p1) << "\np2 = " << to_string(c.p2) << "\nq1 = " << to_string(c.q1)
     << "\nq2 = " << to_string(c.q2) << "\ndelta = " << to_string(c.delta)
     << "\ns_prime = " << to_string(c.s_prime) << "\nn = " << c.n;
  switch (c.model.kind) {
    case DSetModel::Kind::Point: {
      os << "\nset = point\nx0 = ";
      for (std::size_t i = 0; i < c.model.x0.size(); ++i) os << (i ? "," : "") << c.model.x0[i];
      break;
    }
    case DSetModel::Kind::FaceCube:
      os << "\nset = facecube\nm = " << c.model.m;
      break;
    case DSetModel::Kind::CantorProduct:
      os << "\nset = cantor\ntheta = " << to_string(c.model.theta) << "\nm = " << c.model.m;
      break;
  }
  os << "\nd = " << to_string(c.d) << "\nJ = " << c.J << "\nI_max = " << c.I_max
     << "\nk_min = " << c.k_min << "\nk_max = " << c.k_max << "\nk_points = " << c.k_points
     << "\nscheme = " << to_string(c.scheme) << "\ntolerance = " << c.tolerance << "\n";
  return os.str();
}

namespace {

void serialize_result(std::ostream& os, const std::string& prefix, const RateResult& r) {
  os << prefix << ".kind = " << to_string(r.kind) << "\n";
  if (r.kappa) os << prefix << ".kappa = " << to_string(*r.kappa) << "\n";
  if (r.kappa_lb) os << prefix << ".kappa_lb = " << to_string(*r.kappa_lb) << "\n";
  if (r.kappa_ub) os << prefix << ".kappa_ub = " << to_string(*r.kappa_ub) << "\n";
  if (!r.case_id.empty()) os << prefix << ".case = " << r.case_id << "\n";
  if (!r.notes.empty()) os << prefix << ".notes = " << r.notes << "\n";
}

RateKind parse_kind(const std::string& s) {
  if (s == "NotCompact") return RateKind::NotCompact;
  if (s == "Exact") return RateKind::Exact;
  if (s == "TwoSided") return RateKind::TwoSided;
  if (s == "Open") return RateKind::Open;
  throw ConfigError("bad rate kind '" + s + "'");
}

RateResult parse_result(const std::map<std::string, std::string>& kv, const std::string& prefix) {
  RateResult r;
  const auto get = [&](const std::string& suffix) -> std::optional<std::string> {
    auto it = kv.find(prefix + "." + suffix);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  const auto kind = get("kind");
  if (!kind) throw ConfigError("rate report missing '" + prefix + ".kind'");
  r.kind = parse_kind(*kind);
  if (auto v = get("kappa")) r.kappa = parse_rational(*v);
  if (auto v = get("kappa_lb")) r.kappa_lb = parse_rational(*v);
  if (auto v = get("kappa_ub")) r.kappa_ub = parse_rational(*v);
  if (auto v = get("case")) r.case_id = *v;
  if (auto v = get("notes")) r.notes = *v;
  return r;
}

}  // namespace

RateReport make_rate_report(const EmbeddingParams& params) {
  RateReport rep;
  rep.approx = rate_approximation(params);
  rep.kolmogorov = rate_kolmogorov(params);
  rep.gelfand = rate_gelfand(params);
  rep.relations = compare_widths(params);
  return rep;
}

std::string serialize_rate_report(const RateReport& report) {
  std::ostringstream os;
  serialize_result(os, "a", report.approx);
  serialize_result(os, "d", report.kolmogorov);
  serialize_result(os, "c", report.gelfand);
  os << "relations =";
  bool first = true;
  for (const auto& rel : report.relations) {
    os << (first ? " " : ", ") << to_string(rel);
    first = false;
  }
  if (first) os << " none";
  os << "\n";
  return os.str();
}

RateReport parse_rate_report(const std::string& text) {
  std::istringstream in(text);
  const auto kv = read_kv(in);
  RateReport rep;
  rep.approx = parse_result(kv, "a");
  rep.kolmogorov = parse_result(kv, "d");
  rep.gelfand = parse_result(kv, "c");
  const auto it = kv.find("relations");
  if (it == kv.end()) throw ConfigError("rate report missing 'relations'");
  std::istringstream rels(it->second);
  std::string tok;
  while (std::getline(rels, tok, ',')) {
    tok = strip(tok);
    if (tok.empty() || tok == "none") continue;
    if (tok == "a~c")
      rep.relations.insert(WidthRelation::ApproxGelfand);
    else if (tok == "a~d")
      rep.relations.insert(WidthRelation::ApproxKolmogorov);
    else if (tok == "c~d")
      rep.relations.insert(WidthRelation::GelfandKolmogorov);
    else
      throw ConfigError("bad relation '" + tok + "'");
  }
  return rep;
}

bool operator==(const RateResult& a, const RateResult& b) {
  return a.kind == b.kind && a.kappa == b.kappa && a.kappa_lb == b.kappa_lb &&
         a.kappa_ub == b.kappa_ub && a.case_id == b.case_id && a.notes == b.notes;
}

bool operator==(const RateReport& a, const RateReport& b) {
  return a.approx == b.approx && a.kolmogorov == b.kolmogorov && a.gelfand == b.gelfand &&
         a.relations == b.relations;
}

}  // namespace microwidths
