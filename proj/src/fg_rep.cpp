#include "a2fg/fg_rep.hpp"

#include <json.hpp>
#include <mpfr.h>

#include <algorithm>

namespace a2fg {

namespace {

mpz_class lcm_z(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

mpz_class gcd_z(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Widens the MPFR exponent range of this thread for the lifetime of the
// guard; Graeffe iterates reach exponents far beyond the default range.
class ExponentRange {
 public:
  ExponentRange() : emin_(mpfr_get_emin()), emax_(mpfr_get_emax()) {
    mpfr_set_emin(mpfr_get_emin_min());
    mpfr_set_emax(mpfr_get_emax_max());
  }
  ~ExponentRange() {
    mpfr_set_emin(emin_);
    mpfr_set_emax(emax_);
  }
  ExponentRange(const ExponentRange&) = delete;
  ExponentRange& operator=(const ExponentRange&) = delete;

 private:
  mpfr_exp_t emin_, emax_;
};

BigFloat to_bigfloat(const Rational& q) { return Field<BigFloat>::from_rational(q); }

ProjMap<BigFloat> to_bigfloat(const ProjMap<Rational>& g) {
  ProjMap<BigFloat> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = to_bigfloat(g.m[i][j]);
  return r;
}

CLength<BigFloat> from_logs(std::array<BigFloat, 3> l) {
  std::sort(l.begin(), l.end(), [](const BigFloat& a, const BigFloat& b) { return a > b; });
  const BigFloat mean = (l[0] + l[1] + l[2]) / 3;
  for (auto& x : l) x -= mean;
  return {l, AVec<BigFloat>(l[0] - l[1], l[1] - l[2])};
}

CLength<Rational> from_logs(std::vector<Rational> l) {
  if (l.size() != 3) throw ConsistencyError("expected three root logs");
  std::sort(l.begin(), l.end(), std::greater<>());
  const Rational mean = (l[0] + l[1] + l[2]) / Rational(3);
  for (auto& x : l) x -= mean;
  return {{l[0], l[1], l[2]}, AVec<Rational>(l[0] - l[1], l[1] - l[2])};
}

BigFloat horner(const BigFloat& x, const BigFloat& c2, const BigFloat& c1, const BigFloat& c0) {
  return ((x + c2) * x + c1) * x + c0;
}

}  // namespace

ProjMap<RatFunc> tidy(const ProjMap<RatFunc>& g) {
  Poly l(1);
  for (const auto& row : g.m)
    for (const auto& x : row)
      if (!x.is_zero()) l = Poly::exact_div(l * x.den(), Poly::gcd(l, x.den()));
  std::array<std::array<Poly, 3>, 3> p;
  Poly content;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const RatFunc& x = g.m[i][j];
      p[i][j] = x.is_zero() ? Poly() : x.num() * Poly::exact_div(l, x.den());
      content = Poly::gcd(content, p[i][j]);
    }
  }
  if (content.is_zero()) throw InvalidInput("zero matrix");
  ProjMap<RatFunc> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = RatFunc(p[i][j].is_zero() ? Poly() : Poly::exact_div(p[i][j], content));
  return r;
}

ProjMap<Rational> tidy(const ProjMap<Rational>& g) {
  mpz_class l = 1, c = 0;
  for (const auto& row : g.m)
    for (const auto& x : row) l = lcm_z(l, x.den());
  for (const auto& row : g.m)
    for (const auto& x : row) c = gcd_z(c, x.num() * (l / x.den()));
  if (c == 0) throw InvalidInput("zero matrix");
  const Rational s(mpq_class(l, c));
  ProjMap<Rational> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = g.m[i][j] * s;
  return r;
}

ProjMap<BigFloat> tidy(const ProjMap<BigFloat>& g) { return g.normalized(); }

CLength<Rational> c_length(const ProjMap<RatFunc>& g) {
  return from_logs(newton_polygon_root_logs({-g.det(), g.trace_wedge2(), -g.trace(), RatFunc(1)}));
}

CLength<BigFloat> c_length(const ProjMap<BigFloat>& g) {
  return from_logs(cubic_root_log_moduli(-g.trace(), g.trace_wedge2(), -g.det()));
}

CLength<BigFloat> c_length(const ProjMap<Rational>& g) { return c_length(to_bigfloat(g)); }

CLength<Rational> c_length(const Representation<RatFunc>& rho, const GroupWord& w) {
  const auto c = rho.char_poly(w);
  return from_logs(newton_polygon_root_logs({c[2], c[1], c[0], RatFunc(1)}));
}

CLength<BigFloat> c_length(const Representation<BigFloat>& rho, const GroupWord& w) {
  const auto c = rho.char_poly(w);
  return from_logs(cubic_root_log_moduli(c[0], c[1], c[2]));
}

CLength<BigFloat> c_length(const Representation<Rational>& rho, const GroupWord& w) {
  const auto c = rho.char_poly(w);
  return from_logs(cubic_root_log_moduli(to_bigfloat(c[0]), to_bigfloat(c[1]), to_bigfloat(c[2])));
}

std::array<BigFloat, 3> cubic_root_log_moduli(const BigFloat& c2, const BigFloat& c1, const BigFloat& c0,
                                              int squarings) {
  if (c0 == 0) throw InvalidInput("singular matrix: zero eigenvalue");
  const ExponentRange range;
  // q(y) = q0 + q1 y + q2 y^2 + y^3; each step replaces the roots by their
  // squares: q(y^2) = -p(y) p(-y).
  BigFloat a = c2, b = c1, c = c0;
  for (int k = 0; k < squarings; ++k) {
    const BigFloat na = 2 * b - a * a;
    const BigFloat nb = b * b - 2 * a * c;
    const BigFloat nc = -(c * c);
    a = na;
    b = nb;
    c = nc;
  }
  // Upper hull of (i, log|q_i|); a hull edge from i to j (i < j) carries
  // j - i roots of log-modulus (log|q_i| - log|q_j|) / (j - i).
  std::vector<std::pair<int, BigFloat>> pts;
  pts.emplace_back(0, log(abs(c)));
  if (b != 0) pts.emplace_back(1, log(abs(b)));
  if (a != 0) pts.emplace_back(2, log(abs(a)));
  pts.emplace_back(3, BigFloat(0));
  std::vector<std::pair<int, BigFloat>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& u = hull[hull.size() - 2];
      const auto& v = hull.back();
      // Keep v only if strictly above the chord u-p.
      const BigFloat cross = (v.first - u.first) * (p.second - u.second) - (v.second - u.second) * (p.first - u.first);
      if (cross >= 0) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  const BigFloat scale = pow(BigFloat(2), squarings);
  std::array<BigFloat, 3> out;
  int n = 0;
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const int w = hull[k + 1].first - hull[k].first;
    const BigFloat l = (hull[k].second - hull[k + 1].second) / w / scale;
    for (int r = 0; r < w; ++r) out[n++] = l;
  }
  std::sort(out.begin(), out.end(), [](const BigFloat& x, const BigFloat& y) { return x > y; });
  return out;
}

bool cubic_roots_real_positive_distinct(const BigFloat& c2, const BigFloat& c1, const BigFloat& c0,
                                        std::array<BigFloat, 3>* roots) {
  const auto logs = cubic_root_log_moduli(c2, c1, c0);
  for (int i = 0; i + 1 < 3; ++i) {
    if (logs[i] - logs[i + 1] < BigFloat(1e-9)) return false;
  }
  const ExponentRange range;
  const BigFloat tol = pow(BigFloat(10), -static_cast<long>(BigFloat::default_precision()) / 2);
  std::array<BigFloat, 3> r;
  for (int i = 0; i < 3; ++i) {
    BigFloat x = exp(logs[i]);
    bool converged = false;
    for (int it = 0; it < 200 && !converged; ++it) {
      const BigFloat d = (3 * x + 2 * c2) * x + c1;
      if (d == 0) break;
      const BigFloat step = horner(x, c2, c1, c0) / d;
      x -= step;
      converged = abs(step) <= tol * abs(x);
    }
    if (!converged || x <= 0) return false;
    if (abs(log(x) - logs[i]) > BigFloat(1e-6)) return false;
    r[i] = x;
  }
  if (roots) *roots = r;
  return true;
}

bool eigenvalues_real_positive_distinct(const ProjMap<BigFloat>& g) {
  // Fix the sign of the lift so that positive eigenvalues mean positive in
  // PGL: use the lift with positive determinant.
  ProjMap<BigFloat> m = g;
  if (m.det() < 0) {
    for (auto& row : m.m)
      for (auto& x : row) x = -x;
  }
  return cubic_roots_real_positive_distinct(-m.trace(), m.trace_wedge2(), -m.det());
}

bool HypothesisReport::all_flat_triangles() const {
  return std::all_of(flat_triangles.begin(), flat_triangles.end(), [](bool b) { return b; });
}

bool HypothesisReport::all_edges() const {
  return std::all_of(edges.begin(), edges.end(), [](bool b) { return b; });
}

std::vector<std::string> HypothesisReport::failures(const IdealTriangulation& tri) const {
  std::vector<std::string> out;
  for (std::size_t t = 0; t < flat_triangles.size(); ++t) {
    if (!flat_triangles[t]) out.push_back("|Z+1| < 1 at " + tri.triangle_label(static_cast<int>(t)));
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!edges[e]) out.push_back("|E+1| < 1 at " + tri.edge_label(static_cast<int>(e)));
  }
  return out;
}

namespace {

template <class T, class Parse>
FGParam<T> parse_fg(const IdealTriangulation& tri, const std::string& text, Parse parse) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("parameter JSON: ") + e.what());
  }
  auto literal = [](const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long>());
    if (v.is_number()) return v.dump();
    throw InvalidInput("parameter values must be strings or numbers");
  };
  if (!j.contains("Z") || !j.contains("E")) throw InvalidInput("parameter JSON needs Z and E");
  FGParam<T> p;
  for (int t = 0; t < tri.num_triangles(); ++t) {
    const std::string lab = tri.triangle_label(t);
    if (!j["Z"].contains(lab)) throw InvalidInput("missing Z for " + lab);
    p.Z.push_back(parse(literal(j["Z"][lab])));
  }
  for (int e = 0; e < tri.num_oriented_edges(); ++e) {
    const std::string lab = tri.edge_label(e);
    if (!j["E"].contains(lab)) throw InvalidInput("missing E for " + lab);
    p.E.push_back(parse(literal(j["E"][lab])));
  }
  p.validate(tri);
  return p;
}

}  // namespace

FGParam<Rational> parse_fg_rational(const IdealTriangulation& tri, const std::string& text) {
  return parse_fg<Rational>(tri, text, [](const std::string& s) { return Rational::parse(s); });
}

FGParam<RatFunc> parse_fg_ratfunc(const IdealTriangulation& tri, const std::string& text) {
  return parse_fg<RatFunc>(tri, text, [](const std::string& s) { return RatFunc::parse(s); });
}

FGParam<BigFloat> parse_fg_bigfloat(const IdealTriangulation& tri, const std::string& text) {
  return parse_fg<BigFloat>(tri, text, [](const std::string& s) { return parse_bigfloat(s); });
}

}  // namespace a2fg
