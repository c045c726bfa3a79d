#include "a2fg/harness.hpp"

#include "a2fg/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace a2fg {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string resolve(const std::string& base, const std::string& p) {
  if (base.empty() || fs::path(p).is_absolute()) return p;
  return (fs::path(base) / p).string();
}

Rational json_rational(const nlohmann::json& v) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw InvalidInput("expected a rational string or an integer");
}

std::string full(const BigFloat& x) { return x.str(0, std::ios_base::scientific); }

std::string full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

BigFloat to_big(const Rational& q) { return Field<BigFloat>::from_rational(q); }

BigFloat euclid_big(const BigFloat& a, const BigFloat& b) { return sqrt(BigFloat(4) / 3 * (a * a + a * b + b * b)); }

double sup_error(const BigFloat& a, const BigFloat& b, double ta, double tb) {
  return std::max(std::abs(a.convert_to<double>() - ta), std::abs(b.convert_to<double>() - tb));
}

Rational max_abs(const GeomFGParam& g) {
  Rational m(0);
  for (const auto& x : g.z) m = max(m, abs(x));
  for (const auto& x : g.s) m = max(m, abs(x));
  return m;
}

}  // namespace

IdealTriangulation load_surface(const std::string& spec) {
  if (fs::exists(spec) && fs::is_regular_file(spec)) return IdealTriangulation::load(spec);
  return IdealTriangulation::builtin(spec);
}

// ---------------------------------------------------------------------------

ExperimentConfig ExperimentConfig::from_json(std::string_view text, const std::string& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("experiment config: ") + e.what());
  }
  ExperimentConfig c;
  if (j.contains("surface")) {
    const std::string s = j["surface"].get<std::string>();
    c.surface = fs::exists(resolve(base_dir, s)) ? resolve(base_dir, s) : s;
  }
  if (j.contains("params")) {
    const auto& p = j["params"];
    if (p.is_string()) {
      c.params.push_back(resolve(base_dir, p.get<std::string>()));
    } else {
      for (const auto& x : p) c.params.push_back(resolve(base_dir, x.get<std::string>()));
    }
  }
  if (j.contains("backend")) c.backend = j["backend"].get<std::string>();
  if (j.contains("words"))
    for (const auto& w : j["words"]) c.words.push_back(w.get<std::string>());
  if (j.contains("max_word_len")) c.max_word_len = j["max_word_len"].get<int>();
  if (j.contains("lambdas"))
    for (const auto& x : j["lambdas"]) c.lambdas.push_back(json_rational(x));
  if (j.contains("out")) c.out_dir = resolve(base_dir, j["out"].get<std::string>());
  if (j.contains("precision")) c.precision = j["precision"].get<unsigned>();
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  return from_json(read_file(path), fs::path(path).parent_path().string());
}

void ExperimentConfig::validate() const {
  if (backend != "rat" && backend != "float" && backend != "qt") throw InvalidInput("unknown backend " + backend);
  if (max_word_len < 1) throw InvalidInput("max_word_len must be >= 1");
  if (precision < 64) throw InvalidInput("precision must be at least 64 bits");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (lambdas[i].sign() <= 0) throw InvalidInput("lambda schedule must be positive");
    if (i > 0 && !(lambdas[i - 1] < lambdas[i])) throw InvalidInput("lambda schedule must be strictly increasing");
  }
  for (const auto& w : words) parse_word(w);
}

IdealTriangulation ExperimentConfig::triangulation() const { return load_surface(surface); }

std::vector<GeomFGParam> ExperimentConfig::geometric_params(const IdealTriangulation& tri) const {
  std::vector<GeomFGParam> out;
  for (const auto& p : params) out.push_back(GeomFGParam::load(tri, p));
  return out;
}

std::vector<GroupWord> ExperimentConfig::word_list(int rank, int max_len) const {
  if (words.empty()) return cyclic_word_classes(rank, max_len);
  std::vector<GroupWord> out;
  for (const auto& w : words) {
    GroupWord g = parse_word(w);
    for (int x : g)
      if (std::abs(x) > rank) throw InvalidInput("word " + w + " uses a generator beyond the rank");
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<AxisTarget> axis_targets(const A2Complex& cx, const std::vector<GroupWord>& words) {
  std::vector<AxisTarget> out;
  for (const auto& w : words) out.push_back({w, axis_c_length(cx, w)});
  return out;
}

// ---------------------------------------------------------------------------

FGParam<RatFunc> monomial_realization(const GeomFGParam& g, Rational* scale) {
  mpz_class l = 1;
  for (const auto* v : {&g.z, &g.s})
    for (const auto& x : *v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
  const Rational sc{l};
  if (scale) *scale = sc;
  // Enough primes for any triangulation: sieve on demand.
  std::vector<long> primes;
  const std::size_t need = g.z.size() + g.s.size();
  for (long n = 2; primes.size() < need; ++n) {
    bool p = true;
    for (long q : primes) {
      if (q * q > n) break;
      if (n % q == 0) p = false;
    }
    if (p) primes.push_back(n);
  }
  FGParam<RatFunc> out;
  std::size_t k = 0;
  auto mono = [&](const Rational& x) {
    const Rational y = sc * x;
    if (!y.num().fits_slong_p()) throw InvalidInput("parameter too large for a monomial exponent");
    return RatFunc::monomial(y.num().get_si(), Rational(primes[k++]));
  };
  for (const auto& z : g.z) out.Z.push_back(mono(z));
  for (const auto& s : g.s) out.E.push_back(mono(s));
  return out;
}

int VerifyReport::matches() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.match; }));
}
int VerifyReport::mismatches() const { return static_cast<int>(rows.size()) - matches(); }

VerifyReport verify_theorem(const IdealTriangulation& tri, const GeomFGParam& g, const std::vector<AxisTarget>& targets,
                            double tol) {
  VerifyReport rep;
  rep.classification = classify(tri, g);
  if (!rep.classification.leftshifting || !rep.classification.edgeseparating) {
    rep.refused = true;
    for (const auto& w : rep.classification.leftshift_witnesses) rep.refusal.push_back("not left-shifting: " + w);
    for (const auto& w : rep.classification.edgesep_witnesses) rep.refusal.push_back("not edge-separating: " + w);
    return rep;
  }
  const FGParam<RatFunc> alg = monomial_realization(g, &rep.scale);
  const HypothesisReport hyp = check_hypotheses(alg);
  if (!hyp.all()) {
    rep.refused = true;
    rep.refusal = hyp.failures(tri);
    return rep;
  }
  const Representation<RatFunc> rho(tri, alg);
  const double sc = rep.scale.to_double();
  for (const auto& t : targets) {
    VerifyRow row;
    row.word = t.word;
    row.rep = c_length(rho, t.word).vec;
    row.axis_value = sc * t.axis.value;
    if (t.axis.exact) {
      row.axis = rep.scale * *t.axis.exact;
      row.match = *row.axis == row.rep;
      row.error = row.match ? 0.0 : norm_euc(to_double(row.rep) - row.axis_value);
    } else {
      row.error = std::max(std::abs(row.rep.a.to_double() - row.axis_value.a),
                           std::abs(row.rep.b.to_double() - row.axis_value.b));
      row.match = row.error <= tol * (1 + sc);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

VerifyReport verify_theorem(const IdealTriangulation& tri, const GeomFGParam& g, const std::vector<GroupWord>& words,
                            double tol) {
  const ClassifyReport c = classify(tri, g);
  if (!c.leftshifting || !c.edgeseparating) return verify_theorem(tri, g, std::vector<AxisTarget>{}, tol);
  const A2Complex cx(tri, g);
  return verify_theorem(tri, g, axis_targets(cx, words), tol);
}

std::vector<VerifyReport> verify_theorem(const ExperimentConfig& cfg) {
  const IdealTriangulation tri = cfg.triangulation();
  const DualGraph graph(tri);
  std::vector<VerifyReport> out;
  for (std::size_t i = 0; i < cfg.params.size(); ++i) {
    const GeomFGParam g = GeomFGParam::load(tri, cfg.params[i]);
    VerifyReport r = verify_theorem(tri, g, cfg.word_list(graph.rank(), cfg.max_word_len));
    r.label = cfg.params[i];
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string csv_word(const GroupWord& w) {
  std::string s;
  for (int x : w) {
    if (std::abs(x) > 26) return word_to_string(w);
    s += static_cast<char>((x > 0 ? 'a' : 'A') + std::abs(x) - 1);
  }
  return s.empty() ? "1" : s;
}

unsigned degeneration_bits(const GeomFGParam& g, const Rational& lambda, unsigned requested) {
  // Empirically one projective step loses a few times lambda max|z,s| nats.
  const double nats = 4.0 * (lambda * max_abs(g)).to_double();
  const auto needed = static_cast<unsigned>(256 + std::ceil(nats / std::log(2.0)));
  return std::max(requested, needed);
}

namespace {

std::vector<AVec<BigFloat>> rescaled_lengths(const IdealTriangulation& tri, const GeomFGParam& g,
                                             const std::vector<AxisTarget>& targets, const Rational& lambda,
                                             unsigned bits) {
  const PrecisionScope ps(bits);
  const BigFloat lam = to_big(lambda);
  FGParam<BigFloat> p;
  for (const auto& z : g.z) p.Z.push_back(exp(lam * to_big(z)));
  for (const auto& s : g.s) p.E.push_back(exp(lam * to_big(s)));
  const Representation<BigFloat> rho(tri, p);
  std::vector<AVec<BigFloat>> out;
  for (const auto& t : targets) {
    const CLength<BigFloat> c = c_length(rho, t.word);
    out.push_back({c.vec.a / lam, c.vec.b / lam});
  }
  return out;
}

}  // namespace

DegenerationTable run_degeneration(const IdealTriangulation& tri, const GeomFGParam& g,
                                   const std::vector<AxisTarget>& targets, const std::vector<Rational>& lambdas,
                                   unsigned precision) {
  const ClassifyReport c = classify(tri, g);
  if (!c.leftshifting || !c.edgeseparating) {
    std::string why = "degeneration needs a left-shifting, edge-separating limit";
    if (!c.leftshift_witnesses.empty()) why += ": " + c.leftshift_witnesses.front();
    if (!c.edgesep_witnesses.empty()) why += ": " + c.edgesep_witnesses.front();
    throw InvalidInput(why);
  }
  constexpr unsigned kMaxBits = 1u << 16;
  DegenerationTable table;
  for (const Rational& lambda : lambdas) {
    if (lambda.sign() <= 0) throw InvalidInput("lambda must be positive");
    unsigned bits = degeneration_bits(g, lambda, precision);
    std::vector<AVec<BigFloat>> vals;
    for (;;) {
      std::optional<std::vector<AVec<BigFloat>>> lo, hi;
      try {
        lo = rescaled_lengths(tri, g, targets, lambda, bits);
        hi = rescaled_lengths(tri, g, targets, lambda, bits + bits / 4);
      } catch (const ConsistencyError&) {
      }
      bool agree = lo && hi;
      for (std::size_t i = 0; agree && i < lo->size(); ++i) {
        const BigFloat d = std::max(abs((*lo)[i].a - (*hi)[i].a), abs((*lo)[i].b - (*hi)[i].b));
        agree = d.convert_to<double>() < 1e-30;
      }
      if (agree) {
        vals = std::move(*lo);
        break;
      }
      if (bits >= kMaxBits) throw NumericalError("degeneration: no stable precision up to 65536 bits");
      bits *= 2;
    }
    const PrecisionScope ps(bits);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      DegenerationRow r;
      r.word = targets[i].word;
      r.lambda = lambda;
      r.bits = bits;
      r.a = vals[i].a;
      r.b = vals[i].b;
      r.hilbert = r.a + r.b;
      r.euclid = euclid_big(r.a, r.b);
      r.target_a = targets[i].axis.value.a;
      r.target_b = targets[i].axis.value.b;
      r.target_hilbert = r.target_a + r.target_b;
      r.target_euclid = norm_euc(targets[i].axis.value);
      r.error = sup_error(r.a, r.b, r.target_a, r.target_b);
      table.rows.push_back(std::move(r));
    }
  }
  return table;
}

std::vector<DegenerationTable> run_degeneration(const ExperimentConfig& cfg) {
  if (cfg.lambdas.empty()) throw InvalidInput("degeneration needs a lambda schedule");
  const IdealTriangulation tri = cfg.triangulation();
  const DualGraph graph(tri);
  std::vector<DegenerationTable> out;
  for (const auto& g : cfg.geometric_params(tri)) {
    const A2Complex cx(tri, g);
    out.push_back(run_degeneration(tri, g, axis_targets(cx, cfg.word_list(graph.rank(), cfg.max_word_len)),
                                   cfg.lambdas, cfg.precision));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

const char* const kHeader =
    "word,lambda,bits,a,b,hilbert,euclid,target_a,target_b,target_hilbert,target_euclid,error";

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t k = line.find(',', start);
    out.emplace_back(line.substr(start, k == std::string_view::npos ? std::string_view::npos : k - start));
    if (k == std::string_view::npos) return out;
    start = k + 1;
  }
}

}  // namespace

std::string DegenerationTable::to_csv() const {
  std::ostringstream os;
  os << kHeader << '\n';
  for (const auto& r : rows) {
    os << csv_word(r.word) << ',' << r.lambda.str() << ',' << r.bits << ',' << full(r.a) << ',' << full(r.b) << ','
       << full(r.hilbert) << ',' << full(r.euclid) << ',' << full(r.target_a) << ',' << full(r.target_b) << ','
       << full(r.target_hilbert) << ',' << full(r.target_euclid) << ',' << full(r.error) << '\n';
  }
  return os.str();
}

DegenerationTable DegenerationTable::from_csv(std::string_view text) {
  DegenerationTable t;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kHeader) throw InvalidInput("degeneration CSV: bad header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 12) throw InvalidInput("degeneration CSV: expected 12 fields");
    DegenerationRow r;
    r.word = parse_word(f[0]);
    r.lambda = Rational::parse(f[1]);
    r.bits = static_cast<unsigned>(std::stoul(f[2]));
    const PrecisionScope ps(r.bits);
    r.a = parse_bigfloat(f[3]);
    r.b = parse_bigfloat(f[4]);
    r.hilbert = parse_bigfloat(f[5]);
    r.euclid = parse_bigfloat(f[6]);
    r.target_a = std::stod(f[7]);
    r.target_b = std::stod(f[8]);
    r.target_hilbert = std::stod(f[9]);
    r.target_euclid = std::stod(f[10]);
    r.error = std::stod(f[11]);
    t.rows.push_back(std::move(r));
  }
  return t;
}

std::vector<DegenerationSummary> DegenerationTable::summary() const {
  std::map<GroupWord, std::vector<const DegenerationRow*>> by_word;
  std::vector<GroupWord> order;
  for (const auto& r : rows) {
    if (!by_word.count(r.word)) order.push_back(r.word);
    by_word[r.word].push_back(&r);
  }
  std::vector<DegenerationSummary> out;
  for (const auto& w : order) {
    const auto& v = by_word[w];
    DegenerationSummary s;
    s.word = w;
    s.final_error = v.back()->error;
    std::size_t k = v.size() - 1;
    while (k > 0 && v[k - 1]->error >= v[k]->error) --k;
    s.threshold = v[k]->lambda;
    out.push_back(s);
  }
  return out;
}

double DegenerationTable::max_final_error() const {
  double m = 0;
  for (const auto& s : summary()) m = std::max(m, s.final_error);
  return m;
}

}  // namespace a2fg
