#include "a2fg/a2_complex.hpp"
#include "a2fg/errors.hpp"
#include "a2fg/fg_rep.hpp"
#include "a2fg/harness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace a2fg;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string surface = "punctured_torus";
  std::vector<std::string> params;
  std::string backend = "qt";
  unsigned precision = kDefaultPrecisionBits;
  int max_word_len = 0;
  std::string out;
  std::string config;
  std::vector<std::string> words;
  std::string lambdas;
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("--surface", o.surface, "built-in surface name or triangulation JSON file");
  app->add_option("--params", o.params, "parameter JSON file (repeatable)");
  app->add_option("--backend", o.backend, "rat | float | qt")->check(CLI::IsMember({"rat", "float", "qt"}));
  app->add_option("--precision", o.precision, "big-float precision in bits");
  app->add_option("--max-word-len", o.max_word_len, "all cyclic word classes up to this length");
  app->add_option("--out", o.out, "output directory");
  app->add_option("--config", o.config, "experiment config JSON");
  app->add_option("--word", o.words, "explicit word such as \"a B\" or \"g1 g2^-1\" (repeatable)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& dir, const std::string& name, const std::string& text) {
  fs::create_directories(dir);
  const fs::path p = fs::path(dir) / name;
  std::ofstream out(p);
  if (!out) throw InvalidInput("cannot write " + p.string());
  out << text;
  std::cout << "wrote " << p.string() << '\n';
}

ExperimentConfig make_config(const Options& o, int default_len) {
  ExperimentConfig c;
  if (!o.config.empty()) c = ExperimentConfig::load(o.config);
  if (o.config.empty() || o.surface != "punctured_torus") c.surface = o.surface;
  if (!o.params.empty()) c.params = o.params;
  c.backend = o.backend;
  if (o.precision != kDefaultPrecisionBits || o.config.empty()) c.precision = o.precision;
  if (o.max_word_len > 0) c.max_word_len = o.max_word_len;
  else if (o.config.empty()) c.max_word_len = default_len;
  if (!o.words.empty()) c.words = o.words;
  if (!o.out.empty()) c.out_dir = o.out;
  if (!o.lambdas.empty()) {
    c.lambdas.clear();
    std::stringstream ss(o.lambdas);
    std::string tok;
    while (std::getline(ss, tok, ',')) c.lambdas.push_back(Rational::parse(tok));
  }
  c.validate();
  if (c.params.empty()) throw InvalidInput("no parameter file given (--params or config)");
  return c;
}

std::string vec_str(const QVec& v) { return "(" + v.a.str() + ", " + v.b.str() + ")"; }
std::string vec_str(const DVec& v) {
  std::ostringstream os;
  os << std::setprecision(12) << "(" << v.a << ", " << v.b << ")";
  return os.str();
}
std::string vec_str(const AVec<BigFloat>& v) {
  return "(" + v.a.str(20, std::ios_base::fmtflags{}) + ", " + v.b.str(20, std::ios_base::fmtflags{}) + ")";
}

template <class T>
void print_map(const ProjMap<T>& g) {
  for (const auto& row : g.m) {
    std::cout << "  [";
    for (int j = 0; j < 3; ++j) std::cout << (j ? ", " : "") << row[j];
    std::cout << "]\n";
  }
}

template <class T>
void rep_report(const IdealTriangulation& tri, const FGParam<T>& prm, const std::vector<GroupWord>& words,
                bool spectrum) {
  const Representation<T> rho(tri, prm);
  const HypothesisReport hyp = check_hypotheses(prm);
  std::cout << "surface " << tri.name() << ", rank " << rho.rank() << "\n";
  if (!hyp.all())
    for (const auto& f : hyp.failures(tri)) std::cout << "hypothesis fails: " << f << '\n';
  if (!spectrum) {
    for (int g = 1; g <= rho.rank(); ++g) {
      std::cout << "rho(g" << g << ") =\n";
      print_map(rho.generator(g));
    }
    return;
  }
  for (const auto& w : words) {
    const auto c = c_length(rho, w);
    std::cout << std::left << std::setw(18) << word_to_string(w) << " C-length " << vec_str(c.vec) << "  Hilbert "
              << hilbert_length(c) << "  Euclid " << euclid_length(c) << '\n';
  }
}

int cmd_rep(const Options& o, bool spectrum) {
  const IdealTriangulation tri = load_surface(o.surface);
  if (o.params.size() != 1) throw InvalidInput("give exactly one --params file");
  const std::string text = read_file(o.params[0]);
  const int len = o.max_word_len > 0 ? o.max_word_len : 3;
  const DualGraph graph(tri);
  ExperimentConfig c;
  c.words = o.words;
  const auto words = c.word_list(graph.rank(), len);
  const PrecisionScope ps(o.precision);
  if (o.backend == "qt") rep_report(tri, parse_fg_ratfunc(tri, text), words, spectrum);
  else if (o.backend == "rat") rep_report(tri, parse_fg_rational(tri, text), words, spectrum);
  else rep_report(tri, parse_fg_bigfloat(tri, text), words, spectrum);
  return 0;
}

std::string flags_of(const ClassifyReport& r) {
  std::string s;
  auto add = [&](bool b, const char* n) {
    if (b) s += std::string(s.empty() ? "" : ", ") + n;
  };
  add(r.leftshifting, "left-shifting");
  add(r.edgeseparating, "edge-separating");
  add(r.tree, "tree");
  add(r.tree_of_triangles, "tree of triangles");
  add(r.surface, "surface");
  return s.empty() ? "none" : s;
}

int cmd_complex(const Options& o) {
  const IdealTriangulation tri = load_surface(o.surface);
  if (o.params.size() != 1) throw InvalidInput("give exactly one --params file");
  const GeomFGParam g = GeomFGParam::load(tri, o.params[0]);
  const ClassifyReport r = classify(tri, g);
  nlohmann::ordered_json j;
  j["surface"] = tri.name();
  j["classification"] = {{"leftshifting", r.leftshifting},
                         {"edgeseparating", r.edgeseparating},
                         {"tree", r.tree},
                         {"tree_of_triangles", r.tree_of_triangles},
                         {"surface", r.surface},
                         {"edge_case", r.edge_case},
                         {"witnesses", r.leftshift_witnesses}};
  if (!r.leftshifting) {
    std::cout << j.dump(2) << '\n';
    std::cerr << "not left-shifting: " << r.leftshift_witnesses.front() << '\n';
    return 1;
  }
  const A2Complex cx(tri, g);
  auto& cells = j["cells"] = nlohmann::ordered_json::array();
  for (int id = 0; id < cx.num_cells(); ++id) {
    const CellTemplate& c = cx.cell(id);
    nlohmann::ordered_json cj;
    cj["label"] = cx.cell_label(id);
    cj["kind"] = to_string(c.kind);
    for (const auto& v : c.vertices) cj["vertices"].push_back({v.a.str(), v.b.str()});
    for (const auto& [name, seg] : c.loci)
      cj["loci"][name] = {{seg.p.a.str(), seg.p.b.str()}, {seg.q.a.str(), seg.q.b.str()}};
    if (id >= tri.num_triangles())
      if (auto cl = cx.segment_c_length(2 * (id - tri.num_triangles()))) cj["c_length"] = {cl->a.str(), cl->b.str()};
    cells.push_back(cj);
  }
  const CellStructure cs = cx.cell_structure();
  int interior = 0;
  double min_loop = std::numeric_limits<double>::infinity();
  for (const auto& l : cs.links)
    if (l.interior) ++interior, min_loop = std::min(min_loop, l.min_loop);
  j["cell_structure"] = {{"V", cs.vertices},
                         {"E", cs.edges},
                         {"F", cs.faces},
                         {"euler_characteristic", cs.euler_characteristic()},
                         {"surface_euler_characteristic", tri.euler_characteristic()},
                         {"interior_vertices", interior}};
  const std::string text = j.dump(2);
  if (o.out.empty()) std::cout << text << '\n';
  else write_file(o.out, "complex.json", text + "\n");
  return 0;
}

int cmd_axis(const Options& o) {
  const IdealTriangulation tri = load_surface(o.surface);
  if (o.params.size() != 1) throw InvalidInput("give exactly one --params file");
  const GeomFGParam g = GeomFGParam::load(tri, o.params[0]);
  const A2Complex cx(tri, g);
  const DualGraph graph(tri);
  ExperimentConfig c;
  c.words = o.words;
  for (const auto& t : axis_targets(cx, c.word_list(graph.rank(), o.max_word_len > 0 ? o.max_word_len : 3))) {
    std::cout << std::left << std::setw(18) << word_to_string(t.word) << " C-length "
              << (t.axis.exact ? vec_str(*t.axis.exact) : vec_str(t.axis.value))
              << (t.axis.certified() ? "  exact" : "  numeric") << "  |C| " << norm_euc(t.axis.value) << "  gates "
              << t.axis.gates << '\n';
  }
  return 0;
}

int cmd_verify(const Options& o) {
  const ExperimentConfig cfg = make_config(o, 5);
  bool all = true;
  for (const VerifyReport& r : verify_theorem(cfg)) {
    std::cout << r.label << ": " << flags_of(r.classification) << ", scale " << r.scale.str() << '\n';
    if (r.refused) {
      for (const auto& w : r.refusal) std::cout << "  refused: " << w << '\n';
      all = false;
      continue;
    }
    for (const auto& row : r.rows) {
      std::cout << "  " << std::left << std::setw(18) << word_to_string(row.word) << " newton " << std::setw(14)
                << vec_str(row.rep) << " axis " << std::setw(14)
                << (row.axis ? vec_str(*row.axis) : vec_str(row.axis_value))
                << (row.match ? (row.axis ? " exact" : " within tolerance") : " MISMATCH") << '\n';
    }
    std::cout << "  " << r.matches() << " matches, " << r.mismatches() << " mismatches\n";
    all = all && r.ok();
  }
  std::cout << (all ? "verify: all checks pass" : "verify: FAILED") << '\n';
  return all ? 0 : 1;
}

int cmd_degenerate(const Options& o) {
  ExperimentConfig cfg = make_config(o, 4);
  if (cfg.lambdas.empty()) cfg.lambdas = {1, 2, 4, 8, 16, 32, 64};
  const auto tables = run_degeneration(cfg);
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const std::string name = "degeneration_" + fs::path(cfg.params[i]).stem().string() + ".csv";
    if (o.out.empty() && cfg.out_dir == ".") std::cout << tables[i].to_csv();
    else write_file(cfg.out_dir, name, tables[i].to_csv());
    std::cout << cfg.params[i] << ": word, final error, non-increasing from lambda\n";
    for (const auto& s : tables[i].summary())
      std::cout << "  " << std::left << std::setw(10) << csv_word(s.word) << ' ' << std::setw(14) << s.final_error
                << ' ' << s.threshold.str() << '\n';
  }
  return 0;
}

int cmd_export_svg(const Options& o) {
  const IdealTriangulation tri = load_surface(o.surface);
  if (o.params.size() != 1) throw InvalidInput("give exactly one --params file");
  const GeomFGParam g = GeomFGParam::load(tri, o.params[0]);
  const A2Complex cx(tri, g);
  const std::string dir = o.out.empty() ? "." : o.out;
  write_file(dir, "complex.svg", export_svg(cx));
  for (const auto& w : o.words) {
    const GroupWord gw = parse_word(w);
    write_file(dir, "corridor_" + csv_word(gw) + ".svg", export_svg(develop_corridor(cx, gw, 2)));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FG representations, A2-complexes and their C-length spectra"};
  app.require_subcommand(1);
  Options o;
  auto* rep = app.add_subcommand("rep", "generator matrices of an FG representation");
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalue C-lengths of rho(w)");
  auto* complex = app.add_subcommand("complex", "build and classify the A2-complex");
  auto* axis = app.add_subcommand("axis", "axis C-lengths in the complex");
  auto* verify = app.add_subcommand("verify", "exact comparison of both spectra over Q(t)");
  auto* degenerate = app.add_subcommand("degenerate", "rescaled spectra of exp(lambda (z, s)) as a CSV table");
  auto* svg = app.add_subcommand("export-svg", "SVG of the cells and of corridors of --word");
  for (auto* s : {rep, spectrum, complex, axis, verify, degenerate, svg}) add_common(s, o);
  degenerate->add_option("--lambdas", o.lambdas, "comma separated increasing schedule, default 1,2,4,...,64");
  CLI11_PARSE(app, argc, argv);

  try {
    if (rep->parsed()) return cmd_rep(o, false);
    if (spectrum->parsed()) return cmd_rep(o, true);
    if (complex->parsed()) return cmd_complex(o);
    if (axis->parsed()) return cmd_axis(o);
    if (verify->parsed()) return cmd_verify(o);
    if (degenerate->parsed()) return cmd_degenerate(o);
    if (svg->parsed()) return cmd_export_svg(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
