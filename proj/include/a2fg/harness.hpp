#pragma once

#include "a2fg/a2_complex.hpp"
#include "a2fg/bigfloat.hpp"
#include "a2fg/fg_rep.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace a2fg {

/// Built-in surface name (punctured_torus, pair_of_pants, sphere_<n>) or a
/// triangulation JSON file.
IdealTriangulation load_surface(const std::string& spec);

struct ExperimentConfig {
  std::string surface = "punctured_torus";
  std::vector<std::string> params;  // geometric parameter files
  std::string backend = "qt";       // rat | float | qt
  std::vector<std::string> words;   // explicit words; empty means all classes
  int max_word_len = 5;
  std::vector<Rational> lambdas;
  std::string out_dir = ".";
  unsigned precision = kDefaultPrecisionBits;

  /// Relative file names are resolved against base_dir.
  static ExperimentConfig from_json(std::string_view text, const std::string& base_dir = "");
  static ExperimentConfig load(const std::string& path);
  void validate() const;

  IdealTriangulation triangulation() const;
  std::vector<GeomFGParam> geometric_params(const IdealTriangulation& tri) const;
  /// Explicit words, or one representative per cyclic class up to max_len.
  std::vector<GroupWord> word_list(int rank, int max_len) const;
};

/// Complex-side C-lengths shared by the exact and the numeric checks.
struct AxisTarget {
  GroupWord word;
  AxisCLength axis;
};
std::vector<AxisTarget> axis_targets(const A2Complex& cx, const std::vector<GroupWord>& words);

/// Q(t) parameter Z = c t^{-scale z}, E = d t^{-scale s} with units the
/// primes 2, 3, 5, ... (triangles first); scale clears denominators.
FGParam<RatFunc> monomial_realization(const GeomFGParam& g, Rational* scale);

struct VerifyRow {
  GroupWord word;
  QVec rep;                   // Newton polygon side
  std::optional<QVec> axis;   // scale * exact axis C-length
  DVec axis_value;            // scale * axis C-length
  bool match = false;
  double error = 0;
};

struct VerifyReport {
  std::string label;
  bool refused = false;
  std::vector<std::string> refusal;
  ClassifyReport classification;
  Rational scale{1};
  std::vector<VerifyRow> rows;

  int matches() const;
  int mismatches() const;
  bool ok() const { return !refused && mismatches() == 0; }
};

/// Compares c_length(rho(w)) with scale * axis C-length for every target.
/// Certified axes must match exactly, the others within tol.
VerifyReport verify_theorem(const IdealTriangulation& tri, const GeomFGParam& g, const std::vector<AxisTarget>& targets,
                            double tol = 1e-8);
/// Complex built from g; refuses when g is not left-shifting and
/// edge-separating.
VerifyReport verify_theorem(const IdealTriangulation& tri, const GeomFGParam& g, const std::vector<GroupWord>& words,
                            double tol = 1e-8);
std::vector<VerifyReport> verify_theorem(const ExperimentConfig& cfg);

struct DegenerationRow {
  GroupWord word;
  Rational lambda;
  unsigned bits = 0;
  BigFloat a, b;  // (1/lambda) l_C(rho_lambda(w))
  BigFloat hilbert, euclid;
  double target_a = 0, target_b = 0;
  double target_hilbert = 0, target_euclid = 0;
  double error = 0;  // sup norm
};

struct DegenerationSummary {
  GroupWord word;
  double final_error = 0;
  /// Smallest lambda from which the error is non-increasing.
  Rational threshold;
};

struct DegenerationTable {
  std::vector<DegenerationRow> rows;

  std::string to_csv() const;
  static DegenerationTable from_csv(std::string_view text);
  std::vector<DegenerationSummary> summary() const;
  double max_final_error() const;
};

/// Working precision for Z = exp(lambda z), E = exp(lambda s): at least
/// `requested`, growing linearly with lambda max|z, s|.
unsigned degeneration_bits(const GeomFGParam& g, const Rational& lambda, unsigned requested);

/// Sweep over lambda. Each lambda is evaluated at two precisions and the
/// precision is doubled until the two agree.
DegenerationTable run_degeneration(const IdealTriangulation& tri, const GeomFGParam& g,
                                   const std::vector<AxisTarget>& targets, const std::vector<Rational>& lambdas,
                                   unsigned precision);
std::vector<DegenerationTable> run_degeneration(const ExperimentConfig& cfg);

std::string csv_word(const GroupWord& w);

}  // namespace a2fg
