#include "a2fg/triangulation.hpp"

#include "a2fg/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

namespace a2fg {

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

IdealTriangulation::IdealTriangulation(std::string name, std::vector<std::array<int, 3>> triangles,
                                       std::vector<std::string> edge_names)
    : name_(std::move(name)), tri_(std::move(triangles)), edge_names_(std::move(edge_names)) {
  validate_and_index();
}

void IdealTriangulation::validate_and_index() {
  if (tri_.empty()) throw InvalidInput("triangulation has no triangles");
  const int n_oe = num_oriented_edges();
  where_.assign(n_oe, {-1, -1});
  for (int t = 0; t < num_triangles(); ++t) {
    for (int s = 0; s < 3; ++s) {
      const int oe = tri_[t][s];
      if (oe < 0 || oe >= n_oe) throw InvalidInput("oriented edge id out of range");
      if (where_[oe].first >= 0) throw InvalidInput("oriented edge " + edge_label(oe) + " occurs twice");
      where_[oe] = {t, s};
    }
  }
  for (int oe = 0; oe < n_oe; ++oe) {
    if (where_[oe].first < 0) throw InvalidInput("oriented edge " + edge_label(oe) + " occurs in no triangle");
  }
  if (3 * num_triangles() != n_oe) throw InvalidInput("triangle and edge counts inconsistent");

  // Connectivity of the dual graph.
  std::vector<bool> seen(num_triangles(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int t = stack.back();
    stack.pop_back();
    for (int s = 0; s < 3; ++s) {
      const int u = right(tri_[t][s]);
      if (!seen[u]) {
        seen[u] = true;
        ++count;
        stack.push_back(u);
      }
    }
  }
  if (count != num_triangles()) throw InvalidInput("dual graph is disconnected");
  if (euler_characteristic() >= 0) throw InvalidInput("surface must have negative Euler characteristic");

  // Punctures: corner (t, m) is glued to corner (t', m'+1) across slot m,
  // and (t, m+1) to (t', m').
  UnionFind uf(3 * num_triangles());
  for (int oe = 0; oe < n_oe; ++oe) {
    const auto [t, m] = where_[oe];
    const auto [u, mm] = where_[oe ^ 1];
    uf.unite(3 * t + m, 3 * u + (mm + 1) % 3);
    uf.unite(3 * t + (m + 1) % 3, 3 * u + mm);
  }
  std::vector<bool> done(3 * num_triangles(), false);
  punctures_.clear();
  for (int c = 0; c < 3 * num_triangles(); ++c) {
    if (done[c]) continue;
    // Walk counterclockwise around the vertex: leave the corner through the
    // edge entering it (slot m+2) into the neighbour.
    std::vector<std::pair<int, int>> cyc;
    int t = c / 3, m = c % 3;
    while (!done[3 * t + m]) {
      done[3 * t + m] = true;
      cyc.emplace_back(t, m);
      const int oe = tri_[t][(m + 2) % 3];
      const auto [u, mm] = where_[oe ^ 1];
      t = u;
      m = mm;
    }
    if (3 * t + m != c) throw InvalidInput("inconsistent ribbon structure");
    for (const auto& [a, b] : cyc) {
      if (uf.find(3 * a + b) != uf.find(c)) throw InvalidInput("inconsistent ribbon structure");
    }
    punctures_.push_back(std::move(cyc));
  }
}

int IdealTriangulation::triangle_index(const std::string& label) const {
  for (int t = 0; t < num_triangles(); ++t) {
    if (triangle_label(t) == label) return t;
  }
  throw InvalidInput("unknown triangle label " + label);
}

int IdealTriangulation::oriented_edge_index(const std::string& label) const {
  for (int oe = 0; oe < num_oriented_edges(); ++oe) {
    if (edge_label(oe) == label) return oe;
  }
  throw InvalidInput("unknown oriented edge label " + label);
}

bool IdealTriangulation::two_colourable() const {
  std::vector<int> colour(num_triangles(), -1);
  colour[0] = 0;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int t = stack.back();
    stack.pop_back();
    for (int s = 0; s < 3; ++s) {
      const int u = right(tri_[t][s]);
      if (colour[u] < 0) {
        colour[u] = 1 - colour[t];
        stack.push_back(u);
      } else if (colour[u] == colour[t]) {
        return false;
      }
    }
  }
  return true;
}

IdealTriangulation IdealTriangulation::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("triangulation JSON: ") + e.what());
  }
  if (!j.contains("triangles") || !j["triangles"].is_array()) throw InvalidInput("triangulation JSON: no triangles");
  std::vector<std::string> names;
  std::map<std::string, int> index;
  std::vector<std::array<int, 3>> tris;
  for (const auto& t : j["triangles"]) {
    if (!t.is_array() || t.size() != 3) throw InvalidInput("triangulation JSON: triangle must list 3 edges");
    std::array<int, 3> ids{};
    for (int s = 0; s < 3; ++s) {
      const std::string lab = t[s].get<std::string>();
      if (lab.size() < 2 || (lab.back() != '+' && lab.back() != '-')) {
        throw InvalidInput("oriented edge label must end in + or -: " + lab);
      }
      const std::string base = lab.substr(0, lab.size() - 1);
      auto it = index.find(base);
      if (it == index.end()) {
        it = index.emplace(base, static_cast<int>(names.size())).first;
        names.push_back(base);
      }
      ids[s] = 2 * it->second + (lab.back() == '-' ? 1 : 0);
    }
    tris.push_back(ids);
  }
  return IdealTriangulation(j.value("name", std::string("surface")), std::move(tris), std::move(names));
}

IdealTriangulation IdealTriangulation::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string IdealTriangulation::to_json() const {
  nlohmann::json j;
  j["name"] = name_;
  j["triangles"] = nlohmann::json::array();
  for (const auto& t : tri_) {
    j["triangles"].push_back({edge_label(t[0]), edge_label(t[1]), edge_label(t[2])});
  }
  return j.dump();
}

IdealTriangulation IdealTriangulation::punctured_torus() {
  return IdealTriangulation("punctured_torus", {{0, 2, 4}, {1, 3, 5}}, {"e0", "e1", "e2"});
}

IdealTriangulation IdealTriangulation::pair_of_pants() {
  return IdealTriangulation("pair_of_pants", {{0, 2, 4}, {1, 5, 3}}, {"e0", "e1", "e2"});
}

IdealTriangulation IdealTriangulation::punctured_sphere(int n) {
  if (n < 3) throw InvalidInput("punctured sphere needs at least 3 punctures");
  std::map<std::array<int, 3>, int> key_to_edge;
  std::vector<std::string> names;
  auto oriented = [&](int copy, int u, int v) {
    const bool side = std::abs(u - v) == 1 || (std::min(u, v) == 0 && std::max(u, v) == n - 1);
    const std::array<int, 3> key{side ? 0 : copy + 1, std::min(u, v), std::max(u, v)};
    auto it = key_to_edge.find(key);
    if (it == key_to_edge.end()) {
      it = key_to_edge.emplace(key, static_cast<int>(names.size())).first;
      names.push_back("e" + std::to_string(names.size()));
    }
    return 2 * it->second + (u < v ? 0 : 1);
  };
  std::vector<std::array<int, 3>> tris;
  for (int i = 1; i + 1 < n; ++i) tris.push_back({oriented(0, 0, i), oriented(0, i, i + 1), oriented(0, i + 1, 0)});
  for (int i = 1; i + 1 < n; ++i) tris.push_back({oriented(1, 0, i + 1), oriented(1, i + 1, i), oriented(1, i, 0)});
  return IdealTriangulation("sphere_" + std::to_string(n), std::move(tris), std::move(names));
}

IdealTriangulation IdealTriangulation::builtin(const std::string& name) {
  if (name == "punctured_torus") return punctured_torus();
  if (name == "pair_of_pants") return pair_of_pants();
  if (name.rfind("sphere_", 0) == 0) return punctured_sphere(std::stoi(name.substr(7)));
  throw InvalidInput("unknown built-in surface " + name);
}

DualPath DualPath::inverse(const IdealTriangulation& tri) const {
  DualPath r;
  r.base = end(tri);
  for (auto it = moves.rbegin(); it != moves.rend(); ++it) r.moves.push_back(reverse_edge(*it));
  return r;
}

MarkingTransport MarkingTransport::across(const IdealTriangulation& tri, int oe) {
  const int m = tri.slot(oe);
  const int mm = tri.slot(reverse_edge(oe));
  MarkingTransport r{};
  r.to_next[m] = (mm + 1) % 3;
  r.to_next[(m + 1) % 3] = mm;
  r.to_next[(m + 2) % 3] = (mm + 2) % 3;
  return r;
}

DualGraph::DualGraph(const IdealTriangulation& tri) : tri_(&tri) {
  const int nt = tri.num_triangles();
  tree_edge_.assign(tri.num_edges(), false);
  parent_move_.assign(nt, -1);
  std::vector<bool> seen(nt, false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  while (!q.empty()) {
    const int t = q.front();
    q.pop();
    for (int s = 0; s < 3; ++s) {
      const int oe = tri.triangle(t)[s];
      const int u = tri.right(oe);
      if (seen[u]) continue;
      seen[u] = true;
      tree_edge_[edge_of(oe)] = true;
      parent_move_[u] = oe;
      q.push(u);
    }
  }
  for (int k = 0; k < tri.num_edges(); ++k) {
    if (!tree_edge_[k]) generators_.push_back(k);
  }
  if (rank() != 1 - tri.euler_characteristic()) throw ConsistencyError("free rank does not match 1 - chi");
}

std::array<int, 3> DualGraph::neighbours(int t) const {
  const auto& e = tri_->triangle(t);
  return {tri_->right(e[0]), tri_->right(e[1]), tri_->right(e[2])};
}

DualPath DualGraph::tree_path(int t) const {
  DualPath p;
  p.base = 0;
  while (parent_move_[t] >= 0) {
    p.moves.push_back(parent_move_[t]);
    t = tri_->left(parent_move_[t]);
  }
  std::reverse(p.moves.begin(), p.moves.end());
  return p;
}

namespace {

DualPath concat(const DualPath& a, const DualPath& b) {
  DualPath r = a;
  r.moves.insert(r.moves.end(), b.moves.begin(), b.moves.end());
  return r;
}

}  // namespace

DualPath DualGraph::generator_path(int g) const {
  if (g < 1 || g > rank()) throw InvalidInput("generator index out of range");
  const int oe = 2 * generators_[g - 1];
  DualPath p = tree_path(tri_->left(oe));
  p.moves.push_back(oe);
  p = concat(p, tree_path(tri_->right(oe)).inverse(*tri_));
  return reduce(p);
}

DualPath DualGraph::word_to_dual_path(const GroupWord& w) const {
  DualPath p;
  p.base = 0;
  for (int letter : w) {
    if (letter == 0 || std::abs(letter) > rank()) throw InvalidInput("word letter out of range");
    const DualPath g = generator_path(std::abs(letter));
    p = concat(p, letter > 0 ? g : g.inverse(*tri_));
  }
  return reduce(p);
}

GroupWord DualGraph::dual_path_to_word(const DualPath& p) const {
  if (p.base != 0 || !p.is_closed(*tri_)) throw InvalidInput("path must be closed at the base triangle");
  GroupWord w;
  for (int oe : p.moves) {
    const int k = edge_of(oe);
    if (tree_edge_[k]) continue;
    const int g = static_cast<int>(std::find(generators_.begin(), generators_.end(), k) - generators_.begin()) + 1;
    w.push_back((oe & 1) ? -g : g);
  }
  return reduce_word(w);
}

DualPath DualGraph::puncture_path(int i) const {
  const auto& cyc = tri_->punctures().at(i);
  DualPath loop;
  loop.base = cyc.front().first;
  for (const auto& [t, m] : cyc) loop.moves.push_back(tri_->triangle(t)[(m + 2) % 3]);
  const DualPath in = tree_path(loop.base);
  return reduce(concat(concat(in, loop), in.inverse(*tri_)));
}

DualPath reduce(const DualPath& p) {
  DualPath r;
  r.base = p.base;
  for (int oe : p.moves) {
    if (!r.moves.empty() && r.moves.back() == reverse_edge(oe)) {
      r.moves.pop_back();
    } else {
      r.moves.push_back(oe);
    }
  }
  return r;
}

CyclicSplit cyclic_reduce(const IdealTriangulation& tri, const DualPath& p) {
  const DualPath r = reduce(p);
  if (!r.is_closed(tri)) throw InvalidInput("cyclic_reduce needs a closed path");
  std::size_t lo = 0, hi = r.moves.size();
  while (hi - lo >= 2 && r.moves[hi - 1] == reverse_edge(r.moves[lo])) {
    ++lo;
    --hi;
  }
  CyclicSplit s;
  s.conjugator.base = r.base;
  s.conjugator.moves.assign(r.moves.begin(), r.moves.begin() + static_cast<long>(lo));
  s.core.base = s.conjugator.end(tri);
  s.core.moves.assign(r.moves.begin() + static_cast<long>(lo), r.moves.begin() + static_cast<long>(hi));
  return s;
}

GroupWord reduce_word(const GroupWord& w) {
  GroupWord r;
  for (int x : w) {
    if (!r.empty() && r.back() == -x) r.pop_back();
    else r.push_back(x);
  }
  return r;
}

GroupWord invert_word(const GroupWord& w) {
  GroupWord r(w.rbegin(), w.rend());
  for (int& x : r) x = -x;
  return r;
}

GroupWord cyclic_reduce_word(const GroupWord& w) {
  GroupWord r = reduce_word(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[hi - 1] == -r[lo]) {
    ++lo;
    --hi;
  }
  return GroupWord(r.begin() + static_cast<long>(lo), r.begin() + static_cast<long>(hi));
}

std::string word_to_string(const GroupWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (int x : w) {
    if (!s.empty()) s += ' ';
    s += "g" + std::to_string(std::abs(x));
    if (x < 0) s += "^-1";
  }
  return s;
}

GroupWord parse_word(std::string_view s) {
  GroupWord w;
  std::size_t i = 0;
  auto fail = [&]() { throw InvalidInput("cannot parse word: " + std::string(s)); };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') {
      ++i;
      continue;
    }
    if (c == '1' && w.empty() && s.find_first_not_of(" 1") == std::string_view::npos) return {};
    int g = 0;
    if (c == 'g' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
      ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) g = 10 * g + (s[i++] - '0');
    } else if (std::islower(static_cast<unsigned char>(c))) {
      g = c - 'a' + 1;
      ++i;
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      g = -(c - 'A' + 1);
      ++i;
    } else {
      fail();
    }
    if (g == 0) fail();
    long power = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      std::size_t j = i;
      if (j < s.size() && s[j] == '-') ++j;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i || (j == i + 1 && s[i] == '-')) fail();
      power = std::stol(std::string(s.substr(i, j - i)));
      i = j;
    }
    const int letter = power < 0 ? -g : g;
    for (long k = 0; k < std::abs(power); ++k) w.push_back(letter);
  }
  return reduce_word(w);
}

namespace {

int letter_key(int x) { return 2 * (std::abs(x) - 1) + (x < 0 ? 1 : 0); }

bool word_less(const GroupWord& a, const GroupWord& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](int x, int y) { return letter_key(x) < letter_key(y); });
}

GroupWord canonical_rotation(const GroupWord& w) {
  GroupWord best = w;
  for (const GroupWord& v : {w, invert_word(w)}) {
    GroupWord r = v;
    for (std::size_t k = 0; k < v.size(); ++k) {
      std::rotate(r.begin(), r.begin() + 1, r.end());
      if (word_less(r, best)) best = r;
    }
  }
  return best;
}

}  // namespace

std::vector<GroupWord> cyclic_word_classes(int rank, int max_len) {
  std::vector<GroupWord> out;
  std::vector<int> letters;
  for (int g = 1; g <= rank; ++g) {
    letters.push_back(g);
    letters.push_back(-g);
  }
  GroupWord cur;
  auto rec = [&](auto&& self, int len) -> void {
    if (static_cast<int>(cur.size()) == len) {
      if (cur.front() == -cur.back() && len > 1) return;
      if (canonical_rotation(cur) == cur) out.push_back(cur);
      return;
    }
    for (int x : letters) {
      if (!cur.empty() && cur.back() == -x) continue;
      cur.push_back(x);
      self(self, len);
      cur.pop_back();
    }
  };
  for (int len = 1; len <= max_len; ++len) rec(rec, len);
  return out;
}

}  // namespace a2fg
