#include "a2fg/model_flat.hpp"

#include "a2fg/errors.hpp"

#include <ostream>

namespace a2fg {

namespace {

// 3 * triple coordinates of a root-coordinate basis vector.
std::array<int, 3> scaled_triple(int a, int b) { return {2 * a + b, b - a, -a - 2 * b}; }

}  // namespace

WeylElem::WeylElem(std::array<int, 3> p) : p_(p) {
  std::array<bool, 3> seen{};
  for (int x : p_) {
    if (x < 0 || x > 2 || seen[x]) throw InvalidInput("WeylElem: not a permutation");
    seen[x] = true;
  }
  for (int col = 0; col < 2; ++col) {
    const std::array<int, 3> v = scaled_triple(col == 0 ? 1 : 0, col == 0 ? 0 : 1);
    std::array<int, 3> w{};
    for (int i = 0; i < 3; ++i) w[p_[i]] = v[i];
    m_[col] = (w[0] - w[1]) / 3;
    m_[2 + col] = (w[1] - w[2]) / 3;
  }
}

const std::array<WeylElem, 6>& WeylElem::all() {
  static const std::array<WeylElem, 6> els{
      WeylElem({0, 1, 2}), WeylElem({1, 0, 2}), WeylElem({0, 2, 1}),
      WeylElem({1, 2, 0}), WeylElem({2, 0, 1}), WeylElem({2, 1, 0})};
  return els;
}

WeylElem WeylElem::operator*(const WeylElem& o) const {
  std::array<int, 3> r{};
  for (int i = 0; i < 3; ++i) r[i] = p_[o.p_[i]];
  return WeylElem(r);
}

WeylElem WeylElem::inverse() const {
  std::array<int, 3> r{};
  for (int i = 0; i < 3; ++i) r[p_[i]] = i;
  return WeylElem(r);
}

std::ostream& operator<<(std::ostream& os, const WeylElem& w) {
  const auto& p = w.perm();
  return os << '[' << p[0] << p[1] << p[2] << ']';
}

const char* to_string(DirectionType t) {
  switch (t) {
    case DirectionType::zero: return "zero";
    case DirectionType::regular: return "regular";
    case DirectionType::singular_p: return "singular_p";
    case DirectionType::singular_d: return "singular_d";
  }
  return "?";
}

}  // namespace a2fg
