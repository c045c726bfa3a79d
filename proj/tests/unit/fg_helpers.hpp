#pragma once

#include "gen.hpp"

#include "a2fg/fg_rep.hpp"

namespace gen {

/// Random rational FG-parameter avoiding 0 and -1.
inline a2fg::FGParam<a2fg::Rational> random_fg(Rng& rng, const a2fg::IdealTriangulation& tri, bool positive = false) {
  auto pick = [&]() {
    for (;;) {
      a2fg::Rational r = positive ? a2fg::Rational(rng.integer(1, 9), rng.integer(1, 5)) : rng.nonzero_rational(6, 4);
      if (r != a2fg::Rational(-1)) return r;
    }
  };
  a2fg::FGParam<a2fg::Rational> p;
  for (int t = 0; t < tri.num_triangles(); ++t) p.Z.push_back(pick());
  for (int e = 0; e < tri.num_oriented_edges(); ++e) p.E.push_back(pick());
  return p;
}

/// Monomial Q(t) parameter Z = c t^{-z}, E = d t^{-s} with prime units.
inline a2fg::FGParam<a2fg::RatFunc> monomial_fg(const std::vector<long>& z, const std::vector<long>& s) {
  static const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  a2fg::FGParam<a2fg::RatFunc> p;
  std::size_t k = 0;
  for (long x : z) p.Z.push_back(a2fg::RatFunc::monomial(x, a2fg::Rational(primes[k++ % 20])));
  for (long x : s) p.E.push_back(a2fg::RatFunc::monomial(x, a2fg::Rational(primes[k++ % 20])));
  return p;
}

/// Edge invariants recomputed from developed flags. `a` are the slot flags
/// of tau = left(oe), `b` those of tau' = right(oe).
template <class T>
struct Recomputed {
  T e, ebar, z_tau, z_tau2;
};

template <class T>
Recomputed<T> recompute(const a2fg::IdealTriangulation& tri, int oe, const a2fg::FlagTriple<T>& a,
                        const a2fg::FlagTriple<T>& b) {
  using namespace a2fg;
  const int m = tri.slot(oe), mm = tri.slot(reverse_edge(oe));
  // tau = (i, j, k) with e = (k, i); tau' = (k, l, i).
  const Flag<T>& fk = a[m];
  const Flag<T>& fi = a[(m + 1) % 3];
  const Flag<T>& fj = a[(m + 2) % 3];
  const Flag<T>& fl = b[(mm + 2) % 3];
  const PPoint<T> pkl = meet(fk.D, fl.D);
  const PPoint<T> pij = meet(fi.D, fj.D);
  Recomputed<T> r;
  r.e = *cross_ratio_lines(fi.D, join(fi.p, fj.p), join(fi.p, fk.p), join(fi.p, pkl));
  r.ebar = *cross_ratio_lines(fk.D, join(fk.p, fl.p), join(fk.p, fi.p), join(fk.p, pij));
  r.z_tau = *triple_ratio(a[0], a[1], a[2]);
  r.z_tau2 = *triple_ratio(b[0], b[1], b[2]);
  return r;
}

}  // namespace gen
