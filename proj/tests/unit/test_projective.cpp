#include "doctest.h"
#include "gen.hpp"

#include "a2fg/projective.hpp"

using namespace a2fg;
using Q = Rational;
using P = PPoint<Q>;
using L = PLine<Q>;
using F = Flag<Q>;

namespace {

Vec3<Q> rvec(gen::Rng& rng) {
  for (;;) {
    Vec3<Q> v{rng.rational(), rng.rational(), rng.rational()};
    if (!is_null(v)) return v;
  }
}

F random_flag(gen::Rng& rng) {
  for (;;) {
    const Vec3<Q> p = rvec(rng);
    const Vec3<Q> d = cross(p, rvec(rng));
    if (!is_null(d)) return F(P(p), L(d));
  }
}

std::array<F, 3> random_generic_triple(gen::Rng& rng) {
  for (;;) {
    std::array<F, 3> f{random_flag(rng), random_flag(rng), random_flag(rng)};
    if (is_generic_triple(f[0], f[1], f[2])) return f;
  }
}

// n distinct points on a random line.
std::vector<P> collinear_points(gen::Rng& rng, int n) {
  for (;;) {
    const Vec3<Q> u = rvec(rng), v = rvec(rng);
    if (is_null(cross(u, v))) continue;
    std::vector<P> pts;
    while (static_cast<int>(pts.size()) < n) {
      const Vec3<Q> w = add(scale(rng.rational(), u), scale(rng.rational(), v));
      if (is_null(w)) continue;
      const P p(w);
      bool fresh = true;
      for (const P& q : pts) fresh = fresh && !(q == p);
      if (fresh) pts.push_back(p);
    }
    return pts;
  }
}

ProjMap<Q> random_map(gen::Rng& rng) {
  for (;;) {
    ProjMap<Q> g;
    for (auto& row : g.m)
      for (auto& x : row) x = rng.rational();
    if (!g.det().is_zero()) return g;
  }
}

P chart(const Q& x) { return P(x, Q(1), Q(0)); }
const P kInf(Q(1), Q(0), Q(0));

std::array<F, 3> canonical_triple(const Q& z) {
  const F f1(P(1, 0, 0), L(0, 1, 0));
  const F f2(P(0, 1, 0), L(1, 0, 0));
  return {f1, f2, flag_from_triple_ratio(f1, f2, P(1, 1, 1), z)};
}

}  // namespace

TEST_CASE("join and meet") {
  CHECK(join(P(1, 0, 0), P(0, 1, 0)) == L(0, 0, 1));
  CHECK_THROWS_AS(join(P(1, 2, 3), P(2, 4, 6)), InvalidInput);
  gen::Rng rng(21);
  for (int it = 0; it < 50; ++it) {
    const P p(rvec(rng)), q(rvec(rng)), r(rvec(rng));
    if (is_zero(dot(p.c, cross(q.c, r.c)))) continue;
    CHECK(meet(join(p, q), join(p, r)) == p);
    CHECK(on(p, join(p, q)));
    CHECK(on(q, join(p, q)));
  }
  using PT = PPoint<RatFunc>;
  const PLine<RatFunc> l = join(PT(1, 0, 0), PT(RatFunc::t(), 1, 0));
  CHECK(l == PLine<RatFunc>(0, 0, 1));
}

TEST_CASE("cross ratio anchors") {
  CHECK(*cross_ratio(kInf, chart(-1), chart(0), chart(5)) == Q(5));
  CHECK(*cross_ratio(chart(1), chart(2), chart(3), chart(4)) == Q(1, 3));
  CHECK(*cross_ratio(chart(1), chart(1), chart(3), chart(4)) == Q(0));
  CHECK(*cross_ratio(chart(1), chart(2), chart(3), chart(3)) == Q(0));
  CHECK(*cross_ratio(chart(1), chart(2), chart(1), chart(4)) == Q(-1));
  CHECK_FALSE(cross_ratio(chart(1), chart(2), chart(3), chart(1)).has_value());
  CHECK_THROWS_AS(cross_ratio(chart(1), chart(1), chart(1), chart(4)), InvalidInput);
  // Pencil through [0:0:1] with chart values (inf,-1,0,x).
  auto pl = [](const Q& x) { return L(Q(1), -x, Q(0)); };
  const L inf_line(0, 1, 0);
  CHECK(*cross_ratio_lines(inf_line, pl(-1), pl(0), pl(Q(7, 2))) == Q(7, 2));
  CHECK(*cross_ratio_lines(L(1, 0, 0), L(0, 1, 0), L(1, 1, 0), L(1, 2, 0)) ==
        *cross_ratio(P(1, 0, 0), P(0, 1, 0), P(1, 1, 0), P(1, 2, 0)));
}

TEST_CASE("cross ratio symmetries and cocycle") {
  gen::Rng rng(22);
  for (int it = 0; it < 100; ++it) {
    const auto x = collinear_points(rng, 5);
    auto B = [&](int a, int b, int c, int d) { return *cross_ratio(x[a], x[b], x[c], x[d]); };
    const Q b = B(0, 1, 2, 3);
    CHECK(B(1, 0, 3, 2) == b);
    CHECK(B(2, 3, 0, 1) == b);
    CHECK(B(3, 2, 1, 0) == b);
    const Q inv = Q(1) / b;
    CHECK(B(2, 1, 0, 3) == inv);  // (13)
    CHECK(B(0, 3, 2, 1) == inv);  // (24)
    CHECK(B(3, 0, 1, 2) == inv);  // (1234)
    CHECK(B(1, 2, 3, 0) == inv);  // (1432)
    CHECK(B(0, 2, 3, 1) == -(Q(1) + inv));  // (234)
    CHECK(B(0, 3, 1, 2) == -(Q(1) / (Q(1) + b)));  // (243)
    CHECK(-B(0, 1, 2, 3) * B(0, 3, 2, 4) == B(0, 1, 2, 4));
  }
}

TEST_CASE("perspectivity invariance") {
  gen::Rng rng(23);
  for (int it = 0; it < 50; ++it) {
    const P c(rvec(rng));
    std::vector<L> lines;
    while (lines.size() < 4) {
      const Vec3<Q> d = cross(c.c, rvec(rng));
      if (is_null(d)) continue;
      const L l(d);
      bool fresh = true;
      for (const L& m : lines) fresh = fresh && !(m == l);
      if (fresh) lines.push_back(l);
    }
    const L cut(rvec(rng));
    if (on(c, cut)) continue;
    const auto lv = cross_ratio_lines(lines[0], lines[1], lines[2], lines[3]);
    const auto pv = cross_ratio(meet(lines[0], cut), meet(lines[1], cut), meet(lines[2], cut), meet(lines[3], cut));
    CHECK(lv == pv);
  }
}

TEST_CASE("triple ratio") {
  const F f1(P(1, 0, 0), L(0, 1, -2)), f2(P(0, 1, 0), L(1, 0, -2)), f3(P(1, 1, 1), L(2, -1, -1));
  CHECK(*triple_ratio(f1, f2, f3) == Q(-2));
  gen::Rng rng(24);
  for (int it = 0; it < 100; ++it) {
    const auto f = random_generic_triple(rng);
    const Q z = *triple_ratio(f[0], f[1], f[2]);
    CHECK(*triple_ratio(f[1], f[2], f[0]) == z);
    CHECK(*triple_ratio(f[2], f[1], f[0]) == Q(1) / z);
    // Cross-ratio expression on the pencil at p1.
    const P p23 = meet(f[1].D, f[2].D);
    CHECK(*cross_ratio_lines(f[0].D, join(f[0].p, f[1].p), join(f[0].p, p23), join(f[0].p, f[2].p)) == z);
    CHECK(!z.is_zero());
    CHECK(z != Q(-1));
  }
  // p1 on D3 gives 0.
  for (int it = 0; it < 20; ++it) {
    auto f = random_generic_triple(rng);
    const Vec3<Q> d3 = cross(f[2].p.c, f[0].p.c);
    f[2] = F(f[2].p, L(d3));
    if (on(f[1].p, f[2].D) || on(f[2].p, f[1].D)) continue;
    CHECK(*triple_ratio(f[0], f[1], f[2]) == Q(0));
    CHECK_FALSE(is_generic_triple(f[0], f[1], f[2]));
  }
  // Collinear points or concurrent lines give -1; generic iff value avoids {inf, 0, -1}.
  for (int it = 0; it < 30; ++it) {
    const auto pts = collinear_points(rng, 3);
    std::array<F, 3> f;
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
      const Vec3<Q> d = cross(pts[i].c, rvec(rng));
      if (is_null(d)) ok = false;
      else f[i] = F(pts[i], L(d));
    }
    if (!ok) continue;
    bool opposite = true;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) opposite = opposite && (i == j || !on(f[i].p, f[j].D));
    if (!opposite) continue;
    CHECK(*triple_ratio(f[0], f[1], f[2]) == Q(-1));
    CHECK_FALSE(is_generic_triple(f[0], f[1], f[2]));
  }
}

TEST_CASE("flag from triple ratio") {
  const auto c = canonical_triple(Q(1));
  CHECK(*triple_ratio(c[0], c[1], c[2]) == Q(1));
  CHECK(c[2].p == P(1, 1, 1));
  const auto c2 = canonical_triple(Q(3));
  CHECK_FALSE(c2[2].D == c[2].D);
  CHECK_THROWS_AS(canonical_triple(Q(-1)), InvalidInput);
  CHECK_THROWS_AS(canonical_triple(Q(0)), InvalidInput);

  using PT = PPoint<RatFunc>;
  using LT = PLine<RatFunc>;
  const Flag<RatFunc> g1(PT(1, 0, 0), LT(0, 1, 0)), g2(PT(0, 1, 0), LT(1, 0, 0));
  const RatFunc z = RatFunc::monomial(1, 1);
  const Flag<RatFunc> g3 = flag_from_triple_ratio(g1, g2, PT(1, 1, 1), z);
  CHECK(*triple_ratio(g1, g2, g3) == z);

  gen::Rng rng(25);
  for (int it = 0; it < 50; ++it) {
    const auto f = random_generic_triple(rng);
    Q z3 = rng.nonzero_rational();
    if (z3 == Q(-1)) z3 = Q(2);
    const F out = flag_from_triple_ratio(f[0], f[1], f[2].p, z3);
    CHECK(*triple_ratio(f[0], f[1], out) == z3);
    CHECK(is_generic_triple(f[0], f[1], out));
  }
}

TEST_CASE("next flag round trip") {
  {
    const auto c = canonical_triple(Q(1));
    const F f4 = next_flag(c[0], c[1], c[2], Q(1), Q(1), Q(1));
    CHECK(*triple_ratio(c[0], c[2], f4) == Q(1));
  }
  gen::Rng rng(26);
  for (int it = 0; it < 100; ++it) {
    const auto f = random_generic_triple(rng);
    const Q e = rng.nonzero_rational(), ep = rng.nonzero_rational();
    Q zp = rng.nonzero_rational();
    if (zp == Q(-1)) zp = Q(1, 2);
    const F f4 = next_flag(f[0], f[1], f[2], e, ep, zp);
    const P& p1 = f[0].p;
    const P& p3 = f[2].p;
    CHECK(*cross_ratio_lines(f[0].D, join(p1, f[1].p), join(p1, p3), join(p1, meet(f[2].D, f4.D))) == e);
    CHECK(*cross_ratio_lines(f[2].D, join(p3, f4.p), join(p3, p1), join(p3, meet(f[1].D, f[0].D))) == ep);
    CHECK(*triple_ratio(f[0], f[2], f4) == zp);
    CHECK(is_generic_triple(f[0], f[2], f4));
  }
  using T = RatFunc;
  const Flag<T> g1(PPoint<T>(1, 0, 0), PLine<T>(0, 1, 0)), g2(PPoint<T>(0, 1, 0), PLine<T>(1, 0, 0));
  const Flag<T> g3 = flag_from_triple_ratio(g1, g2, PPoint<T>(1, 1, 1), T::monomial(2, 3));
  for (int it = 0; it < 10; ++it) {
    const T e = T::monomial(rng.integer(-3, 3), Q(rng.integer(1, 5)));
    const T ep = T::monomial(rng.integer(-3, 3), Q(rng.integer(1, 5)));
    const T zp = T::monomial(rng.integer(-3, 3), Q(rng.integer(2, 5)));
    const Flag<T> g4 = next_flag(g1, g2, g3, e, ep, zp);
    CHECK(*triple_ratio(g1, g3, g4) == zp);
  }
}

TEST_CASE("projective maps from frames") {
  const Frame<Q> std_frame{P(1, 0, 0), P(0, 1, 0), P(0, 0, 1), P(1, 1, 1)};
  CHECK(projectively_equal(proj_map_from_frames(std_frame, std_frame), ProjMap<Q>::identity()));
  const Frame<Q> bad{P(1, 0, 0), P(0, 1, 0), P(1, 1, 0), P(1, 1, 1)};
  CHECK_THROWS_AS(proj_map_from_frames(bad, std_frame), InvalidInput);
  gen::Rng rng(27);
  for (int it = 0; it < 50; ++it) {
    const auto f = random_generic_triple(rng);
    const Frame<Q> a = frame_of(f[0], f[1], f[2]);
    const ProjMap<Q> g = random_map(rng), h = random_map(rng);
    const Frame<Q> b{g(a[0]), g(a[1]), g(a[2]), g(a[3])};
    const Frame<Q> c{h(b[0]), h(b[1]), h(b[2]), h(b[3])};
    CHECK(projectively_equal(proj_map_from_frames(a, b), g));
    CHECK(projectively_equal(proj_map_from_frames(b, c) * proj_map_from_frames(a, b), proj_map_from_frames(a, c)));
    CHECK(projectively_equal(g * g.inverse(), ProjMap<Q>::identity()));
  }
}

TEST_CASE("PGL equivariance of constructions") {
  gen::Rng rng(28);
  for (int it = 0; it < 50; ++it) {
    const auto f = random_generic_triple(rng);
    const ProjMap<Q> g = random_map(rng);
    const std::array<F, 3> gf{g(f[0]), g(f[1]), g(f[2])};
    for (const F& x : gf) CHECK(on(x.p, x.D));
    CHECK(*triple_ratio(gf[0], gf[1], gf[2]) == *triple_ratio(f[0], f[1], f[2]));
    const Q e = rng.nonzero_rational(), ep = rng.nonzero_rational();
    const Q zp = Q(rng.integer(1, 5), rng.integer(1, 3));
    const F f4 = next_flag(f[0], f[1], f[2], e, ep, zp);
    const F gf4 = next_flag(gf[0], gf[1], gf[2], e, ep, zp);
    CHECK(gf4.p == g(f4.p));
    CHECK(gf4.D == g(f4.D));
    const F f3 = flag_from_triple_ratio(f[0], f[1], f[2].p, zp);
    CHECK(flag_from_triple_ratio(gf[0], gf[1], gf[2].p, zp).D == g(f3.D));
  }
}

TEST_CASE("big float constructions verify to tolerance") {
  const PrecisionScope prec(256);
  using T = BigFloat;
  const Flag<T> g1(PPoint<T>(1, 0, 0), PLine<T>(0, 1, 0)), g2(PPoint<T>(0, 1, 0), PLine<T>(1, 0, 0));
  const T z = exp(T(40));
  const Flag<T> g3 = flag_from_triple_ratio(g1, g2, PPoint<T>(1, 1, 1), z);
  const Flag<T> g4 = next_flag(g1, g2, g3, exp(T(-30)), exp(T(25)), exp(T(-50)));
  CHECK(Field<T>::close(*triple_ratio(g1, g3, g4), exp(T(-50)), 1e-40));
}
