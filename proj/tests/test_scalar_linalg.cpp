#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pcone/linalg.hpp"

#include <random>

using namespace pcone;

namespace {

Rat rnd_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 12);
  return Rat(num(rng)) / Rat(den(rng));
}

VecR rnd_vec(std::mt19937_64& rng, int n) {
  VecR v(n);
  for (int i = 0; i < n; ++i) v[i] = rnd_rat(rng);
  return v;
}

// Independent determinant oracle: cofactor expansion along the first row.
Rat det_oracle(const MatR& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) return m(0, 0);
  Rat acc = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    MatR minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index cc = 0;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    const Rat term = m(0, j) * det_oracle(minor);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(rat_from_string("3/4") == Rat(3) / 4);
  CHECK(rat_from_string("-5/10") == Rat(-1) / 2);  // canonicalized
  CHECK(rat_from_string("7") == 7);
  CHECK(rat_from_string("-12") == -12);
  CHECK(rat_to_string(Rat(3) / 4) == "3/4");
  CHECK(rat_to_string(Rat(-7)) == "-7");
  CHECK_THROWS_AS(rat_from_string(""), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string("abc"), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string("1.5"), std::invalid_argument);
}

TEST_CASE("rational round trips and exact arithmetic") {
  std::mt19937_64 rng(20240817);
  for (int i = 0; i < 500; ++i) {
    const Rat a = rnd_rat(rng), b = rnd_rat(rng);
    CHECK(rat_from_string(rat_to_string(a)) == a);
    CHECK((a + b) - b == a);
    if (b != 0) CHECK((a / b) * b == a);
  }
}

TEST_CASE("exact conversion from double") {
  CHECK(rat_from_double(0.5) == Rat(1) / 2);
  CHECK(rat_from_double(-0.25) == Rat(-1) / 4);
  const Rat tenth = rat_from_double(0.1);
  CHECK(to_double(tenth) == 0.1);  // exact binary round trip
  CHECK(tenth != Rat(1) / 10);     // 0.1 is not exactly representable
  CHECK_THROWS_AS(rat_from_double(std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
}

TEST_CASE("dot product") {
  const VecR a = rat_vec({"3/2", "-2"});
  const VecR b = rat_vec({"4", "1/2"});
  CHECK(dot(a, b) == 5);
  CHECK_THROWS_AS(dot(a, rat_vec({"1", "2", "3"})), std::invalid_argument);
}

TEST_CASE("primitive scaling preserves direction") {
  CHECK(primitive(rat_vec({"1/2", "1/3"})) == rat_vec({"3", "2"}));
  CHECK(primitive(rat_vec({"-2", "-4"})) == rat_vec({"-1", "-2"}));
  CHECK(primitive(rat_vec({"0", "5"})) == rat_vec({"0", "1"}));
  CHECK_THROWS_AS(primitive(rat_vec({"0", "0"})), std::invalid_argument);
}

TEST_CASE("lexicographic order") {
  CHECK(lex_less(rat_vec({"0", "1"}), rat_vec({"1", "0"})));
  CHECK(lex_less(rat_vec({"1", "0"}), rat_vec({"1", "1/2"})));
  CHECK(!lex_less(rat_vec({"1", "1"}), rat_vec({"1", "1"})));
}

TEST_CASE("determinant matches cofactor oracle") {
  MatR m(2, 2);
  m << 1, 2, 3, 4;
  CHECK(determinant(m) == -2);
  MatR s(2, 2);
  s << 1, 2, 2, 4;
  CHECK(determinant(s) == 0);

  std::mt19937_64 rng(7);
  for (int n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      MatR r(n, n);
      for (int i = 0; i < n; ++i) r.row(i) = rnd_vec(rng, n).transpose();
      CHECK(determinant(r) == det_oracle(r));
    }
  }
}

TEST_CASE("rank and nullspace") {
  MatR m(3, 3);
  m << 1, 2, 3, 2, 4, 6, 1, 0, 1;
  CHECK(rank(m) == 2);
  const auto ns = nullspace(m);
  CHECK(ns.size() == 1);
  CHECK((m * ns[0]).isZero());

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(trial % 3);
    MatR r(n, n + 1);
    for (int i = 0; i < n; ++i) r.row(i) = rnd_vec(rng, n + 1).transpose();
    const int rk = rank(r);
    const auto basis = nullspace(r);
    CHECK(rk + static_cast<int>(basis.size()) == n + 1);
    for (const auto& v : basis) CHECK((r * v).isZero());
  }
}

TEST_CASE("exact solve") {
  MatR a(2, 2);
  a << 1, 1, 1, -1;
  const auto x = solve(a, rat_vec({"3", "1"}));
  REQUIRE(x.has_value());
  CHECK(*x == rat_vec({"2", "1"}));

  MatR sing(2, 2);
  sing << 1, 1, 2, 2;
  CHECK(!solve(sing, rat_vec({"1", "3"})).has_value());  // inconsistent
  const auto y = solve(sing, rat_vec({"1", "2"}));       // consistent, underdetermined
  REQUIRE(y.has_value());
  CHECK(sing * *y == rat_vec({"1", "2"}));
}

TEST_CASE("affine projection") {
  // Project (2,0) onto the line through (1,0) and (0,1).
  const VecR x = rat_vec({"2", "0"});
  const VecR origin = rat_vec({"1", "0"});
  const std::vector<VecR> basis = {rat_vec({"-1", "1"})};
  const VecR p = project_affine(x, basis, origin);
  CHECK(p == rat_vec({"3/2", "-1/2"}));
  // Residual is orthogonal to the subspace, and projection is idempotent.
  CHECK(dot(x - p, basis[0]) == 0);
  CHECK(project_affine(p, basis, origin) == p);

  // Project (1,1) onto span{(1,0)}.
  CHECK(project_affine(rat_vec({"1", "1"}), {rat_vec({"1", "0"})}, rat_vec({"0", "0"})) ==
        rat_vec({"1", "0"}));

  // Dependent spanning sets give the same projection.
  const std::vector<VecR> dep = {rat_vec({"-1", "1"}), rat_vec({"-2", "2"})};
  CHECK(project_affine(x, dep, origin) == p);

  // Empty basis projects onto the origin point.
  CHECK(project_affine(x, {}, origin) == origin);

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3;
    const VecR q = rnd_vec(rng, n);
    const VecR o = rnd_vec(rng, n);
    std::vector<VecR> bs = {rnd_vec(rng, n), rnd_vec(rng, n)};
    const VecR proj = project_affine(q, bs, o);
    for (const auto& bvec : bs) CHECK(dot(q - proj, bvec) == 0);
    CHECK(project_affine(proj, bs, o) == proj);
  }
}

TEST_CASE("linear maximum over generators") {
  const std::vector<VecR> pts = {rat_vec({"1", "0"}), rat_vec({"0", "1"})};
  const std::vector<VecR> rays = {rat_vec({"1", "0"}), rat_vec({"0", "1"})};

  auto r = linear_max(rat_vec({"-1", "-1"}), pts, rays);
  CHECK(!r.unbounded);
  CHECK(r.value == -1);

  r = linear_max(rat_vec({"-1", "0"}), pts, rays);
  CHECK(!r.unbounded);
  CHECK(r.value == 0);

  r = linear_max(rat_vec({"1", "0"}), pts, rays);
  CHECK(r.unbounded);

  CHECK_THROWS_AS(linear_max(rat_vec({"1", "0"}), {}, rays), std::invalid_argument);
}
