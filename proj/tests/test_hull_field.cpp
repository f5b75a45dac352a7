#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qc/error.hpp"
#include "qc/hull_field.hpp"
#include "qc/sh_dynamics.hpp"
#include "support.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

using namespace qc;
using testing::idx;

namespace {

constexpr double pi = std::numbers::pi;

HullField cosine(const ModeSetPtr& modes) {
  HullField f(modes);
  ModeIndex e0 = ModeIndex::Zero(modes->rank());
  e0[0] = 1;
  f.set(e0, 1.0);
  return f;
}

double max_abs_diff(const HullField& a, const HullField& b) {
  return (a.coefficients() - b.coefficients()).cwiseAbs().maxCoeff();
}

// f*g*h over all active triples whose sum is active.
HullField direct_triple(const HullField& f, const HullField& g, const HullField& h) {
  const auto& modes = f.modes();
  const auto n = modes.size();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const ModeIndex ij = modes.index(i) + modes.index(j);
      for (std::size_t k = 0; k < n; ++k) {
        if (auto pos = modes.position(ij + modes.index(k)))
          out[static_cast<Eigen::Index>(*pos)] += f.coefficients()[static_cast<Eigen::Index>(i)] *
                                                  g.coefficients()[static_cast<Eigen::Index>(j)] *
                                                  h.coefficients()[static_cast<Eigen::Index>(k)];
      }
    }
  return HullField(f.modes_ptr(), out);
}

}  // namespace

// Largest H-invariant subset of the index box, by repeated removal.
std::set<std::vector<int>> invariant_box(const FrequencyModule& module, int N) {
  std::set<std::vector<int>> kept;
  for_each_in_box(module.rank(), N, [&](const ModeIndex& m) { kept.insert(std::vector<int>(m.begin(), m.end())); });
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = kept.begin(); it != kept.end();) {
      const ModeIndex m = Eigen::Map<const Eigen::VectorXi>(it->data(), static_cast<Eigen::Index>(it->size()));
      bool closed = true;
      for (const auto& rep : module.integer_reps()) {
        const ModeIndex g = rep * m;
        if (!kept.count(std::vector<int>(g.begin(), g.end()))) closed = false;
      }
      if (closed) {
        ++it;
      } else {
        it = kept.erase(it);
        changed = true;
      }
    }
  }
  return kept;
}

TEST_CASE("active mode sets") {
  auto d12 = testing::module_for("dihedral:12");
  // The N = 1 box is not invariant: rotation by pi/6 sends k1 + k3 to -k0 + 2 k2.
  const auto& rot = d12->integer_reps()[*d12->holohedry().find(
      (Eigen::Matrix2d() << std::cos(pi / 6), -std::sin(pi / 6), std::sin(pi / 6), std::cos(pi / 6)).finished())];
  CHECK(rot * idx({0, 1, 0, 1}) == idx({-1, 0, 2, 0}));
  auto n1 = ActiveModeSet::create(d12, 1);
  const auto oracle = invariant_box(*d12, 1);
  CHECK(n1->size() == oracle.size());
  CHECK(n1->size() == 49);
  for (std::size_t i = 0; i < n1->size(); ++i) {
    const ModeIndex m = n1->index(i);
    CHECK(oracle.count(std::vector<int>(m.begin(), m.end())) == 1);
  }
  CHECK_FALSE(n1->position(idx({0, 1, 0, 1})).has_value());
  CHECK(ActiveModeSet::create(d12, 2)->size() == invariant_box(*d12, 2).size());
  CHECK(ActiveModeSet::create(testing::module_for("dihedral:4"), 2)->size() == 25);

  auto zero = ActiveModeSet::create(d12, 0);
  REQUIRE(zero->size() == 1);
  CHECK(zero->index(0) == idx({0, 0, 0, 0}));
  CHECK(make_field(d12, 0).coefficients().size() == 1);

  auto capped = ActiveModeSet::create(d12, 3, 1.1);
  const auto& h = d12->holohedry();
  std::set<std::vector<int>> orbit;
  for (std::size_t g = 0; g < h.order(); ++g) {
    const ModeIndex m = d12->integer_reps()[g] * idx({1, 0, 0, 0});
    CHECK(capped->position(m).has_value());
    orbit.insert(std::vector<int>(m.begin(), m.end()));
  }
  CHECK(orbit.size() == 12);
  for (Eigen::Index i = 0; i < capped->wavenumber_sq().size(); ++i) CHECK(capped->wavenumber_sq()[i] <= 1.1 * 1.1 + 1e-12);

  try {
    make_field(testing::module_for("dihedral:4"), 2, 0.5);
    FAIL("only the zero mode survives");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyActiveSet);
  }
}

TEST_CASE("property: active sets are H-invariant and closed under negation") {
  auto d12 = testing::module_for("dihedral:12");
  auto modes = ActiveModeSet::create(d12, 3);
  CHECK(modes->size() == 1369);
  const auto& reps = d12->integer_reps();
  for (std::size_t i = 0; i < modes->size(); ++i) {
    const ModeIndex m = modes->index(i);
    REQUIRE(m.cwiseAbs().maxCoeff() <= 3);
    REQUIRE(modes->index(modes->negation(i)) == -m);
    for (std::size_t g = 0; g < reps.size(); ++g) {
      REQUIRE(modes->position(reps[g] * m) == modes->action(g)[i]);
      REQUIRE(modes->wavenumber_sq()[static_cast<Eigen::Index>(modes->action(g)[i])] ==
              doctest::Approx(modes->wavenumber_sq()[static_cast<Eigen::Index>(i)]).epsilon(1e-12));
    }
  }
}

TEST_CASE("set and get keep Hermitian symmetry") {
  auto modes = testing::modes_for("dihedral:12", 1);
  HullField f(modes);
  f.set(idx({1, 0, 0, 0}), 1.0);
  CHECK(f.get(idx({-1, 0, 0, 0})) == Complex(1.0, 0.0));
  f.set(idx({1, 0, 0, 0}), Complex(0, 1));
  CHECK(f.get(idx({-1, 0, 0, 0})) == Complex(0, -1));
  CHECK(f.get(idx({0, 1, 0, 0})) == Complex(0, 0));
  CHECK_THROWS_AS(f.get(idx({2, 0, 0, 0})), Error);
  try {
    f.set(idx({2, 0, 0, 0}), 1.0);
    FAIL("set on an inactive mode");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InactiveMode);
  }
  CHECK(hermitian_defect(f) == 0.0);
}

TEST_CASE("symmetrize") {
  auto modes = testing::modes_for("dihedral:12", 1);
  const auto& module = modes->module();
  // A lone delta at e0: the stabilizer has order 2 in the order-24 group, so
  // each of the 12 orbit modes receives 2/24.
  HullField delta(modes);
  delta.coefficients()[static_cast<Eigen::Index>(*modes->position(idx({1, 0, 0, 0})))] = 1.0;
  const HullField lone = symmetrize(delta);
  int on_orbit = 0;
  for (Eigen::Index i = 0; i < lone.coefficients().size(); ++i) {
    const Complex a = lone.coefficients()[i];
    if (std::abs(a) > 1e-15) {
      ++on_orbit;
      CHECK(std::abs(a - 1.0 / 12) < 1e-15);
      CHECK(std::abs(modes->wavenumber_sq()[i] - 1.0) < 1e-12);
    }
  }
  CHECK(on_orbit == 12);

  // With its Hermitian partner the delta has mass 2 on the orbit (-I is in H).
  delta.set(idx({1, 0, 0, 0}), 1.0);
  const HullField s = symmetrize(delta);
  CHECK(s.symmetric());
  for (std::size_t g = 0; g < module.holohedry().order(); ++g)
    CHECK(std::abs(s.get(module.integer_reps()[g] * idx({1, 0, 0, 0})) - 1.0 / 6) < 1e-15);
  CHECK(support_set(s, 1e-15).size() == 12);

  CHECK(max_abs_diff(symmetrize(s), s) < 1e-15);
  CHECK(symmetry_drift(s) < 1e-15);
  CHECK(symmetrize(HullField(modes)).coefficients().isZero(0.0));

  const HullField f = testing::random_field(modes, 3);
  const HullField g = testing::random_field(modes, 4);
  const HullField sf = symmetrize(f);
  CHECK(std::abs(inner_l2(sf, g - symmetrize(g))) < 1e-10);
  CHECK(symmetry_drift(f) > 0.1);
  CHECK(hermitian_defect(sf) < 1e-15);
}

TEST_CASE("norms and the l1 bound constant") {
  auto modes = testing::modes_for("dihedral:12", 1);
  const HullField c = cosine(modes);
  CHECK(l2_norm(c) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(l1_norm(c) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(hs_norm(c, 0) * hs_norm(c, 0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(grad_hull_sq(c) == doctest::Approx(2.0));

  HullField f(modes);
  f.set(idx({1, 1, 0, 0}), 1.0);
  CHECK(hs_norm(f, 1) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));

  auto d12 = testing::module_for("dihedral:12");
  CHECK(l1_hs_bound_constant(*ActiveModeSet::create(d12, 0), 3.0) == 1.0);
  auto c2 = testing::modes_for("cyclic:2", 1);
  REQUIRE(c2->size() == 3);
  CHECK(l1_hs_bound_constant(*c2, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  const double C = l1_hs_bound_constant(*modes, 3.0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const HullField r = testing::random_field(modes, seed);
    REQUIRE(l1_norm(r) <= C * hs_norm(r, 3.0) + 1e-12);
  }
}

TEST_CASE("products against direct convolution") {
  auto modes = testing::modes_for("dihedral:12", 1);
  const HullField c = cosine(modes);
  const HullField sq = pointwise_product(c, c);
  CHECK(std::abs(sq.get(idx({0, 0, 0, 0})) - 2.0) < 1e-13);
  CHECK(std::abs(sq.coefficients().sum() - 2.0) < 1e-13);  // the 2e0 modes are outside the box
  CHECK(pointwise_product(HullField(modes), c).coefficients().isZero(0.0));

  auto d4 = testing::modes_for("dihedral:4", 2);
  const HullField cc = pointwise_product(cosine(d4), cosine(d4));
  CHECK(std::abs(cc.get(idx({0, 0})) - 2.0) < 1e-13);
  CHECK(std::abs(cc.get(idx({2, 0})) - 1.0) < 1e-13);
  CHECK(std::abs(cc.get(idx({-2, 0})) - 1.0) < 1e-13);
  CHECK(std::abs(l1_norm(cc) - 4.0) < 1e-12);

  for (const auto& set : {d4, modes}) {
    const HullField f = testing::random_field(set, 11);
    const HullField g = testing::random_field(set, 12);
    const HullField h = testing::random_field(set, 13);
    CHECK(max_abs_diff(pointwise_product(f, g), testing::direct_product(f, g)) < 1e-12);
    CHECK(max_abs_diff(triple_product(f, g, h), direct_triple(f, g, h)) < 1e-12);
    CHECK(max_abs_diff(triple_product(f, f, f), direct_triple(f, f, f)) < 1e-12);
  }
}

TEST_CASE("energy") {
  auto modes = testing::modes_for("dihedral:12", 2);
  CHECK(energy(HullField(modes), 0.3) == 0.0);
  const HullField c = cosine(modes);
  for (double lambda : {0.0, 0.2, -1.0}) {
    const double P = energy(c, lambda);
    CHECK(P == doctest::Approx(1.5 - lambda).epsilon(1e-13));
    const double N = 2.0;
    CHECK(P >= 0.25 * (N * N - 2 * lambda * N));
  }
}

TEST_CASE("inner product") {
  auto modes = testing::modes_for("dihedral:4", 2);
  const HullField u = testing::random_field(modes, 1);
  const HullField v = testing::random_field(modes, 2);
  const HullField w = testing::random_field(modes, 3);
  CHECK(inner_l2(u, u) == doctest::Approx(l2_norm(u) * l2_norm(u)).epsilon(1e-14));
  CHECK(inner_l2(u, HullField(modes)) == 0.0);

  // <u, vw> = <uv, w> needs vw and uv unrestricted, so work on N = 1 data inside an N = 2 set.
  auto small = [&](std::uint64_t seed) {
    HullField f = testing::random_field(modes, seed);
    for (Eigen::Index i = 0; i < f.coefficients().size(); ++i)
      if (modes->index(static_cast<std::size_t>(i)).cwiseAbs().maxCoeff() > 1) f.coefficients()[i] = 0;
    return f;
  };
  const HullField a = small(4), b = small(5), c = small(6);
  CHECK(inner_l2(a, pointwise_product(b, c)) == doctest::Approx(inner_l2(pointwise_product(a, b), c)).epsilon(1e-10));

  const HullField c0 = cosine(modes);
  const HullField c0sq = pointwise_product(c0, c0);
  CHECK(inner_l2(c0, c0) * inner_l2(c0, c0) == doctest::Approx(4.0));
  CHECK(inner_l2(c0sq, c0sq) == doctest::Approx(6.0));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const HullField r = small(100 + seed);
    const HullField r2 = pointwise_product(r, r);
    const double lhs = inner_l2(r, r);
    REQUIRE(inner_l2(r2, r2) - lhs * lhs >= -1e-12);
  }
}

TEST_CASE("physical evaluation") {
  auto modes = testing::modes_for("dihedral:12", 1);
  const HullField f = testing::random_field(modes, 9);
  const Eigen::VectorXd at0 = evaluate_physical(f, Eigen::MatrixXd::Zero(2, 1));
  CHECK(at0[0] == doctest::Approx(f.coefficients().sum().real()).epsilon(1e-13));

  Eigen::MatrixXd x(2, 1);
  x << pi, 0.0;
  CHECK(evaluate_physical(cosine(modes), x)[0] == doctest::Approx(-2.0).epsilon(1e-14));
  x << 0.3, 0.7;

  HullField bad(modes);
  bad.coefficients()[static_cast<Eigen::Index>(*modes->position(idx({1, 0, 0, 0})))] = 1.0;
  try {
    evaluate_physical(bad, x);
    FAIL("non-Hermitian field evaluated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ImaginaryResidue);
  }
}

TEST_CASE("near-periods of the twelvefold hull") {
  // 5042 / 2911 is a convergent of sqrt(3): h = (4 pi 2911, 0) puts A h within 6.3e-4 of 2 pi Z^4.
  auto modes = testing::modes_for("dihedral:12", 2);
  const auto& A = modes->module().generators();
  const Eigen::Vector2d h(4 * pi * 2911, 0.0);
  const Eigen::VectorXd phase = A * h;
  Eigen::VectorXd wrapped(phase.size());
  for (Eigen::Index j = 0; j < phase.size(); ++j)
    wrapped[j] = phase[j] - 2 * pi * std::round(phase[j] / (2 * pi));
  const double shift = wrapped.cwiseAbs().maxCoeff();
  REQUIRE(shift < 1e-3);

  const HullField f = symmetrize(testing::random_field(modes, 5));
  double lipschitz = 0.0;  // sum |a_m| |m|_1 bounds |U(phi + t) - U(phi)| / |t|_inf
  for (Eigen::Index i = 0; i < f.coefficients().size(); ++i)
    lipschitz += std::abs(f.coefficients()[i]) * modes->index(static_cast<std::size_t>(i)).cwiseAbs().sum();

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-50, 50);
  Eigen::MatrixXd x(2, 100);
  for (Eigen::Index j = 0; j < 100; ++j) x.col(j) << d(rng), d(rng);
  const Eigen::MatrixXd xh = x.colwise() + h;
  const Eigen::VectorXd gap = (evaluate_physical(f, xh) - evaluate_physical(f, x)).cwiseAbs();
  CHECK(gap.maxCoeff() <= lipschitz * shift + 1e-9);
  CHECK(gap.maxCoeff() > 0.0);
}

TEST_CASE("render") {
  auto modes = testing::modes_for("dihedral:12", 1);
  HullField constant(modes);
  constant.set(idx({0, 0, 0, 0}), 0.7);
  const Raster flat = render_image(constant, -1, 1, 5);
  CHECK(flat.width == 5);
  CHECK(flat.height == 5);
  for (auto p : flat.pixels) CHECK(p == 128);

  // Stripes along k0 = e_x: columns at x = -pi, 0, pi.
  const Raster stripes = render_image(cosine(modes), -pi, pi, 3);
  for (int row = 0; row < 3; ++row) {
    CHECK(stripes.pixels[static_cast<std::size_t>(row * 3 + 0)] == 0);
    CHECK(stripes.pixels[static_cast<std::size_t>(row * 3 + 1)] == 255);
    CHECK(stripes.pixels[static_cast<std::size_t>(row * 3 + 2)] == 0);
  }

  // A twelvefold field is invariant under a quarter turn of a centred window.
  const HullField s = symmetrize(testing::random_field(modes, 8));
  const int n = 41;
  const Raster img = render_image(s, -10, 10, n);
  int worst = 0;
  for (int row = 0; row < n; ++row)
    for (int col = 0; col < n; ++col) {
      const int a = img.pixels[static_cast<std::size_t>(row * n + col)];
      const int b = img.pixels[static_cast<std::size_t>((n - 1 - col) * n + row)];
      worst = std::max(worst, std::abs(a - b));
    }
  CHECK(worst <= 1);

  auto ico = testing::modes_for("icosahedral", 1);
  CHECK_THROWS_AS(render_image(HullField(ico), -1, 1, 4), Error);
}

TEST_CASE("support set and condition (iii)") {
  auto modes = testing::modes_for("dihedral:12", 2);
  CHECK(support_set(HullField(modes), 0.0).empty());
  const HullField q = quasicrystal_ic(modes, 0.2);
  const double amp = std::abs(q.get(idx({1, 0, 0, 0})));
  CHECK(support_set(q, 2 * amp).empty());
  const auto orbit = support_set(q, amp / 2);
  CHECK(orbit.size() == 12);
  for (const auto& m : orbit) CHECK(std::abs(mode_wavevector(modes->module(), m).norm() - 1.0) < 1e-12);

  CHECK_FALSE(condition_iii_check(HullField(modes), 1.5, 0.5, 0.0).passed);
  CHECK_FALSE(condition_iii_check(q, 1.5, 0.5, 2 * amp).passed);

  // Every active mode in the support; r is the brute-force covering radius.
  HullField full(modes, Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(modes->size())));
  const auto ball = module_points_in_ball(modes->module(), 1.5, modes->module().relation_bound());
  double covering = 0.0;
  for (const auto& p : ball) {
    double nearest = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < modes->wavevectors().cols(); ++i)
      nearest = std::min(nearest, (modes->wavevectors().col(i) - p.wavevector).norm());
    covering = std::max(covering, nearest);
  }
  const auto ok = condition_iii_check(full, 1.5, covering, 0.5);
  CHECK(ok.passed);
  CHECK(ok.ball_points == ball.size());
  CHECK(ok.coefficient_bound == modes->module().relation_bound());

  auto capped = testing::modes_for("dihedral:12", 2);
  auto small = ActiveModeSet::create(capped->module_ptr(), 2, 1.2);
  try {
    condition_iii_check(HullField(small), 2.0, 0.5, 0.0);
    FAIL("ball beyond the cap");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BallExceedsTruncation);
  }
}

TEST_CASE("separation from constants") {
  auto modes = testing::modes_for("dihedral:12", 1);
  HullField constant(modes);
  constant.set(idx({0, 0, 0, 0}), 3.0);
  CHECK(separation_from_constants(constant, 8) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(separation_from_constants(cosine(modes), 8) == doctest::Approx(2.0).epsilon(1e-14));

  const HullField f = testing::random_field(modes, 21);
  for (int n : {3, 4, 6, 12}) CHECK(separation_from_constants(f, 2 * n) >= separation_from_constants(f, n) - 1e-12);
}

TEST_CASE("property: Parseval and norm ordering") {
  for (auto [s, N] : {std::pair{"dihedral:4", 3}, std::pair{"dihedral:12", 2}}) {
    CAPTURE(s);
    auto modes = testing::modes_for(s, N);
    const int points = dealias_points(*modes);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const HullField f = testing::random_field(modes, seed);
      const Eigen::ArrayXd u = grid_values(f, points);
      const double l2sq = l2_norm(f) * l2_norm(f);
      CHECK(std::abs(u.square().mean() - l2sq) / l2sq < 1e-10);
      CHECK(max_abs_diff(from_grid(u, modes, points), f) < 1e-12);
      const double sup = u.abs().maxCoeff();
      CHECK(l2_norm(f) <= sup);
      CHECK(sup <= l1_norm(f) + 1e-12);
    }
  }
}
