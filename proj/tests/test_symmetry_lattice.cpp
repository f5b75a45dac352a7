#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qc/error.hpp"
#include "qc/symmetry_lattice.hpp"
#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

using namespace qc;
using testing::idx;

namespace {

Eigen::Matrix2d rotation(double angle) {
  Eigen::Matrix2d r;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

// Closure of a generating set under multiplication, tolerance 1e-10.
std::vector<Eigen::MatrixXd> close_group(const std::vector<Eigen::MatrixXd>& gens) {
  std::vector<Eigen::MatrixXd> out{Eigen::MatrixXd::Identity(gens[0].rows(), gens[0].cols())};
  auto contains = [&](const Eigen::MatrixXd& m) {
    return std::any_of(out.begin(), out.end(), [&](const auto& x) { return (x - m).norm() < 1e-10; });
  };
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : gens) {
      Eigen::MatrixXd p = g * out[i];
      if (!contains(p)) out.push_back(p);
    }
  }
  return out;
}

void check_homomorphism(const FrequencyModule& module) {
  const auto& h = module.holohedry();
  const auto& reps = module.integer_reps();
  for (std::size_t i = 0; i < h.order(); ++i)
    for (std::size_t j = 0; j < h.order(); ++j)
      REQUIRE(reps[i] * reps[j] == reps[h.product(i, j)]);
}

}  // namespace

TEST_CASE("holohedry orders and closure") {
  auto c2 = build_holohedry("cyclic:2");
  CHECK(c2.order() == 2);
  CHECK(c2.dimension() == 2);
  CHECK((c2[c2.minus_identity()].matrix + Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-15);

  for (int q : {2, 4, 6, 8, 10, 12}) {
    CHECK(build_holohedry("cyclic:" + std::to_string(q)).order() == static_cast<std::size_t>(q));
    CHECK(build_holohedry("dihedral:" + std::to_string(q)).order() == static_cast<std::size_t>(2 * q));
  }

  // Independent closure of <rotation by pi/6, reflection in the x axis>.
  Eigen::MatrixXd refl(2, 2);
  refl << 1, 0, 0, -1;
  const auto oracle = close_group({Eigen::MatrixXd(rotation(std::numbers::pi / 6)), refl});
  REQUIRE(oracle.size() == 24);
  auto d12 = build_holohedry("dihedral:12");
  REQUIRE(d12.order() == 24);
  for (const auto& m : oracle) CHECK(d12.find(m).has_value());
  for (std::size_t i = 0; i < d12.order(); ++i) {
    for (std::size_t j = 0; j < d12.order(); ++j) {
      const Eigen::MatrixXd p = d12[i].matrix * d12[j].matrix;
      REQUIRE((d12[d12.product(i, j)].matrix - p).norm() < 1e-10);
    }
    CHECK(d12.product(i, d12.inverse(i)) == 0);
  }
  CHECK((d12[0].matrix - Eigen::MatrixXd::Identity(2, 2)).norm() == 0.0);
}

TEST_CASE("icosahedral group against an independent icosahedron") {
  auto ico = build_holohedry("icosahedral");
  REQUIRE(ico.order() == 120);
  CHECK(ico.dimension() == 3);
  CHECK((ico[ico.minus_identity()].matrix + Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);

  std::set<std::pair<long, long>> seen;
  std::map<long, int> trace_counts;
  for (const auto& g : ico.elements()) {
    CHECK((g.matrix.transpose() * g.matrix - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
    const double det = g.matrix.determinant();
    if (det > 0) ++trace_counts[std::lround(g.matrix.trace() * 1000)];
  }
  // Rotation classes of I: identity, 12 + 12 fivefold, 20 threefold, 15 twofold.
  const double gold = (1 + std::sqrt(5.0)) / 2;
  CHECK(trace_counts[3000] == 1);
  CHECK(trace_counts[std::lround(gold * 1000)] == 12);
  CHECK(trace_counts[std::lround((1 - gold) * 1000)] == 12);
  CHECK(trace_counts[0] == 20);
  CHECK(trace_counts[-1000] == 15);

  // Orbit of the fivefold axis e_x is a regular icosahedron.
  std::vector<Eigen::Vector3d> orbit;
  for (const auto& g : ico.elements()) {
    Eigen::Vector3d v = g.matrix.col(0);
    if (std::none_of(orbit.begin(), orbit.end(), [&](const auto& w) { return (w - v).norm() < 1e-9; }))
      orbit.push_back(v);
  }
  REQUIRE(orbit.size() == 12);
  std::vector<Eigen::Vector3d> vertices;
  for (int a : {-1, 1})
    for (int b : {-1, 1}) {
      vertices.emplace_back(0, a, b * gold);
      vertices.emplace_back(a, b * gold, 0);
      vertices.emplace_back(b * gold, 0, a);
    }
  auto dots = [](const std::vector<Eigen::Vector3d>& vs) {
    std::multiset<long> out;
    for (const auto& a : vs)
      for (const auto& b : vs) out.insert(std::lround(1e6 * a.normalized().dot(b.normalized())));
    return out;
  };
  CHECK(dots(orbit) == dots(vertices));
  for (const auto& g : ico.elements()) {
    for (const auto& v : orbit) {
      const Eigen::Vector3d w = g.matrix * v;
      CHECK(std::any_of(orbit.begin(), orbit.end(), [&](const auto& u) { return (u - w).norm() < 1e-9; }));
    }
  }
}

TEST_CASE("holohedry descriptor errors") {
  CHECK(code_of([] { build_holohedry("cyclic:3"); }) == ErrorCode::OddOrderNoMinusI);
  CHECK(code_of([] { build_holohedry("dihedral:5"); }) == ErrorCode::OddOrderNoMinusI);
  CHECK(code_of([] { build_holohedry("tetrahedral"); }) == ErrorCode::UnknownSpec);
  CHECK(code_of([] { build_holohedry("dihedral:x"); }) == ErrorCode::UnknownSpec);
  CHECK(code_of([] { build_holohedry(""); }) == ErrorCode::UnknownSpec);
}

TEST_CASE("frequency module examples") {
  auto d4 = testing::module_for("dihedral:4");
  CHECK(d4->rank() == 2);
  CHECK((d4->generators() - Eigen::Matrix2d::Identity()).norm() < 1e-12);
  CHECK(d4->uniformly_discrete());

  auto d12 = testing::module_for("dihedral:12");
  REQUIRE(d12->rank() == 4);
  for (int j = 0; j < 4; ++j) {
    const double a = j * std::numbers::pi / 6;
    CHECK((d12->generators().row(j).transpose() - Eigen::Vector2d(std::cos(a), std::sin(a))).norm() < 1e-12);
  }
  CHECK_FALSE(d12->uniformly_discrete());

  auto c2 = testing::module_for("cyclic:2");
  CHECK(c2->rank() == 1);
  CHECK((c2->generators().row(0).transpose() - Eigen::Vector2d(1, 0)).norm() < 1e-12);
  CHECK(c2->uniformly_discrete());

  CHECK(testing::module_for("icosahedral")->rank() == 6);
}

TEST_CASE("integer coordinates") {
  auto d12 = testing::module_for("dihedral:12");
  const Eigen::VectorXd k2 = d12->generators().row(2).transpose();
  CHECK(integer_coordinates(*d12, k2) == idx({0, 0, 1, 0}));

  const Eigen::VectorXd k3 = d12->generators().row(3).transpose();
  const Eigen::VectorXd v = rotation(std::numbers::pi / 6) * k3;
  CHECK(integer_coordinates(*d12, v) == idx({-1, 0, 1, 0}));

  CHECK(code_of([&] { integer_coordinates(*d12, Eigen::Vector2d(0.5, 0.5)); }) == ErrorCode::NotRepresentable);
}

TEST_CASE("integer representation") {
  auto d12 = testing::module_for("dihedral:12");
  const auto& h = d12->holohedry();
  CHECK(d12->integer_reps()[0] == Eigen::MatrixXi::Identity(4, 4));
  CHECK(d12->integer_reps()[h.minus_identity()] == -Eigen::MatrixXi::Identity(4, 4));

  const auto r = h.find(rotation(std::numbers::pi / 6));
  REQUIRE(r.has_value());
  Eigen::MatrixXi companion(4, 4);
  companion << 0, 0, 0, -1,
               1, 0, 0, 0,
               0, 1, 0, 1,
               0, 0, 1, 0;
  CHECK(d12->integer_reps()[*r] == companion);
  CHECK(integer_representation(*d12, h[*r]) == companion);
  // Characteristic polynomial x^4 - x^2 + 1: M^4 - M^2 + I = 0.
  const Eigen::MatrixXi m2 = companion * companion;
  CHECK(m2 * m2 - m2 + Eigen::MatrixXi::Identity(4, 4) == Eigen::MatrixXi::Zero(4, 4));
}

TEST_CASE("mode wavevectors") {
  auto d12 = testing::module_for("dihedral:12");
  for (int j = 0; j < 4; ++j) {
    ModeIndex e = ModeIndex::Zero(4);
    e[j] = 1;
    CHECK((mode_wavevector(*d12, e) - d12->generators().row(j).transpose()).norm() == 0.0);
  }
  CHECK(mode_wavevector(*d12, ModeIndex::Zero(4)).norm() == 0.0);
  const Eigen::VectorXd k = mode_wavevector(*d12, idx({1, 1, 0, 0}));
  CHECK((k - Eigen::Vector2d(1 + std::sqrt(3.0) / 2, 0.5)).norm() < 1e-14);
  CHECK(k.squaredNorm() == doctest::Approx(2 + std::sqrt(3.0)).epsilon(1e-14));

  auto scaled = d12->scaled(2.0);
  CHECK((mode_wavevector(scaled, idx({1, 1, 0, 0})) - 2 * k).norm() < 1e-14);
  CHECK(scaled.integer_reps() == d12->integer_reps());
}

TEST_CASE("module points in a ball") {
  auto d4 = testing::module_for("dihedral:4");
  auto tiny = module_points_in_ball(*d4, 0.5, 2);
  REQUIRE(tiny.size() == 1);
  CHECK(tiny[0].index == idx({0, 0}));

  auto nine = module_points_in_ball(*d4, 1.5, 2);
  REQUIRE(nine.size() == 9);
  std::set<std::pair<int, int>> got;
  for (const auto& p : nine) got.insert({p.index[0], p.index[1]});
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) CHECK(got.count({a, b}) == 1);
  for (std::size_t i = 1; i < nine.size(); ++i) CHECK(nine[i - 1].norm <= nine[i].norm);

  auto d12 = testing::module_for("dihedral:12");
  CHECK(module_points_in_ball(*d12, 0.05, 2).size() == 1);
}

TEST_CASE("crystallographic restriction") {
  for (int q : {2, 4, 6}) CHECK(is_uniformly_discrete(*testing::module_for("dihedral:" + std::to_string(q))));
  for (int q : {8, 10, 12}) CHECK_FALSE(is_uniformly_discrete(*testing::module_for("dihedral:" + std::to_string(q))));
  CHECK_FALSE(is_uniformly_discrete(*testing::module_for("icosahedral")));
  CHECK(real_rank(testing::module_for("dihedral:12")->generators()) == 2);
}

TEST_CASE("property: integer representation is a homomorphism") {
  for (auto s : {"dihedral:8", "dihedral:12", "icosahedral"}) {
    CAPTURE(s);
    check_homomorphism(*testing::module_for(s));
  }
}

TEST_CASE("property: the integer action is an isometry matching the matrix action") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-3, 3);
  for (auto s : {"dihedral:8", "dihedral:12", "icosahedral"}) {
    CAPTURE(s);
    auto module = testing::module_for(s);
    const auto& h = module->holohedry();
    for (int trial = 0; trial < 100; ++trial) {
      ModeIndex m(module->rank());
      for (auto& x : m) x = d(rng);
      const Eigen::VectorXd k = mode_wavevector(*module, m);
      for (std::size_t g = 0; g < h.order(); ++g) {
        const Eigen::VectorXd kg = mode_wavevector(*module, module->integer_reps()[g] * m);
        REQUIRE(std::abs(kg.norm() - k.norm()) < 1e-10);
        REQUIRE((kg - h[g].matrix * k).norm() < 1e-10);
      }
    }
  }
}

TEST_CASE("property: coordinates round trip and generators are Z-independent") {
  for (auto s : {"dihedral:8", "dihedral:12"}) {
    CAPTURE(s);
    auto module = testing::module_for(s);
    const int R = module->relation_bound();
    for_each_in_box(module->rank(), R, [&](const ModeIndex& m) {
      const Eigen::VectorXd k = mode_wavevector(*module, m);
      REQUIRE(integer_coordinates(*module, k) == m);
      if (!m.isZero()) REQUIRE(k.norm() > 1e-9);
    });
  }
}

TEST_CASE("box enumeration order") {
  std::vector<ModeIndex> seen;
  for_each_in_box(2, 1, [&](const ModeIndex& m) { seen.push_back(m); });
  REQUIRE(seen.size() == 9);
  CHECK(seen.front() == idx({-1, -1}));
  CHECK(seen[1] == idx({-1, 0}));
  CHECK(seen.back() == idx({1, 1}));
}
