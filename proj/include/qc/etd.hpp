#pragma once

// Exponential time differencing Runge-Kutta steppers for systems that are
// diagonal across modes with a C x C linear block per mode.

#include "qc/hull_field.hpp"
#include "qc/phi_functions.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace qc {

enum class Scheme { Etdrk2, Etdrk4 };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view text);

struct StepperConfig {
  Scheme scheme = Scheme::Etdrk2;
  double dt = 0.01;
  double phi_series_threshold = 1e-2;
};

template <int C>
class EtdStepper {
 public:
  using Block = Eigen::Matrix<double, C, C>;
  using State = Eigen::Matrix<Complex, Eigen::Dynamic, C>;
  using Nonlinear = std::function<State(const State&)>;

  /// linear[i] is the per-mode linear operator L_i; dt the step size.
  EtdStepper(const std::vector<Block>& linear, Scheme scheme, double dt,
             double series_threshold = 1e-2)
      : scheme_(scheme), dt_(dt) {
    const std::size_t n = linear.size();
    auto fill = [&](std::vector<Block>& out, double h, auto&& combine) {
      out.resize(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = combine(Block(linear[i] * h), h);
    };
    auto phik = [&](int k) {
      return [k, series_threshold](const Block& z, double) { return phi_matrix<C>(k, z, series_threshold); };
    };
    fill(exp_, dt, phik(0));
    if (scheme == Scheme::Etdrk2) {
      fill(c1_, dt, [&](const Block& z, double h) { return Block(h * phi_matrix<C>(1, z, series_threshold)); });
      fill(c2_, dt, [&](const Block& z, double h) { return Block(h * phi_matrix<C>(2, z, series_threshold)); });
    } else {
      fill(half_exp_, 0.5 * dt, phik(0));
      fill(half_c1_, 0.5 * dt, [&](const Block& z, double h) { return Block(h * phi_matrix<C>(1, z, series_threshold)); });
      fill(c1_, dt, [&](const Block& z, double h) {
        const Block p1 = phi_matrix<C>(1, z, series_threshold);
        const Block p2 = phi_matrix<C>(2, z, series_threshold);
        const Block p3 = phi_matrix<C>(3, z, series_threshold);
        return Block(h * (p1 - 3.0 * p2 + 4.0 * p3));
      });
      fill(c2_, dt, [&](const Block& z, double h) {
        const Block p2 = phi_matrix<C>(2, z, series_threshold);
        const Block p3 = phi_matrix<C>(3, z, series_threshold);
        return Block(2.0 * h * (p2 - 2.0 * p3));
      });
      fill(c3_, dt, [&](const Block& z, double h) {
        const Block p2 = phi_matrix<C>(2, z, series_threshold);
        const Block p3 = phi_matrix<C>(3, z, series_threshold);
        return Block(h * (-p2 + 4.0 * p3));
      });
    }
  }

  double dt() const { return dt_; }
  Scheme scheme() const { return scheme_; }

  State step(const State& u, const Nonlinear& nonlinear) const {
    const State nu = nonlinear(u);
    if (scheme_ == Scheme::Etdrk2) {
      State a = apply(exp_, u) + apply(c1_, nu);
      const State na = nonlinear(a);
      a += apply(c2_, State(na - nu));
      return a;
    }
    const State eu = apply(half_exp_, u);
    const State a = eu + apply(half_c1_, nu);
    const State na = nonlinear(a);
    const State b = eu + apply(half_c1_, na);
    const State nb = nonlinear(b);
    const State c = apply(half_exp_, a) + apply(half_c1_, State(2.0 * nb - nu));
    const State nc = nonlinear(c);
    return apply(exp_, u) + apply(c1_, nu) + apply(c2_, State(na + nb)) + apply(c3_, nc);
  }

 private:
  static State apply(const std::vector<Block>& blocks, const State& x) {
    State out(x.rows(), C);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      out.row(i) = x.row(i) * blocks[static_cast<std::size_t>(i)].transpose().template cast<Complex>();
    }
    return out;
  }

  Scheme scheme_;
  double dt_;
  std::vector<Block> exp_, c1_, c2_, c3_, half_exp_, half_c1_;
};

}  // namespace qc
