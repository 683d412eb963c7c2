#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spinflip/effective_field.hpp"
#include "spinflip/error.hpp"
#include "spinflip/spin.hpp"

using namespace spinflip;

namespace {

constexpr double pi = std::numbers::pi;

Scenario arf(double eps_sq, double eta, double g = 2.0, int q = 1) {
  return make_scenario({1.0, eps_sq, eta}, {g, q}, FrameConfig::average_rest_frame());
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::invalid_argument;
}

double p_at(const Scenario& s, double t, int steps, SpinState psi0 = SpinState::spin_up()) {
  return propagate(psi0, t, steps, s).back().p_flip;
}

}  // namespace

TEST_CASE("hamiltonian examples") {
  const auto s = arf(0.5, 2.0);
  const Matrix2c Hz = hamiltonian_from_field(Vec3(0.0, 0.0, 3.0), s);
  CHECK(Hz(0, 0).real() == doctest::Approx(-1.5));
  CHECK(Hz(1, 1).real() == doctest::Approx(1.5));
  CHECK(std::abs(Hz(0, 1)) == 0.0);

  CHECK(hamiltonian(2.0, arf(0.5, 0.0)).norm() == 0.0);

  const Matrix2c H = hamiltonian(0.0, s);
  CHECK((H - H.adjoint()).norm() == 0.0);
  CHECK(std::abs(H.trace()) == 0.0);
  // eigenvalues +-(g/4)|b| = +-sqrt(3)/2
  const double det = std::abs(H.determinant());
  CHECK(std::sqrt(det) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));

  const auto flipped = arf(0.5, 2.0, 2.0, -1);
  const Matrix2c Hn = hamiltonian_from_field(Vec3(1.0, 2.0, 3.0), flipped);
  CHECK((Hn + hamiltonian_from_field(Vec3(1.0, 2.0, 3.0), s)).norm() == 0.0);
}

TEST_CASE("step examples") {
  const auto none = arf(0.5, 0.0);
  const SpinState psi{Complex(0.6, 0.0), Complex(0.0, 0.8)};
  const SpinState out = step(psi, 0.3, 0.01, none);
  CHECK(out.up == psi.up);
  CHECK(out.down == psi.down);

  CHECK(code_of([] { step({}, 0.0, 0.0, arf(0.5, 2.0)); }) == ErrorCode::step_size);
  CHECK(code_of([] { step({}, 0.0, -1e-3, arf(0.5, 2.0)); }) == ErrorCode::step_size);
  CHECK(code_of([] { step({}, 0.0, 10.0, arf(0.5, 2.0)); }) == ErrorCode::step_size);
}

TEST_CASE("a step equals the matrix exponential at the midpoint") {
  const auto s = arf(0.3, 1.4, 2.5);
  const double t = 0.8;
  const double dt = 0.05;
  const Matrix2c H = hamiltonian(t + dt / 2, s);
  // Scaling and squaring with a truncated Taylor series.
  Matrix2c A = (-Complex(0.0, 1.0) * dt / 1024.0) * H;
  Matrix2c U = Matrix2c::Identity();
  Matrix2c term = Matrix2c::Identity();
  for (int k = 1; k < 20; ++k) {
    term = term * A / static_cast<double>(k);
    U += term;
  }
  for (int k = 0; k < 10; ++k) U = U * U;
  const SpinState psi{Complex(0.6, 0.1), Complex(-0.2, std::sqrt(1.0 - 0.41))};
  const SpinState got = step(psi, t, dt, s);
  CHECK(std::abs(got.up - (U(0, 0) * psi.up + U(0, 1) * psi.down)) < 1e-13);
  CHECK(std::abs(got.down - (U(1, 0) * psi.up + U(1, 1) * psi.down)) < 1e-13);
}

TEST_CASE("propagation grid") {
  const auto s = arf(0.5, 2.0);
  const auto one = propagate(SpinState::spin_up(), 0.0, 2000, s);
  REQUIRE(one.size() == 1);
  CHECK(one[0].p_flip == 0.0);

  const auto series = propagate(SpinState::spin_up(), 2.0 * pi, 100, s);
  CHECK(series.size() == 101);
  CHECK(series.back().t == 2.0 * pi);

  const auto tail = propagate(SpinState::spin_up(), 1.0, 100, s);
  CHECK(tail.back().t == 1.0);
  CHECK(tail.size() == 17);  // 15 whole steps of 2pi/100, one tail step, t = 0

  const auto strided = propagate(SpinState::spin_up(), 2.0 * pi, 100, s, 7);
  CHECK(strided.front().t == 0.0);
  CHECK(strided.back().t == 2.0 * pi);
  CHECK(strided.size() == 16);

  CHECK(code_of([&] { propagate({}, 1.0, 99, s); }) == ErrorCode::step_size);
  CHECK(code_of([&] { propagate({}, -1.0, 2000, s); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { propagate({}, 1.0, 2000, s, 0); }) == ErrorCode::invalid_argument);
}

TEST_CASE("no wave, no flip") {
  for (double eps_sq : {0.0, 0.5}) {
    for (const auto& x : propagate(SpinState::spin_up(), 20.0, 200, arf(eps_sq, 0.0))) {
      CHECK(x.p_flip == 0.0);
    }
  }
}

TEST_CASE("flip probability converges at second order") {
  // Off the peak: at the peak itself the amplitude error is second order in
  // the O(dt^2) detuning shift, so P converges faster there.
  const auto s = arf(0.5, 2.0);
  const double t = pi / (4.0 * *s.derived.omega_S);
  const double exact = rabi_analytic(s, t);
  const double e1 = std::abs(exact - p_at(s, t, 500));
  const double e2 = std::abs(exact - p_at(s, t, 1000));
  const double e3 = std::abs(exact - p_at(s, t, 2000));
  CHECK(e3 < 1e-5);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
  CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.05));
  const double t_flip = 2.0 * t;
  CHECK(std::abs(1.0 - p_at(s, t_flip, 2000)) < 1e-9);
}

TEST_CASE("norm is preserved") {
  for (double eps_sq : {0.0, 0.3, 0.5}) {
    const auto s = arf(eps_sq, 1.5);
    SpinState psi{Complex(0.6, 0.0), Complex(0.0, 0.8)};
    const double dt = 2.0 * pi / 2000.0;
    double drift = 0.0;
    for (int k = 0; k < 100000; ++k) {
      psi = step(psi, k * dt, dt, s);
      if (k % 1000 == 0) drift = std::max(drift, std::abs(psi.norm_sq() - 1.0));
    }
    drift = std::max(drift, std::abs(psi.norm_sq() - 1.0));
    CHECK(drift < 1e-12);
  }
}

TEST_CASE("flip probability is symmetric in the initial state") {
  for (double eps_sq : {0.0, 0.5, 0.8}) {
    const auto s = arf(eps_sq, 1.2, 2.3);
    const auto up = propagate(SpinState::spin_up(), 30.0, 500, s);
    const auto down = propagate(SpinState::spin_down(), 30.0, 500, s);
    REQUIRE(up.size() == down.size());
    for (std::size_t k = 0; k < up.size(); ++k) {
      CHECK(std::abs(std::norm(down[k].state.up) - up[k].p_flip) < 1e-10);
    }
  }
}

TEST_CASE("elliptic orbits keep P in [0, 1]") {
  const auto s = arf(0.2, 1.7, 2.0);
  for (const auto& x : propagate(SpinState::spin_up(), 50.0, 400, s)) {
    CHECK(x.p_flip >= 0.0);
    CHECK(x.p_flip <= 1.0 + 1e-12);
  }
}

TEST_CASE("analytic solution") {
  const auto s = arf(0.5, 2.0);
  CHECK(rabi_analytic(s, 0.0) == 0.0);
  CHECK(rabi_analytic(s, pi / (2.0 * std::sqrt(0.5))) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rabi_analytic(arf(0.5, 1.0), pi / (2.0 * *arf(0.5, 1.0).derived.omega_S)) ==
        doctest::Approx(8.0 / 17.0).epsilon(1e-14));
  CHECK(code_of([] { rabi_analytic(arf(0.2, 1.0), 1.0); }) == ErrorCode::regime);
  CHECK_FALSE(rabi_solution(arf(0.2, 1.0)).valid);
}

TEST_CASE("rotating-frame check") {
  for (double g : {1.5, 2.0, -1.0}) {
    for (double eta : {0.5, 2.0}) {
      for (int q : {1, -1}) {
        CAPTURE(g);
        CAPTURE(eta);
        CAPTURE(q);
        const auto s = arf(0.5, eta, g, q);
        const double omega_S = *s.derived.omega_S;
        const auto series = propagate(SpinState::spin_up(), 5.0 * pi / omega_S, 2000, s);
        const auto r = rotating_frame_check(series, s);
        CHECK(r.residual < 1e-6);
        CHECK(r.global_deviation < 1e-4);
      }
    }
  }
  const auto none = arf(0.5, 0.0);
  const auto flat = propagate(SpinState::spin_up(), 10.0, 200, none);
  const auto r = rotating_frame_check(flat, none);
  CHECK(r.residual < 1e-15);
  CHECK(code_of([] { rotating_frame_check({}, arf(0.3, 1.0)); }) == ErrorCode::regime);
}

TEST_CASE("step length") {
  CHECK(step_length(arf(0.5, 1.0), 2000) == doctest::Approx(2.0 * pi / 2000.0));
}
