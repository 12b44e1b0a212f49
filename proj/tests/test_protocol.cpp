// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spinqec/protocol.hpp"

using namespace spinqec;

namespace {

Mat pure(const Vec& v) { return v * v.adjoint(); }

std::vector<std::array<double, 3>> random_qubits(int count, std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<std::array<double, 3>> out;
  for (int i = 0; i < count; ++i) {
    const double alpha = std::sqrt(rng.uniform());
    out.push_back({alpha, std::sqrt(1.0 - alpha * alpha),
                   2.0 * std::numbers::pi * rng.uniform()});
  }
  return out;
}

}  // namespace

TEST_CASE("measure_subspace on deterministic inputs") {
  RandomStream rng(1);
  Vec edge = Vec::Zero(8);
  edge(0) = 1.0;
  const auto [outcome, collapsed] = measure_subspace(pure(edge), {3, 4}, rng);
  CHECK(outcome == 0);
  CHECK(max_abs_diff(collapsed, pure(edge)) < 1e-12);

  const Mat mixed = Mat::Identity(8, 8) / 8.0;
  const auto [p1, in_state] = measure_subspace_forced(mixed, {3, 4}, 1);
  CHECK(p1 == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(in_state(3, 3).real() == doctest::Approx(0.5));

  CHECK_THROWS_AS(measure_subspace_forced(pure(edge), {3, 4}, 1), DegenerateError);
  CHECK_THROWS_AS(measure_subspace_forced(mixed, {3, 3}, 1), std::invalid_argument);
}

TEST_CASE("probing the decoded Y pair fires with probability close to eps_y") {
  // Encode, relax, decode exactly, then inspect the (+-1/2) pair weight.
  const double alpha = std::sqrt(0.7), beta = std::sqrt(0.3), phi = 0.9;
  ErrorRates rates;
  rates.eps_y = 0.012;
  RandomStream unused(0);

  const Complex b = beta * std::exp(Complex(0.0, phi));
  Mat rho = pure(initial_state(alpha, b));
  for (const Pulse& p : encoding_sequence().pulses)
    rho = imperfect_pulse(p, rho, PulseErrorModel::ideal(), unused);
  rho = relaxation_channel(rho, rates, 1);
  for (const Pulse& p : decoding_sequence().pulses)
    rho = imperfect_pulse(p, rho, PulseErrorModel::ideal(), unused);

  const auto [p1, collapsed] = measure_subspace_forced(rho, decoded_pair(ErrorKind::Y), 1);
  CHECK(p1 == doctest::Approx(rates.eps_y).epsilon(1e-9));
  (void)collapsed;
}

TEST_CASE("ancilla-mode measurement matches the implicit projection") {
  RandomStream rng(77);
  for (int rep = 0; rep < 25; ++rep) {
    Mat a(8, 8);
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) a(r, c) = Complex(rng.gaussian(), rng.gaussian());
    Mat rho = a * a.adjoint();
    rho /= rho.trace().real();

    RandomStream implicit_rng(1000 + rep), ancilla_rng(1000 + rep);
    const auto [o1, s1] = measure_subspace(rho, {2, 5}, implicit_rng);
    const auto [o2, s2] = measure_subspace_with_ancilla(rho, {2, 5}, ancilla_rng);
    CHECK(o1 == o2);
    CHECK(max_abs_diff(s1, s2) < 1e-10);
  }
}

TEST_CASE("identify_and_correct recovers every pure single-error branch") {
  QecOptions options;
  for (const auto& [alpha, beta, phi] : random_qubits(20, 13)) {
    const Complex b = beta * std::exp(Complex(0.0, phi));
    const Vec ideal = encoded_state(alpha, b);
    for (ErrorKind branch : {ErrorKind::None, ErrorKind::X, ErrorKind::Y, ErrorKind::Z}) {
      RandomStream rng(55);
      const QecReport report =
          identify_and_correct(pure(branch_output(branch, alpha, b)), options, rng, ideal);
      CHECK(report.identified_error == static_cast<IdentifiedError>(branch));
      CHECK(report.fidelity == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("cascade order does not change identification of pure branches") {
  const double alpha = 0.6, beta = 0.8, phi = 0.2;
  const Complex b = beta * std::exp(Complex(0.0, phi));
  const Vec ideal = encoded_state(alpha, b);
  for (const std::string& order : {"yxz", "zxy", "xzy", "zyx"}) {
    QecOptions options;
    options.cascade = MeasurementCascade::from_string(order);
    for (ErrorKind branch : {ErrorKind::X, ErrorKind::Y, ErrorKind::Z}) {
      RandomStream rng(3);
      const QecReport report =
          identify_and_correct(pure(branch_output(branch, alpha, b)), options, rng, ideal);
      CHECK(report.identified_error == static_cast<IdentifiedError>(branch));
    }
  }
}

TEST_CASE("a truncated cascade reports uncorrectable residual weight") {
  QecOptions options;
  options.cascade = MeasurementCascade::from_string("yx");  // never probes Z
  const Complex b(0.6, 0.0);
  const Vec ideal = encoded_state(0.8, b);
  RandomStream rng(9);
  const QecReport report =
      identify_and_correct(pure(branch_output(ErrorKind::Z, 0.8, b)), options, rng, ideal);
  CHECK(report.identified_error == IdentifiedError::Uncorrectable);
}

TEST_CASE("scheduled cascade reorders by probe frequency") {
  MeasurementCascade cascade = MeasurementCascade::default_order();
  for (auto& probe : cascade.probes)
    if (probe.label == ErrorKind::Z) probe.frequency = 5.0;
  CHECK(cascade.scheduled().probes.front().label == ErrorKind::Z);
  CHECK(MeasurementCascade::from_string("zxy").to_string() == "zxy");
  CHECK_THROWS_AS(MeasurementCascade::from_string("zz"), std::invalid_argument);
  CHECK_THROWS_AS(MeasurementCascade::from_string("q"), std::invalid_argument);
}

TEST_CASE("noise-free cycle is exact") {
  QecOptions options;
  RandomStream rng(2);
  const QecReport report = qec_cycle(std::sqrt(0.5), std::sqrt(0.5), 1.3, {}, options, rng);
  CHECK(report.fidelity == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(report.identified_error == IdentifiedError::None);
  CHECK(report.pulse_count > 30);
}

TEST_CASE("explicit ancilla mode reproduces the implicit cycle") {
  QecOptions implicit, explicit_mode;
  explicit_mode.explicit_ancilla = true;
  const ErrorRates rates = ErrorRates::isotropic(0.05);
  for (int rep = 0; rep < 10; ++rep) {
    RandomStream rng1(100 + rep), rng2(100 + rep);
    const QecReport a = qec_cycle(0.6, 0.8, 0.5, rates, implicit, rng1);
    const QecReport b = qec_cycle(0.6, 0.8, 0.5, rates, explicit_mode, rng2);
    CHECK(a.identified_error == b.identified_error);
    CHECK(a.fidelity == doctest::Approx(b.fidelity).epsilon(1e-10));
  }
}

TEST_CASE("second-order corruption fails only through misidentification") {
  // A pure S_i^2 component spreads across several probe pairs after
  // decoding. An all-clear cascade collapses it onto the code-space
  // projection, which the equal diagonal moments make a perfect recovery;
  // a positive probe misidentifies it and the recovery lands badly.
  const double alpha = std::sqrt(0.7), beta = std::sqrt(0.3), phi = 0.4;
  const Complex b = beta * std::exp(Complex(0.0, phi));
  const Vec encoded = encoded_state(alpha, b);
  const SpinOperators ops = spin_operators(3.5);

  RandomStream unused(0);
  QecOptions options;
  const auto recover = [&](Mat rho, std::pair<int, int> from) {
    std::vector<Pulse> fix;
    if (from != std::pair<int, int>{0, 7})
      fix = pair_transfer_sequence(from, {0, 7}, PulseAlphabet::Adjacent);
    for (const Pulse& p : pair_transfer_sequence({0, 7}, {0, 1}, PulseAlphabet::Adjacent))
      fix.push_back(p);
    for (const Pulse& p : encoding_sequence().pulses) fix.push_back(p);
    for (const Pulse& p : fix) rho = imperfect_pulse(p, rho, options.pulse_model, unused);
    return (encoded.adjoint() * rho * encoded)(0, 0).real();
  };

  for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
    const Mat& op = axis == Axis::X ? ops.x : axis == Axis::Y ? ops.y : ops.z;
    Vec corrupted = op * (op * encoded);
    corrupted /= corrupted.norm();
    Mat rho = pure(corrupted);
    for (const Pulse& p : decoding_sequence().pulses)
      rho = imperfect_pulse(p, rho, options.pulse_model, unused);

    // all probes clear: collapse to the clean pair, recovery is exact
    Mat clear = rho;
    for (ErrorKind probe : {ErrorKind::Y, ErrorKind::X, ErrorKind::Z})
      clear = measure_subspace_forced(clear, decoded_pair(probe), 0).second;
    CHECK(recover(clear, {0, 7}) == doctest::Approx(1.0).epsilon(1e-9));

    // a firing Z probe misidentifies the error; the recovery is poor
    const auto [pz, z_state] = measure_subspace_forced(rho, decoded_pair(ErrorKind::Z), 1);
    CHECK(pz > 1e-4);
    CHECK(recover(z_state, decoded_pair(ErrorKind::Z)) < 0.8);
  }
}

TEST_CASE("exact corrected fidelity: small rates give second-order infidelity") {
  QecOptions options;
  const double f = average_corrected_fidelity_exact(ErrorRates::isotropic(1e-3), options);
  CHECK(1.0 - f <= 1e-4);
  CHECK(1.0 - f >= 0.0);

  // single injected first-order error recovers exactly through the full cycle
  for (const auto& [alpha, beta, phi] : random_qubits(5, 101)) {
    (void)phi;
    RandomStream rng(4);
    const QecReport report =
        qec_cycle(alpha, beta, 0.4, ErrorRates::isotropic(0.0), options, rng);
    CHECK(report.fidelity == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("corrected slope is quadratic, uncorrected slope is linear") {
  QecOptions options;
  std::vector<double> ts, f_corr, f_unc;
  for (double t : {1e-3, 3.16e-3, 1e-2, 3.16e-2, 1e-1}) {
    ts.push_back(t);
    f_corr.push_back(average_corrected_fidelity_exact(ErrorRates::isotropic(t), options));
    f_unc.push_back(average_uncorrected_fidelity(ErrorRates::isotropic(t), 2));
  }
  CHECK(infidelity_slope(ts, f_corr) == doctest::Approx(2.0).epsilon(0.075));
  CHECK(infidelity_slope(ts, f_unc) == doctest::Approx(1.0).epsilon(0.1));

  // monotone in t/T and gain above one in the protected window
  for (std::size_t i = 0; i + 1 < ts.size(); ++i)
    CHECK(f_corr[i] >= f_corr[i + 1] - 1e-12);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] <= 0.03) CHECK((1.0 - f_unc[i]) / (1.0 - f_corr[i]) > 1.0);
    CHECK(f_corr[i] <= 1.0 + 1e-9);
  }
}

TEST_CASE("exact mode rejects stochastic pulse models") {
  QecOptions options;
  options.pulse_model = PulseErrorModel::over_rotation(0.99);
  CHECK_THROWS_AS(corrected_fidelity_exact(1.0, 0.0, 0.0, {}, options),
                  std::invalid_argument);
}

TEST_CASE("fidelity sweep is deterministic given config and seed") {
  SweepOptions options;
  options.trials = 200;
  options.qec.pulse_model = PulseErrorModel::depolarizing(0.995);
  RandomStream rng1(42), rng2(42);
  const auto rows1 = fidelity_sweep({0.01, 0.02}, {0.99, 1.0}, options, rng1);
  const auto rows2 = fidelity_sweep({0.01, 0.02}, {0.99, 1.0}, options, rng2);
  REQUIRE(rows1.size() == rows2.size());
  CHECK(sweep_to_csv(rows1) == sweep_to_csv(rows2));
  CHECK(rows1.size() == 4);
  for (const auto& row : rows1) {
    CHECK(row.f_corrected >= 0.0);
    CHECK(row.f_corrected <= 1.0 + 1e-9);
    CHECK(row.trials == 200);
  }
}

TEST_CASE("sweep csv carries the mandated header") {
  const std::string csv = sweep_to_csv({});
  CHECK(csv ==
        "t_over_T,pulse_fidelity,model,f_corrected,f_corrected_stderr,"
        "f_uncorrected,gain,trials,seed\n");
}

TEST_CASE("slope and threshold helpers") {
  // synthetic power law 1-F = c t^2
  std::vector<double> ts = {1e-3, 1e-2, 1e-1};
  std::vector<double> fs;
  for (double t : ts) fs.push_back(1.0 - 0.5 * t * t);
  CHECK(infidelity_slope(ts, fs) == doctest::Approx(2.0).epsilon(1e-9));

  const double crossing = gain_threshold({0.98, 0.99, 1.0}, {0.5, 1.5, 3.0});
  CHECK(crossing == doctest::Approx(0.985).epsilon(1e-12));
  CHECK(std::isnan(gain_threshold({0.98, 0.99}, {1.5, 2.0})));
}
