#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lineal/oracle.hpp"

using namespace lineal;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Random unit vector of the given dimension.
std::vector<Cx> random_unit(Rng& rng, int dim) {
  std::vector<Cx> v(dim);
  double norm = 0.0;
  for (Cx& a : v) {
    a = Cx(rng.next_double() * 2.0 - 1.0, rng.next_double() * 2.0 - 1.0);
    norm += std::norm(a);
  }
  norm = std::sqrt(norm);
  for (Cx& a : v) a /= norm;
  return v;
}

// Gram-Schmidt a random orthonormal basis, as rank-1 projectors.
std::vector<std::vector<Cx>> random_rank1_family(Rng& rng, int dim) {
  std::vector<std::vector<Cx>> basis;
  while (static_cast<int>(basis.size()) < dim) {
    std::vector<Cx> v = random_unit(rng, dim);
    for (const auto& u : basis) {
      Cx overlap = 0.0;
      for (int i = 0; i < dim; ++i) overlap += std::conj(u[i]) * v[i];
      for (int i = 0; i < dim; ++i) v[i] -= overlap * u[i];
    }
    double norm = 0.0;
    for (const Cx& a : v) norm += std::norm(a);
    if (norm < 1e-6) continue;  // nearly dependent draw, try again
    norm = std::sqrt(norm);
    for (Cx& a : v) a /= norm;
    basis.push_back(std::move(v));
  }
  std::vector<std::vector<Cx>> ops;
  for (const auto& v : basis) {
    std::vector<Cx> op(static_cast<std::size_t>(dim) * dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) op[static_cast<std::size_t>(r) * dim + c] = v[r] * std::conj(v[c]);
    ops.push_back(std::move(op));
  }
  return ops;
}

}  // namespace

TEST_CASE("state vectors enforce dimension and norm") {
  CHECK_NOTHROW(StateVector(1, {Cx(kInvSqrt2), Cx(kInvSqrt2)}));
  CHECK_THROWS_AS(StateVector(1, {Cx(1.0)}), OracleError);
  CHECK_THROWS_AS(StateVector(1, {Cx(1.0), Cx(1.0)}), OracleError);
  CHECK_NOTHROW(StateVector::unchecked(1, {Cx(1.0), Cx(1.0)}));
}

TEST_CASE("the Hadamard gate rotates the computational basis to the diagonal one") {
  UnitaryMatrix h = gate_by_name("H");
  StateVector zero(1, {Cx(1.0), Cx(0.0)});
  StateVector plus = apply_unitary(h, zero);
  CHECK(std::abs(plus.amp(0) - Cx(kInvSqrt2)) < 1e-12);
  CHECK(std::abs(plus.amp(1) - Cx(kInvSqrt2)) < 1e-12);
  // H is self-inverse.
  StateVector back = apply_unitary(h, plus);
  CHECK(StateVector::max_deviation(zero, back) < 1e-12);
}

TEST_CASE("matrices multiply, conjugate and refuse non-unitary entries") {
  UnitaryMatrix h = gate_by_name("H");
  UnitaryMatrix hh = UnitaryMatrix::multiply(h, h);
  UnitaryMatrix id = UnitaryMatrix::identity(2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) CHECK(std::abs(hh.at(r, c) - id.at(r, c)) < 1e-12);
  CHECK_THROWS_AS(UnitaryMatrix(2, {Cx(1.0), Cx(1.0), Cx(0.0), Cx(1.0)}), OracleError);
  UnitaryMatrix z = gate_by_name("Z");
  CHECK(std::abs(z.dagger().at(1, 1) - Cx(-1.0)) < 1e-12);
}

TEST_CASE("tensoring composes registers most significant qubit first") {
  StateVector a(1, {Cx(kInvSqrt2), Cx(kInvSqrt2)});
  double s5 = 1.0 / std::sqrt(5.0);
  StateVector b(1, {Cx(s5), Cx(2.0 * s5)});
  StateVector ab = tensor(a, b);
  REQUIRE(ab.dim() == 4);
  double s10 = 1.0 / std::sqrt(10.0);
  CHECK(std::abs(ab.amp(0) - Cx(s10)) < 1e-12);
  CHECK(std::abs(ab.amp(1) - Cx(2.0 * s10)) < 1e-12);
  CHECK(std::abs(ab.amp(2) - Cx(s10)) < 1e-12);
  CHECK(std::abs(ab.amp(3) - Cx(2.0 * s10)) < 1e-12);
}

TEST_CASE("CNOT flips the target when the most significant qubit is set") {
  UnitaryMatrix cnot = gate_by_name("CNOT");
  StateVector ten(2, {Cx(0.0), Cx(0.0), Cx(1.0), Cx(0.0)});  // |10>
  StateVector out = apply_unitary(cnot, ten);
  CHECK(std::abs(out.amp(3) - Cx(1.0)) < 1e-12);  // |11>
}

TEST_CASE("computational measurement squares amplitudes and collapses") {
  StateVector psi(1, {Cx(std::sqrt(3.0) / 2.0), Cx(0.5)});
  auto outcomes = measure_computational(psi);
  REQUIRE(outcomes.size() == 2);
  CHECK(outcomes[0].probability == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(outcomes[1].probability == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(outcomes[0].post.amp(0) - Cx(1.0)) < 1e-12);
  CHECK(std::abs(outcomes[1].post.amp(1) - Cx(1.0)) < 1e-12);
}

TEST_CASE("general measurement renormalizes the post state by the outcome weight") {
  MeasurementFamily family(2, {{Cx(1.0), Cx(0.0), Cx(0.0), Cx(0.0)},
                               {Cx(0.0), Cx(0.0), Cx(0.0), Cx(1.0)}});
  StateVector psi(1, {Cx(std::sqrt(3.0) / 2.0), Cx(0.5)});
  auto outcomes = measure_general(family, psi);
  REQUIRE(outcomes.size() == 2);
  CHECK(outcomes[0].probability == doctest::Approx(0.75));
  CHECK(outcomes[0].post.norm() == doctest::Approx(1.0));
  // Zero-probability outcomes drop out.
  StateVector zero(1, {Cx(1.0), Cx(0.0)});
  CHECK(measure_general(family, zero).size() == 1);
}

TEST_CASE("the completeness check rejects non-measurements") {
  CHECK_THROWS_AS(MeasurementFamily(2, {{Cx(1.0), Cx(0.0), Cx(0.0), Cx(0.0)}}), OracleError);
}

TEST_CASE("basis simulation reproduces rank-1 projective measurements") {
  Rng rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    int dim = trial % 2 == 0 ? 2 : 4;
    int n = dim == 2 ? 1 : 2;
    MeasurementFamily family(dim, random_rank1_family(rng, dim));
    StateVector psi = StateVector::unchecked(n, random_unit(rng, dim));
    auto direct = measure_general(family, psi);
    auto simulated = simulate_measurement_via_basis(family, psi);
    REQUIRE(direct.size() == simulated.size());
    for (std::size_t i = 0; i < direct.size(); ++i) {
      CHECK(direct[i].index == simulated[i].index);
      CHECK(direct[i].probability == doctest::Approx(simulated[i].probability).epsilon(1e-9));
      // Post states agree modulo global phase.
      CHECK(StateVector::max_deviation_mod_phase(direct[i].post, simulated[i].post) < 1e-9);
    }
  }
}

TEST_CASE("basis simulation rejects families that are not rank-1 projective") {
  // Identity-halves family is complete but not projective.
  MeasurementFamily family(2, {{Cx(kInvSqrt2), Cx(0.0), Cx(0.0), Cx(kInvSqrt2)},
                               {Cx(kInvSqrt2), Cx(0.0), Cx(0.0), Cx(kInvSqrt2)}});
  StateVector psi(1, {Cx(1.0), Cx(0.0)});
  CHECK_THROWS_AS(simulate_measurement_via_basis(family, psi), OracleError);
}

TEST_CASE("sampling follows the outcome distribution") {
  StateVector psi(1, {Cx(std::sqrt(3.0) / 2.0), Cx(0.5)});
  auto outcomes = measure_computational(psi);
  int zeros = 0;
  const int shots = 10000;
  for (int i = 0; i < shots; ++i) {
    Rng rng(Rng::derive_seed(21, static_cast<uint64_t>(i)));
    if (sample_outcome(outcomes, rng) == 0) ++zeros;
  }
  CHECK(static_cast<double>(zeros) / shots == doctest::Approx(0.75).epsilon(0.02));
}

TEST_CASE("states and matrices round-trip through JSON") {
  StateVector psi(1, {Cx(kInvSqrt2, 0.0), Cx(0.0, kInvSqrt2)});
  StateVector back = StateVector::from_json(psi.to_json());
  CHECK(StateVector::max_deviation(psi, back) < 1e-15);
  UnitaryMatrix h = gate_by_name("H");
  UnitaryMatrix hb = UnitaryMatrix::from_json(h.to_json());
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) CHECK(std::abs(h.at(r, c) - hb.at(r, c)) < 1e-15);
}
