#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "lineal/errors.hpp"
#include "lineal/rng.hpp"
#include "lineal/scalar.hpp"

namespace lineal {

using Cx = std::complex<double>;

// Dense state-vector simulator used as the ground truth the calculi are
// checked against. Deliberately small: vectors up to 12 qubits, matrices
// dense, no sparsity tricks.

class StateVector {
 public:
  // Checks dimension 2^n and unit norm within epsilon.
  StateVector(int n, std::vector<Cx> amps);
  // Skips the norm check (intermediate and deliberately unnormalized data).
  static StateVector unchecked(int n, std::vector<Cx> amps);

  int num_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Cx>& amps() const { return amps_; }
  Cx amp(std::size_t i) const { return amps_[i]; }
  double norm() const;

  // Largest absolute amplitude difference.
  static double max_deviation(const StateVector& a, const StateVector& b);
  // Same after aligning global phase on a's largest-modulus amplitude.
  static double max_deviation_mod_phase(const StateVector& a, const StateVector& b);

  std::string to_json() const;
  static StateVector from_json(const std::string& text);

 private:
  StateVector() = default;
  int n_ = 0;
  std::vector<Cx> amps_;
};

class UnitaryMatrix {
 public:
  // Row-major square matrix; checks U U^dagger = I entrywise within epsilon.
  UnitaryMatrix(int dim, std::vector<Cx> entries);

  int dim() const { return dim_; }
  Cx at(int r, int c) const { return entries_[static_cast<std::size_t>(r) * dim_ + c]; }
  const std::vector<Cx>& entries() const { return entries_; }

  UnitaryMatrix dagger() const;
  static UnitaryMatrix multiply(const UnitaryMatrix& a, const UnitaryMatrix& b);
  static UnitaryMatrix identity(int dim);
  static UnitaryMatrix tensor(const UnitaryMatrix& a, const UnitaryMatrix& b);

  std::string to_json() const;
  static UnitaryMatrix from_json(const std::string& text);

 private:
  int dim_;
  std::vector<Cx> entries_;
};

// Named gates: H, X, Z, I (2x2), CNOT (4x4, control on the first/most
// significant qubit).
UnitaryMatrix gate_by_name(const std::string& name);

struct MeasurementOutcome {
  int index;
  double probability;
  StateVector post;  // normalized post-measurement state
};

class MeasurementFamily {
 public:
  // Row-major dim x dim operators; checks completeness: sum of
  // M^dagger M = I within epsilon.
  MeasurementFamily(int dim, std::vector<std::vector<Cx>> ops);

  int dim() const { return dim_; }
  std::size_t size() const { return ops_.size(); }
  const std::vector<Cx>& op(std::size_t i) const { return ops_[i]; }
  Cx op_at(std::size_t i, int r, int c) const {
    return ops_[i][static_cast<std::size_t>(r) * dim_ + c];
  }

 private:
  int dim_;
  std::vector<std::vector<Cx>> ops_;  // row-major dim x dim each
};

StateVector apply_unitary(const UnitaryMatrix& u, const StateVector& psi);

// Third-postulate measurement: p_i = <psi|M_i^dagger M_i|psi>, post state
// M_i psi / sqrt(p_i). Outcomes with p_i <= epsilon are omitted.
std::vector<MeasurementOutcome> measure_general(const MeasurementFamily& m,
                                                const StateVector& psi);

// Computational-basis projective measurement of all n qubits.
std::vector<MeasurementOutcome> measure_computational(const StateVector& psi);

// Simulates a rank-1 projective family {|v_i><v_i|} by basis measurement:
// rotate by U = sum_i |i><v_i|, measure computationally, rotate back.
// Rejects families that are not rank-1 projective.
std::vector<MeasurementOutcome> simulate_measurement_via_basis(const MeasurementFamily& m,
                                                               const StateVector& psi);

StateVector tensor(const StateVector& a, const StateVector& b);

// One sampled outcome index from a distribution of outcomes.
int sample_outcome(const std::vector<MeasurementOutcome>& outcomes, Rng& rng);

}  // namespace lineal
