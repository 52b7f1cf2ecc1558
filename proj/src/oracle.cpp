#include "lineal/oracle.hpp"

#include <cmath>
#include <json.hpp>

namespace lineal {

namespace {

bool power_of_two_qubits(int n, std::size_t dim) {
  if (n < 0 || n > 12) return false;
  return dim == (static_cast<std::size_t>(1) << n);
}

}  // namespace

StateVector::StateVector(int n, std::vector<Cx> amps) {
  if (!power_of_two_qubits(n, amps.size()))
    throw OracleError("state of " + std::to_string(n) + " qubits cannot have dimension " +
                      std::to_string(amps.size()));
  n_ = n;
  amps_ = std::move(amps);
  if (!approx(norm(), 1.0))
    throw OracleError("state norm " + std::to_string(norm()) + " is not 1");
}

StateVector StateVector::unchecked(int n, std::vector<Cx> amps) {
  if (!power_of_two_qubits(n, amps.size()))
    throw OracleError("state of " + std::to_string(n) + " qubits cannot have dimension " +
                      std::to_string(amps.size()));
  StateVector v;
  v.n_ = n;
  v.amps_ = std::move(amps);
  return v;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const Cx& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

double StateVector::max_deviation(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim())
    throw OracleError("comparing states of dimensions " + std::to_string(a.dim()) + " and " +
                      std::to_string(b.dim()));
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a.amp(i) - b.amp(i)));
  return worst;
}

double StateVector::max_deviation_mod_phase(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim())
    throw OracleError("comparing states of dimensions " + std::to_string(a.dim()) + " and " +
                      std::to_string(b.dim()));
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < a.dim(); ++i)
    if (std::abs(a.amp(i)) > std::abs(a.amp(pivot))) pivot = i;
  if (std::abs(a.amp(pivot)) <= kEpsilon || std::abs(b.amp(pivot)) <= kEpsilon)
    return max_deviation(a, b);
  Cx phase = (a.amp(pivot) / std::abs(a.amp(pivot))) / (b.amp(pivot) / std::abs(b.amp(pivot)));
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    worst = std::max(worst, std::abs(a.amp(i) - phase * b.amp(i)));
  return worst;
}

std::string StateVector::to_json() const {
  nlohmann::ordered_json j;
  j["qubits"] = n_;
  j["amps"] = nlohmann::ordered_json::array();
  for (const Cx& a : amps_) j["amps"].push_back({a.real(), a.imag()});
  return j.dump();
}

StateVector StateVector::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int n = j.at("qubits").get<int>();
  std::vector<Cx> amps;
  for (const auto& pair : j.at("amps")) amps.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  return unchecked(n, std::move(amps));
}

UnitaryMatrix::UnitaryMatrix(int dim, std::vector<Cx> entries) : dim_(dim), entries_(std::move(entries)) {
  if (dim_ <= 0 || entries_.size() != static_cast<std::size_t>(dim_) * dim_)
    throw OracleError("matrix of dimension " + std::to_string(dim_) + " needs " +
                      std::to_string(static_cast<long>(dim_) * dim_) + " entries");
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      Cx acc = 0.0;
      for (int k = 0; k < dim_; ++k) acc += at(r, k) * std::conj(at(c, k));
      Cx want = r == c ? Cx(1.0, 0.0) : Cx(0.0, 0.0);
      if (std::abs(acc - want) > kEpsilon)
        throw OracleError("matrix is not unitary at entry " + std::to_string(r) + "," +
                          std::to_string(c));
    }
  }
}

UnitaryMatrix UnitaryMatrix::dagger() const {
  std::vector<Cx> out(entries_.size());
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) out[static_cast<std::size_t>(c) * dim_ + r] = std::conj(at(r, c));
  return UnitaryMatrix(dim_, std::move(out));
}

UnitaryMatrix UnitaryMatrix::multiply(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim())
    throw OracleError("multiplying matrices of dimensions " + std::to_string(a.dim()) + " and " +
                      std::to_string(b.dim()));
  int d = a.dim();
  std::vector<Cx> out(static_cast<std::size_t>(d) * d, Cx(0.0, 0.0));
  for (int r = 0; r < d; ++r)
    for (int k = 0; k < d; ++k) {
      Cx arl = a.at(r, k);
      if (arl == Cx(0.0, 0.0)) continue;
      for (int c = 0; c < d; ++c) out[static_cast<std::size_t>(r) * d + c] += arl * b.at(k, c);
    }
  return UnitaryMatrix(d, std::move(out));
}

UnitaryMatrix UnitaryMatrix::identity(int dim) {
  std::vector<Cx> out(static_cast<std::size_t>(dim) * dim, Cx(0.0, 0.0));
  for (int i = 0; i < dim; ++i) out[static_cast<std::size_t>(i) * dim + i] = Cx(1.0, 0.0);
  return UnitaryMatrix(dim, std::move(out));
}

UnitaryMatrix UnitaryMatrix::tensor(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  int d = a.dim() * b.dim();
  std::vector<Cx> out(static_cast<std::size_t>(d) * d);
  for (int ar = 0; ar < a.dim(); ++ar)
    for (int ac = 0; ac < a.dim(); ++ac)
      for (int br = 0; br < b.dim(); ++br)
        for (int bc = 0; bc < b.dim(); ++bc) {
          int r = ar * b.dim() + br;
          int c = ac * b.dim() + bc;
          out[static_cast<std::size_t>(r) * d + c] = a.at(ar, ac) * b.at(br, bc);
        }
  return UnitaryMatrix(d, std::move(out));
}

std::string UnitaryMatrix::to_json() const {
  nlohmann::ordered_json j;
  j["dim"] = dim_;
  j["entries"] = nlohmann::ordered_json::array();
  for (const Cx& e : entries_) j["entries"].push_back({e.real(), e.imag()});
  return j.dump();
}

UnitaryMatrix UnitaryMatrix::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int dim = j.at("dim").get<int>();
  std::vector<Cx> entries;
  for (const auto& pair : j.at("entries")) entries.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  return UnitaryMatrix(dim, std::move(entries));
}

UnitaryMatrix gate_by_name(const std::string& name) {
  const double s = 1.0 / std::sqrt(2.0);
  if (name == "H") return UnitaryMatrix(2, {Cx(s), Cx(s), Cx(s), Cx(-s)});
  if (name == "X") return UnitaryMatrix(2, {Cx(0.0), Cx(1.0), Cx(1.0), Cx(0.0)});
  if (name == "Z") return UnitaryMatrix(2, {Cx(1.0), Cx(0.0), Cx(0.0), Cx(-1.0)});
  if (name == "I") return UnitaryMatrix::identity(2);
  if (name == "CNOT")
    return UnitaryMatrix(4, {Cx(1.0), Cx(0.0), Cx(0.0), Cx(0.0),  //
                             Cx(0.0), Cx(1.0), Cx(0.0), Cx(0.0),  //
                             Cx(0.0), Cx(0.0), Cx(0.0), Cx(1.0),  //
                             Cx(0.0), Cx(0.0), Cx(1.0), Cx(0.0)});
  throw OracleError("unknown gate " + name);
}

MeasurementFamily::MeasurementFamily(int dim, std::vector<std::vector<Cx>> ops)
    : dim_(dim), ops_(std::move(ops)) {
  if (dim_ <= 0 || ops_.empty()) throw OracleError("measurement family needs operators");
  std::size_t need = static_cast<std::size_t>(dim_) * dim_;
  for (const auto& op : ops_)
    if (op.size() != need)
      throw OracleError("operator has " + std::to_string(op.size()) + " entries, wanted " +
                        std::to_string(need));
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) {
      Cx acc = 0.0;
      for (std::size_t i = 0; i < ops_.size(); ++i)
        for (int k = 0; k < dim_; ++k) acc += std::conj(op_at(i, k, r)) * op_at(i, k, c);
      Cx want = r == c ? Cx(1.0, 0.0) : Cx(0.0, 0.0);
      if (std::abs(acc - want) > 1e-6)
        throw OracleError("measurement family is not complete at entry " + std::to_string(r) +
                          "," + std::to_string(c));
    }
}

StateVector apply_unitary(const UnitaryMatrix& u, const StateVector& psi) {
  if (u.dim() != static_cast<int>(psi.dim()))
    throw OracleError("applying a " + std::to_string(u.dim()) + "-dimensional matrix to a " +
                      std::to_string(psi.dim()) + "-dimensional state");
  std::vector<Cx> out(psi.dim(), Cx(0.0, 0.0));
  for (int r = 0; r < u.dim(); ++r)
    for (int c = 0; c < u.dim(); ++c) out[r] += u.at(r, c) * psi.amp(c);
  return StateVector::unchecked(psi.num_qubits(), std::move(out));
}

std::vector<MeasurementOutcome> measure_general(const MeasurementFamily& m,
                                                const StateVector& psi) {
  if (m.dim() != static_cast<int>(psi.dim()))
    throw OracleError("measuring a " + std::to_string(psi.dim()) +
                      "-dimensional state with a " + std::to_string(m.dim()) +
                      "-dimensional family");
  std::vector<MeasurementOutcome> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::vector<Cx> applied(psi.dim(), Cx(0.0, 0.0));
    for (int r = 0; r < m.dim(); ++r)
      for (int c = 0; c < m.dim(); ++c) applied[r] += m.op_at(i, r, c) * psi.amp(c);
    double p = 0.0;
    for (const Cx& a : applied) p += std::norm(a);
    if (p <= kEpsilon) continue;
    double root = std::sqrt(p);
    for (Cx& a : applied) a /= root;
    out.push_back({static_cast<int>(i), p, StateVector::unchecked(psi.num_qubits(), std::move(applied))});
  }
  return out;
}

std::vector<MeasurementOutcome> measure_computational(const StateVector& psi) {
  std::vector<MeasurementOutcome> out;
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    double p = std::norm(psi.amp(i));
    if (p <= kEpsilon) continue;
    std::vector<Cx> post(psi.dim(), Cx(0.0, 0.0));
    post[i] = psi.amp(i) / std::abs(psi.amp(i));
    out.push_back({static_cast<int>(i), p, StateVector::unchecked(psi.num_qubits(), std::move(post))});
  }
  return out;
}

std::vector<MeasurementOutcome> simulate_measurement_via_basis(const MeasurementFamily& m,
                                                               const StateVector& psi) {
  if (m.dim() != static_cast<int>(psi.dim()) || m.size() != static_cast<std::size_t>(m.dim()))
    throw OracleError("basis simulation needs dim operators on a dim-dimensional state");
  // Each operator must be |v_i><v_i| for a unit v_i: rank 1, Hermitian,
  // idempotent. Recover v_i from the operator's largest column.
  int d = m.dim();
  std::vector<std::vector<Cx>> vs;
  for (std::size_t i = 0; i < m.size(); ++i) {
    int best = 0;
    double bestn = -1.0;
    for (int c = 0; c < d; ++c) {
      double n = 0.0;
      for (int r = 0; r < d; ++r) n += std::norm(m.op_at(i, r, c));
      if (n > bestn) {
        bestn = n;
        best = c;
      }
    }
    if (bestn <= kEpsilon) throw OracleError("operator " + std::to_string(i) + " is zero");
    std::vector<Cx> v(d);
    double norm = 0.0;
    for (int r = 0; r < d; ++r) {
      v[r] = m.op_at(i, r, best);
      norm += std::norm(v[r]);
    }
    norm = std::sqrt(norm);
    for (Cx& a : v) a /= norm;
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        if (std::abs(m.op_at(i, r, c) - v[r] * std::conj(v[c])) > 1e-6)
          throw OracleError("operator " + std::to_string(i) + " is not a rank-1 projector");
    vs.push_back(std::move(v));
  }
  // U = sum_i |i><v_i| maps v_i to the basis state i.
  std::vector<Cx> u(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int c = 0; c < d; ++c) u[static_cast<std::size_t>(i) * d + c] = std::conj(vs[i][c]);
  UnitaryMatrix rot(d, std::move(u));
  UnitaryMatrix back = rot.dagger();
  StateVector rotated = apply_unitary(rot, psi);
  std::vector<MeasurementOutcome> basis = measure_computational(rotated);
  std::vector<MeasurementOutcome> out;
  for (MeasurementOutcome& o : basis)
    out.push_back({o.index, o.probability, apply_unitary(back, o.post)});
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  std::vector<Cx> out;
  out.reserve(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out.push_back(a.amp(i) * b.amp(j));
  return StateVector::unchecked(a.num_qubits() + b.num_qubits(), std::move(out));
}

int sample_outcome(const std::vector<MeasurementOutcome>& outcomes, Rng& rng) {
  if (outcomes.empty()) throw OracleError("sampling from no outcomes");
  double total = 0.0;
  for (const auto& o : outcomes) total += o.probability;
  if (total <= kEpsilon) throw OracleError("sampling from zero total probability");
  double r = rng.next_double() * total;
  double acc = 0.0;
  for (const auto& o : outcomes) {
    acc += o.probability;
    if (r < acc) return o.index;
  }
  return outcomes.back().index;
}

}  // namespace lineal
