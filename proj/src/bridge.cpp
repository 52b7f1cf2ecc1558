#include "lineal/bridge.hpp"

#include <cmath>

#include "lineal/encodings.hpp"
#include "lineal/errors.hpp"
#include "lineal/printer.hpp"

namespace lineal {

namespace {

// Church selector \x1...\x_m.x_i with m a power of two: bits of i-1, most
// significant first. Shadowed names resolve to the innermost binder.
std::optional<std::string> church_selector_bits(const TermPtr& t) {
  std::vector<std::string> binders;
  TermPtr cur = t;
  while (cur->kind == TermKind::Abs && !cur->ann) {
    binders.push_back(cur->name);
    cur = cur->kids[0];
  }
  if (cur->kind != TermKind::Var || binders.size() < 2) return std::nullopt;
  std::size_t index = binders.size();
  for (std::size_t i = binders.size(); i-- > 0;) {
    if (binders[i] == cur->name) {
      index = i;
      break;
    }
  }
  if (index == binders.size()) return std::nullopt;
  std::size_t m = binders.size();
  int n = 0;
  while ((static_cast<std::size_t>(1) << n) < m) ++n;
  if ((static_cast<std::size_t>(1) << n) != m) return std::nullopt;
  std::string bits(n, '0');
  for (int b = 0; b < n; ++b)
    if (index & (static_cast<std::size_t>(1) << (n - 1 - b))) bits[b] = '1';
  return bits;
}

std::size_t bits_value(const std::string& bits) {
  std::size_t v = 0;
  for (char c : bits) v = (v << 1) | (c == '1' ? 1 : 0);
  return v;
}

// Amplitude contributions of one combination base: a basis element counts
// once, a Church pair \f.(sum of a.(f l r)) spreads over its entries.
std::vector<std::pair<std::string, Scalar>> read_base(const TermPtr& base) {
  if (auto bits = basis_bits(base)) return {{*bits, Scalar::one()}};
  if (base->kind == TermKind::Abs && !base->ann) {
    const std::string& f = base->name;
    LinearForm lf = LinearForm::from_term(base->kids[0]);
    std::vector<std::pair<std::string, Scalar>> out;
    for (const auto& [coeff, entry] : lf.entries) {
      if (entry->kind != TermKind::App || entry->kids[0]->kind != TermKind::App)
        return {};
      const TermPtr& head = entry->kids[0]->kids[0];
      if (head->kind != TermKind::Var || head->name != f) return {};
      auto lbits = basis_bits(entry->kids[0]->kids[1]);
      auto rbits = basis_bits(entry->kids[1]);
      if (!lbits || !rbits) return {};
      out.push_back({*lbits + *rbits, coeff});
    }
    if (!out.empty()) return out;
  }
  return {};
}

}  // namespace

std::optional<std::string> basis_bits(const TermPtr& t) {
  if (auto bits = ket_bits(t)) return bits;
  return church_selector_bits(t);
}

StateVector term_to_vector(const TermPtr& t, bool strict, int n_hint) {
  LinearForm lf = LinearForm::from_term(t);
  std::vector<std::pair<std::string, Scalar>> contributions;
  for (const auto& [coeff, base] : lf.entries) {
    auto reads = read_base(base);
    if (reads.empty())
      throw EvalError("term is not a recognized basis combination: " + pretty(base));
    for (auto& [bits, c] : reads) contributions.push_back({bits, coeff * c});
  }
  int n = n_hint;
  if (!contributions.empty()) n = static_cast<int>(contributions.front().first.size());
  if (n < 1 || n > 12) throw EvalError("unsupported register width " + std::to_string(n));
  std::vector<Cx> amps(static_cast<std::size_t>(1) << n, Cx(0.0, 0.0));
  for (const auto& [bits, c] : contributions) {
    if (static_cast<int>(bits.size()) != n)
      throw EvalError("mixed register widths in combination: " + pretty(t));
    amps[bits_value(bits)] += c.to_complex();
  }
  StateVector v = StateVector::unchecked(n, std::move(amps));
  if (strict && !approx(v.norm(), 1.0))
    throw EvalError("combination has norm " + std::to_string(v.norm()) + ", expected 1: " +
                    pretty(t));
  return v;
}

TermPtr vector_to_term(const StateVector& v, Encoding encoding) {
  LinearForm lf;
  int n = v.num_qubits();
  for (std::size_t i = 0; i < v.dim(); ++i) {
    Cx a = v.amp(i);
    if (std::abs(a) <= kEpsilon) continue;
    std::string bits(n, '0');
    for (int b = 0; b < n; ++b)
      if (i & (static_cast<std::size_t>(1) << (n - 1 - b))) bits[b] = '1';
    TermPtr base =
        encoding == Encoding::Constants ? t_ket_string(bits) : church_ket(bits);
    lf.add(Scalar::from_complex(a), base);
  }
  return lf.to_term();
}

}  // namespace lineal
