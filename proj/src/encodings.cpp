#include "lineal/encodings.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "lineal/errors.hpp"
#include "lineal/subst.hpp"

#ifndef LINEAL_PROGRAMS_DIR
#define LINEAL_PROGRAMS_DIR "programs"
#endif

namespace lineal {

namespace {

int checked_width(int dim) {
  int n = 0;
  while ((1 << n) < dim) ++n;
  if ((1 << n) != dim || n < 1 || dim > 16)
    throw EvalError("gate dimension " + std::to_string(dim) + " is not a power of two up to 16");
  return n;
}

// Image of basis state b under u: column b, as a term in the row basis.
TermPtr gate_row(const UnitaryMatrix& u, int b, Encoding row_basis) {
  int n = checked_width(u.dim());
  std::vector<Cx> column(u.dim());
  for (int r = 0; r < u.dim(); ++r) column[r] = u.at(r, b);
  return vector_to_term(StateVector::unchecked(n, std::move(column)), row_basis);
}

}  // namespace

TermPtr church_ket(const std::string& bits) {
  if (bits.empty() || bits.size() > 4)
    throw EvalError("church register width " + std::to_string(bits.size()) +
                    " is outside 1..4");
  std::size_t m = static_cast<std::size_t>(1) << bits.size();
  std::size_t value = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw EvalError(std::string("bad bit ") + c);
    value = (value << 1) | (c == '1' ? 1 : 0);
  }
  TermPtr body = t_var("x" + std::to_string(value + 1));
  TermPtr t = body;
  for (std::size_t i = m; i-- > 0;) t = t_abs("x" + std::to_string(i + 1), t);
  return t;
}

TermPtr encode_gate(const UnitaryMatrix& u, Encoding row_basis) {
  checked_width(u.dim());
  TermPtr applied = t_var("x");
  for (int b = 0; b < u.dim(); ++b)
    applied = t_app(applied, t_thunk(gate_row(u, b, row_basis)));
  return t_abs("x", t_release(applied));
}

TermPtr encode_gate_1q(const UnitaryMatrix& u, Encoding row_basis) {
  if (u.dim() != 2) throw EvalError("expected a 1-qubit gate");
  return encode_gate(u, row_basis);
}

TermPtr encode_gate_1q_lambda_s(const UnitaryMatrix& u) {
  if (u.dim() != 2) throw EvalError("expected a 1-qubit gate");
  return t_abs("x", ty_b(),
               t_if(t_var("x"), gate_row(u, 1, Encoding::Constants),
                    gate_row(u, 0, Encoding::Constants)));
}

TermPtr encode_pair(TermPtr t, TermPtr r) {
  auto fv = free_vars(t);
  for (const auto& v : free_vars(r)) fv.insert(v);
  std::string f = fresh_name("f", fv);
  return t_abs(f, t_app(t_app(t_var(f), std::move(t)), std::move(r)));
}

TermPtr pair_fst(TermPtr p) {
  return t_app(std::move(p), t_abs("a", t_abs("b", t_var("a"))));
}

TermPtr pair_snd(TermPtr p) {
  return t_app(std::move(p), t_abs("a", t_abs("b", t_var("b"))));
}

std::string default_programs_dir() { return LINEAL_PROGRAMS_DIR; }

Dialect dialect_for_filename(const std::string& path) {
  auto ends_with = [&](const std::string& suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(".lineal")) return Dialect::Lineal;
  if (ends_with(".lams")) return Dialect::LambdaS;
  if (ends_with(".sup")) return Dialect::Odot;
  throw EvalError("no dialect for file " + path);
}

std::vector<ExampleProgram> example_programs(const std::string& dir) {
  namespace fs = std::filesystem;
  std::string root = dir.empty() ? default_programs_dir() : dir;
  if (!fs::is_directory(root)) throw EvalError("programs directory not found: " + root);
  std::vector<ExampleProgram> out;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    if (ext != ".lineal" && ext != ".lams" && ext != ".sup") continue;
    std::ifstream in(entry.path());
    if (!in) throw EvalError("cannot read " + entry.path().string());
    std::string source((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    out.push_back({entry.path().filename().string(),
                   dialect_for_filename(entry.path().string()), std::move(source)});
  }
  std::sort(out.begin(), out.end(),
            [](const ExampleProgram& a, const ExampleProgram& b) { return a.name < b.name; });
  return out;
}

}  // namespace lineal
