#pragma once

#include <string>
#include <vector>

#include "lineal/bridge.hpp"
#include "lineal/oracle.hpp"
#include "lineal/term.hpp"

namespace lineal {

// Church basis terms: "0" -> \x.\y.x, "1" -> \x.\y.y, and for n > 1 bits the
// 2^n-ary selector \x1...\x_2^n.x_(i+1) with i the bit string's value.
TermPtr church_ket(const std::string& bits);

// Gate templates.
//   Lineal (both row bases): \x.{x [row for |0>] [row for |1>] ...} where
//   row b is the image of basis state b, i.e. column b of the matrix; the
//   argument side is always a Church selector.
//   Lambda-S: \x:B^n. nested if on x selecting the same rows over kets.
TermPtr encode_gate_1q(const UnitaryMatrix& u, Encoding row_basis);
// n-qubit version of the Lineal template, dim up to 16.
TermPtr encode_gate(const UnitaryMatrix& u, Encoding row_basis);
// Conditional form typed B => S(B); rows over ket constants.
TermPtr encode_gate_1q_lambda_s(const UnitaryMatrix& u);

// Church pair \f.f t r and its basis-only destructors.
TermPtr encode_pair(TermPtr t, TermPtr r);
TermPtr pair_fst(TermPtr p);
TermPtr pair_snd(TermPtr p);

struct ExampleProgram {
  std::string name;  // file name under the programs directory
  Dialect dialect;
  std::string source;
};

// Loads the shipped corpus from dir (defaults to the build-time programs
// path). Each file's leading comment block carries machine-readable
// expectations (expect-check, expect-reduce, expect-diverges,
// expect-outcome, expect-sample-freq) consumed by the test harness.
std::vector<ExampleProgram> example_programs(const std::string& dir = "");

// The compiled-in default programs directory.
std::string default_programs_dir();

Dialect dialect_for_filename(const std::string& path);

}  // namespace lineal
