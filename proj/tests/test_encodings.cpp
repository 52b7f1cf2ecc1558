#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lineal/bridge.hpp"
#include "lineal/encodings.hpp"
#include "lineal/parser.hpp"
#include "lineal/printer.hpp"
#include "lineal/rewrite.hpp"
#include "lineal/rng.hpp"
#include "lineal/typecheck.hpp"
#include "lineal/typed_eval.hpp"

using namespace lineal;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

TermPtr L(const std::string& src) { return parse(src, Dialect::Lineal); }

TermPtr reduce(TermPtr t) {
  ReductionTrace trace = normalize(t, EngineConfig{});
  REQUIRE(trace.outcome == Outcome::Normal);
  return trace.final;
}

// General U(2) element; exact unitarity up to rounding.
UnitaryMatrix random_1q_unitary(Rng& rng) {
  double theta = rng.next_double() * 3.141592653589793;
  double alpha = rng.next_double() * 6.283185307179586;
  double beta = rng.next_double() * 6.283185307179586;
  double delta = rng.next_double() * 6.283185307179586;
  Cx a = std::polar(std::cos(theta), alpha);
  Cx b = std::polar(std::sin(theta), beta);
  Cx phase = std::polar(1.0, delta);
  return UnitaryMatrix(2, {a, -std::conj(b) * phase, b, std::conj(a) * phase});
}

StateVector random_1q_state(Rng& rng) {
  double gamma = rng.next_double() * 3.141592653589793;
  double mu = rng.next_double() * 6.283185307179586;
  return StateVector(1, {Cx(std::cos(gamma)), std::polar(std::sin(gamma), mu)});
}

TermPtr state_term(const StateVector& v, Encoding enc) { return vector_to_term(v, enc); }

}  // namespace

TEST_CASE("Church basis terms are selectors read back by bit string") {
  CHECK(pretty(church_ket("0")) == "\\x1.\\x2.x1");
  CHECK(pretty(church_ket("1")) == "\\x1.\\x2.x2");
  for (const std::string& bits : {"0", "1", "00", "10", "011", "1101"}) {
    TermPtr c = church_ket(bits);
    CHECK(is_basis_term(c));
    REQUIRE(basis_bits(c).has_value());
    CHECK(*basis_bits(c) == bits);
  }
  CHECK(*basis_bits(L("|011>")) == "011");
  CHECK(!basis_bits(L("|0> + |1>")).has_value());
  CHECK_THROWS_AS(church_ket(""), EvalError);
  CHECK_THROWS_AS(church_ket("21"), EvalError);
}

TEST_CASE("vectors print as canonical combinations in either basis") {
  StateVector v(1, {Cx(kInvSqrt2), Cx(-kInvSqrt2)});
  CHECK(pretty(vector_to_term(v, Encoding::Constants)) ==
        "(1/sqrt2).|0> + (-1/sqrt2).|1>");
  TermPtr church = vector_to_term(v, Encoding::Church);
  StateVector back = term_to_vector(church);
  CHECK(StateVector::max_deviation(v, back) < 1e-12);
  // Amplitudes below epsilon are dropped.
  StateVector one(1, {Cx(0.0), Cx(1.0)});
  CHECK(pretty(vector_to_term(one, Encoding::Constants)) == "|1>");
}

TEST_CASE("the Hadamard template maps |0> to the diagonal state in both row bases") {
  UnitaryMatrix h = gate_by_name("H");
  StateVector expected = apply_unitary(h, StateVector(1, {Cx(1.0), Cx(0.0)}));
  for (Encoding enc : {Encoding::Constants, Encoding::Church}) {
    TermPtr applied = t_app(encode_gate_1q(h, enc), church_ket("0"));
    StateVector got = term_to_vector(reduce(applied));
    CHECK(StateVector::max_deviation(expected, got) < 1e-9);
  }
}

TEST_CASE("gate application is linear in the argument") {
  Rng rng(1105);
  for (int trial = 0; trial < 25; ++trial) {
    UnitaryMatrix u = random_1q_unitary(rng);
    StateVector psi = random_1q_state(rng);
    StateVector expected = apply_unitary(u, psi);
    for (Encoding enc : {Encoding::Constants, Encoding::Church}) {
      TermPtr arg = state_term(psi, Encoding::Church);
      TermPtr applied = t_app(encode_gate_1q(u, enc), arg);
      StateVector got = term_to_vector(reduce(applied), false, 1);
      CHECK(StateVector::max_deviation(expected, got) < 1e-9);
    }
  }
}

TEST_CASE("interference cancels amplitudes instead of collapsing them") {
  UnitaryMatrix h = gate_by_name("H");
  TermPtr plus = t_sum({t_scale(Scalar(kInvSqrt2), church_ket("0")),
                        t_scale(Scalar(kInvSqrt2), church_ket("1"))});
  TermPtr out = reduce(t_app(encode_gate_1q(h, Encoding::Constants), plus));
  CHECK(pretty(out) == "|0>");
}

TEST_CASE("thunked rows are opaque to distribution until released") {
  TermPtr sum = L("|0> + |1>");
  // A bare superposed argument distributes before any substitution.
  TermPtr open_app = t_app(church_ket("0"), sum);
  auto open_redexes = find_redexes(open_app, EngineConfig{});
  REQUIRE(!open_redexes.empty());
  CHECK(open_redexes.front().rule.group == RuleGroup::Application);
  // The thunked argument is a basis abstraction, so substitution fires.
  TermPtr thunked_app = t_app(church_ket("0"), t_thunk(sum));
  auto thunked_redexes = find_redexes(thunked_app, EngineConfig{});
  REQUIRE(!thunked_redexes.empty());
  CHECK(thunked_redexes.front().rule.group == RuleGroup::Beta);
  CHECK(is_basis_term(t_thunk(sum)));
  // Release forces the thunk back open.
  CHECK(pretty(reduce(t_release(t_thunk(sum)))) == "|0> + |1>");
}

TEST_CASE("the two qubit template routes CNOT through 4-ary selectors") {
  UnitaryMatrix cnot = gate_by_name("CNOT");
  TermPtr gate = encode_gate(cnot, Encoding::Constants);
  TermPtr out = reduce(t_app(gate, church_ket("10")));
  REQUIRE(basis_bits(out).has_value());
  CHECK(*basis_bits(out) == "11");
  StateVector ten = StateVector::unchecked(2, {Cx(0.0), Cx(0.0), Cx(1.0), Cx(0.0)});
  StateVector got = term_to_vector(out, true, 2);
  CHECK(StateVector::max_deviation(apply_unitary(cnot, ten), got) < 1e-9);
  CHECK_THROWS_AS(encode_gate(UnitaryMatrix::identity(32), Encoding::Constants), EvalError);
}

TEST_CASE("pair terms reduce to the tensor product of their halves") {
  StateVector a(1, {Cx(kInvSqrt2), Cx(kInvSqrt2)});
  double s5 = 1.0 / std::sqrt(5.0);
  StateVector b(1, {Cx(s5), Cx(2.0 * s5)});
  TermPtr p = encode_pair(state_term(a, Encoding::Constants), state_term(b, Encoding::Constants));
  StateVector got = term_to_vector(reduce(p), true, 2);
  CHECK(StateVector::max_deviation(tensor(a, b), got) < 1e-9);
  // Basis pairs project with the Church destructors.
  TermPtr basis = encode_pair(L("|0>"), L("|1>"));
  CHECK(pretty(reduce(pair_fst(basis))) == "|0>");
  CHECK(pretty(reduce(pair_snd(basis))) == "|1>");
}

TEST_CASE("the conditional gate form types as a qubit function and agrees with the matrix") {
  UnitaryMatrix h = gate_by_name("H");
  TermPtr gate = encode_gate_1q_lambda_s(h);
  CHECK(type_to_string(typecheck(gate)) == "B -> S B");
  TermPtr plus = t_sum({t_scale(Scalar(kInvSqrt2), t_ket(0)), t_scale(Scalar(kInvSqrt2), t_ket(1))});
  ReductionTrace trace = typed_normalize(t_app(gate, plus), EngineConfig{});
  REQUIRE(trace.outcome == Outcome::Normal);
  StateVector got = term_to_vector(trace.final);
  StateVector expected = apply_unitary(h, StateVector(1, {Cx(kInvSqrt2), Cx(kInvSqrt2)}));
  CHECK(StateVector::max_deviation(expected, got) < 1e-9);
}

TEST_CASE("file extensions pick the dialect") {
  CHECK(dialect_for_filename("demo.lineal") == Dialect::Lineal);
  CHECK(dialect_for_filename("demo.lams") == Dialect::LambdaS);
  CHECK(dialect_for_filename("demo.sup") == Dialect::Odot);
  CHECK_THROWS_AS(dialect_for_filename("demo.txt"), EvalError);
}

TEST_CASE("term and vector readings reject unrecognized shapes") {
  CHECK_THROWS_AS(term_to_vector(L("\\x.x x")), EvalError);
  CHECK_THROWS_AS(term_to_vector(L("|0> + |10>")), EvalError);
  // Strict mode rejects unnormalized combinations.
  CHECK_THROWS_AS(term_to_vector(L("(1/2).|0> + (1/2).|1>")), EvalError);
  CHECK_NOTHROW(term_to_vector(L("(1/2).|0> + (1/2).|1>"), false, 1));
  StateVector zero = term_to_vector(L("zero"), false, 2);
  CHECK(zero.dim() == 4);
  CHECK(std::abs(zero.amp(0)) == 0.0);
}
