#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lineal/odot.hpp"
#include "lineal/parser.hpp"
#include "lineal/printer.hpp"
#include "lineal/typecheck.hpp"

using namespace lineal;

namespace {

TermPtr O(const std::string& src) { return parse(src, Dialect::Odot); }

}  // namespace

TEST_CASE("scaled stars type as Top and pairings as Top-odot-Top") {
  CHECK(type_to_string(odot_typecheck(O("*"))) == "Top");
  CHECK(type_to_string(odot_typecheck(O("(1/2).*"))) == "Top");  // scaling preserves
  CHECK(type_to_string(odot_typecheck(O("(sqrt3/2).* + (1/2).*"))) == "Top @ Top");
  CHECK(type_to_string(odot_typecheck(O("\\q:Top @ Top. dmeas(q, [x]x, [y]y)"))) ==
        "Top @ Top -> Top");
}

TEST_CASE("odot type errors cover eliminator and parallel shape mismatches") {
  CHECK_THROWS_AS(odot_typecheck(O("dmeas(*, [x]x, [y]y)")), TypeError);  // not a pairing
  CHECK_THROWS_AS(odot_typecheck(O("dpar(* + *, [x](x + x), [y]y)")), TypeError);
  CHECK_THROWS_AS(odot_typecheck(O("(* + *) || *")), TypeError);
  CHECK_THROWS_AS(odot_typecheck(O("\\x.x")), TypeError);  // unannotated binder
}

TEST_CASE("the parallel eliminator produces the scaled branch pair before merging") {
  TermPtr raw = reduce_parallel_raw(O("dpar((sqrt3/2).* + (1/2).*, [x]x, [y]y)"));
  REQUIRE(raw->kind == TermKind::Parallel);
  REQUIRE(raw->kids.size() == 2);
  CHECK(pretty(raw) == "(sqrt3/2).* || (1/2).*");
  // Left coefficient stays with the left branch: the intro is ordered.
  CHECK(raw->kids[0]->weight.approx_eq(Scalar(std::sqrt(3.0) / 2.0)));
  CHECK(raw->kids[1]->weight.approx_eq(Scalar(0.5)));
}

TEST_CASE("swapping the intro components swaps which branch gets which weight") {
  TermPtr raw = reduce_parallel_raw(O("dpar((1/2).* + (sqrt3/2).*, [x]x, [y]y)"));
  CHECK(raw->kids[0]->weight.approx_eq(Scalar(0.5)));
  CHECK(raw->kids[1]->weight.approx_eq(Scalar(std::sqrt(3.0) / 2.0)));
}

TEST_CASE("branch bodies receive the component through substitution") {
  // dpar(a.t + b.r, [x]s1, [y]s2) feeds t to s1 and r to s2.
  TermPtr raw = reduce_parallel_raw(
      O("dpar((1/2).(\\u:Top.u) + (1/2).*, [x](x *), [y]y)"));
  REQUIRE(raw->kids.size() == 2);
  CHECK(pretty(raw->kids[0]) == "(1/2).(\\u:Top.u) *");  // scale body spans the application
  CHECK(pretty(raw->kids[1]) == "(1/2).*");
}

TEST_CASE("merging adds coefficients of equal components and drops zeros") {
  TermPtr merged = reduce_parallel(O("dpar((sqrt3/2).* + (1/2).*, [x]x, [y]y)"));
  REQUIRE(merged->kind == TermKind::Scale);
  CHECK(merged->weight.approx_eq(Scalar(std::sqrt(3.0) / 2.0 + 0.5)));
  CHECK(merged->kids[0]->kind == TermKind::Star);

  TermPtr cancel = reduce_parallel(O("dpar((1/2).* + (-1/2).*, [x]x, [y]y)"));
  CHECK(cancel->kind == TermKind::Zero);
}

TEST_CASE("equal-shape intro pairs merge position-wise") {
  // Both branches rebuild a qubit; the parallel merges to a single intro.
  TermPtr merged = reduce_parallel(
      O("dpar((1/2).* + (1/2).*, [x]((1/2).x + (1/2).*), [y]((1/2).* + (1/2).y))"));
  auto amps = odot_qubit_amplitudes(merged);
  REQUIRE(amps.has_value());
  CHECK(amps->first.approx_eq(Scalar(0.5)));
  CHECK(amps->second.approx_eq(Scalar(0.5)));
}

TEST_CASE("qubit amplitudes read scaled intros and ignore non-qubits") {
  auto amps = odot_qubit_amplitudes(O("(sqrt3/2).* + (1/2).*"));
  REQUIRE(amps.has_value());
  CHECK(amps->first.approx_eq(Scalar(std::sqrt(3.0) / 2.0)));
  CHECK(amps->second.approx_eq(Scalar(0.5)));
  // A scale wrapping the whole intro multiplies both coefficients.
  amps = odot_qubit_amplitudes(O("(1/2).((1/2).* + (1/2).*)"));
  REQUIRE(amps.has_value());
  CHECK(amps->first.approx_eq(Scalar(0.25)));
  CHECK(!odot_qubit_amplitudes(O("*")).has_value());
  CHECK(!odot_qubit_amplitudes(O("\\x:Top.x")).has_value());
}

TEST_CASE("the measuring eliminator selects branches by squared weight ratio") {
  TermPtr t = O("dmeas((sqrt3/2).* + (1/2).(\\u:Top.u), [x]x, [y]y)");
  int lefts = 0;
  const int trials = 4000;
  for (int i = 0; i < trials; ++i) {
    Rng rng(Rng::derive_seed(11, static_cast<uint64_t>(i)));
    TermPtr out = reduce_measure(t, rng);
    // The branch arrives unscaled.
    if (out->kind == TermKind::Star)
      ++lefts;
    else
      CHECK(out->kind == TermKind::Abs);
  }
  double freq = static_cast<double>(lefts) / trials;
  CHECK(freq == doctest::Approx(0.75).epsilon(0.04));
}

TEST_CASE("measuring a zero-weight pair is degenerate") {
  Rng rng(1);
  CHECK_THROWS_AS(reduce_measure(O("dmeas(0.* + 0.*, [x]x, [y]y)"), rng),
                  DegenerateMeasurement);
}

TEST_CASE("normalization runs beta and eliminators under congruence") {
  TermPtr t = O("(\\q:Top @ Top. dpar(q, [x]x, [y]y)) ((1/2).* + (1/2).*)");
  odot_typecheck(t);
  TermPtr out = odot_normalize(t, nullptr);
  // The halves merge to (1).* and the unit coefficient drops.
  CHECK(out->kind == TermKind::Star);
  // Without a generator, dmeas stays stuck.
  TermPtr stuck = odot_normalize(O("dmeas((1/2).* + (1/2).*, [x]x, [y]y)"), nullptr);
  CHECK(stuck->kind == TermKind::DeltaMeas);
  // With one, it resolves.
  Rng rng(3);
  TermPtr resolved = odot_normalize(O("dmeas((1/2).* + (1/2).*, [x]x, [y]y)"), &rng);
  CHECK(resolved->kind == TermKind::Star);
}

TEST_CASE("nested eliminations reduce through the scrutinee first") {
  TermPtr t = O("dpar(dpar((1/2).* + (1/2).*, [x]((1/3).x + (2/3).x), [y]((1/3).y + (2/3).y)),"
                " [u]u, [v]v)");
  odot_typecheck(t);
  TermPtr out = odot_normalize(t, nullptr);
  // Inner dpar merges to the intro (1/3).* + (2/3).*, the outer splits it,
  // and the star components merge back to a unit star.
  auto amps = odot_qubit_amplitudes(out);
  CHECK(!amps.has_value());  // branches [u]u return components, not intros
  CHECK(out->kind == TermKind::Star);
}
