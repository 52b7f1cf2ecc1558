#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lineal/encodings.hpp"
#include "lineal/odot.hpp"
#include "lineal/parser.hpp"
#include "lineal/printer.hpp"
#include "lineal/rewrite.hpp"
#include "lineal/rng.hpp"
#include "lineal/typecheck.hpp"
#include "lineal/typed_eval.hpp"

using namespace lineal;

namespace {

std::string trimmed(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// All "-- expect-<field>: <value>" lines of the leading comment block.
std::vector<std::pair<std::string, std::string>> expectations(const std::string& source) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(source);
  std::string line;
  while (std::getline(in, line)) {
    line = trimmed(line);
    if (line.rfind("--", 0) != 0) break;
    std::string body = trimmed(line.substr(2));
    if (body.rfind("expect-", 0) != 0) continue;
    auto colon = body.find(':');
    REQUIRE(colon != std::string::npos);
    out.emplace_back(trimmed(body.substr(0, colon)), trimmed(body.substr(colon + 1)));
  }
  return out;
}

// "a=1; b=2" as an ordered list of (key, number).
std::vector<std::pair<std::string, double>> parse_weights(const std::string& text) {
  std::vector<std::pair<std::string, double>> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    item = trimmed(item);
    auto eq = item.rfind('=');
    REQUIRE(eq != std::string::npos);
    out.emplace_back(trimmed(item.substr(0, eq)), std::stod(item.substr(eq + 1)));
  }
  return out;
}

struct SampleSpec {
  uint64_t seed = 0;
  int shots = 0;
  double tol = 0.0;
  std::vector<std::pair<std::string, double>> freqs;
};

// "seed=7 shots=4000 tol=0.05 |0>=0.75; |1>=0.25"
SampleSpec parse_sample_spec(const std::string& text) {
  SampleSpec spec;
  std::istringstream in(text);
  std::string word;
  REQUIRE((in >> word));
  REQUIRE(word.rfind("seed=", 0) == 0);
  spec.seed = std::stoull(word.substr(5));
  REQUIRE((in >> word));
  REQUIRE(word.rfind("shots=", 0) == 0);
  spec.shots = std::stoi(word.substr(6));
  REQUIRE((in >> word));
  REQUIRE(word.rfind("tol=", 0) == 0);
  spec.tol = std::stod(word.substr(4));
  std::string rest;
  std::getline(in, rest);
  spec.freqs = parse_weights(rest);
  return spec;
}

std::string type_of(const ExampleProgram& p, const TermPtr& t) {
  return type_to_string(p.dialect == Dialect::Odot ? odot_typecheck(t) : typecheck(t));
}

std::string reduced(const ExampleProgram& p, const TermPtr& t) {
  EngineConfig cfg;
  if (p.dialect == Dialect::Odot) return pretty(odot_normalize(t, nullptr, cfg.fuel));
  ReductionTrace trace =
      p.dialect == Dialect::LambdaS ? typed_normalize(t, cfg) : normalize(t, cfg);
  REQUIRE(trace.outcome == Outcome::Normal);
  return pretty(trace.final);
}

std::map<std::string, int> sample_counts(const ExampleProgram& p, const TermPtr& t,
                                         const SampleSpec& spec) {
  std::map<std::string, int> counts;
  EngineConfig cfg;
  for (int i = 0; i < spec.shots; ++i) {
    TermPtr out;
    if (p.dialect == Dialect::Odot) {
      Rng rng = Rng::derive(spec.seed, static_cast<uint64_t>(i));
      out = odot_normalize(t, &rng, cfg.fuel);
    } else {
      out = run(t, Rng::derive_seed(spec.seed, static_cast<uint64_t>(i)), cfg);
    }
    ++counts[pretty(out)];
  }
  return counts;
}

}  // namespace

TEST_CASE("the shipped corpus covers every dialect") {
  auto programs = example_programs();
  REQUIRE(programs.size() >= 10);
  int lineal = 0, lams = 0, sup = 0;
  for (const auto& p : programs) {
    if (p.dialect == Dialect::Lineal) ++lineal;
    if (p.dialect == Dialect::LambdaS) ++lams;
    if (p.dialect == Dialect::Odot) ++sup;
    CHECK(!expectations(p.source).empty());
  }
  CHECK(lineal >= 4);
  CHECK(lams >= 3);
  CHECK(sup >= 2);
}

TEST_CASE("every corpus program meets its declared expectations") {
  for (const auto& p : example_programs()) {
    CAPTURE(p.name);
    TermPtr t = parse(p.source, p.dialect);
    for (const auto& [field, value] : expectations(p.source)) {
      CAPTURE(field);
      if (field == "expect-check") {
        CHECK(type_of(p, t) == value);
      } else if (field == "expect-reduce") {
        CHECK(reduced(p, t) == value);
      } else if (field == "expect-diverges") {
        REQUIRE(value == "true");
        EngineConfig cfg;
        cfg.fuel = 200;
        CHECK(normalize(t, cfg).outcome == Outcome::FuelExhausted);
      } else if (field == "expect-outcome") {
        EngineConfig cfg;
        OutcomeDistribution dist = measure_distribution(t, cfg);
        auto expected = parse_weights(value);
        REQUIRE(dist.outcomes.size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i) {
          CHECK(pretty(dist.outcomes[i].term) == expected[i].first);
          CHECK(dist.outcomes[i].probability ==
                doctest::Approx(expected[i].second).epsilon(1e-9));
        }
      } else if (field == "expect-sample-freq") {
        SampleSpec spec = parse_sample_spec(value);
        auto counts = sample_counts(p, t, spec);
        int total = 0;
        for (const auto& [key, n] : counts) total += n;
        CHECK(total == spec.shots);
        for (const auto& [key, freq] : spec.freqs) {
          CAPTURE(key);
          double got = static_cast<double>(counts[key]) / spec.shots;
          CHECK(std::abs(got - freq) <= spec.tol + 1e-12);
        }
      } else {
        FAIL("unknown expectation field ", field);
      }
    }
  }
}

TEST_CASE("program sampling is reproducible for a fixed seed") {
  auto programs = example_programs();
  const ExampleProgram* demo = nullptr;
  for (const auto& p : programs)
    if (p.name == "measure-demo.lams") demo = &p;
  REQUIRE(demo != nullptr);
  TermPtr t = parse(demo->source, demo->dialect);
  SampleSpec spec;
  spec.seed = 5;
  spec.shots = 64;
  auto first = sample_counts(*demo, t, spec);
  auto second = sample_counts(*demo, t, spec);
  CHECK(first == second);
}
