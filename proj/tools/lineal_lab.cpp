#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "lineal/bridge.hpp"
#include "lineal/encodings.hpp"
#include "lineal/errors.hpp"
#include "lineal/odot.hpp"
#include "lineal/oracle.hpp"
#include "lineal/parser.hpp"
#include "lineal/printer.hpp"
#include "lineal/rewrite.hpp"
#include "lineal/typecheck.hpp"
#include "lineal/typed_eval.hpp"

namespace {

using namespace lineal;

// Exit codes: 1 parse, 2 type, 3 fuel, 4 degenerate measurement,
// 5 other failure, 10 oracle comparison above tolerance.
constexpr int kExitParse = 1;
constexpr int kExitType = 2;
constexpr int kExitFuel = 3;
constexpr int kExitDegenerate = 4;
constexpr int kExitOther = 5;
constexpr int kExitDeviation = 10;

struct Options {
  std::string file;
  std::string dialect_flag;
  int fuel = 10000;
  std::string restriction = "on";
  std::string strategy = "lo";
  uint64_t seed = 0;
  bool seed_set = false;
  int shots = 10000;
  bool json = false;
  std::string circuit;
};

Dialect resolve_dialect(const Options& opt) {
  if (opt.dialect_flag == "lineal") return Dialect::Lineal;
  if (opt.dialect_flag == "lambda-s") return Dialect::LambdaS;
  if (opt.dialect_flag == "odot") return Dialect::Odot;
  if (opt.file == "-")
    throw DialectError("standard input needs an explicit --dialect");
  return dialect_for_filename(opt.file);
}

EngineConfig engine_config(const Options& opt) {
  EngineConfig cfg;
  cfg.restriction_enabled = opt.restriction != "off";
  cfg.strategy = opt.strategy == "random" ? Strategy::RandomSeeded : Strategy::LeftmostOutermost;
  cfg.seed = opt.seed;
  cfg.fuel = opt.fuel;
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw EvalError("cannot read " + path);
  ss << in.rdbuf();
  return ss.str();
}

TermPtr load(const Options& opt, Dialect d) { return parse(read_file(opt.file), d); }

bool contains_kind(const TermPtr& t, TermKind k) {
  if (t->kind == k) return true;
  for (const auto& kid : t->kids)
    if (contains_kind(kid, k)) return true;
  return false;
}

int cmd_parse(const Options& opt) {
  Dialect d = resolve_dialect(opt);
  TermPtr t = load(opt, d);
  std::string text = pretty(canonicalize(t, sum_mode_for(d)));
  if (opt.json) {
    nlohmann::ordered_json j;
    j["dialect"] = dialect_name(d);
    j["term"] = text;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << text << "\n";
  }
  return 0;
}

int cmd_check(const Options& opt) {
  Dialect d = resolve_dialect(opt);
  TermPtr t = load(opt, d);
  if (d == Dialect::Lineal) throw TypeError("the lineal dialect is untyped");
  TypePtr ty = d == Dialect::LambdaS ? typecheck(t) : odot_typecheck(t);
  std::string text = type_to_string(ty);
  if (opt.json) {
    nlohmann::ordered_json j;
    j["type"] = text;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << text << "\n";
  }
  return 0;
}

// Reduction front end shared by reduce and trace.
ReductionTrace reduce_traced(const Options& opt, Dialect d, const TermPtr& t) {
  EngineConfig cfg = engine_config(opt);
  if (d == Dialect::Lineal) return normalize(t, cfg);
  typecheck(t);
  return typed_normalize(t, cfg);
}

int cmd_reduce(const Options& opt) {
  Dialect d = resolve_dialect(opt);
  TermPtr t = load(opt, d);
  if (d == Dialect::Odot) {
    odot_typecheck(t);
    if (contains_kind(t, TermKind::DeltaMeas) && !opt.seed_set)
      throw TypeError("reducing a measuring program needs --seed");
    Rng rng(opt.seed);
    TermPtr res = odot_normalize(t, opt.seed_set ? &rng : nullptr, opt.fuel);
    std::cout << pretty(res) << "\n";
    return 0;
  }
  ReductionTrace trace = reduce_traced(opt, d, t);
  if (trace.outcome == Outcome::FuelExhausted) {
    std::cout << "FuelExhausted: " << pretty(trace.final) << "\n";
    return kExitFuel;
  }
  std::cout << pretty(trace.final) << "\n";
  return 0;
}

int cmd_trace(const Options& opt) {
  Dialect d = resolve_dialect(opt);
  if (d == Dialect::Odot) throw EvalError("trace is not available for the odot dialect");
  TermPtr t = load(opt, d);
  ReductionTrace trace = reduce_traced(opt, d, t);
  std::cout << trace.to_json_lines();
  return trace.outcome == Outcome::FuelExhausted ? kExitFuel : 0;
}

int cmd_sample(const Options& opt) {
  Dialect d = resolve_dialect(opt);
  TermPtr t = load(opt, d);
  EngineConfig cfg = engine_config(opt);
  std::map<std::string, int> counts;
  if (d == Dialect::Odot) {
    odot_typecheck(t);
    if (!contains_kind(t, TermKind::DeltaMeas))
      throw EvalError("the program has no measuring eliminator to sample");
    for (int i = 0; i < opt.shots; ++i) {
      Rng rng(Rng::derive(opt.seed, static_cast<uint64_t>(i)));
      counts[pretty(odot_normalize(t, &rng, opt.fuel))] += 1;
    }
  } else if (d == Dialect::LambdaS) {
    typecheck(t);
    if (!contains_kind(t, TermKind::Meas))
      throw EvalError("the program has no measurement to sample");
    for (int i = 0; i < opt.shots; ++i)
      counts[pretty(run(t, Rng::derive_seed(opt.seed, static_cast<uint64_t>(i)), cfg))] += 1;
  } else {
    throw TypeError("the lineal dialect has no measurements to sample");
  }
  if (opt.json) {
    nlohmann::ordered_json j;
    j["shots"] = opt.shots;
    j["seed"] = opt.seed;
    j["freqs"] = nlohmann::ordered_json::array();
    for (const auto& [term, count] : counts) {
      nlohmann::ordered_json e;
      e["term"] = term;
      e["count"] = count;
      e["freq"] = static_cast<double>(count) / opt.shots;
      j["freqs"].push_back(e);
    }
    std::cout << j.dump() << "\n";
  } else {
    for (const auto& [term, count] : counts) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%8d  %.6f  ", count,
                    static_cast<double>(count) / opt.shots);
      std::cout << buf << term << "\n";
    }
  }
  return 0;
}

int cmd_compare_oracle(const Options& opt) {
  Dialect d = resolve_dialect(opt);
  TermPtr t = load(opt, d);
  EngineConfig cfg = engine_config(opt);
  StateVector state = StateVector::unchecked(1, {Cx(0.0), Cx(0.0)});
  if (d == Dialect::Odot) {
    odot_typecheck(t);
    Rng rng(opt.seed);
    TermPtr res = odot_normalize(t, opt.seed_set ? &rng : nullptr, opt.fuel);
    auto amps = odot_qubit_amplitudes(res);
    if (!amps) throw EvalError("program does not denote a qubit: " + pretty(res));
    state = StateVector::unchecked(1, {amps->first.to_complex(), amps->second.to_complex()});
  } else {
    ReductionTrace trace = reduce_traced(opt, d, t);
    if (trace.outcome == Outcome::FuelExhausted)
      throw FuelError("fuel exhausted: " + pretty(trace.final));
    state = term_to_vector(trace.final, false, 1);
  }
  StateVector expected = [&] {
    std::vector<Cx> amps(state.dim(), Cx(0.0));
    amps[0] = Cx(1.0);
    StateVector acc = StateVector::unchecked(state.num_qubits(), std::move(amps));
    std::string spec = opt.circuit;
    for (char& c : spec)
      if (c == ';') c = ',';
    std::stringstream ss(spec);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name.empty()) continue;
      acc = apply_unitary(gate_by_name(name), acc);
    }
    return acc;
  }();
  double dev = StateVector::max_deviation(state, expected);
  bool ok = dev < kEpsilon;
  if (opt.json) {
    nlohmann::ordered_json j;
    j["deviation"] = dev;
    j["ok"] = ok;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "max deviation: " << dev << (ok ? " (ok)" : " (mismatch)") << "\n";
  }
  return ok ? 0 : kExitDeviation;
}

int cmd_repl(const Options& opt) {
  Dialect d = opt.dialect_flag.empty() ? Dialect::Lineal : resolve_dialect(opt);
  EngineConfig cfg = engine_config(opt);
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.empty()) continue;
    if (line == ":q") break;
    try {
      if (line.rfind(":check ", 0) == 0) {
        TermPtr t = parse(line.substr(7), d);
        TypePtr ty = d == Dialect::Odot ? odot_typecheck(t) : typecheck(t);
        std::cout << type_to_string(ty) << "\n";
        continue;
      }
      TermPtr t = parse(line, d);
      if (d == Dialect::Odot) {
        Rng rng(opt.seed);
        std::cout << pretty(odot_normalize(t, opt.seed_set ? &rng : nullptr, opt.fuel)) << "\n";
      } else {
        ReductionTrace trace = d == Dialect::Lineal ? normalize(t, cfg) : typed_normalize(t, cfg);
        std::cout << pretty(trace.final) << "\n";
      }
    } catch (const std::exception& e) {
      std::cout << "error: " << e.what() << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interpreter workbench for quantum-control lambda calculi"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_file) {
    if (needs_file) sub->add_option("file", opt.file, "program file")->required();
    sub->add_option("--dialect", opt.dialect_flag, "lineal, lambda-s or odot")
        ->check(CLI::IsMember({"lineal", "lambda-s", "odot"}));
    sub->add_option("--fuel", opt.fuel, "step budget")->envname("LINEAL_LAB_FUEL");
    sub->add_option("--restriction", opt.restriction, "factorization restriction")
        ->check(CLI::IsMember({"on", "off"}));
    sub->add_option("--strategy", opt.strategy, "redex strategy")
        ->check(CLI::IsMember({"lo", "random"}));
    sub->add_flag("--json", opt.json, "JSON output");
    return sub->add_option("--seed", opt.seed, "random seed");
  };

  auto* parse_cmd = app.add_subcommand("parse", "parse and print the canonical form");
  add_common(parse_cmd, true);
  auto* check_cmd = app.add_subcommand("check", "print the inferred type");
  add_common(check_cmd, true);
  auto* reduce_cmd = app.add_subcommand("reduce", "print the normal form");
  add_common(reduce_cmd, true);
  auto* trace_cmd = app.add_subcommand("trace", "emit the JSON-lines reduction trace");
  add_common(trace_cmd, true);
  auto* sample_cmd = app.add_subcommand("sample", "sample measurement outcomes");
  add_common(sample_cmd, true)->required();
  sample_cmd->add_option("--shots", opt.shots, "number of shots");
  auto* compare_cmd = app.add_subcommand("compare-oracle", "compare against the state-vector oracle");
  add_common(compare_cmd, true);
  compare_cmd->add_option("--circuit", opt.circuit, "comma-separated gate names")->required();
  auto* repl_cmd = app.add_subcommand("repl", "line-at-a-time reduce and check");
  add_common(repl_cmd, false);

  CLI11_PARSE(app, argc, argv);
  for (auto* sub : {parse_cmd, check_cmd, reduce_cmd, trace_cmd, sample_cmd, compare_cmd, repl_cmd})
    if (sub->parsed()) opt.seed_set = sub->count("--seed") > 0;

  try {
    if (parse_cmd->parsed()) return cmd_parse(opt);
    if (check_cmd->parsed()) return cmd_check(opt);
    if (reduce_cmd->parsed()) return cmd_reduce(opt);
    if (trace_cmd->parsed()) return cmd_trace(opt);
    if (sample_cmd->parsed()) return cmd_sample(opt);
    if (compare_cmd->parsed()) return cmd_compare_oracle(opt);
    if (repl_cmd->parsed()) return cmd_repl(opt);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DialectError& e) {
    std::cerr << "dialect error: " << e.what() << "\n";
    return kExitParse;
  } catch (const TypeError& e) {
    std::cerr << "type error: " << e.what() << "\n";
    return kExitType;
  } catch (const FuelError& e) {
    std::cerr << "fuel error: " << e.what() << "\n";
    return kExitFuel;
  } catch (const DegenerateMeasurement& e) {
    std::cerr << "degenerate measurement: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return 0;
}
