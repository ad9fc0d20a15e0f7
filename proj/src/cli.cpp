#include "fdqubo/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fdqubo/fzn.hpp"
#include "fdqubo/io.hpp"
#include "fdqubo/roundtrip.hpp"
#include "json.hpp"

namespace fdqubo::cli {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
}

QipModel load_model(const std::string& path) {
  const std::string text = read_file(path);
  try {
    auto lowered = fzn::lower_to_qip(fzn::parse_model(text));
    if (!lowered) {
      throw lowered.inconsistent();
    }
    return std::move(lowered).value();
  } catch (const fzn::ParseError& e) {
    throw std::runtime_error(path + ":" + e.what());
  }
}

void print_stats(const Compiled& c, std::ostream& out) {
  out << std::left << std::setw(16) << "stage" << std::right << std::setw(8) << "vars"
      << std::setw(8) << "linear" << std::setw(10) << "products" << std::setw(8) << "subst"
      << '\n';
  for (const auto& s : c.stats) {
    out << std::left << std::setw(16) << s.stage << std::right << std::setw(8) << s.variables
        << std::setw(8) << s.linear << std::setw(10) << s.products << std::setw(8)
        << s.substitutions << '\n';
  }
  out << "propagation rounds: " << c.propagation.rounds
      << (c.propagation.cap_hit ? " (cap hit)" : "") << '\n';
  out << "qubo: " << c.qubo.n << " bits, " << c.qubo.entries.size() << " entries, density "
      << std::fixed << std::setprecision(4) << matrix_density(c.qubo) << std::defaultfloat
      << ", penalty C = " << c.sidecar.penalty.str() << ", scale = " << c.qubo.scale.str()
      << '\n';
}

std::string bit_string(const Bits& bits) {
  std::string s;
  for (auto b : bits) {
    s.push_back(b != 0 ? '1' : '0');
  }
  return s;
}

nlohmann::ordered_json report_json(const RoundtripReport& r) {
  auto opt = [](const std::optional<Rational>& v) -> nlohmann::ordered_json {
    return v ? nlohmann::ordered_json(v->str()) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json stages = nlohmann::ordered_json::array();
  for (const auto& s : r.stages) {
    stages.push_back({{"stage", s.stage},
                      {"variables", s.variables},
                      {"linear", s.linear},
                      {"products", s.products},
                      {"substitutions", s.substitutions}});
  }
  return {{"pass", r.pass},
          {"oracle_feasible", r.oracle_feasible},
          {"oracle_objective", opt(r.oracle_objective)},
          {"inconsistent", r.inconsistent ? nlohmann::ordered_json(*r.inconsistent)
                                          : nlohmann::ordered_json(nullptr)},
          {"bits", r.bits},
          {"min_energy", opt(r.min_energy)},
          {"argmin_count", r.argmin_count},
          {"decoded_feasible", r.decoded_feasible},
          {"decoded_objective", opt(r.decoded_objective)},
          {"decoded_violation", r.decoded_violation},
          {"objective_match", r.objective_match},
          {"stages", std::move(stages)}};
}

}  // namespace

std::string default_qubo_path(const std::string& input) {
  return fs::path(input).replace_extension(".qubo").string();
}

std::string default_sidecar_path(const std::string& qubo_path) {
  fs::path p(qubo_path);
  if (p.extension() == ".qubo") {
    return p.replace_extension(".sub.json").string();
  }
  return qubo_path + ".sub.json";
}

int cmd_convert(const ConvertArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const QipModel raw = load_model(args.input);
    auto compiled = compile(raw, args.options);
    if (!compiled) {
      err << "inconsistent: " << compiled.inconsistent().reason << '\n';
      return kInconsistent;
    }
    const std::string qubo_path = args.output.empty() ? default_qubo_path(args.input) : args.output;
    const std::string side_path =
        args.sidecar.empty() ? default_sidecar_path(qubo_path) : args.sidecar;
    write_file(qubo_path, write_qubo(compiled->qubo));
    write_file(side_path, write_sidecar(compiled->sidecar));
    print_stats(compiled.value(), out);
    out << "wrote " << qubo_path << " and " << side_path << '\n';
    return kOk;
  } catch (const Inconsistent& e) {
    err << "inconsistent: " << e.reason << '\n';
    return kInconsistent;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const Qubo q = read_qubo(read_file(args.qubo));
    std::optional<Sidecar> sidecar;
    if (args.decode || !args.sidecar.empty()) {
      const std::string path = args.sidecar.empty() ? default_sidecar_path(args.qubo) : args.sidecar;
      if (!fs::exists(path)) {
        err << "error: --decode needs the sidecar '" << path << "'\n";
        return kUsage;
      }
      sidecar = read_sidecar(read_file(path));
      if (sidecar->qubo_index.size() != q.n) {
        err << "error: sidecar indexes " << sidecar->qubo_index.size() << " bits, QUBO has " << q.n
            << '\n';
        return kUsage;
      }
    }

    Bits bits;
    Rational e;
    if (args.method == "exhaustive") {
      auto r = exhaustive_qubo(q);
      bits = r.argmin;
      e = r.energy;
    } else if (args.method == "anneal") {
      if (q.n == 0) {
        e = q.offset;
      } else {
        auto r = anneal_qubo(q, args.anneal);
        bits = r.bits;
        e = r.energy;
      }
    } else {
      err << "error: unknown method '" << args.method << "'\n";
      return kUsage;
    }

    if (sidecar) {
      const Assignment values = decode(*sidecar, bits);
      out << format_solution(*sidecar, values, e);
    } else {
      out << "% bits = " << bit_string(bits) << '\n';
      out << "% energy = " << e.str() << '\n';
    }
    return kOk;
  } catch (const GuardExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kGuard;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

int cmd_roundtrip(const RoundtripArgs& args, std::ostream& out, std::ostream& err) {
  try {
    QipModel raw;
    try {
      raw = load_model(args.input);
    } catch (const Inconsistent& e) {
      // Lowering already proved infeasibility; that is a correct detection.
      RoundtripReport r;
      r.inconsistent = e.reason;
      r.pass = true;
      if (args.json) {
        out << report_json(r).dump(2) << '\n';
      } else {
        out << "inconsistent: " << e.reason << "\nPASS\n";
      }
      return kOk;
    }
    const RoundtripReport r = roundtrip_check(raw, args.options);
    if (args.json) {
      out << report_json(r).dump(2) << '\n';
    } else {
      out << "oracle: "
          << (r.oracle_feasible ? "optimum " + r.oracle_objective->str() : "infeasible") << '\n';
      if (r.inconsistent) {
        out << "pipeline: inconsistent: " << *r.inconsistent << '\n';
      } else {
        out << "qubo: " << r.bits << " bits, min energy " << r.min_energy->str() << " ("
            << r.argmin_count << " argmin)\n";
        out << "decoded: "
            << (r.decoded_feasible ? "feasible, objective " + r.decoded_objective->str()
                                   : "infeasible (" + r.decoded_violation + ")")
            << '\n';
      }
      out << (r.pass ? "PASS" : "FAIL") << '\n';
    }
    return r.pass ? kOk : kFailed;
  } catch (const GuardExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kGuard;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

int cmd_check(const std::string& qubo_path, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = read_file(qubo_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  const auto diags = check_qubo(text);
  for (const auto& d : diags) {
    out << qubo_path << ": " << d << '\n';
  }
  if (diags.empty()) {
    out << qubo_path << ": ok\n";
    return kOk;
  }
  return kFailed;
}

namespace {

void add_encoding_flags(CLI::App* cmd, CompileOptions& opts, std::string& strategy,
                        std::string& rule, std::string& penalty, bool& keep_defined) {
  cmd->add_option("--encoding", strategy, "auto, onehot or binary")
      ->check(CLI::IsMember({"auto", "onehot", "binary"}));
  cmd->add_option("--onehot-threshold", opts.encoding.onehot_threshold,
                  "largest domain that auto encodes one-hot")
      ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));
  cmd->add_option("--binary-rule", rule, "recursive or coefficient")
      ->check(CLI::IsMember({"recursive", "coefficient"}));
  cmd->add_option("--penalty", penalty, "override the penalty factor (p or p/q)");
  cmd->add_flag("--keep-defined", keep_defined,
                "give every variable its own bits, even when an equation determines it");
  cmd->add_flag("--onehot-cross-products", opts.encoding.onehot_cross_products,
                "keep bit cross products when squaring one-hot variables");
  cmd->add_option("--propagation-cap", opts.fixpoint_cap, "propagation round limit (0 = default)");
}

void finish_encoding_flags(CompileOptions& opts, const std::string& strategy,
                           const std::string& rule, const std::string& penalty, bool keep_defined) {
  opts.encoding.strategy = strategy == "onehot"   ? EncodingStrategy::onehot
                           : strategy == "binary" ? EncodingStrategy::binary
                                                  : EncodingStrategy::automatic;
  opts.encoding.binary_rule = rule == "recursive" ? BinaryRule::recursive : BinaryRule::coefficient;
  opts.encoding.eliminate_defined = !keep_defined;
  if (!penalty.empty()) {
    Rational c = Rational::parse(penalty);
    if (c <= 0) {
      throw std::invalid_argument("--penalty must be positive");
    }
    opts.penalty = c;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compile plain-integer FlatZinc models to QUBO and solve them", "fdqubo"};
  app.require_subcommand(1);

  ConvertArgs convert;
  SolveArgs solve;
  RoundtripArgs roundtrip;
  std::string check_path;
  std::string strategy = "auto";
  std::string rule = "coefficient";
  std::string penalty;
  bool keep_defined = false;

  auto* c = app.add_subcommand("convert", "write <model>.qubo and its .sub.json sidecar");
  c->add_option("input", convert.input, "FlatZinc file")->required();
  c->add_option("-o,--output", convert.output, "QUBO file");
  c->add_option("--sidecar", convert.sidecar, "substitution sidecar file");
  add_encoding_flags(c, convert.options, strategy, rule, penalty, keep_defined);

  auto* s = app.add_subcommand("solve", "minimise a .qubo file");
  s->add_option("qubo", solve.qubo, "QUBO file")->required();
  s->add_option("--method", solve.method, "exhaustive or anneal")
      ->check(CLI::IsMember({"exhaustive", "anneal"}));
  s->add_option("--seed", solve.anneal.seed, "annealer seed");
  s->add_option("--sweeps", solve.anneal.sweeps, "sweeps per restart")->check(CLI::PositiveNumber);
  s->add_option("--restarts", solve.anneal.restarts, "independent restarts")
      ->check(CLI::PositiveNumber);
  s->add_option("--sidecar", solve.sidecar, "sidecar used for decoding");
  s->add_flag("--decode", solve.decode, "print source variables (sidecar next to the QUBO file)");

  auto* r = app.add_subcommand("roundtrip", "compile, solve exhaustively and compare to brute force");
  r->add_option("input", roundtrip.input, "FlatZinc file")->required();
  r->add_flag("--json", roundtrip.json, "machine-readable report");
  add_encoding_flags(r, roundtrip.options, strategy, rule, penalty, keep_defined);

  auto* k = app.add_subcommand("check", "validate a .qubo file");
  k->add_option("qubo", check_path, "QUBO file")->required();

  std::vector<std::string> rest(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rest);
    finish_encoding_flags(convert.options, strategy, rule, penalty, keep_defined);
    finish_encoding_flags(roundtrip.options, strategy, rule, penalty, keep_defined);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (c->parsed()) {
    return cmd_convert(convert, out, err);
  }
  if (s->parsed()) {
    return cmd_solve(solve, out, err);
  }
  if (r->parsed()) {
    return cmd_roundtrip(roundtrip, out, err);
  }
  return cmd_check(check_path, out, err);
}

}  // namespace fdqubo::cli
