#include "fdqubo/io.hpp"

#include <charconv>
#include <optional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace fdqubo {

std::string write_qubo(const Qubo& q) {
  std::ostringstream os;
  os << "QUBO " << q.n << ' ' << q.entries.size() << '\n';
  os << "OFFSET " << q.offset.str() << '\n';
  os << "SCALE " << q.scale.str() << '\n';
  for (const auto& [ij, w] : q.entries) {
    os << ij.first << ' ' << ij.second << ' ' << w.str() << '\n';
  }
  return os.str();
}

namespace {

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> words;
  for (std::string w; is >> w;) {
    words.push_back(w);
  }
  return words;
}

std::optional<std::size_t> parse_index(const std::string& s) {
  std::size_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    return std::nullopt;
  }
  return v;
}

/// Parses a rational and insists on its canonical spelling.
std::optional<Rational> parse_canonical(const std::string& s, std::string& problem) {
  try {
    Rational r = Rational::parse(s);
    if (r.str() != s) {
      problem = "rational '" + s + "' is not in lowest terms (expected '" + r.str() + "')";
    }
    return r;
  } catch (const std::invalid_argument& e) {
    problem = e.what();
    return std::nullopt;
  }
}

struct Parsed {
  Qubo qubo;
  std::vector<std::string> diagnostics;
};

Parsed parse_qubo(std::string_view text) {
  Parsed out;
  auto& diags = out.diagnostics;
  auto report = [&](int line, const std::string& msg) {
    diags.push_back("line " + std::to_string(line) + ": " + msg);
  };

  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  int header = 0;  // lines of the header seen so far
  std::size_t declared = 0;
  std::size_t seen = 0;
  std::optional<std::pair<std::size_t, std::size_t>> previous;
  std::set<std::pair<std::size_t, std::size_t>> keys;

  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (!line.empty() && line[0] == '#') {
      continue;
    }
    auto w = split_words(line);
    if (w.empty()) {
      report(lineno, "empty line");
      continue;
    }
    std::string problem;
    if (header == 0) {
      auto n = w.size() == 3 ? parse_index(w[1]) : std::nullopt;
      auto m = w.size() == 3 ? parse_index(w[2]) : std::nullopt;
      if (w[0] != "QUBO" || !n || !m) {
        report(lineno, "expected 'QUBO <n> <m>'");
        return out;
      }
      out.qubo.n = *n;
      declared = *m;
      ++header;
      continue;
    }
    if (header == 1 || header == 2) {
      const char* key = header == 1 ? "OFFSET" : "SCALE";
      if (w.size() != 2 || w[0] != key) {
        report(lineno, std::string("expected '") + key + " <rational>'");
        return out;
      }
      auto r = parse_canonical(w[1], problem);
      if (!problem.empty()) {
        report(lineno, problem);
      }
      if (r) {
        (header == 1 ? out.qubo.offset : out.qubo.scale) = *r;
      }
      if (header == 2 && r && *r <= 0) {
        report(lineno, "scale must be positive");
      }
      ++header;
      continue;
    }
    ++seen;
    auto i = w.size() == 3 ? parse_index(w[0]) : std::nullopt;
    auto j = w.size() == 3 ? parse_index(w[1]) : std::nullopt;
    if (!i || !j) {
      report(lineno, "expected '<i> <j> <rational>'");
      continue;
    }
    auto r = parse_canonical(w[2], problem);
    if (!problem.empty()) {
      report(lineno, problem);
    }
    if (*i >= out.qubo.n || *j >= out.qubo.n) {
      report(lineno, "index out of range for n = " + std::to_string(out.qubo.n));
      continue;
    }
    if (*i > *j) {
      report(lineno, "lower-triangle entry (" + w[0] + ", " + w[1] + ")");
      continue;
    }
    std::pair key{*i, *j};
    if (!keys.insert(key).second) {
      report(lineno, "duplicate entry (" + w[0] + ", " + w[1] + ")");
      continue;
    }
    if (previous && key < *previous) {
      report(lineno, "entries are not sorted");
    }
    previous = key;
    if (r) {
      if (r->is_zero()) {
        report(lineno, "explicit zero entry");
        continue;
      }
      out.qubo.entries[key] = *r;
    }
  }
  if (header < 3) {
    report(lineno, "incomplete header");
  } else if (seen != declared) {
    report(lineno, "header declares " + std::to_string(declared) + " entries, found " +
                       std::to_string(seen));
  }
  return out;
}

}  // namespace

std::vector<std::string> check_qubo(std::string_view text) { return parse_qubo(text).diagnostics; }

Qubo read_qubo(std::string_view text) {
  Parsed p = parse_qubo(text);
  if (!p.diagnostics.empty()) {
    throw FormatError(p.diagnostics.front());
  }
  return std::move(p.qubo);
}

Domain parse_domain(std::string_view text) {
  auto as_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) {
      throw FormatError("malformed domain '" + std::string(text) + "'");
    }
    return v;
  };
  if (text.size() >= 2 && text.front() == '{' && text.back() == '}') {
    std::vector<std::int64_t> values;
    std::string_view body = text.substr(1, text.size() - 2);
    while (!body.empty()) {
      auto comma = body.find(',');
      values.push_back(as_int(body.substr(0, comma)));
      body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
    }
    if (values.empty()) {
      throw FormatError("empty domain");
    }
    return Domain::set(std::move(values));
  }
  auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    throw FormatError("malformed domain '" + std::string(text) + "'");
  }
  auto lo = as_int(text.substr(0, dots));
  auto hi = as_int(text.substr(dots + 2));
  if (lo > hi) {
    throw FormatError("empty domain '" + std::string(text) + "'");
  }
  return Domain::interval(lo, hi);
}

using Json = nlohmann::ordered_json;

std::string write_sidecar(const Sidecar& s) {
  Json doc;
  Json vars = Json::array();
  for (const auto& v : s.variables) {
    vars.push_back({{"id", v.id},
                    {"name", v.name},
                    {"kind", to_string(v.kind)},
                    {"domain", v.domain.str()},
                    {"live", v.live}});
  }
  doc["variables"] = std::move(vars);
  doc["qubo_index"] = s.qubo_index;
  Json subs = Json::array();
  for (const auto& sub : s.forest.entries()) {
    Json terms = Json::array();
    for (const auto& [var, c] : sub.expr.terms()) {
      terms.push_back({{"var", var}, {"coeff", c.str()}});
    }
    subs.push_back({{"target", sub.target}, {"terms", std::move(terms)},
                    {"constant", sub.expr.constant().str()}});
  }
  doc["substitutions"] = std::move(subs);
  doc["outputs"] = s.outputs;
  doc["objective_sense"] = to_string(s.objective_sense);
  doc["penalty_C"] = s.penalty.str();
  return doc.dump(2) + "\n";
}

Sidecar read_sidecar(std::string_view text) {
  Sidecar s;
  try {
    const Json doc = Json::parse(text);
    for (const auto& v : doc.at("variables")) {
      auto kind = var_kind_from_string(v.at("kind").get<std::string>());
      if (!kind) {
        throw FormatError("unknown variable kind '" + v.at("kind").get<std::string>() + "'");
      }
      Variable var{v.at("id").get<VarId>(), v.at("name").get<std::string>(),
                   parse_domain(v.at("domain").get<std::string>()), *kind,
                   v.at("live").get<bool>()};
      if (var.id != s.variables.size()) {
        throw FormatError("variable ids must be dense and in order");
      }
      s.variables.push_back(std::move(var));
    }
    const auto known = [&](VarId id) {
      if (id >= s.variables.size()) {
        throw FormatError("reference to unknown variable " + std::to_string(id));
      }
      return id;
    };
    for (const auto& id : doc.at("qubo_index")) {
      s.qubo_index.push_back(known(id.get<VarId>()));
    }
    for (const auto& sub : doc.at("substitutions")) {
      AffineExpr e(Rational::parse(sub.at("constant").get<std::string>()));
      for (const auto& t : sub.at("terms")) {
        e.add_term(known(t.at("var").get<VarId>()),
                   Rational::parse(t.at("coeff").get<std::string>()));
      }
      s.forest.add(known(sub.at("target").get<VarId>()), std::move(e));
    }
    for (const auto& id : doc.at("outputs")) {
      s.outputs.push_back(known(id.get<VarId>()));
    }
    auto sense = sense_from_string(doc.at("objective_sense").get<std::string>());
    if (!sense) {
      throw FormatError("unknown objective sense");
    }
    s.objective_sense = *sense;
    s.penalty = Rational::parse(doc.at("penalty_C").get<std::string>());
  } catch (const Json::exception& e) {
    throw FormatError(std::string("sidecar: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("sidecar: ") + e.what());
  }
  return s;
}

std::string format_solution(const Sidecar& sidecar, const Assignment& values,
                            const Rational& energy) {
  std::ostringstream os;
  for (VarId v : sidecar.outputs) {
    os << sidecar.variables.at(v).name << " = " << values.at(v) << ";\n";
  }
  os << "% energy = " << energy.str() << '\n';
  return os.str();
}

}  // namespace fdqubo
