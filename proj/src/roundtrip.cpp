#include "fdqubo/roundtrip.hpp"

namespace fdqubo {

Rational energy_to_objective(const Qubo& q, const Rational& energy) { return energy * q.scale; }

RoundtripReport roundtrip_check(const QipModel& raw, const CompileOptions& options,
                                std::size_t bit_limit, std::uint64_t oracle_limit) {
  RoundtripReport r;
  const OracleResult oracle = brute_force_qip(raw, oracle_limit);
  r.oracle_feasible = oracle.feasible;
  if (oracle.feasible) {
    r.oracle_objective = oracle.objective;
  }

  auto compiled = compile(raw, options);
  if (!compiled) {
    r.inconsistent = compiled.inconsistent().reason;
    r.pass = !oracle.feasible;
    return r;
  }
  r.stages = compiled->stats;
  const Qubo& q = compiled->qubo;
  r.bits = q.n;

  const ExhaustiveResult best = exhaustive_qubo(q, bit_limit);
  r.min_energy = best.energy;
  r.argmin_count = best.argmin_count;

  const Assignment decoded = decode(compiled->sidecar, best.argmin);
  Assignment point;
  for (VarId v : raw.live_variables()) {
    point[v] = decoded.at(v);
  }
  const PointCheck check = check_point(raw, point);
  r.decoded_feasible = check.feasible;
  r.decoded_violation = check.violation;
  if (check.feasible) {
    r.decoded_objective = check.objective;
  }

  if (oracle.feasible) {
    r.objective_match = check.feasible && check.objective == oracle.objective &&
                        energy_to_objective(q, best.energy) == oracle.objective;
    r.pass = r.objective_match;
  } else {
    r.pass = !check.feasible;
  }
  return r;
}

}  // namespace fdqubo
