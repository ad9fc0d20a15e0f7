#include "fdqubo/pipeline.hpp"

#include "fdqubo/canonicalize.hpp"
#include "fdqubo/deinequalify.hpp"

namespace fdqubo {

StageStats stage_stats(const std::string& stage, const QipModel& model) {
  return {stage, model.live_variables().size(), model.linear.size(), model.products.size(),
          model.forest.size()};
}

Outcome<Compiled> compile(const QipModel& raw, const CompileOptions& options) {
  Compiled out;
  out.stats.push_back(stage_stats("raw", raw));

  auto eq = eliminate_inequalities(raw);
  if (!eq) {
    return eq.inconsistent();
  }
  QipModel m = std::move(eq).value();
  out.stats.push_back(stage_stats("no-inequalities", m));

  // Fixing variables can enable further pruning, so alternate until stable.
  while (true) {
    FixpointStats fs;
    auto pruned = fixpoint(m, &fs, options.fixpoint_cap);
    if (!pruned) {
      return pruned.inconsistent();
    }
    out.propagation.rounds += fs.rounds;
    out.propagation.cap_hit = out.propagation.cap_hit || fs.cap_hit;
    auto reduced = eliminate_singletons(pruned.value());
    if (!reduced) {
      return reduced.inconsistent();
    }
    const bool changed = reduced->forest.size() != m.forest.size();
    m = std::move(reduced).value();
    if (!changed) {
      break;
    }
  }
  out.stats.push_back(stage_stats("propagated", m));

  m = canonicalize_all(m);
  out.stats.push_back(stage_stats("canonical", m));

  auto bin = binarize_all(m, options.encoding);
  if (!bin) {
    return bin.inconsistent();
  }
  m = std::move(bin).value();
  out.stats.push_back(stage_stats("binary", m));

  auto assembled = assemble(m, AssembleOptions{options.penalty});
  if (!assembled) {
    return assembled.inconsistent();
  }
  out.model = std::move(m);
  out.qubo = std::move(assembled->qubo);
  out.sidecar = std::move(assembled->sidecar);
  return out;
}

double matrix_density(const Qubo& q) {
  if (q.n == 0) {
    return 0.0;
  }
  return static_cast<double>(q.entries.size()) / (static_cast<double>(q.n) * (q.n + 1) / 2.0);
}

}  // namespace fdqubo
