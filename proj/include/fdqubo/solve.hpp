#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "fdqubo/qubo.hpp"

namespace fdqubo {

/// A search space is larger than the configured limit.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sparse form: sum over stored entries of Q_ij b_i b_j, plus offset.
/// Throws std::invalid_argument on a length mismatch.
Rational energy(const Qubo& q, const Bits& bits);

/// Dense double sum over the full n x n upper-triangular matrix, plus offset.
Rational energy_dense(const Qubo& q, const Bits& bits);

constexpr std::size_t kExhaustiveLimit = 25;

struct ExhaustiveResult {
  Rational energy;
  /// Smallest argmin when the bits are read as a number with bit 0 first.
  Bits argmin;
  std::uint64_t argmin_count = 0;
};

/// Exact minimum over all 2^n assignments, visited in Gray-code order.
/// Throws GuardExceeded for n > limit.
ExhaustiveResult exhaustive_qubo(const Qubo& q, std::size_t limit = kExhaustiveLimit);

struct AnnealParams {
  std::uint64_t seed = 0;
  std::uint32_t sweeps = 2000;
  std::uint32_t restarts = 8;
  /// Defaults to 10 * max |Q_ij|.
  std::optional<double> t_initial;
  double t_final = 0.01;
};

struct AnnealResult {
  /// Exact energy of `bits`.
  Rational energy;
  Bits bits;
};

/// Single-flip Metropolis with geometric cooling, best over all restarts.
/// Deterministic for fixed parameters. Throws std::invalid_argument for
/// n = 0 or a schedule that does not cool.
AnnealResult anneal_qubo(const Qubo& q, const AnnealParams& params = {});

}  // namespace fdqubo
