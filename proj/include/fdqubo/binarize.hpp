#pragma once

#include <cstdint>
#include <vector>

#include "fdqubo/model.hpp"

namespace fdqubo {

enum class EncodingStrategy { automatic, onehot, binary };
enum class BinaryRule { recursive, coefficient };
enum class Encoding { onehot, binary };

struct EncodingConfig {
  EncodingStrategy strategy = EncodingStrategy::automatic;
  /// `automatic` picks one-hot for domains of at most this many values.
  std::uint64_t onehot_threshold = 4;
  BinaryRule binary_rule = BinaryRule::coefficient;
  /// Substitute variables that an equation or a product already determines
  /// instead of giving them bits of their own.
  bool eliminate_defined = true;
  /// Keep the `b_p * b_r` cross products when squaring a one-hot variable.
  /// They vanish whenever exactly one bit is set, so they are off by default.
  bool onehot_cross_products = false;
};

/// Bit weights whose subset sums are exactly {0, ..., max}. `coefficient`
/// gives 1, 2, ..., 2^(k-1), max - (2^k - 1) with k = floor(log2 max);
/// `recursive` keeps the powers and re-encodes the remainder the same way.
/// Throws std::invalid_argument for max < 2.
std::vector<std::int64_t> binary_encode_coeffs(std::int64_t max, BinaryRule rule);

/// Throws std::invalid_argument when binary is forced on a domain with holes
/// or the threshold is below 2.
Encoding choose_strategy(const Domain& domain, const EncodingConfig& config);

/// x := sum d_p * b_p over the h >= 3 domain values plus `sum b_p - 1 = 0`.
QipModel onehot_encode(const QipModel& model, VarId var, const EncodingConfig& config = {});

/// x := sum v_s * b_s for D(x) = [0, M], M >= 2.
QipModel binary_encode(const QipModel& model, VarId var, BinaryRule rule,
                       const EncodingConfig& config = {});

/// Substitutes a variable y out of an equation `y = e` when e has integer
/// coefficients and its range lies inside the interval D(y), so the domain
/// of y holds automatically. Repeats until nothing applies.
QipModel eliminate_defined(const QipModel& model);

/// Encodes every non-binary variable; products end up over bits only and
/// `y = b * b` collapses to `y := b`. Result stage is binary.
Outcome<QipModel> binarize_all(const QipModel& model, const EncodingConfig& config = {});

std::string to_string(EncodingStrategy strategy);
std::string to_string(BinaryRule rule);

}  // namespace fdqubo
