#include "fdqubo/solve.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <random>

namespace fdqubo {

namespace {

void check_length(const Qubo& q, const Bits& bits) {
  if (bits.size() != q.n) {
    throw std::invalid_argument("expected " + std::to_string(q.n) + " bits, got " +
                                std::to_string(bits.size()));
  }
}

}  // namespace

Rational energy(const Qubo& q, const Bits& bits) {
  check_length(q, bits);
  Rational sum = q.offset;
  for (const auto& [ij, w] : q.entries) {
    if (bits[ij.first] != 0 && bits[ij.second] != 0) {
      sum += w;
    }
  }
  return sum;
}

Rational energy_dense(const Qubo& q, const Bits& bits) {
  check_length(q, bits);
  std::vector<std::vector<Rational>> dense(q.n, std::vector<Rational>(q.n));
  for (const auto& [ij, w] : q.entries) {
    dense[ij.first][ij.second] = w;
  }
  Rational sum = q.offset;
  for (std::size_t i = 0; i < q.n; ++i) {
    for (std::size_t j = 0; j < q.n; ++j) {
      sum += dense[i][j] * Rational(bits[i] * bits[j]);
    }
  }
  return sum;
}

namespace {

using Wide = __int128;

/// Entries times the common denominator, as exact integers.
struct IntegerQubo {
  Integer denominator{1};
  std::vector<Wide> diagonal;
  std::vector<std::vector<std::pair<std::size_t, Wide>>> neighbours;
};

Wide to_wide(const Integer& v) {
  const Integer limit = Integer(1) << 100;
  if (abs(v) >= limit) {
    throw std::overflow_error("QUBO weight too large for exhaustive search");
  }
  // Split into high and low 50-bit halves to stay within mpz's long range.
  Integer hi = v >> 50;
  Integer lo = v - (hi << 50);
  return (static_cast<Wide>(hi.get_si()) << 50) + static_cast<Wide>(lo.get_si());
}

IntegerQubo integerize(const Qubo& q) {
  IntegerQubo iq;
  for (const auto& [ij, w] : q.entries) {
    iq.denominator = lcm(iq.denominator, w.denominator());
  }
  iq.diagonal.assign(q.n, 0);
  iq.neighbours.resize(q.n);
  for (const auto& [ij, w] : q.entries) {
    Wide v = to_wide((w * Rational(iq.denominator)).numerator());
    if (ij.first == ij.second) {
      iq.diagonal[ij.first] = v;
    } else {
      iq.neighbours[ij.first].emplace_back(ij.second, v);
      iq.neighbours[ij.second].emplace_back(ij.first, v);
    }
  }
  return iq;
}

Rational from_wide(Wide v, const Integer& denominator) {
  bool negative = v < 0;
  unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(v) : v;
  Integer hi(static_cast<unsigned long>(mag >> 64));
  Integer lo(static_cast<unsigned long>(mag & 0xFFFFFFFFFFFFFFFFULL));
  Integer out = (hi << 64) + lo;
  if (negative) {
    out = -out;
  }
  return Rational(out, denominator);
}

}  // namespace

ExhaustiveResult exhaustive_qubo(const Qubo& q, std::size_t limit) {
  if (q.n > limit) {
    throw GuardExceeded("exhaustive search over " + std::to_string(q.n) +
                        " bits exceeds the limit of " + std::to_string(limit) +
                        "; use annealing instead");
  }
  const IntegerQubo iq = integerize(q);
  const std::size_t n = q.n;
  std::vector<Wide> field(n, 0);  // sum of Q_kj b_j over set neighbours j
  std::uint64_t mask = 0;
  Wide current = 0;
  Wide best = 0;
  std::uint64_t best_mask = 0;
  std::uint64_t count = 1;

  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const auto k = static_cast<std::size_t>(__builtin_ctzll(step));
    const bool on = ((mask >> k) & 1U) == 0;
    const Wide delta = iq.diagonal[k] + field[k];
    current += on ? delta : -delta;
    mask ^= std::uint64_t{1} << k;
    for (const auto& [j, w] : iq.neighbours[k]) {
      field[j] += on ? w : -w;
    }
    if (current < best) {
      best = current;
      best_mask = mask;
      count = 1;
    } else if (current == best) {
      ++count;
      if (mask < best_mask) {
        best_mask = mask;
      }
    }
  }

  ExhaustiveResult r;
  r.energy = from_wide(best, iq.denominator) + q.offset;
  r.argmin.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.argmin[i] = static_cast<std::uint8_t>((best_mask >> i) & 1U);
  }
  r.argmin_count = count;
  return r;
}

AnnealResult anneal_qubo(const Qubo& q, const AnnealParams& params) {
  if (q.n == 0) {
    throw std::invalid_argument("annealing needs at least one variable");
  }
  const std::size_t n = q.n;
  std::vector<double> diagonal(n, 0.0);
  std::vector<std::vector<std::pair<std::size_t, double>>> neighbours(n);
  double largest = 0.0;
  for (const auto& [ij, w] : q.entries) {
    double v = w.to_double();
    largest = std::max(largest, std::abs(v));
    if (ij.first == ij.second) {
      diagonal[ij.first] = v;
    } else {
      neighbours[ij.first].emplace_back(ij.second, v);
      neighbours[ij.second].emplace_back(ij.first, v);
    }
  }
  const double t0 = params.t_initial.value_or(10.0 * std::max(largest, 1.0));
  const double t1 = params.t_final;
  if (!(t1 > 0.0) || !(t0 > t1) || params.sweeps == 0 || params.restarts == 0) {
    throw std::invalid_argument("annealing needs t_initial > t_final > 0 and positive counts");
  }
  const double ratio =
      params.sweeps > 1 ? std::pow(t1 / t0, 1.0 / static_cast<double>(params.sweeps - 1)) : 1.0;

  std::optional<AnnealResult> best;
  for (std::uint32_t restart = 0; restart < params.restarts; ++restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(params.seed),
                      static_cast<std::uint32_t>(params.seed >> 32), restart};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Bits bits(n);
    for (auto& b : bits) {
      b = static_cast<std::uint8_t>(rng() & 1U);
    }
    std::vector<double> field(n, 0.0);
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (bits[i] == 0) {
        continue;
      }
      e += diagonal[i];
      for (const auto& [j, w] : neighbours[i]) {
        field[j] += w;
        if (bits[j] != 0 && j > i) {
          e += w;
        }
      }
    }
    Bits local_best = bits;
    double local_e = e;

    double t = t0;
    for (std::uint32_t sweep = 0; sweep < params.sweeps; ++sweep, t *= ratio) {
      for (std::size_t k = 0; k < n; ++k) {
        const bool on = bits[k] == 0;
        const double delta = on ? diagonal[k] + field[k] : -(diagonal[k] + field[k]);
        if (delta > 0.0 && unit(rng) >= std::exp(-delta / t)) {
          continue;
        }
        bits[k] ^= 1U;
        e += delta;
        for (const auto& [j, w] : neighbours[k]) {
          field[j] += on ? w : -w;
        }
        if (e < local_e - 1e-9) {
          local_e = e;
          local_best = bits;
        }
      }
    }
    AnnealResult candidate{energy(q, local_best), local_best};
#ifndef NDEBUG
    assert(std::abs((energy(q, bits) - q.offset).to_double() - e) <=
           1e-6 * std::max(1.0, std::abs(e)));
#endif
    if (!best || candidate.energy < best->energy) {
      best = std::move(candidate);
    }
  }
  return *best;
}

}  // namespace fdqubo
