#pragma once

#include <cstdint>

#include "gramor/matrix.hpp"

namespace gramor {

// Counter-based uniform generator built on the splitmix64 finalizer.
// Draw k of stream s under seed q is a pure function of (q, s, k), so any
// matrix entry is reproducible in isolation and independent of evaluation
// order or thread count.
//
//   mix(z)            = splitmix64 finalizer of z
//   key(q, s)         = mix(mix(q) xor (GOLDEN * (s + 1)))
//   raw(q, s, k)      = mix(key + GOLDEN * k)
//   uniform01(q,s,k)  = (raw >> 11) * 2^-53            in [0, 1)
//
// with GOLDEN = 0x9E3779B97F4A7C15.
struct CounterRng {
  std::uint64_t key;

  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t raw(std::uint64_t k) const;
  double uniform01(std::uint64_t k) const;                      // [0, 1)
  double uniform(std::uint64_t k, double lo, double hi) const;  // [lo, hi)
};

// rows x cols matrix with i.i.d. U(lo, hi) entries in row-major draw order.
Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed,
                     std::uint64_t stream, double lo, double hi);

}  // namespace gramor
