#include "gramor/rng.hpp"

namespace gramor {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key(mix(mix(seed) ^ (kGolden * (stream + 1)))) {}

std::uint64_t CounterRng::raw(std::uint64_t k) const { return mix(key + kGolden * k); }

double CounterRng::uniform01(std::uint64_t k) const {
  return static_cast<double>(raw(k) >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(std::uint64_t k, double lo, double hi) const {
  return lo + (hi - lo) * uniform01(k);
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed,
                     std::uint64_t stream, double lo, double hi) {
  CounterRng rng(seed, stream);
  Matrix a(rows, cols);
  for (std::size_t k = 0; k < a.data.size(); ++k) a.data[k] = rng.uniform(k, lo, hi);
  return a;
}

}  // namespace gramor
