// Copyright 2026 The kxdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KXDYN_RANDOM_H_
#define KXDYN_RANDOM_H_

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace kxdyn {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Order-sensitive hash of a short word sequence.
constexpr std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x6a09e667f3bcc908ULL;
  for (std::uint64_t w : words) h = mix64(h ^ mix64(w));
  return h;
}

// Maps the top 53 bits of a word onto [0, 1).
inline double unit_double(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Seed of one Monte Carlo trial. A pure function of its arguments so that
// worker scheduling cannot change any draw.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  return hash_words({master, a, b, c});
}

// Counter-based stream: the i-th draw is mix64(key + i * gamma). Copies are
// independent cursors over the same sequence.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t key) : state_(mix64(key)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() { return unit_double((*this)()); }

  bool bernoulli(double p) { return uniform() < p; }

  // Number of failures before the next success of a Bernoulli(p) sequence.
  // Saturates at `cap` so callers can stop scanning past a range end.
  std::int64_t geometric_skip(double p, std::int64_t cap) {
    if (p >= 1.0) return 0;
    if (p <= 0.0) return cap;
    const double u = 1.0 - uniform();  // (0, 1]
    const double skip = std::floor(std::log(u) / std::log1p(-p));
    return skip >= static_cast<double>(cap) ? cap
                                            : static_cast<std::int64_t>(skip);
  }

 private:
  std::uint64_t state_;
};

}  // namespace kxdyn

#endif  // KXDYN_RANDOM_H_
