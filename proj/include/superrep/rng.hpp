// Copyright 2026 The superrep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

namespace superrep {

// SplitMix64 finalizer; used to derive independent per-sample seeds.
std::uint64_t mix64(std::uint64_t x);

/// A seeded random stream. Child streams are derived from (seed, index) by
/// counter-based mixing, so sample i always sees the same numbers no matter
/// which worker draws it or in which order samples are processed.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed = 0);

  static RngStream derive(std::uint64_t master_seed, std::uint64_t index);
  RngStream child(std::uint64_t index) const { return derive(seed_, index); }

  std::uint64_t seed() const { return seed_; }

  double uniform();  // [0, 1)
  double normal();   // standard normal
  std::uint64_t next_u64() { return engine_(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

// Worker count used by Monte Carlo loops; 0 means hardware concurrency.
void set_default_threads(unsigned n);
unsigned default_threads();

/// Evaluates fn(i) for i in [0, n) across workers and returns the results in
/// index order, so any later reduction is deterministic.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn fn, unsigned threads = 0) {
  std::vector<T> out(n);
  unsigned workers = threads ? threads : default_threads();
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  if (workers > n) workers = static_cast<unsigned>(n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) out[i] = fn(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace superrep
