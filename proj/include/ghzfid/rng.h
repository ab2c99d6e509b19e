// Copyright 2026 The ghzfid Authors
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

#ifndef GHZFID_RNG_H
#define GHZFID_RNG_H

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace ghzfid {

/// Seedable random stream: std::mt19937_64 initialized through
/// std::seed_seq from a root seed and a path of stream ids. Two streams
/// with the same (seed, path) produce identical draws; different paths are
/// statistically independent. Work items keyed by (seed, trial, copy, ...)
/// therefore reproduce regardless of which thread runs them.
class Rng {
   public:
    explicit Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> path = {});

    /// A child stream identified by `id` under this stream's path.
    Rng split(std::uint64_t id) const;

    /// Uniform in [0, 1).
    double uniform();
    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);
    bool bernoulli(double p) { return uniform() < p; }

    std::mt19937_64 &engine() { return engine_; }

   private:
    Rng(std::uint64_t seed, std::vector<std::uint64_t> path);

    std::uint64_t seed_;
    std::vector<std::uint64_t> path_;
    std::mt19937_64 engine_;
};

}  // namespace ghzfid

#endif  // GHZFID_RNG_H
