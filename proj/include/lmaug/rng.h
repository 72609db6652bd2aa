// lmaug/rng.h

// Copyright 2026  lmaug authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef LMAUG_RNG_H_
#define LMAUG_RNG_H_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace lmaug {

// std::uniform_*_distribution and std::shuffle are implementation-defined,
// so everything that must reproduce across platforms draws from the raw
// mt19937_64 stream through these helpers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t Next() { return gen_(); }

  /// Uniform integer in [0, n); n > 0.
  std::uint64_t Below(std::uint64_t n) {
    std::uint64_t threshold = (0 - n) % n;
    while (true) {
      std::uint64_t r = gen_();
      if (r >= threshold) return r % n;
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Index drawn proportionally to `cumulative` (a non-decreasing running
  /// sum of non-negative weights whose last element is positive).
  std::size_t Pick(const std::vector<double> &cumulative) {
    double r = Uniform() * cumulative.back();
    std::size_t lo = 0, hi = cumulative.size() - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (cumulative[mid] > r)
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  }

  template <class T>
  void Shuffle(std::vector<T> *v) {
    for (std::size_t i = v->size(); i > 1; --i)
      std::swap((*v)[i - 1], (*v)[Below(i)]);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace lmaug

#endif  // LMAUG_RNG_H_
