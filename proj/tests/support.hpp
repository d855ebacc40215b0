#pragma once

#include <random>

#include "pyjama/gaussian.hpp"

namespace testing_support {

using namespace pyjama;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline GaussianInt random_gaussian(long bound) {
  return GaussianInt(uniform(-bound, bound), uniform(-bound, bound));
}

// g / (p5bar^e5 p13bar^e13) with 0 <= e <= max_exp.
inline GaussianRational random_A(long bound, long max_exp) {
  const GaussianInt den = p5bar().pow(static_cast<unsigned long>(uniform(0, max_exp))) *
                          p13bar().pow(static_cast<unsigned long>(uniform(0, max_exp)));
  return GaussianRational(random_gaussian(bound)) / GaussianRational(den);
}

// Nonzero element of Q(i) whose denominator mixes all four sites and small rational primes.
inline GaussianRational random_nonzero(long bound) {
  GaussianInt g;
  do g = random_gaussian(bound);
  while (g.is_zero());
  GaussianInt den(uniform(1, 6));
  for (const GaussianInt& pi : {p5(), p5bar(), p13(), p13bar()})
    den *= pi.pow(static_cast<unsigned long>(uniform(0, 2)));
  GaussianInt num = g;
  for (const GaussianInt& pi : {p5(), p5bar(), p13(), p13bar()})
    num *= pi.pow(static_cast<unsigned long>(uniform(0, 1)));
  return GaussianRational(num) / GaussianRational(den);
}

}  // namespace testing_support
