#pragma once

#include <string>
#include <vector>

#include "readiness/error.hpp"
#include "readiness/matrix.hpp"
#include "readiness/random.hpp"

#ifndef READINESS_TEST_DATA
#define READINESS_TEST_DATA "tests/data"
#endif

inline std::string data_path(const std::string& name) {
  return std::string(READINESS_TEST_DATA) + "/" + name;
}

// Runs fn and returns the library error code it raised, or Ok.
template <class Fn>
readiness::ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const readiness::Error& e) {
    return e.code();
  }
  return readiness::ErrorCode::Ok;
}

inline readiness::Matrix uniform_matrix(readiness::Rng& rng, std::size_t n, std::size_t m,
                                        double lo = 1, double hi = 10) {
  readiness::Matrix x(n, m);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < m; ++c) x(r, c) = rng.uniform(lo, hi);
  return x;
}
