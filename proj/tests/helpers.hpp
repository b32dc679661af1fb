#pragma once

#include <gtest/gtest.h>

#include "phip/chain.hpp"
#include "phip/error.hpp"

namespace testing_util {

inline phip::MarkovChain swap2() {
  phip::Matrix P(2, 2);
  P(0, 1) = P(1, 0) = 1.0;
  return phip::MarkovChain::from_transition(P);
}

inline phip::MarkovChain directed_cycle(std::size_t n) {
  phip::WeightedGraph g{n, {}, true, false};
  for (std::size_t i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n, 1.0});
  return phip::chain_from_directed(g);
}

template <class F>
phip::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const phip::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected phip::Error";
  return phip::ErrorCode::IoError;
}

}  // namespace testing_util
