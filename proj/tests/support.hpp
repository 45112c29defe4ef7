#pragma once

#include "tleak/markov.hpp"

namespace tleak::test {

inline MarkovChain custom_chain(Matrix transitions) {
    MarkovChain chain;
    chain.size = static_cast<int>(transitions.rows());
    chain.initial_dist = Vector::Constant(chain.size, 1.0 / chain.size);
    chain.steady_dist = steady_state(transitions);
    chain.transitions = std::move(transitions);
    return chain;
}

inline MarkovChain identity_chain(int n) { return custom_chain(Matrix::Identity(n, n)); }

// 1 -> 2 -> ... -> n -> 1 deterministically.
inline MarkovChain cyclic_chain(int n) {
    Matrix P = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) P(i, (i + 1) % n) = 1.0;
    return custom_chain(std::move(P));
}

// Two states trading places every step.
inline MarkovChain swap_chain() {
    Matrix P(2, 2);
    P << 0, 1, 1, 0;
    return custom_chain(std::move(P));
}

}  // namespace tleak::test
