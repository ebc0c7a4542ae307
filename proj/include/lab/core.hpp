#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lab {

// Raised when a configured size budget (node count, automaton states,
// canonicalization size) would be exceeded.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an algorithm breaks a model contract (labels the wrong node,
// changes labels outside the permitted region, reads beyond its view).
struct contract_error : std::runtime_error {
    explicit contract_error(const std::string& what) : std::runtime_error(what) {}
};

// Global size budgets. LOCALITY_LAB_BUDGET overrides max_nodes.
struct Budget {
    long long max_nodes = 2'000'000;   // total nodes any construction may allocate
    int canonical_nodes = 64;          // general-graph canonicalization limit
    int automaton_states = 64;
    long long search_steps = 20'000'000;
};

Budget& budget();

}  // namespace lab
