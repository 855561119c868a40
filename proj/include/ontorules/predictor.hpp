#pragma once

// Closed-form rule-count prediction.
//
// Every parent class with N leaves contributes one term of T^N candidate
// rules; the single default rule for the ground concept adds the constant 1.
// A regular tree (C parents, N leaves each) collapses to C*T^N + 1.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ontorules/ontology.hpp"

namespace ontorules {

// Overflow-checked 64-bit helpers. Counts are cardinalities and must stay
// exact; any wrap raises OverflowError.
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp);

struct Term {
    std::size_t index = 0;  // 1-based pre-order position among parent classes
    ConceptId parent;
    std::uint64_t coefficient = 1;  // always 1, one term per parent class
    std::size_t leaf_count = 0;     // N
    std::uint64_t rule_count = 0;   // T^N

    // "c1n4r16" style.
    std::string label() const;
};

struct Prediction {
    std::vector<Term> terms;
    std::uint64_t default_rules = 1;
    std::uint64_t total = 0;  // default_rules + sum of term rule counts
};

struct EquivalenceReport {
    bool applicable = false;  // tree is regular
    std::uint64_t polynomial_total = 0;
    std::uint64_t regular_formula_total = 0;  // meaningful when applicable
    bool equal = false;                       // meaningful when applicable
};

struct PlotPoint {
    std::size_t index = 0;  // term position x
    ConceptId parent;
    std::size_t leaf_count = 0;
    std::uint64_t term_count = 0;  // T^N of this term
    std::uint64_t cumulative = 0;  // running total, the constant 1 included
};

// C*T^N + 1 for a regular tree. All arguments must be >= 1.
std::uint64_t predict_regular(std::uint64_t parents, std::uint64_t leaves,
                              std::uint64_t states);

// 1 + sum of T^N over all parent classes, one term each, pre-order.
// A tree without parent classes predicts exactly the default rule.
Prediction predict_polynomial(const OntologyTree& tree);

std::vector<Term> decompose(const OntologyTree& tree);

// On a regular tree both closed forms must agree.
EquivalenceReport check_regular_equivalence(const OntologyTree& tree);

// Running totals per term; the last point equals the predicted total.
std::vector<PlotPoint> plot_points(const OntologyTree& tree);

} // namespace ontorules
