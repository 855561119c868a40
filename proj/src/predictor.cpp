#include "ontorules/predictor.hpp"

#include <limits>

namespace ontorules {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b) {
        throw OverflowError("integer overflow in " + std::to_string(a) + " + " +
                            std::to_string(b));
    }
    return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        throw OverflowError("integer overflow in " + std::to_string(a) + " * " +
                            std::to_string(b));
    }
    return a * b;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        result = checked_mul(result, base);
    }
    return result;
}

std::string Term::label() const {
    return "c" + std::to_string(coefficient) + "n" + std::to_string(leaf_count) +
           "r" + std::to_string(rule_count);
}

std::uint64_t predict_regular(std::uint64_t parents, std::uint64_t leaves,
                              std::uint64_t states) {
    if (parents < 1 || leaves < 1 || states < 1) {
        throw ValidationError("predict_regular needs parents, leaves and states >= 1");
    }
    return checked_add(checked_mul(parents, checked_pow(states, leaves)), 1);
}

Prediction predict_polynomial(const OntologyTree& tree) {
    Prediction prediction;
    std::uint64_t total = prediction.default_rules;
    std::size_t index = 1;
    for (const auto& parent : parent_classes(tree)) {
        Term term;
        term.index = index++;
        term.parent = parent.id;
        term.leaf_count = parent.leaves.size();
        term.rule_count = checked_pow(tree.states, term.leaf_count);
        total = checked_add(total, term.rule_count);
        prediction.terms.push_back(std::move(term));
    }
    prediction.total = total;
    return prediction;
}

std::vector<Term> decompose(const OntologyTree& tree) {
    return predict_polynomial(tree).terms;
}

EquivalenceReport check_regular_equivalence(const OntologyTree& tree) {
    EquivalenceReport report;
    report.polynomial_total = predict_polynomial(tree).total;
    const Regularity shape = is_regular(tree);
    if (!shape.regular) {
        return report;
    }
    report.applicable = true;
    report.regular_formula_total =
        predict_regular(shape.parents, shape.leaves_each, tree.states);
    report.equal = report.polynomial_total == report.regular_formula_total;
    return report;
}

std::vector<PlotPoint> plot_points(const OntologyTree& tree) {
    const Prediction prediction = predict_polynomial(tree);
    std::vector<PlotPoint> points;
    points.reserve(prediction.terms.size());
    std::uint64_t running = prediction.default_rules;
    for (const auto& term : prediction.terms) {
        running = checked_add(running, term.rule_count);
        points.push_back(
            {term.index, term.parent, term.leaf_count, term.rule_count, running});
    }
    return points;
}

} // namespace ontorules
