#pragma once

// Brute-force rule counting, kept independent of the library's closed forms:
// walk the raw node tree, materialize every outcome vector of every node
// that has leaf children, count distinct vectors, add one for the default.

#include <cstdint>
#include <set>
#include <vector>

#include "ontorules/ontology.hpp"

namespace testsupport {

inline std::uint64_t node_vector_count(const ontorules::ConceptNode& node,
                                       std::uint64_t states) {
    std::uint64_t total = 0;

    std::size_t leaves = 0;
    for (const auto& child : node.children) {
        if (child.children.empty()) {
            ++leaves;
        }
    }
    if (leaves > 0) {
        std::set<std::vector<std::uint32_t>> vectors;
        std::vector<std::uint32_t> current(leaves, 0);
        while (true) {
            vectors.insert(current);
            std::size_t pos = 0;
            while (pos < leaves && ++current[pos] == states) {
                current[pos] = 0;
                ++pos;
            }
            if (pos == leaves) {
                break;
            }
        }
        total += vectors.size();
    }

    for (const auto& child : node.children) {
        if (!child.children.empty()) {
            total += node_vector_count(child, states);
        }
    }
    return total;
}

inline std::uint64_t brute_force_rule_count(const ontorules::OntologyTree& tree) {
    return node_vector_count(tree.root, tree.states) + 1;
}

} // namespace testsupport
