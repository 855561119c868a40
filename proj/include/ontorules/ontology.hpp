#pragma once

// Prerequisite ontology trees: parsing, validation and structural queries.
//
// A concept node with at least one leaf child is a "parent class"; its leaf
// children are the units a learner gets assessed on. A node may own both leaf
// and internal children, in which case only its leaf children count towards
// its parent-class entry. The optional prerequisite map links a concept to
// the parent-class concept that must be mastered first; the single concept
// without a prerequisite is the ground concept.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ontorules/errors.hpp"

namespace ontorules {

// Normalized identifier: lowercase letters, digits, underscore; nonempty.
using ConceptId = std::string;

struct ConceptNode {
    ConceptId id;
    std::string label;  // optional display text, empty when absent
    std::vector<ConceptNode> children;

    bool is_leaf() const { return children.empty(); }
};

struct ParentClass {
    ConceptId id;
    std::vector<ConceptId> leaves;  // direct leaf children, document order
};

struct OntologyTree {
    ConceptNode root;
    std::uint64_t states = 2;  // assessment states per leaf, pass is the highest
    std::map<ConceptId, ConceptId> prerequisites;  // concept -> its prerequisite
    std::map<ConceptId, std::string> materials;    // concept -> material URL

    bool has_prerequisites() const { return !prerequisites.empty(); }
};

struct Regularity {
    bool regular = false;
    std::size_t parents = 0;      // C, meaningful when regular
    std::size_t leaves_each = 0;  // N, meaningful when regular
};

// Lowercases and maps '-' to '_', then checks the [a-z0-9_]+ shape.
ConceptId normalize_id(std::string_view raw);

// Validating constructor; every invariant is checked here. parse_tree feeds
// into this after reading the JSON document.
OntologyTree make_tree(ConceptNode root,
                       std::uint64_t states = 2,
                       std::map<ConceptId, ConceptId> prerequisites = {},
                       std::map<ConceptId, std::string> materials = {});

OntologyTree parse_tree(std::string_view source);
OntologyTree parse_tree_file(const std::string& path);

// One entry per node having >= 1 leaf child, in pre-order (children in
// document order). Nodes whose children are all internal do not appear.
std::vector<ParentClass> parent_classes(const OntologyTree& tree);

// Regular iff there is at least one parent class and all of them share the
// same leaf count.
Regularity is_regular(const OntologyTree& tree);

// The unique parent-class concept without a prerequisite. Requires a
// nonempty prerequisite map.
ConceptId ground_concept(const OntologyTree& tree);

// Root maps to 1, each child to its parent's level + 1.
std::map<ConceptId, int> levels(const OntologyTree& tree);

// Concepts whose prerequisite is `concept_id`, ordered by pre-order position.
std::vector<ConceptId> successors(const OntologyTree& tree,
                                  const ConceptId& concept_id);

const ConceptNode* find_node(const ConceptNode& root, const ConceptId& id);

} // namespace ontorules
