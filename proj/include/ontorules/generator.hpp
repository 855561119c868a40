#pragma once

// Complete rule-set generation and plan compilation.
//
// For each parent class every pass/fail combination over its leaves becomes
// one classification rule, in canonical order: a combination is read as a
// base-T number (first leaf most significant, pass = T-1) and combinations
// are emitted in descending numeric order, so all-pass comes first and
// all-fail last. The default rule for the ground concept is appended after
// all parent-class rules.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ontorules/ontology.hpp"
#include "ontorules/predictor.hpp"

namespace ontorules {

// A state is an index in [0, T); the highest index means "pass".
struct OutcomeVector {
    std::vector<std::uint32_t> states;  // aligned with the parent's leaf order
};

enum class RuleKind { Advance, Remediate, Default };

std::string to_string(RuleKind kind);

// "P" for the pass state, "F" for fail when T = 2; other states print as
// their decimal index.
std::string state_symbol(std::uint32_t state, std::uint64_t states);

// Inverse of state_symbol; also accepts plain decimal indices.
std::uint32_t parse_state_symbol(std::string_view symbol, std::uint64_t states);

struct RuleCondition {
    ConceptId leaf;
    std::uint32_t state = 0;
};

struct ClassificationRule {
    std::string id;       // "<parent>#<combination>", the default rule is "default"
    ConceptId parent;     // empty for the default rule
    std::size_t combination = 0;  // 1-based canonical position, 0 for default
    RuleKind kind = RuleKind::Default;
    std::vector<RuleCondition> conditions;       // empty for the default rule
    std::vector<std::string> recommendations;    // see generate_rules

    bool all_pass(std::uint64_t states) const;
};

struct RuleSet {
    std::vector<ClassificationRule> rules;
    Prediction prediction;
};

struct CountCheck {
    struct PerParent {
        ConceptId parent;
        std::uint64_t predicted = 0;
        std::uint64_t generated = 0;
    };
    std::uint64_t predicted = 0;
    std::uint64_t generated = 0;
    std::vector<PerParent> per_parent;
    std::uint64_t default_rules = 0;
    bool pass = false;
};

// All T^N distinct combinations for one parent class, canonical order.
std::vector<OutcomeVector> enumerate_outcomes(std::size_t leaf_count,
                                              std::uint64_t states);

// The full rule set: per parent class one rule per combination plus the
// default rule, |rules| equal to the predicted total.
//
// Recommendations: an advance rule carries the successor concepts of its
// parent (or the marker "next(<parent>)" when the tree has no prerequisite
// map); a remediation rule carries exactly its failed leaves in leaf order;
// the default rule carries the ground concept's leaves.
RuleSet generate_rules(const OntologyTree& tree);

// Agent-plan text document, one plan per rule, LF line endings, plans
// separated by one blank line. Byte-stable for a given tree.
std::string compile_plans(const RuleSet& rule_set, const OntologyTree& tree);

// Generated cardinalities against the prediction, per parent and in total.
CountCheck verify_count(const RuleSet& rule_set);

// Scan for the unique non-default rule of `parent` whose conditions equal
// `states`; nullptr when no rule matches.
const ClassificationRule* match_rule(const RuleSet& rule_set,
                                     const ConceptId& parent,
                                     const std::vector<std::uint32_t>& states);

} // namespace ontorules
