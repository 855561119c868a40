#pragma once

// Runtime classification of assessment outcomes.
//
// classify() maps a desired concept plus a pass/fail assessment over its
// prerequisite's leaves to exactly one rule, and records the exchange as a
// simulated message trace between the fixed agents agSupport, agClassifier
// and agMaterial.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ontorules/generator.hpp"
#include "ontorules/ontology.hpp"

namespace ontorules {

inline constexpr const char* kSupportAgent = "agSupport";
inline constexpr const char* kClassifierAgent = "agClassifier";
inline constexpr const char* kMaterialAgent = "agMaterial";

struct AssessmentOutcome {
    // Keys must be exactly the leaf set of one parent class.
    std::map<ConceptId, std::uint32_t> entries;
};

struct MaterialLink {
    ConceptId concept_id;
    std::optional<std::string> url;  // absent when the tree maps no material
};

struct Recommendation {
    RuleKind kind = RuleKind::Default;
    std::vector<ConceptId> targets;
    std::vector<MaterialLink> materials;  // aligned 1:1 with targets
    std::string rule_id;
};

struct MessageRecord {
    enum class Performative { Tell, Achieve };
    std::string sender;
    std::string receiver;
    Performative performative = Performative::Tell;
    std::string content;  // literal in the plan grammar, e.g. "passed(x)"
};

struct ClassifyResult {
    Recommendation recommendation;
    std::vector<MessageRecord> trace;
};

struct CoverageReport {
    std::set<std::string> fired;
    std::set<std::string> unfired;
    bool pass = false;
};

struct SimulationReport {
    std::uint64_t trials = 0;
    double pass_probability = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::uint64_t>> rule_fires;  // rule order, fired only
    std::uint64_t advance = 0;
    std::uint64_t remediate = 0;
    std::uint64_t defaulted = 0;
};

// Exactly one rule matches a legal call. The desired concept must either
// have a prerequisite (outcome over exactly that prerequisite's leaves) or
// be the ground concept (empty outcome, default rule).
ClassifyResult classify(const OntologyTree& tree, const RuleSet& rule_set,
                        const ConceptId& desired,
                        const AssessmentOutcome& outcome);

// Drives the classifier with every outcome combination of every parent
// class plus the ground default. Parent classes that are nobody's
// prerequisite cannot be reached through a real desired concept; their
// combinations are driven against the same rule-matching core directly.
// Pass means every driven combination hit its rule, every rule fired, and
// nothing fired twice; a combination without a matching rule shows up as
// its expected "<parent>#<k>" id in `unfired`.
CoverageReport exhaustive_coverage(const OntologyTree& tree,
                                   const RuleSet& rule_set);

// Synthetic cohort at the chain entry: each trial samples one assessment
// over the ground concept's leaves (each leaf passes with pass_probability)
// and classifies it towards the ground's first successor. When the ground
// has no successor every trial fires the default rule. One rule fires per
// trial; deterministic for a fixed seed.
SimulationReport simulate_cohort(const OntologyTree& tree,
                                 const RuleSet& rule_set,
                                 std::uint64_t trials,
                                 double pass_probability,
                                 std::uint64_t seed);

} // namespace ontorules
