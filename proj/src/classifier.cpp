#include "ontorules/classifier.hpp"

#include <algorithm>
#include <cctype>
#include <random>

namespace ontorules {

namespace {

std::string upper(std::string_view id) {
    std::string out(id);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::toupper(c));
    });
    return out;
}

std::string outcome_literal(const ConceptId& leaf, std::uint32_t state,
                            std::uint64_t states) {
    if (state + 1 == states) {
        return "passed(" + leaf + ")";
    }
    if (states == 2) {
        return "failed(" + leaf + ")";
    }
    return "failed(" + leaf + ", " + std::to_string(state) + ")";
}

MaterialLink lookup_material(const OntologyTree& tree, const ConceptId& id) {
    MaterialLink link;
    link.concept_id = id;
    const auto it = tree.materials.find(id);
    if (it != tree.materials.end()) {
        link.url = it->second;
    }
    return link;
}

// Achieve content per recommendation target, mirroring the plan bodies.
std::string achieve_content(const ClassificationRule& rule,
                            const OntologyTree& tree,
                            const ConceptId& target) {
    switch (rule.kind) {
        case RuleKind::Advance:
            return "hasKB(" + target + ")";
        case RuleKind::Remediate:
            return "hasKB(" + rule.parent + ", " + target + ")";
        case RuleKind::Default:
            return "hasKB(" + ground_concept(tree) + ", " + target + ")";
    }
    throw InternalError("unhandled rule kind");
}

ClassifyResult resolve(const OntologyTree& tree,
                       const ClassificationRule& rule,
                       const ConceptId& desired) {
    ClassifyResult result;
    result.recommendation.kind = rule.kind;
    result.recommendation.rule_id = rule.id;
    result.recommendation.targets = rule.recommendations;
    for (const auto& target : rule.recommendations) {
        result.recommendation.materials.push_back(lookup_material(tree, target));
    }

    result.trace.push_back({kSupportAgent, kClassifierAgent,
                            MessageRecord::Performative::Tell,
                            "value(\"" + upper(desired) + "\")"});
    for (const auto& condition : rule.conditions) {
        result.trace.push_back(
            {kSupportAgent, kClassifierAgent, MessageRecord::Performative::Tell,
             outcome_literal(condition.leaf, condition.state, tree.states)});
    }
    for (const auto& target : rule.recommendations) {
        result.trace.push_back({kClassifierAgent, kMaterialAgent,
                                MessageRecord::Performative::Achieve,
                                achieve_content(rule, tree, target)});
    }
    return result;
}

const ClassificationRule& default_rule(const RuleSet& rule_set) {
    for (const auto& rule : rule_set.rules) {
        if (rule.kind == RuleKind::Default) {
            return rule;
        }
    }
    throw InternalError("rule set has no default rule");
}

const ParentClass* find_parent(const std::vector<ParentClass>& parents,
                               const ConceptId& id) {
    const auto it = std::find_if(parents.begin(), parents.end(),
                                 [&](const ParentClass& p) { return p.id == id; });
    return it == parents.end() ? nullptr : &*it;
}

// The unique rule for one complete outcome over a parent's leaves.
const ClassificationRule& match_outcome(const OntologyTree& tree,
                                        const RuleSet& rule_set,
                                        const ParentClass& parent,
                                        const AssessmentOutcome& outcome) {
    std::vector<std::uint32_t> states;
    states.reserve(parent.leaves.size());
    for (const auto& leaf : parent.leaves) {
        const auto it = outcome.entries.find(leaf);
        if (it == outcome.entries.end()) {
            throw ValidationError("outcome is missing leaf '" + leaf + "' of '" +
                                  parent.id + "'");
        }
        if (it->second >= tree.states) {
            throw ValidationError("outcome state " + std::to_string(it->second) +
                                  " for leaf '" + leaf + "' is outside 0.." +
                                  std::to_string(tree.states - 1));
        }
        states.push_back(it->second);
    }
    for (const auto& [leaf, state] : outcome.entries) {
        if (std::find(parent.leaves.begin(), parent.leaves.end(), leaf) ==
            parent.leaves.end()) {
            throw ValidationError("outcome entry '" + leaf +
                                  "' is not a leaf of '" + parent.id + "'");
        }
    }
    const ClassificationRule* rule = match_rule(rule_set, parent.id, states);
    if (rule == nullptr) {
        throw InternalError("no rule matches a complete outcome of '" +
                            parent.id + "'");
    }
    return *rule;
}

} // namespace

ClassifyResult classify(const OntologyTree& tree, const RuleSet& rule_set,
                        const ConceptId& desired,
                        const AssessmentOutcome& outcome) {
    if (find_node(tree.root, desired) == nullptr) {
        throw ValidationError("unknown concept '" + desired + "'");
    }
    if (!tree.has_prerequisites()) {
        throw ValidationError(
            "tree has no prerequisite map; classification is undefined");
    }

    const auto prereq_it = tree.prerequisites.find(desired);
    if (prereq_it == tree.prerequisites.end()) {
        if (desired != ground_concept(tree)) {
            throw ValidationError("no prerequisite recorded for concept '" +
                                  desired + "'");
        }
        if (!outcome.entries.empty()) {
            throw ValidationError("ground concept '" + desired +
                                  "' takes an empty outcome");
        }
        return resolve(tree, default_rule(rule_set), desired);
    }

    const auto parents = parent_classes(tree);
    const ParentClass* parent = find_parent(parents, prereq_it->second);
    if (parent == nullptr) {
        throw ValidationError("prerequisite '" + prereq_it->second +
                              "' has no leaf concepts to assess");
    }
    return resolve(tree, match_outcome(tree, rule_set, *parent, outcome),
                   desired);
}

CoverageReport exhaustive_coverage(const OntologyTree& tree,
                                   const RuleSet& rule_set) {
    std::map<std::string, std::uint64_t> fires;
    std::set<std::string> expected;

    const auto parents = parent_classes(tree);
    for (const auto& parent : parents) {
        const auto succs = successors(tree, parent.id);
        const auto vectors = enumerate_outcomes(parent.leaves.size(), tree.states);
        for (std::size_t k = 0; k < vectors.size(); ++k) {
            expected.insert(parent.id + "#" + std::to_string(k + 1));
            try {
                if (!succs.empty()) {
                    AssessmentOutcome outcome;
                    for (std::size_t i = 0; i < parent.leaves.size(); ++i) {
                        outcome.entries[parent.leaves[i]] = vectors[k].states[i];
                    }
                    const auto result =
                        classify(tree, rule_set, succs.front(), outcome);
                    ++fires[result.recommendation.rule_id];
                } else if (const ClassificationRule* rule = match_rule(
                               rule_set, parent.id, vectors[k].states)) {
                    ++fires[rule->id];
                }
            } catch (const Error&) {
                // an unmatched combination stays a hole in the fired set
            }
        }
    }

    expected.insert("default");
    if (tree.has_prerequisites()) {
        try {
            const auto result = classify(tree, rule_set, ground_concept(tree),
                                         AssessmentOutcome{});
            ++fires[result.recommendation.rule_id];
        } catch (const Error&) {
        }
    } else {
        // nothing can address the default when no concept has a prerequisite
        ++fires[default_rule(rule_set).id];
    }

    CoverageReport report;
    bool once_each = true;
    for (const auto& [id, count] : fires) {
        report.fired.insert(id);
        once_each = once_each && count == 1;
    }
    for (const auto& id : expected) {
        if (fires.find(id) == fires.end()) {
            report.unfired.insert(id);
        }
    }
    bool all_rules_fired = true;
    for (const auto& rule : rule_set.rules) {
        all_rules_fired = all_rules_fired && fires.count(rule.id) == 1;
    }
    report.pass = report.unfired.empty() && once_each && all_rules_fired &&
                  fires.size() == expected.size();
    return report;
}

SimulationReport simulate_cohort(const OntologyTree& tree,
                                 const RuleSet& rule_set,
                                 std::uint64_t trials,
                                 double pass_probability,
                                 std::uint64_t seed) {
    if (trials < 1) {
        throw ValidationError("trials must be >= 1");
    }
    if (!(pass_probability >= 0.0 && pass_probability <= 1.0)) {
        throw ValidationError("pass probability must be within [0, 1]");
    }
    if (!tree.has_prerequisites()) {
        throw ValidationError(
            "tree has no prerequisite map; there is no chain entry to simulate");
    }

    SimulationReport report;
    report.trials = trials;
    report.pass_probability = pass_probability;
    report.seed = seed;

    const ConceptId ground = ground_concept(tree);
    const auto parents = parent_classes(tree);
    const ParentClass* entry = find_parent(parents, ground);
    if (entry == nullptr) {
        throw InternalError("ground concept '" + ground +
                            "' is not a parent class");
    }
    const bool has_successor = !successors(tree, ground).empty();

    std::mt19937_64 rng(seed);
    const auto next_double = [&rng]() {
        return static_cast<double>(rng() >> 11) *
               (1.0 / 9007199254740992.0);
    };
    const auto sample_state = [&]() -> std::uint32_t {
        if (tree.states == 1) {
            return 0;
        }
        if (next_double() < pass_probability) {
            return static_cast<std::uint32_t>(tree.states - 1);
        }
        if (tree.states == 2) {
            return 0;
        }
        return static_cast<std::uint32_t>(rng() % (tree.states - 1));
    };

    std::map<std::string, std::uint64_t> fires;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        if (!has_successor) {
            ++fires[default_rule(rule_set).id];
            ++report.defaulted;
            continue;
        }
        std::vector<std::uint32_t> states;
        states.reserve(entry->leaves.size());
        for (std::size_t i = 0; i < entry->leaves.size(); ++i) {
            states.push_back(sample_state());
        }
        const ClassificationRule* rule = match_rule(rule_set, ground, states);
        if (rule == nullptr) {
            throw InternalError("no rule matches a sampled outcome of '" +
                                ground + "'");
        }
        ++fires[rule->id];
        if (rule->kind == RuleKind::Advance) {
            ++report.advance;
        } else {
            ++report.remediate;
        }
    }

    for (const auto& rule : rule_set.rules) {
        const auto it = fires.find(rule.id);
        if (it != fires.end()) {
            report.rule_fires.emplace_back(rule.id, it->second);
        }
    }
    return report;
}

} // namespace ontorules
