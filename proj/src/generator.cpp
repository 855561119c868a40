#include "ontorules/generator.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ontorules {

namespace {

std::string upper(std::string_view id) {
    std::string out(id);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::toupper(c));
    });
    return out;
}

bool is_pass(std::uint32_t state, std::uint64_t states) {
    return state + 1 == states;
}

// Conjunct literal for one assessed leaf. States below pass carry their
// index when more than two states exist.
std::string outcome_literal(const ConceptId& leaf, std::uint32_t state,
                            std::uint64_t states) {
    if (is_pass(state, states)) {
        return "passed(" + leaf + ")";
    }
    if (states == 2) {
        return "failed(" + leaf + ")";
    }
    return "failed(" + leaf + ", " + std::to_string(state) + ")";
}

// The concept a parent's advance rules point at: its first successor, or a
// symbolic next(<parent>) when nothing builds on it.
std::string advance_goal(const std::vector<std::string>& recommendations,
                         const ConceptId& parent) {
    if (!recommendations.empty()) {
        return recommendations.front();
    }
    return "next(" + parent + ")";
}

struct PlanBody {
    std::vector<std::string> sends;  // hasKB(...) literals
};

void emit_plan(std::ostringstream& out, const std::string& plan_label,
               const std::string& goal_value,
               const std::vector<std::string>& conjuncts,
               const std::vector<std::string>& sends) {
    out << "@" << plan_label << "\n";
    out << "+!value(V)[source(agSupport)] : ";
    if (goal_value.empty()) {
        out << "true";
    } else {
        out << "value(\"" << upper(goal_value) << "\")";
    }
    for (const auto& conjunct : conjuncts) {
        out << "\n  & " << conjunct;
    }
    out << "\n<- ";
    if (sends.empty()) {
        out << "true.";
    } else {
        for (std::size_t i = 0; i < sends.size(); ++i) {
            if (i > 0) {
                out << "\n   ";
            }
            out << ".send(agMaterial, achieve, " << sends[i] << ")";
            out << (i + 1 == sends.size() ? "." : ";");
        }
    }
    out << "\n";
}

} // namespace

std::string to_string(RuleKind kind) {
    switch (kind) {
        case RuleKind::Advance: return "advance";
        case RuleKind::Remediate: return "remediate";
        case RuleKind::Default: return "default";
    }
    return "unknown";
}

std::string state_symbol(std::uint32_t state, std::uint64_t states) {
    if (is_pass(state, states)) {
        return "P";
    }
    if (states == 2) {
        return "F";
    }
    return std::to_string(state);
}

std::uint32_t parse_state_symbol(std::string_view symbol, std::uint64_t states) {
    if (symbol == "P" || symbol == "p") {
        return static_cast<std::uint32_t>(states - 1);
    }
    if (symbol == "F" || symbol == "f") {
        return 0;
    }
    std::uint64_t value = 0;
    if (symbol.empty()) {
        throw ValidationError("empty outcome state");
    }
    for (char c : symbol) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw ValidationError("unknown outcome state '" + std::string(symbol) +
                                  "'");
        }
        value = value * 10 + static_cast<std::uint64_t>(c - '0');
        if (value >= states) {
            throw ValidationError("outcome state '" + std::string(symbol) +
                                  "' is outside 0.." + std::to_string(states - 1));
        }
    }
    return static_cast<std::uint32_t>(value);
}

bool ClassificationRule::all_pass(std::uint64_t states) const {
    return std::all_of(conditions.begin(), conditions.end(),
                       [&](const RuleCondition& c) {
                           return is_pass(c.state, states);
                       });
}

std::vector<OutcomeVector> enumerate_outcomes(std::size_t leaf_count,
                                              std::uint64_t states) {
    if (leaf_count < 1) {
        throw ValidationError("leaf count must be >= 1");
    }
    if (states < 1) {
        throw ValidationError("states must be >= 1");
    }
    const std::uint64_t total =
        checked_pow(states, static_cast<std::uint64_t>(leaf_count));
    std::vector<OutcomeVector> out;
    out.reserve(total);
    // Descending base-T value, first leaf most significant: all-pass first,
    // all-fail last.
    for (std::uint64_t i = 0; i < total; ++i) {
        std::uint64_t value = total - 1 - i;
        OutcomeVector vec;
        vec.states.resize(leaf_count);
        for (std::size_t pos = leaf_count; pos-- > 0;) {
            vec.states[pos] = static_cast<std::uint32_t>(value % states);
            value /= states;
        }
        out.push_back(std::move(vec));
    }
    return out;
}

RuleSet generate_rules(const OntologyTree& tree) {
    const auto parents = parent_classes(tree);
    if (parents.empty()) {
        throw ValidationError("tree has no parent classes to generate rules for");
    }

    RuleSet rule_set;
    rule_set.prediction = predict_polynomial(tree);

    for (const auto& parent : parents) {
        std::vector<std::string> advance_recs;
        if (tree.has_prerequisites()) {
            for (const auto& succ : successors(tree, parent.id)) {
                advance_recs.push_back(succ);
            }
        } else {
            advance_recs.push_back("next(" + parent.id + ")");
        }

        const auto vectors =
            enumerate_outcomes(parent.leaves.size(), tree.states);
        for (std::size_t k = 0; k < vectors.size(); ++k) {
            ClassificationRule rule;
            rule.parent = parent.id;
            rule.combination = k + 1;
            rule.id = parent.id + "#" + std::to_string(rule.combination);
            for (std::size_t pos = 0; pos < parent.leaves.size(); ++pos) {
                rule.conditions.push_back(
                    {parent.leaves[pos], vectors[k].states[pos]});
            }
            std::vector<std::string> failed;
            for (const auto& condition : rule.conditions) {
                if (!is_pass(condition.state, tree.states)) {
                    failed.push_back(condition.leaf);
                }
            }
            if (failed.empty()) {
                rule.kind = RuleKind::Advance;
                rule.recommendations = advance_recs;
            } else {
                rule.kind = RuleKind::Remediate;
                rule.recommendations = std::move(failed);
            }
            rule_set.rules.push_back(std::move(rule));
        }
    }

    ClassificationRule fallback;
    fallback.id = "default";
    fallback.kind = RuleKind::Default;
    if (tree.has_prerequisites()) {
        const ConceptId ground = ground_concept(tree);
        auto it = std::find_if(parents.begin(), parents.end(),
                               [&](const ParentClass& p) { return p.id == ground; });
        fallback.recommendations = it->leaves;
    }
    rule_set.rules.push_back(std::move(fallback));

    return rule_set;
}

std::string compile_plans(const RuleSet& rule_set, const OntologyTree& tree) {
    const auto parents = parent_classes(tree);
    std::size_t defaults = 0;
    for (const auto& rule : rule_set.rules) {
        if (rule.kind == RuleKind::Default) {
            ++defaults;
            continue;
        }
        auto it = std::find_if(parents.begin(), parents.end(),
                               [&](const ParentClass& p) {
                                   return p.id == rule.parent;
                               });
        if (it == parents.end() || it->leaves.size() != rule.conditions.size()) {
            throw InternalError("rule set does not match tree: rule '" +
                                rule.id + "'");
        }
        for (std::size_t pos = 0; pos < it->leaves.size(); ++pos) {
            if (it->leaves[pos] != rule.conditions[pos].leaf) {
                throw InternalError("rule set does not match tree: rule '" +
                                    rule.id + "' condition '" +
                                    rule.conditions[pos].leaf + "'");
            }
        }
    }
    if (defaults != 1 || rule_set.rules.size() != rule_set.prediction.total) {
        throw InternalError("rule set does not match its prediction");
    }

    // Advance goal per parent, shared by every rule head of that parent.
    std::map<ConceptId, std::string> goals;
    for (const auto& rule : rule_set.rules) {
        if (rule.kind == RuleKind::Advance) {
            goals[rule.parent] = advance_goal(rule.recommendations, rule.parent);
        }
    }

    std::ostringstream out;
    bool first = true;
    for (const auto& rule : rule_set.rules) {
        if (!first) {
            out << "\n";
        }
        first = false;

        if (rule.kind == RuleKind::Default) {
            std::string goal;
            std::vector<std::string> sends;
            if (tree.has_prerequisites()) {
                const ConceptId ground = ground_concept(tree);
                goal = ground;
                for (const auto& leaf : rule.recommendations) {
                    sends.push_back("hasKB(" + ground + ", " + leaf + ")");
                }
            }
            emit_plan(out, "default_rule", goal, {}, sends);
            continue;
        }

        std::vector<std::string> conjuncts;
        for (const auto& condition : rule.conditions) {
            conjuncts.push_back(
                outcome_literal(condition.leaf, condition.state, tree.states));
        }

        std::vector<std::string> sends;
        if (rule.kind == RuleKind::Advance) {
            for (const auto& rec : rule.recommendations) {
                sends.push_back("hasKB(" + rec + ")");
            }
        } else {
            for (const auto& leaf : rule.recommendations) {
                sends.push_back("hasKB(" + rule.parent + ", " + leaf + ")");
            }
        }

        emit_plan(out,
                  rule.parent + "_rule" + std::to_string(rule.combination),
                  goals[rule.parent], conjuncts, sends);
    }
    return out.str();
}

CountCheck verify_count(const RuleSet& rule_set) {
    CountCheck check;
    check.predicted = rule_set.prediction.total;
    check.generated = rule_set.rules.size();

    std::map<ConceptId, std::uint64_t> generated_per_parent;
    for (const auto& rule : rule_set.rules) {
        if (rule.kind == RuleKind::Default) {
            ++check.default_rules;
        } else {
            ++generated_per_parent[rule.parent];
        }
    }

    bool parents_match = true;
    for (const auto& term : rule_set.prediction.terms) {
        const auto it = generated_per_parent.find(term.parent);
        const std::uint64_t generated =
            it == generated_per_parent.end() ? 0 : it->second;
        check.per_parent.push_back({term.parent, term.rule_count, generated});
        parents_match = parents_match && generated == term.rule_count;
    }

    check.pass = check.predicted == check.generated && parents_match &&
                 check.default_rules == 1;
    return check;
}

const ClassificationRule* match_rule(const RuleSet& rule_set,
                                     const ConceptId& parent,
                                     const std::vector<std::uint32_t>& states) {
    for (const auto& rule : rule_set.rules) {
        if (rule.kind == RuleKind::Default || rule.parent != parent ||
            rule.conditions.size() != states.size()) {
            continue;
        }
        bool match = true;
        for (std::size_t i = 0; i < states.size(); ++i) {
            if (rule.conditions[i].state != states[i]) {
                match = false;
                break;
            }
        }
        if (match) {
            return &rule;
        }
    }
    return nullptr;
}

} // namespace ontorules
