#include "ontorules/serialize.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace ontorules {

namespace {

using ordered = nlohmann::ordered_json;

std::string pad(const std::string& text, std::size_t width) {
    if (text.size() >= width) {
        return text;
    }
    return text + std::string(width - text.size(), ' ');
}

std::string performative_name(MessageRecord::Performative p) {
    return p == MessageRecord::Performative::Tell ? "tell" : "achieve";
}

} // namespace

std::string render_term_table(const Prediction& prediction) {
    std::vector<std::string> labels;
    std::size_t label_width = 0;
    for (std::size_t i = 0; i < prediction.terms.size(); ++i) {
        std::string label = prediction.terms[i].label();
        if (i + 1 == prediction.terms.size()) {
            label += " + 1";
        }
        label_width = std::max(label_width, label.size());
        labels.push_back(std::move(label));
    }

    std::size_t index_width = std::to_string(prediction.terms.size()).size();
    std::ostringstream out;
    for (std::size_t i = 0; i < prediction.terms.size(); ++i) {
        out << "  " << std::setw(static_cast<int>(index_width)) << (i + 1)
            << ".  " << pad(labels[i], label_width + 3)
            << prediction.terms[i].parent << "\n";
    }
    out << "TOTAL " << prediction.total << "\n";
    return out.str();
}

std::string prediction_jsonl(const Prediction& prediction,
                             std::uint64_t states) {
    std::ostringstream out;
    for (const auto& term : prediction.terms) {
        ordered record;
        record["record"] = "term";
        record["index"] = term.index;
        record["parent"] = term.parent;
        record["coefficient"] = term.coefficient;
        record["leaves"] = term.leaf_count;
        record["states"] = states;
        record["rules"] = term.rule_count;
        record["label"] = term.label();
        out << record.dump() << "\n";
    }
    ordered summary;
    summary["record"] = "prediction";
    summary["states"] = states;
    summary["terms"] = prediction.terms.size();
    summary["default_rules"] = prediction.default_rules;
    summary["total"] = prediction.total;
    out << summary.dump() << "\n";
    return out.str();
}

std::string ruleset_jsonl(const RuleSet& rule_set) {
    std::ostringstream out;
    for (const auto& rule : rule_set.rules) {
        ordered record;
        record["record"] = "rule";
        record["id"] = rule.id;
        if (rule.kind != RuleKind::Default) {
            record["parent"] = rule.parent;
            record["combination"] = rule.combination;
        }
        record["kind"] = to_string(rule.kind);
        record["conditions"] = ordered::array();
        for (const auto& condition : rule.conditions) {
            ordered entry;
            entry["leaf"] = condition.leaf;
            entry["state"] = condition.state;
            record["conditions"].push_back(std::move(entry));
        }
        record["recommendations"] = rule.recommendations;
        out << record.dump() << "\n";
    }
    ordered summary;
    summary["record"] = "ruleset";
    summary["rules"] = rule_set.rules.size();
    summary["predicted"] = rule_set.prediction.total;
    summary["default_rules"] = rule_set.prediction.default_rules;
    out << summary.dump() << "\n";
    return out.str();
}

std::string render_plot_csv(const std::vector<PlotPoint>& points) {
    std::ostringstream out;
    out << "x,parent,N,term_count,cumulative_R\n";
    for (const auto& point : points) {
        out << point.index << "," << point.parent << "," << point.leaf_count
            << "," << point.term_count << "," << point.cumulative << "\n";
    }
    return out.str();
}

std::string render_count_check(const CountCheck& check) {
    std::ostringstream out;
    out << "rules: " << check.generated << "/" << check.predicted
        << " (generated/predicted)\n";
    for (const auto& parent : check.per_parent) {
        out << "  " << parent.parent << ": " << parent.generated << "/"
            << parent.predicted << "\n";
    }
    out << "  default: " << check.default_rules << "/1\n";
    out << "count check: " << (check.pass ? "PASS" : "FAIL") << "\n";
    return out.str();
}

std::string render_coverage(const CoverageReport& report) {
    std::ostringstream out;
    out << "coverage: " << report.fired.size() << "/"
        << (report.fired.size() + report.unfired.size()) << " rules fired\n";
    for (const auto& id : report.unfired) {
        out << "  unfired: " << id << "\n";
    }
    out << "coverage check: " << (report.pass ? "PASS" : "FAIL") << "\n";
    return out.str();
}

std::string render_message(const MessageRecord& message) {
    return message.sender + " -> " + message.receiver + " : " +
           performative_name(message.performative) + " " + message.content;
}

std::string render_classification(const ClassifyResult& result) {
    std::ostringstream out;
    out << "rule: " << result.recommendation.rule_id << "\n";
    out << "kind: " << to_string(result.recommendation.kind) << "\n";
    out << "targets:\n";
    for (const auto& link : result.recommendation.materials) {
        out << "  " << link.concept_id;
        if (link.url) {
            out << " [" << *link.url << "]";
        }
        out << "\n";
    }
    out << "trace:\n";
    for (const auto& message : result.trace) {
        out << "  " << render_message(message) << "\n";
    }
    return out.str();
}

std::string render_simulation(const SimulationReport& report) {
    std::ostringstream out;
    out << "trials: " << report.trials << "\n";
    out << "pass probability: " << report.pass_probability << "\n";
    out << "seed: " << report.seed << "\n";
    out << "advance: " << report.advance << "\n";
    out << "remediate: " << report.remediate << "\n";
    out << "default: " << report.defaulted << "\n";
    for (const auto& [id, count] : report.rule_fires) {
        out << "rule " << id << ": " << count << "\n";
    }
    return out.str();
}

} // namespace ontorules
