#pragma once

// Text renderings and machine output. Machine output is line-delimited JSON,
// one record per line with a "record" discriminator field.

#include <string>
#include <vector>

#include "ontorules/classifier.hpp"
#include "ontorules/generator.hpp"
#include "ontorules/predictor.hpp"

namespace ontorules {

// Term table with one row per term, the last row suffixed " + 1" for the
// default rule, and a TOTAL row.
std::string render_term_table(const Prediction& prediction);

std::string prediction_jsonl(const Prediction& prediction, std::uint64_t states);

std::string ruleset_jsonl(const RuleSet& rule_set);

// CSV with header x,parent,N,term_count,cumulative_R.
std::string render_plot_csv(const std::vector<PlotPoint>& points);

std::string render_count_check(const CountCheck& check);

std::string render_coverage(const CoverageReport& report);

// "sender -> receiver : performative content"
std::string render_message(const MessageRecord& message);

std::string render_classification(const ClassifyResult& result);

std::string render_simulation(const SimulationReport& report);

} // namespace ontorules
