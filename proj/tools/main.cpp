// ontorules command line: predict, generate, classify, verify, plot, simulate.
//
// Exit codes: 0 success, 1 input or validation error, 2 arithmetic overflow,
// 3 output write failure. Standard output is buffered per command and only
// flushed when the command produced its complete report, so a failing run
// never leaves partial output behind.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ontorules/classifier.hpp"
#include "ontorules/generator.hpp"
#include "ontorules/ontology.hpp"
#include "ontorules/predictor.hpp"
#include "ontorules/serialize.hpp"

namespace {

using namespace ontorules;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitOverflow = 2;
constexpr int kExitOutput = 3;

struct PredictArgs {
    std::string file;
    std::uint64_t states = 0;  // 0 means "use the document's value"
    std::string format = "table";
};

struct GenerateArgs {
    std::string file;
    std::string format = "plans";
    std::string out;
};

struct ClassifyArgs {
    std::string file;
    std::string desired;
    std::string outcomes;
    bool use_default = false;
};

struct VerifyArgs {
    std::string file;
};

struct PlotArgs {
    std::string file;
    std::string out;
};

struct SimulateArgs {
    std::string file;
    std::uint64_t trials = 1000;
    double pass_prob = 0.5;
    std::uint64_t seed = 0;
};

OntologyTree load_tree(const std::string& path, std::uint64_t states_override) {
    OntologyTree tree = parse_tree_file(path);
    if (states_override > 0 && states_override != tree.states) {
        tree = make_tree(tree.root, states_override, tree.prerequisites,
                         tree.materials);
    }
    return tree;
}

// Either into the buffered stdout or into --out; a failed file write is the
// only path to exit code 3.
bool write_document(const std::string& out_path, const std::string& document,
                    std::ostream& buffered) {
    if (out_path.empty()) {
        buffered << document;
        return true;
    }
    std::ofstream file(out_path, std::ios::binary);
    file << document;
    file.flush();
    return static_cast<bool>(file);
}

int cmd_predict(const PredictArgs& args, std::ostream& out) {
    const OntologyTree tree = load_tree(args.file, args.states);
    const Prediction prediction = predict_polynomial(tree);
    if (args.format == "machine") {
        out << prediction_jsonl(prediction, tree.states);
    } else {
        out << render_term_table(prediction);
    }
    return kExitOk;
}

int cmd_generate(const GenerateArgs& args, std::ostream& out) {
    const OntologyTree tree = load_tree(args.file, 0);
    const RuleSet rule_set = generate_rules(tree);
    const std::string document = args.format == "machine"
                                     ? ruleset_jsonl(rule_set)
                                     : compile_plans(rule_set, tree);
    if (!write_document(args.out, document, out)) {
        std::cerr << "error: cannot write '" << args.out << "'\n";
        return kExitOutput;
    }
    // the count line goes wherever the document is not
    const std::string count =
        "generated " + std::to_string(rule_set.rules.size()) + " rules\n";
    if (args.out.empty()) {
        std::cerr << count;
    } else {
        out << count;
    }
    return kExitOk;
}

AssessmentOutcome parse_outcomes(const std::string& text, std::uint64_t states) {
    AssessmentOutcome outcome;
    std::istringstream stream(text);
    std::string pair;
    while (std::getline(stream, pair, ',')) {
        const auto eq = pair.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == pair.size()) {
            throw ValidationError("bad outcome entry '" + pair +
                                  "', expected leaf=P or leaf=F");
        }
        const ConceptId leaf = normalize_id(pair.substr(0, eq));
        const std::uint32_t state =
            parse_state_symbol(pair.substr(eq + 1), states);
        if (!outcome.entries.emplace(leaf, state).second) {
            throw ValidationError("duplicate outcome entry for leaf '" + leaf +
                                  "'");
        }
    }
    return outcome;
}

int cmd_classify(const ClassifyArgs& args, std::ostream& out) {
    const OntologyTree tree = load_tree(args.file, 0);
    const RuleSet rule_set = generate_rules(tree);

    ConceptId desired;
    AssessmentOutcome outcome;
    if (args.use_default) {
        desired = args.desired.empty() ? ground_concept(tree)
                                       : normalize_id(args.desired);
    } else {
        if (args.desired.empty()) {
            throw ValidationError("--desired is required unless --default is given");
        }
        desired = normalize_id(args.desired);
        outcome = parse_outcomes(args.outcomes, tree.states);
    }

    const ClassifyResult result = classify(tree, rule_set, desired, outcome);
    out << render_classification(result);
    return kExitOk;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
    const OntologyTree tree = load_tree(args.file, 0);
    const RuleSet rule_set = generate_rules(tree);
    const CountCheck count = verify_count(rule_set);
    const CoverageReport coverage = exhaustive_coverage(tree, rule_set);
    out << render_count_check(count);
    out << render_coverage(coverage);
    return count.pass && coverage.pass ? kExitOk : kExitInput;
}

int cmd_plot(const PlotArgs& args, std::ostream& out) {
    const OntologyTree tree = load_tree(args.file, 0);
    const std::string csv = render_plot_csv(plot_points(tree));
    if (!write_document(args.out, csv, out)) {
        std::cerr << "error: cannot write '" << args.out << "'\n";
        return kExitOutput;
    }
    return kExitOk;
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out) {
    const OntologyTree tree = load_tree(args.file, 0);
    const RuleSet rule_set = generate_rules(tree);
    const SimulationReport report = simulate_cohort(
        tree, rule_set, args.trials, args.pass_prob, args.seed);
    out << render_simulation(report);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prerequisite-ontology rule prediction and classification"};
    app.require_subcommand(1);

    PredictArgs predict_args;
    auto* predict = app.add_subcommand(
        "predict", "Predict the classified-rule count and its term table");
    predict->add_option("file", predict_args.file, "ontology document")
        ->required();
    predict->add_option("--states", predict_args.states,
                        "override the assessment state count T");
    predict->add_option("--format", predict_args.format, "table or machine")
        ->check(CLI::IsMember({"table", "machine"}));

    GenerateArgs generate_args;
    auto* generate = app.add_subcommand(
        "generate", "Generate the complete rule set or its plan document");
    generate->add_option("file", generate_args.file, "ontology document")
        ->required();
    generate->add_option("--format", generate_args.format, "plans or machine")
        ->check(CLI::IsMember({"plans", "machine"}));
    generate->add_option("--out", generate_args.out, "write the document here");

    ClassifyArgs classify_args;
    auto* classify_cmd = app.add_subcommand(
        "classify", "Classify one assessment outcome into a recommendation");
    classify_cmd->add_option("file", classify_args.file, "ontology document")
        ->required();
    classify_cmd->add_option("--desired", classify_args.desired,
                             "concept the learner wants to reach");
    auto* outcomes_opt = classify_cmd->add_option(
        "--outcomes", classify_args.outcomes,
        "comma-separated leaf=P/F assessment entries");
    classify_cmd
        ->add_flag("--default", classify_args.use_default,
                   "classify the ground concept's default entry")
        ->excludes(outcomes_opt);

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand(
        "verify", "Check generated counts and exhaustive rule coverage");
    verify->add_option("file", verify_args.file, "ontology document")
        ->required();

    PlotArgs plot_args;
    auto* plot = app.add_subcommand(
        "plot", "Emit per-term cumulative rule counts as CSV");
    plot->add_option("file", plot_args.file, "ontology document")->required();
    plot->add_option("--out", plot_args.out, "write the CSV here");

    SimulateArgs simulate_args;
    auto* simulate = app.add_subcommand(
        "simulate", "Simulate a cohort of assessments at the chain entry");
    simulate->add_option("file", simulate_args.file, "ontology document")
        ->required();
    simulate->add_option("--trials", simulate_args.trials, "number of trials");
    simulate->add_option("--pass-prob", simulate_args.pass_prob,
                         "per-leaf pass probability");
    simulate->add_option("--seed", simulate_args.seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    std::ostringstream buffered;
    int status = kExitOk;
    try {
        if (predict->parsed()) {
            status = cmd_predict(predict_args, buffered);
        } else if (generate->parsed()) {
            status = cmd_generate(generate_args, buffered);
        } else if (classify_cmd->parsed()) {
            status = cmd_classify(classify_args, buffered);
        } else if (verify->parsed()) {
            status = cmd_verify(verify_args, buffered);
        } else if (plot->parsed()) {
            status = cmd_plot(plot_args, buffered);
        } else if (simulate->parsed()) {
            status = cmd_simulate(simulate_args, buffered);
        }
    } catch (const OverflowError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOverflow;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }

    std::cout << buffered.str();
    return status;
}
