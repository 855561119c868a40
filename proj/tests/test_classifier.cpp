#include <doctest.h>

#include "ontorules/classifier.hpp"
#include "ontorules/serialize.hpp"
#include "support/random_trees.hpp"

using namespace ontorules;

namespace {

const std::string kDataDir = DATA_DIR;

OntologyTree fixture(const char* name) {
    return parse_tree_file(kDataDir + "/" + name);
}

AssessmentOutcome outcome(
    std::initializer_list<std::pair<const char*, std::uint32_t>> entries) {
    AssessmentOutcome out;
    for (const auto& [leaf, state] : entries) {
        out.entries[leaf] = state;
    }
    return out;
}

std::vector<std::string> rendered_trace(const ClassifyResult& result) {
    std::vector<std::string> lines;
    for (const auto& message : result.trace) {
        lines.push_back(render_message(message));
    }
    return lines;
}

} // namespace

TEST_CASE("an all-pass assessment advances to the desired concept") {
    const OntologyTree tree = fixture("sql.json");
    const RuleSet rule_set = generate_rules(tree);
    const ClassifyResult result =
        classify(tree, rule_set, "insert",
                 outcome({{"select_all", 1},
                          {"select_where", 1},
                          {"select_distinct", 1},
                          {"order_by", 1}}));

    CHECK(result.recommendation.kind == RuleKind::Advance);
    CHECK(result.recommendation.rule_id == "select#1");
    CHECK(result.recommendation.targets == std::vector<ConceptId>{"insert"});
    REQUIRE(result.recommendation.materials.size() == 1);
    CHECK(result.recommendation.materials[0].url ==
          "https://learn.example.org/sql/insert");

    const auto lines = rendered_trace(result);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "agSupport -> agClassifier : tell value(\"INSERT\")");
    CHECK(lines[1] == "agSupport -> agClassifier : tell passed(select_all)");
    CHECK(lines[5] == "agClassifier -> agMaterial : achieve hasKB(insert)");
}

TEST_CASE("failed leaves pull their remediation materials") {
    const OntologyTree tree = fixture("sql.json");
    const RuleSet rule_set = generate_rules(tree);
    const ClassifyResult result =
        classify(tree, rule_set, "insert",
                 outcome({{"select_all", 1},
                          {"select_where", 0},
                          {"select_distinct", 0},
                          {"order_by", 0}}));

    CHECK(result.recommendation.kind == RuleKind::Remediate);
    CHECK(result.recommendation.rule_id == "select#8");
    CHECK(result.recommendation.targets ==
          std::vector<ConceptId>{"select_where", "select_distinct", "order_by"});
    REQUIRE(result.recommendation.materials.size() == 3);
    CHECK(result.recommendation.materials[0].url ==
          "https://learn.example.org/sql/select-where");

    const auto lines = rendered_trace(result);
    REQUIRE(lines.size() == 8);
    CHECK(lines[0] == "agSupport -> agClassifier : tell value(\"INSERT\")");
    CHECK(lines[2] == "agSupport -> agClassifier : tell failed(select_where)");
    CHECK(lines[5] ==
          "agClassifier -> agMaterial : achieve hasKB(select, select_where)");
    CHECK(lines[7] ==
          "agClassifier -> agMaterial : achieve hasKB(select, order_by)");
}

TEST_CASE("the ground concept classifies through the default rule") {
    const OntologyTree tree = fixture("sql.json");
    const RuleSet rule_set = generate_rules(tree);
    const ClassifyResult result =
        classify(tree, rule_set, "select", AssessmentOutcome{});

    CHECK(result.recommendation.kind == RuleKind::Default);
    CHECK(result.recommendation.rule_id == "default");
    CHECK(result.recommendation.targets.size() == 4);
    const auto lines = rendered_trace(result);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "agSupport -> agClassifier : tell value(\"SELECT\")");
    CHECK(lines[1] ==
          "agClassifier -> agMaterial : achieve hasKB(select, select_all)");
}

TEST_CASE("materials may be absent") {
    const OntologyTree tree = fixture("sql.json");
    const RuleSet rule_set = generate_rules(tree);
    const ClassifyResult result = classify(
        tree, rule_set, "update",
        outcome({{"insert_values", 1}, {"insert_select", 1}}));
    CHECK(result.recommendation.kind == RuleKind::Advance);
    REQUIRE(result.recommendation.materials.size() == 1);
    CHECK(result.recommendation.materials[0].concept_id == "update");
    CHECK_FALSE(result.recommendation.materials[0].url.has_value());
}

TEST_CASE("classification input validation") {
    const OntologyTree tree = fixture("sql.json");
    const RuleSet rule_set = generate_rules(tree);

    CHECK_THROWS_AS(classify(tree, rule_set, "ghost", AssessmentOutcome{}),
                    ValidationError);
    CHECK_THROWS_AS(classify(tree, rule_set, "select_all", AssessmentOutcome{}),
                    ValidationError);
    CHECK_THROWS_AS(
        classify(tree, rule_set, "select", outcome({{"select_all", 1}})),
        ValidationError);
    CHECK_THROWS_AS(
        classify(tree, rule_set, "insert", outcome({{"select_all", 1}})),
        ValidationError);
    CHECK_THROWS_AS(classify(tree, rule_set, "insert",
                             outcome({{"select_all", 1},
                                      {"select_where", 1},
                                      {"select_distinct", 1},
                                      {"order_by", 1},
                                      {"update_set", 1}})),
                    ValidationError);
    CHECK_THROWS_AS(classify(tree, rule_set, "insert",
                             outcome({{"select_all", 2},
                                      {"select_where", 1},
                                      {"select_distinct", 1},
                                      {"order_by", 1}})),
                    ValidationError);

    const OntologyTree plain = fixture("sql.json");
    OntologyTree unmapped = make_tree(plain.root, plain.states, {}, {});
    const RuleSet unmapped_rules = generate_rules(unmapped);
    CHECK_THROWS_AS(
        classify(unmapped, unmapped_rules, "insert", AssessmentOutcome{}),
        ValidationError);
}

TEST_CASE("every rule fires exactly once under the exhaustive driver") {
    for (const char* name : {"sql.json", "regular.json",
                             "nonregular_3levels.json",
                             "nonregular_4levels.json"}) {
        const OntologyTree tree = fixture(name);
        const RuleSet rule_set = generate_rules(tree);
        const CoverageReport report = exhaustive_coverage(tree, rule_set);
        CHECK(report.pass);
        CHECK(report.fired.size() == rule_set.rules.size());
        CHECK(report.unfired.empty());
    }
}

TEST_CASE("a missing rule shows up as unfired") {
    const OntologyTree tree = fixture("regular.json");
    RuleSet rule_set = generate_rules(tree);
    rule_set.rules.erase(rule_set.rules.begin() + 2);
    const CoverageReport report = exhaustive_coverage(tree, rule_set);
    CHECK_FALSE(report.pass);
    CHECK(report.unfired.count("unit_a#3") == 1);
}

TEST_CASE("coverage holds on random trees") {
    std::mt19937_64 rng(5150);
    for (int i = 0; i < 30; ++i) {
        const OntologyTree tree = testsupport::random_tree(rng);
        const RuleSet rule_set = generate_rules(tree);
        CHECK(exhaustive_coverage(tree, rule_set).pass);
    }
}

TEST_CASE("cohort simulation is deterministic and conserves trials") {
    const OntologyTree tree = fixture("sql.json");
    const RuleSet rule_set = generate_rules(tree);

    const SimulationReport a = simulate_cohort(tree, rule_set, 2000, 0.5, 7);
    const SimulationReport b = simulate_cohort(tree, rule_set, 2000, 0.5, 7);
    CHECK(a.rule_fires == b.rule_fires);
    CHECK(a.advance == b.advance);

    std::uint64_t firing_sum = 0;
    for (const auto& [id, count] : a.rule_fires) {
        firing_sum += count;
    }
    CHECK(firing_sum == 2000);
    CHECK(a.advance + a.remediate + a.defaulted == 2000);

    const SimulationReport c = simulate_cohort(tree, rule_set, 2000, 0.5, 8);
    CHECK(a.rule_fires != c.rule_fires);
}

TEST_CASE("certain passing advances every trial") {
    const OntologyTree tree = fixture("sql.json");
    const RuleSet rule_set = generate_rules(tree);
    const SimulationReport report = simulate_cohort(tree, rule_set, 500, 1.0, 1);
    CHECK(report.advance == 500);
    CHECK(report.remediate == 0);
    REQUIRE(report.rule_fires.size() == 1);
    CHECK(report.rule_fires[0].first == "select#1");
    CHECK(report.rule_fires[0].second == 500);
}

TEST_CASE("certain failure lands every trial on the all-fail rule") {
    const OntologyTree tree = fixture("sql.json");
    const RuleSet rule_set = generate_rules(tree);
    const SimulationReport report = simulate_cohort(tree, rule_set, 500, 0.0, 1);
    CHECK(report.remediate == 500);
    REQUIRE(report.rule_fires.size() == 1);
    CHECK(report.rule_fires[0].first == "select#16");
}

TEST_CASE("simulation argument validation") {
    const OntologyTree tree = fixture("sql.json");
    const RuleSet rule_set = generate_rules(tree);
    CHECK_THROWS_AS(simulate_cohort(tree, rule_set, 0, 0.5, 1),
                    ValidationError);
    CHECK_THROWS_AS(simulate_cohort(tree, rule_set, 10, 1.5, 1),
                    ValidationError);
    CHECK_THROWS_AS(simulate_cohort(tree, rule_set, 10, -0.1, 1),
                    ValidationError);

    OntologyTree unmapped = make_tree(tree.root, tree.states, {}, {});
    const RuleSet unmapped_rules = generate_rules(unmapped);
    CHECK_THROWS_AS(simulate_cohort(unmapped, unmapped_rules, 10, 0.5, 1),
                    ValidationError);
}
