#include <doctest.h>

#include <set>

#include "ontorules/generator.hpp"
#include "support/random_trees.hpp"

using namespace ontorules;

namespace {

const std::string kDataDir = DATA_DIR;

OntologyTree fixture(const char* name) {
    return parse_tree_file(kDataDir + "/" + name);
}

ConceptNode leaf(const char* id) {
    ConceptNode node;
    node.id = id;
    return node;
}

ConceptNode internal(const char* id, std::vector<ConceptNode> children) {
    ConceptNode node;
    node.id = id;
    node.children = std::move(children);
    return node;
}

std::string symbols(const OutcomeVector& vec, std::uint64_t states) {
    std::string out;
    for (const auto state : vec.states) {
        out += state_symbol(state, states);
    }
    return out;
}

} // namespace

TEST_CASE("outcome enumeration is canonical and complete") {
    const auto one = enumerate_outcomes(1, 2);
    REQUIRE(one.size() == 2);
    CHECK(symbols(one[0], 2) == "P");
    CHECK(symbols(one[1], 2) == "F");

    const auto two = enumerate_outcomes(2, 2);
    REQUIRE(two.size() == 4);
    CHECK(symbols(two[0], 2) == "PP");
    CHECK(symbols(two[1], 2) == "PF");
    CHECK(symbols(two[2], 2) == "FP");
    CHECK(symbols(two[3], 2) == "FF");

    const auto four = enumerate_outcomes(4, 2);
    CHECK(four.size() == 16);
    std::set<std::vector<std::uint32_t>> distinct;
    for (const auto& vec : four) {
        distinct.insert(vec.states);
    }
    CHECK(distinct.size() == 16);
    CHECK(symbols(four.front(), 2) == "PPPP");
    CHECK(symbols(four.back(), 2) == "FFFF");
}

TEST_CASE("three-state enumeration orders by descending value") {
    const auto vectors = enumerate_outcomes(2, 3);
    REQUIRE(vectors.size() == 9);
    CHECK(vectors.front().states == std::vector<std::uint32_t>{2, 2});
    CHECK(vectors[1].states == std::vector<std::uint32_t>{2, 1});
    CHECK(vectors.back().states == std::vector<std::uint32_t>{0, 0});
}

TEST_CASE("enumeration argument validation") {
    CHECK_THROWS_AS(enumerate_outcomes(0, 2), ValidationError);
    CHECK_THROWS_AS(enumerate_outcomes(2, 0), ValidationError);
    CHECK_THROWS_AS(enumerate_outcomes(80, 2), OverflowError);
}

TEST_CASE("state symbols round trip") {
    CHECK(state_symbol(1, 2) == "P");
    CHECK(state_symbol(0, 2) == "F");
    CHECK(state_symbol(2, 3) == "P");
    CHECK(state_symbol(1, 3) == "1");
    CHECK(state_symbol(0, 3) == "0");

    CHECK(parse_state_symbol("P", 2) == 1);
    CHECK(parse_state_symbol("p", 2) == 1);
    CHECK(parse_state_symbol("F", 2) == 0);
    CHECK(parse_state_symbol("P", 3) == 2);
    CHECK(parse_state_symbol("1", 3) == 1);
    CHECK_THROWS_AS(parse_state_symbol("X", 2), ValidationError);
    CHECK_THROWS_AS(parse_state_symbol("", 2), ValidationError);
    CHECK_THROWS_AS(parse_state_symbol("3", 3), ValidationError);
}

TEST_CASE("generated rule set matches the prediction") {
    const OntologyTree tree = fixture("sql.json");
    const RuleSet rule_set = generate_rules(tree);
    CHECK(rule_set.rules.size() == 29);
    CHECK(rule_set.rules.size() == rule_set.prediction.total);

    const CountCheck check = verify_count(rule_set);
    CHECK(check.pass);
    CHECK(check.predicted == 29);
    CHECK(check.generated == 29);
    CHECK(check.default_rules == 1);
    REQUIRE(check.per_parent.size() == 5);
    CHECK(check.per_parent[0].generated == 16);
    CHECK(check.per_parent[1].generated == 4);
}

TEST_CASE("rule identities and kinds") {
    const RuleSet rule_set = generate_rules(fixture("sql.json"));

    const ClassificationRule& first = rule_set.rules.front();
    CHECK(first.id == "select#1");
    CHECK(first.kind == RuleKind::Advance);
    CHECK(first.all_pass(2));
    CHECK(first.recommendations == std::vector<std::string>{"insert"});

    const ClassificationRule& eighth = rule_set.rules[7];
    CHECK(eighth.id == "select#8");
    CHECK(eighth.kind == RuleKind::Remediate);
    CHECK_FALSE(eighth.all_pass(2));
    REQUIRE(eighth.conditions.size() == 4);
    CHECK(eighth.conditions[0].state == 1);
    CHECK(eighth.conditions[1].state == 0);
    CHECK(eighth.conditions[2].state == 0);
    CHECK(eighth.conditions[3].state == 0);
    CHECK(eighth.recommendations ==
          std::vector<std::string>{"select_where", "select_distinct",
                                   "order_by"});

    const ClassificationRule& last = rule_set.rules.back();
    CHECK(last.id == "default");
    CHECK(last.kind == RuleKind::Default);
    CHECK(last.conditions.empty());
    CHECK(last.recommendations ==
          std::vector<std::string>{"select_all", "select_where",
                                   "select_distinct", "order_by"});
}

TEST_CASE("an unchained parent advances to a placeholder") {
    ConceptNode root = internal("r", {internal("a", {leaf("a1"), leaf("a2")})});
    const RuleSet rule_set = generate_rules(make_tree(root));
    CHECK(rule_set.rules.size() == 5);
    CHECK(rule_set.rules.front().recommendations ==
          std::vector<std::string>{"next(a)"});
    CHECK(rule_set.rules.back().recommendations.empty());
}

TEST_CASE("the top of a chain advances to nothing") {
    const RuleSet rule_set = generate_rules(fixture("sql.json"));
    for (const auto& rule : rule_set.rules) {
        if (rule.parent == "create_table" && rule.kind == RuleKind::Advance) {
            CHECK(rule.recommendations.empty());
        }
    }
}

TEST_CASE("a leaf-only tree has no rules to generate") {
    CHECK_THROWS_AS(generate_rules(make_tree(leaf("r"))), ValidationError);
}

TEST_CASE("rule matching finds the unique combination") {
    const RuleSet rule_set = generate_rules(fixture("sql.json"));
    const ClassificationRule* rule =
        match_rule(rule_set, "select", {1, 0, 0, 0});
    REQUIRE(rule != nullptr);
    CHECK(rule->id == "select#8");
    CHECK(match_rule(rule_set, "select", {1, 0, 0}) == nullptr);
    CHECK(match_rule(rule_set, "ghost", {1}) == nullptr);
}

TEST_CASE("plan compilation is deterministic and tree-checked") {
    const OntologyTree tree = fixture("sql.json");
    const RuleSet rule_set = generate_rules(tree);
    const std::string plans = compile_plans(rule_set, tree);
    CHECK(plans == compile_plans(generate_rules(tree), tree));

    CHECK(plans.find("@select_rule1\n") != std::string::npos);
    CHECK(plans.find("@default_rule\n") != std::string::npos);
    CHECK(plans.find("+!value(V)[source(agSupport)] : value(\"INSERT\")") !=
          std::string::npos);
    CHECK(plans.find("<- .send(agMaterial, achieve, hasKB(insert)).") !=
          std::string::npos);
    CHECK(plans.find(".send(agMaterial, achieve, hasKB(select, select_where))") !=
          std::string::npos);

    RuleSet tampered = rule_set;
    tampered.rules[3].conditions[0].leaf = "ghost";
    CHECK_THROWS_AS(compile_plans(tampered, tree), InternalError);

    RuleSet shorted = rule_set;
    shorted.rules.pop_back();
    CHECK_THROWS_AS(compile_plans(shorted, tree), InternalError);
}

TEST_CASE("three-state plans spell out the failed state") {
    ConceptNode root = internal("r", {internal("a", {leaf("a1"), leaf("a2")})});
    const OntologyTree tree = make_tree(root, 3);
    const std::string plans = compile_plans(generate_rules(tree), tree);
    CHECK(plans.find("& failed(a1, 1)") != std::string::npos);
    CHECK(plans.find("& failed(a1, 0)") != std::string::npos);
    CHECK(plans.find("& passed(a1)") != std::string::npos);
}

TEST_CASE("counts line up on random trees") {
    std::mt19937_64 rng(424242);
    for (int i = 0; i < 50; ++i) {
        const OntologyTree tree = testsupport::random_tree(rng);
        const RuleSet rule_set = generate_rules(tree);
        CHECK(rule_set.rules.size() == rule_set.prediction.total);
        CHECK(verify_count(rule_set).pass);
    }
}
