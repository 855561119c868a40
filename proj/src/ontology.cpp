#include "ontorules/ontology.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ontorules {

namespace {

using nlohmann::json;

void walk(const ConceptNode& node,
          const std::function<void(const ConceptNode&)>& visit) {
    visit(node);
    for (const auto& child : node.children) {
        walk(child, visit);
    }
}

void check_unique_ids(const ConceptNode& root) {
    std::set<ConceptId> seen;
    walk(root, [&](const ConceptNode& node) {
        if (!seen.insert(node.id).second) {
            throw ValidationError("duplicate concept id '" + node.id + "'");
        }
    });
}

std::set<ConceptId> leaf_ids(const ConceptNode& root) {
    std::set<ConceptId> out;
    walk(root, [&](const ConceptNode& node) {
        if (node.is_leaf()) {
            out.insert(node.id);
        }
    });
    return out;
}

std::set<ConceptId> all_ids(const ConceptNode& root) {
    std::set<ConceptId> out;
    walk(root, [&](const ConceptNode& node) { out.insert(node.id); });
    return out;
}

void check_prerequisites(const OntologyTree& tree) {
    const auto ids = all_ids(tree.root);
    const auto leaves = leaf_ids(tree.root);

    for (const auto& [concept_id, prereq] : tree.prerequisites) {
        for (const auto& id : {concept_id, prereq}) {
            if (ids.count(id) == 0) {
                throw ValidationError("prerequisite references unknown concept '" +
                                      id + "'");
            }
            if (leaves.count(id) != 0) {
                throw ValidationError("prerequisite on leaf concept '" + id + "'");
            }
        }
    }

    // The map is functional, so a cycle is a walk that revisits a concept.
    for (const auto& [start, first] : tree.prerequisites) {
        std::set<ConceptId> visited{start};
        ConceptId current = first;
        while (true) {
            if (!visited.insert(current).second) {
                throw ValidationError("prerequisite cycle involving '" + current +
                                      "'");
            }
            auto it = tree.prerequisites.find(current);
            if (it == tree.prerequisites.end()) {
                break;
            }
            current = it->second;
        }
    }

    if (tree.has_prerequisites()) {
        std::vector<ConceptId> grounds;
        for (const auto& parent : parent_classes(tree)) {
            if (tree.prerequisites.find(parent.id) == tree.prerequisites.end()) {
                grounds.push_back(parent.id);
            }
        }
        if (grounds.empty()) {
            throw ValidationError(
                "no ground concept: every parent class has a prerequisite");
        }
        if (grounds.size() > 1) {
            std::ostringstream msg;
            msg << "multiple ground concepts:";
            for (const auto& id : grounds) {
                msg << " '" << id << "'";
            }
            throw ValidationError(msg.str());
        }
    }
}

void check_materials(const OntologyTree& tree) {
    const auto ids = all_ids(tree.root);
    for (const auto& [concept_id, url] : tree.materials) {
        if (ids.count(concept_id) == 0) {
            throw ValidationError("material for unknown concept '" + concept_id +
                                  "'");
        }
        if (url.empty()) {
            throw ValidationError("empty material URL for concept '" +
                                  concept_id + "'");
        }
    }
}

void require_keys(const json& object, const char* what,
                  std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : object.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
                return key == k;
            }) == allowed.end()) {
            throw ParseError(std::string("unknown key '") + key + "' in " + what);
        }
    }
}

ConceptNode parse_node(const json& value) {
    if (!value.is_object()) {
        throw ParseError("concept node must be an object");
    }
    require_keys(value, "concept node", {"id", "label", "children"});
    if (!value.contains("id") || !value["id"].is_string()) {
        throw ParseError("concept node needs a string 'id'");
    }

    ConceptNode node;
    node.id = normalize_id(value["id"].get<std::string>());
    if (value.contains("label")) {
        if (!value["label"].is_string()) {
            throw ParseError("'label' of concept '" + node.id +
                             "' must be a string");
        }
        node.label = value["label"].get<std::string>();
    }
    if (value.contains("children")) {
        if (!value["children"].is_array()) {
            throw ParseError("'children' of concept '" + node.id +
                             "' must be an array");
        }
        for (const auto& child : value["children"]) {
            node.children.push_back(parse_node(child));
        }
    }
    return node;
}

std::map<ConceptId, ConceptId> parse_id_map(const json& value, const char* what) {
    if (!value.is_object()) {
        throw ParseError(std::string("'") + what + "' must be an object");
    }
    std::map<ConceptId, ConceptId> out;
    for (const auto& [key, entry] : value.items()) {
        if (!entry.is_string()) {
            throw ParseError(std::string("'") + what + "' entry for '" + key +
                             "' must be a string");
        }
        out[normalize_id(key)] = normalize_id(entry.get<std::string>());
    }
    return out;
}

} // namespace

ConceptId normalize_id(std::string_view raw) {
    ConceptId out;
    out.reserve(raw.size());
    for (char c : raw) {
        unsigned char uc = static_cast<unsigned char>(c);
        if (c == '-') {
            out.push_back('_');
        } else if (std::isalpha(uc)) {
            out.push_back(static_cast<char>(std::tolower(uc)));
        } else if (std::isdigit(uc) || c == '_') {
            out.push_back(c);
        } else {
            throw ParseError("invalid character in concept id '" +
                             std::string(raw) + "'");
        }
    }
    if (out.empty()) {
        throw ParseError("empty concept id");
    }
    return out;
}

OntologyTree make_tree(ConceptNode root, std::uint64_t states,
                       std::map<ConceptId, ConceptId> prerequisites,
                       std::map<ConceptId, std::string> materials) {
    if (states < 1) {
        throw ValidationError("states must be >= 1");
    }
    OntologyTree tree{std::move(root), states, std::move(prerequisites),
                      std::move(materials)};
    check_unique_ids(tree.root);
    check_prerequisites(tree);
    check_materials(tree);
    return tree;
}

OntologyTree parse_tree(std::string_view source) {
    json doc;
    try {
        doc = json::parse(source);
    } catch (const json::parse_error& e) {
        throw ParseError("syntax error at byte " + std::to_string(e.byte) + ": " +
                         e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("document must be a JSON object");
    }
    require_keys(doc, "document", {"states", "root", "prerequisites", "materials"});
    if (!doc.contains("root")) {
        throw ParseError("document needs a 'root' concept");
    }

    std::uint64_t states = 2;
    if (doc.contains("states")) {
        const auto& s = doc["states"];
        if (!s.is_number_integer() && !s.is_number_unsigned()) {
            throw ParseError("'states' must be an integer");
        }
        if (s.is_number_integer() && s.get<std::int64_t>() < 1) {
            throw ValidationError("states must be >= 1");
        }
        states = s.get<std::uint64_t>();
    }

    ConceptNode root = parse_node(doc["root"]);

    std::map<ConceptId, ConceptId> prerequisites;
    if (doc.contains("prerequisites")) {
        prerequisites = parse_id_map(doc["prerequisites"], "prerequisites");
    }

    std::map<ConceptId, std::string> materials;
    if (doc.contains("materials")) {
        const auto& m = doc["materials"];
        if (!m.is_object()) {
            throw ParseError("'materials' must be an object");
        }
        for (const auto& [key, entry] : m.items()) {
            if (!entry.is_string()) {
                throw ParseError("material URL for '" + key +
                                 "' must be a string");
            }
            materials[normalize_id(key)] = entry.get<std::string>();
        }
    }

    return make_tree(std::move(root), states, std::move(prerequisites),
                     std::move(materials));
}

OntologyTree parse_tree_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_tree(buffer.str());
}

std::vector<ParentClass> parent_classes(const OntologyTree& tree) {
    std::vector<ParentClass> out;
    walk(tree.root, [&](const ConceptNode& node) {
        ParentClass entry{node.id, {}};
        for (const auto& child : node.children) {
            if (child.is_leaf()) {
                entry.leaves.push_back(child.id);
            }
        }
        if (!entry.leaves.empty()) {
            out.push_back(std::move(entry));
        }
    });
    return out;
}

Regularity is_regular(const OntologyTree& tree) {
    const auto parents = parent_classes(tree);
    if (parents.empty()) {
        return {};
    }
    const std::size_t shared = parents.front().leaves.size();
    for (const auto& parent : parents) {
        if (parent.leaves.size() != shared) {
            return {};
        }
    }
    return {true, parents.size(), shared};
}

ConceptId ground_concept(const OntologyTree& tree) {
    if (!tree.has_prerequisites()) {
        throw ValidationError("tree has no prerequisite map");
    }
    std::vector<ConceptId> grounds;
    for (const auto& parent : parent_classes(tree)) {
        if (tree.prerequisites.find(parent.id) == tree.prerequisites.end()) {
            grounds.push_back(parent.id);
        }
    }
    if (grounds.size() != 1) {
        throw InternalError("expected exactly one ground concept, found " +
                            std::to_string(grounds.size()));
    }
    return grounds.front();
}

std::map<ConceptId, int> levels(const OntologyTree& tree) {
    std::map<ConceptId, int> out;
    std::function<void(const ConceptNode&, int)> descend =
        [&](const ConceptNode& node, int level) {
            out[node.id] = level;
            for (const auto& child : node.children) {
                descend(child, level + 1);
            }
        };
    descend(tree.root, 1);
    return out;
}

std::vector<ConceptId> successors(const OntologyTree& tree,
                                  const ConceptId& concept_id) {
    std::vector<ConceptId> out;
    walk(tree.root, [&](const ConceptNode& node) {
        auto it = tree.prerequisites.find(node.id);
        if (it != tree.prerequisites.end() && it->second == concept_id) {
            out.push_back(node.id);
        }
    });
    return out;
}

const ConceptNode* find_node(const ConceptNode& root, const ConceptId& id) {
    if (root.id == id) {
        return &root;
    }
    for (const auto& child : root.children) {
        if (const ConceptNode* hit = find_node(child, id)) {
            return hit;
        }
    }
    return nullptr;
}

} // namespace ontorules
