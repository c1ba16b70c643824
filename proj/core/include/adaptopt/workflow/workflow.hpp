#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "adaptopt/workflow/property.hpp"

namespace adaptopt {

// A task (grab, move, screw, ...). Composite actions list their children by id.
struct ActionNode {
    std::string id;
    std::string name;
    PropertySet properties;
    std::vector<std::string> children;

    bool is_composite() const noexcept { return !children.empty(); }
    friend bool operator==(const ActionNode&, const ActionNode&) = default;
};

// Information produced or consumed by the workflow.
struct AssetNode {
    std::string id;
    std::string name;
    PropertySet properties;

    friend bool operator==(const AssetNode&, const AssetNode&) = default;
};

// Condition expressions are opaque; they are stored and never evaluated.
struct Branch {
    std::string condition;
    std::string target;

    friend bool operator==(const Branch&, const Branch&) = default;
};

struct DecisionNode {
    std::string id;
    std::string name;
    PropertySet properties;
    std::vector<Branch> branches;

    friend bool operator==(const DecisionNode&, const DecisionNode&) = default;
};

enum class RelationshipKind { Successor, Includes, Produces, Branch };

std::string_view to_string(RelationshipKind kind) noexcept;
std::optional<RelationshipKind> parse_relationship_kind(std::string_view text) noexcept;

struct Relationship {
    RelationshipKind kind = RelationshipKind::Successor;
    std::string from;
    std::string to;

    friend bool operator==(const Relationship&, const Relationship&) = default;
};

// Attributed workflow graph.
//
// `actions` holds every action (composite and leaf) in document order, which is
// the pre-order of the composition hierarchy: a composite precedes its children
// and each child list is contiguous in declaration order.
struct Workflow {
    std::string name;
    std::vector<ActionNode> actions;
    std::vector<AssetNode> assets;
    std::vector<DecisionNode> decisions;
    std::vector<Relationship> relationships;

    friend bool operator==(const Workflow&, const Workflow&) = default;
};

struct Violation {
    std::string message;
    std::vector<std::string> ids;
};

// Every broken invariant, in a stable order. Empty means the workflow is valid.
std::vector<Violation> check_workflow(const Workflow& workflow);

// Throws ValidationError listing all violations and the union of offending ids.
void validate_workflow(const Workflow& workflow);

// Returns the ids of the first successor cycle found (first id repeated at the end
// is omitted), or an empty list when the successor subgraph is acyclic.
std::vector<std::string> find_successor_cycle(const Workflow& workflow);

// Stable 0..n-1 enumeration of all actions in document order.
class ActionIndexMap {
public:
    ActionIndexMap() = default;
    explicit ActionIndexMap(std::vector<std::string> ids);

    std::size_t size() const noexcept { return ids_.size(); }
    bool empty() const noexcept { return ids_.empty(); }
    const std::string& id_at(std::size_t index) const { return ids_.at(index); }
    std::optional<std::size_t> index_of(std::string_view id) const;
    const std::vector<std::string>& ids() const noexcept { return ids_; }

    friend bool operator==(const ActionIndexMap& a, const ActionIndexMap& b) { return a.ids_ == b.ids_; }

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, std::size_t> index_;
};

ActionIndexMap enumerate_actions(const Workflow& workflow);

bool has_element(const Workflow& workflow, std::string_view element_id) noexcept;

ActionNode* find_action(Workflow& workflow, std::string_view id) noexcept;
const ActionNode* find_action(const Workflow& workflow, std::string_view id) noexcept;

// Property set of any action/asset/decision; throws LookupError for unknown ids.
const PropertySet& properties_of(const Workflow& workflow, std::string_view element_id);
PropertySet& properties_of(Workflow& workflow, std::string_view element_id);

// Returns std::nullopt for a missing key; throws LookupError for an unknown element.
std::optional<Property> get_property(const Workflow& workflow, std::string_view element_id, std::string_view key);

// Upserts `property` on the element. Throws LookupError / TypeError.
Workflow set_property(Workflow workflow, std::string_view element_id, Property property);

} // namespace adaptopt
