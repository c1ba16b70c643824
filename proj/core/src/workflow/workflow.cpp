#include "adaptopt/workflow/workflow.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_set>

#include "adaptopt/error.hpp"

namespace adaptopt {

std::string_view to_string(RelationshipKind kind) noexcept
{
    switch (kind) {
    case RelationshipKind::Successor: return "successor";
    case RelationshipKind::Includes: return "includes";
    case RelationshipKind::Produces: return "produces";
    case RelationshipKind::Branch: return "branch";
    }
    return "successor";
}

std::optional<RelationshipKind> parse_relationship_kind(std::string_view text) noexcept
{
    if (text == "successor") return RelationshipKind::Successor;
    if (text == "includes") return RelationshipKind::Includes;
    if (text == "produces") return RelationshipKind::Produces;
    if (text == "branch") return RelationshipKind::Branch;
    return std::nullopt;
}

namespace {
    enum class ElementKind { Action, Asset, Decision };

    using KindIndex = std::unordered_map<std::string_view, ElementKind>;

    KindIndex index_elements(const Workflow& w)
    {
        KindIndex index;
        for (const auto& a : w.actions) index.emplace(a.id, ElementKind::Action);
        for (const auto& a : w.assets) index.emplace(a.id, ElementKind::Asset);
        for (const auto& d : w.decisions) index.emplace(d.id, ElementKind::Decision);
        return index;
    }

    void check_properties(const std::string& owner, const PropertySet& props, std::vector<Violation>& out)
    {
        std::set<std::string_view> seen;
        for (const auto& p : props) {
            if (p.key.empty()) {
                out.push_back({ "element '" + owner + "' has a property with an empty key", { owner } });
            } else if (!seen.insert(p.key).second) {
                out.push_back({ "element '" + owner + "' has duplicate property key '" + p.key + "'", { owner } });
            }
            if (!p.is_consistent()) {
                out.push_back({ "property '" + p.key + "' of '" + owner + "' does not match its declared type", { owner } });
            }
        }
    }

    void check_ids(const Workflow& w, std::vector<Violation>& out)
    {
        std::unordered_map<std::string_view, int> counts;
        auto visit = [&](const std::string& id) {
            if (id.empty()) {
                out.push_back({ "element with empty id", {} });
            } else if (++counts[id] == 2) {
                out.push_back({ "duplicate element id '" + id + "'", { id } });
            }
        };
        for (const auto& a : w.actions) visit(a.id);
        for (const auto& a : w.assets) visit(a.id);
        for (const auto& d : w.decisions) visit(d.id);
    }

    void check_composition(const Workflow& w, std::vector<Violation>& out)
    {
        std::unordered_map<std::string_view, std::size_t> position;
        for (std::size_t i = 0; i < w.actions.size(); ++i) position.emplace(w.actions[i].id, i);

        std::unordered_map<std::string_view, std::string_view> parent;
        bool structurally_sound = true;
        for (const auto& a : w.actions) {
            for (const auto& child : a.children) {
                if (!position.contains(child)) {
                    out.push_back({ "composite action '" + a.id + "' references unknown child '" + child + "'", { a.id, child } });
                    structurally_sound = false;
                    continue;
                }
                auto [it, inserted] = parent.emplace(child, a.id);
                if (!inserted) {
                    out.push_back({ "action '" + child + "' has more than one parent", { std::string(it->second), a.id, child } });
                    structurally_sound = false;
                }
            }
        }
        if (!structurally_sound) return;

        // Follow parent links; a revisit means the hierarchy is cyclic.
        for (const auto& a : w.actions) {
            std::vector<std::string_view> chain { a.id };
            std::string_view current = a.id;
            while (parent.contains(current)) {
                current = parent.at(current);
                if (std::find(chain.begin(), chain.end(), current) != chain.end()) {
                    std::vector<std::string> ids(chain.begin(), chain.end());
                    out.push_back({ "composition hierarchy contains a cycle", ids });
                    return;
                }
                chain.push_back(current);
            }
        }

        std::vector<std::string_view> preorder;
        std::function<void(const ActionNode&)> walk = [&](const ActionNode& node) {
            preorder.push_back(node.id);
            for (const auto& c : node.children) walk(w.actions[position.at(c)]);
        };
        for (const auto& a : w.actions) {
            if (!parent.contains(a.id)) walk(a);
        }
        for (std::size_t i = 0; i < w.actions.size(); ++i) {
            if (i >= preorder.size() || preorder[i] != w.actions[i].id) {
                out.push_back({ "actions are not stored in document (pre-)order at position " + std::to_string(i),
                    { w.actions[i].id } });
                return;
            }
        }
    }

    void check_decisions(const Workflow& w, const KindIndex& kinds, std::vector<Violation>& out)
    {
        for (const auto& d : w.decisions) {
            if (d.branches.empty()) {
                out.push_back({ "decision '" + d.id + "' has no branches", { d.id } });
            }
            for (const auto& b : d.branches) {
                if (!kinds.contains(b.target)) {
                    out.push_back({ "decision '" + d.id + "' branches to unknown element '" + b.target + "'", { b.target } });
                }
            }
        }
    }

    void check_relationships(const Workflow& w, const KindIndex& kinds, std::vector<Violation>& out)
    {
        std::set<std::tuple<RelationshipKind, std::string_view, std::string_view>> seen;
        for (const auto& r : w.relationships) {
            const auto label = std::string(to_string(r.kind)) + " relationship " + r.from + " -> " + r.to;
            auto from = kinds.find(r.from);
            auto to = kinds.find(r.to);
            std::vector<std::string> missing;
            if (from == kinds.end()) missing.push_back(r.from);
            if (to == kinds.end()) missing.push_back(r.to);
            if (!missing.empty()) {
                out.push_back({ label + " references undeclared element(s)", missing });
                continue;
            }
            if (!seen.emplace(r.kind, r.from, r.to).second) {
                out.push_back({ "duplicate " + label, { r.from, r.to } });
            }
            const auto fk = from->second;
            const auto tk = to->second;
            bool ok = true;
            switch (r.kind) {
            case RelationshipKind::Successor:
                ok = (fk == ElementKind::Action && tk == ElementKind::Action)
                    || (fk == ElementKind::Action && tk == ElementKind::Decision)
                    || (fk == ElementKind::Decision && tk == ElementKind::Action);
                break;
            case RelationshipKind::Includes:
            case RelationshipKind::Produces:
                ok = (fk == ElementKind::Action && tk == ElementKind::Asset)
                    || (fk == ElementKind::Asset && tk == ElementKind::Action);
                break;
            case RelationshipKind::Branch:
                ok = fk == ElementKind::Decision && tk != ElementKind::Asset;
                break;
            }
            if (!ok) {
                out.push_back({ label + " connects element kinds it may not connect", { r.from, r.to } });
            }
        }
    }
} // namespace

std::vector<std::string> find_successor_cycle(const Workflow& workflow)
{
    std::unordered_map<std::string_view, std::vector<std::string_view>> next;
    std::vector<std::string_view> nodes;
    for (const auto& r : workflow.relationships) {
        if (r.kind != RelationshipKind::Successor) continue;
        if (!next.contains(r.from)) nodes.push_back(r.from);
        next[r.from].push_back(r.to);
    }

    enum class Color { White, Grey, Black };
    std::unordered_map<std::string_view, Color> color;
    std::vector<std::string_view> stack;
    std::vector<std::string> cycle;

    std::function<bool(std::string_view)> dfs = [&](std::string_view node) {
        color[node] = Color::Grey;
        stack.push_back(node);
        if (auto it = next.find(node); it != next.end()) {
            for (auto succ : it->second) {
                auto c = color.contains(succ) ? color[succ] : Color::White;
                if (c == Color::Grey) {
                    auto start = std::find(stack.begin(), stack.end(), succ);
                    cycle.assign(start, stack.end());
                    return true;
                }
                if (c == Color::White && dfs(succ)) return true;
            }
        }
        stack.pop_back();
        color[node] = Color::Black;
        return false;
    };

    for (auto n : nodes) {
        if (!color.contains(n) && dfs(n)) break;
    }
    return cycle;
}

std::vector<Violation> check_workflow(const Workflow& workflow)
{
    std::vector<Violation> out;
    check_ids(workflow, out);
    for (const auto& a : workflow.actions) check_properties(a.id, a.properties, out);
    for (const auto& a : workflow.assets) check_properties(a.id, a.properties, out);
    for (const auto& d : workflow.decisions) check_properties(d.id, d.properties, out);
    check_composition(workflow, out);
    const auto kinds = index_elements(workflow);
    check_decisions(workflow, kinds, out);
    check_relationships(workflow, kinds, out);
    if (auto cycle = find_successor_cycle(workflow); !cycle.empty()) {
        std::string path;
        for (const auto& id : cycle) path += id + " -> ";
        path += cycle.front();
        out.push_back({ "successor relationships form a cycle: " + path, cycle });
    }
    return out;
}

void validate_workflow(const Workflow& workflow)
{
    auto violations = check_workflow(workflow);
    if (violations.empty()) return;
    std::string message = "invalid workflow '" + workflow.name + "':";
    std::vector<std::string> ids;
    for (auto& v : violations) {
        message += "\n  - " + v.message;
        for (auto& id : v.ids) {
            if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
        }
    }
    throw ValidationError(message, std::move(ids));
}

ActionIndexMap::ActionIndexMap(std::vector<std::string> ids)
    : ids_(std::move(ids))
{
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (!index_.emplace(ids_[i], i).second) {
            throw ValidationError("duplicate action id '" + ids_[i] + "' in index map", { ids_[i] });
        }
    }
}

std::optional<std::size_t> ActionIndexMap::index_of(std::string_view id) const
{
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

ActionIndexMap enumerate_actions(const Workflow& workflow)
{
    std::vector<std::string> ids;
    ids.reserve(workflow.actions.size());
    for (const auto& a : workflow.actions) ids.push_back(a.id);
    return ActionIndexMap(std::move(ids));
}

bool has_element(const Workflow& workflow, std::string_view id) noexcept
{
    auto match = [&](const auto& e) { return e.id == id; };
    return std::any_of(workflow.actions.begin(), workflow.actions.end(), match)
        || std::any_of(workflow.assets.begin(), workflow.assets.end(), match)
        || std::any_of(workflow.decisions.begin(), workflow.decisions.end(), match);
}

ActionNode* find_action(Workflow& workflow, std::string_view id) noexcept
{
    auto it = std::find_if(workflow.actions.begin(), workflow.actions.end(), [&](const ActionNode& a) { return a.id == id; });
    return it == workflow.actions.end() ? nullptr : &*it;
}

const ActionNode* find_action(const Workflow& workflow, std::string_view id) noexcept
{
    return find_action(const_cast<Workflow&>(workflow), id);
}

PropertySet& properties_of(Workflow& workflow, std::string_view id)
{
    if (auto* a = find_action(workflow, id)) return a->properties;
    for (auto& a : workflow.assets) {
        if (a.id == id) return a.properties;
    }
    for (auto& d : workflow.decisions) {
        if (d.id == id) return d.properties;
    }
    throw LookupError("unknown element id '" + std::string(id) + "'");
}

const PropertySet& properties_of(const Workflow& workflow, std::string_view id)
{
    return properties_of(const_cast<Workflow&>(workflow), id);
}

std::optional<Property> get_property(const Workflow& workflow, std::string_view element_id, std::string_view key)
{
    const auto* p = find_property(properties_of(workflow, element_id), key);
    if (p == nullptr) return std::nullopt;
    return *p;
}

Workflow set_property(Workflow workflow, std::string_view element_id, Property property)
{
    upsert_property(properties_of(workflow, element_id), std::move(property));
    return workflow;
}

} // namespace adaptopt
