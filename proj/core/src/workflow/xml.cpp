#include "adaptopt/workflow/xml.hpp"

#include <expat.h>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <memory>
#include <optional>
#include <sstream>

#include "adaptopt/error.hpp"

namespace adaptopt {

namespace {

    enum class Context { Document, Workflow, Actions, Action, Assets, Asset, Decisions, Decision, Relationships, Leaf };

    struct Frame {
        Context context;
        std::size_t element = 0; // index into the matching workflow list
    };

    struct Failure {
        enum class Kind { Schema, Parse } kind;
        std::string message;
        std::size_t line;
        std::size_t column;
    };

    class Reader {
    public:
        Reader()
            : parser_(XML_ParserCreate("UTF-8"), &XML_ParserFree)
        {
            XML_SetUserData(parser_.get(), this);
            XML_SetElementHandler(parser_.get(), &Reader::on_start, &Reader::on_end);
            XML_SetCharacterDataHandler(parser_.get(), &Reader::on_text);
            XML_SetStartDoctypeDeclHandler(parser_.get(), &Reader::on_doctype);
        }

        Workflow read(std::string_view xml)
        {
            auto status = XML_Parse(parser_.get(), xml.data(), static_cast<int>(xml.size()), XML_TRUE);
            if (failure_) {
                if (failure_->kind == Failure::Kind::Schema) {
                    throw SchemaError(failure_->message, failure_->line, failure_->column);
                }
                throw ParseError(failure_->message, failure_->line, failure_->column);
            }
            if (status != XML_STATUS_OK) {
                throw ParseError(std::string("malformed XML: ") + XML_ErrorString(XML_GetErrorCode(parser_.get())),
                    XML_GetCurrentLineNumber(parser_.get()), XML_GetCurrentColumnNumber(parser_.get()) + 1);
            }
            return std::move(workflow_);
        }

    private:
        using Attributes = std::vector<std::pair<std::string_view, std::string_view>>;

        static void XMLCALL on_start(void* self, const XML_Char* name, const XML_Char** atts)
        {
            static_cast<Reader*>(self)->start(name, atts);
        }
        static void XMLCALL on_end(void* self, const XML_Char*)
        {
            static_cast<Reader*>(self)->end();
        }
        static void XMLCALL on_text(void* self, const XML_Char* text, int len)
        {
            static_cast<Reader*>(self)->text(std::string_view(text, static_cast<std::size_t>(len)));
        }
        static void XMLCALL on_doctype(void* self, const XML_Char*, const XML_Char*, const XML_Char*, int)
        {
            static_cast<Reader*>(self)->fail(Failure::Kind::Schema, "DOCTYPE declarations are not supported");
        }

        void fail(Failure::Kind kind, std::string message)
        {
            if (failure_) return;
            failure_ = Failure { kind, std::move(message), XML_GetCurrentLineNumber(parser_.get()),
                XML_GetCurrentColumnNumber(parser_.get()) + 1 };
            XML_StopParser(parser_.get(), XML_FALSE);
        }

        // Returns attribute values in the order of `allowed`; nullopt entries were absent.
        std::optional<std::vector<std::optional<std::string>>> attributes(std::string_view element, const XML_Char** atts,
            std::initializer_list<std::string_view> allowed, std::initializer_list<std::string_view> required)
        {
            std::vector<std::optional<std::string>> values(allowed.size());
            for (const XML_Char** a = atts; *a != nullptr; a += 2) {
                std::string_view key(a[0]);
                auto it = std::find(allowed.begin(), allowed.end(), key);
                if (it == allowed.end()) {
                    fail(Failure::Kind::Schema, "unknown attribute '" + std::string(key) + "' on <" + std::string(element) + ">");
                    return std::nullopt;
                }
                values[static_cast<std::size_t>(it - allowed.begin())] = std::string(a[1]);
            }
            for (auto r : required) {
                auto idx = static_cast<std::size_t>(std::find(allowed.begin(), allowed.end(), r) - allowed.begin());
                if (!values[idx]) {
                    fail(Failure::Kind::Schema, "missing attribute '" + std::string(r) + "' on <" + std::string(element) + ">");
                    return std::nullopt;
                }
            }
            return values;
        }

        void start(std::string_view name, const XML_Char** atts)
        {
            if (failure_) return;
            const Context ctx = stack_.empty() ? Context::Document : stack_.back().context;
            auto unexpected = [&] {
                fail(Failure::Kind::Schema, "unexpected element <" + std::string(name) + ">");
            };

            switch (ctx) {
            case Context::Document:
                if (name != "workflow") return unexpected();
                if (auto v = attributes(name, atts, { "name" }, { "name" })) {
                    workflow_.name = *(*v)[0];
                    stack_.push_back({ Context::Workflow });
                }
                return;
            case Context::Workflow: {
                static constexpr std::pair<std::string_view, Context> sections[] = {
                    { "actions", Context::Actions }, { "assets", Context::Assets },
                    { "decisions", Context::Decisions }, { "relationships", Context::Relationships }
                };
                for (std::size_t i = 0; i < std::size(sections); ++i) {
                    if (name != sections[i].first) continue;
                    if (seen_sections_[i]) {
                        return fail(Failure::Kind::Schema, "duplicate <" + std::string(name) + "> section");
                    }
                    if (!attributes(name, atts, {}, {})) return;
                    seen_sections_[i] = true;
                    stack_.push_back({ sections[i].second });
                    return;
                }
                return unexpected();
            }
            case Context::Actions:
            case Context::Action:
                if (name == "action") return start_action(name, atts, ctx);
                if (name == "property" && ctx == Context::Action) return start_property(name, atts);
                return unexpected();
            case Context::Assets:
                if (name != "asset") return unexpected();
                if (auto v = attributes(name, atts, { "id", "name" }, { "id" })) {
                    workflow_.assets.push_back({ *(*v)[0], (*v)[1].value_or(""), {} });
                    stack_.push_back({ Context::Asset, workflow_.assets.size() - 1 });
                }
                return;
            case Context::Asset:
                if (name == "property") return start_property(name, atts);
                return unexpected();
            case Context::Decisions:
                if (name != "decision") return unexpected();
                if (auto v = attributes(name, atts, { "id", "name" }, { "id" })) {
                    workflow_.decisions.push_back({ *(*v)[0], (*v)[1].value_or(""), {}, {} });
                    stack_.push_back({ Context::Decision, workflow_.decisions.size() - 1 });
                }
                return;
            case Context::Decision:
                if (name == "property") return start_property(name, atts);
                if (name == "branch") {
                    if (auto v = attributes(name, atts, { "condition", "target" }, { "condition", "target" })) {
                        workflow_.decisions[stack_.back().element].branches.push_back({ *(*v)[0], *(*v)[1] });
                        stack_.push_back({ Context::Leaf });
                    }
                    return;
                }
                return unexpected();
            case Context::Relationships:
                if (name != "relationship") return unexpected();
                if (auto v = attributes(name, atts, { "kind", "from", "to" }, { "kind", "from", "to" })) {
                    auto kind = parse_relationship_kind(*(*v)[0]);
                    if (!kind) {
                        return fail(Failure::Kind::Schema, "unknown relationship kind '" + *(*v)[0] + "'");
                    }
                    workflow_.relationships.push_back({ *kind, *(*v)[1], *(*v)[2] });
                    stack_.push_back({ Context::Leaf });
                }
                return;
            case Context::Leaf:
                return unexpected();
            }
        }

        void start_action(std::string_view name, const XML_Char** atts, Context ctx)
        {
            auto v = attributes(name, atts, { "id", "name" }, { "id" });
            if (!v) return;
            // Document order is pre-order: append before any nested child is read.
            workflow_.actions.push_back({ *(*v)[0], (*v)[1].value_or(""), {}, {} });
            if (ctx == Context::Action) {
                workflow_.actions[stack_.back().element].children.push_back(*(*v)[0]);
            }
            stack_.push_back({ Context::Action, workflow_.actions.size() - 1 });
        }

        void start_property(std::string_view name, const XML_Char** atts)
        {
            auto v = attributes(name, atts, { "key", "type", "value" }, { "key", "type", "value" });
            if (!v) return;
            auto type = parse_value_type(*(*v)[1]);
            if (!type) {
                return fail(Failure::Kind::Schema, "unknown property type '" + *(*v)[1] + "'");
            }
            PropertySet* owner = nullptr;
            switch (stack_.back().context) {
            case Context::Action: owner = &workflow_.actions[stack_.back().element].properties; break;
            case Context::Asset: owner = &workflow_.assets[stack_.back().element].properties; break;
            case Context::Decision: owner = &workflow_.decisions[stack_.back().element].properties; break;
            default: break;
            }
            try {
                // Appended as-is; duplicate keys surface as validation errors.
                owner->push_back(Property::parse(*(*v)[0], *type, *(*v)[2]));
            } catch (const TypeError& e) {
                return fail(Failure::Kind::Schema, e.what());
            }
            stack_.push_back({ Context::Leaf });
        }

        void end()
        {
            if (failure_) return;
            stack_.pop_back();
        }

        void text(std::string_view content)
        {
            if (failure_) return;
            bool blank = std::all_of(content.begin(), content.end(),
                [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; });
            if (!blank) fail(Failure::Kind::Schema, "unexpected text content");
        }

        std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser_;
        Workflow workflow_;
        std::vector<Frame> stack_;
        bool seen_sections_[4] = { false, false, false, false };
        std::optional<Failure> failure_;
    };

    void escape_into(std::string& out, std::string_view text)
    {
        for (char c : text) {
            switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\n': out += "&#10;"; break;
            case '\r': out += "&#13;"; break;
            case '\t': out += "&#9;"; break;
            default: out += c;
            }
        }
    }

    class Writer {
    public:
        std::string take() { return std::move(out_); }

        void open(int depth, std::string_view tag, std::initializer_list<std::pair<std::string_view, std::string_view>> attrs, bool self_close)
        {
            out_.append(static_cast<std::size_t>(depth) * 2, ' ');
            out_ += '<';
            out_ += tag;
            for (const auto& [k, v] : attrs) {
                out_ += ' ';
                out_ += k;
                out_ += "=\"";
                escape_into(out_, v);
                out_ += '"';
            }
            out_ += self_close ? "/>\n" : ">\n";
        }

        void close(int depth, std::string_view tag)
        {
            out_.append(static_cast<std::size_t>(depth) * 2, ' ');
            out_ += "</";
            out_ += tag;
            out_ += ">\n";
        }

        void properties(int depth, const PropertySet& props)
        {
            for (const auto& p : props) {
                const auto text = p.value_text();
                open(depth, "property", { { "key", p.key }, { "type", to_string(p.type) }, { "value", text } }, true);
            }
        }

    private:
        std::string out_;
    };

    void write_action(Writer& w, const Workflow& wf, const ActionNode& a, int depth)
    {
        const bool empty = a.properties.empty() && a.children.empty();
        w.open(depth, "action", { { "id", a.id }, { "name", a.name } }, empty);
        if (empty) return;
        w.properties(depth + 1, a.properties);
        for (const auto& child : a.children) {
            write_action(w, wf, *find_action(wf, child), depth + 1);
        }
        w.close(depth, "action");
    }

} // namespace

Workflow parse_workflow_unchecked(std::string_view xml)
{
    Reader reader;
    return reader.read(xml);
}

Workflow parse_workflow(std::string_view xml)
{
    auto workflow = parse_workflow_unchecked(xml);
    validate_workflow(workflow);
    return workflow;
}

std::string serialize_workflow(const Workflow& wf)
{
    Writer w;
    w.open(0, "workflow", { { "name", wf.name } }, false);

    std::vector<bool> is_child(wf.actions.size(), false);
    for (const auto& a : wf.actions) {
        for (const auto& c : a.children) {
            for (std::size_t i = 0; i < wf.actions.size(); ++i) {
                if (wf.actions[i].id == c) is_child[i] = true;
            }
        }
    }

    if (wf.actions.empty()) {
        w.open(1, "actions", {}, true);
    } else {
        w.open(1, "actions", {}, false);
        for (std::size_t i = 0; i < wf.actions.size(); ++i) {
            if (!is_child[i]) write_action(w, wf, wf.actions[i], 2);
        }
        w.close(1, "actions");
    }

    if (wf.assets.empty()) {
        w.open(1, "assets", {}, true);
    } else {
        w.open(1, "assets", {}, false);
        for (const auto& a : wf.assets) {
            w.open(2, "asset", { { "id", a.id }, { "name", a.name } }, a.properties.empty());
            if (a.properties.empty()) continue;
            w.properties(3, a.properties);
            w.close(2, "asset");
        }
        w.close(1, "assets");
    }

    if (wf.decisions.empty()) {
        w.open(1, "decisions", {}, true);
    } else {
        w.open(1, "decisions", {}, false);
        for (const auto& d : wf.decisions) {
            const bool empty = d.properties.empty() && d.branches.empty();
            w.open(2, "decision", { { "id", d.id }, { "name", d.name } }, empty);
            if (empty) continue;
            w.properties(3, d.properties);
            for (const auto& b : d.branches) {
                w.open(3, "branch", { { "condition", b.condition }, { "target", b.target } }, true);
            }
            w.close(2, "decision");
        }
        w.close(1, "decisions");
    }

    if (wf.relationships.empty()) {
        w.open(1, "relationships", {}, true);
    } else {
        w.open(1, "relationships", {}, false);
        for (const auto& r : wf.relationships) {
            w.open(2, "relationship", { { "kind", to_string(r.kind) }, { "from", r.from }, { "to", r.to } }, true);
        }
        w.close(1, "relationships");
    }

    w.close(0, "workflow");
    return w.take();
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

Workflow load_workflow(const std::filesystem::path& path)
{
    return parse_workflow(read_text_file(path));
}

void save_workflow(const Workflow& workflow, const std::filesystem::path& path)
{
    write_text_file(path, serialize_workflow(workflow));
}

} // namespace adaptopt
