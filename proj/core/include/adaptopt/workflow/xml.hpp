#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "adaptopt/workflow/workflow.hpp"

namespace adaptopt {

// Parses the workflow XML format and validates the result.
//
// Throws ParseError (malformed XML, with line/column), SchemaError (unknown or
// missing element/attribute, mistyped property value) or ValidationError
// (duplicate ids, dangling references, successor cycles).
Workflow parse_workflow(std::string_view xml);

// Same as parse_workflow but skips the final invariant check.
Workflow parse_workflow_unchecked(std::string_view xml);

// Canonical form: 2-space indent, fixed attribute order, elements in stored order,
// trailing newline. Deterministic for a given workflow.
std::string serialize_workflow(const Workflow& workflow);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

Workflow load_workflow(const std::filesystem::path& path);
void save_workflow(const Workflow& workflow, const std::filesystem::path& path);

} // namespace adaptopt
