#pragma once

// Persistence and exchange: the canonical knowledge-base file, directed-graph
// export, and batch term-list import.
//
// KB file (format "tkb/1"): one JSON object, UTF-8, pretty-printed with two
// spaces and object keys in byte order. Top-level keys:
//   concepts, documents, format_version, links, relation_types, settings,
//   terms, units, viewpoints
// Every table is an array sorted by id (relation_types by name). Spans count
// Unicode scalar values. Optional fields (gender, number, viewpoint
// description) are omitted when absent. Saving is deterministic, so equal
// knowledge bases produce byte-identical files.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tkb/json.hpp"
#include "tkb/knowledge_base.hpp"

namespace tkb::store {

inline constexpr std::string_view kFormatVersion = "tkb/1";

enum class Validation { full, none };

Json to_json(const KnowledgeBase& kb);
std::string serialize(const KnowledgeBase& kb);

// Throws ParseError (with line and column for syntax errors),
// VersionUnsupported, or IntegrityError naming the violated rule.
KnowledgeBase parse(std::string_view content, Validation validation = Validation::full);
KnowledgeBase from_json(const Json& document, Validation validation = Validation::full);

// Writes to a sibling temporary file, then renames over `path`.
void save(const KnowledgeBase& kb, const std::filesystem::path& path);
KnowledgeBase load(const std::filesystem::path& path, Validation validation = Validation::full);

enum class GraphMode { hierarchy, assertional, full };
std::string_view to_string(GraphMode mode) noexcept;
std::optional<GraphMode> parse_graph_mode(std::string_view s) noexcept;

// Graphviz DOT. Nodes are concepts labelled by their terme-vedette; est-un
// edges point child -> parent, assertional edges source -> target.
std::string export_graph(const KnowledgeBase& kb, GraphMode mode);

struct TermListReport {
    std::vector<TermId> created;
    std::vector<std::string> skipped;  // surfaces already present
};

// Sidecar format, one term per line: surface TAB language [TAB variants],
// variants separated by ';'. Lines starting with '#' and blank lines are
// ignored. Terms are created with source=corpus. The whole file is parsed
// before anything is created.
TermListReport import_term_list(KnowledgeBase& kb, std::string_view content);
TermListReport import_term_list_file(KnowledgeBase& kb, const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace tkb::store
