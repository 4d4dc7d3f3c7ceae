#include "tkb/store.hpp"

#include <fstream>
#include <sstream>

#include <unistd.h>

namespace tkb::store {

namespace {

template <class Map>
Json table(const Map& map) {
    Json arr = Json::array();
    for (const auto& [id, rec] : map) arr.push_back(rec);
    return arr;
}

// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> line_col(std::string_view content, std::size_t byte) {
    byte = std::min(byte, content.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte; ++i) {
        if (content[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

template <class Key, class Rec, class Decode>
void read_table(const JsonReader& root, std::string_view name, std::map<Key, Rec>& out, Decode decode) {
    if (!root.has(name)) return;
    auto arr = root.at(name);
    for (std::size_t i = 0; i < arr.array_size(); ++i) {
        auto rec = decode(arr.at(i));
        auto key = rec.id;
        if (!out.emplace(key, std::move(rec)).second)
            throw Error(ErrorCode::IntegrityError, "id defined twice: " + key.str(), {key.str()}, "DuplicateId");
    }
}

std::string dot_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out.push_back(c);
    }
    return out;
}

}  // namespace

Json to_json(const KnowledgeBase& kb) {
    const auto& t = kb.tables();
    Json relation_types = Json::array();
    for (const auto& [name, rt] : t.relation_types) relation_types.push_back(rt);
    return Json{{"format_version", kFormatVersion},
                {"settings", {{"span_policy", to_string(t.span_policy)}}},
                {"terms", table(t.terms)},
                {"concepts", table(t.concepts)},
                {"viewpoints", table(t.viewpoints)},
                {"links", table(t.links)},
                {"documents", table(t.documents)},
                {"units", table(t.units)},
                {"relation_types", relation_types}};
}

std::string serialize(const KnowledgeBase& kb) {
    return to_json(kb).dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

KnowledgeBase from_json(const Json& document, Validation validation) {
    const JsonReader root(document, "");
    root.expect_object();
    const auto version = root.string("format_version");
    if (version != kFormatVersion)
        throw Error(ErrorCode::VersionUnsupported,
                    "format version '" + version + "' is not supported (expected " + std::string(kFormatVersion) + ")");

    Tables t;
    if (root.has("settings")) {
        auto settings = root.at("settings");
        if (settings.has("span_policy")) {
            auto policy = parse_span_policy(settings.string("span_policy"));
            if (!policy) settings.at("span_policy").fail("span_policy must be 'strict' or 'permissive'");
            t.span_policy = *policy;
        }
    }
    read_table(root, "terms", t.terms, term_from_json);
    read_table(root, "concepts", t.concepts, concept_from_json);
    read_table(root, "viewpoints", t.viewpoints, viewpoint_from_json);
    read_table(root, "links", t.links, link_from_json);
    read_table(root, "documents", t.documents, document_from_json);
    read_table(root, "units", t.units, unit_from_json);
    if (root.has("relation_types")) {
        auto arr = root.at("relation_types");
        for (std::size_t i = 0; i < arr.array_size(); ++i) {
            auto rt = relation_type_from_json(arr.at(i));
            auto name = rt.name;
            if (!t.relation_types.emplace(name, std::move(rt)).second)
                throw Error(ErrorCode::IntegrityError, "relation type defined twice: " + name, {name}, "DuplicateName");
        }
    }
    return validation == Validation::full ? KnowledgeBase::from_tables(std::move(t))
                                          : KnowledgeBase::from_tables_unchecked(std::move(t));
}

KnowledgeBase parse(std::string_view content, Validation validation) {
    Json doc;
    try {
        doc = Json::parse(content);
    } catch (const Json::parse_error& e) {
        auto [line, col] = line_col(content, e.byte == 0 ? 0 : e.byte - 1);
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
    }
    return from_json(doc, validation);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void save(const KnowledgeBase& kb, const std::filesystem::path& path) {
    const auto content = serialize(kb);
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error(ErrorCode::IoError, "cannot replace " + path.string() + ": " + ec.message());
    }
}

KnowledgeBase load(const std::filesystem::path& path, Validation validation) {
    return parse(read_file(path), validation);
}

std::string_view to_string(GraphMode mode) noexcept {
    switch (mode) {
        case GraphMode::hierarchy: return "hierarchy";
        case GraphMode::assertional: return "assertional";
        case GraphMode::full: return "full";
    }
    return "full";
}

std::optional<GraphMode> parse_graph_mode(std::string_view s) noexcept {
    if (s == "hierarchy") return GraphMode::hierarchy;
    if (s == "assertional") return GraphMode::assertional;
    if (s == "full") return GraphMode::full;
    return std::nullopt;
}

std::string export_graph(const KnowledgeBase& kb, GraphMode mode) {
    const auto& concepts = kb.tables().concepts;
    std::ostringstream out;
    out << "digraph tkb {\n";
    for (const auto& [id, c] : concepts)
        out << "  \"" << dot_escape(id.str()) << "\" [label=\"" << dot_escape(kb.display_name(id.str())) << "\"];\n";
    if (mode != GraphMode::assertional) {
        for (const auto& [id, c] : concepts)
            for (const auto& p : c.parents)
                out << "  \"" << dot_escape(id.str()) << "\" -> \"" << dot_escape(p.str())
                    << "\" [label=\"est-un\"];\n";
    }
    if (mode != GraphMode::hierarchy) {
        for (const auto& [id, c] : concepts)
            for (const auto& r : c.relations)
                out << "  \"" << dot_escape(id.str()) << "\" -> \"" << dot_escape(r.target.str()) << "\" [label=\""
                    << dot_escape(r.type) << "\", style=dashed];\n";
    }
    out << "}\n";
    return out.str();
}

TermListReport import_term_list(KnowledgeBase& kb, std::string_view content) {
    std::vector<TermSpec> specs;
    std::size_t line_no = 0;
    std::istringstream lines{std::string(content)};
    for (std::string line; std::getline(lines, line);) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.starts_with('#') || text::tidy(line).empty()) continue;

        std::vector<std::string> fields;
        std::size_t from = 0;
        for (;;) {
            auto tab = line.find('\t', from);
            fields.push_back(line.substr(from, tab == std::string::npos ? std::string::npos : tab - from));
            if (tab == std::string::npos) break;
            from = tab + 1;
        }
        if (fields.size() < 2 || fields.size() > 3)
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) +
                                                   ": expected surface<TAB>language[<TAB>variants], got " +
                                                   std::to_string(fields.size()) + " field(s)");
        if (text::tidy(fields[0]).empty() || text::tidy(fields[1]).empty())
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": empty surface or language");
        TermSpec spec;
        spec.surface = fields[0];
        spec.language = fields[1];
        spec.source = TermSource::corpus;
        if (fields.size() == 3) {
            std::istringstream variants(fields[2]);
            for (std::string v; std::getline(variants, v, ';');)
                if (!text::tidy(v).empty()) spec.form_variants.insert(text::tidy(v));
        }
        specs.push_back(std::move(spec));
    }

    TermListReport report;
    for (const auto& spec : specs) {
        if (kb.find_term_by_surface(spec.surface, spec.language)) {
            report.skipped.push_back(text::tidy(spec.surface));
            continue;
        }
        report.created.push_back(kb.create_term(spec));
    }
    return report;
}

TermListReport import_term_list_file(KnowledgeBase& kb, const std::filesystem::path& path) {
    return import_term_list(kb, read_file(path));
}

}  // namespace tkb::store
