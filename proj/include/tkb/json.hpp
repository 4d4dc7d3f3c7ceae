#pragma once

// JSON encodings of entities and query results. One encoding per type, used
// both by the knowledge-base file and by CLI/HTTP payloads.

#include <json.hpp>

#include "tkb/corpus.hpp"
#include "tkb/inference.hpp"
#include "tkb/knowledge_base.hpp"

namespace tkb {

using Json = nlohmann::json;

namespace text {
void to_json(Json& j, const Span& s);
}

template <class Tag>
void to_json(Json& j, const Id<Tag>& id) {
    j = id.str();
}

void to_json(Json& j, const DecompositionPart& p);
void to_json(Json& j, const Term& t);
void to_json(Json& j, const AssertionalRelation& r);
void to_json(Json& j, const Concept& c);
void to_json(Json& j, const Viewpoint& v);
void to_json(Json& j, const UsageAnchor& u);
void to_json(Json& j, const TermConceptLink& l);
void to_json(Json& j, const TextUnit& u);
void to_json(Json& j, const Document& d);
void to_json(Json& j, const RelationType& r);
void to_json(Json& j, const Diagnostic& d);
void to_json(Json& j, const FrameAttribute& a);
void to_json(Json& j, const FrameRelation& r);
void to_json(Json& j, const EffectiveFrame& f);
void to_json(Json& j, const Meaning& m);
void to_json(Json& j, const Designator& d);
void to_json(Json& j, const GrammaticalRelation& g);
void to_json(Json& j, const Occurrence& o);
void to_json(Json& j, const Context& c);
void to_json(Json& j, const SearchHit& h);
void to_json(Json& j, const Annotation& a);
void to_json(Json& j, const HighlightedUnit& h);

// Strict decoding with ParseError messages carrying the JSON path.
class JsonReader {
public:
    JsonReader(const Json& node, std::string path) : node_(node), path_(std::move(path)) {}

    const Json& node() const noexcept { return node_; }
    const std::string& path() const noexcept { return path_; }

    JsonReader at(std::string_view key) const;
    JsonReader at(std::size_t index) const;
    bool has(std::string_view key) const;

    std::string string() const;
    std::string string(std::string_view key) const { return at(key).string(); }
    std::optional<std::string> optional_string(std::string_view key) const;
    std::size_t size_value() const;
    std::size_t size_value(std::string_view key) const { return at(key).size_value(); }
    std::size_t array_size() const;
    std::vector<std::string> strings(std::string_view key) const;
    void expect_object() const;

    [[noreturn]] void fail(const std::string& what) const;

private:
    const Json& node_;
    std::string path_;
};

Term term_from_json(const JsonReader& r);
Concept concept_from_json(const JsonReader& r);
Viewpoint viewpoint_from_json(const JsonReader& r);
TermConceptLink link_from_json(const JsonReader& r);
TextUnit unit_from_json(const JsonReader& r);
Document document_from_json(const JsonReader& r);
RelationType relation_type_from_json(const JsonReader& r);

}  // namespace tkb
