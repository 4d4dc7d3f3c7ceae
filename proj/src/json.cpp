#include "tkb/json.hpp"

namespace tkb {

namespace text {
void to_json(Json& j, const Span& s) { j = Json{{"start", s.start}, {"end", s.end}}; }
}  // namespace text

void to_json(Json& j, const DecompositionPart& p) {
    j = Json{{"term", p.term}, {"role", to_string(p.role)}};
}

void to_json(Json& j, const Term& t) {
    j = Json{{"id", t.id},
             {"surface", t.surface},
             {"language", t.language},
             {"grammatical_category", t.grammatical_category},
             {"form_variants", t.form_variants},
             {"decomposition", t.decomposition},
             {"source", to_string(t.source)}};
    if (t.gender) j["gender"] = *t.gender;
    if (t.number) j["number"] = *t.number;
}

void to_json(Json& j, const AssertionalRelation& r) {
    j = Json{{"type", r.type}, {"target", r.target}, {"definition", r.definition}};
}

void to_json(Json& j, const Concept& c) {
    j = Json{{"id", c.id},
             {"label", c.label},
             {"description", c.description},
             {"attributes", c.attributes},
             {"relations", c.relations},
             {"parents", c.parents}};
}

void to_json(Json& j, const Viewpoint& v) {
    j = Json{{"id", v.id}, {"name", v.name}};
    if (v.description) j["description"] = *v.description;
}

void to_json(Json& j, const UsageAnchor& u) {
    j = Json{{"unit", u.unit}, {"start", u.span.start}, {"end", u.span.end}};
}

void to_json(Json& j, const TermConceptLink& l) {
    j = Json{{"id", l.id},
             {"term", l.term_id},
             {"concept", l.concept_id},
             {"viewpoints", l.viewpoints},
             {"usages", l.usages}};
}

void to_json(Json& j, const TextUnit& u) {
    j = Json{{"id", u.id}, {"document", u.document}, {"ordinal", u.ordinal}, {"content", u.content}};
}

void to_json(Json& j, const Document& d) {
    j = Json{{"id", d.id}, {"title", d.title}, {"source_note", d.source_note}, {"units", d.units}};
}

void to_json(Json& j, const RelationType& r) { j = Json{{"name", r.name}, {"definition", r.definition}}; }

void to_json(Json& j, const Diagnostic& d) {
    j = Json{{"rule", to_string(d.rule)},
             {"severity", to_string(d.severity)},
             {"entities", d.entities},
             {"message", d.message}};
}

void to_json(Json& j, const FrameAttribute& a) {
    j = Json{{"key", a.key},
             {"value", a.value},
             {"origin", a.origin},
             {"distance", a.distance},
             {"shadowed", a.shadowed}};
}

void to_json(Json& j, const FrameRelation& r) {
    j = Json{{"type", r.type}, {"target", r.target}, {"definition", r.definition}, {"origin", r.origin}};
}

void to_json(Json& j, const EffectiveFrame& f) {
    j = Json{{"concept", f.concept_id},
             {"attributes", f.attributes},
             {"relations", f.relations},
             {"subsumers", f.subsumers}};
}

void to_json(Json& j, const Meaning& m) { j = Json{{"viewpoint", m.viewpoint}, {"concept", m.concept_id}}; }

void to_json(Json& j, const Designator& d) { j = Json{{"term", d.term}, {"viewpoints", d.viewpoints}}; }

void to_json(Json& j, const GrammaticalRelation& g) { j = Json{{"type", g.type}, {"term", g.term}}; }

void to_json(Json& j, const Occurrence& o) {
    j = Json{{"term", o.term}, {"unit", o.unit}, {"span", o.span}, {"matched_form", o.matched_form}};
}

void to_json(Json& j, const Context& c) {
    j = Json{{"link", c.link}, {"unit", c.unit}, {"span", c.span},
             {"left", c.left}, {"match", c.match}, {"right", c.right}};
}

void to_json(Json& j, const SearchHit& h) { j = Json{{"unit", h.unit}, {"span", h.span}}; }

void to_json(Json& j, const Annotation& a) {
    j = Json{{"span", a.span}, {"term", a.term}, {"matched_form", a.matched_form}, {"links", a.links}};
}

void to_json(Json& j, const HighlightedUnit& h) {
    j = Json{{"unit", h.unit}, {"content", h.content}, {"annotations", h.annotations}};
}

// ---------------------------------------------------------------------------
// Decoding

void JsonReader::fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, (path_.empty() ? std::string("<root>") : path_) + ": " + what);
}

void JsonReader::expect_object() const {
    if (!node_.is_object()) fail("expected an object");
}

bool JsonReader::has(std::string_view key) const {
    return node_.is_object() && node_.contains(key) && !node_.at(std::string(key)).is_null();
}

JsonReader JsonReader::at(std::string_view key) const {
    expect_object();
    auto it = node_.find(key);
    if (it == node_.end()) fail("missing field '" + std::string(key) + "'");
    return JsonReader(*it, path_ + (path_.empty() ? "" : ".") + std::string(key));
}

JsonReader JsonReader::at(std::size_t index) const {
    if (!node_.is_array() || index >= node_.size()) fail("expected an array element " + std::to_string(index));
    return JsonReader(node_[index], path_ + "[" + std::to_string(index) + "]");
}

std::size_t JsonReader::array_size() const {
    if (!node_.is_array()) fail("expected an array");
    return node_.size();
}

std::string JsonReader::string() const {
    if (!node_.is_string()) fail("expected a string");
    return node_.get<std::string>();
}

std::optional<std::string> JsonReader::optional_string(std::string_view key) const {
    if (!has(key)) return std::nullopt;
    return at(key).string();
}

std::size_t JsonReader::size_value() const {
    if (!node_.is_number_unsigned() && !(node_.is_number_integer() && node_.get<long long>() >= 0))
        fail("expected a non-negative integer");
    return node_.get<std::size_t>();
}

std::vector<std::string> JsonReader::strings(std::string_view key) const {
    auto arr = at(key);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < arr.array_size(); ++i) out.push_back(arr.at(i).string());
    return out;
}

Term term_from_json(const JsonReader& r) {
    Term t;
    t.id = TermId(r.string("id"));
    t.surface = r.string("surface");
    t.language = r.string("language");
    t.grammatical_category = r.has("grammatical_category") ? r.string("grammatical_category") : "";
    t.gender = r.optional_string("gender");
    t.number = r.optional_string("number");
    if (r.has("form_variants"))
        for (auto& v : r.strings("form_variants")) t.form_variants.insert(std::move(v));
    if (r.has("decomposition")) {
        auto parts = r.at("decomposition");
        for (std::size_t i = 0; i < parts.array_size(); ++i) {
            auto p = parts.at(i);
            auto role = parse_decomposition_role(p.string("role"));
            if (!role) p.at("role").fail("role must be 'head' or 'expansion'");
            t.decomposition.push_back({TermId(p.string("term")), *role});
        }
    }
    auto source = parse_term_source(r.has("source") ? r.string("source") : "corpus");
    if (!source) r.at("source").fail("source must be 'corpus' or 'interview'");
    t.source = *source;
    return t;
}

Concept concept_from_json(const JsonReader& r) {
    Concept c;
    c.id = ConceptId(r.string("id"));
    c.label = TermId(r.string("label"));
    c.description = r.has("description") ? r.string("description") : "";
    if (r.has("attributes")) {
        auto attrs = r.at("attributes");
        attrs.expect_object();
        for (const auto& [key, value] : attrs.node().items()) c.attributes.emplace(key, attrs.at(key).string());
    }
    if (r.has("relations")) {
        auto rels = r.at("relations");
        for (std::size_t i = 0; i < rels.array_size(); ++i) {
            auto rel = rels.at(i);
            AssertionalRelation a{rel.string("type"), ConceptId(rel.string("target")), rel.string("definition")};
            if (std::find(c.relations.begin(), c.relations.end(), a) == c.relations.end())
                c.relations.push_back(std::move(a));
        }
    }
    if (r.has("parents"))
        for (auto& p : r.strings("parents")) c.parents.insert(ConceptId(std::move(p)));
    return c;
}

Viewpoint viewpoint_from_json(const JsonReader& r) {
    return Viewpoint{ViewpointId(r.string("id")), r.string("name"), r.optional_string("description")};
}

TermConceptLink link_from_json(const JsonReader& r) {
    TermConceptLink l;
    l.id = LinkId(r.string("id"));
    l.term_id = TermId(r.string("term"));
    l.concept_id = ConceptId(r.string("concept"));
    for (auto& v : r.strings("viewpoints")) l.viewpoints.insert(ViewpointId(std::move(v)));
    if (r.has("usages")) {
        auto usages = r.at("usages");
        for (std::size_t i = 0; i < usages.array_size(); ++i) {
            auto u = usages.at(i);
            l.usages.insert({UnitId(u.string("unit")), {u.size_value("start"), u.size_value("end")}});
        }
    }
    return l;
}

TextUnit unit_from_json(const JsonReader& r) {
    return TextUnit{UnitId(r.string("id")), DocumentId(r.string("document")), r.size_value("ordinal"),
                    r.string("content")};
}

Document document_from_json(const JsonReader& r) {
    Document d;
    d.id = DocumentId(r.string("id"));
    d.title = r.has("title") ? r.string("title") : "";
    d.source_note = r.has("source_note") ? r.string("source_note") : "";
    for (auto& u : r.strings("units")) d.units.push_back(UnitId(std::move(u)));
    return d;
}

RelationType relation_type_from_json(const JsonReader& r) {
    return RelationType{r.string("name"), r.string("definition")};
}

}  // namespace tkb
