#include "tkb/api.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <tuple>

#include "tkb/corpus.hpp"
#include "tkb/inference.hpp"
#include "tkb/store.hpp"

namespace tkb::api {

namespace {

[[noreturn]] void bad_request(const std::string& message) { throw Error(ErrorCode::BadRequest, message); }

// Argument access with BadRequest on missing or mistyped fields.
class Args {
public:
    explicit Args(const Json& j) : j_(j) {
        if (!j_.is_object()) bad_request("arguments must be a JSON object");
    }

    bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }

    std::string str(const char* key) const {
        if (!has(key)) bad_request("missing argument '" + std::string(key) + "'");
        const auto& v = j_.at(key);
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        bad_request("argument '" + std::string(key) + "' must be a string");
    }

    std::optional<std::string> opt(const char* key) const {
        if (!has(key)) return std::nullopt;
        return str(key);
    }

    std::string str_or(const char* key, std::string fallback) const { return opt(key).value_or(std::move(fallback)); }

    std::size_t size(const char* key) const {
        if (!has(key)) bad_request("missing argument '" + std::string(key) + "'");
        const auto& v = j_.at(key);
        if (v.is_number_unsigned()) return v.get<std::size_t>();
        if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::size_t>(v.get<long long>());
        if (v.is_string()) {
            const auto s = v.get<std::string>();
            std::size_t pos = 0;
            try {
                if (!s.empty() && s.front() != '-') {
                    auto n = std::stoull(s, &pos);
                    if (pos == s.size()) return static_cast<std::size_t>(n);
                }
            } catch (const std::exception&) {
            }
        }
        bad_request("argument '" + std::string(key) + "' must be a non-negative integer");
    }

    std::size_t size_or(const char* key, std::size_t fallback) const { return has(key) ? size(key) : fallback; }

    std::vector<std::string> list(const char* key) const {
        std::vector<std::string> out;
        if (!has(key)) return out;
        const auto& v = j_.at(key);
        if (v.is_string()) return {v.get<std::string>()};
        if (!v.is_array()) bad_request("argument '" + std::string(key) + "' must be an array of strings");
        for (const auto& e : v) {
            if (!e.is_string()) bad_request("argument '" + std::string(key) + "' must be an array of strings");
            out.push_back(e.get<std::string>());
        }
        return out;
    }

    const Json& raw(const char* key) const { return j_.at(key); }

private:
    const Json& j_;
};

// -- reference resolution: an id, or a human name. Unresolvable references
// pass through unchanged so the engine reports its own Unknown* error.

TermId resolve_term(const KnowledgeBase& kb, const std::string& ref, const std::optional<std::string>& language = {}) {
    if (kb.find_term(TermId(ref))) return TermId(ref);
    if (language) {
        if (auto id = kb.find_term_by_surface(ref, *language)) return *id;
        return TermId(ref);
    }
    auto found = kb.find_terms_by_surface(ref);
    if (found.size() == 1) return found.front();
    if (found.size() > 1)
        throw Error(ErrorCode::InvalidArgument, "surface '" + ref + "' exists in several languages; use the term id",
                    [&] {
                        std::vector<std::string> ids;
                        for (const auto& f : found) ids.push_back(f.str());
                        return ids;
                    }());
    return TermId(ref);
}

ConceptId resolve_concept(const KnowledgeBase& kb, const std::string& ref) {
    if (kb.find_concept(ConceptId(ref))) return ConceptId(ref);
    const auto key = text::normalize(ref);
    std::vector<ConceptId> found;
    for (const auto& [id, c] : kb.tables().concepts) {
        auto* label = kb.find_term(c.label);
        if (label && text::normalize(label->surface) == key) found.push_back(id);
    }
    if (found.size() == 1) return found.front();
    if (found.size() > 1)
        throw Error(ErrorCode::InvalidArgument, "several concepts are labelled '" + ref + "'; use the concept id",
                    [&] {
                        std::vector<std::string> ids;
                        for (const auto& f : found) ids.push_back(f.str());
                        return ids;
                    }());
    return ConceptId(ref);
}

ViewpointId resolve_viewpoint(const KnowledgeBase& kb, const std::string& ref) {
    if (kb.find_viewpoint(ViewpointId(ref))) return ViewpointId(ref);
    if (auto id = kb.find_viewpoint_by_name(ref)) return *id;
    return ViewpointId(ref);
}

std::string sort_key(const std::string& s) { return text::normalize(s); }

// -- payload helpers

Json concept_payload(const KnowledgeBase& kb, const Concept& c) {
    Json j = c;
    j["label_surface"] = kb.display_name(c.id.str());
    return j;
}

Json names_of(const KnowledgeBase& kb, const std::set<std::string>& ids) {
    Json j = Json::object();
    for (const auto& id : ids) j[id] = kb.display_name(id);
    return j;
}

const Concept& require_concept(const KnowledgeBase& kb, const ConceptId& id) {
    auto* c = kb.find_concept(id);
    if (!c) throw Error(ErrorCode::UnknownConcept, "unknown concept " + id.str(), {id.str()});
    return *c;
}

const Term& require_term(const KnowledgeBase& kb, const TermId& id) {
    auto* t = kb.find_term(id);
    if (!t) throw Error(ErrorCode::UnknownEntity, "unknown term " + id.str(), {id.str()});
    return *t;
}

Json graph_payload(const KnowledgeBase& kb, store::GraphMode mode) {
    Json nodes = Json::array(), edges = Json::array();
    for (const auto& [id, c] : kb.tables().concepts) nodes.push_back({{"id", id}, {"label", kb.display_name(id.str())}});
    if (mode != store::GraphMode::assertional)
        for (const auto& [id, c] : kb.tables().concepts)
            for (const auto& p : c.parents)
                edges.push_back({{"source", id}, {"target", p}, {"kind", "est-un"}, {"type", "est-un"}});
    if (mode != store::GraphMode::hierarchy)
        for (const auto& [id, c] : kb.tables().concepts)
            for (const auto& r : c.relations)
                edges.push_back({{"source", id}, {"target", r.target}, {"kind", "assertional"}, {"type", r.type},
                                 {"definition", r.definition}});
    return Json{{"mode", store::to_string(mode)},
                {"nodes", nodes},
                {"edges", edges},
                {"dot", store::export_graph(kb, mode)}};
}

using ReadOp = std::function<Json(const KnowledgeBase&, const Args&)>;
using WriteOp = std::function<Json(KnowledgeBase&, const Args&)>;

const std::map<std::string, ReadOp, std::less<>>& read_ops() {
    static const std::map<std::string, ReadOp, std::less<>> ops{
        {"list-terms",
         [](const KnowledgeBase& kb, const Args&) {
             std::vector<const Term*> terms;
             for (const auto& [id, t] : kb.tables().terms) terms.push_back(&t);
             std::sort(terms.begin(), terms.end(), [](const Term* a, const Term* b) {
                 return std::tuple(sort_key(a->surface), a->id) < std::tuple(sort_key(b->surface), b->id);
             });
             Json out = Json::array();
             for (const auto* t : terms) out.push_back(*t);
             return out;
         }},
        {"list-concepts",
         [](const KnowledgeBase& kb, const Args&) {
             std::vector<const Concept*> concepts;
             for (const auto& [id, c] : kb.tables().concepts) concepts.push_back(&c);
             auto key = [&](const Concept* c) { return std::tuple(sort_key(kb.display_name(c->id.str())), c->id); };
             std::sort(concepts.begin(), concepts.end(),
                       [&](const Concept* a, const Concept* b) { return key(a) < key(b); });
             Json out = Json::array();
             for (const auto* c : concepts) out.push_back(concept_payload(kb, *c));
             return out;
         }},
        {"list-viewpoints",
         [](const KnowledgeBase& kb, const Args&) {
             std::vector<const Viewpoint*> vps;
             for (const auto& [id, v] : kb.tables().viewpoints) vps.push_back(&v);
             std::sort(vps.begin(), vps.end(), [](const Viewpoint* a, const Viewpoint* b) {
                 return std::tuple(sort_key(a->name), a->id) < std::tuple(sort_key(b->name), b->id);
             });
             Json out = Json::array();
             for (const auto* v : vps) out.push_back(*v);
             return out;
         }},
        {"list-documents",
         [](const KnowledgeBase& kb, const Args&) {
             Json out = Json::array();
             for (const auto& [id, d] : kb.tables().documents) out.push_back(d);
             return out;
         }},
        {"list-relation-types",
         [](const KnowledgeBase& kb, const Args&) {
             Json out = Json::array();
             for (const auto& [name, rt] : kb.tables().relation_types) out.push_back(rt);
             return out;
         }},
        {"get-term",
         [](const KnowledgeBase& kb, const Args& a) {
             Json j = require_term(kb, resolve_term(kb, a.str("term"), a.opt("language")));
             return j;
         }},
        {"get-concept",
         [](const KnowledgeBase& kb, const Args& a) {
             return concept_payload(kb, require_concept(kb, resolve_concept(kb, a.str("concept"))));
         }},
        {"get-link",
         [](const KnowledgeBase& kb, const Args& a) {
             const LinkId id(a.str("link"));
             auto* l = kb.find_link(id);
             if (!l) throw Error(ErrorCode::UnknownEntity, "unknown link " + id.str(), {id.str()});
             return Json(*l);
         }},
        {"get-unit",
         [](const KnowledgeBase& kb, const Args& a) {
             const UnitId id(a.str("unit"));
             auto* u = kb.find_unit(id);
             if (!u) throw Error(ErrorCode::UnknownEntity, "unknown text unit " + id.str(), {id.str()});
             return Json(*u);
         }},
        {"get-document",
         [](const KnowledgeBase& kb, const Args& a) {
             const DocumentId id(a.str("document"));
             auto text = document_text(kb, id);
             Json j = *kb.find_document(id);
             j["text"] = std::move(text);
             return j;
         }},
        {"frame",
         [](const KnowledgeBase& kb, const Args& a) {
             const auto id = resolve_concept(kb, a.str("concept"));
             const auto frame = effective_frame(kb, id);
             const auto& c = *kb.find_concept(id);
             Json j = frame;
             j["label"] = c.label;
             j["label_surface"] = kb.display_name(id.str());
             j["description"] = c.description;
             std::set<std::string> ids;
             for (const auto& s : frame.subsumers) ids.insert(s.str());
             for (const auto& r : frame.relations) ids.insert(r.target.str());
             j["names"] = names_of(kb, ids);
             return j;
         }},
        {"subsumers",
         [](const KnowledgeBase& kb, const Args& a) {
             return Json(subsumers(kb, resolve_concept(kb, a.str("concept"))));
         }},
        {"designators",
         [](const KnowledgeBase& kb, const Args& a) {
             Json out = Json::array();
             for (const auto& d : designators(kb, resolve_concept(kb, a.str("concept")))) {
                 Json names = Json::array();
                 for (const auto& v : d.viewpoints) names.push_back(kb.display_name(v.str()));
                 Json j = d;
                 j["surface"] = kb.display_name(d.term.str());
                 j["viewpoint_names"] = names;
                 out.push_back(j);
             }
             return out;
         }},
        {"meanings",
         [](const KnowledgeBase& kb, const Args& a) {
             Json out = Json::array();
             for (const auto& m : meanings(kb, resolve_term(kb, a.str("term"), a.opt("language")))) {
                 Json j = m;
                 j["viewpoint_name"] = kb.display_name(m.viewpoint.str());
                 j["concept_label"] = kb.display_name(m.concept_id.str());
                 out.push_back(j);
             }
             return out;
         }},
        {"synonyms",
         [](const KnowledgeBase& kb, const Args& a) {
             Json out = Json::array();
             const auto term = resolve_term(kb, a.str("term"), a.opt("language"));
             for (const auto& t : synonyms(kb, term, resolve_viewpoint(kb, a.str("viewpoint"))))
                 out.push_back({{"term", t}, {"surface", kb.display_name(t.str())}});
             return out;
         }},
        {"grammatical-relations",
         [](const KnowledgeBase& kb, const Args& a) {
             Json out = Json::array();
             for (const auto& g : grammatical_relations(kb, resolve_term(kb, a.str("term"), a.opt("language")))) {
                 Json j = g;
                 j["surface"] = kb.display_name(g.term.str());
                 out.push_back(j);
             }
             return out;
         }},
        {"occurrences",
         [](const KnowledgeBase& kb, const Args& a) {
             return Json(index_occurrences(kb, resolve_term(kb, a.str("term"), a.opt("language"))));
         }},
        {"contexts",
         [](const KnowledgeBase& kb, const Args& a) {
             return Json(contexts_of(kb, LinkId(a.str("link")), a.size_or("window", 40)));
         }},
        {"search",
         [](const KnowledgeBase& kb, const Args& a) {
             Json out = Json::array();
             for (const auto& hit : keyword_search(kb, a.str("q"))) {
                 const auto& unit = *kb.find_unit(hit.unit);
                 Json j = hit;
                 j["document"] = unit.document;
                 j["text"] = std::string(text::Decoded(unit.content).slice(hit.span));
                 out.push_back(j);
             }
             return out;
         }},
        {"highlight", [](const KnowledgeBase& kb, const Args& a) { return Json(highlighted_unit(kb, UnitId(a.str("unit")))); }},
        {"graph",
         [](const KnowledgeBase& kb, const Args& a) {
             const auto name = a.str_or("mode", "full");
             auto mode = store::parse_graph_mode(name);
             if (!mode) bad_request("mode must be hierarchy, assertional or full");
             return graph_payload(kb, *mode);
         }},
        {"diagnostics",
         [](const KnowledgeBase& kb, const Args&) {
             const auto diags = check_consistency(kb);
             const auto errors = count_errors(diags);
             return Json{{"errors", errors}, {"warnings", diags.size() - errors}, {"diagnostics", diags}};
         }},
    };
    return ops;
}

const std::map<std::string, WriteOp, std::less<>>& write_ops() {
    static const std::map<std::string, WriteOp, std::less<>> ops{
        {"add-term",
         [](KnowledgeBase& kb, const Args& a) {
             TermSpec spec;
             spec.surface = a.str("surface");
             spec.language = a.str_or("language", "fr");
             spec.grammatical_category = a.str_or("grammatical_category", "");
             spec.gender = a.opt("gender");
             spec.number = a.opt("number");
             for (auto& v : a.list("form_variants")) spec.form_variants.insert(std::move(v));
             if (a.has("decomposition")) {
                 const auto& parts = a.raw("decomposition");
                 if (!parts.is_array()) bad_request("decomposition must be an array");
                 for (const auto& p : parts) {
                     const Args part(p);
                     auto role = parse_decomposition_role(part.str_or("role", "head"));
                     if (!role) bad_request("decomposition role must be head or expansion");
                     spec.decomposition.push_back({resolve_term(kb, part.str("term"), spec.language), *role});
                 }
             }
             auto source = parse_term_source(a.str_or("source", "corpus"));
             if (!source) bad_request("source must be corpus or interview");
             spec.source = *source;
             return Json(*kb.find_term(kb.create_term(spec)));
         }},
        {"add-viewpoint",
         [](KnowledgeBase& kb, const Args& a) {
             return Json(*kb.find_viewpoint(kb.create_viewpoint(a.str("name"), a.opt("description"))));
         }},
        {"add-concept",
         [](KnowledgeBase& kb, const Args& a) {
             std::map<std::string, std::string> attributes;
             if (a.has("attributes")) {
                 const auto& attrs = a.raw("attributes");
                 if (!attrs.is_object()) bad_request("attributes must be an object of strings");
                 for (const auto& [k, v] : attrs.items()) {
                     if (!v.is_string()) bad_request("attribute values must be strings");
                     attributes.emplace(k, v.get<std::string>());
                 }
             }
             std::set<ConceptId> parents;
             for (const auto& p : a.list("parents")) parents.insert(resolve_concept(kb, p));
             const auto id = kb.create_concept(resolve_term(kb, a.str("label"), a.opt("language")),
                                               a.str_or("description", ""), std::move(attributes), std::move(parents));
             return concept_payload(kb, *kb.find_concept(id));
         }},
        {"set-attribute",
         [](KnowledgeBase& kb, const Args& a) {
             const auto id = resolve_concept(kb, a.str("concept"));
             kb.set_attribute(id, a.str("key"), a.str("value"));
             return concept_payload(kb, *kb.find_concept(id));
         }},
        {"add-parent",
         [](KnowledgeBase& kb, const Args& a) {
             const auto child = resolve_concept(kb, a.str("child"));
             kb.add_parent(child, resolve_concept(kb, a.str("parent")));
             return concept_payload(kb, *kb.find_concept(child));
         }},
        {"add-relation-type",
         [](KnowledgeBase& kb, const Args& a) {
             const auto name = text::tidy(a.str("name"));
             kb.register_relation_type(name, a.str("definition"));
             return Json(kb.tables().relation_types.at(name));
         }},
        {"add-relation",
         [](KnowledgeBase& kb, const Args& a) {
             const auto source = resolve_concept(kb, a.str("source"));
             kb.add_assertional_relation(source, a.str("type"), resolve_concept(kb, a.str("target")),
                                         a.str_or("definition", ""));
             return concept_payload(kb, *kb.find_concept(source));
         }},
        {"link",
         [](KnowledgeBase& kb, const Args& a) {
             const auto id = kb.link(resolve_term(kb, a.str("term"), a.opt("language")),
                                     resolve_concept(kb, a.str("concept")), resolve_viewpoint(kb, a.str("viewpoint")));
             return Json(*kb.find_link(id));
         }},
        {"anchor",
         [](KnowledgeBase& kb, const Args& a) {
             std::optional<SpanPolicy> policy;
             if (auto p = a.opt("policy")) {
                 policy = parse_span_policy(*p);
                 if (!policy) bad_request("policy must be strict or permissive");
             }
             const LinkId link(a.str("link"));
             auto warning = kb.add_usage(link, UnitId(a.str("unit")), {a.size("start"), a.size("end")}, policy);
             return Json{{"link", *kb.find_link(link)}, {"warning", warning ? Json(*warning) : Json(nullptr)}};
         }},
        {"import-corpus",
         [](KnowledgeBase& kb, const Args& a) {
             const auto id = ingest_document(kb, a.str_or("title", ""), a.str_or("source_note", ""), a.str("text"));
             return Json(*kb.find_document(id));
         }},
        {"import-terms",
         [](KnowledgeBase& kb, const Args& a) {
             const auto report = store::import_term_list(kb, a.str("content"));
             return Json{{"created", report.created}, {"skipped", report.skipped}};
         }},
        {"delete",
         [](KnowledgeBase& kb, const Args& a) {
             const auto id = a.str("id");
             kb.delete_entity(id);
             return Json{{"deleted", id}};
         }},
        {"set-span-policy",
         [](KnowledgeBase& kb, const Args& a) {
             auto policy = parse_span_policy(a.str("policy"));
             if (!policy) bad_request("policy must be strict or permissive");
             kb.set_span_policy(*policy);
             return Json{{"span_policy", to_string(*policy)}};
         }},
    };
    return ops;
}

}  // namespace

const std::vector<OpInfo>& operations() {
    static const std::vector<OpInfo> all = [] {
        std::vector<OpInfo> out;
        for (const auto& [name, fn] : read_ops()) out.push_back({name, false});
        for (const auto& [name, fn] : write_ops()) out.push_back({name, true});
        return out;
    }();
    return all;
}

bool is_mutation(std::string_view op) { return write_ops().contains(op); }

Engine::Engine(KnowledgeBase kb, std::optional<std::filesystem::path> file)
    : kb_(std::move(kb)), file_(std::move(file)) {}

Json Engine::execute(std::string_view op, const Json& args) {
    const Args a(args);
    if (auto it = read_ops().find(op); it != read_ops().end()) {
        std::shared_lock lock(mutex_);
        return it->second(kb_, a);
    }
    if (auto it = write_ops().find(op); it != write_ops().end()) {
        std::unique_lock lock(mutex_);
        KnowledgeBase next = kb_;
        Json out = it->second(next, a);
        if (file_) store::save(next, *file_);
        kb_ = std::move(next);
        return out;
    }
    bad_request("unknown operation '" + std::string(op) + "'");
}

KnowledgeBase Engine::snapshot() const {
    std::shared_lock lock(mutex_);
    return kb_;
}

Json ok_envelope(Json data) { return Json{{"status", "ok"}, {"data", std::move(data)}}; }

Json error_envelope(const Error& error) {
    Json err{{"code", error.name()}, {"message", error.what()}, {"entities", error.entities()}};
    if (!error.rule().empty()) err["rule"] = error.rule();
    return Json{{"status", "error"}, {"error", std::move(err)}};
}

int http_status(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::BadRequest:
        case ErrorCode::ParseError:
            return 400;
        case ErrorCode::UnknownTerm:
        case ErrorCode::UnknownParent:
        case ErrorCode::UnknownConcept:
        case ErrorCode::UnknownEntity:
            return 404;
        case ErrorCode::ViewpointConflict:
        case ErrorCode::CycleWouldForm:
            return 409;
        case ErrorCode::IoError:
            return 500;
        default:
            return 422;
    }
}

}  // namespace tkb::api
