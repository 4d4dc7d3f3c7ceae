#include "tkb/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "tkb/api.hpp"
#include "tkb/service.hpp"
#include "tkb/store.hpp"

namespace tkb::cli {

namespace {

constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One invocation of an engine op, plus how to print its result.
struct Invocation {
    std::string op;
    Json args = Json::object();
};

std::string join(const Json& arr, std::string_view key, std::string_view sep = ", ") {
    std::string out;
    for (const auto& e : arr) {
        if (!out.empty()) out += sep;
        out += key.empty() ? e.get<std::string>() : e.at(std::string(key)).get<std::string>();
    }
    return out;
}

std::string span_text(const Json& span) {
    return "[" + std::to_string(span.at("start").get<std::size_t>()) + ", " +
           std::to_string(span.at("end").get<std::size_t>()) + ")";
}

void render(std::string_view op, const Json& data, std::ostream& out) {
    if (op == "list-terms") {
        for (const auto& t : data)
            out << t["id"].get<std::string>() << '\t' << t["surface"].get<std::string>() << '\t'
                << t["language"].get<std::string>() << '\n';
    } else if (op == "list-concepts") {
        for (const auto& c : data)
            out << c["id"].get<std::string>() << '\t' << c["label_surface"].get<std::string>() << '\n';
    } else if (op == "list-viewpoints") {
        for (const auto& v : data) out << v["id"].get<std::string>() << '\t' << v["name"].get<std::string>() << '\n';
    } else if (op == "list-documents") {
        for (const auto& d : data)
            out << d["id"].get<std::string>() << '\t' << d["title"].get<std::string>() << '\t' << d["units"].size()
                << " unit(s): " << join(d["units"], "") << '\n';
    } else if (op == "frame") {
        const auto& names = data["names"];
        out << data["label_surface"].get<std::string>() << " (" << data["concept"].get<std::string>() << ")\n";
        out << "  description: " << data["description"].get<std::string>() << '\n';
        std::string subs;
        for (const auto& s : data["subsumers"]) subs += (subs.empty() ? "" : " < ") + names[s.get<std::string>()].get<std::string>();
        out << "  est-un: " << subs << '\n';
        for (const auto& a : data["attributes"]) {
            if (a["shadowed"].get<bool>()) continue;
            out << "  " << a["key"].get<std::string>() << ": " << a["value"].get<std::string>();
            if (a["distance"].get<std::size_t>() > 0) out << "  [from " << names[a["origin"].get<std::string>()].get<std::string>() << "]";
            out << '\n';
        }
        for (const auto& r : data["relations"]) {
            out << "  " << r["type"].get<std::string>() << " -> " << names[r["target"].get<std::string>()].get<std::string>()
                << "  (" << r["definition"].get<std::string>() << ")";
            if (r["origin"] != data["concept"]) out << "  [from " << names[r["origin"].get<std::string>()].get<std::string>() << "]";
            out << '\n';
        }
    } else if (op == "get-term") {
        out << data["surface"].get<std::string>() << " (" << data["id"].get<std::string>() << ")\n";
        out << "  language: " << data["language"].get<std::string>() << '\n';
        out << "  source: " << data["source"].get<std::string>() << '\n';
        for (const char* key : {"grammatical_category", "gender", "number", "expansion"})
            if (data.contains(key) && data[key].is_string() && !data[key].get<std::string>().empty())
                out << "  " << key << ": " << data[key].get<std::string>() << '\n';
        if (!data["form_variants"].empty()) out << "  variants: " << join(data["form_variants"], "") << '\n';
        for (const auto& d : data["decomposition"])
            out << "  " << d["role"].get<std::string>() << ": " << d["term"].get<std::string>() << '\n';
    } else if (op == "meanings") {
        for (const auto& m : data)
            out << m["viewpoint_name"].get<std::string>() << '\t' << m["concept_label"].get<std::string>() << " ("
                << m["concept"].get<std::string>() << ")\n";
    } else if (op == "synonyms") {
        for (const auto& s : data) out << s["term"].get<std::string>() << '\t' << s["surface"].get<std::string>() << '\n';
    } else if (op == "designators") {
        for (const auto& d : data)
            out << d["surface"].get<std::string>() << " (" << d["term"].get<std::string>() << ")\t"
                << join(d["viewpoint_names"], "") << '\n';
    } else if (op == "grammatical-relations") {
        for (const auto& g : data) out << g["type"].get<std::string>() << '\t' << g["surface"].get<std::string>() << '\n';
    } else if (op == "occurrences") {
        for (const auto& o : data)
            out << o["unit"].get<std::string>() << '\t' << span_text(o["span"]) << '\t'
                << o["matched_form"].get<std::string>() << '\n';
    } else if (op == "contexts") {
        for (const auto& c : data)
            out << c["unit"].get<std::string>() << '\t' << c["left"].get<std::string>() << "[["
                << c["match"].get<std::string>() << "]]" << c["right"].get<std::string>() << '\n';
    } else if (op == "search") {
        for (const auto& h : data)
            out << h["unit"].get<std::string>() << '\t' << span_text(h["span"]) << '\t' << h["text"].get<std::string>()
                << '\n';
    } else if (op == "highlight") {
        const auto chars = text::decode(data["content"].get<std::string>());
        std::u32string marked;
        std::size_t at = 0;
        for (const auto& a : data["annotations"]) {
            const auto s = a["span"]["start"].get<std::size_t>(), e = a["span"]["end"].get<std::size_t>();
            marked += chars.substr(at, s - at) + U"[[" + chars.substr(s, e - s) + U"]]";
            at = e;
        }
        marked += chars.substr(at);
        out << text::encode(marked) << '\n';
    } else if (op == "graph") {
        out << data["dot"].get<std::string>();
    } else if (op == "diagnostics") {
        for (const auto& d : data["diagnostics"])
            out << d["severity"].get<std::string>() << '\t' << d["rule"].get<std::string>() << '\t'
                << join(d["entities"], "", " ") << '\t' << d["message"].get<std::string>() << '\n';
        out << data["errors"].get<std::size_t>() << " errors, " << data["warnings"].get<std::size_t>()
            << " warnings\n";
    } else if (op == "subsumers") {
        out << join(data, "", " ") << '\n';
    } else if (op == "anchor") {
        out << data["link"]["id"].get<std::string>() << '\n';
        if (!data["warning"].is_null()) out << "warning: SpanMismatch: " << data["warning"]["message"].get<std::string>() << '\n';
    } else if (op == "import-terms") {
        out << data["created"].size() << " created, " << data["skipped"].size() << " skipped\n";
        for (const auto& s : data["skipped"]) out << "skipped\t" << s.get<std::string>() << '\n';
    } else if (op == "delete") {
        out << "deleted " << data["deleted"].get<std::string>() << '\n';
    } else if (op == "set-span-policy") {
        out << "span policy: " << data["span_policy"].get<std::string>() << '\n';
    } else if (data.is_object() && data.contains("id")) {
        out << data["id"].get<std::string>() << '\n';
    } else if (data.is_object() && data.contains("name")) {
        out << data["name"].get<std::string>() << '\n';
    } else {
        out << data.dump(2, ' ', false, Json::error_handler_t::replace) << '\n';
    }
}

std::filesystem::path require_kb(const std::string& kb) {
    if (kb.empty()) throw UsageError("no knowledge base file: pass --kb <file> or set TKB_FILE");
    return kb;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Terminological knowledge base: build, verify and consult a term/concept/corpus base", "tkb"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    std::string kb_path;
    bool json_output = false;
    app.add_option("--kb", kb_path, "Knowledge base file")->envname("TKB_FILE");
    app.add_flag("--json", json_output, "Print the API envelope instead of text");

    Invocation inv;
    std::function<void()> special;  // for subcommands that are not plain engine ops

    auto op = [&](const char* name, const char* help, const char* engine_op) {
        auto* sub = app.add_subcommand(name, help);
        sub->callback([&inv, engine_op] { inv.op = engine_op; });
        return sub;
    };

    // -- init
    bool force = false, init_permissive = false;
    auto* init = app.add_subcommand("init", "Create an empty knowledge base file");
    init->add_flag("--force", force, "Overwrite an existing file");
    init->add_flag("--permissive", init_permissive, "Store mismatching usage spans with a warning");
    init->callback([&] { inv.op = "init"; });

    // -- construction
    std::string file, title, note;
    auto* import_corpus = op("import-corpus", "Ingest a plain-text document", "import-corpus");
    import_corpus->add_option("file", file, "Text file")->required();
    import_corpus->add_option("--title", title, "Document title (default: file name)");
    import_corpus->add_option("--note", note, "Provenance note");

    std::string terms_file;
    auto* import_terms = op("import-terms", "Register terms from a tab-separated term list", "import-terms");
    import_terms->add_option("file", terms_file, "Term list file")->required();

    std::string surface, language = "fr", category, gender, number, source = "corpus";
    std::vector<std::string> variants, heads, expansions;
    auto* add_term = op("add-term", "Create a term", "add-term");
    add_term->add_option("surface", surface, "Surface form")->required();
    add_term->add_option("--lang", language, "Language tag")->capture_default_str();
    add_term->add_option("--category", category, "Grammatical category");
    add_term->add_option("--gender", gender, "Grammatical gender");
    add_term->add_option("--number", number, "Grammatical number");
    add_term->add_option("--variant", variants, "Form variant (repeatable)");
    add_term->add_option("--head", heads, "Head component term (repeatable)");
    add_term->add_option("--expansion", expansions, "Expansion component term (repeatable)");
    add_term->add_option("--source", source, "corpus or interview")->check(CLI::IsMember({"corpus", "interview"}));

    std::string vp_name, vp_description;
    auto* add_vp = op("add-viewpoint", "Create a viewpoint (speaker community)", "add-viewpoint");
    add_vp->add_option("name", vp_name, "Viewpoint name")->required();
    add_vp->add_option("--description", vp_description, "Description");

    std::string label, description;
    std::vector<std::string> attrs, parents;
    auto* add_concept = op("add-concept", "Create a concept labelled by a term", "add-concept");
    add_concept->add_option("label", label, "Label term (id or surface)")->required();
    add_concept->add_option("--description", description, "Free-text description");
    add_concept->add_option("--attr", attrs, "Attribute key=value (repeatable)");
    add_concept->add_option("--parent", parents, "Parent concept (repeatable)");

    std::string concept_ref, key, value;
    auto* set_attr = op("set-attribute", "Set a local attribute of a concept", "set-attribute");
    set_attr->add_option("concept", concept_ref)->required();
    set_attr->add_option("key", key)->required();
    set_attr->add_option("value", value)->required();

    std::string child, parent;
    auto* add_parent = op("add-parent", "Add an est-un edge child -> parent", "add-parent");
    add_parent->add_option("child", child)->required();
    add_parent->add_option("parent", parent)->required();

    std::string rt_name, rt_definition;
    auto* add_rt = op("add-relation-type", "Register an assertional relation type", "add-relation-type");
    add_rt->add_option("name", rt_name)->required();
    add_rt->add_option("definition", rt_definition)->required();

    std::string rel_source, rel_type, rel_target, rel_definition;
    auto* add_rel = op("add-relation", "Add an assertional relation", "add-relation");
    add_rel->add_option("source", rel_source)->required();
    add_rel->add_option("type", rel_type)->required();
    add_rel->add_option("target", rel_target)->required();
    add_rel->add_option("--definition", rel_definition, "Definition text (default: registered one)");

    std::string term_ref, viewpoint_ref;
    auto* link = op("link", "Link a term to a concept under a viewpoint", "link");
    link->add_option("term", term_ref)->required();
    link->add_option("concept", concept_ref)->required();
    link->add_option("viewpoint", viewpoint_ref)->required();

    std::string link_id, unit_id;
    std::size_t start = 0, end = 0;
    bool permissive = false;
    auto* anchor = op("anchor", "Anchor a usage of a link in a text unit", "anchor");
    anchor->add_option("link", link_id)->required();
    anchor->add_option("unit", unit_id)->required();
    anchor->add_option("start", start, "First character (scalar offset)")->required();
    anchor->add_option("end", end, "One past the last character")->required();
    anchor->add_flag("--permissive", permissive, "Accept a span that is not an occurrence (warning)");

    std::string entity_id;
    auto* del = op("delete", "Delete an entity and its dependent records", "delete");
    del->add_option("id", entity_id)->required();

    std::string policy;
    auto* span_policy = op("span-policy", "Set the default usage span policy", "set-span-policy");
    span_policy->add_option("policy", policy)->required()->check(CLI::IsMember({"strict", "permissive"}));

    // -- verification and consultation
    auto* check = app.add_subcommand("check", "Run the consistency checker");
    check->callback([&] { inv.op = "check"; });

    auto* show_concept = op("show-concept", "Print a concept's effective frame", "frame");
    show_concept->add_option("concept", concept_ref)->required();
    auto* show_term = op("show-term", "Print a term record", "get-term");
    show_term->add_option("term", term_ref)->required();
    auto* meanings = op("meanings", "Concepts a term designates, per viewpoint", "meanings");
    meanings->add_option("term", term_ref)->required();
    auto* synonyms = op("synonyms", "Synonyms of a term under a viewpoint", "synonyms");
    synonyms->add_option("term", term_ref)->required();
    synonyms->add_option("viewpoint", viewpoint_ref)->required();
    auto* designators = op("designators", "Terms designating a concept", "designators");
    designators->add_option("concept", concept_ref)->required();
    auto* subsumers = op("subsumers", "est-un closure of a concept", "subsumers");
    subsumers->add_option("concept", concept_ref)->required();
    auto* grammar = op("grammar", "Grammatical relations of a term", "grammatical-relations");
    grammar->add_option("term", term_ref)->required();
    auto* occurrences = op("occurrences", "Occurrences of a term in the corpus", "occurrences");
    occurrences->add_option("term", term_ref)->required();
    std::size_t window = 40;
    auto* contexts = op("contexts", "Keyword-in-context view of a link's usages", "contexts");
    contexts->add_option("link", link_id)->required();
    contexts->add_option("--window", window, "Characters each side")->capture_default_str();
    std::string query;
    auto* search = op("search", "Keyword search over the corpus", "search");
    search->add_option("query", query)->required();
    auto* highlight = op("highlight", "Print a text unit with term occurrences marked", "highlight");
    highlight->add_option("unit", unit_id)->required();
    op("terms", "List terms alphabetically", "list-terms");
    op("concepts", "List concepts alphabetically by label", "list-concepts");
    op("viewpoints", "List viewpoints", "list-viewpoints");
    op("documents", "List documents", "list-documents");
    std::string mode = "full";
    auto* export_graph = op("export-graph", "Export the concept network as Graphviz DOT", "graph");
    export_graph->add_option("--mode", mode, "hierarchy, assertional or full")
        ->capture_default_str()
        ->check(CLI::IsMember({"hierarchy", "assertional", "full"}));

    std::string host = "127.0.0.1", static_dir;
    int port = 8080;
    auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
    serve->add_option("--port", port, "Port")->capture_default_str();
    serve->add_option("--host", host, "Bind address")->capture_default_str();
    serve->add_option("--static-dir", static_dir, "Directory served under /ui");
    serve->callback([&] { inv.op = "serve"; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsageError;
    }

    // Build engine arguments from the parsed options.
    auto& a = inv.args;
    const std::string& o = inv.op;
    if (o == "import-corpus") {
        a["text"] = store::read_file(file);
        a["title"] = title.empty() ? std::filesystem::path(file).filename().string() : title;
        a["source_note"] = note;
    } else if (o == "import-terms") {
        a["content"] = store::read_file(terms_file);
    } else if (o == "add-term") {
        a = {{"surface", surface}, {"language", language}, {"grammatical_category", category}, {"source", source},
             {"form_variants", variants}};
        if (!gender.empty()) a["gender"] = gender;
        if (!number.empty()) a["number"] = number;
        Json parts = Json::array();
        for (const auto& h : heads) parts.push_back({{"term", h}, {"role", "head"}});
        for (const auto& x : expansions) parts.push_back({{"term", x}, {"role", "expansion"}});
        if (!parts.empty()) a["decomposition"] = parts;
    } else if (o == "add-viewpoint") {
        a["name"] = vp_name;
        if (!vp_description.empty()) a["description"] = vp_description;
    } else if (o == "add-concept") {
        a = {{"label", label}, {"description", description}, {"parents", parents}};
        Json attributes = Json::object();
        for (const auto& kv : attrs) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) {
                err << "usage error: --attr expects key=value, got '" << kv << "'\n";
                return kUsageError;
            }
            attributes[kv.substr(0, eq)] = kv.substr(eq + 1);
        }
        a["attributes"] = attributes;
    } else if (o == "set-attribute") {
        a = {{"concept", concept_ref}, {"key", key}, {"value", value}};
    } else if (o == "add-parent") {
        a = {{"child", child}, {"parent", parent}};
    } else if (o == "add-relation-type") {
        a = {{"name", rt_name}, {"definition", rt_definition}};
    } else if (o == "add-relation") {
        a = {{"source", rel_source}, {"type", rel_type}, {"target", rel_target}, {"definition", rel_definition}};
    } else if (o == "link") {
        a = {{"term", term_ref}, {"concept", concept_ref}, {"viewpoint", viewpoint_ref}};
    } else if (o == "anchor") {
        a = {{"link", link_id}, {"unit", unit_id}, {"start", start}, {"end", end}};
        if (permissive) a["policy"] = "permissive";
    } else if (o == "delete") {
        a["id"] = entity_id;
    } else if (o == "set-span-policy") {
        a["policy"] = policy;
    } else if (o == "frame" || o == "designators" || o == "subsumers") {
        a["concept"] = concept_ref;
    } else if (o == "get-term" || o == "meanings" || o == "grammatical-relations" || o == "occurrences") {
        a["term"] = term_ref;
    } else if (o == "synonyms") {
        a = {{"term", term_ref}, {"viewpoint", viewpoint_ref}};
    } else if (o == "contexts") {
        a = {{"link", link_id}, {"window", window}};
    } else if (o == "search") {
        a["q"] = query;
    } else if (o == "highlight") {
        a["unit"] = unit_id;
    } else if (o == "graph") {
        a["mode"] = mode;
    }

    try {
        const auto path = require_kb(kb_path);

        if (o == "init") {
            if (std::filesystem::exists(path) && !force)
                throw Error(ErrorCode::IoError, path.string() + " already exists (use --force)");
            KnowledgeBase kb;
            if (init_permissive) kb.set_span_policy(SpanPolicy::permissive);
            store::save(kb, path);
            if (json_output)
                out << api::ok_envelope({{"file", path.string()}}).dump() << '\n';
            else
                out << "initialized " << path.string() << '\n';
            return 0;
        }

        if (o == "check") {
            // Unvalidated load: the checker reports what a validated load would refuse.
            api::Engine engine(store::load(path, store::Validation::none));
            const auto data = engine.execute("diagnostics");
            if (json_output)
                out << api::ok_envelope(data).dump(-1, ' ', false, Json::error_handler_t::replace) << '\n';
            else
                render("diagnostics", data, out);
            return data["errors"].get<std::size_t>() > 0 ? kDomainError : 0;
        }

        if (o == "serve") {
            api::Engine engine(store::load(path), path);
            service::Server server(engine, static_dir.empty() ? std::nullopt
                                                              : std::optional<std::filesystem::path>(static_dir));
            const int bound = server.bind(host, port);
            if (bound < 0) throw Error(ErrorCode::IoError, "cannot bind " + host + ":" + std::to_string(port));
            out << "serving " << path.string() << " on http://" << host << ':' << bound << std::endl;
            return server.listen_after_bind() ? 0 : kDomainError;
        }

        api::Engine engine(store::load(path), path);
        const auto data = engine.execute(o, a);
        if (json_output)
            out << api::ok_envelope(data).dump(-1, ' ', false, Json::error_handler_t::replace) << '\n';
        else
            render(o, data, out);
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        if (json_output) out << api::error_envelope(e).dump(-1, ' ', false, Json::error_handler_t::replace) << '\n';
        err << e.what() << '\n';
        return kDomainError;
    }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace tkb::cli
