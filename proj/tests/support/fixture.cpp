#include "fixture.hpp"

#include <stdexcept>

namespace tkb::testing {

TermSpec noun(std::string surface) {
    TermSpec spec;
    spec.surface = std::move(surface);
    spec.language = "fr";
    spec.grammatical_category = "noun";
    return spec;
}

Span find_span(const KnowledgeBase& kb, const UnitId& unit, std::string_view needle) {
    const auto* u = kb.find_unit(unit);
    if (!u) throw std::invalid_argument("no unit " + unit.str());
    const auto hits = text::find_all(text::normalize32(u->content), text::normalize32(needle));
    // normalize32 collapses whitespace, so only use it on single-spaced text
    if (hits.empty() || text::length(u->content) != text::normalize32(u->content).size())
        throw std::invalid_argument("'" + std::string(needle) + "' not found in " + unit.str());
    return hits.front();
}

SatelliteBase build_satellite_base(bool anchored) {
    SatelliteBase f;
    auto& kb = f.kb;
    f.relais = kb.create_term(noun("RELAIS"));
    f.satellite = kb.create_term(noun("SATELLITE"));

    auto comm = noun("SATELLITE DE COMMUNICATION");
    comm.decomposition = {{f.satellite, DecompositionRole::head}};
    f.sat_comm = kb.create_term(comm);

    auto geo = noun("SATELLITE GEOSTATIONNAIRE");
    geo.form_variants = {"satellite géostationnaire"};
    geo.decomposition = {{f.satellite, DecompositionRole::head}};
    f.sat_geo = kb.create_term(geo);

    f.meteo = kb.create_viewpoint("météorologie");
    f.telecom = kb.create_viewpoint("télécommunications");

    f.c_satellite = kb.create_concept(f.satellite, std::string(kSatelliteDescription));
    f.c_sat_geo = kb.create_concept(f.sat_geo, "satellite dont l'orbite est synchrone avec la rotation de la terre",
                                    {{"orbite", "géostationnaire"}}, {f.c_satellite});

    f.relais_meteo = kb.link(f.relais, f.c_satellite, f.meteo);
    f.relais_telecom = kb.link(f.relais, f.c_sat_geo, f.telecom);
    f.satellite_meteo = kb.link(f.satellite, f.c_satellite, f.meteo);
    f.sat_comm_telecom = kb.link(f.sat_comm, f.c_sat_geo, f.telecom);
    f.sat_geo_meteo = kb.link(f.sat_geo, f.c_sat_geo, f.meteo);

    f.doc1 = ingest_document(kb, "Observation de la terre", "corpus spatial", kDoc1);
    f.doc2 = ingest_document(kb, "Télécommunications", "corpus spatial", kDoc2);
    f.units = corpus_order(kb);

    if (anchored) {
        kb.add_usage(f.relais_meteo, f.units[0], find_span(kb, f.units[0], "relais"));
        kb.add_usage(f.satellite_meteo, f.units[0], find_span(kb, f.units[0], "satellite"));
        kb.add_usage(f.sat_geo_meteo, f.units[1], find_span(kb, f.units[1], "satellite géostationnaire"));
        kb.add_usage(f.relais_telecom, f.units[2], find_span(kb, f.units[2], "relais"));
        kb.add_usage(f.sat_comm_telecom, f.units[3], find_span(kb, f.units[3], "satellite de communication"));
    }
    return f;
}

}  // namespace tkb::testing
