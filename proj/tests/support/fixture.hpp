#pragma once

#include <string_view>
#include <vector>

#include "tkb/corpus.hpp"
#include "tkb/knowledge_base.hpp"

namespace tkb::testing {

// The spatial-domain example: RELAIS designates SATELLITE for meteorologists
// and SATELLITE GEOSTATIONNAIRE for telecommunications people, where it is a
// synonym of SATELLITE DE COMMUNICATION.
struct SatelliteBase {
    KnowledgeBase kb;
    TermId relais, satellite, sat_comm, sat_geo;
    ViewpointId meteo, telecom;
    ConceptId c_satellite, c_sat_geo;
    LinkId relais_meteo, relais_telecom, satellite_meteo, sat_comm_telecom, sat_geo_meteo;
    DocumentId doc1, doc2;
    std::vector<UnitId> units;  // corpus order
};

inline constexpr std::string_view kSatelliteDescription = "engin placé sur une orbite autour de la terre";
inline constexpr std::string_view kDoc1 =
    "Le relais transmet les images de la couverture nuageuse. Ce satellite est un engin placé sur une "
    "orbite autour de la terre.\n\nChaque satellite géostationnaire reste au-dessus du même point de "
    "l'équateur.";
inline constexpr std::string_view kDoc2 =
    "Le relais assure la liaison entre les stations au sol.\n\nUn satellite de communication est un "
    "relais placé en orbite géostationnaire.";

// With `anchored` false the links carry no usages (corpus terms then warn).
SatelliteBase build_satellite_base(bool anchored = true);

// Scalar-offset span of the first case-insensitive occurrence of `needle` in
// the unit; throws when absent.
Span find_span(const KnowledgeBase& kb, const UnitId& unit, std::string_view needle);

TermSpec noun(std::string surface);

}  // namespace tkb::testing
