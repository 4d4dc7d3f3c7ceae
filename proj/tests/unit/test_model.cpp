#include <gtest/gtest.h>

#include "fixture.hpp"
#include "tkb/error.hpp"
#include "tkb/inference.hpp"

using namespace tkb;
using tkb::testing::build_satellite_base;
using tkb::testing::noun;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::BadRequest;
}

}  // namespace

TEST(Terms, CreateAndLookUp) {
    KnowledgeBase kb;
    const auto id = kb.create_term(noun("RELAIS"));
    ASSERT_NE(kb.find_term(id), nullptr);
    EXPECT_EQ(kb.find_term(id)->surface, "RELAIS");
    EXPECT_EQ(kb.find_term_by_surface("relais", "fr"), id);
    EXPECT_EQ(kb.find_term_by_surface("relais", "en"), std::nullopt);
}

TEST(Terms, DuplicateAfterNormalizationIsRejected) {
    KnowledgeBase kb;
    const auto id = kb.create_term(noun("  Satellite  De  Communication "));
    EXPECT_EQ(text::normalize(kb.find_term(id)->surface), text::normalize("satellite de communication"));
    EXPECT_EQ(code_of([&] { kb.create_term(noun("SATELLITE DE COMMUNICATION")); }), ErrorCode::DuplicateSurface);
    EXPECT_EQ(code_of([&] { kb.create_term(noun("RELAIS")), kb.create_term(noun("relais")); }),
              ErrorCode::DuplicateSurface);
}

TEST(Terms, SameSurfaceInAnotherLanguageIsDistinct) {
    KnowledgeBase kb;
    kb.create_term(noun("station"));
    auto en = noun("station");
    en.language = "en";
    EXPECT_NO_THROW(kb.create_term(en));
    EXPECT_EQ(kb.find_terms_by_surface("Station").size(), 2u);
}

TEST(Terms, EmptySurfaceIsRejected) {
    KnowledgeBase kb;
    EXPECT_EQ(code_of([&] { kb.create_term(noun(" \t ")); }), ErrorCode::EmptySurface);
}

TEST(Terms, DecompositionMustReferenceExistingTerms) {
    KnowledgeBase kb;
    auto spec = noun("SATELLITE DE COMMUNICATION");
    spec.decomposition = {{TermId("t42"), DecompositionRole::head}};
    EXPECT_EQ(code_of([&] { kb.create_term(spec); }), ErrorCode::UnknownTerm);
    EXPECT_TRUE(kb.tables().terms.empty());
}

TEST(Concepts, CreateWithDescriptionAndParent) {
    auto f = build_satellite_base();
    EXPECT_EQ(f.kb.find_concept(f.c_satellite)->description, "engin placé sur une orbite autour de la terre");
    const auto subs = subsumers(f.kb, f.c_sat_geo);
    EXPECT_NE(std::find(subs.begin(), subs.end(), f.c_satellite), subs.end());
}

TEST(Concepts, UnknownLabelOrParent) {
    KnowledgeBase kb;
    const auto t = kb.create_term(noun("SATELLITE"));
    EXPECT_EQ(code_of([&] { kb.create_concept(TermId("t9"), ""); }), ErrorCode::UnknownTerm);
    EXPECT_EQ(code_of([&] { kb.create_concept(t, "", {}, {ConceptId("c9")}); }), ErrorCode::UnknownParent);
    EXPECT_TRUE(kb.tables().concepts.empty());
}

TEST(Concepts, CyclesAreRejected) {
    KnowledgeBase kb;
    const auto a = kb.create_concept(kb.create_term(noun("A")), "");
    const auto b = kb.create_concept(kb.create_term(noun("B")), "", {}, {a});
    EXPECT_EQ(code_of([&] { kb.add_parent(a, b); }), ErrorCode::CycleWouldForm);
    EXPECT_EQ(code_of([&] { kb.add_parent(a, a); }), ErrorCode::CycleWouldForm);
    const auto before = kb;
    kb.add_parent(b, a);  // duplicate edge
    EXPECT_EQ(kb, before);
    EXPECT_EQ(code_of([&] { kb.add_parent(a, ConceptId("c77")); }), ErrorCode::UnknownConcept);
}

TEST(Concepts, LongerCycleIsRejected) {
    KnowledgeBase kb;
    std::vector<ConceptId> chain;
    for (const char* s : {"A", "B", "C", "D"}) {
        std::set<ConceptId> parents;
        if (!chain.empty()) parents.insert(chain.back());
        chain.push_back(kb.create_concept(kb.create_term(noun(s)), "", {}, parents));
    }
    EXPECT_EQ(code_of([&] { kb.add_parent(chain.front(), chain.back()); }), ErrorCode::CycleWouldForm);
}

TEST(Relations, RecordedOnceAndInherited) {
    auto f = build_satellite_base();
    auto& kb = f.kb;
    const auto terre = kb.create_concept(kb.create_term(noun("TERRE")), "planète");
    kb.add_assertional_relation(f.c_satellite, "est-en-orbite-autour", terre, "tourne autour de");
    kb.add_assertional_relation(f.c_satellite, "est-en-orbite-autour", terre, "tourne autour de");
    EXPECT_EQ(kb.find_concept(f.c_satellite)->relations.size(), 1u);
    const auto frame = effective_frame(kb, f.c_sat_geo);
    ASSERT_EQ(frame.relations.size(), 1u);
    EXPECT_EQ(frame.relations[0].target, terre);
    EXPECT_EQ(frame.relations[0].origin, f.c_satellite);
}

TEST(Relations, UnknownTargetAndUnregisteredType) {
    auto f = build_satellite_base();
    auto& kb = f.kb;
    EXPECT_EQ(code_of([&] { kb.add_assertional_relation(f.c_satellite, "utilise", ConceptId("c99"), "x"); }),
              ErrorCode::UnknownConcept);
    EXPECT_EQ(code_of([&] { kb.add_assertional_relation(f.c_satellite, "utilise", f.c_sat_geo, ""); }),
              ErrorCode::UnregisteredTypeWithoutDefinition);
    kb.register_relation_type("utilise", "se sert de");
    kb.add_assertional_relation(f.c_satellite, "utilise", f.c_sat_geo, "");
    EXPECT_EQ(kb.find_concept(f.c_satellite)->relations.at(0).definition, "se sert de");
}

TEST(Links, SatelliteExampleDesignations) {
    auto f = build_satellite_base();
    EXPECT_NE(f.relais_meteo, f.relais_telecom);
    try {
        f.kb.link(f.relais, f.c_satellite, f.telecom);
        FAIL() << "conflicting link accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ViewpointConflict);
        ASSERT_FALSE(e.entities().empty());
        EXPECT_EQ(e.entities().front(), f.c_sat_geo.str());
    }
}

TEST(Links, RelinkIsIdempotent) {
    auto f = build_satellite_base();
    const auto before = f.kb;
    EXPECT_EQ(f.kb.link(f.relais, f.c_satellite, f.meteo), f.relais_meteo);
    EXPECT_EQ(f.kb, before);
}

TEST(Links, SecondViewpointJoinsExistingLink) {
    auto f = build_satellite_base();
    const auto vp = f.kb.create_viewpoint("astronomie");
    EXPECT_EQ(f.kb.link(f.relais, f.c_satellite, vp), f.relais_meteo);
    EXPECT_EQ(f.kb.find_link(f.relais_meteo)->viewpoints.size(), 2u);
}

TEST(Usages, ValidSpanIsStored) {
    auto f = build_satellite_base(false);
    const auto unit = f.units[0];
    EXPECT_FALSE(f.kb.add_usage(f.relais_meteo, unit, {3, 9}).has_value());
    const auto* l = f.kb.find_link(f.relais_meteo);
    ASSERT_EQ(l->usages.size(), 1u);
    EXPECT_EQ(text::Decoded(f.kb.find_unit(unit)->content).slice(l->usages.begin()->span), "relais");
}

TEST(Usages, OutOfBoundsSpan) {
    auto f = build_satellite_base(false);
    const auto n = text::length(f.kb.find_unit(f.units[0])->content);
    EXPECT_EQ(code_of([&] { f.kb.add_usage(f.relais_meteo, f.units[0], {n - 2, n + 1}); }),
              ErrorCode::SpanOutOfBounds);
    EXPECT_EQ(code_of([&] { f.kb.add_usage(f.relais_meteo, f.units[0], {4, 4}); }), ErrorCode::SpanOutOfBounds);
}

TEST(Usages, MismatchRejectedWhenStrictStoredWhenPermissive) {
    auto f = build_satellite_base(false);
    auto& kb = f.kb;
    const auto unit = kb.add_document("antennes", "", {"Une antenne parabolique."});
    const auto uid = kb.find_document(unit)->units.front();
    const Span antenne{4, 11};
    EXPECT_EQ(code_of([&] { kb.add_usage(f.relais_meteo, uid, antenne); }), ErrorCode::SpanMismatch);
    EXPECT_TRUE(kb.find_link(f.relais_meteo)->usages.empty());

    const auto warning = kb.add_usage(f.relais_meteo, uid, antenne, SpanPolicy::permissive);
    ASSERT_TRUE(warning.has_value());
    EXPECT_EQ(warning->rule, Rule::SpanMismatch);
    EXPECT_EQ(warning->severity, Severity::warning);
    EXPECT_EQ(kb.find_link(f.relais_meteo)->usages.size(), 1u);
}

TEST(Usages, PermissivePolicyIsTheBaseDefaultWhenSet) {
    auto f = build_satellite_base(false);
    f.kb.set_span_policy(SpanPolicy::permissive);
    EXPECT_TRUE(f.kb.add_usage(f.relais_meteo, f.units[0], {0, 2}).has_value());
}

TEST(Delete, ViewpointCascadesToLinks) {
    auto f = build_satellite_base();
    f.kb.delete_entity(f.meteo.str());
    EXPECT_EQ(f.kb.find_link(f.relais_meteo), nullptr);
    EXPECT_NE(f.kb.find_link(f.relais_telecom), nullptr);

    // oracle: recompute which links survive from the original table
    auto g = build_satellite_base();
    std::set<LinkId> expected;
    for (const auto& [id, l] : g.kb.tables().links) {
        auto vps = l.viewpoints;
        vps.erase(g.meteo);
        if (!vps.empty()) expected.insert(id);
    }
    std::set<LinkId> actual;
    for (const auto& [id, l] : f.kb.tables().links) actual.insert(id);
    EXPECT_EQ(actual, expected);
}

TEST(Delete, UnknownIdAndLabelInUse) {
    auto f = build_satellite_base();
    EXPECT_EQ(code_of([&] { f.kb.delete_entity("t999"); }), ErrorCode::UnknownEntity);
    const auto before = f.kb;
    EXPECT_EQ(code_of([&] { f.kb.delete_entity(f.satellite.str()); }), ErrorCode::LabelInUse);
    EXPECT_EQ(f.kb, before);
}

TEST(Delete, ConceptRemovesLinksAndIncomingEdges) {
    auto f = build_satellite_base();
    f.kb.delete_entity(f.c_satellite.str());
    EXPECT_TRUE(f.kb.find_concept(f.c_sat_geo)->parents.empty());
    EXPECT_EQ(f.kb.find_link(f.relais_meteo), nullptr);
    EXPECT_EQ(f.kb.find_link(f.satellite_meteo), nullptr);
    // the label is free now
    EXPECT_NO_THROW(f.kb.delete_entity(f.satellite.str()));
    // and decompositions naming it went with it
    EXPECT_TRUE(f.kb.find_term(f.sat_comm)->decomposition.empty());
}

TEST(Delete, DocumentRemovesUnitsAndAnchors) {
    auto f = build_satellite_base();
    f.kb.delete_entity(f.doc1.str());
    EXPECT_EQ(f.kb.find_unit(f.units[0]), nullptr);
    EXPECT_TRUE(f.kb.find_link(f.relais_meteo)->usages.empty());
    EXPECT_EQ(f.kb.find_link(f.relais_telecom)->usages.size(), 1u);
    EXPECT_EQ(code_of([&] { f.kb.delete_entity(f.units[2].str()); }), ErrorCode::InvalidArgument);
}

TEST(Ids, NeverReusedAfterDelete) {
    KnowledgeBase kb;
    const auto a = kb.create_term(noun("A"));
    kb.delete_entity(a.str());
    EXPECT_NE(kb.create_term(noun("B")), a);
}

TEST(Integrity, FromTablesNamesTheViolatedRule) {
    auto f = build_satellite_base();
    auto tables = f.kb.tables();
    tables.concepts.at(f.c_satellite).parents.insert(f.c_sat_geo);
    try {
        KnowledgeBase::from_tables(tables);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IntegrityError);
        EXPECT_EQ(e.rule(), "Cycle");
    }
    EXPECT_NO_THROW(KnowledgeBase::from_tables_unchecked(tables));
    EXPECT_NO_THROW(KnowledgeBase::from_tables(f.kb.tables()));
}
