#include <gtest/gtest.h>

#include <healthadvisor/wearable_catalog.hpp>

#include "test_support.hpp"

using namespace healthadvisor;

namespace {

const char* kCatalogHeader = "name,manufacturer,capabilities,url\n";

WearableCatalog catalog_from(const std::string& body, SynonymMap synonyms = {}) {
    test_support::TempDir dir;
    test_support::write_file(dir.file("catalog.csv"), kCatalogHeader + body);
    return WearableCatalog::load(dir.file("catalog.csv"), std::move(synonyms));
}

}  // namespace

TEST(SynonymsCsv, LoadsFixture) {
    SynonymMap synonyms = load_synonyms_csv(test_support::fixture_dir() / "synonyms.csv");
    EXPECT_EQ(synonyms.at("breathing"), "respiration");
    EXPECT_EQ(synonyms.at("walking"), "gait");
    EXPECT_EQ(synonyms.size(), 5u);
}

TEST(SynonymsCsv, RejectsBadEntries) {
    test_support::TempDir dir;
    auto load_text = [&](const std::string& text) {
        test_support::write_file(dir.file("syn.csv"), text);
        return load_synonyms_csv(dir.file("syn.csv"));
    };
    EXPECT_THROW(load_text("word,target\nx,y\n"), ValidationError);  // header
    EXPECT_THROW(load_text("token,canonical\nheart rate,rate\n"), ValidationError);
    EXPECT_THROW(load_text("token,canonical\nbreathing,the\n"), ValidationError);
    EXPECT_THROW(load_text("token,canonical\nx1,y1\nx1,z1\n"), ValidationError);
    // Targets must be fixed points of the map.
    EXPECT_THROW(load_text("token,canonical\na1,b1\nb1,c1\n"), ValidationError);
    // A canonical chain ending on itself is fine.
    SynonymMap ok = load_text("token,canonical\na1,c1\nb1,c1\n");
    EXPECT_EQ(ok.size(), 2u);
}

TEST(WearableCatalog, LoadsFixtureCatalog) {
    SynonymMap synonyms = load_synonyms_csv(test_support::fixture_dir() / "synonyms.csv");
    WearableCatalog catalog =
        WearableCatalog::load(test_support::fixture_dir() / "catalog.csv", synonyms);
    EXPECT_EQ(catalog.records().size(), 8u);

    const WearableRecord* spire = catalog.find("Spire");
    ASSERT_NE(spire, nullptr);
    EXPECT_EQ(spire->capability_tokens, (TokenSet{"monitor", "rate", "respiration"}));
    EXPECT_EQ(catalog.find("No Such Device"), nullptr);

    // Without the synonym map "breathing" stays a distinct capability token.
    WearableCatalog plain = WearableCatalog::load(test_support::fixture_dir() / "catalog.csv");
    EXPECT_EQ(plain.find("Spire")->capability_tokens,
              (TokenSet{"breathing", "monitor", "rate", "respiration"}));
}

TEST(WearableCatalog, RejectsBadRecords) {
    test_support::TempDir dir;
    test_support::write_file(dir.file("bad.csv"), "device,maker,caps,link\nA,B,c,d\n");
    EXPECT_THROW(WearableCatalog::load(dir.file("bad.csv")), ValidationError);

    EXPECT_THROW(catalog_from("Spire,S,breathing,u\nSpire,S,pulse,u\n"), ValidationError);
    EXPECT_THROW(catalog_from(",M,pulse,u\n"), ValidationError);
    EXPECT_THROW(catalog_from("OnlyStop,M,the of and,u\n"), ValidationError);
}

TEST(WearableCatalog, AddsWearableRulesWithSlugIds) {
    WearableCatalog catalog = catalog_from("Dexcom G5,Dexcom,glucose sensor,u\n");
    RuleSet rules;
    catalog.add_wearable_rules(rules);
    const auto& entries = rules.entries(EntityType::Wearable);
    ASSERT_EQ(entries.size(), 1u);
    EXPECT_EQ(entries[0].canonical, "dexcom_g5");
    EXPECT_EQ(entries[0].surface, "dexcom g5");
}

TEST(Jaccard, KnownValues) {
    EXPECT_DOUBLE_EQ(jaccard({"red", "green"}, {"red", "green"}), 1.0);
    EXPECT_DOUBLE_EQ(jaccard({"red", "green", "pink"}, {"red", "green", "blue"}), 0.5);
    EXPECT_DOUBLE_EQ(jaccard({"red"}, {"blue"}), 0.0);
    EXPECT_DOUBLE_EQ(jaccard({}, {}), 0.0);
}

TEST(MatchWearables, SubsetScoresOneAndSortsByName) {
    WearableCatalog catalog = catalog_from(
        "Beta,M,red green blue yellow,u\n"
        "Alpha,M,red green blue,u\n"
        "Gamma,M,cyan magenta,u\n");
    auto matches = match_wearables(catalog, {"green", "red"}, 0.5, "m");
    ASSERT_EQ(matches.size(), 2u);
    EXPECT_EQ(matches[0].wearable, "Alpha");
    EXPECT_EQ(matches[1].wearable, "Beta");
    EXPECT_DOUBLE_EQ(matches[0].score, 1.0);
    EXPECT_DOUBLE_EQ(matches[1].score, 1.0);
    EXPECT_EQ(matches[0].measurement, "m");
}

TEST(MatchWearables, JaccardFallbackRespectsThreshold) {
    WearableCatalog catalog = catalog_from(
        "Alpha,M,red green blue,u\n"
        "Beta,M,red green blue yellow,u\n"
        "Gamma,M,cyan magenta,u\n");
    // {green, red, pink}: Alpha 2/4 = 0.5, Beta 2/5 = 0.4, Gamma 0.
    auto strict = match_wearables(catalog, {"green", "red", "pink"}, 0.5);
    ASSERT_EQ(strict.size(), 1u);
    EXPECT_EQ(strict[0].wearable, "Alpha");
    EXPECT_DOUBLE_EQ(strict[0].score, 0.5);

    auto loose = match_wearables(catalog, {"green", "red", "pink"}, 0.4);
    ASSERT_EQ(loose.size(), 2u);
    EXPECT_EQ(loose[0].wearable, "Alpha");
    EXPECT_EQ(loose[1].wearable, "Beta");
    EXPECT_DOUBLE_EQ(loose[1].score, 0.4);
}

TEST(MatchWearables, RejectsBadArguments) {
    WearableCatalog catalog = catalog_from("Alpha,M,red green,u\n");
    EXPECT_THROW(match_wearables(catalog, {}, 0.5), DomainError);
    EXPECT_THROW(match_wearables(catalog, {"red"}, 0.0), DomainError);
    EXPECT_THROW(match_wearables(catalog, {"red"}, 1.5), DomainError);
}

TEST(ExtendGraph, AddsWearableEdgesWithoutMutatingInput) {
    ConceptGraph graph;
    graph.add_edge({EntityType::Symptom, "racing_heart"},
                   {EntityType::Measurement, "heart_rate"}, "doc:0");
    WearableCatalog catalog = catalog_from("HeartTrack,M,heart rate monitor,u\n");

    ConceptGraph extended = extend_graph(graph, catalog, 0.5);
    NodeRef wearable{EntityType::Wearable, "hearttrack"};
    EXPECT_TRUE(extended.has_node(wearable.type, wearable.canonical));
    EXPECT_EQ(extended.display_name(wearable), "HeartTrack");
    EXPECT_EQ(extended.out_neighbors({EntityType::Measurement, "heart_rate"}).count(wearable),
              1u);
    bool catalog_provenance = false;
    for (const auto& edge : extended.edges()) {
        if (edge.to == wearable) catalog_provenance = edge.provenance == "catalog";
    }
    EXPECT_TRUE(catalog_provenance);

    EXPECT_EQ(graph.edge_count(), 1u);
    EXPECT_FALSE(graph.has_node(wearable.type, wearable.canonical));
}

TEST(ExtendGraph, SkipsMeasurementsThatNormalizeToNothing) {
    ConceptGraph graph;
    graph.add_node(EntityType::Measurement, "the_of");
    WearableCatalog catalog = catalog_from("Alpha,M,red green,u\n");
    ConceptGraph extended = extend_graph(graph, catalog, 0.5);
    EXPECT_EQ(extended.edge_count(), 0u);
}

TEST(DemandCounters, RoundTripAndDefaults) {
    test_support::TempDir dir;
    DemandCounters counters;
    counters.increment("joint_mobility");
    counters.increment("joint_mobility");
    counters.increment("tremor_amplitude");
    counters.save(dir.file("counters.txt"));
    EXPECT_FALSE(std::filesystem::exists(dir.file("counters.txt.tmp")));
    EXPECT_EQ(test_support::read_file(dir.file("counters.txt")),
              "joint_mobility 2\ntremor_amplitude 1\n");

    DemandCounters loaded = DemandCounters::load(dir.file("counters.txt"));
    EXPECT_EQ(loaded.get("joint_mobility"), 2);
    EXPECT_EQ(loaded.get("never_seen"), 0);

    EXPECT_EQ(DemandCounters::load_or_empty(dir.file("missing.txt")).counts().size(), 0u);
    EXPECT_THROW(DemandCounters::load(dir.file("missing.txt")), ValidationError);
}

TEST(DemandCounters, RejectsMalformedLinesWithLineNumber) {
    test_support::TempDir dir;
    test_support::write_file(dir.file("bad.txt"), "ok 3\nbroken\n");
    try {
        DemandCounters::load(dir.file("bad.txt"));
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
    }
    test_support::write_file(dir.file("neg.txt"), "ok -3\n");
    EXPECT_THROW(DemandCounters::load(dir.file("neg.txt")), ValidationError);
}

TEST(GapReportTest, ListsUncoveredMeasurementsByDemand) {
    ConceptGraph graph;
    graph.add_node(EntityType::Measurement, "m_a");
    graph.add_node(EntityType::Measurement, "m_b");
    graph.add_node(EntityType::Measurement, "m_d");
    graph.add_edge({EntityType::Measurement, "m_c"}, {EntityType::Wearable, "w"}, "catalog");

    DemandCounters demand;
    demand.increment("m_b", 5);

    GapReport report = gap_report(graph, demand);
    ASSERT_EQ(report.entries.size(), 3u);
    EXPECT_EQ(report.entries[0], (GapReport::Entry{"m_b", 5}));
    EXPECT_EQ(report.entries[1], (GapReport::Entry{"m_a", 0}));
    EXPECT_EQ(report.entries[2], (GapReport::Entry{"m_d", 0}));

    EXPECT_EQ(export_gap_report(report), "m_b,5\nm_a,0\nm_d,0\n");
}

TEST(GapReportTest, FixtureGraphHasKnownGaps) {
    RuleSet rules = RuleSet::load(test_support::fixture_dir() / "rules.json");
    SynonymMap synonyms = load_synonyms_csv(test_support::fixture_dir() / "synonyms.csv");
    WearableCatalog catalog =
        WearableCatalog::load(test_support::fixture_dir() / "catalog.csv", synonyms);
    ConceptGraph graph = extend_graph(
        build_graph(load_corpus_dir(test_support::fixture_dir() / "corpus"), rules),
        catalog, 0.5);

    GapReport report = gap_report(graph, DemandCounters{});
    ASSERT_EQ(report.entries.size(), 2u);
    EXPECT_EQ(report.entries[0].measurement, "joint_mobility");
    EXPECT_EQ(report.entries[1].measurement, "tremor_amplitude");
}
