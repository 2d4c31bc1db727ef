#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <map>
#include <random>

#include "fieldrank/scoring.hpp"
#include "fieldrank/synth_config.hpp"
#include "helpers.hpp"

using namespace fieldrank;
using testutil::publication;
using testutil::researcher;

namespace {

// Corpus with explicit HCA flags: pubs[i] is an HCA iff flags[i].
struct ScoringFixture {
    Corpus corpus;
    HcaSet hcas;

    ScoringFixture(std::vector<Publication> pubs, std::vector<std::uint8_t> flags,
                   std::vector<AuthorshipLink> links) {
        corpus.taxonomy.add("F1", "Field 1", "U1", "Discipline 1");
        corpus.roster.push_back(researcher("R1", "F1", "U1"));
        corpus.roster.push_back(researcher("R2", "F1", "U1"));
        corpus.publications = std::move(pubs);
        corpus.links = std::move(links);
        hcas.threshold_p = 1.0;
        hcas.flags = std::move(flags);
        for (std::size_t i = 0; i < corpus.publications.size(); ++i)
            if (hcas.flags[i]) hcas.members.insert(corpus.publications[i].publication_id);
    }
};

std::vector<std::string> byline(int n) {
    return std::vector<std::string>(static_cast<std::size_t>(n), "Author, X.");
}

}  // namespace

TEST_CASE("full counting: any HCA byline qualifies") {
    ScoringFixture fx({publication("P1", 2007, {"c"}, 10, byline(3)),
                       publication("P2", 2007, {"c"}, 1, byline(2))},
                      {1, 0}, {{"P1", "R1", 0, 3}, {"P2", "R2", 0, 2}});
    CorpusIndex index(fx.corpus);
    TopScientistSet ts = top_scientists_full(fx.corpus, index, fx.hcas);
    CHECK(ts.members == std::unordered_set<std::string>{"R1"});
    CHECK(ts.mode == CountingMode::full);
}

TEST_CASE("full counting: empty HCA set yields no members") {
    ScoringFixture fx({publication("P1", 2007, {"c"}, 10)}, {0}, {{"P1", "R1", 0, 1}});
    CorpusIndex index(fx.corpus);
    CHECK(top_scientists_full(fx.corpus, index, fx.hcas).members.empty());
}

TEST_CASE("fractional output sums reciprocal byline lengths") {
    SECTION("no HCA links means zero") {
        ScoringFixture fx({publication("P1", 2007, {"c"}, 10)}, {0}, {{"P1", "R1", 0, 1}});
        CorpusIndex index(fx.corpus);
        CHECK(fractional_output("R1", fx.corpus, index, fx.hcas).value == 0.0);
    }
    SECTION("a solo-authored HCA is a full credit") {
        ScoringFixture fx({publication("P1", 2007, {"c"}, 10)}, {1}, {{"P1", "R1", 0, 1}});
        CorpusIndex index(fx.corpus);
        CHECK(fractional_output("R1", fx.corpus, index, fx.hcas).value == 1.0);
    }
    SECTION("4-author and 20-author HCAs add 0.25 + 0.05") {
        ScoringFixture fx({publication("P1", 2007, {"c"}, 10, byline(4)),
                           publication("P2", 2007, {"c"}, 20, byline(20))},
                          {1, 1}, {{"P1", "R1", 0, 4}, {"P2", "R1", 3, 20}});
        CorpusIndex index(fx.corpus);
        double value = fractional_output("R1", fx.corpus, index, fx.hcas).value;
        CHECK(value == Catch::Approx(0.30).margin(1e-12));
        TopScientistSet ts = top_scientists_fractional(fx.corpus, index, fx.hcas, 0.1);
        CHECK(ts.members.count("R1") == 1);
    }
}

TEST_CASE("fractional membership boundary is inclusive") {
    // one HCA with exactly 10 authors: credit 0.1 == theta
    ScoringFixture fx({publication("P1", 2007, {"c"}, 10, byline(10))}, {1},
                      {{"P1", "R1", 0, 10}});
    CorpusIndex index(fx.corpus);
    CHECK(fractional_output("R1", fx.corpus, index, fx.hcas).value == 0.1);
    CHECK(top_scientists_fractional(fx.corpus, index, fx.hcas, 0.1).members.count("R1") == 1);

    SECTION("a value below theta is out") {
        ScoringFixture below({publication("P1", 2007, {"c"}, 10, byline(20))}, {1},
                             {{"P1", "R1", 0, 20}});
        CorpusIndex idx(below.corpus);
        CHECK(fractional_output("R1", below.corpus, idx, below.hcas).value == 0.05);
        CHECK(top_scientists_fractional(below.corpus, idx, below.hcas, 0.1).members.empty());
    }
}

TEST_CASE("theta domain is (0, 1]") {
    ScoringFixture fx({publication("P1", 2007, {"c"}, 10)}, {1}, {{"P1", "R1", 0, 1}});
    CorpusIndex index(fx.corpus);
    CHECK_THROWS_AS(top_scientists_fractional(fx.corpus, index, fx.hcas, 0.0),
                    validation_error);
    CHECK_THROWS_AS(top_scientists_fractional(fx.corpus, index, fx.hcas, 1.5),
                    validation_error);
    CHECK_NOTHROW(top_scientists_fractional(fx.corpus, index, fx.hcas, 1.0));
}

TEST_CASE("repeated links of one publication are credited once") {
    ScoringFixture fx({publication("P1", 2007, {"c"}, 10, byline(4))}, {1},
                      {{"P1", "R1", 0, 4}, {"P1", "R1", 2, 4}});
    CorpusIndex index(fx.corpus);
    CHECK(fractional_output("R1", fx.corpus, index, fx.hcas).value == 0.25);
}

TEST_CASE("compensated sum is permutation independent") {
    std::mt19937 gen(42);
    std::vector<double> terms;
    for (int i = 0; i < 200; ++i) terms.push_back(1.0 / (1 + gen() % 1000));
    std::vector<double> shuffled = terms;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    CHECK(compensated_sum(terms) == compensated_sum(shuffled));
}

TEST_CASE("scoring properties on a generated corpus") {
    SynthConfig config = default_synth_config(11);
    SynthResult synth = generate_corpus(config);
    synth.corpus.links = std::move(synth.truth);
    const Corpus& corpus = synth.corpus;
    CorpusIndex index(corpus);
    StrataIndex strata = build_strata(corpus.publications);
    PercentileIndex pct = compute_percentiles(corpus.publications, strata);
    HcaSet one = hca_set(corpus.publications, pct, 1.0);
    HcaSet five = hca_set(corpus.publications, pct, 5.0);

    TopScientistSet full1 = top_scientists_full(corpus, index, one);
    TopScientistSet full5 = top_scientists_full(corpus, index, five);
    TopScientistSet frac1 = top_scientists_fractional(corpus, index, one, 0.1);

    SECTION("fractional members are full members") {
        for (const auto& id : frac1.members) CHECK(full1.members.count(id) == 1);
    }
    SECTION("full membership is monotone in the threshold") {
        for (const auto& id : full1.members) CHECK(full5.members.count(id) == 1);
    }
    SECTION("fractional membership is antitone in theta") {
        TopScientistSet loose = top_scientists_fractional(corpus, index, one, 0.05);
        TopScientistSet tight = top_scientists_fractional(corpus, index, one, 0.2);
        for (const auto& id : tight.members) CHECK(frac1.members.count(id) == 1);
        for (const auto& id : frac1.members) CHECK(loose.members.count(id) == 1);
    }
    SECTION("membership equals the inclusive theta comparison") {
        auto outputs = fractional_outputs(corpus, index, one);
        for (const auto& [rid, value] : outputs) {
            CHECK(frac1.members.count(rid) == (value >= 0.1 ? 1u : 0u));
        }
    }
}

TEST_CASE("per-publication credit conservation") {
    SECTION("all-national corpus: sums land on 1 exactly") {
        SynthConfig config = default_synth_config(3);
        for (auto& f : config.fields) f.world_staff_multiplier = 0.0;
        SynthResult synth = generate_corpus(config);

        std::map<std::string, std::pair<double, int>> per_pub;  // sum, link count
        for (const auto& link : synth.truth) {
            auto& [sum, n] = per_pub[link.publication_id];
            sum += 1.0 / link.author_count_total;
            ++n;
        }
        REQUIRE_FALSE(per_pub.empty());
        for (const auto& pub : synth.corpus.publications) {
            auto it = per_pub.find(pub.publication_id);
            REQUIRE(it != per_pub.end());
            CHECK(it->second.second == pub.author_count_total);
            CHECK(it->second.first == Catch::Approx(1.0).margin(1e-9));
        }
    }
    SECTION("with world authors sums stay strictly below 1") {
        SynthConfig config = default_synth_config(4);
        SynthResult synth = generate_corpus(config);
        std::map<std::string, double> per_pub;
        for (const auto& link : synth.truth)
            per_pub[link.publication_id] += 1.0 / link.author_count_total;

        std::map<std::string, int> national_bylines;
        for (const auto& link : synth.truth) ++national_bylines[link.publication_id];
        int mixed = 0;
        for (const auto& pub : synth.corpus.publications) {
            auto it = per_pub.find(pub.publication_id);
            if (it == per_pub.end()) continue;
            CHECK(it->second <= 1.0 + 1e-12);
            if (national_bylines[pub.publication_id] < pub.author_count_total) {
                CHECK(it->second < 1.0);
                ++mixed;
            }
        }
        CHECK(mixed > 0);  // the default corpus does contain mixed bylines
    }
}
