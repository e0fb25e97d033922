#include "singpair/oracle.hpp"

#include "singpair/errors.hpp"
#include "support/synthetic.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <set>

using namespace singpair;

namespace {

Document doc_from_texts(const std::string& id, const std::vector<std::string>& texts) {
    Document doc;
    doc.doc_id = id;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        Sentence s;
        s.doc_id = id;
        s.sent_index = static_cast<int>(i);
        s.text = texts[i];
        s.tokens = tokenize(s.text);
        doc.sentences.push_back(std::move(s));
    }
    return doc;
}

} // namespace

TEST_CASE("remove_overlap removes every occurrence of shared types") {
    CHECK(remove_overlap({"a", "b", "c", "b"}, {"b", "d"}) ==
          std::vector<std::string>{"a", "c"});
    CHECK(remove_overlap({"a", "b"}, {"x", "y"}) == std::vector<std::string>{"a", "b"});
    CHECK(remove_overlap({"a", "b"}, {"a", "b"}) == std::vector<std::string>{});
}

TEST_CASE("remove_overlap can compare stems") {
    CHECK(remove_overlap({"running", "fast"}, {"run"}, true) ==
          std::vector<std::string>{"fast"});
    CHECK(remove_overlap({"running", "fast"}, {"run"}, false) ==
          std::vector<std::string>{"running", "fast"});
}

TEST_CASE("fused summary sentence yields a primary and secondary pair") {
    Document doc = doc_from_texts(
        "d", {"pakistan denies its spy agency helped plan the attack",
              "the bombing killed 58 people"});
    auto summary = tokenize("pakistan denies its spy agency helped plan bombing that killed 58");

    auto set = derive_ground_truth(doc, summary, StopwordList::english());
    REQUIRE(set.has_value());
    CHECK(set->primary == SentenceRef{"d", 0});
    REQUIRE(set->secondary.has_value());
    CHECK(*set->secondary == SentenceRef{"d", 1});
    CHECK(set->raw_size == 2);
}

TEST_CASE("unmatchable summary sentence yields no set") {
    Document doc = doc_from_texts("d", {"alpha beta gamma", "delta epsilon zeta"});
    auto summary = tokenize("unrelated words entirely different");
    CHECK(!derive_ground_truth(doc, summary, StopwordList::english()).has_value());

    // A single shared content word is below the two-type threshold.
    auto one_shared = tokenize("alpha mismatch everywhere");
    CHECK(!derive_ground_truth(doc, one_shared, StopwordList::english()).has_value());
}

TEST_CASE("verbatim summary sentence is a singleton") {
    Document doc = doc_from_texts(
        "d", {"rescuers searched the rubble for survivors",
              "officials promised an investigation into the blast"});
    auto summary = tokenize("officials promised an investigation into the blast");
    auto set = derive_ground_truth(doc, summary, StopwordList::english());
    REQUIRE(set.has_value());
    CHECK(set->primary == SentenceRef{"d", 1});
    CHECK(!set->secondary.has_value());
    CHECK(set->raw_size == 1);
}

TEST_CASE("picks beyond two are counted but discarded") {
    Document doc = doc_from_texts("d", {"alpha beta gamma omega extra0",
                                        "delta epsilon zeta extra3 extra4",
                                        "eta iota kappa extra5 extra6"});
    auto summary = tokenize("alpha beta gamma omega delta epsilon zeta eta iota kappa");
    auto set = derive_ground_truth(doc, summary, StopwordList::english());
    REQUIRE(set.has_value());
    CHECK(set->raw_size == 3);
    CHECK(set->primary == SentenceRef{"d", 0}); // largest overlap first
    REQUIRE(set->secondary.has_value());
    CHECK(*set->secondary == SentenceRef{"d", 1});
}

TEST_CASE("residual token count never increases and the loop terminates") {
    testing::SyntheticOptions options;
    options.records = 20;
    options.seed = 17;
    auto records = make_synthetic_corpus(options);
    const auto& stop = StopwordList::english();

    for (const auto& record : records) {
        const Document& doc = record.documents.front();
        for (const auto& sentence : record.summary->sentences) {
            // Replay the loop manually to observe the residual.
            std::vector<std::string> residual = sentence;
            std::vector<bool> chosen(doc.sentences.size(), false);
            int iterations = 0;
            while (true) {
                int pick = -1;
                double best = -1.0;
                for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
                    if (chosen[i]) continue;
                    auto shared = [&] {
                        int types = 0;
                        auto res_content = content_words(residual, stop);
                        auto src_content = content_words(doc.sentences[i].tokens, stop);
                        std::set<std::string> res_types(res_content.begin(), res_content.end());
                        std::set<std::string> seen;
                        for (const auto& t : src_content)
                            if (res_types.count(t) && seen.insert(t).second) ++types;
                        return types;
                    }();
                    if (shared < 2) continue;
                    double sim = rouge_average(doc.sentences[i].tokens, residual);
                    if (sim > best) {
                        best = sim;
                        pick = static_cast<int>(i);
                    }
                }
                if (pick < 0) break;
                ++iterations;
                chosen[pick] = true;
                auto next = remove_overlap(residual, doc.sentences[pick].tokens);
                CHECK(next.size() < residual.size()); // at least one token removed
                residual = std::move(next);
                REQUIRE(iterations <= static_cast<int>(
                                          std::min(sentence.size(), doc.sentences.size())));
            }
        }
    }
}

TEST_CASE("derive_all drops unmatchable sentences and keeps indices") {
    CorpusRecord record;
    record.record_id = "r";
    record.documents.push_back(doc_from_texts(
        "d", {"rescuers searched the rubble for survivors",
              "officials promised a full investigation into the blast"}));
    ReferenceSummary summary;
    for (const auto& text : {"rescuers searched the rubble",
                             "totally unrelated novel content",
                             "officials promised a full investigation"}) {
        summary.texts.push_back(text);
        summary.sentences.push_back(tokenize(text));
    }
    record.summary = summary;

    auto sets = derive_all(record, StopwordList::english());
    REQUIRE(sets.size() == 2);
    CHECK(sets[0].summary_index == 0);
    CHECK(sets[1].summary_index == 2);

    CorpusRecord no_summary = record;
    no_summary.summary.reset();
    CHECK_THROWS_AS(derive_all(no_summary, StopwordList::english()), ValidationError);
}

TEST_CASE("multi-document records flatten through the mega-document") {
    CorpusRecord record;
    record.record_id = "r";
    Document d1 = doc_from_texts("d1", {"alpha beta gamma delta"});
    d1.date = "2001-01-02";
    Document d2 = doc_from_texts("d2", {"epsilon zeta eta theta"});
    d2.date = "2001-01-01";
    record.documents = {d1, d2};
    ReferenceSummary summary;
    summary.texts = {"alpha beta epsilon zeta"};
    summary.sentences = {tokenize(summary.texts[0])};
    record.summary = summary;

    auto sets = derive_all(record, StopwordList::english());
    REQUIRE(sets.size() == 1);
    // Both documents contribute; references keep original doc ids.
    REQUIRE(sets[0].secondary.has_value());
    std::set<std::string> docs{sets[0].primary.doc_id, sets[0].secondary->doc_id};
    CHECK(docs == std::set<std::string>{"d1", "d2"});
}

TEST_CASE("corpus statistics histograms sum to one") {
    testing::SyntheticOptions options;
    options.records = 30;
    options.seed = 23;
    auto records = make_synthetic_corpus(options);
    auto stats = corpus_statistics(records, StopwordList::english());

    double size_sum = 0.0;
    for (const auto& [size, frac] : stats.size_histogram) size_sum += frac;
    CHECK(size_sum == Catch::Approx(1.0).epsilon(1e-9));

    double primary_sum = 0.0;
    for (const auto& [pos, frac] : stats.primary_position_histogram) primary_sum += frac;
    CHECK(primary_sum == Catch::Approx(1.0).epsilon(1e-9));

    double secondary_sum = 0.0;
    for (const auto& [pos, frac] : stats.secondary_position_histogram) secondary_sum += frac;
    CHECK(secondary_sum == Catch::Approx(1.0).epsilon(1e-9));

    CHECK(stats.empty_fraction == Catch::Approx(stats.size_histogram.at(0)));
    for (const auto& [pos, rate] : stats.fusion_rate_by_summary_position) {
        CHECK(pos <= 4);
        CHECK(rate >= 0.0);
        CHECK(rate <= 1.0);
    }
    CHECK_THROWS_AS(corpus_statistics({}, StopwordList::english()), ValidationError);
}

TEST_CASE("all-copy corpus puts every set at raw size one") {
    std::vector<CorpusRecord> records;
    for (int r = 0; r < 5; ++r) {
        CorpusRecord record;
        record.record_id = "r" + std::to_string(r);
        record.documents.push_back(doc_from_texts(
            "d", {"alpha" + std::to_string(r) + " beta" + std::to_string(r) + " gamma",
                  "delta" + std::to_string(r) + " epsilon" + std::to_string(r) + " zeta"}));
        ReferenceSummary summary;
        summary.texts = {record.documents[0].sentences[0].text};
        summary.sentences = {record.documents[0].sentences[0].tokens};
        record.summary = summary;
        records.push_back(std::move(record));
    }
    auto stats = corpus_statistics(records, StopwordList::english());
    CHECK(stats.size_histogram.at(1) == Catch::Approx(1.0));
    CHECK(stats.empty_fraction == 0.0);
    for (const auto& [pos, rate] : stats.fusion_rate_by_summary_position) CHECK(rate == 0.0);
}

TEST_CASE("ground truth files round trip") {
    std::vector<std::pair<std::string, std::vector<GroundTruthSet>>> data;
    GroundTruthSet pair_set;
    pair_set.summary_index = 0;
    pair_set.primary = {"d1", 3};
    pair_set.secondary = SentenceRef{"d2", 7};
    pair_set.raw_size = 4;
    GroundTruthSet single_set;
    single_set.summary_index = 2;
    single_set.primary = {"d1", 0};
    single_set.raw_size = 1;
    data.emplace_back("r1", std::vector<GroundTruthSet>{pair_set, single_set});
    data.emplace_back("r2", std::vector<GroundTruthSet>{});

    std::string path = "/tmp/singpair_gt_roundtrip.jsonl";
    save_ground_truth(data, path);
    auto loaded = load_ground_truth(path);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0].first == "r1");
    CHECK(loaded[0].second == data[0].second);
    CHECK(loaded[1].second.empty());
    std::remove(path.c_str());
}
