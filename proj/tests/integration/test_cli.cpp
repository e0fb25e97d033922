// Drives the installed subcommands through the real binary (path in the
// SINGPAIR_CLI environment variable) over a small synthetic corpus.

#include "singpair/corpus.hpp"
#include "singpair/eval.hpp"
#include "singpair/oracle.hpp"
#include "singpair/ranker.hpp"
#include "singpair/select.hpp"
#include "support/synthetic.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

std::string cli() {
    const char* path = std::getenv("SINGPAIR_CLI");
    REQUIRE(path != nullptr);
    return path;
}

int run(const std::string& args) {
    std::string command = cli() + " " + args + " >/dev/null 2>&1";
    return std::system(command.c_str()) / 256;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Workspace {
    std::string dir;
    Workspace() {
        dir = "/tmp/singpair_cli_" + std::to_string(::getpid());
        std::string cmd = "mkdir -p " + dir;
        REQUIRE(std::system(cmd.c_str()) == 0);
    }
    ~Workspace() {
        std::string cmd = "rm -rf " + dir;
        std::system(cmd.c_str());
    }
    std::string path(const std::string& name) const { return dir + "/" + name; }
};

} // namespace

TEST_CASE("full pipeline through the binary") {
    Workspace ws;
    singpair::testing::SyntheticOptions options;
    options.records = 12;
    options.seed = 71;
    auto corpus = singpair::testing::make_synthetic_corpus(options);
    singpair::save_corpus(corpus, ws.path("corpus.jsonl"));

    CHECK(run("oracle --corpus " + ws.path("corpus.jsonl") + " --out " + ws.path("gt.jsonl") +
              " --stats " + ws.path("stats.json")) == 0);
    CHECK(run("candidates --corpus " + ws.path("corpus.jsonl") + " --gt " + ws.path("gt.jsonl") +
              " --out " + ws.path("train_inst.jsonl") + " --downsample-ratio 1 --seed 5") == 0);
    CHECK(run("featurize --corpus " + ws.path("corpus.jsonl") + " --instances " +
              ws.path("train_inst.jsonl") + " --out " + ws.path("feats.tsv") + " --idf-out " +
              ws.path("idf.json")) == 0);
    CHECK(run("train --instances " + ws.path("train_inst.jsonl") + " --features " +
              ws.path("feats.tsv") + " --model " + ws.path("model.json") +
              " --trees 30 --seed 7") == 0);
    CHECK(run("score --model " + ws.path("model.json") + " --features " + ws.path("feats.tsv") +
              " --out " + ws.path("scores.tsv")) == 0);
    CHECK(run("select --corpus " + ws.path("corpus.jsonl") + " --out " + ws.path("sel.jsonl") +
              " --scorer lambdamart --model " + ws.path("model.json") + " --idf " +
              ws.path("idf.json") + " --budget 3") == 0);
    CHECK(run("eval-selection --gt " + ws.path("gt.jsonl") + " --selections " +
              ws.path("sel.jsonl") + " --out " + ws.path("report.json") + " --tsv " +
              ws.path("report.tsv")) == 0);
    CHECK(run("eval-rouge --corpus " + ws.path("corpus.jsonl") + " --selections " +
              ws.path("sel.jsonl") + " --out " + ws.path("rouge.json") + " --word-cap 100") == 0);
    CHECK(run("stats --corpus " + ws.path("corpus.jsonl") + " --out " + ws.path("figures.csv")) ==
          0);

    // Outputs parse and look sane.
    auto selections = singpair::load_selections(ws.path("sel.jsonl"));
    CHECK(selections.size() == corpus.size());
    for (const auto& sel : selections) CHECK(sel.selected.size() <= 3);

    auto report = nlohmann::json::parse(slurp(ws.path("report.json")));
    CHECK(report.contains("aggregate"));
    CHECK(report["aggregate"]["all"]["f1"].get<double>() >= 0.0);

    auto rouge = nlohmann::json::parse(slurp(ws.path("rouge.json")));
    CHECK(rouge["records"].get<int>() == 12);
    CHECK(rouge["variants"].contains("rouge-su4"));
}

TEST_CASE("subcommands are idempotent given the same inputs and seed") {
    Workspace ws;
    singpair::testing::SyntheticOptions options;
    options.records = 6;
    options.seed = 73;
    singpair::save_corpus(singpair::testing::make_synthetic_corpus(options),
                          ws.path("corpus.jsonl"));

    REQUIRE(run("oracle --corpus " + ws.path("corpus.jsonl") + " --out " + ws.path("gt.jsonl")) ==
            0);
    for (int round = 0; round < 2; ++round) {
        std::string suffix = std::to_string(round);
        REQUIRE(run("candidates --corpus " + ws.path("corpus.jsonl") + " --gt " +
                    ws.path("gt.jsonl") + " --out " + ws.path("inst" + suffix + ".jsonl") +
                    " --downsample-ratio 1 --seed 9") == 0);
        REQUIRE(run("featurize --corpus " + ws.path("corpus.jsonl") + " --instances " +
                    ws.path("inst" + suffix + ".jsonl") + " --out " +
                    ws.path("feats" + suffix + ".tsv")) == 0);
        REQUIRE(run("train --instances " + ws.path("inst" + suffix + ".jsonl") + " --features " +
                    ws.path("feats" + suffix + ".tsv") + " --model " +
                    ws.path("model" + suffix + ".json") + " --trees 10 --seed 9") == 0);
    }
    CHECK(slurp(ws.path("inst0.jsonl")) == slurp(ws.path("inst1.jsonl")));
    CHECK(slurp(ws.path("feats0.tsv")) == slurp(ws.path("feats1.tsv")));
    CHECK(slurp(ws.path("model0.json")) == slurp(ws.path("model1.json")));
}

TEST_CASE("external scores drive selection") {
    Workspace ws;
    singpair::testing::SyntheticOptions options;
    options.records = 3;
    options.seed = 79;
    auto corpus = singpair::testing::make_synthetic_corpus(options);
    singpair::save_corpus(corpus, ws.path("corpus.jsonl"));

    // Score every candidate of every record: favor early singletons.
    REQUIRE(run("candidates --corpus " + ws.path("corpus.jsonl") + " --out " +
                ws.path("all_inst.jsonl")) == 0);
    auto instances = singpair::load_labeled_instances(ws.path("all_inst.jsonl"));
    std::vector<std::tuple<std::string, std::string, double>> rows;
    for (const auto& item : instances) {
        double score = 1.0 / (2.0 + item.instance.first.sent_index);
        if (item.instance.is_pair()) score *= 0.5;
        rows.emplace_back(item.query_id, item.instance.id(), score);
    }
    singpair::save_scores(rows, ws.path("bert.tsv"));

    REQUIRE(run("select --corpus " + ws.path("corpus.jsonl") + " --out " + ws.path("sel.jsonl") +
                " --scorer external-scores --scores " + ws.path("bert.tsv") + " --budget 2") == 0);
    auto selections = singpair::load_selections(ws.path("sel.jsonl"));
    REQUIRE(selections.size() == 3);
    for (const auto& sel : selections) {
        REQUIRE(sel.selected.size() == 2);
        // The highest scored instance is the first singleton.
        CHECK(sel.selected[0].find(":0") != std::string::npos);
    }

    // Missing scores are a validation error (exit 1).
    std::ofstream(ws.path("partial.tsv")) << "r0\td0:0\t1.0\n";
    CHECK(run("select --corpus " + ws.path("corpus.jsonl") + " --out " + ws.path("sel2.jsonl") +
              " --scorer external-scores --scores " + ws.path("partial.tsv")) == 1);
}

TEST_CASE("baselines run per profile") {
    Workspace ws;
    singpair::testing::SyntheticOptions options;
    options.records = 4;
    options.seed = 83;
    auto corpus = singpair::testing::make_synthetic_corpus(options);
    singpair::save_corpus(corpus, ws.path("corpus.jsonl"));

    for (const std::string method : {"lead", "sumbasic", "klsum", "lexrank"}) {
        REQUIRE(run("baseline --corpus " + ws.path("corpus.jsonl") + " --out " +
                    ws.path(method + ".jsonl") + " --method " + method + " --budget 4") == 0);
        auto selections = singpair::load_selections(ws.path(method + ".jsonl"));
        REQUIRE(selections.size() == corpus.size());
        for (const auto& sel : selections) CHECK(sel.selected.size() <= 4);
    }
    CHECK(run("baseline --corpus " + ws.path("corpus.jsonl") + " --out " + ws.path("x.jsonl") +
              " --method bogus") == 1);
}

TEST_CASE("error paths use the documented exit codes") {
    Workspace ws;
    CHECK(run("oracle --corpus /nonexistent.jsonl --out " + ws.path("gt.jsonl")) == 2);
    std::ofstream(ws.path("bad.jsonl")) << "{broken\n";
    CHECK(run("oracle --corpus " + ws.path("bad.jsonl") + " --out " + ws.path("gt.jsonl")) == 1);
    CHECK(run("select --corpus " + ws.path("bad.jsonl") + " --out x --scorer nope") == 1);
}

namespace {

std::vector<singpair::CorpusRecord> multidoc_corpus(int records, int docs_per_record) {
    singpair::testing::TestRng rng(303);
    std::vector<singpair::CorpusRecord> out;
    for (int r = 0; r < records; ++r) {
        singpair::CorpusRecord record;
        record.record_id = "m" + std::to_string(r);
        for (int d = 0; d < docs_per_record; ++d) {
            singpair::Document doc;
            doc.doc_id = "m" + std::to_string(r) + "d" + std::to_string(d);
            doc.date = "2004-03-" + std::string(d + 10 < 10 ? "0" : "") + std::to_string(d + 10);
            for (int i = 0; i < 8; ++i) {
                singpair::Sentence s;
                s.doc_id = doc.doc_id;
                s.sent_index = i;
                s.text = "event" + std::to_string(r) + "k" + std::to_string(d) + "s" +
                         std::to_string(i) + " detail" + std::to_string(rng.below(40)) +
                         " report core" + std::to_string(r);
                s.tokens = singpair::tokenize(s.text);
                doc.sentences.push_back(std::move(s));
            }
            record.documents.push_back(std::move(doc));
        }
        singpair::ReferenceSummary summary;
        for (int d = 0; d < 2; ++d) {
            const auto& src = record.documents[d].sentences[0];
            summary.texts.push_back(src.text);
            summary.sentences.push_back(src.tokens);
        }
        record.summary = std::move(summary);
        out.push_back(std::move(record));
    }
    return out;
}

} // namespace

TEST_CASE("multi-document records flow through the duc04 profile") {
    Workspace ws;
    auto corpus = multidoc_corpus(4, 3);
    singpair::save_corpus(corpus, ws.path("corpus.jsonl"));

    REQUIRE(run("oracle --corpus " + ws.path("corpus.jsonl") + " --out " + ws.path("gt.jsonl")) ==
            0);
    auto gt = singpair::load_ground_truth(ws.path("gt.jsonl"));
    CHECK(gt.size() == 4);

    // Score every pooled candidate and select with the multi-doc profile.
    REQUIRE(run("candidates --corpus " + ws.path("corpus.jsonl") + " --profile duc04 --out " +
                ws.path("inst.jsonl")) == 0);
    auto instances = singpair::load_labeled_instances(ws.path("inst.jsonl"));
    // 3 docs x top 5 pooled = 15 sentences -> 15 + 105 candidates per record
    CHECK(instances.size() == 4u * (15 + 105));

    std::vector<std::tuple<std::string, std::string, double>> rows;
    singpair::testing::TestRng rng(404);
    for (const auto& item : instances)
        rows.emplace_back(item.query_id, item.instance.id(), rng.uniform());
    singpair::save_scores(rows, ws.path("scores.tsv"));

    REQUIRE(run("select --corpus " + ws.path("corpus.jsonl") + " --profile duc04 --out " +
                ws.path("sel.jsonl") + " --scorer external-scores --scores " +
                ws.path("scores.tsv")) == 0);
    auto selections = singpair::load_selections(ws.path("sel.jsonl"));
    REQUIRE(selections.size() == 4);
    for (const auto& sel : selections) CHECK(sel.selected.size() <= 5);

    REQUIRE(run("eval-selection --gt " + ws.path("gt.jsonl") + " --selections " +
                ws.path("sel.jsonl") + " --out " + ws.path("report.json")) == 0);
    REQUIRE(run("eval-rouge --corpus " + ws.path("corpus.jsonl") + " --profile duc04 " +
                "--selections " + ws.path("sel.jsonl") + " --out " + ws.path("rouge.json")) == 0);
}

TEST_CASE("worker count does not change outputs") {
    Workspace ws;
    singpair::testing::SyntheticOptions options;
    options.records = 10;
    options.seed = 89;
    singpair::save_corpus(singpair::testing::make_synthetic_corpus(options),
                          ws.path("corpus.jsonl"));

    REQUIRE(run("oracle --corpus " + ws.path("corpus.jsonl") + " --out " + ws.path("gt1.jsonl") +
                " --jobs 1") == 0);
    REQUIRE(run("oracle --corpus " + ws.path("corpus.jsonl") + " --out " + ws.path("gt8.jsonl") +
                " --jobs 8") == 0);
    CHECK(slurp(ws.path("gt1.jsonl")) == slurp(ws.path("gt8.jsonl")));

    REQUIRE(run("candidates --corpus " + ws.path("corpus.jsonl") + " --gt " + ws.path("gt1.jsonl") +
                " --out " + ws.path("i1.jsonl") + " --downsample-ratio 2 --seed 3 --jobs 1") == 0);
    REQUIRE(run("candidates --corpus " + ws.path("corpus.jsonl") + " --gt " + ws.path("gt1.jsonl") +
                " --out " + ws.path("i8.jsonl") + " --downsample-ratio 2 --seed 3 --jobs 8") == 0);
    CHECK(slurp(ws.path("i1.jsonl")) == slurp(ws.path("i8.jsonl")));
}
