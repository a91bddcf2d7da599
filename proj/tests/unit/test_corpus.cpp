#include <doctest.h>

#include <sstream>

#include "scimet/corpus.hpp"
#include "scimet/errors.hpp"
#include "scimet/synth.hpp"

using namespace scimet;

namespace {

CitationCorpus ingest_strings(const std::string& papers, const std::string& citations,
                              bool header = false) {
    std::istringstream p(papers), c(citations);
    return ingest(p, c, header);
}

} // namespace

TEST_CASE("ingest builds both indexes from the three-paper example") {
    const auto corpus = ingest_strings(
        "1\t1970\t10\n"
        "2\t1969\t10\n"
        "3\t1971\t20\n",
        "3\t1\n"
        "3\t2\n");
    REQUIRE(corpus.size() == 3);
    const PaperIndex a = corpus.require(1), b = corpus.require(2), c = corpus.require(3);

    const auto refs = corpus.references(c);
    REQUIRE(refs.size() == 2);
    CHECK(refs[0] == a);
    CHECK(refs[1] == b);
    REQUIRE(corpus.citers(a).size() == 1);
    CHECK(corpus.citers(a)[0] == c);
    CHECK(corpus.citers(c).empty());
    CHECK(corpus.year(a) == 1970);
    CHECK(corpus.journal_external(corpus.journal(c)) == 20);
}

TEST_CASE("dangling citations are dropped and counted") {
    const auto corpus = ingest_strings("1\t1970\t10\n", "1\t99\n99\t1\n");
    CHECK(corpus.citation_count() == 0);
    CHECK(corpus.dangling_dropped() == 2);
    CHECK(validate(corpus).dangling_references == 2);
}

TEST_CASE("duplicate citations are dropped, first occurrence kept in order") {
    const auto corpus = ingest_strings(
        "1\t1970\t10\n2\t1969\t10\n3\t1968\t20\n",
        "1\t2\n1\t3\n1\t2\n");
    CHECK(corpus.duplicates_dropped() == 1);
    const auto refs = corpus.references(corpus.require(1));
    REQUIRE(refs.size() == 2);
    CHECK(corpus.external_id(refs[0]) == 2);
    CHECK(corpus.external_id(refs[1]) == 3);
}

TEST_CASE("malformed rows raise parse errors with line numbers") {
    CHECK_THROWS_AS(ingest_strings("1\t1970\n", ""), ParseError);
    CHECK_THROWS_AS(ingest_strings("1\tabc\t10\n", ""), ParseError);
    try {
        ingest_strings("1\t1970\t10\n2\t1969\n", "");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line_number == 2);
    }
    CHECK_THROWS_AS(ingest_strings("1\t1970\t10\n", "1\n"), ParseError);
}

TEST_CASE("empty papers input is an error") {
    CHECK_THROWS_AS(ingest_strings("", ""), DataError);
}

TEST_CASE("header flag skips the first row of both files") {
    const auto corpus = ingest_strings(
        "paper_id\tyear\tjournal_id\n1\t1970\t10\n2\t1969\t10\n",
        "citing\tcited\n1\t2\n", true);
    CHECK(corpus.size() == 2);
    CHECK(corpus.citation_count() == 1);
}

TEST_CASE("carriage returns are stripped") {
    const auto corpus = ingest_strings("1\t1970\t10\r\n2\t1969\t10\r\n", "1\t2\r\n");
    CHECK(corpus.size() == 2);
    CHECK(corpus.citation_count() == 1);
}

TEST_CASE("duplicate paper ids are rejected") {
    CHECK_THROWS_AS(ingest_strings("1\t1970\t10\n1\t1971\t10\n", ""), DataError);
}

TEST_CASE("validate flags self-citations and forward-in-time citations") {
    const auto corpus = ingest_strings(
        "1\t1969\t10\n2\t1971\t10\n",
        "1\t1\n1\t2\n");
    const CorpusReport report = validate(corpus);
    CHECK(report.self_citations == 1);
    CHECK(report.forward_in_time == 1); // 1969 paper citing a 1971 paper
    CHECK(report.citation_count == 2);  // flagged, kept
    CHECK(report.papers_per_year.at(1969) == 1);
    CHECK(report.papers_per_year.at(1971) == 1);
}

TEST_CASE("validate on a citation-free corpus reports zero violations") {
    const auto corpus = ingest_strings("1\t1970\t10\n2\t1971\t0\n", "");
    const CorpusReport report = validate(corpus);
    CHECK(report.self_citations == 0);
    CHECK(report.forward_in_time == 0);
    CHECK(report.dangling_references == 0);
    CHECK(report.duplicate_citations == 0);
}

TEST_CASE("cohort returns exactly the papers of that year") {
    const auto corpus = ingest_strings("1\t1970\t10\n2\t1969\t10\n3\t1970\t20\n", "");
    const auto cohort = corpus.cohort(1970);
    REQUIRE(cohort.size() == 2);
    CHECK(corpus.external_id(cohort[0]) == 1);
    CHECK(corpus.external_id(cohort[1]) == 3);
    CHECK(corpus.cohort(1950).empty());
}

TEST_CASE("unknown journals collapse onto the reserved token") {
    const auto corpus = ingest_strings("1\t1970\t0\n2\t1970\t7\n", "");
    CHECK(corpus.journal(corpus.require(1)) == 0);
    CHECK(corpus.journal(corpus.require(2)) != 0);
    CHECK(corpus.journal_external(0) == 0);
}

TEST_CASE("ingest is idempotent: same input gives structurally equal corpora") {
    const std::string papers = "1\t1970\t10\n2\t1969\t10\n3\t1971\t20\n";
    const std::string cites = "3\t1\n3\t2\n1\t2\n";
    CHECK(ingest_strings(papers, cites) == ingest_strings(papers, cites));
}

TEST_CASE("TSV writers round-trip the corpus exactly") {
    SynthSpec spec;
    spec.papers_per_year = 40;
    spec.n_years = 5;
    spec.mean_refs = 6.0;
    const auto corpus = generate_synthetic(spec, 11).corpus;

    std::ostringstream papers, cites;
    write_papers_tsv(corpus, papers);
    write_citations_tsv(corpus, cites);
    const auto again = ingest_strings(papers.str(), cites.str());
    CHECK(corpus == again);
}

TEST_CASE("reference and citer indexes are exact transposes") {
    SynthSpec spec;
    spec.papers_per_year = 60;
    spec.n_years = 5;
    spec.mean_refs = 7.0;
    const auto corpus = generate_synthetic(spec, 3).corpus;

    std::int64_t edges_seen = 0;
    for (PaperIndex p = 0; p < corpus.size(); ++p) {
        for (const PaperIndex t : corpus.references(p)) {
            const auto citers = corpus.citers(t);
            CHECK(std::find(citers.begin(), citers.end(), p) != citers.end());
            ++edges_seen;
        }
    }
    CHECK(edges_seen == corpus.citation_count());
    for (PaperIndex t = 0; t < corpus.size(); ++t) {
        for (const PaperIndex p : corpus.citers(t)) {
            const auto refs = corpus.references(p);
            CHECK(std::find(refs.begin(), refs.end(), t) != refs.end());
        }
    }
}

TEST_CASE("require throws for unknown external ids") {
    const auto corpus = ingest_strings("1\t1970\t10\n", "");
    CHECK_THROWS_AS(corpus.require(42), NotFoundError);
    CHECK(!corpus.find(42).has_value());
}

TEST_CASE("field labels survive ingest and are optional") {
    const auto corpus = ingest_strings("1\t1970\t10\tbiology\n2\t1970\t10\n", "");
    CHECK(corpus.has_field_label(corpus.require(1)));
    CHECK(corpus.field_label(corpus.require(1)) == "biology");
    CHECK(!corpus.has_field_label(corpus.require(2)));
}
