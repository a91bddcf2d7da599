#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace scimet {

/// Dense in-memory index of a paper within a corpus.
using PaperIndex = std::int32_t;
/// Dense journal token; 0 is reserved for "unknown journal".
using JournalIndex = std::int32_t;

/// One ingested paper row, in external-id form.
struct PaperRecord {
    std::int64_t paper_id = 0;   // external id, unique
    std::int32_t year = 0;
    std::int64_t journal_id = 0; // external id, 0 = unknown
    std::string field_label;     // optional
};

/// Validation / ingest summary. Histogram keys are publication years.
struct CorpusReport {
    std::int64_t paper_count = 0;
    std::int64_t citation_count = 0;
    std::int64_t dangling_references = 0; // citation rows dropped at ingest
    std::int64_t duplicate_citations = 0; // exact (citing, cited) repeats dropped
    std::int64_t self_citations = 0;      // flagged, kept
    std::int64_t forward_in_time = 0;     // citing year < cited year; flagged, kept
    std::map<std::int32_t, std::int64_t> papers_per_year;

    void write_keyvalue(std::ostream& out) const;
    std::string to_json() const;
};

/// Immutable citation graph over integer-token papers. Reference lists keep
/// their ingest order; the citer index is the exact transpose. Safe for
/// unsynchronized concurrent reads once built.
class CitationCorpus {
public:
    PaperIndex size() const { return static_cast<PaperIndex>(years_.size()); }
    std::int64_t citation_count() const { return static_cast<std::int64_t>(ref_targets_.size()); }

    std::int64_t external_id(PaperIndex p) const { return external_ids_[p]; }
    std::int32_t year(PaperIndex p) const { return years_[p]; }
    JournalIndex journal(PaperIndex p) const { return journals_[p]; }
    const std::string& field_label(PaperIndex p) const;
    bool has_field_label(PaperIndex p) const { return fields_[p] >= 0; }

    std::optional<PaperIndex> find(std::int64_t external_paper_id) const;
    /// Throws NotFoundError if the external id is unknown.
    PaperIndex require(std::int64_t external_paper_id) const;

    std::span<const PaperIndex> references(PaperIndex p) const {
        return {ref_targets_.data() + ref_offsets_[p],
                static_cast<std::size_t>(ref_offsets_[p + 1] - ref_offsets_[p])};
    }
    std::span<const PaperIndex> citers(PaperIndex p) const {
        return {cit_sources_.data() + cit_offsets_[p],
                static_cast<std::size_t>(cit_offsets_[p + 1] - cit_offsets_[p])};
    }

    std::int32_t min_year() const { return min_year_; }
    std::int32_t max_year() const { return max_year_; }

    /// Journals: dense tokens 0..journal_count()-1; 0 is "unknown".
    JournalIndex journal_count() const { return static_cast<JournalIndex>(journal_external_.size()); }
    std::int64_t journal_external(JournalIndex j) const { return journal_external_[j]; }
    std::optional<JournalIndex> find_journal(std::int64_t external_journal_id) const;

    /// Exactly the papers published in `year`, in index order. Empty set allowed.
    std::vector<PaperIndex> cohort(std::int32_t year) const;

    // Ingest-time bookkeeping surfaced in validate().
    std::int64_t dangling_dropped() const { return dangling_dropped_; }
    std::int64_t duplicates_dropped() const { return duplicates_dropped_; }

    /// Structural equality (papers, order-preserved reference lists, journals).
    bool operator==(const CitationCorpus& other) const;

    friend class CorpusBuilder;

private:
    std::vector<std::int64_t> external_ids_;
    std::vector<std::int32_t> years_;
    std::vector<JournalIndex> journals_;
    std::vector<std::int32_t> fields_; // -1 = none, else index into field_names_
    std::vector<std::string> field_names_;
    std::vector<std::int64_t> journal_external_; // dense journal -> external id
    std::unordered_map<std::int64_t, PaperIndex> id_index_;
    std::unordered_map<std::int64_t, JournalIndex> journal_index_;

    std::vector<std::int64_t> ref_offsets_; // size()+1
    std::vector<PaperIndex> ref_targets_;
    std::vector<std::int64_t> cit_offsets_;
    std::vector<PaperIndex> cit_sources_;

    std::int32_t min_year_ = 0;
    std::int32_t max_year_ = 0;
    std::int64_t dangling_dropped_ = 0;
    std::int64_t duplicates_dropped_ = 0;
};

/// Accumulates papers then citations; build() freezes both indexes.
/// Citation rows with an unknown endpoint are dropped and counted; exact
/// duplicate rows are dropped and counted.
class CorpusBuilder {
public:
    void add_paper(const PaperRecord& record);
    void add_paper(std::int64_t paper_id, std::int32_t year, std::int64_t journal_id,
                   const std::string& field_label = {});
    void add_citation(std::int64_t citing_id, std::int64_t cited_id);

    CitationCorpus build();

private:
    CitationCorpus corpus_;
    std::vector<std::pair<PaperIndex, PaperIndex>> edges_;
};

/// Parse the headerless TSV streams `paper_id \t year \t journal_id [\t field]`
/// and `citing_id \t cited_id`. Malformed rows raise ParseError with the line
/// number; an empty papers stream raises DataError.
CitationCorpus ingest(std::istream& papers, std::istream& citations, bool skip_header = false);
CitationCorpus ingest_files(const std::string& papers_path, const std::string& citations_path,
                            bool skip_header = false);

/// Exact structural counts; the corpus is not modified.
CorpusReport validate(const CitationCorpus& corpus);

/// Write the corpus back out in the ingest TSV format (used by `synth`).
void write_papers_tsv(const CitationCorpus& corpus, std::ostream& out);
void write_citations_tsv(const CitationCorpus& corpus, std::ostream& out);

} // namespace scimet
