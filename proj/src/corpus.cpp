#include "scimet/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "scimet/errors.hpp"

namespace scimet {

namespace {

// Splits on single tabs; empty trailing field is a malformed row, not ignored.
std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

template <typename Int>
bool parse_int(std::string_view s, Int& value) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc{} && ptr == last && !s.empty();
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

} // namespace

const std::string& CitationCorpus::field_label(PaperIndex p) const {
    static const std::string kEmpty;
    const std::int32_t f = fields_[p];
    return f < 0 ? kEmpty : field_names_[f];
}

std::optional<PaperIndex> CitationCorpus::find(std::int64_t external_paper_id) const {
    const auto it = id_index_.find(external_paper_id);
    if (it == id_index_.end()) return std::nullopt;
    return it->second;
}

PaperIndex CitationCorpus::require(std::int64_t external_paper_id) const {
    const auto p = find(external_paper_id);
    if (!p) throw NotFoundError("unknown paper id " + std::to_string(external_paper_id));
    return *p;
}

std::optional<JournalIndex> CitationCorpus::find_journal(std::int64_t external_journal_id) const {
    const auto it = journal_index_.find(external_journal_id);
    if (it == journal_index_.end()) return std::nullopt;
    return it->second;
}

std::vector<PaperIndex> CitationCorpus::cohort(std::int32_t year) const {
    std::vector<PaperIndex> out;
    for (PaperIndex p = 0; p < size(); ++p) {
        if (years_[p] == year) out.push_back(p);
    }
    return out;
}

bool CitationCorpus::operator==(const CitationCorpus& other) const {
    return external_ids_ == other.external_ids_ && years_ == other.years_ &&
           journals_ == other.journals_ && fields_ == other.fields_ &&
           field_names_ == other.field_names_ && journal_external_ == other.journal_external_ &&
           ref_offsets_ == other.ref_offsets_ && ref_targets_ == other.ref_targets_;
}

void CorpusBuilder::add_paper(const PaperRecord& record) {
    auto& c = corpus_;
    if (c.id_index_.contains(record.paper_id)) {
        throw DataError("duplicate paper id " + std::to_string(record.paper_id));
    }
    if (c.journal_external_.empty()) {
        c.journal_external_.push_back(0); // dense 0 = unknown journal
        c.journal_index_.emplace(0, 0);
    }
    const PaperIndex p = static_cast<PaperIndex>(c.external_ids_.size());
    c.id_index_.emplace(record.paper_id, p);
    c.external_ids_.push_back(record.paper_id);
    c.years_.push_back(record.year);

    JournalIndex j = 0;
    if (record.journal_id != 0) {
        const auto it = c.journal_index_.find(record.journal_id);
        if (it != c.journal_index_.end()) {
            j = it->second;
        } else {
            j = static_cast<JournalIndex>(c.journal_external_.size());
            c.journal_external_.push_back(record.journal_id);
            c.journal_index_.emplace(record.journal_id, j);
        }
    }
    c.journals_.push_back(j);

    std::int32_t f = -1;
    if (!record.field_label.empty()) {
        const auto it = std::find(c.field_names_.begin(), c.field_names_.end(), record.field_label);
        if (it != c.field_names_.end()) {
            f = static_cast<std::int32_t>(it - c.field_names_.begin());
        } else {
            f = static_cast<std::int32_t>(c.field_names_.size());
            c.field_names_.push_back(record.field_label);
        }
    }
    c.fields_.push_back(f);
}

void CorpusBuilder::add_paper(std::int64_t paper_id, std::int32_t year, std::int64_t journal_id,
                              const std::string& field_label) {
    add_paper(PaperRecord{paper_id, year, journal_id, field_label});
}

void CorpusBuilder::add_citation(std::int64_t citing_id, std::int64_t cited_id) {
    auto& c = corpus_;
    const auto citing = c.find(citing_id);
    const auto cited = c.find(cited_id);
    if (!citing || !cited) {
        ++c.dangling_dropped_;
        return;
    }
    edges_.emplace_back(*citing, *cited);
}

CitationCorpus CorpusBuilder::build() {
    auto& c = corpus_;
    if (c.external_ids_.empty()) throw DataError("empty corpus: no papers ingested");

    // Dedup exact (citing, cited) pairs, keeping first occurrence so that
    // reference-list order is the ingest order.
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges_.size() * 2);
    std::vector<std::pair<PaperIndex, PaperIndex>> edges;
    edges.reserve(edges_.size());
    for (const auto& e : edges_) {
        const std::uint64_t key =
            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.first)) << 32) |
            static_cast<std::uint32_t>(e.second);
        if (seen.insert(key).second) {
            edges.push_back(e);
        } else {
            ++c.duplicates_dropped_;
        }
    }
    edges_.clear();

    const PaperIndex n = c.size();
    c.ref_offsets_.assign(n + 1, 0);
    c.cit_offsets_.assign(n + 1, 0);
    for (const auto& e : edges) {
        ++c.ref_offsets_[e.first + 1];
        ++c.cit_offsets_[e.second + 1];
    }
    for (PaperIndex p = 0; p < n; ++p) {
        c.ref_offsets_[p + 1] += c.ref_offsets_[p];
        c.cit_offsets_[p + 1] += c.cit_offsets_[p];
    }
    c.ref_targets_.resize(edges.size());
    c.cit_sources_.resize(edges.size());
    std::vector<std::int64_t> ref_fill(c.ref_offsets_.begin(), c.ref_offsets_.end() - 1);
    std::vector<std::int64_t> cit_fill(c.cit_offsets_.begin(), c.cit_offsets_.end() - 1);
    for (const auto& e : edges) { // stable: preserves ingest order per paper
        c.ref_targets_[ref_fill[e.first]++] = e.second;
        c.cit_sources_[cit_fill[e.second]++] = e.first;
    }

    c.min_year_ = *std::min_element(c.years_.begin(), c.years_.end());
    c.max_year_ = *std::max_element(c.years_.begin(), c.years_.end());
    return std::move(corpus_);
}

CitationCorpus ingest(std::istream& papers, std::istream& citations, bool skip_header) {
    CorpusBuilder builder;
    std::string line;
    long line_no = 0;
    bool any_paper = false;
    while (std::getline(papers, line)) {
        ++line_no;
        strip_cr(line);
        if (skip_header && line_no == 1) continue;
        if (line.empty()) continue;
        const auto cols = split_tabs(line);
        if (cols.size() != 3 && cols.size() != 4) {
            throw ParseError("papers row must have 3 or 4 tab-separated columns", line_no);
        }
        PaperRecord rec;
        if (!parse_int(cols[0], rec.paper_id)) throw ParseError("bad paper_id", line_no);
        if (!parse_int(cols[1], rec.year)) throw ParseError("bad year", line_no);
        if (!parse_int(cols[2], rec.journal_id)) throw ParseError("bad journal_id", line_no);
        if (cols.size() == 4) rec.field_label = std::string(cols[3]);
        builder.add_paper(rec);
        any_paper = true;
    }
    if (!any_paper) throw DataError("empty corpus: papers file has no rows");

    line_no = 0;
    while (std::getline(citations, line)) {
        ++line_no;
        strip_cr(line);
        if (skip_header && line_no == 1) continue;
        if (line.empty()) continue;
        const auto cols = split_tabs(line);
        if (cols.size() != 2) {
            throw ParseError("citations row must have 2 tab-separated columns", line_no);
        }
        std::int64_t citing = 0, cited = 0;
        if (!parse_int(cols[0], citing)) throw ParseError("bad citing_id", line_no);
        if (!parse_int(cols[1], cited)) throw ParseError("bad cited_id", line_no);
        builder.add_citation(citing, cited);
    }
    return builder.build();
}

CitationCorpus ingest_files(const std::string& papers_path, const std::string& citations_path,
                            bool skip_header) {
    std::ifstream papers(papers_path);
    if (!papers) throw DataError("cannot open papers file: " + papers_path);
    std::ifstream citations(citations_path);
    if (!citations) throw DataError("cannot open citations file: " + citations_path);
    return ingest(papers, citations, skip_header);
}

CorpusReport validate(const CitationCorpus& corpus) {
    CorpusReport report;
    report.paper_count = corpus.size();
    report.citation_count = corpus.citation_count();
    report.dangling_references = corpus.dangling_dropped();
    report.duplicate_citations = corpus.duplicates_dropped();
    for (PaperIndex p = 0; p < corpus.size(); ++p) {
        ++report.papers_per_year[corpus.year(p)];
        for (const PaperIndex t : corpus.references(p)) {
            if (t == p) ++report.self_citations;
            if (corpus.year(p) < corpus.year(t)) ++report.forward_in_time;
        }
    }
    return report;
}

void CorpusReport::write_keyvalue(std::ostream& out) const {
    out << "papers=" << paper_count << '\n'
        << "citations=" << citation_count << '\n'
        << "dangling_references=" << dangling_references << '\n'
        << "duplicate_citations=" << duplicate_citations << '\n'
        << "self_citations=" << self_citations << '\n'
        << "forward_in_time=" << forward_in_time << '\n';
    for (const auto& [year, count] : papers_per_year) {
        out << "papers_in_" << year << '=' << count << '\n';
    }
}

std::string CorpusReport::to_json() const {
    std::ostringstream out;
    out << "{\"papers\":" << paper_count << ",\"citations\":" << citation_count
        << ",\"dangling_references\":" << dangling_references
        << ",\"duplicate_citations\":" << duplicate_citations
        << ",\"self_citations\":" << self_citations << ",\"forward_in_time\":" << forward_in_time
        << ",\"papers_per_year\":{";
    bool first = true;
    for (const auto& [year, count] : papers_per_year) {
        if (!first) out << ',';
        first = false;
        out << '"' << year << "\":" << count;
    }
    out << "}}";
    return out.str();
}

void write_papers_tsv(const CitationCorpus& corpus, std::ostream& out) {
    for (PaperIndex p = 0; p < corpus.size(); ++p) {
        out << corpus.external_id(p) << '\t' << corpus.year(p) << '\t'
            << corpus.journal_external(corpus.journal(p));
        if (corpus.has_field_label(p)) out << '\t' << corpus.field_label(p);
        out << '\n';
    }
}

void write_citations_tsv(const CitationCorpus& corpus, std::ostream& out) {
    for (PaperIndex p = 0; p < corpus.size(); ++p) {
        for (const PaperIndex t : corpus.references(p)) {
            out << corpus.external_id(p) << '\t' << corpus.external_id(t) << '\n';
        }
    }
}

} // namespace scimet
