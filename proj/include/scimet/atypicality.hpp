#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "scimet/corpus.hpp"

namespace scimet {

/// Order-normalized key for an unordered journal pair (same-journal pairs
/// allowed).
using PairKey = std::uint64_t;

inline PairKey pair_key(JournalIndex a, JournalIndex b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}
inline JournalIndex pair_first(PairKey key) { return static_cast<JournalIndex>(key >> 32); }
inline JournalIndex pair_second(PairKey key) {
    return static_cast<JournalIndex>(key & 0xffffffffULL);
}

using PairCounts = std::unordered_map<PairKey, std::int64_t>;

/// A cohort's reference lists, copied out of the corpus so the citation
/// shuffle can rewire them without touching the (immutable) corpus.
struct CohortRefs {
    std::int32_t cohort_year = 0;
    std::vector<PaperIndex> papers;      // cohort members with >= 1 reference
    std::vector<std::int64_t> offsets;   // papers.size()+1
    std::vector<PaperIndex> targets;
    std::int64_t swaps_accepted = 0;     // filled by shuffle

    std::span<const PaperIndex> refs(std::size_t paper_pos) const {
        return {targets.data() + offsets[paper_pos],
                static_cast<std::size_t>(offsets[paper_pos + 1] - offsets[paper_pos])};
    }
    std::int64_t citation_count() const { return static_cast<std::int64_t>(targets.size()); }
};

CohortRefs cohort_refs(const CitationCorpus& corpus, std::int32_t cohort_year);

/// Co-citation counts over the cohort's (possibly shuffled) reference lists:
/// each paper contributes every unordered pair of known-journal references,
/// with multiplicity, same-journal pairs included. Total count is
/// sum_p C(r_p, 2) over known-journal reference counts r_p.
PairCounts count_journal_pairs(const CitationCorpus& corpus, const CohortRefs& refs);
PairCounts cocitation_counts(const CitationCorpus& corpus, std::int32_t cohort_year);

/// Year-preserving citation shuffle: repeatedly picks an unordered pair of
/// citation edges, uniformly among pairs whose cited papers share a
/// publication year, and exchanges the targets. Swaps that would duplicate a
/// reference within a list are rejected. Attempts = swap_factor * |citations|.
/// Preserves reference-list lengths, per-paper reference-year multisets and
/// per-target in-degrees exactly; with no eligible pair the input is returned
/// unchanged.
CohortRefs shuffle(const CitationCorpus& corpus, std::int32_t cohort_year, std::uint64_t seed,
                   int swap_factor = 10);

struct NullMoment {
    double exp = 0.0;
    double sigma = 0.0; // sample (n-1) standard deviation
};

struct NullStatistics {
    int realizations = 0;
    std::unordered_map<PairKey, NullMoment> pairs;
};

/// Mean and sample standard deviation of each pair's count across
/// `realizations` independent shuffles (each restarted from the real lists,
/// seeds derived from `seed`). Realizations where a pair is absent contribute
/// zero counts. Throws ConfigError when realizations < 2.
NullStatistics null_statistics(const CitationCorpus& corpus, std::int32_t cohort_year,
                               int realizations, std::uint64_t seed, int swap_factor = 10);

struct PairZ {
    std::int64_t obs = 0;
    double exp = 0.0;
    double sigma = 0.0;
    std::optional<double> z; // empty when sigma == 0 and obs != exp
};

/// Symmetric per-pair table for one cohort year.
struct PairZTable {
    std::int32_t cohort_year = 0;
    std::unordered_map<PairKey, PairZ> pairs;

    const PairZ* lookup(JournalIndex i, JournalIndex j) const {
        const auto it = pairs.find(pair_key(i, j));
        return it == pairs.end() ? nullptr : &it->second;
    }
};

/// z = (obs - exp) / sigma; sigma == 0 gives z = 0 when obs == exp and
/// undefined otherwise. The table covers the union of pairs seen in the real
/// data or any realization.
PairZTable z_table(const PairCounts& observed, const NullStatistics& null_stats,
                   std::int32_t cohort_year);

/// cocitation_counts + null_statistics + z_table in one call.
PairZTable build_pair_z_table(const CitationCorpus& corpus, std::int32_t cohort_year,
                              int realizations, std::uint64_t seed, int swap_factor = 10);

enum class NoveltyClass { HighlyTypical, Mixed, HighlyAtypical, Undefined };

const char* to_string(NoveltyClass cls);

/// Per-paper novelty summary: 10th/50th percentiles of the z values over all
/// reference pairs (with multiplicity, undefined z dropped).
/// Classification: HighlyAtypical when z_median < 0; HighlyTypical when
/// z_min >= 0; Mixed when z_min < 0 <= z_median; Undefined with fewer than
/// two defined z values or fewer than two known-journal references.
struct PaperNovelty {
    PaperIndex paper = -1;
    std::optional<double> z_median;
    std::optional<double> z_min; // 10th percentile
    NoveltyClass cls = NoveltyClass::Undefined;
    std::int64_t n_pairs = 0;   // reference pairs considered
    std::int64_t n_defined = 0; // pairs with a defined z
};

PaperNovelty paper_novelty(const CitationCorpus& corpus, const PairZTable& table,
                           PaperIndex paper);

} // namespace scimet
