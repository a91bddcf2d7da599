#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scimet/corpus.hpp"

namespace scimet {

/// Counts over the papers published in [focal_year, horizon] that cite the
/// focal paper or at least one of its references (the focal paper and its
/// references themselves excluded):
///   n_i cite the focal only, n_j cite focal and >= 1 reference,
///   n_k cite >= 1 reference but not the focal.
struct CitingPartition {
    std::int64_t n_i = 0;
    std::int64_t n_j = 0;
    std::int64_t n_k = 0;
    std::int64_t total() const { return n_i + n_j + n_k; }
};

/// D = (n_i - n_j) / (n_i + n_j + n_k). A zero denominator leaves d, p_i and
/// p_j empty: undefined is distinct from 0 and never silently imputed.
struct DisruptionResult {
    PaperIndex focal = -1;
    std::int32_t horizon_year = 0;
    std::int64_t n_i = 0;
    std::int64_t n_j = 0;
    std::int64_t n_k = 0;
    std::optional<double> d;
    std::optional<double> p_i;
    std::optional<double> p_j;
};

struct DisruptionSeriesEntry {
    std::int32_t year = 0;
    std::optional<double> d;   // gap when no qualifying citers yet
    std::int64_t cum_i = 0;    // cumulative disruptive citations
    std::int64_t cum_j = 0;    // cumulative developing citations
    std::int64_t cum_k = 0;
};

struct DisruptionSeries {
    PaperIndex focal = -1;
    std::vector<DisruptionSeriesEntry> entries; // one per year, consecutive
};

CitingPartition citing_partition(const CitationCorpus& corpus, PaperIndex focal,
                                 std::int32_t horizon_year);

/// Default horizon is the corpus max year (the longest window available).
DisruptionResult d_score(const CitationCorpus& corpus, PaperIndex focal,
                         std::optional<std::int32_t> horizon_year = std::nullopt);

DisruptionSeries d_timeseries(const CitationCorpus& corpus, PaperIndex focal,
                              std::optional<std::int32_t> from_year = std::nullopt,
                              std::optional<std::int32_t> to_year = std::nullopt);

/// Earliest year whose D_t reaches `fraction` of the final |D| with matching
/// sign. The final D is the last defined entry. Returns nullopt when the
/// final D is 0 or the threshold is never reached; throws ComputeError on an
/// empty series or one with no defined D at all.
std::optional<std::int32_t> stabilization_year(const DisruptionSeries& series,
                                               double fraction = 0.8);

DisruptionResult make_disruption_result(PaperIndex focal, std::int32_t horizon_year,
                                        const CitingPartition& parts);

} // namespace scimet
