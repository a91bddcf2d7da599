#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "scimet/corpus.hpp"

namespace scimet {

/// Annual citation counts by age; counts[0] is the publication year.
struct CitationSeries {
    PaperIndex focal = -1;
    std::int32_t publication_year = 0;
    std::vector<std::int64_t> counts;
};

/// B = sum_{t=0}^{t_m} (c_tm * t / t_m - c_t) / max(1, c_t), the gap between
/// the citation curve and the line from publication to the citation peak.
/// t_m is the earliest age achieving the maximum; B = 0 when t_m = 0.
struct SbiResult {
    double b = 0.0;
    std::int32_t t_m = 0;
    std::int64_t c_tm = 0;
};

CitationSeries citation_series(const CitationCorpus& corpus, PaperIndex focal,
                               std::int32_t horizon_year);

SbiResult sbi(const CitationSeries& series);

/// B of the truncated series c_0..c_age at ages window, 2*window, ...; the
/// final age is always an evaluation point so the last value equals the
/// full-series B.
std::vector<std::pair<std::int32_t, double>> sbi_windowed(const CitationSeries& series,
                                                          std::int32_t window_years = 2);

} // namespace scimet
