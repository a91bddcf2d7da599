#include "scimet/recognition.hpp"

#include <algorithm>

#include "scimet/errors.hpp"

namespace scimet {

CitationSeries citation_series(const CitationCorpus& corpus, PaperIndex focal,
                               std::int32_t horizon_year) {
    if (focal < 0 || focal >= corpus.size()) throw NotFoundError("focal paper index out of range");
    CitationSeries series;
    series.focal = focal;
    series.publication_year = corpus.year(focal);
    if (horizon_year < series.publication_year) {
        throw ComputeError("horizon_year precedes the focal paper's publication year");
    }
    series.counts.assign(static_cast<std::size_t>(horizon_year - series.publication_year) + 1, 0);
    for (const PaperIndex p : corpus.citers(focal)) {
        const std::int32_t age = corpus.year(p) - series.publication_year;
        if (age >= 0 && age < static_cast<std::int32_t>(series.counts.size())) {
            ++series.counts[age];
        }
    }
    return series;
}

namespace {

SbiResult sbi_prefix(const std::vector<std::int64_t>& counts, std::size_t len) {
    SbiResult result;
    std::size_t t_m = 0;
    for (std::size_t t = 1; t < len; ++t) {
        if (counts[t] > counts[t_m]) t_m = t; // earliest max wins ties
    }
    result.t_m = static_cast<std::int32_t>(t_m);
    result.c_tm = counts[t_m];
    if (t_m == 0) return result; // degenerate first-year peak
    const double peak = static_cast<double>(counts[t_m]);
    const double tm = static_cast<double>(t_m);
    double b = 0.0;
    for (std::size_t t = 0; t <= t_m; ++t) {
        const double c_t = static_cast<double>(counts[t]);
        b += (peak * static_cast<double>(t) / tm - c_t) / std::max(1.0, c_t);
    }
    result.b = b;
    return result;
}

} // namespace

SbiResult sbi(const CitationSeries& series) {
    if (series.counts.empty()) throw ComputeError("sbi: empty citation series");
    return sbi_prefix(series.counts, series.counts.size());
}

std::vector<std::pair<std::int32_t, double>> sbi_windowed(const CitationSeries& series,
                                                          std::int32_t window_years) {
    if (window_years < 1) throw ConfigError("sbi_windowed: window must be >= 1");
    if (series.counts.empty()) throw ComputeError("sbi_windowed: empty citation series");
    const std::int32_t max_age = static_cast<std::int32_t>(series.counts.size()) - 1;
    std::vector<std::pair<std::int32_t, double>> out;
    for (std::int32_t age = window_years; age <= max_age; age += window_years) {
        out.emplace_back(age, sbi_prefix(series.counts, static_cast<std::size_t>(age) + 1).b);
    }
    if (out.empty() || out.back().first != max_age) {
        out.emplace_back(max_age, sbi_prefix(series.counts, series.counts.size()).b);
    }
    return out;
}

} // namespace scimet
