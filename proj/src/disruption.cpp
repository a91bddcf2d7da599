#include "scimet/disruption.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "scimet/errors.hpp"

namespace scimet {

namespace {

constexpr std::uint8_t kCitesFocal = 1;
constexpr std::uint8_t kCitesRef = 2;

// Flags every paper in [focal_year, horizon] citing the focal or one of its
// references; the focal and its references are never counted as citers.
std::unordered_map<PaperIndex, std::uint8_t> classify_citers(const CitationCorpus& corpus,
                                                             PaperIndex focal,
                                                             std::int32_t horizon_year) {
    if (focal < 0 || focal >= corpus.size()) throw NotFoundError("focal paper index out of range");
    const std::int32_t focal_year = corpus.year(focal);
    if (horizon_year < focal_year) {
        throw ComputeError("horizon_year precedes the focal paper's publication year");
    }
    const auto refs = corpus.references(focal);
    std::unordered_set<PaperIndex> excluded(refs.begin(), refs.end());
    excluded.insert(focal);

    std::unordered_map<PaperIndex, std::uint8_t> flags;
    auto eligible = [&](PaperIndex p) {
        const std::int32_t y = corpus.year(p);
        return y >= focal_year && y <= horizon_year && !excluded.contains(p);
    };
    for (const PaperIndex p : corpus.citers(focal)) {
        if (eligible(p)) flags[p] |= kCitesFocal;
    }
    for (const PaperIndex r : refs) {
        for (const PaperIndex p : corpus.citers(r)) {
            if (eligible(p)) flags[p] |= kCitesRef;
        }
    }
    return flags;
}

} // namespace

CitingPartition citing_partition(const CitationCorpus& corpus, PaperIndex focal,
                                 std::int32_t horizon_year) {
    CitingPartition parts;
    for (const auto& [p, f] : classify_citers(corpus, focal, horizon_year)) {
        if (f == kCitesFocal) ++parts.n_i;
        else if (f == (kCitesFocal | kCitesRef)) ++parts.n_j;
        else ++parts.n_k;
    }
    return parts;
}

DisruptionResult make_disruption_result(PaperIndex focal, std::int32_t horizon_year,
                                        const CitingPartition& parts) {
    DisruptionResult result;
    result.focal = focal;
    result.horizon_year = horizon_year;
    result.n_i = parts.n_i;
    result.n_j = parts.n_j;
    result.n_k = parts.n_k;
    const std::int64_t total = parts.total();
    if (total > 0) {
        const double denom = static_cast<double>(total);
        result.p_i = static_cast<double>(parts.n_i) / denom;
        result.p_j = static_cast<double>(parts.n_j) / denom;
        result.d = static_cast<double>(parts.n_i - parts.n_j) / denom;
    }
    return result;
}

DisruptionResult d_score(const CitationCorpus& corpus, PaperIndex focal,
                         std::optional<std::int32_t> horizon_year) {
    const std::int32_t horizon = horizon_year.value_or(corpus.max_year());
    return make_disruption_result(focal, horizon, citing_partition(corpus, focal, horizon));
}

DisruptionSeries d_timeseries(const CitationCorpus& corpus, PaperIndex focal,
                              std::optional<std::int32_t> from_year,
                              std::optional<std::int32_t> to_year) {
    if (focal < 0 || focal >= corpus.size()) throw NotFoundError("focal paper index out of range");
    const std::int32_t focal_year = corpus.year(focal);
    const std::int32_t from = from_year.value_or(focal_year);
    const std::int32_t to = to_year.value_or(corpus.max_year());
    if (from < focal_year) throw ComputeError("from_year precedes the focal paper's year");
    if (to < from) throw ComputeError("to_year precedes from_year");

    // A citer's type depends only on its own reference list, so classify each
    // one once and accumulate per-year counts over growing horizons.
    const auto flags = classify_citers(corpus, focal, to);
    const std::size_t n_years = static_cast<std::size_t>(to - focal_year) + 1;
    std::vector<std::int64_t> per_year_i(n_years, 0), per_year_j(n_years, 0), per_year_k(n_years, 0);
    for (const auto& [p, f] : flags) {
        const std::size_t slot = static_cast<std::size_t>(corpus.year(p) - focal_year);
        if (f == kCitesFocal) ++per_year_i[slot];
        else if (f == (kCitesFocal | kCitesRef)) ++per_year_j[slot];
        else ++per_year_k[slot];
    }

    DisruptionSeries series;
    series.focal = focal;
    std::int64_t cum_i = 0, cum_j = 0, cum_k = 0;
    for (std::int32_t year = focal_year; year <= to; ++year) {
        const std::size_t slot = static_cast<std::size_t>(year - focal_year);
        cum_i += per_year_i[slot];
        cum_j += per_year_j[slot];
        cum_k += per_year_k[slot];
        if (year < from) continue;
        DisruptionSeriesEntry entry;
        entry.year = year;
        entry.cum_i = cum_i;
        entry.cum_j = cum_j;
        entry.cum_k = cum_k;
        const std::int64_t total = cum_i + cum_j + cum_k;
        if (total > 0) {
            entry.d = static_cast<double>(cum_i - cum_j) / static_cast<double>(total);
        }
        series.entries.push_back(entry);
    }
    return series;
}

std::optional<std::int32_t> stabilization_year(const DisruptionSeries& series, double fraction) {
    if (series.entries.empty()) throw ComputeError("stabilization_year: empty series");
    std::optional<double> final_d;
    for (auto it = series.entries.rbegin(); it != series.entries.rend(); ++it) {
        if (it->d) {
            final_d = it->d;
            break;
        }
    }
    if (!final_d) throw ComputeError("stabilization_year: series has no defined D");
    if (*final_d == 0.0) return std::nullopt;
    const double threshold = fraction * std::abs(*final_d);
    const bool positive = *final_d > 0.0;
    for (const auto& entry : series.entries) {
        if (!entry.d) continue;
        if (std::abs(*entry.d) >= threshold && (*entry.d > 0.0) == positive && *entry.d != 0.0) {
            return entry.year;
        }
    }
    return std::nullopt;
}

} // namespace scimet
