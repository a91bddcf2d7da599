#include "scimet/atypicality.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "scimet/errors.hpp"
#include "scimet/rng.hpp"
#include "scimet/stats.hpp"

namespace scimet {

CohortRefs cohort_refs(const CitationCorpus& corpus, std::int32_t cohort_year) {
    CohortRefs out;
    out.cohort_year = cohort_year;
    out.offsets.push_back(0);
    for (const PaperIndex p : corpus.cohort(cohort_year)) {
        const auto refs = corpus.references(p);
        if (refs.empty()) continue;
        out.papers.push_back(p);
        out.targets.insert(out.targets.end(), refs.begin(), refs.end());
        out.offsets.push_back(static_cast<std::int64_t>(out.targets.size()));
    }
    return out;
}

PairCounts count_journal_pairs(const CitationCorpus& corpus, const CohortRefs& refs) {
    PairCounts counts;
    std::vector<JournalIndex> journals;
    for (std::size_t pos = 0; pos < refs.papers.size(); ++pos) {
        journals.clear();
        for (const PaperIndex t : refs.refs(pos)) {
            const JournalIndex j = corpus.journal(t);
            if (j != 0) journals.push_back(j);
        }
        for (std::size_t a = 0; a + 1 < journals.size(); ++a) {
            for (std::size_t b = a + 1; b < journals.size(); ++b) {
                ++counts[pair_key(journals[a], journals[b])];
            }
        }
    }
    return counts;
}

PairCounts cocitation_counts(const CitationCorpus& corpus, std::int32_t cohort_year) {
    return count_journal_pairs(corpus, cohort_refs(corpus, cohort_year));
}

CohortRefs shuffle(const CitationCorpus& corpus, std::int32_t cohort_year, std::uint64_t seed,
                   int swap_factor) {
    CohortRefs refs = cohort_refs(corpus, cohort_year);
    const std::size_t n_edges = refs.targets.size();
    if (n_edges < 2) return refs;

    // Bucket edge positions by cited-paper year. Swaps stay within a bucket,
    // so bucket membership is fixed for the whole run.
    std::vector<std::int32_t> years(n_edges);
    for (std::size_t e = 0; e < n_edges; ++e) years[e] = corpus.year(refs.targets[e]);
    std::vector<std::int32_t> distinct(years);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    std::vector<std::vector<std::uint32_t>> buckets(distinct.size());
    for (std::size_t e = 0; e < n_edges; ++e) {
        const auto slot = static_cast<std::size_t>(
            std::lower_bound(distinct.begin(), distinct.end(), years[e]) - distinct.begin());
        buckets[slot].push_back(static_cast<std::uint32_t>(e));
    }

    // Uniform selection over unordered eligible pairs: bucket chosen with
    // probability proportional to C(n, 2), then two distinct edges within it.
    std::vector<std::uint64_t> cumulative;
    cumulative.reserve(buckets.size());
    std::uint64_t total_pairs = 0;
    for (const auto& bucket : buckets) {
        const std::uint64_t n = bucket.size();
        total_pairs += n * (n - 1) / 2;
        cumulative.push_back(total_pairs);
    }
    if (total_pairs == 0) return refs; // no two citations share a target year

    // Paper position owning each edge, plus per-paper membership sets for
    // duplicate rejection.
    std::vector<std::uint32_t> edge_paper(n_edges);
    std::vector<std::unordered_set<PaperIndex>> members(refs.papers.size());
    for (std::size_t pos = 0; pos < refs.papers.size(); ++pos) {
        for (std::int64_t e = refs.offsets[pos]; e < refs.offsets[pos + 1]; ++e) {
            edge_paper[static_cast<std::size_t>(e)] = static_cast<std::uint32_t>(pos);
            members[pos].insert(refs.targets[static_cast<std::size_t>(e)]);
        }
    }

    Rng rng(derive_seed(seed, 0x53485546)); // "SHUF"
    const std::int64_t attempts = static_cast<std::int64_t>(swap_factor) *
                                  static_cast<std::int64_t>(n_edges);
    for (std::int64_t attempt = 0; attempt < attempts; ++attempt) {
        const std::uint64_t x = rng.below(total_pairs);
        const auto slot = static_cast<std::size_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), x) - cumulative.begin());
        const auto& bucket = buckets[slot];
        const std::size_t i = static_cast<std::size_t>(rng.below(bucket.size()));
        std::size_t j = static_cast<std::size_t>(rng.below(bucket.size() - 1));
        if (j >= i) ++j;
        const std::uint32_t e1 = bucket[i];
        const std::uint32_t e2 = bucket[j];
        const PaperIndex a = refs.targets[e1];
        const PaperIndex b = refs.targets[e2];
        if (a == b) continue;
        const std::uint32_t p = edge_paper[e1];
        const std::uint32_t q = edge_paper[e2];
        if (members[p].contains(b) || members[q].contains(a)) continue; // would duplicate
        members[p].erase(a);
        members[p].insert(b);
        members[q].erase(b);
        members[q].insert(a);
        refs.targets[e1] = b;
        refs.targets[e2] = a;
        ++refs.swaps_accepted;
    }
    return refs;
}

NullStatistics null_statistics(const CitationCorpus& corpus, std::int32_t cohort_year,
                               int realizations, std::uint64_t seed, int swap_factor) {
    if (realizations < 2) throw ConfigError("null_statistics: realizations must be >= 2");
    struct Acc {
        std::int64_t sum = 0;
        double sumsq = 0.0;
    };
    std::unordered_map<PairKey, Acc> acc;
    for (int r = 0; r < realizations; ++r) {
        const CohortRefs shuffled = shuffle(corpus, cohort_year, derive_seed(seed, r), swap_factor);
        for (const auto& [key, count] : count_journal_pairs(corpus, shuffled)) {
            auto& a = acc[key];
            a.sum += count;
            a.sumsq += static_cast<double>(count) * static_cast<double>(count);
        }
    }
    NullStatistics stats;
    stats.realizations = realizations;
    const double n = static_cast<double>(realizations);
    for (const auto& [key, a] : acc) {
        const double sum = static_cast<double>(a.sum);
        const double mean = sum / n;
        const double var = std::max(0.0, (a.sumsq - sum * sum / n) / (n - 1.0));
        stats.pairs.emplace(key, NullMoment{mean, std::sqrt(var)});
    }
    return stats;
}

PairZTable z_table(const PairCounts& observed, const NullStatistics& null_stats,
                   std::int32_t cohort_year) {
    PairZTable table;
    table.cohort_year = cohort_year;
    auto fill = [&](PairKey key) -> PairZ& { return table.pairs[key]; };
    for (const auto& [key, obs] : observed) fill(key).obs = obs;
    for (const auto& [key, moment] : null_stats.pairs) {
        auto& entry = fill(key);
        entry.exp = moment.exp;
        entry.sigma = moment.sigma;
    }
    for (auto& [key, entry] : table.pairs) {
        if (entry.sigma > 0.0) {
            entry.z = (static_cast<double>(entry.obs) - entry.exp) / entry.sigma;
        } else if (static_cast<double>(entry.obs) == entry.exp) {
            entry.z = 0.0;
        }
    }
    return table;
}

PairZTable build_pair_z_table(const CitationCorpus& corpus, std::int32_t cohort_year,
                              int realizations, std::uint64_t seed, int swap_factor) {
    return z_table(cocitation_counts(corpus, cohort_year),
                   null_statistics(corpus, cohort_year, realizations, seed, swap_factor),
                   cohort_year);
}

const char* to_string(NoveltyClass cls) {
    switch (cls) {
        case NoveltyClass::HighlyTypical: return "highly_typical";
        case NoveltyClass::Mixed: return "mixed";
        case NoveltyClass::HighlyAtypical: return "highly_atypical";
        case NoveltyClass::Undefined: return "undefined";
    }
    return "undefined";
}

PaperNovelty paper_novelty(const CitationCorpus& corpus, const PairZTable& table,
                           PaperIndex paper) {
    if (paper < 0 || paper >= corpus.size()) throw NotFoundError("paper index out of range");
    PaperNovelty novelty;
    novelty.paper = paper;

    std::vector<JournalIndex> journals;
    for (const PaperIndex t : corpus.references(paper)) {
        const JournalIndex j = corpus.journal(t);
        if (j != 0) journals.push_back(j);
    }
    if (journals.size() < 2) return novelty; // Undefined: < 2 known-journal references

    std::vector<double> z_values;
    for (std::size_t a = 0; a + 1 < journals.size(); ++a) {
        for (std::size_t b = a + 1; b < journals.size(); ++b) {
            ++novelty.n_pairs;
            const PairZ* entry = table.lookup(journals[a], journals[b]);
            if (entry && entry->z) z_values.push_back(*entry->z);
        }
    }
    novelty.n_defined = static_cast<std::int64_t>(z_values.size());
    if (z_values.size() < 2) return novelty; // Undefined: too few defined z values

    novelty.z_median = stats::percentile(z_values, 50.0);
    novelty.z_min = stats::percentile(std::move(z_values), 10.0);
    if (*novelty.z_median < 0.0) {
        novelty.cls = NoveltyClass::HighlyAtypical;
    } else if (*novelty.z_min >= 0.0) {
        novelty.cls = NoveltyClass::HighlyTypical;
    } else {
        novelty.cls = NoveltyClass::Mixed;
    }
    return novelty;
}

} // namespace scimet
