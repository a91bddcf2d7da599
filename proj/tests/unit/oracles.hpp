#pragma once

// Brute-force reference implementations used only by tests. Each one takes
// the most direct route available (full scans, explicit enumeration) so a
// disagreement points at the library, not at shared cleverness.

#include <cstdint>
#include <map>
#include <set>
#include <unordered_set>
#include <utility>
#include <vector>

#include "scimet/atypicality.hpp"
#include "scimet/corpus.hpp"
#include "scimet/disruption.hpp"
#include "scimet/embedding.hpp"

namespace oracles {

// Scans every paper in the corpus and re-derives its type from raw reference
// lists. Counts citers of the focal or of >= 1 focal reference, published in
// [focal_year, horizon], excluding the focal and its references.
inline scimet::CitingPartition citing_partition(const scimet::CitationCorpus& corpus,
                                                scimet::PaperIndex focal,
                                                std::int32_t horizon) {
    std::unordered_set<scimet::PaperIndex> focal_refs;
    for (const scimet::PaperIndex t : corpus.references(focal)) focal_refs.insert(t);
    scimet::CitingPartition counts;
    const std::int32_t focal_year = corpus.year(focal);
    for (scimet::PaperIndex q = 0; q < corpus.size(); ++q) {
        if (q == focal || focal_refs.count(q)) continue;
        if (corpus.year(q) < focal_year || corpus.year(q) > horizon) continue;
        bool cites_focal = false, cites_ref = false;
        for (const scimet::PaperIndex t : corpus.references(q)) {
            if (t == focal) cites_focal = true;
            if (focal_refs.count(t)) cites_ref = true;
        }
        if (cites_focal && cites_ref) ++counts.n_j;
        else if (cites_focal) ++counts.n_i;
        else if (cites_ref) ++counts.n_k;
    }
    return counts;
}

// Per-paper C(r, 2) enumeration over external journal ids, so the key layout
// is independent of the library's packed representation.
using ExternalPairCounts = std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t>;

inline ExternalPairCounts cocitation_counts(const scimet::CitationCorpus& corpus,
                                            std::int32_t cohort_year) {
    ExternalPairCounts counts;
    for (scimet::PaperIndex p = 0; p < corpus.size(); ++p) {
        if (corpus.year(p) != cohort_year) continue;
        std::vector<std::int64_t> journals;
        for (const scimet::PaperIndex t : corpus.references(p)) {
            const scimet::JournalIndex j = corpus.journal(t);
            if (j != 0) journals.push_back(corpus.journal_external(j));
        }
        for (std::size_t a = 0; a < journals.size(); ++a) {
            for (std::size_t b = a + 1; b < journals.size(); ++b) {
                auto key = std::minmax(journals[a], journals[b]);
                ++counts[{key.first, key.second}];
            }
        }
    }
    return counts;
}

// What the citation shuffle must keep fixed, recounted from scratch.
struct CohortSignature {
    std::vector<std::size_t> list_lengths;                      // per cohort paper
    std::vector<std::multiset<std::int32_t>> reference_years;   // per cohort paper
    std::map<scimet::PaperIndex, std::int64_t> in_degree;       // per cited paper
};

inline CohortSignature signature(const scimet::CitationCorpus& corpus,
                                 const scimet::CohortRefs& refs) {
    CohortSignature sig;
    for (std::size_t pos = 0; pos < refs.papers.size(); ++pos) {
        const auto list = refs.refs(pos);
        sig.list_lengths.push_back(list.size());
        std::multiset<std::int32_t> years;
        for (const scimet::PaperIndex t : list) {
            years.insert(corpus.year(t));
            ++sig.in_degree[t];
        }
        sig.reference_years.push_back(std::move(years));
    }
    return sig;
}

// Windowed co-occurrence recount: all position pairs per sequence, checked
// by their distance, keyed by external journal ids.
inline ExternalPairCounts pmi_pair_counts(const scimet::ContextCorpus& contexts,
                                          std::int32_t window) {
    ExternalPairCounts counts;
    for (const auto& seq : contexts.sequences) {
        for (std::size_t a = 0; a < seq.size(); ++a) {
            for (std::size_t b = 0; b < seq.size(); ++b) {
                if (a >= b) continue;
                if (static_cast<std::int32_t>(b - a) > window) continue;
                const std::int64_t ja = contexts.vocab_external[seq[a]];
                const std::int64_t jb = contexts.vocab_external[seq[b]];
                auto key = std::minmax(ja, jb);
                ++counts[{key.first, key.second}];
            }
        }
    }
    return counts;
}

// sup |F_a - F_b| evaluated literally at every pooled sample point.
inline double ks_statistic(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    double best = 0.0;
    for (const double x : pooled) {
        double fa = 0.0, fb = 0.0;
        for (const double v : a) {
            if (v <= x) fa += 1.0;
        }
        for (const double v : b) {
            if (v <= x) fb += 1.0;
        }
        fa /= static_cast<double>(a.size());
        fb /= static_cast<double>(b.size());
        best = std::max(best, std::abs(fa - fb));
    }
    return best;
}

} // namespace oracles
