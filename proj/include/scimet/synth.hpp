#pragma once

#include <cstdint>
#include <vector>

#include "scimet/corpus.hpp"

namespace scimet {

/// Parameters for the synthetic citation-graph generator. Journals are split
/// into contiguous community blocks; a conventional paper draws its anchor
/// references from prior papers of its own community, a planted "bridging"
/// paper draws them from all communities. When a chosen anchor is not a
/// planted "disruptive" paper, some of its references are co-cited alongside
/// it, so citers of conventional papers tend to be developing (type j) and
/// citers of planted-disruptive papers tend to be disruptive (type i).
struct SynthSpec {
    std::int32_t n_journals = 50;
    std::int32_t n_communities = 2;
    std::int32_t papers_per_year = 200;
    std::int32_t start_year = 1960;
    std::int32_t n_years = 10;
    double mean_refs = 21.0;
    double frac_bridging = 0.0;
    double frac_disruptive = 0.0;
    double cocite_prob = 0.6; // chance an anchor brings one of its refs along

    void check() const; // throws ConfigError on an inconsistent spec
};

/// Ground truth emitted alongside the corpus, indexed by dense paper index.
/// The two planted sets are nested (one uniform draw per paper decides both),
/// so planted-disruptive papers are also bridging whenever both fractions
/// are positive.
struct SynthLabels {
    std::vector<std::uint8_t> bridging;
    std::vector<std::uint8_t> disruptive;
    std::vector<std::int32_t> community; // per paper
};

struct SynthResult {
    CitationCorpus corpus;
    SynthLabels labels;
};

/// Deterministic for a fixed (spec, seed). External paper ids are 1..N in
/// generation order; external journal ids are 1..n_journals.
SynthResult generate_synthetic(const SynthSpec& spec, std::uint64_t seed);

} // namespace scimet
