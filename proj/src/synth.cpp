#include "scimet/synth.hpp"

#include <unordered_set>

#include "scimet/errors.hpp"
#include "scimet/rng.hpp"

namespace scimet {

void SynthSpec::check() const {
    if (n_journals < 1) throw ConfigError("synth spec: n_journals must be >= 1");
    if (n_communities < 1 || n_communities > n_journals) {
        throw ConfigError("synth spec: n_communities must be in [1, n_journals]");
    }
    if (papers_per_year < 1) throw ConfigError("synth spec: papers_per_year must be >= 1");
    if (n_years < 1) throw ConfigError("synth spec: n_years must be >= 1");
    if (mean_refs < 0.0) throw ConfigError("synth spec: mean_refs must be >= 0");
    if (frac_bridging < 0.0 || frac_bridging > 1.0 || frac_disruptive < 0.0 ||
        frac_disruptive > 1.0 || cocite_prob < 0.0 || cocite_prob > 1.0) {
        throw ConfigError("synth spec: fractions must be in [0, 1]");
    }
}

SynthResult generate_synthetic(const SynthSpec& spec, std::uint64_t seed) {
    spec.check();
    Rng rng(derive_seed(seed, 0x53594e54)); // "SYNT"

    const std::int32_t n_total = spec.papers_per_year * spec.n_years;
    const std::int32_t communities = spec.n_communities;

    // Contiguous journal blocks per community; external journal ids 1..J.
    auto community_of_journal = [&](std::int64_t j) {
        return static_cast<std::int32_t>(((j - 1) * communities) / spec.n_journals);
    };
    auto journal_block = [&](std::int32_t c) {
        const std::int64_t lo = 1 + (static_cast<std::int64_t>(c) * spec.n_journals) / communities;
        const std::int64_t hi = 1 + (static_cast<std::int64_t>(c) + 1) * spec.n_journals / communities;
        return std::pair<std::int64_t, std::int64_t>{lo, hi}; // [lo, hi)
    };

    SynthLabels labels;
    labels.bridging.assign(n_total, 0);
    labels.disruptive.assign(n_total, 0);
    labels.community.assign(n_total, 0);

    CorpusBuilder builder;
    std::vector<std::vector<std::int32_t>> by_community(communities); // prior papers only
    std::vector<std::int32_t> all_prior;
    std::vector<std::vector<std::int32_t>> refs_of(n_total); // dense index refs, for co-citing

    std::int32_t next = 0;
    std::vector<std::int32_t> year_batch;
    for (std::int32_t y = 0; y < spec.n_years; ++y) {
        const std::int32_t year = spec.start_year + y;
        year_batch.clear();
        for (std::int32_t k = 0; k < spec.papers_per_year; ++k) {
            const std::int32_t p = next++;
            const std::int32_t c = static_cast<std::int32_t>(rng.below(communities));
            const auto [jlo, jhi] = journal_block(c);
            const std::int64_t journal = jlo + static_cast<std::int64_t>(rng.below(jhi - jlo));
            labels.community[p] = community_of_journal(journal);

            const double u = rng.unit();
            labels.bridging[p] = u < spec.frac_bridging ? 1 : 0;
            labels.disruptive[p] = u < spec.frac_disruptive ? 1 : 0;

            builder.add_paper(p + 1, year, journal);

            if (!all_prior.empty() && spec.mean_refs > 0.0) {
                const long want_raw = rng.poisson(spec.mean_refs);
                const std::size_t want =
                    std::min<std::size_t>(static_cast<std::size_t>(want_raw), all_prior.size());
                auto& refs = refs_of[p];
                std::unordered_set<std::int32_t> chosen;
                const auto& pool = labels.bridging[p] ? all_prior : by_community[c];
                const auto& fallback = all_prior; // community pool can be empty early on
                std::size_t attempts = 0;
                const std::size_t max_attempts = 20 * want + 50;
                while (refs.size() < want && attempts++ < max_attempts) {
                    const auto& src = pool.empty() ? fallback : pool;
                    const std::int32_t anchor =
                        src[static_cast<std::size_t>(rng.below(src.size()))];
                    if (chosen.insert(anchor).second) refs.push_back(anchor);
                    // Developing behavior: co-cite one of the anchor's refs,
                    // unless the anchor is planted disruptive (citers skip).
                    if (refs.size() < want && !labels.disruptive[anchor] &&
                        !refs_of[anchor].empty() && rng.unit() < spec.cocite_prob) {
                        const auto& ar = refs_of[anchor];
                        const std::int32_t co = ar[static_cast<std::size_t>(rng.below(ar.size()))];
                        if (chosen.insert(co).second) refs.push_back(co);
                    }
                }
                for (const std::int32_t t : refs) builder.add_citation(p + 1, t + 1);
            }
            year_batch.push_back(p);
        }
        for (const std::int32_t p : year_batch) {
            by_community[labels.community[p]].push_back(p);
            all_prior.push_back(p);
        }
    }

    SynthResult result{builder.build(), std::move(labels)};
    return result;
}

} // namespace scimet
