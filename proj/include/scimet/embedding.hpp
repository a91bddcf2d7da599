#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "scimet/atypicality.hpp" // PairKey
#include "scimet/corpus.hpp"

namespace scimet {

/// Journal-token sequences, one per cohort paper with >= 2 known-journal
/// references. Token values are vocabulary indices; the vocabulary maps back
/// to dense and external journal ids.
struct ContextCorpus {
    std::int32_t cohort_year = 0;
    std::vector<std::vector<std::int32_t>> sequences;
    std::vector<JournalIndex> vocab_dense;      // vocab index -> dense journal
    std::vector<std::int64_t> vocab_external;   // vocab index -> external id
    std::vector<std::int64_t> freq;             // token counts per vocab index
    std::int64_t total_tokens = 0;

    std::int32_t vocab_size() const { return static_cast<std::int32_t>(vocab_dense.size()); }
    std::optional<std::int32_t> find_vocab(JournalIndex dense) const;
};

/// One sequence per cohort paper; token order is randomized once at build
/// (reference lists are unordered bags) and again per epoch during training.
ContextCorpus build_contexts(const CitationCorpus& corpus, std::int32_t cohort_year,
                             std::uint64_t seed);

struct SgnsParams {
    std::int32_t dim = 50;
    std::int32_t negatives = 5;
    std::int32_t window = 10;
    std::int32_t epochs = 5;
    double lr_start = 0.025;
    double lr_end = 1e-4;
    std::uint64_t seed = 1;
    bool deterministic = true; // sequential; bit-identical for equal inputs+seed
    std::int32_t threads = 1;  // used only when deterministic == false
};

struct EmbeddingModel {
    std::int32_t dim = 0;
    std::vector<JournalIndex> vocab_dense;
    std::vector<std::int64_t> vocab_external;
    std::vector<float> in_vecs;  // V x dim, row-major
    std::vector<float> out_vecs; // same shape
    SgnsParams params;
    std::vector<double> epoch_loss; // mean negative log-likelihood per epoch

    std::int32_t vocab_size() const { return static_cast<std::int32_t>(vocab_dense.size()); }
    std::optional<std::int32_t> find_vocab(JournalIndex dense) const;
    std::span<const float> in_row(std::int32_t v) const {
        return {in_vecs.data() + static_cast<std::size_t>(v) * dim, static_cast<std::size_t>(dim)};
    }
    std::span<const float> out_row(std::int32_t v) const {
        return {out_vecs.data() + static_cast<std::size_t>(v) * dim, static_cast<std::size_t>(dim)};
    }
};

/// Skip-gram with negative sampling over the context sequences. Noise is the
/// unigram distribution raised to 3/4; learning rate decays linearly from
/// lr_start to lr_end over all (epoch, token) steps.
EmbeddingModel train_sgns(const ContextCorpus& contexts, const SgnsParams& params);

struct PmiEntry {
    std::int64_t count = 0; // windowed pair count
    double p_i = 0.0;
    double p_j = 0.0;
    double p_ij = 0.0;
    double pmi = 0.0; // log2(p_ij / (p_i * p_j))
};

struct PMITable {
    std::int32_t window = 0;
    std::int64_t min_count = 0;
    std::int64_t total_tokens = 0;
    std::int64_t total_pairs = 0;
    std::unordered_map<PairKey, PmiEntry> pairs; // keyed by dense journal pair

    const PmiEntry* lookup(JournalIndex i, JournalIndex j) const {
        const auto it = pairs.find(pair_key(i, j));
        return it == pairs.end() ? nullptr : &it->second;
    }
};

/// Window co-occurrence counts matching the training policy: a pair is
/// counted once per unordered position pair within `window` of each other.
/// Pairs with joint count < min_count are omitted.
PMITable pmi_table(const ContextCorpus& contexts, std::int32_t window = 10,
                   std::int64_t min_count = 1);

/// (in_i . out_j + in_j . out_i) / 2 over dense journal ids.
double symmetric_score(const EmbeddingModel& model, JournalIndex i, JournalIndex j);

struct PmiIdentityReport {
    double pearson = 0.0;
    double slope = 0.0; // least-squares slope of score on shifted PMI
    std::int64_t n_pairs = 0;
    std::int64_t min_count = 0;
    double shift = 0.0; // log2(negatives)
};

/// Pearson correlation between the symmetric inner product and
/// PMI - log2(negatives) over all table pairs present in the vocabulary.
PmiIdentityReport validate_pmi_identity(const EmbeddingModel& model, const PMITable& pmi);

enum class VectorSet { In, Out, Averaged };

/// Text export: first line "V k", then one line per journal
/// `external_journal_id v1 ... vk`, space-separated, float round-trip
/// precision.
void export_vectors(const EmbeddingModel& model, VectorSet which, std::ostream& out);

} // namespace scimet
