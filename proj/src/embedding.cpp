#include "scimet/embedding.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "scimet/errors.hpp"
#include "scimet/rng.hpp"
#include "scimet/stats.hpp"

namespace scimet {

std::optional<std::int32_t> ContextCorpus::find_vocab(JournalIndex dense) const {
    const auto it = std::lower_bound(vocab_dense.begin(), vocab_dense.end(), dense);
    if (it == vocab_dense.end() || *it != dense) return std::nullopt;
    return static_cast<std::int32_t>(it - vocab_dense.begin());
}

std::optional<std::int32_t> EmbeddingModel::find_vocab(JournalIndex dense) const {
    const auto it = std::lower_bound(vocab_dense.begin(), vocab_dense.end(), dense);
    if (it == vocab_dense.end() || *it != dense) return std::nullopt;
    return static_cast<std::int32_t>(it - vocab_dense.begin());
}

ContextCorpus build_contexts(const CitationCorpus& corpus, std::int32_t cohort_year,
                             std::uint64_t seed) {
    const auto cohort = corpus.cohort(cohort_year);
    if (cohort.empty()) throw DataError("build_contexts: empty cohort " + std::to_string(cohort_year));

    std::vector<std::vector<JournalIndex>> raw;
    std::vector<JournalIndex> used;
    for (const PaperIndex p : cohort) {
        std::vector<JournalIndex> journals;
        for (const PaperIndex t : corpus.references(p)) {
            const JournalIndex j = corpus.journal(t);
            if (j != 0) journals.push_back(j);
        }
        if (journals.size() < 2) continue;
        used.insert(used.end(), journals.begin(), journals.end());
        raw.push_back(std::move(journals));
    }

    ContextCorpus contexts;
    contexts.cohort_year = cohort_year;
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    contexts.vocab_dense = used;
    contexts.vocab_external.reserve(used.size());
    for (const JournalIndex j : used) contexts.vocab_external.push_back(corpus.journal_external(j));
    contexts.freq.assign(used.size(), 0);

    Rng rng(derive_seed(seed, 0x43545854)); // "CTXT"
    contexts.sequences.reserve(raw.size());
    for (auto& journals : raw) {
        std::vector<std::int32_t> tokens;
        tokens.reserve(journals.size());
        for (const JournalIndex j : journals) {
            const auto v = contexts.find_vocab(j);
            tokens.push_back(*v);
            ++contexts.freq[static_cast<std::size_t>(*v)];
        }
        rng.shuffle(tokens);
        contexts.total_tokens += static_cast<std::int64_t>(tokens.size());
        contexts.sequences.push_back(std::move(tokens));
    }
    return contexts;
}

namespace {

// Cumulative unigram^(3/4) table; sampled by binary search, which is exact
// and fast at journal-vocabulary sizes.
std::vector<double> noise_cumulative(const std::vector<std::int64_t>& freq) {
    std::vector<double> cum(freq.size());
    double total = 0.0;
    for (std::size_t v = 0; v < freq.size(); ++v) {
        total += std::pow(static_cast<double>(freq[v]), 0.75);
        cum[v] = total;
    }
    return cum;
}

std::int32_t sample_noise(const std::vector<double>& cum, Rng& rng) {
    const double x = rng.unit() * cum.back();
    return static_cast<std::int32_t>(
        std::upper_bound(cum.begin(), cum.end(), x) - cum.begin());
}

struct EpochStats {
    double loss_sum = 0.0;
    std::int64_t pairs = 0;
};

// One pass over a range of sequences. Updates model vectors in place; in the
// parallel mode concurrent unsynchronized updates are tolerated by design.
void run_epoch_range(EmbeddingModel& model, const ContextCorpus& contexts,
                     const std::vector<double>& noise_cum, std::size_t seq_begin,
                     std::size_t seq_end, std::uint64_t rng_seed,
                     std::atomic<std::int64_t>& tokens_done, std::int64_t total_steps,
                     std::int32_t epoch, EpochStats& stats) {
    const auto& params = model.params;
    const std::int32_t dim = model.dim;
    Rng rng(rng_seed);
    std::vector<std::int32_t> tokens;
    std::vector<float> grad_in(static_cast<std::size_t>(dim));

    for (std::size_t s = seq_begin; s < seq_end; ++s) {
        tokens = contexts.sequences[s];
        rng.shuffle(tokens);
        const std::int32_t len = static_cast<std::int32_t>(tokens.size());
        for (std::int32_t center = 0; center < len; ++center) {
            const std::int64_t done = tokens_done.fetch_add(1, std::memory_order_relaxed);
            const double progress = static_cast<double>(done) / static_cast<double>(total_steps);
            const double alpha =
                std::max(params.lr_end, params.lr_start - (params.lr_start - params.lr_end) * progress);
            const std::int32_t u = tokens[static_cast<std::size_t>(center)];
            float* in_u = model.in_vecs.data() + static_cast<std::size_t>(u) * dim;

            const std::int32_t lo = std::max<std::int32_t>(0, center - params.window);
            const std::int32_t hi = std::min<std::int32_t>(len - 1, center + params.window);
            for (std::int32_t pos = lo; pos <= hi; ++pos) {
                if (pos == center) continue;
                const std::int32_t target = tokens[static_cast<std::size_t>(pos)];
                std::fill(grad_in.begin(), grad_in.end(), 0.0f);
                for (std::int32_t n = 0; n <= params.negatives; ++n) {
                    std::int32_t t;
                    double label;
                    if (n == 0) {
                        t = target;
                        label = 1.0;
                    } else {
                        t = sample_noise(noise_cum, rng);
                        if (t == target) continue;
                        label = 0.0;
                    }
                    float* out_t = model.out_vecs.data() + static_cast<std::size_t>(t) * dim;
                    double dot = 0.0;
                    for (std::int32_t d = 0; d < dim; ++d) dot += double(in_u[d]) * double(out_t[d]);
                    const double sig = 1.0 / (1.0 + std::exp(-dot));
                    stats.loss_sum -= label == 1.0 ? std::log(std::max(sig, 1e-12))
                                                   : std::log(std::max(1.0 - sig, 1e-12));
                    const float g = static_cast<float>((label - sig) * alpha);
                    for (std::int32_t d = 0; d < dim; ++d) {
                        grad_in[static_cast<std::size_t>(d)] += g * out_t[d];
                        out_t[d] += g * in_u[d];
                    }
                }
                ++stats.pairs;
                for (std::int32_t d = 0; d < dim; ++d) in_u[d] += grad_in[static_cast<std::size_t>(d)];
                if ((stats.pairs & 0xFFFF) == 0 && !std::isfinite(stats.loss_sum)) {
                    throw ComputeError("train_sgns: non-finite loss at epoch " +
                                       std::to_string(epoch) + ", pair " +
                                       std::to_string(stats.pairs));
                }
            }
        }
    }
}

} // namespace

EmbeddingModel train_sgns(const ContextCorpus& contexts, const SgnsParams& params) {
    if (contexts.vocab_size() < 2) throw DataError("train_sgns: vocabulary must have >= 2 journals");
    if (params.epochs < 1) throw ConfigError("train_sgns: epochs must be >= 1");
    if (params.dim < 1 || params.negatives < 0 || params.window < 1) {
        throw ConfigError("train_sgns: bad hyperparameters");
    }

    EmbeddingModel model;
    model.dim = params.dim;
    model.vocab_dense = contexts.vocab_dense;
    model.vocab_external = contexts.vocab_external;
    model.params = params;
    const std::size_t cells =
        static_cast<std::size_t>(contexts.vocab_size()) * static_cast<std::size_t>(params.dim);
    model.in_vecs.resize(cells);
    model.out_vecs.assign(cells, 0.0f);
    Rng init_rng(derive_seed(params.seed, 0x494e4954)); // "INIT"
    for (auto& x : model.in_vecs) {
        x = static_cast<float>((init_rng.unit() - 0.5) / params.dim);
    }

    const std::vector<double> noise_cum = noise_cumulative(contexts.freq);
    const std::int64_t total_steps =
        std::max<std::int64_t>(1, contexts.total_tokens * params.epochs);
    std::atomic<std::int64_t> tokens_done{0};

    const std::size_t n_seq = contexts.sequences.size();
    const int threads = params.deterministic ? 1 : std::max(1, static_cast<int>(params.threads));
    for (std::int32_t epoch = 0; epoch < params.epochs; ++epoch) {
        EpochStats total;
        if (threads == 1) {
            run_epoch_range(model, contexts, noise_cum, 0, n_seq,
                            derive_seed(params.seed, 0x1000 + epoch), tokens_done, total_steps,
                            epoch, total);
        } else {
            std::vector<EpochStats> per_thread(static_cast<std::size_t>(threads));
            std::vector<std::thread> pool;
            for (int t = 0; t < threads; ++t) {
                const std::size_t begin = n_seq * static_cast<std::size_t>(t) / threads;
                const std::size_t end = n_seq * (static_cast<std::size_t>(t) + 1) / threads;
                pool.emplace_back([&, t, begin, end] {
                    run_epoch_range(model, contexts, noise_cum, begin, end,
                                    derive_seed(params.seed, 0x2000 + epoch * threads + t),
                                    tokens_done, total_steps, epoch,
                                    per_thread[static_cast<std::size_t>(t)]);
                });
            }
            for (auto& th : pool) th.join();
            for (const auto& s : per_thread) {
                total.loss_sum += s.loss_sum;
                total.pairs += s.pairs;
            }
        }
        const double mean_loss =
            total.pairs > 0 ? total.loss_sum / static_cast<double>(total.pairs) : 0.0;
        if (!std::isfinite(mean_loss)) {
            throw ComputeError("train_sgns: non-finite loss at epoch " + std::to_string(epoch));
        }
        model.epoch_loss.push_back(mean_loss);
    }
    return model;
}

PMITable pmi_table(const ContextCorpus& contexts, std::int32_t window, std::int64_t min_count) {
    PMITable table;
    table.window = window;
    table.min_count = min_count;
    table.total_tokens = contexts.total_tokens;

    std::unordered_map<PairKey, std::int64_t> counts;
    for (const auto& seq : contexts.sequences) {
        const std::int32_t len = static_cast<std::int32_t>(seq.size());
        for (std::int32_t a = 0; a < len; ++a) {
            const std::int32_t hi = std::min<std::int32_t>(len - 1, a + window);
            for (std::int32_t b = a + 1; b <= hi; ++b) {
                const JournalIndex ja = contexts.vocab_dense[static_cast<std::size_t>(seq[a])];
                const JournalIndex jb = contexts.vocab_dense[static_cast<std::size_t>(seq[b])];
                ++counts[pair_key(ja, jb)];
                ++table.total_pairs;
            }
        }
    }
    if (table.total_tokens == 0 || table.total_pairs == 0) return table;

    const double tokens = static_cast<double>(table.total_tokens);
    auto marginal = [&](JournalIndex dense) {
        const auto v = contexts.find_vocab(dense);
        return static_cast<double>(contexts.freq[static_cast<std::size_t>(*v)]) / tokens;
    };
    for (const auto& [key, count] : counts) {
        if (count < min_count) continue;
        PmiEntry entry;
        entry.count = count;
        entry.p_i = marginal(pair_first(key));
        entry.p_j = marginal(pair_second(key));
        entry.p_ij = static_cast<double>(count) / static_cast<double>(table.total_pairs);
        entry.pmi = std::log2(entry.p_ij / (entry.p_i * entry.p_j));
        table.pairs.emplace(key, entry);
    }
    return table;
}

double symmetric_score(const EmbeddingModel& model, JournalIndex i, JournalIndex j) {
    const auto vi = model.find_vocab(i);
    const auto vj = model.find_vocab(j);
    if (!vi || !vj) throw NotFoundError("symmetric_score: journal not in vocabulary");
    const auto in_i = model.in_row(*vi);
    const auto in_j = model.in_row(*vj);
    const auto out_i = model.out_row(*vi);
    const auto out_j = model.out_row(*vj);
    double a = 0.0, b = 0.0;
    for (std::int32_t d = 0; d < model.dim; ++d) {
        a += double(in_i[d]) * double(out_j[d]);
        b += double(in_j[d]) * double(out_i[d]);
    }
    return (a + b) / 2.0;
}

PmiIdentityReport validate_pmi_identity(const EmbeddingModel& model, const PMITable& pmi) {
    std::vector<double> scores, shifted;
    const double shift = std::log2(std::max(1, model.params.negatives));
    for (const auto& [key, entry] : pmi.pairs) {
        const auto vi = model.find_vocab(pair_first(key));
        const auto vj = model.find_vocab(pair_second(key));
        if (!vi || !vj) continue;
        scores.push_back(symmetric_score(model, pair_first(key), pair_second(key)));
        shifted.push_back(entry.pmi - shift);
    }
    if (scores.size() < 3) {
        throw ComputeError("validate_pmi_identity: fewer than 3 pairs to correlate");
    }
    PmiIdentityReport report;
    report.n_pairs = static_cast<std::int64_t>(scores.size());
    report.min_count = pmi.min_count;
    report.shift = shift;
    report.pearson = stats::pearson(scores, shifted);
    // slope of score on shifted PMI
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        mx += shifted[i];
        my += scores[i];
    }
    mx /= static_cast<double>(scores.size());
    my /= static_cast<double>(scores.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        sxy += (shifted[i] - mx) * (scores[i] - my);
        sxx += (shifted[i] - mx) * (shifted[i] - mx);
    }
    report.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    return report;
}

void export_vectors(const EmbeddingModel& model, VectorSet which, std::ostream& out) {
    out << model.vocab_size() << ' ' << model.dim << '\n';
    char buf[64];
    for (std::int32_t v = 0; v < model.vocab_size(); ++v) {
        out << model.vocab_external[static_cast<std::size_t>(v)];
        const auto in = model.in_row(v);
        const auto ov = model.out_row(v);
        for (std::int32_t d = 0; d < model.dim; ++d) {
            float x = 0.0f;
            switch (which) {
                case VectorSet::In: x = in[d]; break;
                case VectorSet::Out: x = ov[d]; break;
                case VectorSet::Averaged: x = (in[d] + ov[d]) / 2.0f; break;
            }
            std::snprintf(buf, sizeof buf, " %.9g", static_cast<double>(x));
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw DataError("export_vectors: write failed");
}

} // namespace scimet
