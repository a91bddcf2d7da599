// Acceptance gate: one self-contained check per release criterion, each
// printing a single PASS/FAIL line. Run with no arguments for the full gate
// or with criterion numbers (e.g. "acceptance 3 7") for a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "scimet/atypicality.hpp"
#include "scimet/corpus.hpp"
#include "scimet/disruption.hpp"
#include "scimet/embedding.hpp"
#include "scimet/errors.hpp"
#include "scimet/recognition.hpp"
#include "scimet/report.hpp"
#include "scimet/rng.hpp"
#include "scimet/stats.hpp"
#include "scimet/synth.hpp"

#include "oracles.hpp"

using namespace scimet;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;

    void fail(const std::string& why) {
        pass = false;
        details.push_back(why);
    }
    void note(const std::string& what) { details.push_back(what); }
    void expect(bool ok, const std::string& why) {
        if (!ok) fail(why);
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// ---------------------------------------------------------------- criterion 1

void check_oracle_equivalence(Outcome& out) {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(20250801);
    std::int64_t papers_checked = 0;
    int corpora = 0;
    for (int trial = 0; trial < 100; ++trial) {
        SynthSpec spec;
        spec.n_journals = 10 + static_cast<std::int32_t>(rng.below(40));
        spec.n_communities = 1 + static_cast<std::int32_t>(rng.below(3));
        spec.n_years = 3 + static_cast<std::int32_t>(rng.below(6));
        spec.papers_per_year = 30 + static_cast<std::int32_t>(rng.below(131));
        while (spec.papers_per_year * spec.n_years > 1000) --spec.papers_per_year;
        spec.mean_refs = 3.0 + rng.unit() * 7.0;
        spec.frac_bridging = rng.unit() * 0.2;
        spec.frac_disruptive = rng.unit() * 0.1;
        spec.cocite_prob = 0.3 + rng.unit() * 0.5;
        const auto corpus = generate_synthetic(spec, rng.next()).corpus;
        ++corpora;

        const std::int32_t mid = spec.start_year + spec.n_years / 2;
        for (PaperIndex p = 0; p < corpus.size(); ++p) {
            const auto want = oracles::citing_partition(corpus, p, corpus.max_year());
            const auto got = citing_partition(corpus, p, corpus.max_year());
            if (got.n_i != want.n_i || got.n_j != want.n_j || got.n_k != want.n_k) {
                out.fail("partition mismatch: corpus " + std::to_string(trial) + " paper " +
                         std::to_string(corpus.external_id(p)));
                return;
            }
            const auto scored = d_score(corpus, p);
            if (scored.n_i != want.n_i || scored.n_j != want.n_j || scored.n_k != want.n_k) {
                out.fail("d_score counts mismatch at paper " +
                         std::to_string(corpus.external_id(p)));
                return;
            }
            const std::int64_t total = want.total();
            if (total == 0) {
                if (scored.d) {
                    out.fail("d defined with zero qualifying citers");
                    return;
                }
            } else {
                const double expect = static_cast<double>(want.n_i - want.n_j) /
                                      static_cast<double>(total);
                if (!scored.d || *scored.d != expect) {
                    out.fail("d value mismatch at paper " + std::to_string(corpus.external_id(p)));
                    return;
                }
            }
            if (p % 5 == 0 && mid >= corpus.year(p)) {
                const auto w2 = oracles::citing_partition(corpus, p, mid);
                const auto g2 = citing_partition(corpus, p, mid);
                if (g2.n_i != w2.n_i || g2.n_j != w2.n_j || g2.n_k != w2.n_k) {
                    out.fail("partition mismatch at truncated horizon");
                    return;
                }
            }
            ++papers_checked;
        }
    }
    const double elapsed = seconds_since(start);
    out.note(std::to_string(corpora) + " corpora, " + std::to_string(papers_checked) +
             " papers, " + fmt(elapsed) + " s");
    out.expect(elapsed < 60.0, "runtime budget exceeded: " + fmt(elapsed) + " s >= 60 s");
}

// ---------------------------------------------------------------- criterion 2

void check_bounds_and_extremes(Outcome& out) {
    // constructed extremes first, so each boundary case is actually exercised
    {
        CorpusBuilder b;
        b.add_paper(1, 1990, 10);
        b.add_paper(100, 1995, 11);
        b.add_paper(200, 1996, 12);
        b.add_paper(201, 1997, 12);
        b.add_citation(100, 1);
        b.add_citation(200, 100);
        b.add_citation(201, 100);
        const auto corpus = b.build();
        const auto r = d_score(corpus, corpus.require(100));
        out.expect(r.d.has_value() && *r.d == 1.0 && r.n_i == 2 && r.n_j == 0 && r.n_k == 0,
                   "pure-disruptive fixture must score exactly 1");
    }
    {
        CorpusBuilder b;
        b.add_paper(1, 1990, 10);
        b.add_paper(100, 1995, 11);
        b.add_paper(200, 1996, 12);
        b.add_citation(100, 1);
        b.add_citation(200, 100);
        b.add_citation(200, 1);
        const auto corpus = b.build();
        const auto r = d_score(corpus, corpus.require(100));
        out.expect(r.d.has_value() && *r.d == -1.0 && r.n_j == 1 && r.n_i == 0 && r.n_k == 0,
                   "pure-developing fixture must score exactly -1");
    }

    std::int64_t defined = 0, max_hits = 0, min_hits = 0;
    for (const std::uint64_t seed : {11ULL, 22ULL, 33ULL, 44ULL, 55ULL}) {
        SynthSpec spec;
        spec.papers_per_year = 90;
        spec.n_years = 5;
        spec.mean_refs = 5.0 + static_cast<double>(seed % 5);
        spec.frac_disruptive = 0.1;
        spec.frac_bridging = 0.1;
        spec.cocite_prob = 0.75;
        const auto corpus = generate_synthetic(spec, seed).corpus;
        for (PaperIndex p = 0; p < corpus.size(); ++p) {
            const auto r = d_score(corpus, p);
            if (!r.d) {
                if (r.n_i + r.n_j + r.n_k != 0) {
                    out.fail("score undefined despite qualifying citers");
                    return;
                }
                continue;
            }
            ++defined;
            if (*r.d < -1.0 || *r.d > 1.0) {
                out.fail("score outside [-1, 1]: " + fmt(*r.d));
                return;
            }
            const bool at_max = (*r.d == 1.0);
            const bool pure_i = (r.n_j == 0 && r.n_k == 0 && r.n_i > 0);
            if (at_max != pure_i) {
                out.fail("score 1 must coincide with pure focal-only citers");
                return;
            }
            const bool at_min = (*r.d == -1.0);
            const bool pure_j = (r.n_i == 0 && r.n_k == 0 && r.n_j > 0);
            if (at_min != pure_j) {
                out.fail("score -1 must coincide with pure developing citers");
                return;
            }
            max_hits += at_max;
            min_hits += at_min;
        }
    }
    out.expect(defined > 0 && max_hits > 0, "sweep never reached the upper extreme");
    out.note(std::to_string(defined) + " defined scores, " + std::to_string(max_hits) +
             " at +1, " + std::to_string(min_hits) + " at -1");
}

// ---------------------------------------------------------------- criterion 3

void check_shuffle_conservation(Outcome& out) {
    SynthSpec spec;
    spec.n_journals = 40;
    spec.papers_per_year = 1000;
    spec.n_years = 3;
    spec.mean_refs = 15.0;
    const auto corpus = generate_synthetic(spec, 77).corpus;
    const std::int32_t year = spec.start_year + 2;
    const std::int64_t cohort_size = static_cast<std::int64_t>(corpus.cohort(year).size());
    out.expect(cohort_size == 1000, "cohort must hold 1000 papers");

    const auto before = oracles::signature(corpus, cohort_refs(corpus, year));
    std::int64_t total_swaps = 0;
    for (int r = 0; r < 10; ++r) {
        const auto shuffled = shuffle(corpus, year, derive_seed(4242, r), 10);
        total_swaps += shuffled.swaps_accepted;
        const auto after = oracles::signature(corpus, shuffled);
        if (after.list_lengths != before.list_lengths) {
            out.fail("reference-list lengths changed in realization " + std::to_string(r));
            return;
        }
        if (after.reference_years != before.reference_years) {
            out.fail("per-paper reference-year multisets changed in realization " +
                     std::to_string(r));
            return;
        }
        if (after.in_degree != before.in_degree) {
            out.fail("cited in-degrees changed in realization " + std::to_string(r));
            return;
        }
    }
    out.expect(total_swaps > 0, "shuffle never accepted a swap");
    out.note("10 realizations over " + std::to_string(before.list_lengths.size()) +
             " reference lists, " + std::to_string(total_swaps) + " swaps");
}

// ---------------------------------------------------------------- criterion 4

void check_self_null(Outcome& out) {
    const auto start = std::chrono::steady_clock::now();
    SynthSpec spec;
    spec.n_journals = 20;
    spec.papers_per_year = 600;
    spec.n_years = 3;
    spec.mean_refs = 12.0;
    spec.cocite_prob = 0.5;
    const auto corpus = generate_synthetic(spec, 303).corpus;
    const std::int32_t year = spec.start_year + 2;

    // one realization plays the observed data, ten others form the null
    const auto observed = count_journal_pairs(corpus, shuffle(corpus, year, 909, 10));
    const auto null_stats = null_statistics(corpus, year, 10, 1717, 10);
    const auto table = z_table(observed, null_stats, year);

    double z_sum = 0.0;
    std::int64_t n = 0, undefined = 0;
    for (const auto& [key, entry] : table.pairs) {
        if (entry.exp < 5.0) continue;
        if (!entry.z) {
            ++undefined;
            continue;
        }
        z_sum += *entry.z;
        ++n;
    }
    const double elapsed = seconds_since(start);
    out.expect(n >= 50, "too few pairs with exp >= 5: " + std::to_string(n));
    out.expect(undefined == 0, "undefined z at exp >= 5");
    if (n > 0) {
        const double mean_z = z_sum / static_cast<double>(n);
        out.note("mean z = " + fmt(mean_z) + " over " + std::to_string(n) + " pairs, " +
                 fmt(elapsed) + " s");
        out.expect(mean_z > -0.15 && mean_z < 0.15,
                   "self-null mean z outside [-0.15, 0.15]: " + fmt(mean_z));
    }
    out.expect(elapsed < 120.0, "runtime budget exceeded: " + fmt(elapsed) + " s >= 120 s");
}

// ---------------------------------------------------------------- criterion 5

void check_sbi_fixtures(Outcome& out) {
    auto series = [](std::vector<std::int64_t> counts) {
        CitationSeries s;
        s.focal = 0;
        s.publication_year = 2000;
        s.counts = std::move(counts);
        return s;
    };
    const auto ramp = sbi(series({0, 1, 2, 3, 4}));
    out.expect(ramp.b == 0.0, "linear ramp must score exactly 0, got " + fmt(ramp.b));

    const auto sleeper = sbi(series({0, 0, 0, 0, 10}));
    out.expect(sleeper.b == 15.0, "sleeper fixture must score exactly 15, got " + fmt(sleeper.b));

    const auto immediate = sbi(series({7, 2, 1}));
    out.expect(immediate.b == 0.0 && immediate.t_m == 0,
               "first-year peak must score 0 by convention");

    const auto s = series({0, 2, 1, 0, 0, 7, 3, 1, 9, 4});
    const auto full = sbi(s);
    for (const std::int32_t window : {2, 3, 4, 7}) {
        const auto points = sbi_windowed(s, window);
        if (points.empty() || points.back().first != 9 || points.back().second != full.b) {
            out.fail("windowed final point must equal the full-series value (window " +
                     std::to_string(window) + ")");
            return;
        }
    }
    out.note("ramp = 0, burst = 15, immediate peak = 0, windowed final = full");
}

// ---------------------------------------------------------------- criterion 6

void check_embedding_identity(Outcome& out) {
    int hits = 0;
    std::vector<double> correlations;
    double worst_seed_time = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SynthSpec spec;
        spec.n_journals = 50;
        spec.n_communities = 2;
        spec.papers_per_year = 300;
        spec.n_years = 4;
        spec.mean_refs = 21.0;
        spec.cocite_prob = 0.9;
        const auto corpus = generate_synthetic(spec, 5000 + seed).corpus;
        const std::int32_t year = spec.start_year + 3;
        const auto contexts = build_contexts(corpus, year, seed);

        const auto t0 = std::chrono::steady_clock::now();
        SgnsParams params; // dim 50, negatives 5, window 10 stay at their defaults
        params.seed = seed;
        params.epochs = 40;
        params.lr_end = 1e-5;
        const auto model = train_sgns(contexts, params);
        const double train_time = seconds_since(t0);
        worst_seed_time = std::max(worst_seed_time, train_time);
        if (train_time >= 60.0) {
            out.fail("training took " + fmt(train_time) + " s >= 60 s for one seed");
            return;
        }

        const auto pmi = pmi_table(contexts, params.window, 10);
        const auto report = validate_pmi_identity(model, pmi);
        correlations.push_back(report.pearson);
        if (report.pearson >= 0.5) ++hits;
    }
    std::sort(correlations.begin(), correlations.end());
    out.note(std::to_string(hits) + "/20 seeds >= 0.5 (min " + fmt(correlations.front()) +
             ", median " + fmt(correlations[10]) + ", max " + fmt(correlations.back()) +
             "), slowest train " + fmt(worst_seed_time) + " s");
    out.expect(hits >= 18, "identity held on only " + std::to_string(hits) + "/20 seeds");
}

// ---------------------------------------------------------------- criterion 7

void check_planted_recovery(Outcome& out) {
    int negative_pearson = 0;
    int welch_hits = 0;
    std::vector<double> pearsons, welches;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SynthSpec spec;
        spec.n_journals = 30;
        spec.n_communities = 2;
        spec.papers_per_year = 300;
        spec.n_years = 6;
        spec.mean_refs = 10.0;
        spec.frac_bridging = 0.15;
        spec.frac_disruptive = 0.08;
        spec.cocite_prob = 0.7;
        const auto result = generate_synthetic(spec, 9000 + seed);
        const auto& corpus = result.corpus;
        const std::int32_t year = spec.start_year + 2;

        RunConfig config;
        config.use_synth = true;
        config.synth = spec;
        config.seed = seed;
        const auto report = report_cohort(corpus, year, config);
        if (report.pearson_z_d) {
            pearsons.push_back(*report.pearson_z_d);
            if (*report.pearson_z_d < 0.0) ++negative_pearson;
        }

        // ground-truth groups: planted-disruptive vs purely conventional
        std::vector<double> planted_pi, conventional_pi;
        for (const PaperIndex p : corpus.cohort(year)) {
            const auto r = d_score(corpus, p);
            if (!r.p_i) continue;
            if (result.labels.disruptive[p]) planted_pi.push_back(*r.p_i);
            else if (!result.labels.bridging[p]) conventional_pi.push_back(*r.p_i);
        }
        if (planted_pi.size() >= 2 && conventional_pi.size() >= 2) {
            const double t = stats::welch_t(planted_pi, conventional_pi);
            welches.push_back(t);
            if (t > 2.0) ++welch_hits;
        }
    }
    std::sort(pearsons.begin(), pearsons.end());
    std::sort(welches.begin(), welches.end());
    out.note("pearson(z_median, D) < 0 on " + std::to_string(negative_pearson) +
             "/20 seeds (median " + fmt(pearsons[pearsons.size() / 2]) + ")");
    out.note("welch t > 2 on " + std::to_string(welch_hits) + "/20 seeds (median " +
             fmt(welches.empty() ? 0.0 : welches[welches.size() / 2]) + ")");
    out.expect(negative_pearson >= 18,
               "negative correlation on only " + std::to_string(negative_pearson) + "/20 seeds");
    out.expect(welch_hits >= 18,
               "planted-disruptive p_i advantage on only " + std::to_string(welch_hits) +
                   "/20 seeds");
}

// ---------------------------------------------------------------- criterion 8

void check_stats_fixtures(Outcome& out) {
    // references computed independently with numpy/scipy
    const std::vector<double> deciles{7, 2, 9, 4, 1, 10, 3, 8, 5, 6};
    out.expect(std::abs(stats::percentile(deciles, 50.0) - 5.5) <= 1e-12,
               "50th percentile off reference");
    out.expect(std::abs(stats::percentile(deciles, 10.0) - 1.9) <= 1e-12,
               "10th percentile off reference");

    const std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const std::vector<double> y{2.1, 4.3, 3.2, 6.8, 7.1, 6.0, 9.4, 8.2, 10.9, 12.3};
    out.expect(std::abs(stats::pearson(x, y) - 0.9471327615841989) <= 1e-12,
               "pearson off reference");

    const std::vector<double> a8{1, 2, 3, 4, 5, 6, 7, 8};
    const std::vector<double> b8{5, 6, 7, 8, 9, 10, 11, 12};
    out.expect(stats::ks_statistic(a8, b8) == 0.5, "dyadic ks fixture must be exact");
    out.expect(stats::ks_statistic(a8, a8) == 0.0, "ks of identical samples must be 0");
    const std::vector<double> disjoint{20, 21, 22};
    out.expect(stats::ks_statistic(a8, disjoint) == 1.0, "ks of disjoint samples must be 1");

    const std::vector<double> wa{12.1, 14.3, 11.8, 13.5, 15.2, 12.9,
                                 14.8, 13.1, 12.4, 15.9, 11.2, 13.7};
    const std::vector<double> wb{14.9, 16.2, 15.5, 17.8, 14.1, 16.9, 15.3, 18.2, 17.1, 15.8};
    out.expect(std::abs(stats::welch_t(wa, wb) - (-4.7261052174898674)) <= 1e-9,
               "welch t off reference");
    out.expect(std::abs(stats::welch_df(wa, wb) - 19.815320291358464) <= 1e-9,
               "welch df off reference");
    out.note("percentile, pearson, ks, welch all at reference values");
}

// ---------------------------------------------------------------- criterion 9

std::map<std::string, std::string> dir_contents(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        files[entry.path().filename().string()] = buf.str();
    }
    return files;
}

void check_determinism(Outcome& out) {
    RunConfig config;
    config.use_synth = true;
    config.synth.n_journals = 25;
    config.synth.n_communities = 2;
    config.synth.papers_per_year = 150;
    config.synth.n_years = 4;
    config.synth.mean_refs = 9.0;
    config.synth.frac_bridging = 0.1;
    config.synth.frac_disruptive = 0.05;
    config.synth.cocite_prob = 0.6;
    config.seed = 2024;
    config.min_count = 3;
    config.cohort_years = {config.synth.start_year + 2, config.synth.start_year + 3};

    const fs::path base = fs::temp_directory_path() / "scimet_acceptance_det";
    const fs::path dir1 = base / "run1";
    const fs::path dir2 = base / "run2";
    fs::remove_all(base);

    std::ostringstream log;
    config.out_dir = dir1.string();
    const int rc1 = run_pipeline(config, log);
    config.out_dir = dir2.string();
    const int rc2 = run_pipeline(config, log);
    out.expect(rc1 == 0 && rc2 == 0, "pipeline runs must succeed");
    if (rc1 != 0 || rc2 != 0) return;

    const auto files1 = dir_contents(dir1);
    const auto files2 = dir_contents(dir2);
    out.expect(!files1.empty(), "pipeline produced no files");
    if (files1.size() != files2.size()) {
        out.fail("file sets differ between runs");
        return;
    }
    std::int64_t bytes = 0;
    for (const auto& [name, content] : files1) {
        const auto it = files2.find(name);
        if (it == files2.end() || it->second != content) {
            out.fail("file differs between identical runs: " + name);
            return;
        }
        bytes += static_cast<std::int64_t>(content.size());
    }
    out.note(std::to_string(files1.size()) + " files, " + std::to_string(bytes) +
             " bytes, byte-identical");
    fs::remove_all(base);
}

// --------------------------------------------------------------- criterion 10

void check_throughput(Outcome& out) {
    const auto start = std::chrono::steady_clock::now();
    RunConfig config;
    config.use_synth = true;
    config.synth.n_journals = 50;
    config.synth.n_communities = 2;
    config.synth.papers_per_year = 10000;
    config.synth.n_years = 10;
    config.synth.mean_refs = 22.3; // lands near 2M citations over 9 citing years
    config.synth.frac_bridging = 0.1;
    config.synth.frac_disruptive = 0.05;
    config.synth.cocite_prob = 0.6;
    config.seed = 31337;
    // every cohort that can hold references; the opening year has none by
    // construction, so its embedding stage would fail and mask the timing
    for (std::int32_t y = 1; y < config.synth.n_years; ++y) {
        config.cohort_years.push_back(config.synth.start_year + y);
    }

    const fs::path dir = fs::temp_directory_path() / "scimet_acceptance_throughput";
    fs::remove_all(dir);
    config.out_dir = dir.string();

    const auto corpus = generate_synthetic(config.synth, config.seed).corpus;
    out.expect(corpus.size() == 100000, "corpus must hold 100,000 papers");
    out.expect(corpus.citation_count() >= 1900000,
               "corpus must hold about 2M citations, got " +
                   std::to_string(corpus.citation_count()));

    std::ostringstream log;
    const int rc = run_pipeline(config, log);
    const double elapsed = seconds_since(start);
    out.expect(rc == 0, "pipeline failed with exit code " + std::to_string(rc));
    out.note(std::to_string(corpus.size()) + " papers, " +
             std::to_string(corpus.citation_count()) + " citations, " + fmt(elapsed) + " s");
    out.expect(elapsed < 600.0, "runtime budget exceeded: " + fmt(elapsed) + " s >= 600 s");
    fs::remove_all(dir);
}

struct Criterion {
    int number;
    const char* name;
    std::function<void(Outcome&)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "d-score oracle equivalence", check_oracle_equivalence},
        {2, "d-score bounds and extremes", check_bounds_and_extremes},
        {3, "shuffle conservation", check_shuffle_conservation},
        {4, "self-null z calibration", check_self_null},
        {5, "delayed-recognition fixtures", check_sbi_fixtures},
        {6, "embedding identity", check_embedding_identity},
        {7, "planted-effect recovery", check_planted_recovery},
        {8, "stats reference fixtures", check_stats_fixtures},
        {9, "pipeline determinism", check_determinism},
        {10, "throughput sanity", check_throughput},
    };
    return all;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        try {
            selected.push_back(std::stoi(argv[i]));
        } catch (const std::exception&) {
            std::fprintf(stderr, "usage: %s [criterion numbers]\n", argv[0]);
            return 1;
        }
    }

    int failures = 0;
    for (const auto& criterion : criteria()) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), criterion.number) == selected.end()) {
            continue;
        }
        Outcome outcome;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(outcome);
        } catch (const std::exception& e) {
            outcome.fail(std::string("unexpected exception: ") + e.what());
        }
        const double elapsed = seconds_since(start);
        std::printf("%s  %02d %s (%.1f s)\n", outcome.pass ? "PASS" : "FAIL", criterion.number,
                    criterion.name, elapsed);
        for (const auto& line : outcome.details) {
            std::printf("      %s\n", line.c_str());
        }
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
