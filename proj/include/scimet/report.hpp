#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scimet/atypicality.hpp"
#include "scimet/corpus.hpp"
#include "scimet/disruption.hpp"
#include "scimet/embedding.hpp"
#include "scimet/synth.hpp"

namespace scimet {

/// Everything a pipeline run needs. Loadable from a JSON file; CLI flags
/// override individual fields after loading.
struct RunConfig {
    // Input: either TSV paths or a synthetic spec (synth wins when set).
    std::string papers_path;
    std::string citations_path;
    bool skip_header = false;
    bool use_synth = false;
    SynthSpec synth;

    std::vector<std::int32_t> cohort_years; // empty = every year in the corpus
    int realizations = 10;
    int swap_factor = 10;
    std::uint64_t seed = 1;

    SgnsParams embed;
    std::int64_t min_count = 10;     // pmi-check joint-count floor
    std::int32_t sbi_window = 2;

    double d_group_cut = 5.0;        // top/bottom percent for D-group KS
    double novelty_group_cut = 10.0; // top/bottom percent for novelty groups

    std::string out_dir = ".";
    bool json_reports = false;

    void check() const; // throws ConfigError
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

/// Stable content hash used in audit logs, so a reader can tell whether two
/// logged statistics saw the same inputs.
std::uint64_t corpus_digest(const CitationCorpus& corpus);

struct AuditEntry {
    std::string operation;
    std::int32_t cohort_year = 0;
    std::uint64_t inputs_digest = 0;
    std::uint64_t seed = 0;
    std::string status; // "ok" or an error note
};

struct GroupMean {
    std::int64_t n = 0;
    double mean = 0.0;
};

struct FieldRow {
    std::string field;
    std::int64_t n = 0;
    std::optional<double> mean_p_i;
    double frac_highly_atypical = 0.0;
};

/// One cohort's headline numbers. Optional fields stay empty when the cohort
/// lacks enough defined values for that statistic; the notes say why.
struct CohortReport {
    std::int32_t cohort_year = 0;
    std::int64_t n_papers = 0;  // cohort size
    std::int64_t n_scored = 0;  // papers with both z_median and D defined

    std::optional<double> pearson_z_d;

    double frac_highly_atypical = 0.0;
    double frac_mixed = 0.0;
    double frac_highly_typical = 0.0;
    double frac_undefined = 0.0;

    // Mean disruptive-citation fraction p_i for the most-novel vs
    // most-conventional z_median groups (cut = novelty_group_cut percent).
    GroupMean novel_group;
    GroupMean conventional_group;
    std::optional<double> novelty_welch_t;

    // KS between z distributions of the top vs bottom D-score groups
    // (cut = d_group_cut percent).
    std::int64_t d_group_size = 0;
    std::optional<double> ks_z_median;
    std::optional<double> ks_z_min;

    // Median windowed sleeping-beauty index per novelty decile; decile 1
    // holds the lowest z_median (most atypical) tenth. Cells are empty when a
    // decile has no defined series at that age.
    std::vector<std::int32_t> sbi_ages;
    std::vector<std::vector<std::optional<double>>> sbi_decile_median; // [10][ages]

    std::vector<FieldRow> field_table; // empty unless field labels present

    std::vector<AuditEntry> audit;
    std::vector<std::string> notes;

    void write_summary(std::ostream& out) const;
    std::string to_json() const;
};

/// Composes the per-paper metrics into the cohort summary. Throws DataError
/// when the cohort has fewer than 20 papers (too small for the percentile
/// groups); statistics whose preconditions fail on this data are left empty
/// with a note instead. Pass a precomputed pair table (from the same corpus,
/// year, seed and realization count) to skip rebuilding the null model.
CohortReport report_cohort(const CitationCorpus& corpus, std::int32_t year,
                           const RunConfig& config,
                           const PairZTable* precomputed = nullptr);

/// Long-format plot data `series <TAB> x <TAB> y` with a header row.
/// Byte-stable: fixed series order, fixed float formatting.
void export_plotdata(const CohortReport& report, std::ostream& out);
void export_plotdata(const DisruptionSeries& series, std::ostream& out);

/// ingest/synth -> validate -> per-cohort {dscore, zscore, sbi, embed,
/// pmi-check, report}. Stage failures are recorded and later cohorts still
/// run; the return value is 0 only if every stage succeeded, otherwise the
/// exit code of the first failure (1 config, 2 data, 3 compute).
int run_pipeline(const RunConfig& config, std::ostream& log);

} // namespace scimet
