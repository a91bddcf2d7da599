// Command-line front end: every subcommand is a thin wrapper over the
// library calls, so anything printed here can be reproduced in-process.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

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

namespace {

using namespace scimet;

std::string fmt_g(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string fmt_opt(const std::optional<double>& x) { return x ? fmt_g(*x) : "NA"; }

// Global flags plus the per-command overrides that feed RunConfig.
struct Cli {
    std::string config_path;
    std::string papers;
    std::string citations;
    bool header = false;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    bool json = false;

    std::optional<int> realizations;
    std::optional<int> swap_factor;
    std::optional<std::int64_t> min_count;
    std::optional<std::int32_t> sbi_window;
    std::optional<double> d_cut;
    std::optional<double> novelty_cut;

    std::optional<std::int32_t> dim, negatives, window, epochs, threads;
    std::optional<double> lr_start, lr_end;
    bool no_deterministic = false;

    RunConfig resolve() const {
        RunConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        if (!papers.empty()) {
            cfg.papers_path = papers;
            cfg.use_synth = false;
        }
        if (!citations.empty()) cfg.citations_path = citations;
        if (header) cfg.skip_header = true;
        if (seed) cfg.seed = *seed;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (json) cfg.json_reports = true;
        if (realizations) cfg.realizations = *realizations;
        if (swap_factor) cfg.swap_factor = *swap_factor;
        if (min_count) cfg.min_count = *min_count;
        if (sbi_window) cfg.sbi_window = *sbi_window;
        if (d_cut) cfg.d_group_cut = *d_cut;
        if (novelty_cut) cfg.novelty_group_cut = *novelty_cut;
        if (dim) cfg.embed.dim = *dim;
        if (negatives) cfg.embed.negatives = *negatives;
        if (window) cfg.embed.window = *window;
        if (epochs) cfg.embed.epochs = *epochs;
        if (threads) cfg.embed.threads = *threads;
        if (lr_start) cfg.embed.lr_start = *lr_start;
        if (lr_end) cfg.embed.lr_end = *lr_end;
        if (no_deterministic) cfg.embed.deterministic = false;
        return cfg;
    }
};

CitationCorpus load_corpus(const RunConfig& cfg) {
    if (!cfg.papers_path.empty() && !cfg.citations_path.empty()) {
        namespace fs = std::filesystem;
        if (!fs::exists(cfg.papers_path)) throw ConfigError("missing input " + cfg.papers_path);
        if (!fs::exists(cfg.citations_path)) {
            throw ConfigError("missing input " + cfg.citations_path);
        }
        return ingest_files(cfg.papers_path, cfg.citations_path, cfg.skip_header);
    }
    if (cfg.use_synth) return generate_synthetic(cfg.synth, cfg.seed).corpus;
    throw ConfigError("no input: pass --papers/--citations or a config with a synth block");
}

// stdout unless --out names a file.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw DataError("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void emit_corpus_report(const CorpusReport& report, bool as_json, std::ostream& out) {
    if (as_json) out << report.to_json();
    else report.write_keyvalue(out);
}

void print_dscore(const CitationCorpus& corpus, const DisruptionResult& r, bool as_json,
                  std::ostream& out) {
    if (as_json) {
        out << "{\"paper_id\": " << corpus.external_id(r.focal)
            << ", \"horizon_year\": " << r.horizon_year << ", \"n_i\": " << r.n_i
            << ", \"n_j\": " << r.n_j << ", \"n_k\": " << r.n_k << ", \"d\": "
            << (r.d ? fmt_g(*r.d) : "null") << ", \"p_i\": " << (r.p_i ? fmt_g(*r.p_i) : "null")
            << ", \"p_j\": " << (r.p_j ? fmt_g(*r.p_j) : "null") << "}\n";
        return;
    }
    out << "paper_id=" << corpus.external_id(r.focal) << '\n'
        << "horizon_year=" << r.horizon_year << '\n'
        << "n_i=" << r.n_i << '\n'
        << "n_j=" << r.n_j << '\n'
        << "n_k=" << r.n_k << '\n'
        << "d=" << fmt_opt(r.d) << '\n'
        << "p_i=" << fmt_opt(r.p_i) << '\n'
        << "p_j=" << fmt_opt(r.p_j) << '\n';
}

std::vector<std::int64_t> read_id_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open id list " + path);
    std::vector<std::int64_t> ids;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            ids.push_back(std::stoll(line));
        } catch (const std::exception&) {
            throw ParseError("id list: not an integer: " + line, line_no);
        }
    }
    return ids;
}

void write_sbi_deciles(const CitationCorpus& corpus, std::int32_t year, const RunConfig& cfg,
                       std::ostream& out) {
    const std::uint64_t cohort_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(year));
    const PairZTable table =
        build_pair_z_table(corpus, year, cfg.realizations, cohort_seed, cfg.swap_factor);
    struct Ranked {
        PaperIndex paper;
        double z_median;
    };
    std::vector<Ranked> ranked;
    for (const PaperIndex p : corpus.cohort(year)) {
        const PaperNovelty nov = paper_novelty(corpus, table, p);
        if (nov.z_median) ranked.push_back({p, *nov.z_median});
    }
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
        if (a.z_median != b.z_median) return a.z_median < b.z_median;
        return a.paper < b.paper;
    });
    if (ranked.empty()) throw DataError("sbi deciles: no paper in the cohort has a defined z");

    std::vector<std::int32_t> ages;
    for (const auto& [age, b] :
         sbi_windowed(citation_series(corpus, ranked.front().paper, corpus.max_year()),
                      cfg.sbi_window)) {
        ages.push_back(age);
    }
    std::vector<std::vector<std::vector<double>>> cells(
        10, std::vector<std::vector<double>>(ages.size()));
    for (std::size_t r = 0; r < ranked.size(); ++r) {
        const std::size_t decile = std::min<std::size_t>(9, r * 10 / ranked.size());
        const auto points = sbi_windowed(
            citation_series(corpus, ranked[r].paper, corpus.max_year()), cfg.sbi_window);
        for (std::size_t a = 0; a < points.size() && a < ages.size(); ++a) {
            cells[decile][a].push_back(points[a].second);
        }
    }
    out << "series\tx\ty\n";
    for (std::size_t d = 0; d < 10; ++d) {
        for (std::size_t a = 0; a < ages.size(); ++a) {
            if (cells[d][a].empty()) continue;
            out << "NP_decile_" << (d + 1) << '\t' << ages[a] << '\t'
                << fmt_g(stats::percentile(cells[d][a], 50.0)) << '\n';
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"citation-graph analytics: disruption, atypicality, delayed recognition"};
    app.require_subcommand(1);

    Cli cli;
    app.add_option("--config", cli.config_path, "JSON run configuration; flags override fields");
    app.add_option("--seed", cli.seed, "base random seed");
    app.add_option("--out-dir", cli.out_dir, "directory for generated files");
    app.add_flag("--json", cli.json, "emit JSON instead of key=value reports");

    auto add_input_flags = [&cli](CLI::App* sub) {
        sub->add_option("--papers", cli.papers, "papers TSV: paper_id\\tyear\\tjournal_id[\\tfield]");
        sub->add_option("--citations", cli.citations, "citations TSV: citing_id\\tcited_id");
        sub->add_flag("--header", cli.header, "skip the first row of both input files");
    };
    auto add_embed_flags = [&cli](CLI::App* sub) {
        sub->add_option("--dim", cli.dim, "embedding dimension");
        sub->add_option("--neg", cli.negatives, "negative samples per positive");
        sub->add_option("--window", cli.window, "context window size");
        sub->add_option("--epochs", cli.epochs, "training epochs");
        sub->add_option("--lr-start", cli.lr_start, "initial learning rate");
        sub->add_option("--lr-end", cli.lr_end, "final learning rate");
        sub->add_flag("--no-deterministic", cli.no_deterministic,
                      "allow lock-free parallel training (non-deterministic)");
        sub->add_option("--threads", cli.threads, "threads for non-deterministic training");
    };

    auto* c_ingest = app.add_subcommand("ingest", "parse inputs, write normalized TSVs");
    add_input_flags(c_ingest);

    auto* c_validate = app.add_subcommand("validate", "parse inputs, report structural counts");
    add_input_flags(c_validate);

    auto* c_synth = app.add_subcommand("synth", "generate a synthetic corpus with ground truth");
    SynthSpec synth_flags;
    bool synth_flags_given = false;
    c_synth->add_option("--journals", synth_flags.n_journals, "journal count")
        ->each([&](const std::string&) { synth_flags_given = true; });
    c_synth->add_option("--communities", synth_flags.n_communities, "journal communities")
        ->each([&](const std::string&) { synth_flags_given = true; });
    c_synth->add_option("--papers-per-year", synth_flags.papers_per_year, "cohort size")
        ->each([&](const std::string&) { synth_flags_given = true; });
    c_synth->add_option("--start-year", synth_flags.start_year, "first publication year")
        ->each([&](const std::string&) { synth_flags_given = true; });
    c_synth->add_option("--years", synth_flags.n_years, "year span")
        ->each([&](const std::string&) { synth_flags_given = true; });
    c_synth->add_option("--mean-refs", synth_flags.mean_refs, "mean references per paper")
        ->each([&](const std::string&) { synth_flags_given = true; });
    c_synth->add_option("--frac-bridging", synth_flags.frac_bridging,
                        "fraction of papers citing across communities")
        ->each([&](const std::string&) { synth_flags_given = true; });
    c_synth->add_option("--frac-disruptive", synth_flags.frac_disruptive,
                        "fraction of papers whose citers skip their references")
        ->each([&](const std::string&) { synth_flags_given = true; });
    c_synth->add_option("--cocite-prob", synth_flags.cocite_prob,
                        "chance a reference is co-cited with its anchor")
        ->each([&](const std::string&) { synth_flags_given = true; });

    std::int64_t focal_id = 0;
    std::optional<std::int32_t> horizon, from_year, to_year, cohort_year;
    std::string batch_path, out_path, which = "averaged", export_kind;
    bool want_deciles = false;

    auto* c_dscore = app.add_subcommand("dscore", "disruption score for one paper or a batch");
    add_input_flags(c_dscore);
    c_dscore->add_option("--focal", focal_id, "external paper id");
    c_dscore->add_option("--horizon", horizon, "last citing year considered");
    c_dscore->add_option("--batch", batch_path, "file of focal ids, one per line");
    c_dscore->add_option("--out", out_path, "output file (default stdout)");

    auto* c_dseries = app.add_subcommand("dseries", "yearly disruption series for one paper");
    add_input_flags(c_dseries);
    c_dseries->add_option("--focal", focal_id, "external paper id")->required();
    c_dseries->add_option("--from", from_year, "first year of the series");
    c_dseries->add_option("--to", to_year, "last year of the series");
    c_dseries->add_option("--out", out_path, "output file (default stdout)");

    std::string pairs_path;
    auto* c_zscore = app.add_subcommand("zscore", "per-paper atypicality against the shuffled null");
    add_input_flags(c_zscore);
    c_zscore->add_option("--year", cohort_year, "cohort year")->required();
    c_zscore->add_option("--realizations", cli.realizations, "null-model realizations");
    c_zscore->add_option("--swap-factor", cli.swap_factor, "swap attempts per citation");
    c_zscore->add_option("--pairs", pairs_path, "also write the journal-pair table here");
    c_zscore->add_option("--out", out_path, "output file (default stdout)");

    auto* c_sbi = app.add_subcommand("sbi", "sleeping-beauty index for one paper or a cohort");
    add_input_flags(c_sbi);
    c_sbi->add_option("--focal", focal_id, "external paper id");
    c_sbi->add_option("--year", cohort_year, "cohort year for batch mode");
    c_sbi->add_option("--window", cli.sbi_window, "evaluation window in years");
    c_sbi->add_flag("--deciles", want_deciles,
                    "with --year: emit median windowed B per novelty decile");
    c_sbi->add_option("--realizations", cli.realizations, "null realizations for --deciles");
    c_sbi->add_option("--out", out_path, "output file (default stdout)");

    auto* c_embed = app.add_subcommand("embed", "train journal vectors on one cohort");
    add_input_flags(c_embed);
    add_embed_flags(c_embed);
    c_embed->add_option("--year", cohort_year, "cohort year")->required();
    c_embed->add_option("--which", which, "vector set to export: in|out|averaged")
        ->check(CLI::IsMember({"in", "out", "averaged"}));
    c_embed->add_option("--out", out_path, "output file (default stdout)");

    auto* c_pmi = app.add_subcommand("pmi-check", "correlate trained vectors with shifted PMI");
    add_input_flags(c_pmi);
    add_embed_flags(c_pmi);
    c_pmi->add_option("--year", cohort_year, "cohort year")->required();
    c_pmi->add_option("--min-count", cli.min_count, "minimum joint count for a PMI pair");
    c_pmi->add_option("--out", out_path, "output file (default stdout)");

    auto* c_report = app.add_subcommand("report",
                                        "cohort summary, or the full pipeline without --year");
    add_input_flags(c_report);
    add_embed_flags(c_report);
    c_report->add_option("--year", cohort_year, "restrict to one cohort year");
    c_report->add_option("--realizations", cli.realizations, "null-model realizations");
    c_report->add_option("--swap-factor", cli.swap_factor, "swap attempts per citation");
    c_report->add_option("--min-count", cli.min_count, "minimum joint count for pmi-check");
    c_report->add_option("--sbi-window", cli.sbi_window, "sleeping-beauty window in years");
    c_report->add_option("--d-cut", cli.d_cut, "top/bottom percent for D-score groups");
    c_report->add_option("--novelty-cut", cli.novelty_cut,
                         "top/bottom percent for novelty groups");

    auto* c_export = app.add_subcommand("export", "plot data as long-format TSV (series, x, y)");
    add_input_flags(c_export);
    c_export->add_option("--kind", export_kind, "dseries|report")
        ->check(CLI::IsMember({"dseries", "report"}))
        ->required();
    c_export->add_option("--focal", focal_id, "external paper id (kind dseries)");
    c_export->add_option("--year", cohort_year, "cohort year (kind report)");
    c_export->add_option("--realizations", cli.realizations, "null-model realizations");
    c_export->add_option("--out", out_path, "output file (default stdout)");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        RunConfig cfg = cli.resolve();

        if (app.got_subcommand(c_ingest)) {
            const CitationCorpus corpus = load_corpus(cfg);
            namespace fs = std::filesystem;
            const fs::path dir(cfg.out_dir);
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (ec) throw DataError("cannot create out_dir " + dir.string());
            {
                std::ofstream out(dir / "papers.tsv", std::ios::binary);
                if (!out) throw DataError("cannot write papers.tsv");
                write_papers_tsv(corpus, out);
            }
            {
                std::ofstream out(dir / "citations.tsv", std::ios::binary);
                if (!out) throw DataError("cannot write citations.tsv");
                write_citations_tsv(corpus, out);
            }
            emit_corpus_report(validate(corpus), cfg.json_reports, std::cout);
        } else if (app.got_subcommand(c_validate)) {
            const CitationCorpus corpus = load_corpus(cfg);
            emit_corpus_report(validate(corpus), cfg.json_reports, std::cout);
        } else if (app.got_subcommand(c_synth)) {
            if (synth_flags_given) cfg.synth = synth_flags;
            const SynthResult result = generate_synthetic(cfg.synth, cfg.seed);
            namespace fs = std::filesystem;
            const fs::path dir(cfg.out_dir);
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (ec) throw DataError("cannot create out_dir " + dir.string());
            {
                std::ofstream out(dir / "papers.tsv", std::ios::binary);
                if (!out) throw DataError("cannot write papers.tsv");
                write_papers_tsv(result.corpus, out);
            }
            {
                std::ofstream out(dir / "citations.tsv", std::ios::binary);
                if (!out) throw DataError("cannot write citations.tsv");
                write_citations_tsv(result.corpus, out);
            }
            {
                std::ofstream out(dir / "labels.tsv", std::ios::binary);
                if (!out) throw DataError("cannot write labels.tsv");
                for (PaperIndex p = 0; p < result.corpus.size(); ++p) {
                    out << result.corpus.external_id(p) << '\t'
                        << int(result.labels.bridging[p]) << '\t'
                        << int(result.labels.disruptive[p]) << '\t'
                        << result.labels.community[p] << '\n';
                }
            }
            std::cout << "papers=" << result.corpus.size() << '\n'
                      << "citations=" << result.corpus.citation_count() << '\n'
                      << "out_dir=" << dir.string() << '\n';
        } else if (app.got_subcommand(c_dscore)) {
            const CitationCorpus corpus = load_corpus(cfg);
            Sink sink(out_path);
            if (!batch_path.empty()) {
                for (const std::int64_t id : read_id_list(batch_path)) {
                    const DisruptionResult r = d_score(corpus, corpus.require(id), horizon);
                    sink.stream() << id << '\t' << r.n_i << '\t' << r.n_j << '\t' << r.n_k << '\t'
                                  << fmt_opt(r.d) << '\n';
                }
            } else {
                if (focal_id == 0) throw ConfigError("dscore: give --focal or --batch");
                const DisruptionResult r = d_score(corpus, corpus.require(focal_id), horizon);
                print_dscore(corpus, r, cfg.json_reports, sink.stream());
            }
        } else if (app.got_subcommand(c_dseries)) {
            const CitationCorpus corpus = load_corpus(cfg);
            const DisruptionSeries series =
                d_timeseries(corpus, corpus.require(focal_id), from_year, to_year);
            Sink sink(out_path);
            export_plotdata(series, sink.stream());
        } else if (app.got_subcommand(c_zscore)) {
            const CitationCorpus corpus = load_corpus(cfg);
            const PairZTable table = build_pair_z_table(corpus, *cohort_year, cfg.realizations,
                                                        cfg.seed, cfg.swap_factor);
            Sink sink(out_path);
            for (const PaperIndex p : corpus.cohort(*cohort_year)) {
                const PaperNovelty nov = paper_novelty(corpus, table, p);
                sink.stream() << corpus.external_id(p) << '\t' << fmt_opt(nov.z_median) << '\t'
                              << fmt_opt(nov.z_min) << '\t' << to_string(nov.cls) << '\n';
            }
            if (!pairs_path.empty()) {
                std::ofstream out(pairs_path, std::ios::binary);
                if (!out) throw DataError("cannot open pair table " + pairs_path);
                std::vector<PairKey> keys;
                keys.reserve(table.pairs.size());
                for (const auto& [key, v] : table.pairs) keys.push_back(key);
                std::sort(keys.begin(), keys.end());
                for (const PairKey key : keys) {
                    const PairZ& v = table.pairs.at(key);
                    out << corpus.journal_external(pair_first(key)) << '\t'
                        << corpus.journal_external(pair_second(key)) << '\t' << v.obs << '\t'
                        << fmt_g(v.exp) << '\t' << fmt_g(v.sigma) << '\t' << fmt_opt(v.z) << '\n';
                }
            }
        } else if (app.got_subcommand(c_sbi)) {
            const CitationCorpus corpus = load_corpus(cfg);
            Sink sink(out_path);
            if (cohort_year) {
                if (want_deciles) {
                    write_sbi_deciles(corpus, *cohort_year, cfg, sink.stream());
                } else {
                    for (const PaperIndex p : corpus.cohort(*cohort_year)) {
                        const SbiResult r = sbi(citation_series(corpus, p, corpus.max_year()));
                        sink.stream() << corpus.external_id(p) << '\t' << fmt_g(r.b) << '\t'
                                      << r.t_m << '\t' << r.c_tm << '\n';
                    }
                }
            } else {
                if (focal_id == 0) throw ConfigError("sbi: give --focal or --year");
                const auto series = citation_series(corpus, corpus.require(focal_id),
                                                    corpus.max_year());
                for (const auto& [age, b] : sbi_windowed(series, cfg.sbi_window)) {
                    sink.stream() << age << '\t' << fmt_g(b) << '\n';
                }
            }
        } else if (app.got_subcommand(c_embed)) {
            const CitationCorpus corpus = load_corpus(cfg);
            SgnsParams params = cfg.embed;
            params.seed = cfg.seed;
            const ContextCorpus contexts = build_contexts(corpus, *cohort_year, params.seed);
            const EmbeddingModel model = train_sgns(contexts, params);
            const VectorSet set = which == "in" ? VectorSet::In
                                 : which == "out" ? VectorSet::Out
                                                  : VectorSet::Averaged;
            Sink sink(out_path);
            export_vectors(model, set, sink.stream());
        } else if (app.got_subcommand(c_pmi)) {
            const CitationCorpus corpus = load_corpus(cfg);
            SgnsParams params = cfg.embed;
            params.seed = cfg.seed;
            const ContextCorpus contexts = build_contexts(corpus, *cohort_year, params.seed);
            const EmbeddingModel model = train_sgns(contexts, params);
            const PMITable table = pmi_table(contexts, params.window, cfg.min_count);
            const PmiIdentityReport r = validate_pmi_identity(model, table);
            Sink sink(out_path);
            sink.stream() << "pearson=" << fmt_g(r.pearson) << '\n'
                          << "slope=" << fmt_g(r.slope) << '\n'
                          << "n_pairs=" << r.n_pairs << '\n'
                          << "min_count=" << r.min_count << '\n'
                          << "shift=" << fmt_g(r.shift) << '\n';
        } else if (app.got_subcommand(c_report)) {
            if (cohort_year) {
                const CitationCorpus corpus = load_corpus(cfg);
                const CohortReport report = report_cohort(corpus, *cohort_year, cfg);
                namespace fs = std::filesystem;
                const fs::path dir(cfg.out_dir);
                std::error_code ec;
                fs::create_directories(dir, ec);
                if (ec) throw DataError("cannot create out_dir " + dir.string());
                const std::string tag = std::to_string(*cohort_year);
                {
                    std::ofstream out(dir / ("report_" + tag +
                                             (cfg.json_reports ? ".json" : ".txt")),
                                      std::ios::binary);
                    if (!out) throw DataError("cannot write cohort report");
                    if (cfg.json_reports) out << report.to_json();
                    else report.write_summary(out);
                }
                {
                    std::ofstream out(dir / ("plotdata_" + tag + ".tsv"), std::ios::binary);
                    if (!out) throw DataError("cannot write plot data");
                    export_plotdata(report, out);
                }
                if (cfg.json_reports) std::cout << report.to_json();
                else report.write_summary(std::cout);
            } else {
                return run_pipeline(cfg, std::cerr);
            }
        } else if (app.got_subcommand(c_export)) {
            const CitationCorpus corpus = load_corpus(cfg);
            Sink sink(out_path);
            if (export_kind == "dseries") {
                if (focal_id == 0) throw ConfigError("export --kind dseries needs --focal");
                export_plotdata(d_timeseries(corpus, corpus.require(focal_id)), sink.stream());
            } else {
                if (!cohort_year) throw ConfigError("export --kind report needs --year");
                export_plotdata(report_cohort(corpus, *cohort_year, cfg), sink.stream());
            }
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ComputeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
