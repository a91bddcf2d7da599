#include "scimet/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "scimet/atypicality.hpp"
#include "scimet/errors.hpp"
#include "scimet/recognition.hpp"
#include "scimet/rng.hpp"
#include "scimet/stats.hpp"

namespace scimet {

namespace {

std::string fmt_g(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string fmt_opt(const std::optional<double>& x) { return x ? fmt_g(*x) : "NA"; }

std::string hex64(std::uint64_t x) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

} // namespace

void RunConfig::check() const {
    if (!use_synth) {
        if (papers_path.empty() || citations_path.empty()) {
            throw ConfigError("config: papers and citations paths are required without a synth block");
        }
        namespace fs = std::filesystem;
        if (!fs::exists(papers_path)) throw ConfigError("config: missing input " + papers_path);
        if (!fs::exists(citations_path)) throw ConfigError("config: missing input " + citations_path);
    } else {
        synth.check();
    }
    if (realizations < 2) throw ConfigError("config: realizations must be >= 2");
    if (swap_factor < 1) throw ConfigError("config: swap_factor must be >= 1");
    if (d_group_cut <= 0.0 || d_group_cut > 50.0 || novelty_group_cut <= 0.0 ||
        novelty_group_cut > 50.0) {
        throw ConfigError("config: percentile cuts must lie in (0, 50]");
    }
    if (min_count < 1) throw ConfigError("config: min_count must be >= 1");
    if (sbi_window < 1) throw ConfigError("config: sbi_window must be >= 1");
    if (out_dir.empty()) throw ConfigError("config: out_dir must not be empty");
}

RunConfig parse_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    RunConfig cfg;
    try {
        cfg.papers_path = j.value("papers", cfg.papers_path);
        cfg.citations_path = j.value("citations", cfg.citations_path);
        cfg.skip_header = j.value("header", cfg.skip_header);
        if (j.contains("synth")) {
            cfg.use_synth = true;
            const auto& s = j.at("synth");
            cfg.synth.n_journals = s.value("journals", cfg.synth.n_journals);
            cfg.synth.n_communities = s.value("communities", cfg.synth.n_communities);
            cfg.synth.papers_per_year = s.value("papers_per_year", cfg.synth.papers_per_year);
            cfg.synth.start_year = s.value("start_year", cfg.synth.start_year);
            cfg.synth.n_years = s.value("years", cfg.synth.n_years);
            cfg.synth.mean_refs = s.value("mean_refs", cfg.synth.mean_refs);
            cfg.synth.frac_bridging = s.value("frac_bridging", cfg.synth.frac_bridging);
            cfg.synth.frac_disruptive = s.value("frac_disruptive", cfg.synth.frac_disruptive);
            cfg.synth.cocite_prob = s.value("cocite_prob", cfg.synth.cocite_prob);
        }
        if (j.contains("years")) cfg.cohort_years = j.at("years").get<std::vector<std::int32_t>>();
        cfg.realizations = j.value("realizations", cfg.realizations);
        cfg.swap_factor = j.value("swap_factor", cfg.swap_factor);
        cfg.seed = j.value("seed", cfg.seed);
        if (j.contains("embed")) {
            const auto& e = j.at("embed");
            cfg.embed.dim = e.value("dim", cfg.embed.dim);
            cfg.embed.negatives = e.value("negatives", cfg.embed.negatives);
            cfg.embed.window = e.value("window", cfg.embed.window);
            cfg.embed.epochs = e.value("epochs", cfg.embed.epochs);
            cfg.embed.lr_start = e.value("lr_start", cfg.embed.lr_start);
            cfg.embed.lr_end = e.value("lr_end", cfg.embed.lr_end);
            cfg.embed.deterministic = e.value("deterministic", cfg.embed.deterministic);
            cfg.embed.threads = e.value("threads", cfg.embed.threads);
        }
        cfg.min_count = j.value("min_count", cfg.min_count);
        cfg.sbi_window = j.value("sbi_window", cfg.sbi_window);
        cfg.d_group_cut = j.value("d_group_cut", cfg.d_group_cut);
        cfg.novelty_group_cut = j.value("novelty_group_cut", cfg.novelty_group_cut);
        cfg.out_dir = j.value("out_dir", cfg.out_dir);
        cfg.json_reports = j.value("json", cfg.json_reports);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: bad field: ") + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::uint64_t corpus_digest(const CitationCorpus& corpus) {
    std::uint64_t h = 0x636f7270ULL; // "corp"
    auto add = [&h](std::uint64_t v) { h = mix64(h ^ v); };
    add(static_cast<std::uint64_t>(corpus.size()));
    for (PaperIndex p = 0; p < corpus.size(); ++p) {
        add(static_cast<std::uint64_t>(corpus.external_id(p)));
        add(static_cast<std::uint64_t>(corpus.year(p)));
        add(static_cast<std::uint64_t>(corpus.journal_external(corpus.journal(p))));
        for (const PaperIndex t : corpus.references(p)) {
            add(static_cast<std::uint64_t>(corpus.external_id(t)));
        }
    }
    return h;
}

namespace {

struct PaperMetrics {
    PaperIndex paper = -1;
    std::optional<double> z_median;
    std::optional<double> z_min;
    NoveltyClass cls = NoveltyClass::Undefined;
    std::optional<double> d;
    std::optional<double> p_i;
};

std::optional<double> median_of(std::vector<double>& values) {
    if (values.empty()) return std::nullopt;
    return stats::percentile(values, 50.0);
}

} // namespace

CohortReport report_cohort(const CitationCorpus& corpus, std::int32_t year,
                           const RunConfig& config, const PairZTable* precomputed) {
    if (config.d_group_cut <= 0.0 || config.d_group_cut > 50.0 ||
        config.novelty_group_cut <= 0.0 || config.novelty_group_cut > 50.0) {
        throw ConfigError("report_cohort: percentile cuts must lie in (0, 50]");
    }
    if (config.sbi_window < 1) throw ConfigError("report_cohort: sbi_window must be >= 1");
    const auto cohort = corpus.cohort(year);
    if (cohort.size() < 20) {
        throw DataError("report_cohort: cohort " + std::to_string(year) + " has " +
                        std::to_string(cohort.size()) + " papers, need >= 20 for percentile groups");
    }

    CohortReport report;
    report.cohort_year = year;
    report.n_papers = static_cast<std::int64_t>(cohort.size());
    const std::uint64_t digest = corpus_digest(corpus);
    const std::uint64_t cohort_seed = derive_seed(config.seed, static_cast<std::uint64_t>(year));
    auto log = [&](const std::string& op, std::uint64_t seed, const std::string& status) {
        report.audit.push_back({op, year, digest, seed, status});
    };

    const PairZTable ztable =
        precomputed ? *precomputed
                    : build_pair_z_table(corpus, year, config.realizations, cohort_seed,
                                         config.swap_factor);
    log("z_table", cohort_seed, "ok");

    std::vector<PaperMetrics> metrics;
    metrics.reserve(cohort.size());
    std::int64_t n_ha = 0, n_mixed = 0, n_ht = 0, n_undef = 0;
    for (const PaperIndex p : cohort) {
        PaperMetrics m;
        m.paper = p;
        const PaperNovelty nov = paper_novelty(corpus, ztable, p);
        m.z_median = nov.z_median;
        m.z_min = nov.z_min;
        m.cls = nov.cls;
        switch (nov.cls) {
            case NoveltyClass::HighlyAtypical: ++n_ha; break;
            case NoveltyClass::Mixed: ++n_mixed; break;
            case NoveltyClass::HighlyTypical: ++n_ht; break;
            case NoveltyClass::Undefined: ++n_undef; break;
        }
        const DisruptionResult dr = d_score(corpus, p);
        m.d = dr.d;
        m.p_i = dr.p_i;
        if (m.z_median && m.d) ++report.n_scored;
        metrics.push_back(m);
    }
    log("paper_novelty_batch", cohort_seed, "ok");
    log("d_score_batch", 0, "ok");

    const double n = static_cast<double>(report.n_papers);
    report.frac_highly_atypical = n_ha / n;
    report.frac_mixed = n_mixed / n;
    report.frac_highly_typical = n_ht / n;
    report.frac_undefined = n_undef / n;

    // Pearson(z_median, D) over papers holding both.
    {
        std::vector<double> zs, ds;
        for (const auto& m : metrics) {
            if (m.z_median && m.d) {
                zs.push_back(*m.z_median);
                ds.push_back(*m.d);
            }
        }
        try {
            report.pearson_z_d = stats::pearson(zs, ds);
            log("pearson_z_d", 0, "ok");
        } catch (const ComputeError& e) {
            report.notes.push_back(std::string("pearson_z_d skipped: ") + e.what());
            log("pearson_z_d", 0, e.what());
        }
    }

    // Novelty percentile groups: lowest z_median tail vs highest, compared on
    // the disruptive-citation fraction p_i.
    {
        std::vector<const PaperMetrics*> eligible;
        for (const auto& m : metrics) {
            if (m.z_median && m.p_i) eligible.push_back(&m);
        }
        std::sort(eligible.begin(), eligible.end(), [](const PaperMetrics* a, const PaperMetrics* b) {
            if (*a->z_median != *b->z_median) return *a->z_median < *b->z_median;
            return a->paper < b->paper;
        });
        const auto size = static_cast<std::int64_t>(
            static_cast<double>(eligible.size()) * config.novelty_group_cut / 100.0);
        if (size >= 2) {
            std::vector<double> novel, conventional;
            for (std::int64_t i = 0; i < size; ++i) {
                novel.push_back(*eligible[static_cast<std::size_t>(i)]->p_i);
                conventional.push_back(
                    *eligible[eligible.size() - 1 - static_cast<std::size_t>(i)]->p_i);
            }
            auto mean = [](const std::vector<double>& v) {
                double s = 0.0;
                for (const double x : v) s += x;
                return s / static_cast<double>(v.size());
            };
            report.novel_group = {size, mean(novel)};
            report.conventional_group = {size, mean(conventional)};
            try {
                report.novelty_welch_t = stats::welch_t(novel, conventional);
                log("novelty_welch_t", 0, "ok");
            } catch (const ComputeError& e) {
                report.notes.push_back(std::string("novelty_welch_t skipped: ") + e.what());
                log("novelty_welch_t", 0, e.what());
            }
        } else {
            report.notes.push_back("novelty groups skipped: fewer than 2 papers per group");
        }
    }

    // Top vs bottom D-score groups, compared on their z distributions.
    {
        std::vector<const PaperMetrics*> eligible;
        for (const auto& m : metrics) {
            if (m.d && m.z_median && m.z_min) eligible.push_back(&m);
        }
        std::sort(eligible.begin(), eligible.end(), [](const PaperMetrics* a, const PaperMetrics* b) {
            if (*a->d != *b->d) return *a->d > *b->d;
            return a->paper < b->paper;
        });
        const auto size = static_cast<std::int64_t>(
            static_cast<double>(eligible.size()) * config.d_group_cut / 100.0);
        report.d_group_size = size;
        if (size >= 1) {
            std::vector<double> top_med, bot_med, top_min, bot_min;
            for (std::int64_t i = 0; i < size; ++i) {
                const auto* hi = eligible[static_cast<std::size_t>(i)];
                const auto* lo = eligible[eligible.size() - 1 - static_cast<std::size_t>(i)];
                top_med.push_back(*hi->z_median);
                bot_med.push_back(*lo->z_median);
                top_min.push_back(*hi->z_min);
                bot_min.push_back(*lo->z_min);
            }
            report.ks_z_median = stats::ks_statistic(top_med, bot_med);
            report.ks_z_min = stats::ks_statistic(top_min, bot_min);
            log("ks_d_groups", 0, "ok");
        } else {
            report.notes.push_back("D-score groups skipped: empty percentile groups");
        }
    }

    // Sleeping-beauty medians per novelty decile.
    {
        std::vector<const PaperMetrics*> ranked;
        for (const auto& m : metrics) {
            if (m.z_median) ranked.push_back(&m);
        }
        std::sort(ranked.begin(), ranked.end(), [](const PaperMetrics* a, const PaperMetrics* b) {
            if (*a->z_median != *b->z_median) return *a->z_median < *b->z_median;
            return a->paper < b->paper;
        });
        if (!ranked.empty()) {
            std::vector<std::pair<std::int32_t, double>> first =
                sbi_windowed(citation_series(corpus, ranked.front()->paper, corpus.max_year()),
                             config.sbi_window);
            report.sbi_ages.reserve(first.size());
            for (const auto& [age, b] : first) report.sbi_ages.push_back(age);
            std::vector<std::vector<std::vector<double>>> cells(
                10, std::vector<std::vector<double>>(report.sbi_ages.size()));
            for (std::size_t r = 0; r < ranked.size(); ++r) {
                const std::size_t decile = std::min<std::size_t>(9, r * 10 / ranked.size());
                const auto points = sbi_windowed(
                    citation_series(corpus, ranked[r]->paper, corpus.max_year()),
                    config.sbi_window);
                for (std::size_t a = 0; a < points.size() && a < report.sbi_ages.size(); ++a) {
                    cells[decile][a].push_back(points[a].second);
                }
            }
            report.sbi_decile_median.assign(
                10, std::vector<std::optional<double>>(report.sbi_ages.size()));
            for (std::size_t d = 0; d < 10; ++d) {
                for (std::size_t a = 0; a < report.sbi_ages.size(); ++a) {
                    report.sbi_decile_median[d][a] = median_of(cells[d][a]);
                }
            }
            log("sbi_decile_medians", 0, "ok");
        } else {
            report.notes.push_back("sbi deciles skipped: no paper has a defined z_median");
        }
    }

    // Optional per-field stratification.
    {
        std::map<std::string, std::vector<const PaperMetrics*>> by_field;
        for (std::size_t i = 0; i < metrics.size(); ++i) {
            const PaperIndex p = metrics[i].paper;
            if (corpus.has_field_label(p)) by_field[corpus.field_label(p)].push_back(&metrics[i]);
        }
        for (const auto& [field, rows] : by_field) {
            FieldRow row;
            row.field = field;
            row.n = static_cast<std::int64_t>(rows.size());
            double pi_sum = 0.0;
            std::int64_t pi_n = 0, ha = 0;
            for (const auto* m : rows) {
                if (m->p_i) {
                    pi_sum += *m->p_i;
                    ++pi_n;
                }
                if (m->cls == NoveltyClass::HighlyAtypical) ++ha;
            }
            if (pi_n > 0) row.mean_p_i = pi_sum / static_cast<double>(pi_n);
            row.frac_highly_atypical = static_cast<double>(ha) / static_cast<double>(rows.size());
            report.field_table.push_back(row);
        }
    }

    return report;
}

void CohortReport::write_summary(std::ostream& out) const {
    out << "cohort_year=" << cohort_year << '\n'
        << "n_papers=" << n_papers << '\n'
        << "n_scored=" << n_scored << '\n'
        << "pearson_z_d=" << fmt_opt(pearson_z_d) << '\n'
        << "frac_highly_atypical=" << fmt_g(frac_highly_atypical) << '\n'
        << "frac_mixed=" << fmt_g(frac_mixed) << '\n'
        << "frac_highly_typical=" << fmt_g(frac_highly_typical) << '\n'
        << "frac_undefined=" << fmt_g(frac_undefined) << '\n'
        << "novel_group_n=" << novel_group.n << '\n'
        << "novel_group_mean_pi=" << (novel_group.n ? fmt_g(novel_group.mean) : "NA") << '\n'
        << "conventional_group_n=" << conventional_group.n << '\n'
        << "conventional_group_mean_pi="
        << (conventional_group.n ? fmt_g(conventional_group.mean) : "NA") << '\n'
        << "novelty_welch_t=" << fmt_opt(novelty_welch_t) << '\n'
        << "d_group_size=" << d_group_size << '\n'
        << "ks_z_median=" << fmt_opt(ks_z_median) << '\n'
        << "ks_z_min=" << fmt_opt(ks_z_min) << '\n';
    for (const auto& row : field_table) {
        out << "field." << row.field << ".n=" << row.n << '\n'
            << "field." << row.field << ".mean_pi=" << fmt_opt(row.mean_p_i) << '\n'
            << "field." << row.field << ".frac_highly_atypical=" << fmt_g(row.frac_highly_atypical)
            << '\n';
    }
    for (const auto& note : notes) out << "note=" << note << '\n';
    for (const auto& entry : audit) {
        out << "audit=" << entry.operation << ",cohort=" << entry.cohort_year << ",inputs="
            << hex64(entry.inputs_digest) << ",seed=" << entry.seed << ",status=" << entry.status
            << '\n';
    }
}

std::string CohortReport::to_json() const {
    nlohmann::json j;
    j["cohort_year"] = cohort_year;
    j["n_papers"] = n_papers;
    j["n_scored"] = n_scored;
    auto put_opt = [&j](const char* key, const std::optional<double>& v) {
        if (v) j[key] = *v; else j[key] = nullptr;
    };
    put_opt("pearson_z_d", pearson_z_d);
    j["frac_highly_atypical"] = frac_highly_atypical;
    j["frac_mixed"] = frac_mixed;
    j["frac_highly_typical"] = frac_highly_typical;
    j["frac_undefined"] = frac_undefined;
    j["novel_group"] = {{"n", novel_group.n},
                        {"mean_pi", novel_group.n ? nlohmann::json(novel_group.mean)
                                                  : nlohmann::json(nullptr)}};
    j["conventional_group"] = {{"n", conventional_group.n},
                               {"mean_pi", conventional_group.n
                                               ? nlohmann::json(conventional_group.mean)
                                               : nlohmann::json(nullptr)}};
    put_opt("novelty_welch_t", novelty_welch_t);
    j["d_group_size"] = d_group_size;
    put_opt("ks_z_median", ks_z_median);
    put_opt("ks_z_min", ks_z_min);
    j["sbi_ages"] = sbi_ages;
    nlohmann::json deciles = nlohmann::json::array();
    for (const auto& row : sbi_decile_median) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& cell : row) r.push_back(cell ? nlohmann::json(*cell) : nlohmann::json(nullptr));
        deciles.push_back(std::move(r));
    }
    j["sbi_decile_median"] = std::move(deciles);
    nlohmann::json fields = nlohmann::json::array();
    for (const auto& row : field_table) {
        fields.push_back({{"field", row.field},
                          {"n", row.n},
                          {"mean_pi", row.mean_p_i ? nlohmann::json(*row.mean_p_i)
                                                   : nlohmann::json(nullptr)},
                          {"frac_highly_atypical", row.frac_highly_atypical}});
    }
    j["fields"] = std::move(fields);
    j["notes"] = notes;
    nlohmann::json audit_rows = nlohmann::json::array();
    for (const auto& entry : audit) {
        audit_rows.push_back({{"operation", entry.operation},
                              {"cohort_year", entry.cohort_year},
                              {"inputs_digest", hex64(entry.inputs_digest)},
                              {"seed", entry.seed},
                              {"status", entry.status}});
    }
    j["audit"] = std::move(audit_rows);
    return j.dump(2) + "\n";
}

void export_plotdata(const CohortReport& report, std::ostream& out) {
    out << "series\tx\ty\n";
    auto row = [&out](const std::string& series, const std::string& x, const std::string& y) {
        out << series << '\t' << x << '\t' << y << '\n';
    };
    const std::string year = std::to_string(report.cohort_year);
    if (report.pearson_z_d) row("pearson_z_d", year, fmt_g(*report.pearson_z_d));
    row("frac_highly_atypical", year, fmt_g(report.frac_highly_atypical));
    row("frac_mixed", year, fmt_g(report.frac_mixed));
    row("frac_highly_typical", year, fmt_g(report.frac_highly_typical));
    row("frac_undefined", year, fmt_g(report.frac_undefined));
    if (report.novel_group.n) row("novel_group_mean_pi", year, fmt_g(report.novel_group.mean));
    if (report.conventional_group.n) {
        row("conventional_group_mean_pi", year, fmt_g(report.conventional_group.mean));
    }
    if (report.novelty_welch_t) row("novelty_welch_t", year, fmt_g(*report.novelty_welch_t));
    if (report.ks_z_median) row("ks_z_median", year, fmt_g(*report.ks_z_median));
    if (report.ks_z_min) row("ks_z_min", year, fmt_g(*report.ks_z_min));
    for (std::size_t d = 0; d < report.sbi_decile_median.size(); ++d) {
        const std::string series = "NP_decile_" + std::to_string(d + 1);
        for (std::size_t a = 0; a < report.sbi_ages.size(); ++a) {
            const auto& cell = report.sbi_decile_median[d][a];
            if (cell) row(series, std::to_string(report.sbi_ages[a]), fmt_g(*cell));
        }
    }
    if (!out) throw DataError("export_plotdata: write failed");
}

void export_plotdata(const DisruptionSeries& series, std::ostream& out) {
    out << "series\tx\ty\n";
    for (const auto& e : series.entries) {
        if (e.d) out << "D_t\t" << e.year << '\t' << fmt_g(*e.d) << '\n';
    }
    for (const auto& e : series.entries) out << "n_i\t" << e.year << '\t' << e.cum_i << '\n';
    for (const auto& e : series.entries) out << "n_j\t" << e.year << '\t' << e.cum_j << '\n';
    for (const auto& e : series.entries) out << "n_k\t" << e.year << '\t' << e.cum_k << '\n';
    if (!out) throw DataError("export_plotdata: write failed");
}

namespace {

struct StageFailure {
    std::string stage;
    std::int32_t cohort_year;
    int exit_code;
    std::string message;
};

int error_code(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return 1;
    if (dynamic_cast<const DataError*>(&e)) return 2;
    return 3;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open output file " + path.string());
    return out;
}

} // namespace

int run_pipeline(const RunConfig& config, std::ostream& log) {
    config.check();
    namespace fs = std::filesystem;
    const fs::path out_dir(config.out_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw DataError("cannot create out_dir " + out_dir.string());

    CitationCorpus corpus = config.use_synth
        ? generate_synthetic(config.synth, config.seed).corpus
        : ingest_files(config.papers_path, config.citations_path, config.skip_header);
    log << "pipeline: corpus ready, " << corpus.size() << " papers, "
        << corpus.citation_count() << " citations\n";

    std::vector<StageFailure> failures;
    std::vector<AuditEntry> audit;
    const std::uint64_t digest = corpus_digest(corpus);
    auto run_stage = [&](const std::string& stage, std::int32_t year, std::uint64_t seed,
                         auto&& body) {
        try {
            body();
            audit.push_back({stage, year, digest, seed, "ok"});
            log << "pipeline: " << stage << " cohort " << year << " ok\n";
        } catch (const std::exception& e) {
            failures.push_back({stage, year, error_code(e), e.what()});
            audit.push_back({stage, year, digest, seed, e.what()});
            log << "pipeline: " << stage << " cohort " << year << " FAILED: " << e.what() << '\n';
        }
    };

    {
        const CorpusReport vr = validate(corpus);
        auto out = open_out(out_dir / (config.json_reports ? "corpus_report.json"
                                                           : "corpus_report.txt"));
        if (config.json_reports) out << vr.to_json();
        else vr.write_keyvalue(out);
        audit.push_back({"validate", 0, digest, 0, "ok"});
    }

    std::vector<std::int32_t> years = config.cohort_years;
    if (years.empty()) {
        for (std::int32_t y = corpus.min_year(); y <= corpus.max_year(); ++y) {
            if (!corpus.cohort(y).empty()) years.push_back(y);
        }
    }

    for (const std::int32_t year : years) {
        const std::string tag = std::to_string(year);
        const auto cohort = corpus.cohort(year);
        if (cohort.empty()) {
            failures.push_back({"cohort", year, 2, "empty cohort"});
            log << "pipeline: cohort " << year << " FAILED: empty cohort\n";
            continue;
        }
        const std::uint64_t cohort_seed = derive_seed(config.seed, static_cast<std::uint64_t>(year));
        std::optional<PairZTable> ztable;
        std::optional<ContextCorpus> contexts;
        std::optional<EmbeddingModel> model;

        run_stage("dscore", year, 0, [&] {
            auto out = open_out(out_dir / ("dscore_" + tag + ".tsv"));
            for (const PaperIndex p : cohort) {
                const DisruptionResult r = d_score(corpus, p);
                out << corpus.external_id(p) << '\t' << r.n_i << '\t' << r.n_j << '\t' << r.n_k
                    << '\t' << fmt_opt(r.d) << '\n';
            }
        });

        run_stage("zscore", year, cohort_seed, [&] {
            ztable = build_pair_z_table(corpus, year, config.realizations, cohort_seed,
                                        config.swap_factor);
            const PairZTable& table = *ztable;
            {
                auto out = open_out(out_dir / ("zscore_" + tag + ".tsv"));
                for (const PaperIndex p : cohort) {
                    const PaperNovelty nov = paper_novelty(corpus, table, p);
                    out << corpus.external_id(p) << '\t' << fmt_opt(nov.z_median) << '\t'
                        << fmt_opt(nov.z_min) << '\t' << to_string(nov.cls) << '\n';
                }
            }
            {
                auto out = open_out(out_dir / ("pairs_" + tag + ".tsv"));
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
        });

        run_stage("sbi", year, 0, [&] {
            auto out = open_out(out_dir / ("sbi_" + tag + ".tsv"));
            for (const PaperIndex p : cohort) {
                const SbiResult r = sbi(citation_series(corpus, p, corpus.max_year()));
                out << corpus.external_id(p) << '\t' << fmt_g(r.b) << '\t' << r.t_m << '\t'
                    << r.c_tm << '\n';
            }
        });

        SgnsParams embed_params = config.embed;
        embed_params.seed = derive_seed(cohort_seed, 0x454d4244); // "EMBD"
        run_stage("embed", year, embed_params.seed, [&] {
            contexts = build_contexts(corpus, year, embed_params.seed);
            model = train_sgns(*contexts, embed_params);
            auto out = open_out(out_dir / ("vectors_" + tag + ".txt"));
            export_vectors(*model, VectorSet::Averaged, out);
        });

        run_stage("pmi-check", year, embed_params.seed, [&] {
            if (!contexts) contexts = build_contexts(corpus, year, embed_params.seed);
            if (!model) model = train_sgns(*contexts, embed_params);
            const PMITable table = pmi_table(*contexts, embed_params.window, config.min_count);
            const PmiIdentityReport r = validate_pmi_identity(*model, table);
            auto out = open_out(out_dir / ("pmi_check_" + tag + ".txt"));
            out << "pearson=" << fmt_g(r.pearson) << '\n'
                << "slope=" << fmt_g(r.slope) << '\n'
                << "n_pairs=" << r.n_pairs << '\n'
                << "min_count=" << r.min_count << '\n'
                << "shift=" << fmt_g(r.shift) << '\n';
        });

        run_stage("report", year, cohort_seed, [&] {
            const CohortReport report =
                report_cohort(corpus, year, config, ztable ? &*ztable : nullptr);
            {
                auto out = open_out(out_dir / ("report_" + tag +
                                               (config.json_reports ? ".json" : ".txt")));
                if (config.json_reports) out << report.to_json();
                else report.write_summary(out);
            }
            {
                auto out = open_out(out_dir / ("plotdata_" + tag + ".tsv"));
                export_plotdata(report, out);
            }
        });
    }

    {
        auto out = open_out(out_dir / "audit.tsv");
        out << "operation\tcohort_year\tinputs_digest\tseed\tstatus\n";
        for (const auto& entry : audit) {
            out << entry.operation << '\t' << entry.cohort_year << '\t' << hex64(entry.inputs_digest)
                << '\t' << entry.seed << '\t' << entry.status << '\n';
        }
    }

    if (failures.empty()) return 0;
    log << "pipeline: " << failures.size() << " stage(s) failed\n";
    return failures.front().exit_code;
}

} // namespace scimet
