#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "scimet/atypicality.hpp"
#include "scimet/corpus.hpp"
#include "scimet/disruption.hpp"
#include "scimet/embedding.hpp"
#include "scimet/errors.hpp"
#include "scimet/recognition.hpp"
#include "scimet/report.hpp"
#include "scimet/stats.hpp"
#include "scimet/synth.hpp"

namespace py = pybind11;
using namespace scimet;

namespace {

SgnsParams make_params(int dim, int negatives, int window, int epochs, double lr_start,
                       double lr_end, std::uint64_t seed, bool deterministic, int threads) {
    SgnsParams p;
    p.dim = dim;
    p.negatives = negatives;
    p.window = window;
    p.epochs = epochs;
    p.lr_start = lr_start;
    p.lr_end = lr_end;
    p.seed = seed;
    p.deterministic = deterministic;
    p.threads = threads;
    return p;
}

py::dict disruption_dict(const CitationCorpus& corpus, const DisruptionResult& r) {
    py::dict d;
    d["paper_id"] = corpus.external_id(r.focal);
    d["horizon_year"] = r.horizon_year;
    d["n_i"] = r.n_i;
    d["n_j"] = r.n_j;
    d["n_k"] = r.n_k;
    d["d"] = r.d ? py::cast(*r.d) : py::none();
    d["p_i"] = r.p_i ? py::cast(*r.p_i) : py::none();
    d["p_j"] = r.p_j ? py::cast(*r.p_j) : py::none();
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "citation-graph analytics: disruption, atypicality, delayed recognition";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<ComputeError>(m, "ComputeError", PyExc_ArithmeticError);

    py::class_<CitationCorpus>(m, "Corpus")
        .def_property_readonly("size", &CitationCorpus::size)
        .def_property_readonly("citation_count", &CitationCorpus::citation_count)
        .def_property_readonly("min_year", &CitationCorpus::min_year)
        .def_property_readonly("max_year", &CitationCorpus::max_year)
        .def("cohort",
             [](const CitationCorpus& c, std::int32_t year) {
                 std::vector<std::int64_t> ids;
                 for (const PaperIndex p : c.cohort(year)) ids.push_back(c.external_id(p));
                 return ids;
             },
             py::arg("year"))
        .def("year",
             [](const CitationCorpus& c, std::int64_t id) { return c.year(c.require(id)); },
             py::arg("paper_id"))
        .def("journal",
             [](const CitationCorpus& c, std::int64_t id) {
                 return c.journal_external(c.journal(c.require(id)));
             },
             py::arg("paper_id"))
        .def("references",
             [](const CitationCorpus& c, std::int64_t id) {
                 std::vector<std::int64_t> ids;
                 for (const PaperIndex t : c.references(c.require(id)))
                     ids.push_back(c.external_id(t));
                 return ids;
             },
             py::arg("paper_id"))
        .def("citers",
             [](const CitationCorpus& c, std::int64_t id) {
                 std::vector<std::int64_t> ids;
                 for (const PaperIndex t : c.citers(c.require(id)))
                     ids.push_back(c.external_id(t));
                 return ids;
             },
             py::arg("paper_id"))
        .def("__eq__",
             [](const CitationCorpus& a, const CitationCorpus& b) { return a == b; },
             py::is_operator());

    m.def("ingest",
          [](const std::string& papers, const std::string& citations, bool header) {
              return ingest_files(papers, citations, header);
          },
          py::arg("papers"), py::arg("citations"), py::arg("header") = false);

    m.def("validate", [](const CitationCorpus& c) {
        const CorpusReport r = validate(c);
        py::dict d;
        d["paper_count"] = r.paper_count;
        d["citation_count"] = r.citation_count;
        d["dangling_references"] = r.dangling_references;
        d["duplicate_citations"] = r.duplicate_citations;
        d["self_citations"] = r.self_citations;
        d["forward_in_time"] = r.forward_in_time;
        py::dict years;
        for (const auto& [year, count] : r.papers_per_year) {
            years[py::int_(year)] = count;
        }
        d["papers_per_year"] = years;
        return d;
    });

    m.def("synthesize",
          [](int journals, int communities, int papers_per_year, int start_year, int years,
             double mean_refs, double frac_bridging, double frac_disruptive, double cocite_prob,
             std::uint64_t seed) {
              SynthSpec spec;
              spec.n_journals = journals;
              spec.n_communities = communities;
              spec.papers_per_year = papers_per_year;
              spec.start_year = start_year;
              spec.n_years = years;
              spec.mean_refs = mean_refs;
              spec.frac_bridging = frac_bridging;
              spec.frac_disruptive = frac_disruptive;
              spec.cocite_prob = cocite_prob;
              SynthResult result = generate_synthetic(spec, seed);
              py::dict labels;
              std::vector<std::int64_t> ids;
              std::vector<bool> bridging, disruptive;
              std::vector<std::int32_t> community;
              for (PaperIndex p = 0; p < result.corpus.size(); ++p) {
                  ids.push_back(result.corpus.external_id(p));
                  bridging.push_back(result.labels.bridging[p] != 0);
                  disruptive.push_back(result.labels.disruptive[p] != 0);
                  community.push_back(result.labels.community[p]);
              }
              labels["paper_ids"] = ids;
              labels["bridging"] = bridging;
              labels["disruptive"] = disruptive;
              labels["community"] = community;
              return py::make_tuple(std::move(result.corpus), labels);
          },
          py::arg("journals") = 50, py::arg("communities") = 2, py::arg("papers_per_year") = 200,
          py::arg("start_year") = 1960, py::arg("years") = 10, py::arg("mean_refs") = 21.0,
          py::arg("frac_bridging") = 0.0, py::arg("frac_disruptive") = 0.0,
          py::arg("cocite_prob") = 0.6, py::arg("seed") = 1);

    m.def("d_score",
          [](const CitationCorpus& c, std::int64_t id, std::optional<std::int32_t> horizon) {
              return disruption_dict(c, d_score(c, c.require(id), horizon));
          },
          py::arg("corpus"), py::arg("paper_id"), py::arg("horizon") = py::none());

    m.def("d_series",
          [](const CitationCorpus& c, std::int64_t id, std::optional<std::int32_t> from_year,
             std::optional<std::int32_t> to_year) {
              const DisruptionSeries s = d_timeseries(c, c.require(id), from_year, to_year);
              py::list rows;
              for (const auto& e : s.entries) {
                  py::dict row;
                  row["year"] = e.year;
                  row["d"] = e.d ? py::cast(*e.d) : py::none();
                  row["cum_i"] = e.cum_i;
                  row["cum_j"] = e.cum_j;
                  row["cum_k"] = e.cum_k;
                  rows.append(std::move(row));
              }
              return rows;
          },
          py::arg("corpus"), py::arg("paper_id"), py::arg("from_year") = py::none(),
          py::arg("to_year") = py::none());

    m.def("zscores",
          [](const CitationCorpus& c, std::int32_t year, int realizations, std::uint64_t seed,
             int swap_factor) {
              const PairZTable table = build_pair_z_table(c, year, realizations, seed, swap_factor);
              py::list rows;
              for (const PaperIndex p : c.cohort(year)) {
                  const PaperNovelty nov = paper_novelty(c, table, p);
                  py::dict row;
                  row["paper_id"] = c.external_id(p);
                  row["z_median"] = nov.z_median ? py::cast(*nov.z_median) : py::none();
                  row["z_min"] = nov.z_min ? py::cast(*nov.z_min) : py::none();
                  row["cls"] = std::string(to_string(nov.cls));
                  rows.append(std::move(row));
              }
              return rows;
          },
          py::arg("corpus"), py::arg("year"), py::arg("realizations") = 10, py::arg("seed") = 1,
          py::arg("swap_factor") = 10);

    m.def("pair_z_table",
          [](const CitationCorpus& c, std::int32_t year, int realizations, std::uint64_t seed,
             int swap_factor) {
              const PairZTable table = build_pair_z_table(c, year, realizations, seed, swap_factor);
              std::vector<PairKey> keys;
              keys.reserve(table.pairs.size());
              for (const auto& [key, v] : table.pairs) keys.push_back(key);
              std::sort(keys.begin(), keys.end());
              py::list rows;
              for (const PairKey key : keys) {
                  const PairZ& v = table.pairs.at(key);
                  py::dict row;
                  row["journal_i"] = c.journal_external(pair_first(key));
                  row["journal_j"] = c.journal_external(pair_second(key));
                  row["obs"] = v.obs;
                  row["exp"] = v.exp;
                  row["sigma"] = v.sigma;
                  row["z"] = v.z ? py::cast(*v.z) : py::none();
                  rows.append(std::move(row));
              }
              return rows;
          },
          py::arg("corpus"), py::arg("year"), py::arg("realizations") = 10, py::arg("seed") = 1,
          py::arg("swap_factor") = 10);

    m.def("sbi",
          [](const CitationCorpus& c, std::int64_t id) {
              const SbiResult r = sbi(citation_series(c, c.require(id), c.max_year()));
              py::dict d;
              d["b"] = r.b;
              d["t_m"] = r.t_m;
              d["c_tm"] = r.c_tm;
              return d;
          },
          py::arg("corpus"), py::arg("paper_id"));

    m.def("sbi_windowed",
          [](const CitationCorpus& c, std::int64_t id, std::int32_t window) {
              return sbi_windowed(citation_series(c, c.require(id), c.max_year()), window);
          },
          py::arg("corpus"), py::arg("paper_id"), py::arg("window") = 2);

    m.def("train_embedding",
          [](const CitationCorpus& c, std::int32_t year, int dim, int negatives, int window,
             int epochs, double lr_start, double lr_end, std::uint64_t seed, bool deterministic,
             int threads) {
              const SgnsParams params = make_params(dim, negatives, window, epochs, lr_start,
                                                    lr_end, seed, deterministic, threads);
              const ContextCorpus contexts = build_contexts(c, year, seed);
              const EmbeddingModel model = train_sgns(contexts, params);
              py::dict d;
              d["journal_ids"] = model.vocab_external;
              auto matrix = [&](const std::vector<float>& flat) {
                  py::list rows;
                  for (std::int32_t v = 0; v < model.vocab_size(); ++v) {
                      std::vector<double> row(static_cast<std::size_t>(model.dim));
                      for (std::int32_t k = 0; k < model.dim; ++k) {
                          row[static_cast<std::size_t>(k)] =
                              flat[static_cast<std::size_t>(v) * model.dim + k];
                      }
                      rows.append(py::cast(row));
                  }
                  return rows;
              };
              d["in_vectors"] = matrix(model.in_vecs);
              d["out_vectors"] = matrix(model.out_vecs);
              d["epoch_loss"] = model.epoch_loss;
              return d;
          },
          py::arg("corpus"), py::arg("year"), py::arg("dim") = 50, py::arg("negatives") = 5,
          py::arg("window") = 10, py::arg("epochs") = 5, py::arg("lr_start") = 0.025,
          py::arg("lr_end") = 1e-4, py::arg("seed") = 1, py::arg("deterministic") = true,
          py::arg("threads") = 1);

    m.def("pmi_check",
          [](const CitationCorpus& c, std::int32_t year, std::int64_t min_count, int dim,
             int negatives, int window, int epochs, double lr_start, double lr_end,
             std::uint64_t seed) {
              const SgnsParams params =
                  make_params(dim, negatives, window, epochs, lr_start, lr_end, seed, true, 1);
              const ContextCorpus contexts = build_contexts(c, year, seed);
              const EmbeddingModel model = train_sgns(contexts, params);
              const PMITable table = pmi_table(contexts, window, min_count);
              const PmiIdentityReport r = validate_pmi_identity(model, table);
              py::dict d;
              d["pearson"] = r.pearson;
              d["slope"] = r.slope;
              d["n_pairs"] = r.n_pairs;
              d["min_count"] = r.min_count;
              d["shift"] = r.shift;
              return d;
          },
          py::arg("corpus"), py::arg("year"), py::arg("min_count") = 10, py::arg("dim") = 50,
          py::arg("negatives") = 5, py::arg("window") = 10, py::arg("epochs") = 5,
          py::arg("lr_start") = 0.025, py::arg("lr_end") = 1e-4, py::arg("seed") = 1);

    m.def("report_cohort_json",
          [](const CitationCorpus& c, std::int32_t year, int realizations, std::uint64_t seed,
             double d_cut, double novelty_cut, std::int32_t sbi_window) {
              RunConfig cfg;
              cfg.realizations = realizations;
              cfg.seed = seed;
              cfg.d_group_cut = d_cut;
              cfg.novelty_group_cut = novelty_cut;
              cfg.sbi_window = sbi_window;
              return report_cohort(c, year, cfg).to_json();
          },
          py::arg("corpus"), py::arg("year"), py::arg("realizations") = 10, py::arg("seed") = 1,
          py::arg("d_cut") = 5.0, py::arg("novelty_cut") = 10.0, py::arg("sbi_window") = 2);

    auto stats_mod = m.def_submodule("stats", "statistical primitives");
    stats_mod.def("percentile",
                  [](std::vector<double> values, double p) {
                      return stats::percentile(std::move(values), p);
                  },
                  py::arg("values"), py::arg("p"));
    stats_mod.def("pearson",
                  [](const std::vector<double>& x, const std::vector<double>& y) {
                      return stats::pearson(x, y);
                  },
                  py::arg("x"), py::arg("y"));
    stats_mod.def("ks_statistic",
                  [](const std::vector<double>& a, const std::vector<double>& b) {
                      return stats::ks_statistic(a, b);
                  },
                  py::arg("a"), py::arg("b"));
    stats_mod.def("ks_p_value_approx", &stats::ks_p_value_approx, py::arg("d"), py::arg("n_a"),
                  py::arg("n_b"));
    stats_mod.def("welch_t",
                  [](const std::vector<double>& a, const std::vector<double>& b) {
                      return stats::welch_t(a, b);
                  },
                  py::arg("a"), py::arg("b"));
    stats_mod.def("welch_df",
                  [](const std::vector<double>& a, const std::vector<double>& b) {
                      return stats::welch_df(a, b);
                  },
                  py::arg("a"), py::arg("b"));
    stats_mod.def("t_p_value_normal_approx", &stats::t_p_value_normal_approx, py::arg("t"));
}
