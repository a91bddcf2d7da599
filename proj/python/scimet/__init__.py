"""Citation-graph analytics: disruption, atypicality, delayed recognition."""

import json as _json

from ._core import (
    ComputeError,
    ConfigError,
    Corpus,
    DataError,
    d_score,
    d_series,
    ingest,
    pair_z_table,
    pmi_check,
    sbi,
    sbi_windowed,
    stats,
    synthesize,
    train_embedding,
    validate,
    zscores,
)
from ._core import report_cohort_json as _report_cohort_json

__all__ = [
    "ComputeError",
    "ConfigError",
    "Corpus",
    "DataError",
    "d_score",
    "d_series",
    "ingest",
    "pair_z_table",
    "pmi_check",
    "report_cohort",
    "sbi",
    "sbi_windowed",
    "stats",
    "synthesize",
    "train_embedding",
    "validate",
    "zscores",
]


def report_cohort(corpus, year, **kwargs):
    """Cohort summary as a dict; see the CLI `report` subcommand for fields."""
    return _json.loads(_report_cohort_json(corpus, year, **kwargs))
