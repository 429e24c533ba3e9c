"""Random-state generation, batch verification and the command line."""

from .batch import CSV_HEADER, RunRecord, read_results, run_batch, run_sample, summary, write_results
from .generator import GeneratorConfig, random_passive, random_state, sample_rng, sample_seed, sample_state

__all__ = [
    "CSV_HEADER", "GeneratorConfig", "RunRecord", "random_passive", "random_state", "read_results",
    "run_batch", "run_sample", "sample_rng", "sample_seed", "sample_state", "summary", "write_results",
]
