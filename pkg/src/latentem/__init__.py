"""Latent, co-latent and network EM clustering of contingency tables.

Importing this package registers every fitter implementation.
"""

import colatent_em  # noqa: F401
import latent_em  # noqa: F401
import network_em  # noqa: F401
from em_model import FitterOptions, available_fitters, get_fitter
from latentem.config import Command, InputFormat, RunConfig
from latentem.persistence import load_model, save_model
from latentem.pipeline import FitReport, PipelineError, inspect, inspect_table, load_table, run
from latentem.text import AlphabetPolicy, bigram_table, ingest_text

__all__ = [
    "AlphabetPolicy",
    "Command",
    "FitReport",
    "FitterOptions",
    "InputFormat",
    "PipelineError",
    "RunConfig",
    "available_fitters",
    "bigram_table",
    "get_fitter",
    "ingest_text",
    "inspect",
    "inspect_table",
    "load_model",
    "load_table",
    "run",
    "save_model",
]
