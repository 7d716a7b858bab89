from .corpus import bundled_corpus, corpus_outputs, corpus_run, diff_paths, run_file
from .grammar import Command, Job, RingDecl, parse_job, serialize_job
from .main import main
from .runner import combine_exit, dumps, run_job, run_text, strip_timing

__all__ = [
    "Command", "Job", "RingDecl", "bundled_corpus", "combine_exit", "corpus_outputs", "corpus_run",
    "diff_paths", "dumps", "main", "parse_job", "run_file", "run_job", "run_text",
    "serialize_job", "strip_timing",
]
