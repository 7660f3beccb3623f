"""Inference of single occurrence regular expressions with interleaving."""

from .regex import (Alphabet, Regex, RegexSyntaxError, Symbol, equivalent_modulo_order,
                    is_soire, matches, parse, shuffle, simplify, to_text)
from .soa import SampleSet, Soa, build_soa
from .inference import clique_removal, constraint_graph, cs, merge, por, soa2soire, isoire
from .metrics import (MetricsReport, StateLimitExceeded, count_words, datacost, ell_max,
                      evaluate, language_size, len_metric, nd)
from .ingest import (DBLP_ABBREVIATIONS, ElementSampleTable, XmlSyntaxError, extract_samples,
                     read_samples)

__all__ = [
    "Alphabet", "Regex", "RegexSyntaxError", "Symbol", "equivalent_modulo_order", "is_soire",
    "matches", "parse", "shuffle", "simplify", "to_text", "SampleSet", "Soa", "build_soa",
    "clique_removal", "constraint_graph", "cs", "merge", "por", "soa2soire", "isoire",
    "MetricsReport", "StateLimitExceeded", "count_words", "datacost", "ell_max", "evaluate",
    "language_size", "len_metric", "nd", "DBLP_ABBREVIATIONS", "ElementSampleTable",
    "XmlSyntaxError", "extract_samples", "read_samples",
]
