"""Short killing words and minimum-rank words for matrix monoids with joint spectral radius <= 1."""

from .analysis import (
    JsrVerdict,
    SccDecomposition,
    check_jsr_le_one,
    coreachability_witness,
    coreachable_set,
    mergeability_witness,
    mortality,
    scc_decompose,
)
from .codes import Code, FlowerAutomaton, flower, is_uncompletable, sardinas_patterson, uncompletable_word
from .core import (
    Alphabet,
    InputError,
    MatrixMorphism,
    PreconditionError,
    Relation,
    StateSet,
    SynthesisCertificate,
    evaluate,
    image,
    rank,
)
from .general_synthesis import kill, restrict_block, synthesize
from .generators import primes_family, random_code, random_strongly_connected_ufa, random_ufa
from .sc_synthesis import build_context, extender_word, killing_word, min_rank_word, separator_word

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "Code",
    "FlowerAutomaton",
    "InputError",
    "JsrVerdict",
    "MatrixMorphism",
    "PreconditionError",
    "Relation",
    "SccDecomposition",
    "StateSet",
    "SynthesisCertificate",
    "build_context",
    "check_jsr_le_one",
    "coreachability_witness",
    "coreachable_set",
    "evaluate",
    "extender_word",
    "flower",
    "image",
    "is_uncompletable",
    "kill",
    "killing_word",
    "mergeability_witness",
    "min_rank_word",
    "mortality",
    "primes_family",
    "random_code",
    "random_strongly_connected_ufa",
    "random_ufa",
    "rank",
    "restrict_block",
    "sardinas_patterson",
    "scc_decompose",
    "separator_word",
    "synthesize",
    "uncompletable_word",
]
