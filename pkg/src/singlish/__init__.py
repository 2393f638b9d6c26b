"""Romanized Sinhala to Sinhala transliteration.

Rule tables handle regular spellings, a trie lexicon of generated ad-hoc
variants absorbs informal ones, skeleton expansion recovers vowel-dropped
shorthand, and n-gram context scores pick between ambiguous readings.
"""

from .config import EngineConfig, load_config
from .engine import Engine, Mode
from .errors import SinglishError
from .lexicon import Lexicon, LexiconEntry, Trie
from .metrics import EvalMode, EvalReport, bleu, cer, evaluate, f1_disambiguation, wer
from .ngram import AlignedCorpus, NgramLM, NgramTagger, load_models, save_models
from .reverse import (
    expand_skeleton,
    resolve_shorthand,
    similarity,
    transliterate_rule_based,
)
from .rules import RuleSet, generate_adhoc_variants, load_rules, romanize_standard
from .script import Grapheme, GraphemeKind, SinhalaWord, join, segment, tokenize

__version__ = "0.1.0"

__all__ = [
    "AlignedCorpus",
    "Engine",
    "EngineConfig",
    "EvalMode",
    "EvalReport",
    "Grapheme",
    "GraphemeKind",
    "Lexicon",
    "LexiconEntry",
    "Mode",
    "NgramLM",
    "NgramTagger",
    "RuleSet",
    "SinglishError",
    "SinhalaWord",
    "Trie",
    "bleu",
    "cer",
    "evaluate",
    "expand_skeleton",
    "f1_disambiguation",
    "generate_adhoc_variants",
    "join",
    "load_config",
    "load_models",
    "load_rules",
    "resolve_shorthand",
    "romanize_standard",
    "save_models",
    "segment",
    "similarity",
    "tokenize",
    "transliterate_rule_based",
    "wer",
]
