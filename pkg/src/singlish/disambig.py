"""Context-aware sentence disambiguation.

Per-token candidate retrieval builds a lattice: unambiguous tokens resolve
immediately (lexicon hit, rule transliteration, or verbatim fail-open) and
ambiguous tokens become masked slots holding their candidate sets.  Masked
slots are filled by scoring every assignment with a contextual scorer and
keeping the argmax; mask-heavy sentences are solved in overlapping segments
left to right so enumeration stays bounded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

from .errors import ExplosionLimitExceeded, IncompleteAssignment, UnmappedSequence
from .reverse import transliterate_rule_based
from .rules import RuleSet
from .script import SinhalaWord

EXPLOSION_LIMIT = 4096


class Provenance(Enum):
    LEXICON = "lexicon"
    RULE = "rule"
    VERBATIM = "verbatim"


@dataclass(frozen=True)
class ResolvedSlot:
    word: str
    provenance: Provenance = Provenance.LEXICON


@dataclass(frozen=True)
class MaskedSlot:
    """Frequency-ranked candidates for one ambiguous token."""

    candidates: tuple  # ((surface, frequency), ...)
    origin: str
    provenance: Provenance = Provenance.LEXICON

    def __post_init__(self):
        if len(self.candidates) < 2:
            raise ValueError("a masked slot needs at least two candidates")

    @property
    def surfaces(self) -> tuple:
        return tuple(surface for surface, _ in self.candidates)


Slot = Union[ResolvedSlot, MaskedSlot]


@dataclass(frozen=True)
class CandidateLattice:
    slots: tuple

    def mask_indices(self) -> list[int]:
        return [i for i, s in enumerate(self.slots) if isinstance(s, MaskedSlot)]

    def enumeration_size(self) -> int:
        size = 1
        for i in self.mask_indices():
            size *= len(self.slots[i].candidates)
        return size


def build_lattice(tokens: Sequence[str], trie, rules: RuleSet) -> CandidateLattice:
    """One slot per token.  Lexicon hits resolve or mask depending on how
    many candidates they carry; misses fall back to rule transliteration;
    rule failures pass the token through verbatim.  Nothing raises."""
    slots: list[Slot] = []
    for token in tokens:
        entry = trie.lookup(token)
        if entry is not None:
            if len(entry.candidates) == 1:
                slots.append(ResolvedSlot(entry.candidates[0][0], Provenance.LEXICON))
            else:
                slots.append(MaskedSlot(tuple(entry.candidates), token))
            continue
        try:
            slots.append(ResolvedSlot(transliterate_rule_based(token, rules), Provenance.RULE))
        except UnmappedSequence:
            slots.append(ResolvedSlot(token, Provenance.VERBATIM))
    return CandidateLattice(tuple(slots))


def prune_candidates(
    lattice: CandidateLattice, scorer, max_per_mask: int
) -> CandidateLattice:
    """Drop candidates the scorer has never seen; a slot left empty resolves
    to its original top-frequency candidate, a slot left with one survivor
    resolves to that survivor; longer lists truncate to ``max_per_mask``."""
    slots: list[Slot] = []
    for slot in lattice.slots:
        if not isinstance(slot, MaskedSlot):
            slots.append(slot)
            continue
        surviving = [c for c in slot.candidates if c[0] in scorer.vocabulary][:max_per_mask]
        if not surviving:
            slots.append(ResolvedSlot(slot.candidates[0][0], slot.provenance))
        elif len(surviving) == 1:
            slots.append(ResolvedSlot(surviving[0][0], slot.provenance))
        else:
            slots.append(MaskedSlot(tuple(surviving), slot.origin, slot.provenance))
    return CandidateLattice(tuple(slots))


class _CountingScorer:
    def __init__(self, inner):
        self.inner = inner
        self.calls = 0

    @property
    def vocabulary(self):
        return self.inner.vocabulary

    def score_word(self, left, word, right):
        self.calls += 1
        return self.inner.score_word(left, word, right)


def score_assignment(
    lattice: CandidateLattice, assignment: Sequence[str], scorer
) -> float:
    """Product over masked positions of each filled word's contextual fit,
    with every other slot fixed by the same assignment."""
    masks = lattice.mask_indices()
    if len(assignment) != len(masks):
        raise IncompleteAssignment(
            f"assignment covers {len(assignment)} of {len(masks)} masks"
        )
    filled: list[str] = []
    by_mask = dict(zip(masks, assignment))
    for i, slot in enumerate(lattice.slots):
        filled.append(by_mask[i] if i in by_mask else slot.word)
    score = 1.0
    for i in masks:
        score *= scorer.score_word(filled[:i], filled[i], filled[i + 1 : i + 2])
    return score


@dataclass(frozen=True)
class DisambigResult:
    sentence: tuple
    score: float
    scorer_calls: int = 0

    def __iter__(self):
        return iter(([SinhalaWord(w) if not isinstance(w, SinhalaWord) else w
                      for w in self.sentence], self.score))


def disambiguate_exhaustive(
    lattice: CandidateLattice, scorer, explosion_limit: int = EXPLOSION_LIMIT
) -> DisambigResult:
    """Argmax over every assignment.  Candidates enumerate frequency-first,
    and a strictly-better rule keeps the earliest winner, so ties resolve to
    the higher-frequency earlier-slot choice deterministically."""
    masks = lattice.mask_indices()
    size = lattice.enumeration_size()
    if size > explosion_limit:
        raise ExplosionLimitExceeded(size, explosion_limit)
    counting = _CountingScorer(scorer)
    if not masks:
        sentence = tuple(slot.word for slot in lattice.slots)
        return DisambigResult(sentence, 1.0, 0)
    best: Optional[tuple] = None
    best_score = 0.0
    for combo in itertools.product(*(lattice.slots[i].surfaces for i in masks)):
        score = score_assignment(lattice, combo, counting)
        if best is None or score > best_score:
            best = combo
            best_score = score
    by_mask = dict(zip(masks, best))
    sentence = tuple(
        by_mask[i] if i in by_mask else slot.word
        for i, slot in enumerate(lattice.slots)
    )
    return DisambigResult(sentence, best_score, counting.calls)


@dataclass(frozen=True)
class Segment:
    start: int
    end: int
    masks: tuple


@dataclass(frozen=True)
class ChunkPlan:
    segments: tuple
    max_masks_per_chunk: int = 2
    context_overlap: int = 3


def plan_chunks(
    lattice: CandidateLattice,
    max_masks_per_chunk: int = 2,
    context_overlap: int = 3,
) -> ChunkPlan:
    """Single whole-sentence segment below three masks; otherwise groups of
    at most ``max_masks_per_chunk`` masks whose windows stop short of the
    next group's first mask and reach back ``context_overlap`` resolved
    tokens when available."""
    masks = lattice.mask_indices()
    if not masks:
        raise ValueError("lattice has no masked slots to plan for")
    n = len(lattice.slots)
    if len(masks) < 3:
        return ChunkPlan(
            (Segment(0, n, tuple(masks)),), max_masks_per_chunk, context_overlap
        )
    groups = [
        tuple(masks[i : i + max_masks_per_chunk])
        for i in range(0, len(masks), max_masks_per_chunk)
    ]
    segments: list[Segment] = []
    prev_end = 0
    for gi, group in enumerate(groups):
        if gi == 0:
            start = max(0, group[0] - context_overlap)
        else:
            start = max(groups[gi - 1][-1] + 1, prev_end - context_overlap)
        if gi + 1 < len(groups):
            end = min(group[-1] + 1 + context_overlap, groups[gi + 1][0])
        else:
            end = min(group[-1] + 1 + context_overlap, n)
        segments.append(Segment(start, end, group))
        prev_end = end
    return ChunkPlan(tuple(segments), max_masks_per_chunk, context_overlap)


def disambiguate_chunked(
    lattice: CandidateLattice, scorer, plan: Optional[ChunkPlan] = None
) -> DisambigResult:
    """Resolve segments left to right, substituting earlier winners into the
    overlap context; the final score is the product of segment scores."""
    if plan is None:
        plan = plan_chunks(lattice) if lattice.mask_indices() else ChunkPlan((), 2, 3)
    counting = _CountingScorer(scorer)
    slots = list(lattice.slots)
    total_score = 1.0
    for seg in plan.segments:
        window = CandidateLattice(tuple(slots[seg.start : seg.end]))
        result = disambiguate_exhaustive(window, counting, explosion_limit=2**31)
        total_score *= result.score
        for offset, word in enumerate(result.sentence):
            index = seg.start + offset
            if isinstance(slots[index], MaskedSlot):
                slots[index] = ResolvedSlot(word, slots[index].provenance)
    sentence = tuple(slot.word for slot in slots)
    return DisambigResult(sentence, total_score, counting.calls)
