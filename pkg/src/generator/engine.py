"""
Enumeration of L(f, s) with f = prod f_i^{j_i} over a configured box.

Exponent tuples are visited in a reflected Gray order so that consecutive
tuples differ by one factor; representations are kept in a small LRU keyed by
the exponent tuple and extended one factor multiplication at a time.
"""
import logging
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

from ffpoly.polys import ModFrac
from funclib.expressions import ONE, expr_rep, product
from pseudolinear.convergence import DEFAULT_WINDOW_FACTOR, min_shift
from pseudolinear.exceptions import (
    DivergentBellSeries, NoConvergentShift, RepresentationError, SingularConvolution,
)
from pseudolinear.reps import rep_product, rep_reduce, rfraction_family

from .exceptions import GeneratorConsistencyError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeneratedEntry:
    expr: object
    shift: int
    fraction: ModFrac
    score: int

    @property
    def label(self):
        return (self.expr, self.shift)


def gray_walk(ranges):
    """
    Every integer tuple of the box ``ranges`` ((low, high) per axis), each
    differing from its predecessor in exactly one coordinate by one.
    """
    if not ranges:
        yield ()
        return
    (low, high), rest = ranges[0], ranges[1:]
    inner = list(gray_walk(rest))
    for step, j in enumerate(range(low, high + 1)):
        for tail in (inner if step % 2 == 0 else reversed(inner)):
            yield (j, *tail)


class _RepCache:
    """LRU of representations keyed by exponent tuple."""

    def __init__(self, base_reps, p, size):
        self.base_reps = base_reps
        self.p = p
        self.size = max(1, size)
        self.items = OrderedDict()

    def _remember(self, key, rep):
        self.items[key] = rep
        self.items.move_to_end(key)
        while len(self.items) > self.size:
            self.items.popitem(last=False)

    def get(self, exps):
        if exps in self.items:
            self.items.move_to_end(exps)
            return self.items[exps]
        ancestor, best = None, -1
        for key in self.items:
            if all(a <= b for a, b in zip(key, exps)) and sum(key) > best:
                ancestor, best = key, sum(key)
        if ancestor is None:
            ancestor = tuple(0 for _ in exps)
            rep = expr_rep(ONE, self.p)
        else:
            rep = self.items[ancestor]
        for i, (have, want) in enumerate(zip(ancestor, exps)):
            for _ in range(want - have):
                rep = rep_reduce(rep_product(rep, self.base_reps[i]))
        self._remember(exps, rep)
        return rep


def _fraction(rep, shift):
    return rfraction_family(rep).at(shift).normalized()


def enumerate_entries(cfg, p, *, margin=True, cache_size=64, spot_checks=10, seed=0,
                      window_factor=DEFAULT_WINDOW_FACTOR):
    """
    Generate every admissible (f, s) of ``cfg`` with its R-fraction.

    Args:
        cfg: GenConfig
        p: prime modulus
        margin: use the repeated-pole margin for s(f)
        cache_size: LRU capacity for representations
        spot_checks: number of entries re-derived from scratch afterwards
        seed: seed for picking the spot-checked entries

    Returns:
        list[GeneratedEntry]: in deterministic enumeration order

    Raises:
        GeneratorConsistencyError: a spot-checked entry disagrees with its
            from-scratch R-fraction
    """
    base_reps = []
    for factor in cfg.factors:
        try:
            base_reps.append(expr_rep(factor.expr, p))
        except SingularConvolution as exc:
            logger.warning("skipping factor %s: %s", factor.expr, exc)
            base_reps.append(None)

    cache = _RepCache(base_reps, p, cache_size)
    entries = []
    skipped = 0
    for exps in gray_walk([(f.low, f.high) for f in cfg.factors]):
        score = sum(exps)
        if score > cfg.max_score:
            continue
        expr = product(*((f.expr, j) for f, j in zip(cfg.factors, exps)))
        if any(j and rep is None for j, rep in zip(exps, base_reps)):
            skipped += cfg.max_s - cfg.min_s + 1
            continue
        rep = cache.get(exps)
        try:
            base_shift = min_shift(rep, margin=margin, window_factor=window_factor)
        except (NoConvergentShift, RepresentationError) as exc:
            logger.warning("skipping L(%s, s): %s", expr, exc)
            skipped += cfg.max_s - cfg.min_s + 1
            continue
        for k in range(cfg.min_s, cfg.max_s + 1):
            shift = base_shift + k
            try:
                fraction = _fraction(rep, shift)
            except DivergentBellSeries as exc:
                logger.warning("skipping L(%s, %d): %s", expr, shift, exc)
                skipped += 1
                continue
            entries.append(GeneratedEntry(expr, shift, fraction, score))

    logger.info("generated %d R-fractions (%d skipped)", len(entries), skipped)
    spot_check(entries, p, spot_checks, seed)
    return entries


def spot_check(entries, p, count=10, seed=0):
    """Recompute up to ``count`` random entries from scratch and compare."""
    if not entries or count <= 0:
        return
    rng = np.random.default_rng(seed)
    picks = rng.choice(len(entries), size=min(count, len(entries)), replace=False)
    for index in sorted(int(i) for i in picks):
        entry = entries[index]
        fresh = _fraction(expr_rep(entry.expr, p), entry.shift)
        if fresh != entry.fraction:
            raise GeneratorConsistencyError(
                f"L({entry.expr}, {entry.shift}): incremental {entry.fraction!r} != fresh {fresh!r}"
            )


def zeta_anchors(entries, p):
    """
    Entries L(1, t) = ζ(t) for 2 <= t <= D, D being the largest numerator or
    denominator degree among ``entries``; shifts already generated for 𝟙 are
    left out.
    """
    top = max((entry.fraction.max_degree() for entry in entries), default=0)
    present = {entry.shift for entry in entries if entry.expr == ONE}
    rep = expr_rep(ONE, p)
    return [
        GeneratedEntry(ONE, t, _fraction(rep, t), 0)
        for t in range(2, top + 1) if t not in present
    ]
