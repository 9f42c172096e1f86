"""Exact and heuristic search for low-fip drawings, dimension and bound checks."""
from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .dag import Dag, Reachability, count_incomparable, transitive_closure
from .drawing import TopoOrder
from .errors import DimExceedsMax, ExtensionCapExceeded, MissingDim, TruncatedInput
from .linext import ExtensionSet, enumerate_extensions, order_signs

DEFAULT_MAX_DIM = 6


@dataclass(frozen=True)
class Realizer:
    members: tuple[TopoOrder, ...]

    @property
    def d(self) -> int:
        return len(self.members)

    def is_valid(self, r: Reachability) -> bool:
        """Members agree on a pair exactly when the pair is in the closure."""
        ranks = [m.rank for m in self.members]
        for u in range(r.n):
            for v in range(r.n):
                if u == v:
                    continue
                agree = all(rk[u] < rk[v] for rk in ranks)
                if agree != r.reaches(u, v):
                    return False
        return True


@dataclass(frozen=True)
class BoundCheck:
    inc: int
    min_fip: int
    dim: int
    lemma1_bound: int
    lemma2_bound: int
    fact2: bool
    lemma1: bool
    lemma2: bool

    @property
    def ok(self) -> bool:
        return self.fact2 and self.lemma1 and self.lemma2


@dataclass
class SolveReport:
    graph: Dag
    inc: int
    led: int
    diametral_pair: tuple[TopoOrder, TopoOrder]
    min_fip: int
    method: str
    optimal_pair: Optional[tuple[TopoOrder, TopoOrder]] = None
    dim: Optional[int] = None
    realizer: Optional[Realizer] = None
    extension_count: Optional[int] = None
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def lemma1_bound(self) -> Optional[int]:
        return None if self.dim is None else lemma1_bound(self.inc, self.dim)

    @property
    def lemma2_bound(self) -> Optional[int]:
        return None if self.dim is None else lemma2_bound(self.inc, self.dim)

    def to_dict(self, timings: bool = False) -> dict:
        g = self.graph
        bounds = None
        if self.dim is not None:
            chk = verify_bounds(self)
            bounds = {"fact2": chk.fact2, "lemma1": chk.lemma1, "lemma2": chk.lemma2}
        return {
            "n": g.n,
            "inc": self.inc,
            "led": self.led,
            "min_fip": self.min_fip,
            "dim": self.dim,
            "lemma1_bound": self.lemma1_bound,
            "lemma2_bound": self.lemma2_bound,
            "bounds_satisfied": bounds,
            "method": self.method,
            "extension_count": self.extension_count,
            "diametral_pair": [t.labels(g) for t in self.diametral_pair],
            "realizer": None if self.realizer is None else [t.labels(g) for t in self.realizer.members],
            "timings_ms": (
                {k: round(v * 1000, 3) for k, v in self.timings.items()} if timings else None
            ),
        }

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), indent=2) + "\n"


def lemma1_bound(inc: int, dim: int) -> int:
    return inc - (dim - 2)


def lemma2_bound(inc: int, dim: int) -> int:
    return inc - math.ceil(2 * inc / dim) if dim else inc


def _complete_extensions(r: Reachability, cap: Optional[int]) -> ExtensionSet:
    ext = enumerate_extensions(r, cap)
    if ext.truncated:
        raise ExtensionCapExceeded(f"more than {len(ext)} linear extensions")
    return ext


def led_exact(
    r: Reachability, cap: Optional[int] = None, ext: Optional[ExtensionSet] = None
) -> tuple[int, tuple[TopoOrder, TopoOrder]]:
    """Linear extension diameter with its lexicographically first witness.

    Pairs are scanned as ``(i, j)``, ``i < j`` over the sorted extension list
    and the first pair attaining the maximum is kept. The scan stops as soon
    as every incomparable pair is reversed.
    """
    if ext is None:
        ext = _complete_extensions(r, cap)
    elif ext.truncated:
        raise TruncatedInput("led_exact needs a complete extension set")
    inc = len(r.inc_pairs)
    first = ext[0]
    if len(ext) == 1 or inc == 0:
        return 0, (first, first)
    packed = np.packbits(order_signs(ext, r.inc_pairs), axis=1)
    best, pair = -1, (0, 0)
    for i in range(len(ext) - 1):
        d = np.bitwise_count(packed[i] ^ packed[i + 1:]).sum(axis=1, dtype=np.int64)
        j = int(np.argmax(d))
        if d[j] > best:
            best, pair = int(d[j]), (i, i + 1 + j)
            if best == inc:
                break
    return best, (ext[pair[0]], ext[pair[1]])


def min_fip_direct(
    r: Reachability, ext: ExtensionSet
) -> tuple[int, tuple[TopoOrder, TopoOrder]]:
    """Minimum fip count over all pairs of extensions, counted by dominance."""
    inc_pairs = r.inc_pairs
    if not inc_pairs:
        return 0, (ext[0], ext[0])
    signs = order_signs(ext, inc_pairs)
    best, pair = len(inc_pairs) + 1, (0, 0)
    for i in range(len(ext)):
        # Same relative order on both axes means one vertex dominates the other.
        fips = (signs[i] == signs[i:]).sum(axis=1)
        j = int(np.argmin(fips))
        if fips[j] < best:
            best, pair = int(fips[j]), (i, i + j)
            if best == 0:
                break
    return best, (ext[pair[0]], ext[pair[1]])


def minfip_exact(
    g: Dag,
    cap: Optional[int] = None,
    with_dim: bool = True,
    max_dim: int = DEFAULT_MAX_DIM,
) -> SolveReport:
    """Minimum fip drawing, found by direct search and through ``inc - led``.

    The two results must agree; a mismatch raises ``AssertionError``.
    """
    timings = {}
    t0 = time.perf_counter()
    r = transitive_closure(g)
    inc = count_incomparable(r)
    timings["closure"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    ext = _complete_extensions(r, cap)
    timings["enumerate"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    fip, opt = min_fip_direct(r, ext)
    timings["min_fip"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    led, diam = led_exact(r, ext=ext)
    timings["led"] = time.perf_counter() - t0
    if fip != inc - led:
        raise AssertionError(f"direct min fip {fip} != inc - led = {inc} - {led}")

    report = SolveReport(g, inc, led, diam, fip, "exact", opt, extension_count=len(ext), timings=timings)
    if with_dim:
        t0 = time.perf_counter()
        try:
            report.realizer = find_realizer(r, ext, max_dim)
            report.dim = report.realizer.d
        except DimExceedsMax:
            pass
        timings["dim"] = time.perf_counter() - t0
    return report


def _cover_masks(signs: np.ndarray) -> np.ndarray:
    # Bit 2k: extension reverses pair k (places v before u); bit 2k+1: keeps u first.
    m, p = signs.shape
    bits = np.empty((m, 2 * p), dtype=bool)
    bits[:, 0::2] = ~signs
    bits[:, 1::2] = signs
    words = -(-2 * p // 64)
    padded = np.zeros((m, words * 64), dtype=bool)
    padded[:, : 2 * p] = bits
    packed = np.packbits(padded.reshape(m, words, 64), axis=2, bitorder="little")
    return packed.view(np.uint64).reshape(m, words)


def _set_cover(masks: np.ndarray, full: np.ndarray, depth: int, covers: list[np.ndarray]) -> Optional[list[int]]:
    """Depth-limited exact cover search. Returns chosen row indices or None."""
    failed: set[tuple[bytes, int]] = set()
    order = sorted(range(len(covers)), key=lambda b: len(covers[b]))
    order = [b for b in order if full[b // 64] >> np.uint64(b % 64) & np.uint64(1)]

    def rec(covered: np.ndarray, left: int) -> Optional[list[int]]:
        need = full & ~covered
        if not need.any():
            return []
        if left == 0:
            return None
        key = (covered.tobytes(), left)
        if key in failed:
            return None
        if left == 1:
            hit = np.flatnonzero(((masks & need) == need).all(axis=1))
            return [int(hit[0])] if hit.size else None
        # Branch on the uncovered element with the fewest covering rows.
        for b in order:
            if need[b // 64] >> np.uint64(b % 64) & np.uint64(1):
                break
        for row in covers[b]:
            sub = rec(covered | masks[row], left - 1)
            if sub is not None:
                return [int(row)] + sub
        failed.add(key)
        return None

    return rec(np.zeros_like(full), depth)


def _greedy_cover(masks: np.ndarray, full: np.ndarray) -> list[int]:
    covered = np.zeros_like(full)
    chosen = []
    while (full & ~covered).any():
        gain = np.bitwise_count(masks & ~covered).sum(axis=1)
        row = int(np.argmax(gain))
        chosen.append(row)
        covered |= masks[row]
    return chosen


def find_realizer(r: Reachability, ext: ExtensionSet, max_dim: int = DEFAULT_MAX_DIM) -> Realizer:
    """Smallest realizer drawn from ``ext``, by exact set cover.

    An extension covers the ordered incomparable pair ``(u, v)`` when it
    places ``v`` before ``u``; a realizer must cover every such pair.
    Sizes are tried upward from 2, capped by a greedy cover.
    """
    if ext.truncated:
        raise TruncatedInput("dimension needs a complete extension set")
    if max_dim < 1:
        raise ValueError("max_dim must be positive")
    if not r.inc_pairs:
        return Realizer((ext[0],))
    if max_dim < 2:
        raise DimExceedsMax(max_dim, 2)
    masks = _cover_masks(order_signs(ext, r.inc_pairs))
    nbits = 2 * len(r.inc_pairs)
    full = np.zeros(masks.shape[1], dtype=np.uint64)
    for b in range(nbits):
        full[b // 64] |= np.uint64(1) << np.uint64(b % 64)
    covers = []
    for b in range(nbits):
        col = (masks[:, b // 64] >> np.uint64(b % 64)) & np.uint64(1)
        covers.append(np.flatnonzero(col))
    greedy = _greedy_cover(masks, full)
    for d in range(2, min(len(greedy), max_dim + 1)):
        rows = _set_cover(masks, full, d, covers)
        if rows is not None:
            return Realizer(tuple(ext[i] for i in sorted(rows)))
    if len(greedy) <= max_dim:
        return Realizer(tuple(ext[i] for i in sorted(greedy)))
    raise DimExceedsMax(max_dim, max_dim + 1)


def dimension_exact(r: Reachability, ext: ExtensionSet, max_dim: int = DEFAULT_MAX_DIM) -> int:
    return find_realizer(r, ext, max_dim).d


def verify_bounds(report: SolveReport) -> BoundCheck:
    if report.dim is None:
        raise MissingDim("bound check needs the dimension")
    l1 = lemma1_bound(report.inc, report.dim)
    l2 = lemma2_bound(report.inc, report.dim)
    return BoundCheck(
        inc=report.inc,
        min_fip=report.min_fip,
        dim=report.dim,
        lemma1_bound=l1,
        lemma2_bound=l2,
        fact2=report.min_fip <= report.inc,
        lemma1=report.min_fip <= l1,
        lemma2=report.min_fip <= l2,
    )


# Local search ---------------------------------------------------------------


def random_extension(r: Reachability, rng: random.Random) -> list[int]:
    """Linear extension built by picking a uniformly random minimal element."""
    preds = r.pred_masks
    placed = 0
    out = []
    for _ in range(r.n):
        avail = [v for v in range(r.n) if not placed >> v & 1 and preds[v] & placed == preds[v]]
        v = rng.choice(avail)
        out.append(v)
        placed |= 1 << v
    return out


def hill_climb(r: Reachability, a: list[int], b: list[int]) -> int:
    """Maximise the distance between ``a`` and ``b`` in place.

    A move swaps two adjacent incomparable vertices in one order. Every move
    changes the distance by exactly one, so the steepest improving move is
    the first one found scanning ``a`` then ``b`` left to right.
    Returns the final distance.
    """
    n = r.n
    closure = r.closure
    pos = [[0] * n, [0] * n]
    for i, v in enumerate(a):
        pos[0][v] = i
    for i, v in enumerate(b):
        pos[1][v] = i
    orders = (a, b)
    dist = sum(
        1 for u in range(n) for v in range(u + 1, n) if (pos[0][u] < pos[0][v]) != (pos[1][u] < pos[1][v])
    )
    improved = True
    while improved:
        improved = False
        for side in (0, 1):
            seq, mine, other = orders[side], pos[side], pos[1 - side]
            for k in range(n - 1):
                x, y = seq[k], seq[k + 1]
                if closure[x] >> y & 1:
                    continue
                # x precedes y here; swapping gains iff the other order agrees.
                if other[x] < other[y]:
                    seq[k], seq[k + 1] = y, x
                    mine[x], mine[y] = k + 1, k
                    dist += 1
                    improved = True
                    break
            if improved:
                break
    return dist


def minfip_heuristic(g: Dag, restarts: int = 50, seed: int = 0) -> SolveReport:
    """Hill climbing over pairs of extensions with seeded random restarts.

    Restart ``i`` draws from ``random.Random(seed + i)``, so results do not
    depend on the order restarts are run in. Ties on distance go to the
    lexicographically smallest pair of vertex sequences.
    """
    if restarts < 1:
        raise ValueError("restarts must be positive")
    t0 = time.perf_counter()
    r = transitive_closure(g)
    inc = count_incomparable(r)
    best = None
    for i in range(restarts):
        rng = random.Random(seed + i)
        a = random_extension(r, rng)
        b = random_extension(r, rng)
        d = hill_climb(r, a, b)
        cand = (-d, tuple(a), tuple(b))
        if best is None or cand < best:
            best = cand
    neg, a, b = best
    pair = (TopoOrder(a), TopoOrder(b))
    return SolveReport(
        g, inc, -neg, pair, inc + neg, "heuristic", pair, timings={"search": time.perf_counter() - t0}
    )
