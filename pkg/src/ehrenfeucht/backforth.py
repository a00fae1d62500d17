"""Static back-and-forth decision: depth-n extendability of partial maps and
n-equivalence of finite structures."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .structures import (
    PartialMap,
    Structure,
    StructureError,
    check_signatures,
    is_partial_isomorphism,
)


@dataclass(frozen=True)
class SigmaQuery:
    a: Structure
    b: Structure
    m: PartialMap
    n: int


class SigmaSolver:
    """Decides depth-n membership for partial maps between two fixed structures.

    Works top-down from the query; memoized on (sorted pair set, n). Pick order
    never affects the answer (asserted against the unmemoized oracle in tests).
    """

    def __init__(self, a: Structure, b: Structure):
        check_signatures(a, b)
        self.a = a
        self.b = b
        self._memo: dict[tuple[tuple[tuple[int, int], ...], int], bool] = {}
        # candidate order for witness search: elements of similar relative position
        # first. Affects running time only, never the result.
        sa, sb = a.size, b.size
        self._b_order = {
            x: sorted(range(sb), key=lambda y: (abs(x * (sb - 1) / max(sa - 1, 1) - y), y))
            for x in range(sa)
        }
        self._a_order = {
            y: sorted(range(sa), key=lambda x: (abs(y * (sa - 1) / max(sb - 1, 1) - x), x))
            for y in range(sb)
        }

    def membership(self, m: PartialMap, n: int) -> bool:
        if n < 0:
            raise ValueError("depth must be nonnegative")
        if not is_partial_isomorphism(self.a, self.b, m):
            return False
        return self._sigma(tuple(sorted(m.pair_set())), n)

    def _extension_ok(self, pairs: tuple[tuple[int, int], ...], x: int, y: int) -> bool:
        # incremental partial-isomorphism check for pairs + (x, y); pairs is
        # already a partial isomorphism and contains neither x nor y
        mapping = dict(pairs)
        mapping[x] = y
        dom = list(mapping)
        for rel, arity in self.a.sig.relations:
            ta, tb = self.a.tables[rel], self.b.tables[rel]
            for tup in _tuples_containing(dom, x, arity):
                if (tup in ta) != (tuple(mapping[e] for e in tup) in tb):
                    return False
        return True

    def _sigma(self, pairs: tuple[tuple[int, int], ...], n: int) -> bool:
        if n == 0:
            return True
        key = (pairs, n)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        result = self._forth(pairs, n) and self._back(pairs, n)
        self._memo[key] = result
        return result

    def _forth(self, pairs: tuple[tuple[int, int], ...], n: int) -> bool:
        dom = {p[0] for p in pairs}
        ran = {p[1] for p in pairs}
        for x in range(self.a.size):
            if x in dom:
                # repeating a pick leaves the pair set unchanged
                if not self._sigma(pairs, n - 1):
                    return False
                continue
            if not any(
                y not in ran
                and self._extension_ok(pairs, x, y)
                and self._sigma(tuple(sorted(pairs + ((x, y),))), n - 1)
                for y in self._b_order[x]
            ):
                return False
        return True

    def _back(self, pairs: tuple[tuple[int, int], ...], n: int) -> bool:
        dom = {p[0] for p in pairs}
        ran = {p[1] for p in pairs}
        for y in range(self.b.size):
            if y in ran:
                if not self._sigma(pairs, n - 1):
                    return False
                continue
            if not any(
                x not in dom
                and self._extension_ok(pairs, x, y)
                and self._sigma(tuple(sorted(pairs + ((x, y),))), n - 1)
                for x in self._a_order[y]
            ):
                return False
        return True


def _tuples_containing(dom: list[int], x: int, arity: int):
    """All arity-tuples over dom that mention x at least once."""
    for positions in itertools.product([0, 1], repeat=arity):
        if not any(positions):
            continue
        pools = [[x] if p else [e for e in dom if e != x] for p in positions]
        yield from itertools.product(*pools)


def sigma_membership(q: SigmaQuery) -> bool:
    """True iff q.m survives q.n rounds of back-and-forth refinement."""
    return SigmaSolver(q.a, q.b).membership(q.m, q.n)


def n_equivalent(a: Structure, b: Structure, n: int) -> bool:
    """True iff the empty map survives n rounds of back-and-forth refinement."""
    return SigmaSolver(a, b).membership(PartialMap(), n)


def separation_level(a: Structure, b: Structure, cap: int) -> Optional[int]:
    """Least n <= cap at which a and b stop being n-equivalent, or None."""
    if cap < 1:
        raise ValueError("cap must be positive")
    solver = SigmaSolver(a, b)
    empty = PartialMap()
    for n in range(1, cap + 1):
        if not solver.membership(empty, n):
            return n
    return None
