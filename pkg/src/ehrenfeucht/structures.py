"""Finite relational structures: signatures, parsing, substructures, partial isomorphisms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping


class StructureError(Exception):
    """Base class for structure-related errors."""


class ParseError(StructureError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class SignatureMismatchError(StructureError):
    """The two structures do not share the same signature."""


@dataclass(frozen=True)
class Signature:
    """An ordered list of (relation name, arity) pairs."""

    relations: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [name for name, _ in self.relations]
        if len(set(names)) != len(names):
            raise StructureError("duplicate relation name in signature")
        for name, arity in self.relations:
            if arity < 1:
                raise StructureError(f"relation {name!r} has arity {arity}; arity must be >= 1")

    def arity(self, name: str) -> int:
        for rel, arity in self.relations:
            if rel == name:
                return arity
        raise KeyError(name)

    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.relations)


@dataclass(frozen=True)
class Structure:
    """A finite universe 0..size-1 with one tuple table per relation symbol."""

    name: str
    sig: Signature
    size: int
    tables: Mapping[str, frozenset[tuple[int, ...]]]

    def __post_init__(self):
        if self.size < 1:
            raise StructureError("empty universe; size must be >= 1")
        if set(self.tables) != set(self.sig.names()):
            raise StructureError("tables do not match the signature's relation names")
        for rel, arity in self.sig.relations:
            for tup in self.tables[rel]:
                if len(tup) != arity:
                    raise StructureError(
                        f"tuple {tup} in relation {rel!r} has length {len(tup)}, expected arity {arity}"
                    )
                for e in tup:
                    if not 0 <= e < self.size:
                        raise StructureError(f"element id {e} out of range in relation {rel!r}")

    def elements(self) -> range:
        return range(self.size)


@dataclass(frozen=True)
class PartialMap:
    """An ordered list of pick pairs (a, b) between two structures.

    The pair list may violate functionality or injectivity; such maps arise as
    game histories and are simply not partial isomorphisms.
    """

    pairs: tuple[tuple[int, int], ...] = ()

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> "PartialMap":
        return cls(tuple((int(a), int(b)) for a, b in pairs))

    def extend(self, a: int, b: int) -> "PartialMap":
        return PartialMap(self.pairs + ((a, b),))

    def pair_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.pairs)

    def domain(self) -> set[int]:
        return {a for a, _ in self.pairs}

    def range(self) -> set[int]:
        return {b for _, b in self.pairs}

    def inverse(self) -> "PartialMap":
        return PartialMap(tuple((b, a) for a, b in self.pairs))

    def prefix(self, k: int) -> "PartialMap":
        return PartialMap(self.pairs[:k])

    def is_function_and_injective(self) -> bool:
        seen = self.pair_set()
        forward = {}
        backward = {}
        for a, b in seen:
            if forward.setdefault(a, b) != b:
                return False
            if backward.setdefault(b, a) != a:
                return False
        return True

    def __len__(self) -> int:
        return len(self.pairs)


def parse_structure(text: str) -> Structure:
    """Parse the line-based structure file format into a validated Structure."""
    lines = text.splitlines()
    # (line_no, tokens) for non-blank, non-comment lines
    items: list[tuple[int, list[str]]] = []
    for i, raw in enumerate(lines, start=1):
        body = raw.split("#", 1)[0]
        tokens = body.split()
        if tokens:
            items.append((i, tokens))

    pos = 0

    def peek():
        return items[pos] if pos < len(items) else None

    def take():
        nonlocal pos
        item = peek()
        if item is None:
            last = lines and len(lines) or 1
            raise ParseError("unexpected end of input", last)
        pos += 1
        return item

    line_no, tokens = take()
    if tokens[0] != "structure" or len(tokens) != 2:
        raise ParseError("expected 'structure <name>'", line_no)
    name = tokens[1]

    line_no, tokens = take()
    if tokens[0] != "universe" or len(tokens) != 2:
        raise ParseError("expected 'universe <size>'", line_no)
    try:
        size = int(tokens[1])
    except ValueError:
        raise ParseError(f"universe size {tokens[1]!r} is not an integer", line_no) from None
    if size < 1:
        raise ParseError("empty universe; size must be >= 1", line_no)

    relations: list[tuple[str, int]] = []
    tables: dict[str, frozenset[tuple[int, ...]]] = {}
    while peek() is not None:
        line_no, tokens = take()
        if tokens[0] != "relation" or len(tokens) != 3:
            raise ParseError("expected 'relation <name> <arity>'", line_no)
        rel = tokens[1]
        try:
            arity = int(tokens[2])
        except ValueError:
            raise ParseError(f"arity {tokens[2]!r} is not an integer", line_no) from None
        if arity < 1:
            raise ParseError(f"relation {rel!r} has arity {arity}; arity must be >= 1", line_no)
        if rel in tables:
            raise ParseError(f"duplicate relation declaration {rel!r}", line_no)
        tuples: set[tuple[int, ...]] = set()
        while True:
            line_no, tokens = take()
            if tokens == ["end"]:
                break
            try:
                tup = tuple(int(t) for t in tokens)
            except ValueError:
                raise ParseError(f"expected a tuple of element ids or 'end'", line_no) from None
            if len(tup) != arity:
                raise ParseError(
                    f"tuple has {len(tup)} entries, expected arity {arity}", line_no
                )
            for col, e in enumerate(tup, start=1):
                if not 0 <= e < size:
                    raise ParseError(f"element id {e} out of range", line_no, col)
            tuples.add(tup)
        relations.append((rel, arity))
        tables[rel] = frozenset(tuples)

    return Structure(name=name, sig=Signature(tuple(relations)), size=size, tables=tables)


def serialize_structure(s: Structure) -> str:
    """Canonical text form; tuples sorted so output is byte-stable."""
    out = [f"structure {s.name}", f"universe {s.size}"]
    for rel, arity in s.sig.relations:
        out.append(f"relation {rel} {arity}")
        for tup in sorted(s.tables[rel]):
            out.append(" ".join(str(e) for e in tup))
        out.append("end")
    return "\n".join(out) + "\n"


def induced_substructure(s: Structure, elems: Iterable[int]) -> tuple[Structure, dict[int, int]]:
    """Restrict s to elems, renumbered 0..|elems|-1 in ascending original order.

    Returns (substructure, old_id -> new_id).
    """
    kept = sorted(set(elems))
    if not kept:
        raise StructureError("empty element set for induced substructure")
    for e in kept:
        if not 0 <= e < s.size:
            raise StructureError(f"element id {e} out of range")
    renum = {old: new for new, old in enumerate(kept)}
    keep = set(kept)
    tables = {
        rel: frozenset(
            tuple(renum[e] for e in tup)
            for tup in s.tables[rel]
            if all(e in keep for e in tup)
        )
        for rel, _ in s.sig.relations
    }
    sub = Structure(name=s.name, sig=s.sig, size=len(kept), tables=tables)
    return sub, renum


def check_signatures(a: Structure, b: Structure) -> None:
    if a.sig != b.sig:
        raise SignatureMismatchError(
            f"signature mismatch: {a.sig.relations} vs {b.sig.relations}"
        )


def is_partial_isomorphism(a: Structure, b: Structure, m: PartialMap) -> bool:
    """True iff m is functional, injective, and preserves and reflects every relation."""
    check_signatures(a, b)
    for x, y in m.pairs:
        if not 0 <= x < a.size:
            raise StructureError(f"element id {x} out of range for left structure")
        if not 0 <= y < b.size:
            raise StructureError(f"element id {y} out of range for right structure")
    if not m.is_function_and_injective():
        return False
    mapping = dict(m.pairs)
    dom = list(mapping)
    for rel, arity in a.sig.relations:
        ta, tb = a.tables[rel], b.tables[rel]
        for tup in itertools.product(dom, repeat=arity):
            if (tup in ta) != (tuple(mapping[e] for e in tup) in tb):
                return False
    return True
