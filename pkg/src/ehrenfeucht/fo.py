"""First-order formulas: AST, quantifier rank, evaluation, canonical rank-n
descriptions, and distinguishing-sentence synthesis."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .structures import Structure, check_signatures


class FormulaError(Exception):
    pass


class Formula:
    """Base class; concrete nodes are frozen dataclasses below."""


@dataclass(frozen=True)
class Rel(Formula):
    rel: str
    args: tuple[str, ...]


@dataclass(frozen=True)
class Eq(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    parts: tuple[Formula, ...]


@dataclass(frozen=True)
class Or(Formula):
    parts: tuple[Formula, ...]


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


TRUE = And(())   # empty conjunction
FALSE = Or(())   # empty disjunction


def quantifier_rank(f: Formula) -> int:
    if isinstance(f, (Rel, Eq)):
        return 0
    if isinstance(f, Not):
        return quantifier_rank(f.sub)
    if isinstance(f, (And, Or)):
        return max((quantifier_rank(p) for p in f.parts), default=0)
    if isinstance(f, (Exists, Forall)):
        return 1 + quantifier_rank(f.body)
    raise FormulaError(f"unknown formula node {f!r}")


def free_variables(f: Formula) -> frozenset[str]:
    if isinstance(f, Rel):
        return frozenset(f.args)
    if isinstance(f, Eq):
        return frozenset((f.left, f.right))
    if isinstance(f, Not):
        return free_variables(f.sub)
    if isinstance(f, (And, Or)):
        return frozenset().union(*(free_variables(p) for p in f.parts))
    if isinstance(f, (Exists, Forall)):
        return free_variables(f.body) - {f.var}
    raise FormulaError(f"unknown formula node {f!r}")


def evaluate(s: Structure, f: Formula, env: Mapping[str, int] | None = None) -> bool:
    """Tarskian truth value of f in s under env; quantifiers range over the universe."""
    env = dict(env or {})
    rel_names = set(s.sig.names())

    def go(f: Formula, env: dict[str, int]) -> bool:
        if isinstance(f, Rel):
            if f.rel not in rel_names:
                raise FormulaError(f"relation symbol {f.rel!r} not in signature")
            try:
                tup = tuple(env[v] for v in f.args)
            except KeyError as e:
                raise FormulaError(f"unbound variable {e.args[0]!r}") from None
            return tup in s.tables[f.rel]
        if isinstance(f, Eq):
            try:
                return env[f.left] == env[f.right]
            except KeyError as e:
                raise FormulaError(f"unbound variable {e.args[0]!r}") from None
        if isinstance(f, Not):
            return not go(f.sub, env)
        if isinstance(f, And):
            return all(go(p, env) for p in f.parts)
        if isinstance(f, Or):
            return any(go(p, env) for p in f.parts)
        if isinstance(f, Exists):
            return any(go(f.body, {**env, f.var: e}) for e in s.elements())
        if isinstance(f, Forall):
            return all(go(f.body, {**env, f.var: e}) for e in s.elements())
        raise FormulaError(f"unknown formula node {f!r}")

    return go(f, env)


def to_text(f: Formula) -> str:
    """Prefix S-expression form, byte-stable for golden tests."""
    if isinstance(f, Rel):
        return "(rel " + " ".join((f.rel,) + f.args) + ")"
    if isinstance(f, Eq):
        return f"(= {f.left} {f.right})"
    if isinstance(f, Not):
        return f"(not {to_text(f.sub)})"
    if isinstance(f, And):
        return "(and" + "".join(" " + to_text(p) for p in f.parts) + ")"
    if isinstance(f, Or):
        return "(or" + "".join(" " + to_text(p) for p in f.parts) + ")"
    if isinstance(f, Exists):
        return f"(exists {f.var} {to_text(f.body)})"
    if isinstance(f, Forall):
        return f"(forall {f.var} {to_text(f.body)})"
    raise FormulaError(f"unknown formula node {f!r}")


def _dedup(parts: Iterable[Formula]) -> tuple[Formula, ...]:
    # structural dedup keeping first occurrence; frozen dataclasses hash structurally
    return tuple(dict.fromkeys(parts))


def conjunction(parts: Iterable[Formula]) -> Formula:
    parts = _dedup(parts)
    return parts[0] if len(parts) == 1 else And(parts)


def disjunction(parts: Iterable[Formula]) -> Formula:
    parts = _dedup(parts)
    return parts[0] if len(parts) == 1 else Or(parts)


def hintikka_formula(s: Structure, tup: Iterable[int], n: int) -> Formula:
    """The canonical rank-n description of tup in s, with free variables x1..x|tup|.

    Satisfaction of the result by an equal-signature structure and tuple is
    equivalent to depth-n back-and-forth extendability of the tuple-to-tuple map.
    """
    tup = tuple(tup)
    for e in tup:
        if not 0 <= e < s.size:
            raise FormulaError(f"element id {e} out of range")
    memo: dict[tuple[tuple[int, ...], int], Formula] = {}

    def build(tup: tuple[int, ...], n: int) -> Formula:
        key = (tup, n)
        if key in memo:
            return memo[key]
        k = len(tup)
        xs = [f"x{i + 1}" for i in range(k)]
        if n == 0:
            parts: list[Formula] = []
            for i in range(k):
                for j in range(i + 1, k):
                    atom: Formula = Eq(xs[i], xs[j])
                    parts.append(atom if tup[i] == tup[j] else Not(atom))
            for rel, arity in s.sig.relations:
                table = s.tables[rel]
                for idxs in itertools.product(range(k), repeat=arity):
                    atom = Rel(rel, tuple(xs[i] for i in idxs))
                    parts.append(atom if tuple(tup[i] for i in idxs) in table else Not(atom))
            result = conjunction(parts)
        else:
            var = f"x{k + 1}"
            children = _dedup(build(tup + (a,), n - 1) for a in s.elements())
            parts = [Exists(var, c) for c in children]
            parts.append(Forall(var, disjunction(children)))
            result = conjunction(parts)
        memo[key] = result
        return result

    return build(tup, n)


def distinguishing_sentence(a: Structure, b: Structure, n: int) -> Optional[Formula]:
    """A sentence of quantifier rank <= n true in a and false in b, or None if the
    structures cannot be told apart at depth n."""
    from .backforth import n_equivalent

    check_signatures(a, b)
    for m in range(n + 1):
        if not n_equivalent(a, b, m):
            return hintikka_formula(a, (), m)
    return None
