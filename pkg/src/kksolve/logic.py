"""Propositional formulas, evaluation, model enumeration and entailment.

Formulas are immutable trees. ``And``/``Or`` are n-ary; the empty
conjunction is true and the empty disjunction is false.  Models are plain
mappings from atom name to bool.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

Model = Mapping[str, bool]

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class MissingAtom(LookupError):
    """Raised when a formula mentions an atom the model does not assign."""

    def __init__(self, name: str):
        super().__init__(f"model has no assignment for atom {name!r}")
        self.name = name


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not IDENT_RE.match(self.name):
            raise ValueError(f"invalid atom name: {self.name!r}")


@dataclass(frozen=True)
class Not(Formula):
    inner: Formula


@dataclass(frozen=True, init=False)
class And(Formula):
    operands: tuple[Formula, ...]

    def __init__(self, *operands: Formula):
        object.__setattr__(self, "operands", tuple(operands))


@dataclass(frozen=True, init=False)
class Or(Formula):
    operands: tuple[Formula, ...]

    def __init__(self, *operands: Formula):
        object.__setattr__(self, "operands", tuple(operands))


@dataclass(frozen=True)
class Implication(Formula):
    antecedent: Formula
    consequent: Formula


@dataclass(frozen=True)
class Biconditional(Formula):
    left: Formula
    right: Formula


def _walk_atoms(f: Formula) -> Iterator[str]:
    if isinstance(f, Atom):
        yield f.name
    elif isinstance(f, Not):
        yield from _walk_atoms(f.inner)
    elif isinstance(f, (And, Or)):
        for op in f.operands:
            yield from _walk_atoms(op)
    elif isinstance(f, Implication):
        yield from _walk_atoms(f.antecedent)
        yield from _walk_atoms(f.consequent)
    elif isinstance(f, Biconditional):
        yield from _walk_atoms(f.left)
        yield from _walk_atoms(f.right)
    else:
        raise TypeError(f"not a formula: {f!r}")


def atoms_of(f: Formula) -> frozenset[str]:
    """Return the names of all atoms occurring in ``f``."""
    return frozenset(_walk_atoms(f))


def ordered_atoms(f: Formula) -> list[str]:
    """Atom names of ``f`` in order of first occurrence (left to right)."""
    return list(dict.fromkeys(_walk_atoms(f)))


def evaluate(f: Formula, m: Model) -> bool:
    if isinstance(f, Atom):
        try:
            return bool(m[f.name])
        except KeyError:
            raise MissingAtom(f.name) from None
    if isinstance(f, Not):
        return not evaluate(f.inner, m)
    if isinstance(f, And):
        return all(evaluate(op, m) for op in f.operands)
    if isinstance(f, Or):
        return any(evaluate(op, m) for op in f.operands)
    if isinstance(f, Implication):
        return not evaluate(f.antecedent, m) or evaluate(f.consequent, m)
    if isinstance(f, Biconditional):
        return evaluate(f.left, m) == evaluate(f.right, m)
    raise TypeError(f"not a formula: {f!r}")


def enumerate_models(atoms: Sequence[str]) -> Iterator[dict[str, bool]]:
    """Yield all 2**n total models over ``atoms``.

    Order is lexicographic in the given atom order with False before True,
    so the first atom varies slowest.
    """
    atoms = list(atoms)
    if len(set(atoms)) != len(atoms):
        raise ValueError("atoms must be distinct")
    for values in itertools.product((False, True), repeat=len(atoms)):
        yield dict(zip(atoms, values))


def _universe(formulas: Iterable[Formula], order: Sequence[str] | None) -> list[str]:
    needed: dict[str, None] = {}
    for f in formulas:
        needed.update(dict.fromkeys(_walk_atoms(f)))
    if order is None:
        return list(needed)
    universe = list(dict.fromkeys(order))
    seen = set(universe)
    universe.extend(a for a in needed if a not in seen)
    return universe


def satisfying_models(kb: Formula, order: Sequence[str] | None = None) -> list[dict[str, bool]]:
    """All models of ``kb`` in enumeration order.

    The universe is ``order`` (if given) extended by any atom of ``kb`` it
    lacks; by default it is the atoms of ``kb`` in first-occurrence order.
    """
    universe = _universe([kb], order)
    return [m for m in enumerate_models(universe) if evaluate(kb, m)]


def entails(kb: Formula, query: Formula, order: Sequence[str] | None = None) -> bool:
    """True iff ``query`` holds in every model of ``kb``.

    Query atoms missing from ``kb`` join the enumeration universe.  An
    unsatisfiable ``kb`` entails everything.
    """
    for m in enumerate_models(_universe([kb, query], order)):
        if evaluate(kb, m) and not evaluate(query, m):
            return False
    return True


def pretty_print(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return f"not({pretty_print(f.inner)})"
    if isinstance(f, And):
        return "and(" + ", ".join(pretty_print(op) for op in f.operands) + ")"
    if isinstance(f, Or):
        return "or(" + ", ".join(pretty_print(op) for op in f.operands) + ")"
    if isinstance(f, Implication):
        return f"implies({pretty_print(f.antecedent)}, {pretty_print(f.consequent)})"
    if isinstance(f, Biconditional):
        return f"iff({pretty_print(f.left)}, {pretty_print(f.right)})"
    raise TypeError(f"not a formula: {f!r}")
