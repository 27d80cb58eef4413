"""Solve compiled puzzles and cross-check them with a direct role-assignment search."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from kksolve.logic import Atom, Not, entails, satisfying_models
from kksolve.puzzle import (
    Conj,
    Disj,
    Iff,
    Impl,
    KnowledgeBase,
    Neg,
    OneOfEachRole,
    Puzzle,
    RawFormula,
    Role,
    RoleClaim,
    SaidClaim,
    SameType,
    Statement,
    role_atom,
)


class UnsatisfiableKB(Exception):
    pass


class Truth(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Conclusion:
    person: str
    role: Role | None  # None means indeterminate

    @property
    def determinate(self) -> bool:
        return self.role is not None


@dataclass(frozen=True)
class Verdict:
    """Outcome of solving a puzzle.

    ``models`` lists every consistent role assignment.  An empty list means
    the puzzle is contradictory, in which case ``conclusions`` is empty too.
    """

    conclusions: tuple[Conclusion, ...]
    models: tuple[dict[str, Role], ...]

    @property
    def contradiction(self) -> bool:
        return not self.models

    @property
    def model_count(self) -> int:
        return len(self.models)

    def role_of(self, person: str) -> Role | None:
        for c in self.conclusions:
            if c.person == person:
                return c.role
        raise KeyError(person)


def _verdict(persons, assignments: list[dict[str, Role]]) -> Verdict:
    if not assignments:
        return Verdict((), ())
    conclusions = []
    for person in persons:
        roles = {a[person] for a in assignments}
        conclusions.append(Conclusion(person, roles.pop() if len(roles) == 1 else None))
    return Verdict(tuple(conclusions), tuple(assignments))


def solve(kb: KnowledgeBase, puzzle: Puzzle) -> Verdict:
    assignments = []
    for model in satisfying_models(kb.formula, kb.atom_order):
        assignment = {}
        for person in puzzle.persons:
            held = [r for r in puzzle.mode.roles if model[role_atom(person, r).name]]
            if len(held) != 1:
                raise AssertionError(f"{person} holds roles {held} in a satisfying model")
            assignment[person] = held[0]
        assignments.append(assignment)
    return _verdict(puzzle.persons, assignments)


def classify_symbol(kb: KnowledgeBase, atom: str) -> Truth:
    if atom not in kb.atom_order:
        raise ValueError(f"{atom!r} is not an atom of this knowledge base")
    if not satisfying_models(kb.formula, kb.atom_order):
        raise UnsatisfiableKB("knowledge base has no models; check for a contradiction first")
    if entails(kb.formula, Atom(atom), kb.atom_order):
        return Truth.TRUE
    if entails(kb.formula, Not(Atom(atom)), kb.atom_order):
        return Truth.FALSE
    return Truth.UNKNOWN


# -- oracle ------------------------------------------------------------------
# Works on role assignments directly and never builds a formula.


def _consistent(role: Role, truth: bool) -> bool:
    if role is Role.KNIGHT:
        return truth
    if role is Role.KNAVE:
        return not truth
    return True


def _holds(s: Statement, roles: dict[str, Role]) -> bool:
    if isinstance(s, RoleClaim):
        return roles[s.person] is s.role
    if isinstance(s, SameType):
        return roles[s.left] is roles[s.right]
    if isinstance(s, SaidClaim):
        return _consistent(roles[s.speaker], _holds(s.content, roles))
    if isinstance(s, Conj):
        return all(_holds(op, roles) for op in s.operands)
    if isinstance(s, Disj):
        return any(_holds(op, roles) for op in s.operands)
    if isinstance(s, Neg):
        return not _holds(s.inner, roles)
    if isinstance(s, Impl):
        return not _holds(s.antecedent, roles) or _holds(s.consequent, roles)
    if isinstance(s, Iff):
        return _holds(s.left, roles) == _holds(s.right, roles)
    raise TypeError(f"not a statement: {s!r}")


def _admissible(puzzle: Puzzle, roles: dict[str, Role]) -> bool:
    for c in puzzle.constraints:
        if isinstance(c, OneOfEachRole):
            if sorted(r.value for r in roles.values()) != ["Knave", "Knight", "Normal"]:
                return False
        elif isinstance(c, RawFormula) and not _holds(c.statement, roles):
            return False
    for u in puzzle.utterances:
        speaker = roles[u.speaker]
        if not any(_consistent(speaker, _holds(s, roles)) for s in u.alternatives):
            return False
    return True


def oracle_solve(puzzle: Puzzle) -> Verdict:
    """Brute-force every role assignment (2**n or 3**n) without the KB."""
    # Role atoms enumerate False before True with Knight first, so an
    # assignment giving a person Knight sorts after Knave (and Knave after
    # Normal).  Iterating roles in reverse reproduces the KB model order.
    choices = tuple(reversed(puzzle.mode.roles))
    assignments = []
    for combo in itertools.product(choices, repeat=len(puzzle.persons)):
        roles = dict(zip(puzzle.persons, combo))
        if _admissible(puzzle, roles):
            assignments.append(roles)
    return _verdict(puzzle.persons, assignments)
