"""Puzzle domain model and its compilation into a propositional knowledge base.

Every person gets one atom per available role, named ``<person><Role>``
(``AKnight``, ``AKnave``, ``ANormal``).  An utterance "P says s" becomes::

    and(implies(PKnight, s), implies(PKnave, not(s)))

Normal speakers are left unconstrained.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Sequence, Union

from kksolve.errors import UnknownPerson, ValidationError
from kksolve.logic import IDENT_RE, And, Atom, Biconditional, Formula, Implication, Not, Or


class Role(enum.Enum):
    KNIGHT = "Knight"
    KNAVE = "Knave"
    NORMAL = "Normal"


class Mode(enum.Enum):
    TWO_ROLE = 2
    THREE_ROLE = 3

    @property
    def roles(self) -> tuple[Role, ...]:
        if self is Mode.TWO_ROLE:
            return (Role.KNIGHT, Role.KNAVE)
        return (Role.KNIGHT, Role.KNAVE, Role.NORMAL)


# -- statements --------------------------------------------------------------


class Statement:
    __slots__ = ()


@dataclass(frozen=True)
class RoleClaim(Statement):
    person: str
    role: Role


@dataclass(frozen=True)
class SameType(Statement):
    left: str
    right: str


@dataclass(frozen=True)
class SaidClaim(Statement):
    """Reported speech: ``speaker`` uttered ``content``."""

    speaker: str
    content: Statement


@dataclass(frozen=True, init=False)
class Conj(Statement):
    operands: tuple[Statement, ...]

    def __init__(self, *operands: Statement):
        object.__setattr__(self, "operands", tuple(operands))


@dataclass(frozen=True, init=False)
class Disj(Statement):
    operands: tuple[Statement, ...]

    def __init__(self, *operands: Statement):
        object.__setattr__(self, "operands", tuple(operands))


@dataclass(frozen=True)
class Neg(Statement):
    inner: Statement


@dataclass(frozen=True)
class Impl(Statement):
    antecedent: Statement
    consequent: Statement


@dataclass(frozen=True)
class Iff(Statement):
    left: Statement
    right: Statement


def persons_in(s: Statement) -> list[str]:
    """Every person named in ``s``, in order of appearance (with repeats)."""
    if isinstance(s, RoleClaim):
        return [s.person]
    if isinstance(s, SameType):
        return [s.left, s.right]
    if isinstance(s, SaidClaim):
        return [s.speaker, *persons_in(s.content)]
    if isinstance(s, (Conj, Disj)):
        return [p for op in s.operands for p in persons_in(op)]
    if isinstance(s, Neg):
        return persons_in(s.inner)
    if isinstance(s, Impl):
        return persons_in(s.antecedent) + persons_in(s.consequent)
    if isinstance(s, Iff):
        return persons_in(s.left) + persons_in(s.right)
    raise TypeError(f"not a statement: {s!r}")


def roles_in(s: Statement) -> list[Role]:
    if isinstance(s, RoleClaim):
        return [s.role]
    if isinstance(s, SaidClaim):
        return roles_in(s.content)
    if isinstance(s, (Conj, Disj)):
        return [r for op in s.operands for r in roles_in(op)]
    if isinstance(s, Neg):
        return roles_in(s.inner)
    if isinstance(s, Impl):
        return roles_in(s.antecedent) + roles_in(s.consequent)
    if isinstance(s, Iff):
        return roles_in(s.left) + roles_in(s.right)
    return []


# -- puzzle ------------------------------------------------------------------


@dataclass(frozen=True)
class Utterance:
    speaker: str
    alternatives: tuple[Statement, ...]

    def __post_init__(self):
        object.__setattr__(self, "alternatives", tuple(self.alternatives))


@dataclass(frozen=True)
class OneOfEachRole:
    """Three persons: exactly one Knight, one Knave and one Normal."""


@dataclass(frozen=True)
class RawFormula:
    statement: Statement


Constraint = Union[OneOfEachRole, RawFormula]


@dataclass(frozen=True)
class Puzzle:
    name: str
    mode: Mode
    persons: tuple[str, ...]
    constraints: tuple[Constraint, ...] = ()
    utterances: tuple[Utterance, ...] = ()

    def __post_init__(self):
        for field in ("persons", "constraints", "utterances"):
            object.__setattr__(self, field, tuple(getattr(self, field)))


def validate(p: Puzzle) -> None:
    """Raise ValidationError unless ``p`` is well formed."""
    if not p.persons:
        raise ValidationError("puzzle declares no persons", where="persons")
    seen: set[str] = set()
    for person in p.persons:
        if not IDENT_RE.match(person):
            raise ValidationError(f"invalid person name {person!r}", where="persons")
        if person in seen:
            raise ValidationError(f"duplicate person {person!r}", where="persons")
        seen.add(person)

    def check_statement(s: Statement, where: str) -> None:
        for name in persons_in(s):
            if name not in seen:
                raise UnknownPerson(name, where=where)
        if p.mode is Mode.TWO_ROLE and Role.NORMAL in roles_in(s):
            raise ValidationError("normal(...) requires roles: knight knave normal", where=where)

    for i, c in enumerate(p.constraints, 1):
        where = f"constraint {i}"
        if isinstance(c, OneOfEachRole):
            if p.mode is not Mode.THREE_ROLE:
                raise ValidationError("one_of_each requires roles: knight knave normal", where=where)
            if len(p.persons) != 3:
                raise ValidationError(
                    f"one_of_each needs exactly 3 persons, puzzle has {len(p.persons)}", where=where
                )
        elif isinstance(c, RawFormula):
            check_statement(c.statement, where)
        else:
            raise TypeError(f"not a constraint: {c!r}")

    for i, u in enumerate(p.utterances, 1):
        where = f"utterance {i}"
        if u.speaker not in seen:
            raise UnknownPerson(u.speaker, where=where)
        if not u.alternatives:
            raise ValidationError("utterance has no statements", where=where)
        for s in u.alternatives:
            check_statement(s, where)


# -- compilation -------------------------------------------------------------


@dataclass(frozen=True)
class KnowledgeBase:
    formula: Formula
    atom_order: tuple[str, ...]


def role_atom(person: str, role: Role) -> Atom:
    return Atom(person + role.value)


def role_exclusivity(person: str, mode: Mode) -> Formula:
    """Exactly one role atom of ``person`` is true."""
    atoms = [role_atom(person, r) for r in mode.roles]
    exclusions = [Not(And(x, y)) for x, y in itertools.combinations(atoms, 2)]
    return And(Or(*atoms), *exclusions)


def says(speaker: str, content: Formula) -> Formula:
    return And(
        Implication(role_atom(speaker, Role.KNIGHT), content),
        Implication(role_atom(speaker, Role.KNAVE), Not(content)),
    )


def lower_statement(s: Statement, mode: Mode, persons: Sequence[str] | None = None) -> Formula:
    """Translate ``s`` into a formula over role atoms.

    When ``persons`` is given, names outside it raise UnknownPerson.
    """
    if persons is not None:
        for name in persons_in(s):
            if name not in persons:
                raise UnknownPerson(name)
    return _lower(s, mode)


def _lower(s: Statement, mode: Mode) -> Formula:
    if isinstance(s, RoleClaim):
        if s.role is Role.NORMAL and mode is Mode.TWO_ROLE:
            raise ValidationError(f"normal({s.person}) used in a knight/knave puzzle")
        return role_atom(s.person, s.role)
    if isinstance(s, SameType):
        if mode is Mode.TWO_ROLE:
            return Biconditional(role_atom(s.left, Role.KNIGHT), role_atom(s.right, Role.KNIGHT))
        return Or(*(And(role_atom(s.left, r), role_atom(s.right, r)) for r in mode.roles))
    if isinstance(s, SaidClaim):
        return says(s.speaker, _lower(s.content, mode))
    if isinstance(s, Conj):
        return And(*(_lower(op, mode) for op in s.operands))
    if isinstance(s, Disj):
        return Or(*(_lower(op, mode) for op in s.operands))
    if isinstance(s, Neg):
        return Not(_lower(s.inner, mode))
    if isinstance(s, Impl):
        return Implication(_lower(s.antecedent, mode), _lower(s.consequent, mode))
    if isinstance(s, Iff):
        return Biconditional(_lower(s.left, mode), _lower(s.right, mode))
    raise TypeError(f"not a statement: {s!r}")


def lower_utterance(u: Utterance, mode: Mode) -> Formula:
    branches = [says(u.speaker, lower_statement(s, mode)) for s in u.alternatives]
    if len(branches) == 1:
        return branches[0]
    return Or(*branches)


def one_of_each_role(persons: Sequence[str]) -> Formula:
    """Or over the six ways to hand out Knight, Knave and Normal to three persons."""
    if len(persons) != 3:
        raise ValidationError(f"one_of_each needs exactly 3 persons, got {len(persons)}")
    disjuncts = []
    for knight, knave, normal in itertools.permutations(persons):
        disjuncts.append(
            And(role_atom(knight, Role.KNIGHT), role_atom(knave, Role.KNAVE), role_atom(normal, Role.NORMAL))
        )
    return Or(*disjuncts)


def compile_puzzle(p: Puzzle) -> KnowledgeBase:
    validate(p)
    parts: list[Formula] = [role_exclusivity(person, p.mode) for person in p.persons]
    for c in p.constraints:
        if isinstance(c, OneOfEachRole):
            parts.append(one_of_each_role(p.persons))
        else:
            parts.append(lower_statement(c.statement, p.mode))
    parts.extend(lower_utterance(u, p.mode) for u in p.utterances)
    order = tuple(role_atom(person, r).name for person in p.persons for r in p.mode.roles)
    return KnowledgeBase(And(*parts), order)
