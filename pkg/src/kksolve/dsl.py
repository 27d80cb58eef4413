"""Reader and writer for ``.kk`` puzzle files.

A file looks like::

    puzzle "both-knaves"
    roles: knight knave
    persons: A B
    A says: and(knave(A), knave(B))

Clauses are line oriented; ``#`` starts a comment.  Header lines come
first (``puzzle``, ``roles:``, ``persons:``), then ``constraint:`` lines,
then utterances (``P says: expr`` or ``P says-one-of: e1 | e2 ...``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from kksolve import logic
from kksolve.errors import ParseError, SourceSpan, UnknownPerson, ValidationError
from kksolve.logic import IDENT_RE, Formula
from kksolve.puzzle import (
    Conj,
    Disj,
    Iff,
    Impl,
    Mode,
    Neg,
    OneOfEachRole,
    Puzzle,
    RawFormula,
    RoleClaim,
    SaidClaim,
    SameType,
    Statement,
    Utterance,
    Role,
    validate,
)

_TOKEN_RE = re.compile(
    r"""
    (?P<space>[ \t\r\f\v]+)
  | (?P<comment>\#.*)
  | (?P<string>"[^"\n]*")
  | (?P<word>[A-Za-z][A-Za-z0-9_]*(?:-[A-Za-z0-9_]+)*)
  | (?P<punct>[(),|:])
    """,
    re.VERBOSE,
)

_PUNCT_NAMES = {"(": "'('", ")": "')'", ",": "','", "|": "'|'", ":": "':'"}

_ROLE_WORDS = {"knight": Role.KNIGHT, "knave": Role.KNAVE, "normal": Role.NORMAL}
_STATEMENT_KEYWORDS = ["knight", "knave", "normal", "same", "said", "and", "or", "not", "implies", "iff"]
_FORMULA_KEYWORDS = ["and", "or", "not", "implies", "iff"]


@dataclass(frozen=True)
class Token:
    kind: str  # word, string, punct, newline, eof
    text: str
    span: SourceSpan

    def describe(self) -> str:
        if self.kind == "newline":
            return "end of line"
        if self.kind == "eof":
            return "end of input"
        return repr(self.text)


def tokenize(source: str) -> list[Token]:
    """Split ``source`` into tokens; each line ends with a ``newline`` token."""
    if source.startswith("\ufeff"):
        raise ParseError("byte-order mark is not allowed; save the file as UTF-8 without BOM", SourceSpan(1, 1))
    tokens: list[Token] = []
    lines = source.split("\n")
    for lineno, line in enumerate(lines, 1):
        pos = 0
        while pos < len(line):
            m = _TOKEN_RE.match(line, pos)
            if m is None:
                span = SourceSpan(lineno, pos + 1)
                if line[pos] == '"':
                    raise ParseError("unterminated string", span, ["'\"'"])
                raise ParseError(f"unexpected character {line[pos]!r}", span)
            kind = m.lastgroup
            if kind not in ("space", "comment"):
                tokens.append(Token(kind, m.group(), SourceSpan(lineno, pos + 1, m.end() - pos)))
            pos = m.end()
        if lineno < len(lines):
            tokens.append(Token("newline", "\n", SourceSpan(lineno, len(line) + 1)))
    last = len(lines)
    tokens.append(Token("eof", "", SourceSpan(last, len(lines[-1]) + 1)))
    return tokens


def _split_lines(tokens: list[Token]) -> list[list[Token]]:
    """Group tokens into nonblank lines, each ending with its terminator."""
    lines, current = [], []
    for tok in tokens:
        current.append(tok)
        if tok.kind in ("newline", "eof"):
            if len(current) > 1:
                lines.append(current)
            current = []
    return lines


class _LineParser:
    def __init__(self, tokens: list[Token], persons: Sequence[str] | None = None, mode: Mode | None = None):
        self.tokens = tokens
        self.pos = 0
        self.persons = persons
        self.mode = mode

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind not in ("newline", "eof"):
            self.pos += 1
        return tok

    def fail(self, expected: list[str], tok: Token | None = None) -> ParseError:
        tok = tok or self.peek
        return ParseError(f"expected {' or '.join(expected)}, found {tok.describe()}", tok.span, expected)

    def expect_punct(self, text: str) -> Token:
        if self.peek.kind == "punct" and self.peek.text == text:
            return self.advance()
        raise self.fail([_PUNCT_NAMES[text]])

    def expect_word(self, text: str) -> Token:
        if self.peek.kind == "word" and self.peek.text == text:
            return self.advance()
        raise self.fail([repr(text)])

    def expect_end(self) -> None:
        if self.peek.kind not in ("newline", "eof"):
            raise self.fail(["end of line"])

    def at_punct(self, text: str) -> bool:
        return self.peek.kind == "punct" and self.peek.text == text

    def ident(self) -> Token:
        tok = self.peek
        if tok.kind == "word" and IDENT_RE.match(tok.text):
            return self.advance()
        raise self.fail(["identifier"])

    def person(self) -> str:
        tok = self.ident()
        if self.persons is not None and tok.text not in self.persons:
            raise UnknownPerson(tok.text, tok.span)
        return tok.text

    # -- statements

    def statement(self) -> Statement:
        tok = self.peek
        if tok.kind != "word" or tok.text not in _STATEMENT_KEYWORDS:
            raise self.fail(["expression"])
        self.advance()
        kw = tok.text
        self.expect_punct("(")
        if kw in _ROLE_WORDS:
            role = _ROLE_WORDS[kw]
            if role is Role.NORMAL and self.mode is Mode.TWO_ROLE:
                raise ValidationError("normal(...) requires roles: knight knave normal", tok.span)
            result: Statement = RoleClaim(self.person(), role)
        elif kw == "same":
            left = self.person()
            self.expect_punct(",")
            result = SameType(left, self.person())
        elif kw == "said":
            speaker = self.person()
            self.expect_punct(",")
            result = SaidClaim(speaker, self.statement())
        elif kw in ("and", "or"):
            ops = self.list_of(self.statement)
            result = Conj(*ops) if kw == "and" else Disj(*ops)
        elif kw == "not":
            result = Neg(self.statement())
        else:
            left = self.statement()
            self.expect_punct(",")
            right = self.statement()
            result = Impl(left, right) if kw == "implies" else Iff(left, right)
        self.expect_punct(")")
        return result

    def list_of(self, item) -> list:
        items = []
        if self.at_punct(")"):
            return items
        items.append(item())
        while self.at_punct(","):
            self.advance()
            items.append(item())
        return items

    # -- raw formulas

    def formula(self) -> Formula:
        tok = self.ident()
        if tok.text not in _FORMULA_KEYWORDS or not self.at_punct("("):
            return logic.Atom(tok.text)
        self.advance()
        kw = tok.text
        if kw in ("and", "or"):
            ops = self.list_of(self.formula)
            result: Formula = logic.And(*ops) if kw == "and" else logic.Or(*ops)
        elif kw == "not":
            result = logic.Not(self.formula())
        else:
            left = self.formula()
            self.expect_punct(",")
            right = self.formula()
            result = logic.Implication(left, right) if kw == "implies" else logic.Biconditional(left, right)
        self.expect_punct(")")
        return result


def parse_expression(source: str, persons: Sequence[str] | None = None, mode: Mode | None = None) -> Statement:
    """Parse a single statement such as ``said(A, knave(A))``.

    If ``persons`` is given, any other name raises UnknownPerson.
    """
    parser = _LineParser([t for t in tokenize(source) if t.kind != "newline"], persons, mode)
    result = parser.statement()
    parser.expect_end()
    return result


def parse_formula(source: str) -> Formula:
    """Parse a raw formula over bare atoms, e.g. ``and(AKnight, not(BKnave))``."""
    parser = _LineParser([t for t in tokenize(source) if t.kind != "newline"])
    result = parser.formula()
    parser.expect_end()
    return result


def parse_puzzle(source: str) -> Puzzle:
    lines = _split_lines(tokenize(source))
    header_names = ["puzzle", "roles", "persons"]
    for i, what in enumerate(header_names):
        if i >= len(lines):
            eof = tokenize(source)[-1]
            raise ParseError(f"expected {what!r} line, found end of input", eof.span, [repr(what)])
        first = lines[i][0]
        if not (first.kind == "word" and first.text == what):
            raise ParseError(f"expected {what!r} line, found {first.describe()}", first.span, [repr(what)])

    p = _LineParser(lines[0])
    p.expect_word("puzzle")
    if p.peek.kind != "string":
        raise p.fail(["string"])
    name = p.advance().text[1:-1]
    p.expect_end()

    p = _LineParser(lines[1])
    p.expect_word("roles")
    p.expect_punct(":")
    p.expect_word("knight")
    p.expect_word("knave")
    mode = Mode.TWO_ROLE
    if p.peek.kind == "word" and p.peek.text == "normal":
        p.advance()
        mode = Mode.THREE_ROLE
    p.expect_end()

    p = _LineParser(lines[2])
    p.expect_word("persons")
    p.expect_punct(":")
    persons: list[str] = []
    while True:
        tok = p.ident()
        if tok.text in persons:
            raise ValidationError(f"duplicate person {tok.text!r}", tok.span)
        persons.append(tok.text)
        if p.peek.kind in ("newline", "eof"):
            break

    constraints: list = []
    utterances: list[Utterance] = []
    for line in lines[3:]:
        p = _LineParser(line, persons, mode)
        first = line[0]
        second = line[1] if len(line) > 1 else None
        if first.kind == "word" and first.text == "constraint" and second is not None and second.text == ":":
            if utterances:
                raise ParseError("constraints must come before utterances", first.span, ["utterance"])
            p.advance()
            p.advance()
            tok = p.peek
            if tok.kind == "word" and tok.text == "one_of_each":
                p.advance()
                if mode is not Mode.THREE_ROLE:
                    raise ValidationError("one_of_each requires roles: knight knave normal", tok.span)
                if len(persons) != 3:
                    raise ValidationError(
                        f"one_of_each needs exactly 3 persons, puzzle has {len(persons)}", tok.span
                    )
                constraints.append(OneOfEachRole())
            else:
                constraints.append(RawFormula(p.statement()))
            p.expect_end()
            continue

        speaker = p.person()
        verb = p.peek
        if verb.kind == "word" and verb.text in ("says", "says-one-of"):
            p.advance()
        else:
            raise p.fail(["'says'", "'says-one-of'"])
        p.expect_punct(":")
        alternatives = [p.statement()]
        if verb.text == "says-one-of":
            if not p.at_punct("|"):
                raise p.fail(["'|'"])
            while p.at_punct("|"):
                p.advance()
                alternatives.append(p.statement())
        p.expect_end()
        utterances.append(Utterance(speaker, tuple(alternatives)))

    puzzle = Puzzle(name, mode, tuple(persons), tuple(constraints), tuple(utterances))
    validate(puzzle)
    return puzzle


# -- printing ----------------------------------------------------------------


def print_statement(s: Statement) -> str:
    if isinstance(s, RoleClaim):
        return f"{s.role.value.lower()}({s.person})"
    if isinstance(s, SameType):
        return f"same({s.left}, {s.right})"
    if isinstance(s, SaidClaim):
        return f"said({s.speaker}, {print_statement(s.content)})"
    if isinstance(s, Conj):
        return "and(" + ", ".join(map(print_statement, s.operands)) + ")"
    if isinstance(s, Disj):
        return "or(" + ", ".join(map(print_statement, s.operands)) + ")"
    if isinstance(s, Neg):
        return f"not({print_statement(s.inner)})"
    if isinstance(s, Impl):
        return f"implies({print_statement(s.antecedent)}, {print_statement(s.consequent)})"
    if isinstance(s, Iff):
        return f"iff({print_statement(s.left)}, {print_statement(s.right)})"
    raise TypeError(f"not a statement: {s!r}")


def print_puzzle(p: Puzzle) -> str:
    if '"' in p.name or "\n" in p.name:
        raise ValueError(f"puzzle name cannot contain quotes or newlines: {p.name!r}")
    out = [
        f'puzzle "{p.name}"',
        "roles: knight knave normal" if p.mode is Mode.THREE_ROLE else "roles: knight knave",
        "persons: " + " ".join(p.persons),
    ]
    for c in p.constraints:
        if isinstance(c, OneOfEachRole):
            out.append("constraint: one_of_each")
        else:
            out.append(f"constraint: {print_statement(c.statement)}")
    for u in p.utterances:
        if len(u.alternatives) == 1:
            out.append(f"{u.speaker} says: {print_statement(u.alternatives[0])}")
        else:
            out.append(f"{u.speaker} says-one-of: " + " | ".join(map(print_statement, u.alternatives)))
    return "\n".join(out) + "\n"
