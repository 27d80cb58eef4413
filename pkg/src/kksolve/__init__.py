"""Knights, Knaves and Normals: a puzzle DSL, propositional compiler and solver."""

from kksolve.dsl import parse_expression, parse_formula, parse_puzzle, print_puzzle
from kksolve.errors import ParseError, PuzzleError, SourceSpan, UnknownPerson, ValidationError
from kksolve.puzzle import KnowledgeBase, Mode, Puzzle, Role, compile_puzzle
from kksolve.solver import Conclusion, Truth, Verdict, classify_symbol, oracle_solve, solve

__all__ = [
    "Conclusion",
    "KnowledgeBase",
    "Mode",
    "ParseError",
    "Puzzle",
    "PuzzleError",
    "Role",
    "SourceSpan",
    "Truth",
    "UnknownPerson",
    "ValidationError",
    "Verdict",
    "classify_symbol",
    "compile_puzzle",
    "oracle_solve",
    "parse_expression",
    "parse_formula",
    "parse_puzzle",
    "print_puzzle",
    "solve",
]
