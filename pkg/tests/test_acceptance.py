"""Acceptance criteria.  Each test prints one ``[criterion N] PASS|FAIL`` line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline;
they are also collected in the terminal summary.
"""

import contextlib
import json
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest
from click.testing import CliRunner

from kksolve.cli import cli
from kksolve.dsl import parse_puzzle, print_puzzle
from kksolve.logic import (
    And,
    Atom,
    Biconditional,
    Implication,
    Not,
    Or,
    atoms_of,
    entails,
    enumerate_models,
    evaluate,
    satisfying_models,
)
from kksolve.puzzle import Mode, Role, compile_puzzle
from kksolve.solver import Conclusion, oracle_solve, solve
from generators import random_formula, random_puzzle

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
KNIGHT, KNAVE, NORMAL = Role.KNIGHT, Role.KNAVE, Role.NORMAL

RESULTS: list[str] = []


@contextlib.contextmanager
def criterion(number: int, title: str, capsys):
    ok = False
    try:
        yield
        ok = True
    finally:
        line = f"[criterion {number:2d}] {'PASS' if ok else 'FAIL'}: {title}"
        RESULTS.append(line)
        with capsys.disabled():
            print("\n" + line)


def best_time(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def solve_fixture(name):
    p = parse_puzzle((FIXTURES / f"{name}.kk").read_text())
    return p, solve(compile_puzzle(p), p)


def test_c01_truth_tables(capsys):
    T, F = True, False
    X, Y = Atom("X"), Atom("Y")
    tables = [
        (And, [(T, T, T), (T, F, F), (F, T, F), (F, F, F)]),
        (Or, [(T, T, T), (T, F, T), (F, T, T), (F, F, F)]),
        (Implication, [(F, F, T), (F, T, T), (T, F, F), (T, T, T)]),
    ]

    def check():
        n = 0
        for make, rows in tables:
            for x, y, out in rows:
                f = make(X, Y)
                m = {"X": x, "Y": y}
                assert evaluate(f, m) is out
                n += 1
        for x, out in [(T, F), (F, T)]:
            assert evaluate(Not(X), {"X": x}) is out
            n += 1
        for x in (T, F):
            for y in (T, F):
                assert evaluate(Biconditional(X, Y), {"X": x, "Y": y}) is (x == y)
                n += 1
        return n

    with criterion(1, "truth tables: 14 published rows + 4 biconditional rows, exact (<1 ms)", capsys):
        assert check() == 18
        elapsed = best_time(check)
        assert elapsed < 1e-3, f"{elapsed * 1e3:.3f} ms"


def test_c02_both_knaves(capsys):
    with criterion(2, "both-knaves puzzle: A Knave, B Knight, 1 model (<10 ms)", capsys):
        p, v = solve_fixture("both-knaves")
        assert v.conclusions == (Conclusion("A", KNAVE), Conclusion("B", KNIGHT))
        assert v.model_count == 1
        assert best_time(lambda: solve_fixture("both-knaves")) < 0.010


def test_c03_regular(capsys):
    with criterion(3, "regular puzzle: A Knight, B Knave, C Knight, 1 model (<10 ms)", capsys):
        p, v = solve_fixture("regular")
        assert v.conclusions == (Conclusion("A", KNIGHT), Conclusion("B", KNAVE), Conclusion("C", KNIGHT))
        assert v.model_count == 1
        assert best_time(lambda: solve_fixture("regular")) < 0.010


def test_c04_indeterminate(capsys):
    with criterion(4, "indeterminate puzzle: C Knave determinate, two listed models, --paper-style output (<10 ms)", capsys):
        p, v = solve_fixture("indeterminate")
        assert v.conclusions == (Conclusion("A", None), Conclusion("B", None), Conclusion("C", KNAVE))
        assert v.model_count == 2
        assert v.models == (
            {"A": KNAVE, "B": KNIGHT, "C": KNAVE},
            {"A": KNIGHT, "B": KNAVE, "C": KNAVE},
        )
        result = CliRunner().invoke(cli, ["solve", str(FIXTURES / "indeterminate.kk"), "--paper-style"])
        assert result.exit_code == 0
        assert result.stdout == "C is a Knave\n"
        assert best_time(lambda: solve_fixture("indeterminate")) < 0.010


def test_c05_normal(capsys):
    with criterion(5, "normal puzzle: A Knave, B Normal, C Knight (9 atoms, <50 ms)", capsys):
        p, v = solve_fixture("normal")
        assert len(compile_puzzle(p).atom_order) == 9
        assert v.conclusions == (Conclusion("A", KNAVE), Conclusion("B", NORMAL), Conclusion("C", KNIGHT))
        assert best_time(lambda: solve_fixture("normal")) < 0.050


def test_c06_oracle_equivalence(capsys):
    with criterion(6, "solve == oracle_solve on 600 random puzzles, both modes (<30 s)", capsys):
        rng = random.Random(20240601)
        start = time.perf_counter()
        modes = {Mode.TWO_ROLE: 0, Mode.THREE_ROLE: 0}
        for i in range(600):
            p = random_puzzle(rng, Mode.TWO_ROLE if i % 2 else Mode.THREE_ROLE)
            modes[p.mode] += 1
            assert len(p.persons) <= 4 and len(p.utterances) <= 4
            assert solve(compile_puzzle(p), p) == oracle_solve(p), print_puzzle(p)
        assert min(modes.values()) >= 250
        assert time.perf_counter() - start < 30


def test_c07_semantic_properties(capsys):
    with criterion(7, "De Morgan / implication / biconditional / entailment on 1000 formula pairs (<10 s)", capsys):
        rng = random.Random(7)
        atoms = ["p", "q", "r", "s", "t", "u"]
        start = time.perf_counter()
        for i in range(1000):
            f = random_formula(rng, atoms, 3)
            g = random_formula(rng, atoms, 3)
            names = sorted(atoms_of(f) | atoms_of(g))
            assert len(names) <= 6
            for m in enumerate_models(names):
                assert evaluate(Not(And(f, g)), m) == evaluate(Or(Not(f), Not(g)), m)
                assert evaluate(Implication(f, g), m) == evaluate(Or(Not(f), g), m)
                assert evaluate(Biconditional(f, g), m) == evaluate(And(Implication(f, g), Implication(g, f)), m)
            kb = random_formula(rng, atoms[:5], 3)
            q = random_formula(rng, atoms[:5], 3)
            assert entails(kb, q) == (satisfying_models(And(kb, Not(q))) == [])
        assert time.perf_counter() - start < 10


def test_c08_round_trip(capsys):
    with criterion(8, "parse(print(p)) == p on 600 random puzzles plus the fixture corpus (<5 s)", capsys):
        rng = random.Random(99)
        start = time.perf_counter()
        corpus = [parse_puzzle(path.read_text()) for path in sorted(FIXTURES.glob("*.kk"))]
        assert corpus
        for p in corpus + [random_puzzle(rng) for _ in range(600)]:
            assert parse_puzzle(print_puzzle(p)) == p
        assert time.perf_counter() - start < 5


def test_c09_corpus(capsys):
    with criterion(9, "kksolve corpus fixtures/ reports passed N of N (4 published + >=6 more)", capsys):
        names = {p.stem for p in FIXTURES.glob("*.kk")}
        assert {"both-knaves", "regular", "indeterminate", "normal"} <= names
        assert len(names) >= 10
        for path in FIXTURES.glob("*.kk"):
            assert path.with_suffix(".expected").exists()
            p = parse_puzzle(path.read_text())
            assert solve(compile_puzzle(p), p) == oracle_solve(p)
        proc = subprocess.run(
            [sys.executable, "-m", "kksolve.cli", "corpus", "fixtures"], cwd=ROOT, capture_output=True, text=True
        )
        assert proc.returncode == 0, proc.stdout + proc.stderr
        assert proc.stdout.splitlines()[-1] == f"passed {len(names)} of {len(names)}"


def test_c10_contradiction(capsys):
    with criterion(10, "'A says I am a knave' exits 1 with outcome contradiction", capsys):
        path = FIXTURES / "self-knave.kk"
        p = parse_puzzle(path.read_text())
        assert p.mode is Mode.TWO_ROLE
        assert solve(compile_puzzle(p), p).contradiction
        proc = subprocess.run(
            [sys.executable, "-m", "kksolve.cli", "solve", str(path), "--format", "json"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 1
        assert json.loads(proc.stdout)["outcome"] == "contradiction"


@pytest.fixture(scope="module", autouse=True)
def summary():
    yield
    if RESULTS:
        print("\nacceptance summary:\n" + "\n".join(RESULTS))
