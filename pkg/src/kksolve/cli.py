"""``kksolve`` command line.

Exit codes: 0 solved, 1 contradiction (or corpus mismatch), 2 parse or
validation error, 3 I/O error.
"""

from __future__ import annotations

import difflib
import json
from pathlib import Path

import click

from kksolve.dsl import parse_puzzle
from kksolve.errors import PuzzleError
from kksolve.logic import pretty_print
from kksolve.puzzle import KnowledgeBase, Puzzle, Role, compile_puzzle
from kksolve.solver import Verdict, solve

EXIT_SOLVED = 0
EXIT_CONTRADICTION = 1
EXIT_INVALID = 2
EXIT_IO = 3


class _InputError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def load_puzzle(path: Path) -> Puzzle:
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise _InputError(f"{path}: {exc.strerror or exc}", EXIT_IO) from exc
    try:
        source = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise _InputError(f"{path}: not valid UTF-8 (byte {exc.start})", EXIT_INVALID) from exc
    try:
        return parse_puzzle(source)
    except PuzzleError as exc:
        raise _InputError(f"{path}: {exc}", EXIT_INVALID) from exc


def role_phrase(role: Role) -> str:
    return "Normal" if role is Role.NORMAL else f"a {role.value}"


def render_text(
    puzzle: Puzzle,
    verdict: Verdict,
    kb: KnowledgeBase | None = None,
    *,
    paper_style: bool = False,
    models: bool = False,
) -> str:
    lines = []
    if verdict.contradiction:
        lines.append("contradiction: no consistent role assignment")
    else:
        lines.extend(f"{c.person} is {role_phrase(c.role)}" for c in verdict.conclusions if c.determinate)
        undecided = [c.person for c in verdict.conclusions if not c.determinate]
        if undecided and not paper_style:
            lines.append("indeterminate: " + ", ".join(undecided))
    if models:
        lines.append(f"models: {verdict.model_count}")
        for m in verdict.models:
            lines.append("  " + " ".join(f"{p}={m[p].value}" for p in puzzle.persons))
    if kb is not None:
        lines.append("kb: " + pretty_print(kb.formula))
    return "".join(line + "\n" for line in lines)


def build_report(
    puzzle: Puzzle, verdict: Verdict, kb: KnowledgeBase | None = None, *, models: bool = False
) -> dict:
    conclusions = []
    for c in verdict.conclusions:
        entry = {"person": c.person, "status": "determinate" if c.determinate else "indeterminate"}
        if c.determinate:
            entry["role"] = c.role.value
        conclusions.append(entry)
    report = {
        "puzzle_name": puzzle.name,
        "outcome": "contradiction" if verdict.contradiction else "solved",
        "conclusions": conclusions,
        "model_count": verdict.model_count,
    }
    if models:
        report["models"] = [{p: m[p].value for p in puzzle.persons} for m in verdict.models]
    if kb is not None:
        report["kb_pretty"] = pretty_print(kb.formula)
    return report


@click.group()
def cli():
    """Solve Knights and Knaves puzzles written in the .kk format."""


@cli.command("solve")
@click.argument("file", type=click.Path(path_type=Path))
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.option("--models", is_flag=True, help="List every consistent role assignment.")
@click.option("--show-kb", is_flag=True, help="Print the compiled knowledge base.")
@click.option("--paper-style", is_flag=True, help="Omit the indeterminate line in text output.")
@click.pass_context
def solve_command(ctx, file: Path, fmt: str, models: bool, show_kb: bool, paper_style: bool):
    """Solve FILE and report each person's role."""
    try:
        puzzle = load_puzzle(file)
    except _InputError as exc:
        click.echo(str(exc), err=True)
        ctx.exit(exc.code)
    kb = compile_puzzle(puzzle)
    verdict = solve(kb, puzzle)
    shown_kb = kb if show_kb else None
    if fmt == "json":
        click.echo(json.dumps(build_report(puzzle, verdict, shown_kb, models=models), indent=2))
    else:
        click.echo(render_text(puzzle, verdict, shown_kb, paper_style=paper_style, models=models), nl=False)
    ctx.exit(EXIT_CONTRADICTION if verdict.contradiction else EXIT_SOLVED)


@cli.command("check")
@click.argument("file", type=click.Path(path_type=Path))
@click.pass_context
def check_command(ctx, file: Path):
    """Parse and validate FILE without solving it."""
    try:
        load_puzzle(file)
    except _InputError as exc:
        click.echo(str(exc), err=True)
        ctx.exit(exc.code)


@cli.command("corpus")
@click.argument("directory", type=click.Path(path_type=Path))
@click.pass_context
def corpus_command(ctx, directory: Path):
    """Solve every .kk file in DIRECTORY and compare with its .expected golden."""
    if not directory.is_dir():
        click.echo(f"{directory}: not a directory", err=True)
        ctx.exit(EXIT_IO)
    files = sorted(directory.glob("*.kk"))
    passed = 0
    worst = EXIT_SOLVED
    for path in files:
        try:
            puzzle = load_puzzle(path)
        except _InputError as exc:
            click.echo(f"ERROR {path.name}: {exc}")
            worst = max(worst, exc.code)
            continue
        kb = compile_puzzle(puzzle)
        actual = render_text(puzzle, solve(kb, puzzle))
        golden = path.with_suffix(".expected")
        if not golden.exists():
            click.echo(f"PASS {path.name} (no golden)")
            passed += 1
            continue
        try:
            expected = golden.read_bytes().decode("utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            click.echo(f"ERROR {golden.name}: {exc}")
            worst = max(worst, EXIT_IO)
            continue
        if actual == expected:
            click.echo(f"PASS {path.name}")
            passed += 1
        else:
            click.echo(f"FAIL {path.name}")
            diff = difflib.unified_diff(
                expected.splitlines(keepends=True), actual.splitlines(keepends=True), golden.name, "actual"
            )
            click.echo("".join(diff), err=True, nl=False)
            worst = max(worst, EXIT_CONTRADICTION)
    click.echo(f"passed {passed} of {len(files)}")
    ctx.exit(worst)


def main():
    cli()


if __name__ == "__main__":
    main()
