"""Command-line front-end: compress, expand, distance, bench, selftest.

File formats
------------

Grammar files: first line ``SLP <n>``, then one production per line, either
``<i> -> '<char>'`` (terminal, one character between single quotes) or
``<i> -> <p> <q>`` (concatenation of two earlier variables).  Variable n is
the root.  Blank lines and lines starting with ``#`` are ignored.  Newline,
tab, carriage return and backslash terminals are written escaped (``\n``,
``\t``, ``\r``, ``\\``); every other character appears literally.

Scoring files: tab-separated.  A header line ``ALPHABET<TAB><chars>``, then
``DEL<TAB><char><TAB><cost>``, ``INS<TAB><char><TAB><cost>`` and
``SUB<TAB><a><TAB><b><TAB><cost>`` lines.  A missing SUB(a, a) defaults to
0; any other omission is an error.  Costs are integers, or decimals for the
fixed-precision mode.  The name ``lev`` selects built-in unit costs.

Plain-text inputs have one trailing newline stripped; ``expand`` writes one
back, so compress -> expand round-trips newline-terminated files exactly.
"""

from __future__ import annotations

import argparse
import random
import sys
from decimal import Decimal, InvalidOperation

from . import block_edit, scoring, slp
from .partition import InvariantViolation


class CliError(Exception):
    """Bad invocation or malformed input file; exits with status 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


# newline, tab and carriage return would break the line-based format, and a
# bare backslash would make unescaping ambiguous
_ESCAPES = {"\\": "\\\\", "\n": "\\n", "\t": "\\t", "\r": "\\r"}
_UNESCAPES = {v: k for k, v in _ESCAPES.items()}


def dump_slp(grammar: slp.Slp) -> str:
    lines = [f"SLP {grammar.size}"]
    for i in range(1, grammar.size + 1):
        prod = grammar.productions[i]
        if isinstance(prod, str):
            lines.append(f"{i} -> '{_ESCAPES.get(prod, prod)}'")
        else:
            lines.append(f"{i} -> {prod[0]} {prod[1]}")
    return "\n".join(lines) + "\n"


def parse_slp(text: str, source: str = "<input>") -> slp.Slp:
    lines = [
        (no, line.strip())
        for no, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines or not lines[0][1].startswith("SLP "):
        raise CliError(f"{source}: expected an 'SLP <n>' header line")
    try:
        count = int(lines[0][1].split()[1])
    except (IndexError, ValueError):
        raise CliError(f"{source}: malformed SLP header {lines[0][1]!r}") from None
    productions = [None] * (count + 1)
    for no, line in lines[1:]:
        head, sep, rhs = line.partition("->")
        if not sep:
            raise CliError(f"{source}:{no}: expected '<i> -> ...'")
        try:
            idx = int(head.strip())
        except ValueError:
            raise CliError(f"{source}:{no}: bad variable index {head.strip()!r}") from None
        if not (1 <= idx <= count):
            raise CliError(f"{source}:{no}: variable {idx} outside 1..{count}")
        if productions[idx] is not None:
            raise CliError(f"{source}:{no}: duplicate production for variable {idx}")
        rhs = rhs.strip()
        if rhs.startswith("'") and rhs.endswith("'") and len(rhs) >= 3:
            char = rhs[1:-1]
            char = _UNESCAPES.get(char, char)
            if len(char) != 1:
                raise CliError(f"{source}:{no}: terminal must be a single character")
            productions[idx] = char
        else:
            fields = rhs.split()
            if len(fields) != 2:
                raise CliError(f"{source}:{no}: expected \"'<char>'\" or '<p> <q>'")
            try:
                productions[idx] = (int(fields[0]), int(fields[1]))
            except ValueError:
                raise CliError(f"{source}:{no}: bad variable references {rhs!r}") from None
    missing = [i for i in range(1, count + 1) if productions[i] is None]
    if missing:
        raise CliError(f"{source}: missing productions for variables {missing}")
    try:
        grammar = slp.slp_from_productions(productions[1:])
    except slp.SlpError as exc:
        raise CliError(f"{source}: {exc}") from None
    problems = slp.validate(grammar)
    if problems:
        raise CliError(f"{source}: invalid grammar: {problems[0]}")
    return grammar


def _parse_cost(token: str, source: str, no: int):
    try:
        return int(token)
    except ValueError:
        pass
    try:
        return Decimal(token)
    except InvalidOperation:
        raise CliError(f"{source}:{no}: bad cost {token!r}") from None


def parse_scoring(text: str, source: str = "<scoring>") -> scoring.ScoringFunction:
    alphabet = None
    delete, insert, substitute = {}, {}, {}
    for no, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.startswith("#"):
            continue
        fields = raw.split("\t")
        tag = fields[0]
        if tag == "ALPHABET" and len(fields) == 2:
            if alphabet is not None:
                raise CliError(f"{source}:{no}: duplicate ALPHABET line")
            alphabet = tuple(dict.fromkeys(fields[1]))
        elif tag in ("DEL", "INS") and len(fields) == 3:
            table = delete if tag == "DEL" else insert
            if fields[1] in table:
                raise CliError(f"{source}:{no}: duplicate {tag} entry for {fields[1]!r}")
            table[fields[1]] = _parse_cost(fields[2], source, no)
        elif tag == "SUB" and len(fields) == 4:
            key = (fields[1], fields[2])
            if key in substitute:
                raise CliError(f"{source}:{no}: duplicate SUB entry for {key!r}")
            substitute[key] = _parse_cost(fields[3], source, no)
        else:
            raise CliError(f"{source}:{no}: unrecognized line {raw!r}")
    if alphabet is None:
        raise CliError(f"{source}: missing ALPHABET line")
    for a in alphabet:
        substitute.setdefault((a, a), 0)
    sf = scoring.ScoringFunction(alphabet, delete, insert, substitute)
    problems = scoring.validate(sf)
    if problems:
        raise CliError(f"{source}: invalid scoring: {problems[0]}")
    return sf


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(str(exc)) from None


def _read_input(path: str) -> slp.Slp:
    """Grammar file or plain text, told apart by the SLP header."""
    text = _read(path)
    if text.startswith("SLP "):
        return parse_slp(text, path)
    if text.endswith("\n"):
        text = text[:-1]
    if not text:
        raise CliError(f"{path}: empty input")
    return slp.from_plain(text)


def _resolve_scoring(choice: str, texts):
    if choice == "lev":
        chars = sorted(set().union(*map(set, texts)))
        return scoring.levenshtein(chars)
    sf = parse_scoring(_read(choice), choice)
    for text in texts:
        missing = sf.missing_chars(text)
        if missing:
            raise CliError(
                f"{choice}: alphabet does not cover input characters {sorted(missing)!r}"
            )
    return sf


def _cmd_compress(args) -> int:
    text = _read(args.input)
    if text.endswith("\n"):
        text = text[:-1]
    if not text:
        raise CliError(f"{args.input}: empty input")
    if args.method == "lz78":
        grammar = slp.lz78_to_slp(slp.lz78_parse(text))
    else:
        grammar = slp.from_plain(text)
    payload = dump_slp(grammar)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return 0


def _cmd_expand(args) -> int:
    grammar = parse_slp(_read(args.input), args.input)
    sys.stdout.write(slp.expand(grammar) + "\n")
    return 0


def _cmd_distance(args) -> int:
    slp_a = _read_input(args.a)
    slp_b = _read_input(args.b)
    text_a, text_b = slp.expand(slp_a), slp.expand(slp_b)
    sf = _resolve_scoring(args.scoring, (text_a, text_b))
    if args.algorithm == "baseline":
        cost = block_edit.wagner_fischer(text_a, text_b, sf)
        stats = None
    else:
        cost, stats = block_edit.block_edit_distance(slp_a, slp_b, sf, args.block_size)
    print(cost)
    if args.stats:
        if stats is None:
            raise CliError("--stats requires the block algorithm")
        with open(args.stats, "w", encoding="utf-8") as fh:
            fh.write("\n".join(stats.as_record()) + "\n")
    return 0


def _cmd_bench(args) -> int:
    print("total_n\tvars\tblock\tparts\tblocks\tcells\tqueries\tbaseline_cells\tratio")
    previous = None
    for total in args.sizes:
        half = total // 2
        slp_a = slp.fibonacci_prefix_slp(half)
        slp_b = slp.fibonacci_prefix_slp(half, alphabet=("b", "a"))
        sf = scoring.levenshtein("ab")
        _, stats = block_edit.block_edit_distance(slp_a, slp_b, sf)
        baseline = (half + 1) * (half + 1)
        growth = (
            f"{stats.boundary_cells_propagated / previous:.2f}" if previous else "-"
        )
        print(
            f"{total}\t{stats.n_vars_a + stats.n_vars_b}\t{stats.block_size}"
            f"\t{stats.parts_a}x{stats.parts_b}\t{stats.block_count}"
            f"\t{stats.boundary_cells_propagated}\t{stats.sweep_queries}"
            f"\t{baseline}\t{growth}"
        )
        previous = stats.boundary_cells_propagated
    return 0


def _cmd_selftest(args) -> int:
    rng = random.Random(args.seed)
    bad = 0
    for case in range(args.cases):
        sigma = rng.choice(("ab", "abcd", "abcdefghijklmnopqrstuvwxyz"))
        text_a = "".join(rng.choice(sigma) for _ in range(rng.randint(1, 40)))
        text_b = "".join(rng.choice(sigma) for _ in range(rng.randint(1, 40)))
        if rng.random() < 0.5:
            sf = scoring.levenshtein(sigma)
        else:
            chars = tuple(sigma)
            sf = scoring.ScoringFunction(
                chars,
                {c: rng.randint(0, 5) for c in chars},
                {c: rng.randint(0, 5) for c in chars},
                {
                    (a, b): (0 if a == b else rng.randint(0, 9))
                    for a in chars
                    for b in chars
                },
            )
        make = slp.from_plain if rng.random() < 0.5 else (
            lambda t: slp.lz78_to_slp(slp.lz78_parse(t))
        )
        slp_a, slp_b = make(text_a), make(text_b)
        want = block_edit.wagner_fischer(text_a, text_b, sf)
        x = rng.choice((2, 3, 5, None))
        got, _ = block_edit.block_edit_distance(slp_a, slp_b, sf, x)
        if got != want:
            bad += 1
            print(
                f"MISMATCH case {case}: got {got}, expected {want} "
                f"(a={text_a!r}, b={text_b!r}, x={x})",
                file=sys.stderr,
            )
    if bad:
        print(f"selftest: {bad}/{args.cases} cases failed", file=sys.stderr)
        return 2
    print(f"selftest: {args.cases} cases, accelerated distance matched the baseline")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="slpdist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="plain text file -> grammar file")
    p.add_argument("input")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--method", choices=("lz78", "balanced"), default="lz78")
    p.set_defaults(run=_cmd_compress)

    p = sub.add_parser("expand", help="grammar file -> text on stdout")
    p.add_argument("input")
    p.set_defaults(run=_cmd_expand)

    p = sub.add_parser("distance", help="edit distance between two inputs")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--scoring", default="lev", help="'lev' or a scoring file path")
    p.add_argument("--block-size", type=int, default=None, dest="block_size")
    p.add_argument("--algorithm", choices=("block", "baseline"), default="block")
    p.add_argument("--stats", default=None, help="write run counters to this path")
    p.set_defaults(run=_cmd_distance)

    p = sub.add_parser("bench", help="counter trends on a compressible family")
    p.add_argument(
        "--sizes",
        type=lambda s: [int(v) for v in s.split(",")],
        default=[1024, 2048, 4096, 8192, 16384],
        help="comma-separated total input lengths",
    )
    p.set_defaults(run=_cmd_bench)

    p = sub.add_parser("selftest", help="oracle equivalence at small scale")
    p.add_argument("--cases", type=int, default=60)
    p.add_argument("--seed", type=int, default=20240901)
    p.set_defaults(run=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.run(args)
    except CliError as exc:
        print(f"slpdist: {exc}", file=sys.stderr)
        return 1
    except (scoring.ScoringError, slp.SlpError, ValueError) as exc:
        print(f"slpdist: {exc}", file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        print(f"slpdist: internal invariant violated: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
