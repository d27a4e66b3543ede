"""Cost model for weighted edit distance over a fixed alphabet."""

from __future__ import annotations

from dataclasses import dataclass


class ScoringError(ValueError):
    """Malformed scoring table, or a character outside the alphabet."""


def _finite(cost) -> bool:
    # ints and Decimals are always finite; floats may carry inf/nan
    if isinstance(cost, float):
        return cost == cost and cost not in (float("inf"), float("-inf"))
    return True


@dataclass(frozen=True)
class ScoringFunction:
    """Per-character deletion/insertion costs and pairwise replacement costs.

    Costs are exact numbers (int by default, decimal.Decimal for the
    fixed-precision mode); nothing here ever converts them to floats.
    Instances are immutable after construction and safe to share between
    concurrent readers.

    Replacing a character with itself usually costs 0, but that is a
    convention of the common tables, not an enforced invariant.
    """

    alphabet: tuple[str, ...]
    delete: dict
    insert: dict
    substitute: dict  # keyed by (a, b) tuples

    def del_cost(self, a):
        try:
            return self.delete[a]
        except KeyError:
            raise ScoringError(f"character {a!r} not in scoring alphabet") from None

    def ins_cost(self, b):
        try:
            return self.insert[b]
        except KeyError:
            raise ScoringError(f"character {b!r} not in scoring alphabet") from None

    def sub_cost(self, a, b):
        try:
            return self.substitute[a, b]
        except KeyError:
            raise ScoringError(
                f"no replacement cost for pair ({a!r}, {b!r})"
            ) from None

    def missing_chars(self, text: str) -> set:
        """Characters of ``text`` that the alphabet does not cover."""
        return set(text) - set(self.alphabet)


def levenshtein(alphabet) -> ScoringFunction:
    """Uniform unit-cost scoring: every edit costs 1, keeping a character 0."""
    chars = tuple(dict.fromkeys(alphabet))
    if not chars:
        raise ScoringError("alphabet must be non-empty")
    delete = {c: 1 for c in chars}
    insert = {c: 1 for c in chars}
    substitute = {(a, b): (0 if a == b else 1) for a in chars for b in chars}
    return ScoringFunction(chars, delete, insert, substitute)


def validate(sf: ScoringFunction) -> list:
    """Check the scoring invariants; return a list of violations (empty = ok)."""
    problems = []
    if not sf.alphabet:
        problems.append("empty alphabet")
    if len(set(sf.alphabet)) != len(sf.alphabet):
        problems.append("duplicate characters in alphabet")
    for c in sf.alphabet:
        for table, name in ((sf.delete, "DEL"), (sf.insert, "INS")):
            if c not in table:
                problems.append(f"incomplete table: missing {name}({c!r})")
    for a in sf.alphabet:
        for b in sf.alphabet:
            if (a, b) not in sf.substitute:
                problems.append(f"incomplete table: missing SUB({a!r},{b!r})")
    seen = []
    for table, label in (
        (sf.delete, "DEL"),
        (sf.insert, "INS"),
        (sf.substitute, "SUB"),
    ):
        for key, cost in table.items():
            if not _finite(cost):
                seen.append(f"non-finite cost: {label}{key!r} = {cost!r}")
            elif cost < 0:
                seen.append(f"negative cost: {label}{key!r} = {cost!r}")
    problems.extend(seen)
    return problems
