"""Boundary-to-boundary distance tables for grid blocks, and the memoized
repository that builds one table per distinct substring pair.

A block of the edit-distance grid spans h characters of A (rows) and w
characters of B (columns).  Its boundary has s = h + w + 1 input vertices
(first column bottom-to-top, then first row left-to-right) and s output
vertices (last row left-to-right, then last column bottom-to-top); both
orders start at the bottom-left corner and end at the top-right corner, so
input 0 coincides with output 0 and input s-1 with output s-1.

``table.m[i][j]`` holds the cheapest monotone (down/right) path weight from
input i to output j, or ``None`` when no such path exists.  These matrices
are Monge on their finite entries, which is what lets two tables sharing a
boundary be merged with SMAWK in O(s^2) instead of rebuilt in O(s^3).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .monge import max_finite, minplus_row, substitute_infinities
from .partition import COMPOSITE, EXACT, InvariantViolation, StringPartition
from .slp import Slp, expand


@dataclass
class DistTable:
    a: str  # substring of A spanned by the block's rows
    b: str  # substring of B spanned by the block's columns
    m: list  # s x s rows; None = no monotone path
    _subst: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def h(self) -> int:
        return len(self.a)

    @property
    def w(self) -> int:
        return len(self.b)

    @property
    def s(self) -> int:
        return len(self.a) + len(self.b) + 1

    def max_finite(self):
        cached = self._subst.get("maxfin")
        if cached is None:
            cached = max_finite(self.m)
            self._subst["maxfin"] = cached
        return cached

    def substituted(self, ceiling):
        """Finite, totally monotone version of ``m``; cached per ceiling."""
        cached = self._subst.get(ceiling)
        if cached is None:
            cached, _ = substitute_infinities(self.m, ceiling)
            self._subst[ceiling] = cached
        return cached

    def render_text(self) -> str:
        """Diagnostic dump; unreachable entries render as ``inf``."""
        rows = []
        for row in self.m:
            rows.append("\t".join("inf" if v is None else str(v) for v in row))
        return "\n".join(rows)


def input_position(h: int, w: int, k: int):
    """Grid coordinates (row, col) of input vertex k, 0-based."""
    return (h - k, 0) if k <= h else (0, k - h)


def output_position(h: int, w: int, k: int):
    return (h, k) if k <= w else (h - (k - w), w)


def build_direct(a: str, b: str, sf) -> DistTable:
    """Table by direct dynamic programming: one sweep of the block per input
    vertex, O(s^3) overall.  Base-case builder for terminal blocks and the
    correctness oracle every merge is tested against."""
    h, w = len(a), len(b)
    s = h + w + 1
    del_costs = [None] + [sf.del_cost(c) for c in a]
    ins_costs = [None] + [sf.ins_cost(c) for c in b]
    sub_rows = [None] + [[None] + [sf.sub_cost(ca, cb) for cb in b] for ca in a]
    m = []
    for k in range(s):
        r0, c0 = input_position(h, w, k)
        # cheapest monotone path weight from (r0, c0) to every grid vertex
        dist = [[None] * (w + 1) for _ in range(h + 1)]
        dist[r0][c0] = 0
        for r in range(r0, h + 1):
            row = dist[r]
            above = dist[r - 1] if r > r0 else None
            dcost = del_costs[r] if r > r0 else None
            subs = sub_rows[r] if r > r0 else None
            for c in range(c0, w + 1):
                best = row[c]  # 0 at the source, None elsewhere
                if above is not None and above[c] is not None:
                    v = above[c] + dcost
                    if best is None or v < best:
                        best = v
                if c > c0:
                    if row[c - 1] is not None:
                        v = row[c - 1] + ins_costs[c]
                        if best is None or v < best:
                            best = v
                    if above is not None and above[c - 1] is not None:
                        v = above[c - 1] + subs[c]
                        if best is None or v < best:
                            best = v
                row[c] = best
        m.append([dist[r][c] for r, c in (output_position(h, w, j) for j in range(s))])
    return DistTable(a, b, m)


def merge_horizontal(d1: DistTable, d2: DistTable, ceiling=None) -> DistTable:
    """Table of the side-by-side block (a, b1 + b2) from the tables of
    (a, b1) and (a, b2).

    Entries whose paths stay inside one sub-block are copies; paths that
    cross the shared column are the min-plus product of d1's columns on
    that boundary with d2's rows, one SMAWK pass per input vertex.  Total
    cost O(s^2).  ``ceiling`` is the unreachable-detection bound; it must
    be at least the largest finite entry either operand can contribute to
    (defaults to the sum of the operands' maxima).
    """
    if d1.a != d2.a:
        raise ValueError("horizontal merge needs a common row substring")
    h = d1.h
    w1 = d1.w
    s1, s2 = d1.s, d2.s
    s = h + w1 + d2.w + 1
    if ceiling is None:
        ceiling = d1.max_finite() + d2.max_finite()
    m1 = d1.substituted(ceiling)
    m2 = d2.substituted(ceiling)
    out = []
    for i in range(s1):
        row_d1 = d1.m[i]
        row_out = row_d1[: w1 + 1]
        # cross region: route through the shared column (d1 columns
        # w1..s1-1 are its vertices bottom-to-top, as are d2 rows 0..h)
        values = minplus_row(m1[i][w1:], m2, 1, s2)
        row_out.extend(v if v <= ceiling else None for v in values)
        out.append(row_out)
    for i in range(s1, s):
        row_d2 = d2.m[i - w1]
        out.append([None] * (w1 + 1) + row_d2[1:])
    return DistTable(d1.a, d1.b + d2.b, out)


def merge_vertical(d1: DistTable, d2: DistTable, ceiling=None) -> DistTable:
    """Table of the stacked block (a1 + a2, b); d1 is the upper block
    (earlier characters of A are earlier grid rows).  Mirror image of
    ``merge_horizontal`` across the shared boundary row."""
    if d1.b != d2.b:
        raise ValueError("vertical merge needs a common column substring")
    w = d1.w
    h2 = d2.h
    s1, s2 = d1.s, d2.s
    s = d1.h + h2 + w + 1
    if ceiling is None:
        ceiling = d1.max_finite() + d2.max_finite()
    m1 = d1.substituted(ceiling)
    m2 = d2.substituted(ceiling)
    m2_shifted = m2[h2:]
    out = []
    for i in range(h2):
        out.append(d2.m[i] + [None] * (s - s2))
    out.append(d2.m[h2] + d1.m[0][s2 - h2 :])
    for i in range(h2 + 1, s):
        values = minplus_row(m1[i - h2][: w + 1], m2_shifted, 0, s2)
        row_out = [v if v <= ceiling else None for v in values]
        row_out.extend(d1.m[i - h2][s2 - h2 :])
        out.append(row_out)
    return DistTable(d1.a + d2.a, d1.b, out)


def merge_quad(d11, d12, d21, d22) -> DistTable:
    """Table of the 2x2 block arrangement::

        (a1, b1) (a1, b2)
        (a2, b1) (a2, b2)

    Two horizontal merges followed by one vertical merge."""
    if d11.a != d12.a or d21.a != d22.a or d11.b != d21.b or d12.b != d22.b:
        raise ValueError("quad merge given inconsistent substring references")
    return merge_vertical(merge_horizontal(d11, d12), merge_horizontal(d21, d22))


def apply_inputs(d: DistTable, inputs, _counter=None, _ceiling=None):
    """Output boundary values from input boundary values:
    ``out[j] = min_i inputs[i] + m[i][j]``.

    One SMAWK pass over the implicit matrix, O(s) element queries.  Inputs
    must be finite; every column of a distance table has a reachable entry,
    so the outputs are finite too.
    """
    s = d.s
    if len(inputs) != s:
        raise ValueError(f"expected {s} input values, got {len(inputs)}")
    ceiling = _ceiling
    if ceiling is None:
        ceiling = d.max_finite() + max(inputs)
    sub = d.substituted(ceiling)
    values = minplus_row(inputs, sub, 0, s, _counter)
    if any(v > ceiling for v in values):
        raise InvariantViolation("unreachable output vertex in a grid block")
    return values


_TERMINAL = "__terminal__"


class Repository:
    """Memoized distance tables, one per distinct (variable, kind) pair.

    Keys pair a row-side descriptor with a column-side descriptor, each
    ``(var, kind)`` with kind ``exact`` (the variable's full derivation) or
    ``composite`` (the accumulated gap substring attached to a partition
    path variable).  Construction works bottom-up over an explicit
    worklist, so grammar depth never hits the Python recursion limit:

    * exact x exact   -- merge the four child-pair tables (quad), falling
      back to a single horizontal/vertical merge when one side is a
      terminal, and to direct construction for terminal x terminal;
    * composite sides -- peel the accumulation chain one hanging child at a
      time, merging the previous accumulated table with the child's exact
      table (column side first, so composite x composite reduces to
      composite x exact).

    Every repeated occurrence of a pair is a cache hit, which is where the
    grammar's repetitiveness pays off.
    """

    def __init__(self, slp_a: Slp, slp_b: Slp, part_a, part_b, sf):
        self.sf = sf
        self.memo = {}
        self.direct_builds = 0
        self.merges = 0
        self.cache_hits = 0
        self._sides = (_SideInfo(slp_a, part_a), _SideInfo(slp_b, part_b))
        # One unreachable-detection bound that dominates every finite value
        # the grid can produce, so each table is substituted exactly once.
        max_cost = max(
            max(sf.delete.values()),
            max(sf.insert.values()),
            max(sf.substitute.values()),
        )
        self.ceiling = (len(part_a.text) + len(part_b.text)) * max_cost

    @property
    def memo_size(self) -> int:
        return len(self.memo)

    def lookup(self, key_a, key_b) -> DistTable:
        """Table for an already-built pair; counts a cache hit."""
        table = self.memo[key_a, key_b]
        self.cache_hits += 1
        return table

    def ensure(self, key_a, key_b) -> DistTable:
        """Build (and memoize) the table for a pair and its dependencies."""
        memo = self.memo
        stack = [(key_a, key_b)]
        while stack:
            key = stack[-1]
            if key in memo:
                stack.pop()
                continue
            deps, how = self._dependencies(*key)
            missing = [d for d in deps if d not in memo]
            if missing:
                stack.extend(missing)
                continue
            memo[key] = self._combine(key, how, [memo[d] for d in deps])
            stack.pop()
        return memo[key_a, key_b]

    def _dependencies(self, key_a, key_b):
        va, kind_a = key_a
        vb, kind_b = key_b
        if kind_b == COMPOSITE:
            prev, hang, grows = self._sides[1].chain_link(vb)
            if prev is None:
                return [(key_a, (hang, EXACT))], ("alias", None)
            return (
                [(key_a, (prev, COMPOSITE)), (key_a, (hang, EXACT))],
                ("hmerge", grows),
            )
        if kind_a == COMPOSITE:
            prev, hang, grows = self._sides[0].chain_link(va)
            if prev is None:
                return [((hang, EXACT), key_b)], ("alias", None)
            return (
                [((prev, COMPOSITE), key_b), ((hang, EXACT), key_b)],
                ("vmerge", grows),
            )
        prod_a = self._sides[0].production(va)
        prod_b = self._sides[1].production(vb)
        if prod_a is _TERMINAL and prod_b is _TERMINAL:
            return [], ("direct", None)
        if prod_a is _TERMINAL:
            r, t = prod_b
            return [(key_a, (r, EXACT)), (key_a, (t, EXACT))], ("hmerge", "suffix")
        if prod_b is _TERMINAL:
            p, q = prod_a
            return [((p, EXACT), key_b), ((q, EXACT), key_b)], ("vmerge", "suffix")
        p, q = prod_a
        r, t = prod_b
        return (
            [
                ((p, EXACT), (r, EXACT)),
                ((p, EXACT), (t, EXACT)),
                ((q, EXACT), (r, EXACT)),
                ((q, EXACT), (t, EXACT)),
            ],
            ("quad", None),
        )

    def _combine(self, key, how, tables):
        op, arg = how
        if op == "direct":
            self.direct_builds += 1
            a = self._sides[0].content(key[0])
            b = self._sides[1].content(key[1])
            return build_direct(a, b, self.sf)
        if op == "alias":
            return tables[0]
        ceiling = self.ceiling
        if op == "quad":
            self.merges += 3
            d11, d12, d21, d22 = tables
            return merge_vertical(
                merge_horizontal(d11, d12, ceiling),
                merge_horizontal(d21, d22, ceiling),
                ceiling,
            )
        prev, hang = tables
        self.merges += 1
        if op == "hmerge":
            return (
                merge_horizontal(prev, hang, ceiling)
                if arg == "suffix"
                else merge_horizontal(hang, prev, ceiling)
            )
        return (
            merge_vertical(prev, hang, ceiling)
            if arg == "suffix"
            else merge_vertical(hang, prev, ceiling)
        )


class _SideInfo:
    """Per-string lookup structures the repository recursion needs."""

    def __init__(self, slp: Slp, part: StringPartition):
        self.slp = slp
        self._content = {}
        self._chains = {}
        for p in part.parts:
            if p.kind != COMPOSITE:
                continue
            prev = None
            for path_var, hang_var, _ in p.chain:
                link = (prev, hang_var, p.grows)
                seen = self._chains.get(path_var)
                if seen is not None and seen != link:
                    raise InvariantViolation(
                        f"variable {path_var} accumulates two different substrings"
                    )
                self._chains[path_var] = link
                prev = path_var

    def production(self, var: int):
        prod = self.slp.productions[var]
        return _TERMINAL if isinstance(prod, str) else prod

    def content(self, key) -> str:
        text = self._content.get(key)
        if text is None:
            var, kind = key
            if kind == EXACT:
                text = expand(self.slp, var)
            else:
                # walk the accumulation chain back to the run start
                pieces = []
                v = var
                grows = None
                while v is not None:
                    prev, hang, grows = self._chains[v]
                    pieces.append(expand(self.slp, hang))
                    v = prev
                pieces.reverse()
                text = "".join(pieces) if grows == "suffix" else "".join(reversed(pieces))
            self._content[key] = text
        return text

    def chain_link(self, var: int):
        return self._chains[var]


def build_repository(slp_a, slp_b, part_a, part_b, sf) -> Repository:
    """Tables for every (row part, column part) pair the grid can contain.

    The partitions must have been built with the same block parameter.  The
    number of memo entries is bounded by 4 * n_A * n_B (two kinds per
    variable per side), and each entry costs one direct build or at most
    three merges, which is where the overall O(n^2 x^2) table-building
    bound comes from.
    """
    if part_a.block_size != part_b.block_size:
        raise ValueError("partitions built with different block parameters")
    repo = Repository(slp_a, slp_b, part_a, part_b, sf)
    keys_a = {(p.var, p.kind) for p in part_a.parts}
    keys_b = {(p.var, p.kind) for p in part_b.parts}
    for ka in sorted(keys_a):
        for kb in sorted(keys_b):
            repo.ensure(ka, kb)
    return repo
