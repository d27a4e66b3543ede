"""Column minima of totally monotone matrices, and min-plus products.

Matrices are lists of row lists.  ``None`` marks an unreachable entry
(infinite cost); every other entry is an exact non-negative number.  A
matrix is Monge (concave form) when for all i < i', j < j' with all four
entries finite::

    m[i][j] + m[i'][j'] <= m[i][j'] + m[i'][j]

Column minima of such matrices move weakly down as the column index grows,
which is what the SMAWK algorithm exploits to find all of them with only
O(rows + cols) element queries.  Everything here is pure and stateless;
callers may run independent computations concurrently.
"""

from __future__ import annotations

import os

# When set, min-plus products double-check the substituted matrices and fall
# back to a full scan if total monotonicity does not hold.
STRICT_ENV = "SLPDIST_STRICT"


def strict_checks_enabled() -> bool:
    return bool(os.environ.get(STRICT_ENV))


def smawk_column_minima(nrows: int, ncols: int, entry):
    """All column minima of an implicit totally monotone matrix.

    ``entry(i, j)`` returns the element at 0-based row i, column j; it must
    be finite (run ``substitute_infinities`` first if the source matrix has
    unreachable entries).  Returns ``(values, rows)`` where ``rows[j]`` is
    the smallest row index attaining ``values[j]``.  Ties always break to
    the smallest row so results are reproducible.
    """
    if ncols <= 0:
        return [], []
    if nrows <= 0:
        raise ValueError("matrix must have at least one row")
    best = [None] * ncols
    best_row = [0] * ncols

    def solve(rows, cols):
        if len(rows) > len(cols):
            # REDUCE: drop rows that cannot hold any column minimum.
            kept = []
            for r in rows:
                while kept:
                    c = cols[len(kept) - 1]
                    if entry(kept[-1], c) > entry(r, c):
                        kept.pop()
                    else:
                        break
                if len(kept) < len(cols):
                    kept.append(r)
            rows = kept
        if len(cols) == 1:
            c = cols[0]
            bv = entry(rows[0], c)
            br = rows[0]
            for r in rows[1:]:
                v = entry(r, c)
                if v < bv:
                    bv, br = v, r
            best[c] = bv
            best_row[c] = br
            return
        solve(rows, cols[1::2])
        # Fill the even-position columns; their argmin rows are bracketed by
        # the already-final argmins of the neighbouring odd columns.
        ri = 0
        for ci in range(0, len(cols), 2):
            c = cols[ci]
            stop = best_row[cols[ci + 1]] if ci + 1 < len(cols) else rows[-1]
            bv = None
            br = None
            while True:
                r = rows[ri]
                v = entry(r, c)
                if bv is None or v < bv:
                    bv, br = v, r
                if r == stop:
                    break
                ri += 1
            best[c] = bv
            best_row[c] = br

    solve(list(range(nrows)), list(range(ncols)))
    return best, best_row


def minplus_row(u, rows, jlo, jhi, counter=None):
    """Column minima of the implicit matrix ``u[t] + rows[t][j]`` for j in
    [jlo, jhi), as a list of jhi - jlo values.

    Same algorithm as ``smawk_column_minima`` (REDUCE, recurse on odd
    columns, interpolate between their argmins), with the element
    arithmetic inlined: this is the inner loop of every table merge and of
    the block sweep.  ``u`` and ``rows`` must be fully finite.
    ``counter[0]``, when given, accumulates the element evaluation count.
    """
    ncols = jhi - jlo
    if ncols <= 0:
        return []
    nrows = len(u)
    if nrows == 1:
        u0 = u[0]
        row = rows[0]
        if counter is not None:
            counter[0] += ncols
        return [u0 + row[j] for j in range(jlo, jhi)]
    if nrows * ncols <= 32:
        # below this size the recursion costs more than it saves
        if counter is not None:
            counter[0] += nrows * ncols
        out = []
        for j in range(jlo, jhi):
            best = u[0] + rows[0][j]
            for t in range(1, nrows):
                v = u[t] + rows[t][j]
                if v < best:
                    best = v
            out.append(best)
        return out

    queries = 0
    best = [None] * ncols
    best_row = [0] * ncols
    # each row travels as a (u[t], rows[t], t) triple: one indexing per query
    triples = [(u[t], rows[t], t) for t in range(nrows)]

    def solve(rws, cols):
        nonlocal queries
        ncl = len(cols)
        if len(rws) > ncl:
            kept = []
            for tr in rws:
                ut, rowt, _ = tr
                while kept:
                    c = cols[len(kept) - 1]
                    uk, rowk, _ = kept[-1]
                    queries += 2
                    if uk + rowk[c] > ut + rowt[c]:
                        kept.pop()
                    else:
                        break
                if len(kept) < ncl:
                    kept.append(tr)
            rws = kept
        if len(rws) == 1:
            ut, rowt, t = rws[0]
            queries += ncl
            for c in cols:
                best[c - jlo] = ut + rowt[c]
                best_row[c - jlo] = t
            return
        if ncl <= 2:
            # the constant-size floor of the recursion: scan directly
            queries += len(rws) * ncl
            for c in cols:
                bv = None
                bt = 0
                for ut, rowt, t in rws:
                    v = ut + rowt[c]
                    if bv is None or v < bv:
                        bv, bt = v, t
                best[c - jlo] = bv
                best_row[c - jlo] = bt
            return
        solve(rws, cols[1::2])
        ri = 0
        for ci in range(0, ncl, 2):
            c = cols[ci]
            stop = best_row[cols[ci + 1] - jlo] if ci + 1 < ncl else rws[-1][2]
            bv = None
            bt = 0
            while True:
                ut, rowt, t = rws[ri]
                queries += 1
                v = ut + rowt[c]
                if bv is None or v < bv:
                    bv, bt = v, t
                if t == stop:
                    break
                ri += 1
            best[c - jlo] = bv
            best_row[c - jlo] = bt

    solve(triples, range(jlo, jhi))
    if counter is not None:
        counter[0] += queries
    if strict_checks_enabled():
        check = []
        for j in range(jlo, jhi):
            low = u[0] + rows[0][j]
            for t in range(1, nrows):
                v = u[t] + rows[t][j]
                if v < low:
                    low = v
            check.append(low)
        if check != best:
            import warnings

            warnings.warn(
                "SMAWK disagreed with a full scan; the input was not totally "
                "monotone - falling back to the scanned minima",
                RuntimeWarning,
                stacklevel=2,
            )
            return check
    return best


def brute_column_minima(matrix):
    """Full-scan column minima; the oracle SMAWK is checked against.

    Unreachable (``None``) entries never win; a column with no reachable
    entry reports ``(None, None)``.  Ties break to the smallest row, the
    same rule SMAWK uses.
    """
    if not matrix:
        return [], []
    ncols = len(matrix[0])
    values = [None] * ncols
    rows = [None] * ncols
    for j in range(ncols):
        for i, row in enumerate(matrix):
            v = row[j]
            if v is None:
                continue
            if values[j] is None or v < values[j]:
                values[j] = v
                rows[j] = i
    return values, rows


def max_finite(matrix):
    """Largest reachable entry, or 0 for an all-unreachable matrix."""
    best = None
    for row in matrix:
        for v in row:
            if v is not None and (best is None or v > best):
                best = v
    return 0 if best is None else best


def _row_spans(matrix, ncols):
    """(first, last) finite column per row; empty rows get a synthetic
    one-past span so the substitution stays monotone at the edges."""
    spans = []
    for row in matrix:
        lo = None
        hi = None
        for j in range(ncols):
            if row[j] is not None:
                if lo is None:
                    lo = j
                hi = j
        spans.append((lo, hi))
    prev_hi = -1
    fixed = []
    for lo, hi in spans:
        if lo is None:
            lo, hi = prev_hi + 1, prev_hi
        fixed.append((lo, hi))
        prev_hi = hi
    return fixed


def substitute_infinities(matrix, ceiling=None):
    """Replace unreachable entries by finite stand-ins that keep the matrix
    totally monotone.

    The reachable entries of a boundary distance table form a staircase:
    each row covers a contiguous column range whose ends move weakly right
    on lower rows.  Each unreachable entry is replaced by ``K * d`` where
    ``d`` is its column distance past the row's reachable range and
    ``K = (ceiling + 1) * (rows + cols)``.  Any value exceeding ``ceiling``
    therefore marks an unreachable result, and no stand-in can ever beat a
    reachable entry in its column.

    Returns ``(substituted, ceiling)``.  ``ceiling`` defaults to the largest
    finite entry; callers combining several matrices must pass the largest
    finite value any combination can reach.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if matrix else 0
    if ceiling is None:
        ceiling = max_finite(matrix)
    big = (ceiling + 1) * (nrows + ncols)
    spans = _row_spans(matrix, ncols)
    out = []
    for i, row in enumerate(matrix):
        lo, hi = spans[i]
        new_row = list(row)
        for j in range(ncols):
            if new_row[j] is None:
                d = j - hi if j > hi else lo - j
                new_row[j] = big * d
        out.append(new_row)
    return out, ceiling


def is_monge(matrix, finite_only: bool = True) -> bool:
    """Exhaustive Monge check over all row/column quadruples.

    Quadratic in the entry count; intended for tests and strict mode, not
    for hot paths.  With ``finite_only`` the inequality is only required
    when all four corners are reachable.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if matrix else 0
    for i in range(nrows - 1):
        for i2 in range(i + 1, nrows):
            row_a, row_c = matrix[i], matrix[i2]
            for j in range(ncols - 1):
                a, c = row_a[j], row_c[j]
                for j2 in range(j + 1, ncols):
                    b, d = row_a[j2], row_c[j2]
                    if a is None or b is None or c is None or d is None:
                        if finite_only:
                            continue
                        return False
                    if a + d > b + c:
                        return False
    return True


def is_totally_monotone(matrix) -> bool:
    """2x2 total monotonicity on a fully finite matrix (what SMAWK needs)."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if matrix else 0
    for i in range(nrows - 1):
        for i2 in range(i + 1, nrows):
            for j in range(ncols - 1):
                if matrix[i][j] <= matrix[i2][j]:
                    continue
                for j2 in range(j + 1, ncols):
                    if matrix[i][j2] <= matrix[i2][j2]:
                        return False
    return True


def minplus_multiply(d1, d2):
    """Min-plus matrix product with unreachable propagation.

    ``result[i][j] = min_k d1[i][k] + d2[k][j]`` where an unreachable
    operand makes the term unreachable.  Both operands must be Monge on
    their finite entries with staircase unreachable patterns.  Each output
    row is one SMAWK pass over an implicit finite matrix, so the element
    queries total O(rows * (inner + cols)).
    """
    if not d1 or not d2:
        raise ValueError("empty operand")
    inner = len(d1[0])
    if inner != len(d2):
        raise ValueError(f"inner dimensions differ: {inner} vs {len(d2)}")
    ncols = len(d2[0])
    ceiling = max_finite(d1) + max_finite(d2)
    s1, _ = substitute_infinities(d1, ceiling)
    s2, _ = substitute_infinities(d2, ceiling)
    strict = strict_checks_enabled()
    out = []
    for i in range(len(d1)):
        row1 = s1[i]
        if strict and not is_totally_monotone(
            [[row1[k] + s2[k][j] for j in range(ncols)] for k in range(inner)]
        ):
            values = [
                min(row1[k] + s2[k][j] for k in range(inner)) for j in range(ncols)
            ]
        else:
            values = minplus_row(row1, s2, 0, ncols)
        out.append([v if v <= ceiling else None for v in values])
    return out
