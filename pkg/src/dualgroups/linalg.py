"""Exact linear algebra: RREF over a field, Howell forms over Z/p^N.

Field routines work on lists of lists of field elements.  The Z/p^N
routines (p prime) implement enough of the theory of modules over a chain
ring for the Dieudonne layer: canonical row spans, membership, kernels and
solving, all with plain int arithmetic mod p^N.
"""

from __future__ import annotations


# ---------------------------------------------------------------------------
# field linear algebra


def rref(rows, field):
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c] != field.zero:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(x, inv) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != field.zero:
                f = rows[i][c]
                rows[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(rows, ncols, field):
    """Basis of the right kernel of the matrix, in RREF with pivot pattern.

    Each basis vector has a 1 in its own free column and zeros in the other
    free columns, so coordinates can be read off at the free columns.
    """
    red, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(red[r][fc])
        basis.append(v)
    return basis, free


def solve(rows, rhs, field):
    """One solution of A x = b, or None.  rows: list of rows of A."""
    if not rows:
        return None if any(b != field.zero for b in rhs) else []
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, field)
    for row in red:
        if all(x == field.zero for x in row[:ncols]) and row[ncols] != field.zero:
            return None
    x = [field.zero] * ncols
    for r, pc in enumerate(pivots):
        if pc == ncols:
            return None
        x[pc] = red[r][ncols]
    return x


def matmul(a, b, field):
    return [
        [
            _dotf(row, [b[k][j] for k in range(len(b))], field)
            for j in range(len(b[0]))
        ]
        for row in a
    ]


def _dotf(u, v, field):
    s = field.zero
    for x, y in zip(u, v):
        s = field.add(s, field.mul(x, y))
    return s


def det(rows, field):
    """Determinant by fraction-free-ish Gaussian elimination over a field."""
    rows = [list(r) for r in rows]
    n = len(rows)
    sign = field.one
    acc = field.one
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if rows[i][c] != field.zero:
                pivot = i
                break
        if pivot is None:
            return field.zero
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            sign = field.neg(sign)
        acc = field.mul(acc, rows[c][c])
        inv = field.inv(rows[c][c])
        for i in range(c + 1, n):
            if rows[i][c] != field.zero:
                f = field.mul(rows[i][c], inv)
                rows[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[c])]
    return field.mul(sign, acc)


# ---------------------------------------------------------------------------
# Z/p^N linear algebra (chain ring)


def _val(x, p, N):
    """p-adic valuation of x mod p^N (N for x == 0)."""
    x %= p**N
    if x == 0:
        return N
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _unit_part(x, p, N):
    v = _val(x, p, N)
    if v >= N:
        return 1
    return x // (p**v) % (p**N)


def zpn_howell(rows, p, N):
    """Howell form of the row span in (Z/p^N)^n.

    Rows are echelonized with pivots p^v (minimal valuation first), every
    entry above a pivot reduced mod the pivot, and for each pivot p^v with
    v > 0 the row p^(N-v) * row is re-inserted so the span is closed under
    the operations needed for membership testing.  The result is a
    canonical generating set of the row span.
    """
    mod = p**N
    work = [tuple(x % mod for x in r) for r in rows if any(x % mod for x in r)]
    n = len(work[0]) if work else 0
    result = []
    col = 0
    while work and col < n:
        best = None
        bestv = N
        for i, r in enumerate(work):
            v = _val(r[col], p, N)
            if v < bestv:
                best, bestv = i, v
        if best is None or bestv >= N:
            col += 1
            continue
        row = list(work.pop(best))
        u = _unit_part(row[col], p, N)
        uinv = pow(u, -1, mod)
        row = [x * uinv % mod for x in row]  # pivot becomes p^bestv
        piv = p**bestv
        new_work = []
        for r in work:
            if r[col] % mod:
                # bestv is minimal valuation in this column, so piv divides
                f = r[col] // piv
                r2 = tuple((x - f * y) % mod for x, y in zip(r, row))
            else:
                r2 = r
            if any(r2):
                new_work.append(r2)
        work = new_work
        if bestv > 0:
            killer = p ** (N - bestv)
            extra = tuple(x * killer % mod for x in row)
            if any(extra):
                work.append(extra)
        result.append((col, bestv, row))
        col += 1
    # back-reduce entries above pivots
    result.sort()
    for i, (c, v, row) in enumerate(result):
        piv = p**v
        for j in range(i):
            cj, vj, rowj = result[j]
            f = rowj[c] // piv
            if f:
                rowj2 = [(x - f * y) % mod for x, y in zip(rowj, row)]
                result[j] = (cj, vj, rowj2)
    return [row for (_, _, row) in result]


def zpn_reduce(vec, howell_rows, p, N):
    """Residue of vec modulo the span of Howell rows; zero iff member."""
    mod = p**N
    v = [x % mod for x in vec]
    for row in howell_rows:
        c = next((i for i, x in enumerate(row) if x), None)
        if c is None:
            continue
        piv = row[c]
        if v[c] and v[c] % piv == 0:
            f = v[c] // piv
            v = [(x - f * y) % mod for x, y in zip(v, row)]
    return v


def zpn_in_span(vec, howell_rows, p, N):
    return not any(zpn_reduce(vec, howell_rows, p, N))


def zpn_length(howell_rows, p, N):
    """log_p of the cardinality of the span."""
    total = 0
    for row in howell_rows:
        c = next((i for i, x in enumerate(row) if x), None)
        if c is not None:
            total += N - _val(row[c], p, N)
    return total


def zpn_kernel(rows, p, N):
    """Generators of {x : x A = 0} for the matrix with the given rows.

    Left kernel of the row matrix: augment with an identity tracker and
    read off tracker rows whose matrix part vanished, plus p-complement
    multiples of pivot rows.
    """
    mod = p**N
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    aug = [list(r) + [0] * m for r in rows]
    for i in range(m):
        aug[i][n + i] = 1
    how = zpn_howell(aug, p, N)
    out = []
    for row in how:
        lead = next((i for i, x in enumerate(row) if x), None)
        if lead is not None and lead >= n:
            out.append([x % mod for x in row[n:]])
    return [r for r in out if any(r)]


def zpn_right_kernel(rows, p, N):
    """Generators of {x : A x = 0} (column-vector kernel)."""
    if not rows:
        return []
    n = len(rows[0])
    at = [[rows[i][j] for i in range(len(rows))] for j in range(n)]
    return zpn_kernel(at, p, N)


def zpn_solve(rows_T, rhs, p, N):
    """One solution x of A x = b over Z/p^N, or None.

    rows_T: the matrix given as rows of A (not transposed); standard solve.
    """
    mod = p**N
    m = len(rows_T)
    if m == 0:
        return None if any(b % mod for b in rhs) else []
    n = len(rows_T[0])
    # solve via Howell on the transpose-with-tracker: x A = b form
    # we need A x = b; treat columns as combination of columns -> use
    # y (A^T) = b with y = x.
    at_rows = [[rows_T[i][j] for i in range(m)] for j in range(n)]
    aug = [list(r) + [0] * n for r in at_rows]
    for i in range(n):
        aug[i][m + i] = 1
    how = zpn_howell(aug, p, N)
    target = [b % mod for b in rhs]
    x = [0] * n
    v = list(target)
    for row in how:
        c = next((i for i, val in enumerate(row[:m]) if val), None)
        if c is None:
            continue
        piv = row[c]
        if v[c] and v[c] % piv == 0:
            f = v[c] // piv
            v = [(a - f * b) % mod for a, b in zip(v, row[:m])]
            x = [(a - f * b) % mod for a, b in zip(x, row[m:])]
    if any(v):
        return None
    return [(-a) % mod for a in x]
