"""Exact integer linear algebra: Hermite and Smith normal forms, integer
kernels, and invariant factors of finitely generated quotients.

Everything works on lists of lists of Python ints; no floating point.  The
algorithms are the classical elementary-operation ones (see e.g.
https://en.wikipedia.org/wiki/Smith_normal_form#Algorithm), which are entirely
adequate at desk scale.
"""

from dataclasses import dataclass, field
from math import gcd, prod


@dataclass
class IntegerMatrix:
    """A dense integer matrix with optional row/column labels."""

    entries: list
    row_labels: list = field(default_factory=list)
    col_labels: list = field(default_factory=list)

    def __post_init__(self):
        if self.row_labels and len(self.row_labels) != len(self.entries):
            raise ValueError("row label count does not match row count")
        if self.entries and self.col_labels and len(self.col_labels) != len(self.entries[0]):
            raise ValueError("column label count does not match column count")

    @property
    def nrows(self):
        return len(self.entries)

    @property
    def ncols(self):
        return len(self.entries[0]) if self.entries else len(self.col_labels)


def hermite_form(rows, ncols=None):
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns a new list of rows in echelon form with positive pivots and
    entries above each pivot reduced to [0, pivot).  Zero rows are dropped.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    work = [list(r) for r in rows if any(r)]
    basis = []
    col = 0
    while col < ncols and work:
        live = [r for r in work if r[col] != 0]
        if not live:
            col += 1
            continue
        # Reduce the column to a single nonzero entry by gcd steps.
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            pivot = live[0]
            for r in live[1:]:
                q = r[col] // pivot[col]
                for j in range(col, ncols):
                    r[j] -= q * pivot[j]
            live = [r for r in live if r[col] != 0]
        pivot = live[0]
        if pivot[col] < 0:
            for j in range(col, ncols):
                pivot[j] = -pivot[j]
        work = [r for r in work if r is not pivot and any(r)]
        basis.append(pivot)
        col += 1
    # Reduce entries above each pivot.
    pivots = [(next(j for j, v in enumerate(row) if v != 0), row) for row in basis]
    for i, (pcol, prow) in enumerate(pivots):
        for k in range(i):
            above = pivots[k][1]
            q = above[pcol] // prow[pcol]
            if q:
                for j in range(pcol, len(prow)):
                    above[j] -= q * prow[j]
    return basis


def kernel_basis(rows, ncols):
    """Basis of the integer right kernel {v : M v = 0} of the matrix ``rows``.

    Uses the standard trick: row-reduce [M^T | I] and collect the I-parts of
    the rows whose M^T-part vanished.
    """
    nrows = len(rows)
    augmented = []
    for j in range(ncols):
        augmented.append([rows[i][j] for i in range(nrows)] + [int(i == j) for i in range(ncols)])
    reduced = hermite_form(augmented, nrows + ncols)
    kernel = [row[nrows:] for row in reduced if not any(row[:nrows])]
    # hermite_form dropped fully-zero rows, but a kernel vector is never zero
    # here because the identity block keeps every augmented row nonzero.
    return hermite_form(kernel, ncols)


def kernel_basis_mod(rows, ncols, modulus):
    """Lattice L of v in Z^ncols with M v = 0 mod ``modulus`` (L contains mZ^n)."""
    if modulus == 0:
        return kernel_basis(rows, ncols)
    nrows = len(rows)
    padded = [list(r) + [modulus if i == j else 0 for j in range(nrows)] for i, r in enumerate(rows)]
    lifted = kernel_basis(padded, ncols + nrows)
    return hermite_form([v[:ncols] for v in lifted], ncols)


def solve_in_lattice(hnf_rows, target):
    """Integer coefficients expressing ``target`` over the HNF basis, or None."""
    residue = list(target)
    coeffs = []
    for row in hnf_rows:
        pcol = next(j for j, v in enumerate(row) if v != 0)
        q, r = divmod(residue[pcol], row[pcol])
        if r != 0:
            return None
        coeffs.append(q)
        if q:
            for j in range(pcol, len(residue)):
                residue[j] -= q * row[j]
    return coeffs if not any(residue) else None


def in_lattice(hnf_rows, target):
    return solve_in_lattice(hnf_rows, target) is not None


def smith_diagonal(rows, ncols=None):
    """Positive diagonal d_1 | d_2 | ... of the Smith normal form (length = rank)."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    m = [list(r) for r in rows if any(r)]
    diagonal = []
    t = 0  # column offset of the untreated block
    while m and t < ncols:
        while True:
            # Clear column t below the pivot (gcd loop via row operations).
            while True:
                live = [i for i in range(1, len(m)) if m[i][t] != 0]
                if m[0][t] == 0:
                    if not live:
                        break
                    m[0], m[live[0]] = m[live[0]], m[0]
                    continue
                if not live:
                    break
                for i in live:
                    q = m[i][t] // m[0][t]
                    for j in range(t, ncols):
                        m[i][j] -= q * m[0][j]
                    if m[i][t]:
                        m[0], m[i] = m[i], m[0]
            if m[0][t] == 0:
                # Whole column is zero: swap in a later column with content.
                swap = next(
                    (j for j in range(t + 1, ncols) if any(row[j] for row in m)), None
                )
                if swap is None:
                    return diagonal
                for row in m:
                    row[t], row[swap] = row[swap], row[t]
                continue
            # Clear row 0 right of the pivot (gcd loop via column operations).
            row_clear = True
            for j in range(t + 1, ncols):
                while m[0][j]:
                    q = m[0][j] // m[0][t]
                    for row in m:
                        row[j] -= q * row[t]
                    if m[0][j]:
                        for row in m:
                            row[t], row[j] = row[j], row[t]
                        row_clear = False
            # Column swaps may have reintroduced entries below the pivot.
            if row_clear and all(m[i][t] == 0 for i in range(1, len(m))):
                break
        pivot = abs(m[0][t])
        # The pivot must divide every remaining entry; otherwise fold the
        # offending row into the pivot row and redo this step.
        culprit = next(
            (row for row in m[1:] if any(v % pivot for v in row[t:])), None
        )
        if culprit is not None:
            for j in range(t, ncols):
                m[0][j] += culprit[j]
            continue
        diagonal.append(pivot)
        m = [row for row in m[1:] if any(row[t + 1 :])]
        t += 1
    return diagonal


def smith_normal_form(matrix):
    """Invariant factors d_1 | ... | d_r of an IntegerMatrix (rank many)."""
    return smith_diagonal(matrix.entries, matrix.ncols)


def cokernel_factors(ncols, relation_rows, ring, column_annihilators=None):
    """Invariant factors of Z^ncols (with per-column annihilators) modulo rows.

    Over Z/m the m*identity relations are adjoined before the SNF, so a free
    column contributes a Z/m summand.  The result is the canonical chain
    d_1 | d_2 | ... with 1s dropped and one 0 per free summand.
    """
    rows = [list(r) for r in relation_rows]
    if column_annihilators:
        for j, d in enumerate(column_annihilators):
            if d:
                rows.append([d if i == j else 0 for i in range(ncols)])
    if ring.modulus:
        for j in range(ncols):
            rows.append([ring.modulus if i == j else 0 for i in range(ncols)])
    # Hermite reduction first: cheap, and it caps the row count at ncols
    # before the quadratic Smith elimination runs.
    diagonal = smith_diagonal(hermite_form(rows, ncols), ncols)
    chain = [d for d in diagonal if d != 1]
    chain.extend([0] * (ncols - len(diagonal)))
    return tuple(chain)


def _factorize(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariant_factor_chain(cyclic_orders, ring):
    """Canonical chain for a direct sum of cyclic modules of given orders.

    ``cyclic_orders`` uses the annihilator convention (0 = free summand);
    orders are first collapsed through ``ring.effective_annihilator``, trivial
    summands dropped, and the rest merged into the divisibility chain, so the
    output is directly comparable with ``cokernel_factors``.
    """
    free = 0
    by_prime = {}
    for d in cyclic_orders:
        order = ring.effective_annihilator(d)
        if order == 0:
            free += 1
        elif order > 1:
            for p, e in _factorize(order).items():
                by_prime.setdefault(p, []).append(e)
    depth = max((len(v) for v in by_prime.values()), default=0)
    chain = []
    for level in range(depth, 0, -1):
        factor = prod(p ** sorted(es, reverse=True)[level - 1] for p, es in by_prime.items() if len(es) >= level)
        chain.append(factor)
    chain.extend([0] * free)
    return tuple(chain)


def determinant(rows):
    """Exact determinant by fraction-free Gaussian elimination (Bareiss)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
