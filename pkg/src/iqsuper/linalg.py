"""Exact sparse linear algebra over the scalar field.

Vectors are dicts keyed by arbitrary sortable-representable coordinates;
a SpanBasis keeps an echelon family keyed by pivot, which gives ranks,
membership tests, and deterministic reduction without ever fixing a
global coordinate order up front.
"""

from __future__ import annotations

from .scalars import ONE, ZERO


def _key_order(k):
    return repr(k)


def vec_sub_scaled(vec, row, c):
    out = dict(vec)
    for k, v in row.items():
        s = out.get(k, ZERO) - c * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


class SpanBasis:
    """Echelon basis of a growing span; add() reports genuine growth."""

    def __init__(self):
        self.rows = {}

    def reduce(self, vec):
        vec = dict(vec)
        while vec:
            piv = min(vec, key=_key_order)
            row = self.rows.get(piv)
            if row is None:
                return vec, piv
            vec = vec_sub_scaled(vec, row, vec[piv])
        return vec, None

    def add(self, vec):
        red, piv = self.reduce(vec)
        if piv is None:
            return False
        inv = red[piv].inverse()
        self.rows[piv] = {k: v * inv for k, v in red.items()}
        return True

    def contains(self, vec):
        red, piv = self.reduce(vec)
        return piv is None

    @property
    def dim(self):
        return len(self.rows)


def solve_unique(rows, rhs):
    """Solve the stacked sparse system; require a unique solution.

    rows: list of (coeff dict over unknown-keys); rhs: list of Scalars.
    Returns {unknown: Scalar}; raises ArithmeticError when the system is
    inconsistent or underdetermined.
    """
    work = [(dict(r), c) for r, c in zip(rows, rhs)]
    pivots = {}
    for row, c in work:
        row = dict(row)
        while row:
            piv = min(row, key=_key_order)
            if piv in pivots:
                prow, pc = pivots[piv]
                f = row[piv]
                row = vec_sub_scaled(row, prow, f)
                c = c - f * pc
            else:
                inv = row[piv].inverse()
                pivots[piv] = ({k: v * inv for k, v in row.items()}, c * inv)
                break
        else:
            if c:
                raise ArithmeticError("inconsistent linear system")
    unknowns = {k for row, _ in work for k in row}
    missing = unknowns - set(pivots)
    if missing:
        raise ArithmeticError(f"underdetermined system: {sorted(map(repr, missing))[:3]}")
    sol = {}
    for piv in sorted(pivots, key=_key_order, reverse=True):
        row, c = pivots[piv]
        val = c
        for k, v in row.items():
            if k != piv:
                val = val - v * sol[k]
        sol[piv] = val
    return sol


def kernel_is_trivial(rows):
    """True when the stacked rows have full column rank."""
    unknowns = sorted({k for r in rows for k in r}, key=_key_order)
    span = SpanBasis()
    rank = 0
    for r in rows:
        if span.add(r):
            rank += 1
            if rank == len(unknowns):
                return True
    return rank == len(unknowns)


def kernel_basis(rows, unknowns):
    """Nullspace basis of the stacked rows over the given unknown keys."""
    unknowns = sorted(unknowns, key=_key_order)
    pivots = {}
    for row in rows:
        row = dict(row)
        while row:
            piv = min(row, key=_key_order)
            if piv in pivots:
                row = vec_sub_scaled(row, pivots[piv], row[piv])
            else:
                inv = row[piv].inverse()
                pivots[piv] = {k: v * inv for k, v in row.items()}
                break
    for piv in sorted(pivots, key=_key_order, reverse=True):
        row = pivots[piv]
        for other, orow in pivots.items():
            if other != piv and piv in orow:
                pivots[other] = vec_sub_scaled(orow, row, orow[piv])
    free = [k for k in unknowns if k not in pivots]
    basis = []
    for fv in free:
        vec = {fv: ONE}
        for piv, row in pivots.items():
            c = row.get(fv, ZERO)
            if c:
                vec[piv] = -c
        basis.append(vec)
    return basis
