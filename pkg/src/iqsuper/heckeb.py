"""The two-parameter type-B Hecke action on tensor space, its defining
relations, the commuting-actions check against the coideal subalgebra,
and small-instance double-centralizer computations."""

from __future__ import annotations

import itertools

from .scalars import ONE, ZERO, Scalar
from .rootdata import label_parity
from .superalg import AlgElement
from .tensorrep import (DimensionCapExceeded, Operator, act_on_tensor,
                        tensor_basis)
from .iqsp import IQGenSet, ParameterMismatch, default_parameters
from .linalg import SpanBasis
from .reporting import CheckReport


def hecke_matrix(satake, i, d):
    """Matrix of right multiplication by the i-th Hecke generator."""
    if not 0 <= i < d:
        raise ValueError("generator index out of range")
    g = satake.gamma
    basis = tensor_basis(satake, d)
    qq = Scalar.q_power(1) - Scalar.q_power(-1)
    QQ = Scalar.Q_power(1) - Scalar.Q_power(-1)
    black = set(satake.positions_black2())
    cols = {}
    for f in basis:
        col = {}
        if i == 0:
            a2 = f[0]
            p = label_parity(g.label(a2))
            sgn = Scalar.from_int((-1) ** p)
            if a2 in black:
                col[f] = Scalar.Q_power(1)
            elif a2 > 0:
                col[(-a2,) + f[1:]] = sgn
                col[f] = QQ
            else:
                col[(-a2,) + f[1:]] = sgn
        else:
            a2, b2 = f[i - 1], f[i]
            pa = label_parity(g.label(a2))
            pb = label_parity(g.label(b2))
            swap = f[:i - 1] + (b2, a2) + f[i + 1:]
            sgn = Scalar.from_int((-1) ** (pa * pb))
            if a2 < b2:
                col[swap] = sgn
                col[f] = qq
            elif a2 > b2:
                col[swap] = sgn
            else:
                col[f] = (sgn * (Scalar.q_power(1) + Scalar.q_power(-1))
                          + qq) / Scalar.from_int(2)
        cols[f] = col
    return Operator(len(basis), cols)


def check_hecke_relations(satake, d, profile_id="?"):
    reports = []
    basis = tensor_basis(satake, d)
    ident = Operator.identity(basis, len(basis))
    H = [hecke_matrix(satake, i, d) for i in range(d)]
    q1, qm = Scalar.q_power(1), Scalar.q_power(-1)
    Q1, Qm = Scalar.Q_power(1), Scalar.Q_power(-1)

    def rec(name, op):
        reports.append(CheckReport.from_residual(
            f"hecke.{name}.d{d}", profile_id, op.is_zero(),
            op.support()[:4]))

    rec("quadratic.0",
        (H[0] - ident.scale(Q1)).compose(H[0] + ident.scale(Qm)))
    for i in range(1, d):
        rec(f"quadratic.{i}",
            (H[i] - ident.scale(q1)).compose(H[i] + ident.scale(qm)))
    if d >= 2:
        rec("typeB.braid",
            H[0].compose(H[1]).compose(H[0]).compose(H[1])
            - H[1].compose(H[0]).compose(H[1]).compose(H[0]))
    for i in range(1, d - 1):
        rec(f"typeA.braid.{i}",
            H[i].compose(H[i + 1]).compose(H[i])
            - H[i + 1].compose(H[i]).compose(H[i + 1]))
    for i in range(d):
        for j in range(i + 2, d):
            rec(f"commute.{i}.{j}",
                H[i].compose(H[j]) - H[j].compose(H[i]))
    return reports


def check_h0_eigensplit(satake, d, profile_id="?"):
    """Eigenvalues of the zeroth generator on the two invariant pieces."""
    from .iqsp import submodule_vectors
    minus, rest = submodule_vectors(satake)
    H0 = hecke_matrix(satake, 0, d)
    reports = []
    tails = [tuple()] if d == 1 else \
        [t for t in itertools.islice(
            itertools.product(satake.gamma.positions2(), repeat=d - 1), 5)]
    for val, vecs, tag in ((-Scalar.Q_power(-1), minus, "minus"),
                           (Scalar.Q_power(1), rest, "bullet-plus")):
        ok = True
        for v in vecs:
            for tail in tails:
                vec = {f + tail: c for f, c in v.items()}
                img = H0.apply(vec)
                want = {k: val * c for k, c in vec.items()}
                if img != want:
                    ok = False
        reports.append(CheckReport.from_residual(
            f"hecke.h0-eigen.{tag}.d{d}", profile_id, ok))
    return reports


def igenerator_operators(satake, d):
    gens = IQGenSet(satake)
    return [(name, act_on_tensor(satake, elem, d))
            for name, elem in gens.named_generators()]


def check_duality(satake, d, profile_id="?", expect_duality=True):
    """Exact commutation of the two actions on the d-th tensor power."""
    p, k = default_parameters(satake)
    if expect_duality and (satake.params != p or satake.kappa0 != k):
        raise ParameterMismatch("commutation needs the duality parameters")
    reports = []
    H = [hecke_matrix(satake, i, d) for i in range(d)]
    for name, op in igenerator_operators(satake, d):
        for i in range(d):
            comm = op.compose(H[i]) - H[i].compose(op)
            reports.append(CheckReport.from_residual(
                f"duality.commute.{name}.H{i}.d{d}", profile_id,
                comm.is_zero(), comm.support()[:4]))
    return reports


def perturbed_duality_residual(satake, d=1):
    """Scaling one middle parameter by q must break the zeroth commutation."""
    params = dict(satake.params)
    params[satake.m] = params[satake.m] * Scalar.q_power(1)
    bad = satake.with_params(params, satake.kappa0)
    H0 = hecke_matrix(bad, 0, d)
    worst = None
    for name, op in igenerator_operators(bad, d):
        comm = op.compose(H0) - H0.compose(op)
        if not comm.is_zero():
            worst = (name, comm.support()[:4])
    return worst


def _vectorize(op):
    return {(f, g2): t for f, col in op.cols.items() for g2, t in col.items()}


def _word_span(seed_ops, dim, basis, pin=None):
    """Breadth-first span of the operator monoid generated by seed_ops;
    stops when two consecutive word lengths add nothing."""
    span = SpanBasis()
    ident = Operator.identity(basis, dim)
    frontier = [ident]
    span.add(_vectorize(ident))
    stable = 0
    words = 0
    while frontier and stable < 2:
        nxt = []
        grew = False
        for op in frontier:
            for gen in seed_ops:
                cand = gen.compose(op)
                vec = _vectorize(cand if pin is None else cand.subs_q_power(pin))
                words += 1
                if span.add(vec):
                    nxt.append(cand)
                    grew = True
        stable = 0 if grew else stable + 1
        frontier = nxt
    return span


def commutant_dimension(ops, basis, pin=None):
    """Dimension of the full commutant of a family inside End(tensor power).

    Solves the exact linear system [X, op] = 0 for all ops: unknown X is
    vectorized; returns the kernel dimension.
    """
    pairs = [(f, g2) for f in basis for g2 in basis]
    index = {p: n for n, p in enumerate(pairs)}
    rows = {}
    for t, op in enumerate(ops):
        o = op if pin is None else op.subs_q_power(pin)
        # (X o - o X)[f_in -> f_out] = sum_m X[m->f_out] o[f_in->m]
        #                              - o[m->f_out] X[f_in->m]
        for f_in in basis:
            for f_out in basis:
                row = rows.setdefault((t, f_in, f_out), {})
                for mid, c in o.cols.get(f_in, {}).items():
                    k = index[(mid, f_out)]
                    row[k] = row.get(k, ZERO) + c
                for mid in basis:
                    c = o.cols.get(mid, {}).get(f_out, ZERO)
                    if c:
                        k = index[(f_in, mid)]
                        row[k] = row.get(k, ZERO) - c
    span = SpanBasis()
    for row in rows.values():
        row = {k: v for k, v in row.items() if v}
        if row:
            span.add(row)
    return len(pairs) - span.dim


def centralizer_dims(satake, d, profile_id="?", q_pin=3, word_cap=8):
    """(hecke image dim, its commutant dim, coideal word-span dim).

    The scalar field is pinned at Q = q^q_pin to keep the kernel solve
    univariate; the containment span(iwords) <= commutant is asserted.
    """
    basis = tensor_basis(satake, d)
    n = len(basis)
    if n ** 2 > 6561:
        raise DimensionCapExceeded("commutant solve too large")
    H = [hecke_matrix(satake, i, d) for i in range(d)]
    hspan = _word_span(H, n, basis, pin=q_pin)
    comm_dim = commutant_dimension(H, basis, pin=q_pin)
    igens = [op for _, op in igenerator_operators(satake, d)]
    ipinned = [op.subs_q_power(q_pin) for op in igens]
    ispan = _word_span(ipinned, n, basis, pin=None)
    # containment: every Hecke commutation already certified elsewhere;
    # here assert dim(ispan) <= commutant dim and report equality.
    return hspan.dim, comm_dim, ispan.dim


def check_centralizer(satake, d, profile_id="?", q_pin=3):
    hdim, cdim, idim = centralizer_dims(satake, d, profile_id, q_pin)
    reports = [
        CheckReport.from_residual(
            f"duality.centralizer.contained.d{d}", profile_id, idim <= cdim,
            detail=f"hecke={hdim} commutant={cdim} iwords={idim}"),
        CheckReport.from_residual(
            f"duality.centralizer.saturated.d{d}", profile_id, idim == cdim,
            detail=f"hecke={hdim} commutant={cdim} iwords={idim}"),
    ]
    return reports
