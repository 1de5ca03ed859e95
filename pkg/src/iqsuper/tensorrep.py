"""The natural representation, its tensor powers under the coproduct, and
sparse exact operators on them.

Basis vectors of the natural module are indexed by (doubled) positions;
a tensor basis vector is a tuple of positions.  Operators are stored
column-sparse with Scalar entries and compared exactly.
"""

from __future__ import annotations

import itertools

from .scalars import ONE, ZERO, Scalar, format_scalar
from .rootdata import bilinear_form, label_parity, pair_coweight, wt_scale
from .superalg import AlgElement, sym_E, sym_F, sym_K


class DimensionCapExceeded(ValueError):
    pass


class RequiresExtraAssumption(ValueError):
    pass


DIMENSION_CAP = 4096


class Operator:
    """Column-sparse matrix on the tensor basis: cols[f_in][f_out] = entry."""

    __slots__ = ("cols", "dim")

    def __init__(self, dim, cols=None):
        self.dim = dim
        self.cols = cols if cols is not None else {}

    @staticmethod
    def identity(basis, dim):
        return Operator(dim, {f: {f: ONE} for f in basis})

    def entry(self, f_in, f_out):
        return self.cols.get(f_in, {}).get(f_out, ZERO)

    def apply(self, vec):
        out = {}
        for f_in, c in vec.items():
            for f_out, t in self.cols.get(f_in, {}).items():
                s = out.get(f_out, ZERO) + c * t
                if s:
                    out[f_out] = s
                else:
                    out.pop(f_out, None)
        return out

    def compose(self, other):
        """self after other."""
        cols = {}
        for f_in, col in other.cols.items():
            acc = {}
            for mid, c in col.items():
                for f_out, t in self.cols.get(mid, {}).items():
                    s = acc.get(f_out, ZERO) + t * c
                    if s:
                        acc[f_out] = s
                    else:
                        acc.pop(f_out, None)
            if acc:
                cols[f_in] = acc
        return Operator(self.dim, cols)

    def __add__(self, other):
        cols = {f: dict(col) for f, col in self.cols.items()}
        for f_in, col in other.cols.items():
            acc = cols.setdefault(f_in, {})
            for f_out, t in col.items():
                s = acc.get(f_out, ZERO) + t
                if s:
                    acc[f_out] = s
                else:
                    acc.pop(f_out, None)
            if not acc:
                del cols[f_in]
        return Operator(self.dim, cols)

    def __neg__(self):
        return Operator(self.dim, {f: {g: -t for g, t in col.items()}
                                   for f, col in self.cols.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if c.is_zero():
            return Operator(self.dim)
        return Operator(self.dim, {f: {g: c * t for g, t in col.items()}
                                   for f, col in self.cols.items()})

    def is_zero(self):
        return not self.cols

    def __eq__(self, other):
        return isinstance(other, Operator) and (self - other).is_zero()

    def support(self):
        return sorted((f, g) for f, col in self.cols.items() for g in col)

    def tensor(self, other, basis_self, basis_other):
        cols = {}
        for f1 in basis_self:
            col1 = self.cols.get(f1, {})
            for f2 in basis_other:
                col2 = other.cols.get(f2, {})
                acc = {}
                for g1, c1 in col1.items():
                    for g2, c2 in col2.items():
                        acc[g1 + g2] = c1 * c2
                if acc:
                    cols[f1 + f2] = acc
        return Operator(self.dim * other.dim, cols)

    def subs_q_power(self, c):
        cols = {}
        for f, col in self.cols.items():
            acc = {}
            for g, t in col.items():
                v = t.subs_q_power(c)
                if v:
                    acc[g] = v
            if acc:
                cols[f] = acc
        return Operator(self.dim, cols)

    def dump(self, d):
        entries = []
        for f_in, col in sorted(self.cols.items()):
            for f_out, t in sorted(col.items()):
                entries.append([_fmt_index(f_in), _fmt_index(f_out),
                                format_scalar(t)])
        return {"dim": d, "entries": entries}


def _fmt_index(f):
    from fractions import Fraction
    return [str(Fraction(a2, 2)) for a2 in f]


def tensor_basis(satake, d):
    n = satake.gamma.size
    if n ** d > DIMENSION_CAP:
        raise DimensionCapExceeded(f"{n}^{d} exceeds the operator cap")
    return [tuple(f) for f in
            itertools.product(satake.gamma.positions2(), repeat=d)]


def weight_of_vector(satake, a2):
    return {satake.gamma.label(a2): 1}


def vector_parity(satake, a2):
    return label_parity(satake.gamma.label(a2))


def _symbol_operator(satake, sym, d):
    """The iterated-coproduct action of one generator symbol."""
    g = satake.gamma
    basis = tensor_basis(satake, d)
    cols = {}
    kind = sym[0]
    if kind == "E":
        j2 = sym[1]
        pj = g.parity(j2)
        alpha = g.alpha(j2)
        for f in basis:
            acc = {}
            left = ONE
            for t in range(d):
                if f[t] == j2 + 1:
                    out = f[:t] + (j2 - 1,) + f[t + 1:]
                    s = acc.get(out, ZERO) + left
                    if s:
                        acc[out] = s
                    else:
                        acc.pop(out, None)
                lab = g.label(f[t])
                fac = Scalar.q_power(bilinear_form(alpha, {lab: 1}))
                if pj and label_parity(lab):
                    fac = -fac
                left = left * fac
            if acc:
                cols[f] = acc
    elif kind == "F":
        j2 = sym[1]
        pj = g.parity(j2)
        alpha = g.alpha(j2)
        for f in basis:
            acc = {}
            for t in range(d):
                if f[t] != j2 - 1:
                    continue
                coeff = ONE
                for u in range(t):
                    if pj and label_parity(g.label(f[u])):
                        coeff = -coeff
                for u in range(t + 1, d):
                    coeff = coeff * Scalar.q_power(
                        -bilinear_form(alpha, {g.label(f[u]): 1}))
                out = f[:t] + (j2 + 1,) + f[t + 1:]
                s = acc.get(out, ZERO) + coeff
                if s:
                    acc[out] = s
                else:
                    acc.pop(out, None)
            if acc:
                cols[f] = acc
    elif kind == "K":
        j2, eps = sym[1], sym[2]
        alpha = g.alpha(j2)
        for f in basis:
            ex = sum(bilinear_form(alpha, {g.label(a2): 1}) for a2 in f)
            cols[f] = {f: Scalar.q_power(eps * ex)}
    elif kind == "C":
        h = dict(sym[1])
        for f in basis:
            ex = sum(pair_coweight(h, {g.label(a2): 1}) for a2 in f)
            cols[f] = {f: Scalar.q_power(ex)}
    elif kind == "R":
        for f in basis:
            sgn = sum(label_parity(g.label(a2)) for a2 in f) % 2
            cols[f] = {f: -ONE if sgn else ONE}
    else:
        raise AssertionError(sym)
    return Operator(len(basis), cols)


def generator_matrix(satake, sym):
    """Action of one generator symbol on the natural module itself."""
    return act_symbol(satake, sym, 1)


_SYMOP_CACHE = {}


def act_symbol(satake, sym, d):
    key = (id(satake), sym, d)
    got = _SYMOP_CACHE.get(key)
    if got is None:
        got = _SYMOP_CACHE[key] = _symbol_operator(satake, sym, d)
    return got


def act_on_tensor(satake, x, d):
    """Operator of an algebra element on the d-th tensor power."""
    if x.diagram != satake.gamma:
        raise ValueError("element must be presented over the acting diagram")
    basis = tensor_basis(satake, d)
    total = Operator(len(basis))
    ident = Operator.identity(basis, len(basis))
    for word, coeff in x.terms.items():
        op = ident
        for sym in reversed(word):
            op = act_symbol(satake, sym, d).compose(op)
        total = total + op.scale(coeff)
    return total


def check_relations_on_rep(satake, d):
    """Evaluate every defining relation as an operator; report residuals."""
    from .superalg import (E_, F_, K_, RHO_, r5_scalar, serre_generators,
                           sym_C)
    g = satake.gamma
    rows = []

    def record(name, elem):
        op = act_on_tensor(satake, elem, d)
        rows.append((name, op.is_zero(), op.support()[:4]))

    nodes = g.nodes2()
    # Cartan relations on a small batch of coweights
    basis_cw = [{g.label(a2): 1} for a2 in g.positions2()[:2]]
    for h in basis_cw:
        one = AlgElement.unit(g)
        qh = AlgElement.gen(g, sym_C(h))
        qminus = AlgElement.gen(g, sym_C(wt_scale(h, -1)))
        record("R1R2.qh-inverse", qh * qminus - one)
        for j in nodes:
            pw = pair_coweight(h, g.alpha(j))
            record(f"R3.h{_node_name(h)}-E{j}",
                   qh * E_(g, j) - (E_(g, j) * qh).scale(Scalar.q_power(pw)))
            record(f"R4.h{_node_name(h)}-F{j}",
                   qh * F_(g, j) - (F_(g, j) * qh).scale(Scalar.q_power(-pw)))
    for j in nodes:
        for k in nodes:
            sign = Scalar.from_int((-1) ** (g.parity(j) * g.parity(k)))
            rel = E_(g, j) * F_(g, k) - (F_(g, k) * E_(g, j)).scale(sign)
            if j == k:
                rel = rel - (K_(g, j) - K_(g, j, -1)).scale(r5_scalar(g, j))
            record(f"R5.{j}.{k}", rel)
    for name, idx, rel in serre_generators(g, "E"):
        record(f"{name}E.{idx}", rel)
    for name, idx, rel in serre_generators(g, "F"):
        record(f"{name}F.{idx}", rel)
    rho = RHO_(g)
    record("newrel.rho-squared", rho * rho - AlgElement.unit(g))
    for j in nodes:
        sgn = Scalar.from_int((-1) ** g.parity(j))
        record(f"newrel.rhoE.{j}", rho * E_(g, j) * rho - E_(g, j).scale(sgn))
        record(f"newrel.rhoF.{j}", rho * F_(g, j) * rho - F_(g, j).scale(sgn))
    return rows


def _node_name(h):
    (lab, _), = h.items()
    return f"{lab[1]}{lab[0]}"


def braid_module_operator(satake, i2):
    """The rank-one module braid operator at an even node, on the natural
    module, together with its inverse.

    Pinned by the intertwining contract with the algebra-level operator;
    doublet {w_{i-1/2}, w_{i+1/2}} maps by w_- -> -q^{l_i} w_+, w_+ -> w_-.
    """
    g = satake.gamma
    if g.parity(i2):
        raise RequiresExtraAssumption("module braid operator needs an even node")
    basis = tensor_basis(satake, 1)
    ell = g.ell(i2)
    fwd = {}
    bwd = {}
    for (a2,) in basis:
        if a2 == i2 - 1:
            fwd[(a2,)] = {(i2 + 1,): -Scalar.q_power(ell)}
            bwd[(a2,)] = {(i2 + 1,): ONE}
        elif a2 == i2 + 1:
            fwd[(a2,)] = {(i2 - 1,): ONE}
            bwd[(a2,)] = {(i2 - 1,): -Scalar.q_power(-ell)}
        else:
            fwd[(a2,)] = {(a2,): ONE}
            bwd[(a2,)] = {(a2,): ONE}
    n = len(basis)
    return Operator(n, fwd), Operator(n, bwd)


def module_braid_word(satake, word):
    """Compose module braid operators along a reduced word (and inverse)."""
    basis = tensor_basis(satake, 1)
    op = Operator.identity(basis, len(basis))
    inv = Operator.identity(basis, len(basis))
    for i2 in reversed(word):
        f, b = braid_module_operator(satake, i2)
        op = f.compose(op)
        inv = inv.compose(b)
    return op, inv
