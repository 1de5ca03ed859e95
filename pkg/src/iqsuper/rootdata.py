"""Root data for gl(m|n): ordered fundamental systems, odd/even
reflections, the symmetric bilinear form, and the decorated two-parameter
symmetric-pair diagrams used everywhere downstream.

Conventions.  Basis labels are ('b', i) for even vectors and ('u', j) for
odd ones.  Node indices and tensor positions are half-integers in general,
so both are stored *doubled*: node j is the integer 2j, position a is 2a.
A diagram is just the ordered label sequence; simple roots, parities and
the rest are derived.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import ONE, Scalar

BAR = "b"
UND = "u"


class IndexOutOfRange(IndexError):
    pass


def label_parity(lab):
    return 0 if lab[0] == BAR else 1


def label_sign(lab):
    """(eps_a, eps_a): +1 for even labels, -1 for odd ones."""
    return 1 if lab[0] == BAR else -1


# -- weights: finitely supported maps label -> int --------------------------


def wt(*pairs):
    out = {}
    for lab, c in pairs:
        if c:
            out[lab] = out.get(lab, 0) + c
            if not out[lab]:
                del out[lab]
    return out


def wt_add(a, b):
    out = dict(a)
    for lab, c in b.items():
        s = out.get(lab, 0) + c
        if s:
            out[lab] = s
        else:
            out.pop(lab, None)
    return out


def wt_scale(a, k):
    return {lab: c * k for lab, c in a.items()} if k else {}


def wt_sub(a, b):
    return wt_add(a, wt_scale(b, -1))


def wt_key(a):
    return tuple(sorted(a.items()))


def bilinear_form(mu, nu):
    """Supertrace form: (eps_a, eps_a) = +/-1 by parity, 0 across labels."""
    return sum(c * nu.get(lab, 0) * label_sign(lab) for lab, c in mu.items())


def pair_coweight(h, mu):
    """<h, mu> for a coweight h (label -> int) and a weight mu."""
    return sum(c * mu.get(lab, 0) for lab, c in h.items())


class Diagram:
    """An ordered fundamental system of gl(m|n).

    seq[t] is the label at position (1 - N)/2 + t; nodes sit between
    consecutive positions.  All node/position arithmetic is on doubled
    integers.
    """

    __slots__ = ("seq", "_pos", "_parity", "_ell")

    def __init__(self, seq):
        seq = tuple(seq)
        if len(set(seq)) != len(seq):
            raise ValueError("labels must be distinct")
        self.seq = seq
        self._pos = {1 - len(seq) + 2 * t: lab for t, lab in enumerate(seq)}
        self._parity = {}
        self._ell = {}
        n = len(seq)
        for t in range(n - 1):
            j2 = 2 - n + 2 * t
            self._parity[j2] = (label_parity(seq[t])
                                + label_parity(seq[t + 1])) % 2
            self._ell[j2] = label_sign(seq[t])

    @property
    def size(self):
        return len(self.seq)

    def positions2(self):
        n = len(self.seq)
        return [1 - n + 2 * t for t in range(n)]

    def nodes2(self):
        n = len(self.seq)
        return [2 - n + 2 * t for t in range(n - 1)]

    def label(self, pos2):
        try:
            return self._pos[pos2]
        except KeyError:
            raise IndexOutOfRange(f"no position {Fraction(pos2, 2)}")

    def kinds(self):
        return tuple(lab[0] for lab in self.seq)

    def parity(self, j2):
        try:
            return self._parity[j2]
        except KeyError:
            raise IndexOutOfRange(f"no node {Fraction(j2, 2)}")

    def alpha(self, j2):
        return wt((self.label(j2 - 1), 1), (self.label(j2 + 1), -1))

    def ell(self, j2):
        """The sign making ell_j <h_j, .> equal to (alpha_j, .)."""
        try:
            return self._ell[j2]
        except KeyError:
            raise IndexOutOfRange(f"no node {Fraction(j2, 2)}")

    def coroot(self, j2):
        left, right = self.label(j2 - 1), self.label(j2 + 1)
        sign = -1 if self.parity(j2) else 1
        return wt((left, 1), (right, -sign))

    def norm2(self, j2):
        """(alpha_j, alpha_j) in {2, 0, -2}."""
        return label_sign(self.label(j2 - 1)) + label_sign(self.label(j2 + 1))

    def reflect(self, j2):
        """Reflection at node j: swap the two flanking labels.

        Odd nodes give odd reflections, even nodes ordinary ones; both act
        on the label sequence by the same adjacent transposition.
        """
        if j2 not in set(self.nodes2()):
            raise IndexOutOfRange(f"no node {Fraction(j2, 2)}")
        t = (j2 - 1 - (1 - len(self.seq))) // 2
        seq = list(self.seq)
        seq[t], seq[t + 1] = seq[t + 1], seq[t]
        return Diagram(seq)

    def reflect_transposition(self, j2):
        """The label pair swapped by reflect(j2) (as a weight map datum)."""
        return self.label(j2 - 1), self.label(j2 + 1)

    def apply_word(self, word):
        """Apply s_{j_1} ... s_{j_k}: the rightmost reflection acts first."""
        d = self
        for j2 in reversed(word):
            d = d.reflect(j2)
        return d

    def __eq__(self, other):
        return isinstance(other, Diagram) and self.seq == other.seq

    def __hash__(self):
        return hash(self.seq)

    def __repr__(self):
        def fmt(lab):
            return f"{lab[1]}{'bar' if lab[0] == BAR else 'und'}"
        return "Diagram(" + ",".join(fmt(l) for l in self.seq) + ")"


def standard_labels(nbar, nund):
    return [(BAR, i) for i in range(1, nbar + 1)] + \
        [(UND, j) for j in range(1, nund + 1)]


def word_transpositions(diagram, word):
    """Label transpositions realized by a reflection word, rightmost first.

    Returns (final diagram, list of label pairs in application order).
    """
    d = diagram
    swaps = []
    for j2 in reversed(word):
        swaps.append(d.reflect_transposition(j2))
        d = d.reflect(j2)
    return d, swaps


def permute_weight(mu, swaps):
    out = dict(mu)
    for a, b in swaps:
        ca, cb = out.get(a, 0), out.get(b, 0)
        out.pop(a, None)
        out.pop(b, None)
        if cb:
            out[a] = cb
        if ca:
            out[b] = ca
    return out


class SatakeData:
    """A decorated diagram: m = 2n, r white pairs, parameters, and the
    derived data (the transformed diagram, the black longest-element word,
    its weight permutation)."""

    def __init__(self, diagram, m, r, params=None, kappa0=None,
                 extra_even=False):
        if m + 2 * r != diagram.size:
            raise ValueError("diagram size must be m + 2r")
        self.gamma_tilde = diagram
        self.m = m
        self.r = r
        self.extra_even = extra_even
        self.params = dict(params or {})
        self.kappa0 = kappa0 if kappa0 is not None else Scalar.from_int(0)
        self.word = wbullet_word(m)
        self.gamma, self._swaps = word_transpositions(diagram, self.word)

    # -- index sets (doubled) -----------------------------------------------

    def nodes2(self):
        return self.gamma.nodes2()

    def black_nodes2(self):
        return [j2 for j2 in self.nodes2() if abs(j2) <= self.m - 2]

    def white_nodes2(self):
        return [j2 for j2 in self.nodes2() if abs(j2) >= self.m]

    def tau(self, j2):
        return -j2

    def positions_black2(self):
        return [a2 for a2 in self.gamma.positions2() if abs(a2) <= self.m - 1]

    def positions_white_pos2(self):
        return [a2 for a2 in self.gamma.positions2() if a2 >= self.m + 1]

    def positions_white_neg2(self):
        return [-a2 for a2 in self.positions_white_pos2()]

    # -- Weyl data -----------------------------------------------------------

    def w_bullet(self, mu):
        """The black longest element acting on a weight of Gamma."""
        return permute_weight(mu, self._swaps)

    def theta(self, mu):
        """w_bullet . tau on weights; tau is -1 composed with position flip."""
        return self.w_bullet(self.tau_weight(mu))

    def tau_weight(self, mu):
        out = {}
        flip = {self.gamma.label(a2): self.gamma.label(-a2)
                for a2 in self.gamma.positions2()}
        for lab, c in mu.items():
            out[flip[lab]] = -c
        return {lab: c for lab, c in out.items() if c}

    def tau_coweight(self, h):
        return self.tau_weight(h)

    def two_rho_bullet(self):
        """Sum over positive black roots of Gamma (twice the half-sum)."""
        blk = self.positions_black2()
        out = {}
        for i, a2 in enumerate(blk):
            for b2 in blk[i + 1:]:
                out = wt_add(out, wt((self.gamma.label(a2), 1),
                                     (self.gamma.label(b2), -1)))
        return out

    def y_lattice_generators(self):
        """Coweights nu - w_bullet(tau(nu)) for nu over the coweight basis."""
        gens = []
        for a2 in self.gamma.positions2():
            nu = {self.gamma.label(a2): 1}
            gens.append(wt_sub(nu, self.w_bullet(self.tau_coweight(nu))))
        return [g for g in gens if g]

    def y_basis(self):
        """An integral basis of the span of y_lattice_generators."""
        labs = [self.gamma.label(a2) for a2 in self.gamma.positions2()]
        rows = [[g.get(lab, 0) for lab in labs]
                for g in self.y_lattice_generators()]
        basis = _hnf_rows(rows)
        return [{lab: c for lab, c in zip(labs, row) if c} for row in basis]

    def iweight_image(self, mu):
        """Canonical representative of mu modulo {nu + w_bullet tau(nu)}."""
        labs = [self.gamma_tilde.label(a2)
                for a2 in self.gamma_tilde.positions2()]
        gens = []
        for a2 in self.gamma_tilde.positions2():
            nu = {self.gamma_tilde.label(a2): 1}
            gens.append(wt_add(nu, self.w_bullet(self.tau_weight(nu))))
        rows = _hnf_rows([[g.get(lab, 0) for lab in labs] for g in gens])
        vec = [mu.get(lab, 0) for lab in labs]
        for row in rows:
            piv = next(i for i, c in enumerate(row) if c)
            k = vec[piv] // row[piv]
            if k:
                vec = [v - k * c for v, c in zip(vec, row)]
        return {lab: c for lab, c in zip(labs, vec) if c}

    # -- parameters -----------------------------------------------------------

    def sigma_param(self, j2):
        try:
            return self.params[j2]
        except KeyError:
            raise KeyError(f"no parameter for white node {Fraction(j2, 2)}")

    def with_params(self, params, kappa0=None):
        return SatakeData(self.gamma_tilde, self.m, self.r, params,
                          kappa0 if kappa0 is not None else self.kappa0,
                          self.extra_even)

    # -- validation ------------------------------------------------------------

    def validate(self):
        """Return the list of violated conditions (empty when well formed)."""
        bad = []
        gt = self.gamma_tilde
        odd_black = sum(gt.parity(j2) for j2 in self.black_nodes2())
        if odd_black % 2:
            bad.append("odd-black-count-parity")
        for j2 in self.white_nodes2():
            if j2 > 0 and gt.parity(j2) != gt.parity(-j2):
                bad.append("tau-parity")
                break
        if self.extra_even and any(gt.parity(j2)
                                   for j2 in self.black_nodes2()):
            bad.append("extra-even")
        for j2 in self.white_nodes2():
            if j2 > self.m and j2 in self.params and -j2 in self.params \
                    and self.params[j2] != self.params[-j2]:
                bad.append("param-symmetry")
                break
        if self.m == 0 and not self.kappa0.is_zero() and 0 not in \
                set(self.nodes2()):
            bad.append("kappa0-without-node0")
        return bad


def wbullet_word(m):
    """The fixed reduced word for the black longest element, doubled indices.

    (s_{n-1} ... s_{1-n})(s_{n-1} ... s_{2-n}) ... (s_{n-1}); length n(2n-1).
    """
    top = m - 2  # doubled n-1
    word = []
    for bottom in range(2 - m, m - 1, 2):  # doubled 1-n, 2-n, ...
        word.extend(range(top, bottom - 2, -2))
    return tuple(word)


def wbullet_word_alternate(m):
    """The mirrored reduced word (indices negated); equal in the Weyl group."""
    return tuple(-j2 for j2 in wbullet_word(m))


def _hnf_rows(rows):
    """Row-style integer echelon basis of the row span (positive pivots)."""
    rows = [list(r) for r in rows if any(r)]
    ncols = len(rows[0]) if rows else 0
    basis = []
    for col in range(ncols):
        pool = [r for r in rows if r[col]]
        while len(pool) > 1:
            pool.sort(key=lambda r: abs(r[col]))
            a = pool[0]
            for r in pool[1:]:
                k = r[col] // a[col]
                for i in range(ncols):
                    r[i] -= k * a[i]
            pool = [r for r in rows if r[col]]
        if pool:
            piv = pool[0]
            if piv[col] < 0:
                piv[:] = [-c for c in piv]
            basis.append(list(piv))
            rows = [r for r in rows if r is not piv]
            for r in rows:
                k = r[col] // piv[col]
                if k:
                    for i in range(ncols):
                        r[i] -= k * piv[i]
            rows = [r for r in rows if any(r)]
    return basis
