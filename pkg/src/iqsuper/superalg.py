"""The quantum supergroup as a free algebra on generator symbols, with
normal ordering, per-weight quotient bases of the positive half, skew
derivations, the standard (anti)automorphisms, and the braid-operator
substitution engine between presentations.

Elements carry the diagram they are presented over; braid operators move
them between presentations.  Equality is decided through a triangular
normal form: rho to the front, E's before Cartan monomials before F's,
then echelon reduction of the E- and F-words modulo the Serre ideal in
each weight space.
"""

from __future__ import annotations

import itertools

from .scalars import ONE, ZERO, Scalar, q_int
from .rootdata import (Diagram, bilinear_form, label_parity, pair_coweight,
                       wt, wt_add, wt_key, wt_scale)


class HeightCapExceeded(ValueError):
    pass


class NotInPositivePart(ValueError):
    pass


class UnsupportedDiagram(ValueError):
    pass


HEIGHT_CAP = 8

# symbols: ("E", j2) ("F", j2) ("K", j2, eps) ("C", coweight-items) ("R",)


def sym_E(j2):
    return ("E", j2)


def sym_F(j2):
    return ("F", j2)


def sym_K(j2, eps=1):
    return ("K", j2, eps)


def sym_C(coweight):
    return ("C", tuple(sorted(coweight.items())))


SYM_R = ("R",)


def _sym_parity(d, s):
    if s[0] in ("E", "F"):
        return d.parity(s[1])
    return 0


def _sym_weight(d, s):
    if s[0] == "E":
        return d.alpha(s[1])
    if s[0] == "F":
        return wt_scale(d.alpha(s[1]), -1)
    return {}


def word_parity(d, word):
    return sum(_sym_parity(d, s) for s in word) % 2


def word_weight(d, word):
    out = {}
    for s in word:
        out = wt_add(out, _sym_weight(d, s))
    return out


class AlgElement:
    """A Scalar-linear combination of generator words over one diagram."""

    __slots__ = ("diagram", "terms")

    def __init__(self, diagram, terms=None):
        self.diagram = diagram
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @staticmethod
    def unit(diagram, coeff=ONE):
        return AlgElement(diagram, {(): coeff})

    @staticmethod
    def gen(diagram, sym, coeff=ONE):
        return AlgElement(diagram, {(sym,): coeff})

    @staticmethod
    def word(diagram, syms, coeff=ONE):
        return AlgElement(diagram, {tuple(syms): coeff})

    def _check(self, other):
        if self.diagram != other.diagram:
            raise UnsupportedDiagram("mixing elements over different diagrams")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, ZERO) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return AlgElement(self.diagram, out)

    def __neg__(self):
        return AlgElement(self.diagram, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        self._check(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = out.get(w, ZERO) + c1 * c2
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return AlgElement(self.diagram, out)

    def scale(self, c):
        if c.is_zero():
            return AlgElement(self.diagram)
        return AlgElement(self.diagram, {w: c * t for w, t in self.terms.items()})

    def is_zero_syntactic(self):
        return not self.terms

    def map_coeff(self, f):
        return AlgElement(self.diagram, {w: f(c) for w, c in self.terms.items()})

    def retag(self, diagram):
        """Re-present over a diagram with the identical kind sequence."""
        if diagram.kinds() != self.diagram.kinds():
            raise UnsupportedDiagram("kind sequences differ; cannot retag")
        return AlgElement(diagram, dict(self.terms))

    def weight(self):
        wts = {wt_key(word_weight(self.diagram, w)) for w in self.terms}
        if len(wts) > 1:
            raise ValueError("element is not weight-homogeneous")
        return dict(next(iter(wts))) if wts else {}

    def parity(self):
        ps = {word_parity(self.diagram, w) for w in self.terms}
        if len(ps) > 1:
            raise ValueError("element is not parity-homogeneous")
        return next(iter(ps)) if ps else 0

    def __eq__(self, other):
        return (isinstance(other, AlgElement)
                and self.diagram == other.diagram and self.terms == other.terms)

    def __repr__(self):
        return f"AlgElement({self.diagram!r}, {len(self.terms)} terms)"


def E_(d, j2):
    return AlgElement.gen(d, sym_E(j2))


def F_(d, j2):
    return AlgElement.gen(d, sym_F(j2))


def K_(d, j2, eps=1):
    return AlgElement.gen(d, sym_K(j2, eps))


def RHO_(d):
    return AlgElement.gen(d, SYM_R)


def r5_scalar(d, j2):
    """1 / (q^{l_j} - q^{-l_j})."""
    e = d.ell(j2)
    return ONE / (Scalar.q_power(e) - Scalar.q_power(-e))


def qj(d, j2):
    return Scalar.q_power(d.norm2(j2) // 2)


# ---------------------------------------------------------------------------
# normal ordering: rho, then E-word, then Cartan monomial, then F-word


def _k_to_coweight(d, j2, eps):
    return wt_scale(d.coroot(j2), eps * d.ell(j2))


_CLASS = {"R": 0, "E": 1, "C": 2, "K": 2, "F": 3}


def normal_terms(x):
    """Return {(rho, Eword, cartan-items, Fword): Scalar} for an element."""
    d = x.diagram
    out = {}
    work = [(w, c) for w, c in x.terms.items()]
    while work:
        word, coeff = work.pop()
        pos = _first_inversion(word)
        if pos is None:
            key = _split_sorted(d, word)
            s = out.get(key, ZERO) + coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
            continue
        a, b = word[pos], word[pos + 1]
        head, tail = word[:pos], word[pos + 2:]
        if b[0] == "R":
            sign = 1 if _sym_parity(d, a) == 0 else -1
            work.append((head + (b, a) + tail,
                         coeff if sign > 0 else -coeff))
        elif a[0] in ("K", "C") and b[0] == "E":
            h = _k_to_coweight(d, a[1], a[2]) if a[0] == "K" else dict(a[1])
            pw = pair_coweight(h, d.alpha(b[1]))
            work.append((head + (b, a) + tail, coeff * Scalar.q_power(pw)))
        elif a[0] == "F" and b[0] in ("K", "C"):
            h = _k_to_coweight(d, b[1], b[2]) if b[0] == "K" else dict(b[1])
            pw = pair_coweight(h, d.alpha(a[1]))
            work.append((head + (b, a) + tail, coeff * Scalar.q_power(pw)))
        elif a[0] == "F" and b[0] == "E":
            k2, j2 = a[1], b[1]
            sign = (-1) ** (d.parity(j2) * d.parity(k2))
            c2 = coeff if sign > 0 else -coeff
            work.append((head + (b, a) + tail, c2))
            if k2 == j2:
                s = c2 * r5_scalar(d, j2)
                work.append((head + (sym_K(j2, 1),) + tail, -s))
                work.append((head + (sym_K(j2, -1),) + tail, s))
        else:
            raise AssertionError(f"unhandled pair {a} {b}")
    return out


def _first_inversion(word):
    for t in range(len(word) - 1):
        if _CLASS[word[t][0]] > _CLASS[word[t + 1][0]]:
            return t
    return None


def _split_sorted(d, word):
    rho = 0
    ewd = []
    cart = {}
    fwd = []
    for s in word:
        if s[0] == "R":
            rho ^= 1
        elif s[0] == "E":
            ewd.append(s[1])
        elif s[0] == "F":
            fwd.append(s[1])
        elif s[0] == "K":
            cart = wt_add(cart, _k_to_coweight(d, s[1], s[2]))
        else:
            cart = wt_add(cart, dict(s[1]))
    return rho, tuple(ewd), tuple(sorted(cart.items())), tuple(fwd)


# ---------------------------------------------------------------------------
# per-weight quotient bases of the positive (or negative) half


def letter_words(content):
    """All arrangements of the multiset {j2: multiplicity}."""
    letters = []
    for j2, k in sorted(content.items()):
        letters.extend([j2] * k)
    seen = set()
    for perm in itertools.permutations(letters):
        if perm not in seen:
            seen.add(perm)
            yield perm


def _content_of(d, mu):
    """Express mu in the simple-root basis; None if not a nonneg combo.

    alpha_j = eps(left) - eps(right), so walking positions left to right
    the partial coordinate sums are the root multiplicities.
    """
    if not set(mu) <= set(d.seq):
        return None
    run = 0
    out = {}
    for a2 in d.positions2()[:-1]:
        run += mu.get(d.label(a2), 0)
        if run < 0:
            return None
        if run:
            out[a2 + 1] = run
    if run + mu.get(d.label(d.positions2()[-1]), 0) != 0:
        return None
    return out


def serre_generators(d, kind="E"):
    """The defining relation generators for one triangular half."""
    mk = sym_E if kind == "E" else sym_F
    gens = []
    nodes = d.nodes2()
    two = q_int(2)

    def el(*js):
        return AlgElement.word(d, [mk(j) for j in js])

    for j in nodes:
        if d.parity(j):
            gens.append(("square", j, el(j, j)))
    for j, k in itertools.combinations(nodes, 2):
        if abs(j - k) > 2:
            sign = (-1) ** (d.parity(j) * d.parity(k))
            rel = el(j, k) - el(k, j).scale(Scalar.from_int(sign))
            gens.append(("commute", (j, k), rel))
    for j in nodes:
        if d.parity(j):
            continue
        for k in nodes:
            if abs(j - k) == 2:
                rel = el(j, j, k) - el(j, k, j).scale(two) + el(k, j, j)
                gens.append(("serre", (j, k), rel))
    for j in nodes:
        if not d.parity(j):
            continue
        k, ell_ = j - 2, j + 2
        if k in nodes and ell_ in nodes:
            gens.append(("superserre", j,
                         super_serre(d, mk, k, j, ell_)))
    return gens


def super_serre(d, mk, k, j, ell_):
    """S_{p(k), p(l)}(x_k, x_j, x_l) in the three letters."""
    t1, t2 = d.parity(k), d.parity(ell_)

    def el(*js):
        return AlgElement.word(d, [mk(i) for i in js])

    def sg(n):
        return Scalar.from_int((-1) ** n)

    out = el(j, ell_, k, j).scale(q_int(2))
    out = out - el(j, ell_, j, k).scale(sg(t1))
    out = out - el(k, j, ell_, j).scale(sg(t1 + t1 * t2))
    out = out - el(j, k, j, ell_).scale(sg(t1 * t2 + t2))
    out = out - el(ell_, j, k, j).scale(sg(t2))
    return out


def serre_relation_set(d, mu, kind="E"):
    """All u * g * v of weight mu, g over the relation generators."""
    content = _content_of(d, mu) if kind == "E" else \
        _content_of(d, wt_scale(mu, -1))
    if content is None:
        return []
    mk = sym_E if kind == "E" else sym_F
    rels = []
    for _, _, g in serre_generators(d, kind):
        gw = word_weight(d, next(iter(g.terms)))
        gcontent = _content_of(d, gw if kind == "E" else wt_scale(gw, -1))
        rem = {j: content.get(j, 0) - gcontent.get(j, 0)
               for j in set(content) | set(gcontent)}
        if any(c < 0 for c in rem.values()):
            continue
        rem = {j: c for j, c in rem.items() if c}
        for uv in letter_words(rem):
            for cut in range(len(uv) + 1):
                u = AlgElement.word(d, [mk(j) for j in uv[:cut]])
                v = AlgElement.word(d, [mk(j) for j in uv[cut:]])
                rels.append(u * g * v)
    return rels


class WeightSpaceBasis:
    """Echelon basis of one weight space of a triangular half.

    words: all letter words of the weight, lexicographic; basis: the
    standard (non-pivot) words; reduce_word: word -> {std word: Scalar}.
    """

    def __init__(self, d, mu, kind="E", cap=None):
        content = _content_of(d, mu) if kind == "E" else \
            _content_of(d, wt_scale(mu, -1))
        if content is None:
            raise ValueError("weight is not in the positive root cone")
        height = sum(content.values())
        if height > (cap if cap is not None else HEIGHT_CAP):
            raise HeightCapExceeded(f"height {height} over cap")
        self.diagram = d
        self.mu = dict(mu)
        self.kind = kind
        self.words = sorted(letter_words(content))
        index = {w: i for i, w in enumerate(self.words)}
        rows = []
        for rel in serre_relation_set(d, mu, kind):
            row = {}
            for word, c in rel.terms.items():
                row[index[tuple(s[1] for s in word)]] = c
            if row:
                rows.append(row)
        pivots = {}
        for row in rows:
            row = _eliminate(row, pivots)
            if row:
                piv = min(row)
                inv = row[piv].inverse()
                pivots[piv] = {i: c * inv for i, c in row.items()}
        # back-substitute so pivot rows only touch standard words
        for piv in sorted(pivots, reverse=True):
            row = pivots[piv]
            for other, orow in pivots.items():
                if other != piv and piv in orow:
                    c = orow[piv]
                    for i, v in row.items():
                        s = orow.get(i, ZERO) - c * v
                        if s:
                            orow[i] = s
                        else:
                            orow.pop(i, None)
        self.standard = [w for i, w in enumerate(self.words)
                         if i not in pivots]
        self._reduce = {}
        std_index = {w: k for k, w in enumerate(self.standard)}
        for i, w in enumerate(self.words):
            if i in pivots:
                self._reduce[w] = {self.words[j]: -c
                                   for j, c in pivots[i].items() if j != i}
            else:
                self._reduce[w] = {w: ONE}
        self.dim = len(self.standard)

    def reduce_word(self, letters):
        return self._reduce[tuple(letters)]

    def reduce(self, x):
        """Coordinates of an E-word (or F-word) combination, {word: Scalar}."""
        out = {}
        for word, c in x.terms.items():
            letters = tuple(s[1] for s in word)
            for std, v in self._reduce[letters].items():
                s = out.get(std, ZERO) + c * v
                if s:
                    out[std] = s
                else:
                    out.pop(std, None)
        return out


def _eliminate(row, pivots):
    row = dict(row)
    changed = True
    while changed:
        changed = False
        for piv in sorted(row):
            if piv in pivots:
                c = row[piv]
                for i, v in pivots[piv].items():
                    s = row.get(i, ZERO) - c * v
                    if s:
                        row[i] = s
                    else:
                        row.pop(i, None)
                changed = True
                break
    return row


_WSB_CACHE = {}


def weight_space_basis(d, mu, kind="E", cap=None):
    key = (d, wt_key(mu), kind)
    got = _WSB_CACHE.get(key)
    if got is None:
        got = _WSB_CACHE[key] = WeightSpaceBasis(d, mu, kind, cap)
    return got


# ---------------------------------------------------------------------------
# canonical triangular coordinates and equality


def triangular_coordinates(x, cap=None):
    """Map an element to exact coordinates in U+ (x) U0 (x) U-.

    Keys: (rho, cartan-items, E-weight, E-std-word, F-weight, F-std-word).
    """
    d = x.diagram
    out = {}
    for (rho, ewd, cart, fwd), coeff in normal_terms(x).items():
        ewt = word_weight(d, tuple(sym_E(j) for j in ewd))
        fwt = word_weight(d, tuple(sym_E(j) for j in fwd))
        ered = weight_space_basis(d, ewt, "E", cap).reduce_word(ewd) \
            if ewd else {(): ONE}
        fred = weight_space_basis(d, wt_scale(fwt, -1), "F", cap) \
            .reduce_word(fwd) if fwd else {(): ONE}
        for ew, ec in ered.items():
            for fw, fc in fred.items():
                key = (rho, cart, wt_key(ewt), ew, wt_key(fwt), fw)
                s = out.get(key, ZERO) + coeff * ec * fc
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
    return out


def elements_equal(x, y, cap=None):
    if x.diagram != y.diagram:
        return False
    return triangular_coordinates(x - y, cap) == {}


def is_zero_element(x, cap=None):
    return triangular_coordinates(x, cap) == {}


def positive_part_words(x, cap=None):
    """The pure-E expansion of an element of U+; raises otherwise."""
    d = x.diagram
    out = {}
    for (rho, ewd, cart, fwd), coeff in normal_terms(x).items():
        if rho or cart or fwd:
            raise NotInPositivePart("element has Cartan/F/rho content")
        out[tuple(sym_E(j) for j in ewd)] = coeff
    return AlgElement(d, out)


# ---------------------------------------------------------------------------
# skew derivations on the positive half


def _skew(d, i2, x, side):
    out = {}

    def rec(word):
        if not word:
            return {}
        got = _skew_cache.get((d, i2, side, word))
        if got is not None:
            return got
        first, rest = word[0], word[1:]
        restwt = word_weight(d, tuple(sym_E(j) for j in rest))
        restpar = sum(d.parity(j) for j in rest) % 2
        alpha_i = d.alpha(i2)
        res = {}
        if side == "r":
            if first == i2:
                sign = (-1) ** (restpar * d.parity(i2))
                c = Scalar.q_power(bilinear_form(alpha_i, restwt))
                c = c if sign > 0 else -c
                res[rest] = c
            for sub, c in rec(rest).items():
                key = (first,) + sub
                s = res.get(key, ZERO) + c
                if s:
                    res[key] = s
                else:
                    res.pop(key, None)
        else:
            if first == i2:
                sign = (-1) ** (restpar * d.parity(i2))
                res[rest] = ONE if sign > 0 else -ONE
            c0 = Scalar.q_power(bilinear_form(alpha_i, d.alpha(first)))
            for sub, c in rec(rest).items():
                key = (first,) + sub
                s = res.get(key, ZERO) + c0 * c
                if s:
                    res[key] = s
                else:
                    res.pop(key, None)
        _skew_cache[(d, i2, side, word)] = res
        return res

    for word, coeff in x.terms.items():
        letters = tuple(s[1] for s in word)
        for sub, c in rec(letters).items():
            key = tuple(sym_E(j) for j in sub)
            s = out.get(key, ZERO) + coeff * c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return AlgElement(d, out)


_skew_cache = {}


def skew_r(d, i2, x):
    """r_i: the right-side skew derivation on the positive half."""
    return _skew(d, i2, x, "r")


def skew_l(d, i2, x):
    """{}_i r: the left-side skew derivation on the positive half."""
    return _skew(d, i2, x, "l")


# ---------------------------------------------------------------------------
# the bilinear pairing between the two triangular halves


def pairing(y, x):
    """<y, x> for y in the lower and x in the upper Borel part."""
    d = y.diagram
    if d != x.diagram:
        raise UnsupportedDiagram("pairing across diagrams")
    total = ZERO
    for (rhoy, ey, carty, fy), cy in normal_terms(y).items():
        if ey:
            raise ValueError("left pairing argument must lie in U^{rho,<=}")
        for (rhox, ex, cartx, fx), cx in normal_terms(x).items():
            if fx:
                raise ValueError("right pairing argument must lie in U^{rho,>=}")
            val = _pair_fw_ew(d, fy, ex)
            if val.is_zero():
                continue
            lam_y = _cartan_weight(d, dict(carty))
            lam_x = _cartan_weight(d, dict(cartx))
            val = val * Scalar.q_power(-bilinear_form(lam_y, lam_x))
            total = total + cy * cx * val
    return total


def _cartan_weight(d, h):
    return {lab: c * (1 if label_parity(lab) == 0 else -1)
            for lab, c in h.items()}


def _pair_fw_ew(d, fword, eword):
    if not fword:
        return ONE if not eword else ZERO
    if len(fword) != len(eword):
        return ZERO
    i2, rest = fword[0], fword[1:]
    x = AlgElement.word(d, [sym_E(j) for j in eword])
    par_x = sum(d.parity(j) for j in eword) % 2
    sign = (-1) ** (par_x * d.parity(i2))
    out = ZERO
    for word, c in skew_l(d, i2, x).terms.items():
        sub = tuple(s[1] for s in word)
        v = _pair_fw_ew(d, rest, sub)
        if v:
            out = out + c * v
    return out if sign > 0 else -out


# ---------------------------------------------------------------------------
# the (anti)automorphism bestiary


def apply_map(name, x, satake=None):
    d = x.diagram
    anti = name in ("sigma", "wp", "op")
    if name in ("tau", "vartheta"):
        if satake is None:
            raise ValueError(f"{name} needs the symmetric-pair data")
        for j2 in d.nodes2():
            if d.parity(j2) != d.parity(-j2):
                raise UnsupportedDiagram("diagram is not flip-symmetric")
        if name == "vartheta" and any(d.parity(j2)
                                      for j2 in satake.black_nodes2()):
            raise UnsupportedDiagram("vartheta needs an all-even black part")
    out = AlgElement(d)
    for word, coeff in x.terms.items():
        if name == "bar":
            coeff = coeff.bar()
        img = AlgElement.unit(d, coeff)
        seq = reversed(word) if anti else word
        for s in seq:
            img = img * _map_symbol(name, d, s, satake)
        out = out + img
    return out


def _map_symbol(name, d, s, satake):
    kind = s[0]
    if kind == "R":
        return RHO_(d)
    if name == "op" or (name == "bar" and kind in ("E", "F")):
        return AlgElement.gen(d, s)
    if kind == "C":
        h = dict(s[1])
        if name in ("bar", "omega"):
            return AlgElement.gen(d, sym_C(wt_scale(h, -1)))
        if name in ("tau", "vartheta"):
            h2 = satake.tau_coweight(h)
            return AlgElement.gen(d, sym_C(h2 if name == "tau"
                                           else wt_scale(h2, -1)))
        if name == "varrho_conj":
            return AlgElement.gen(d, s)
        raise UnsupportedDiagram(f"{name} undefined on general Cartan symbols")
    j2 = s[1]
    p = d.parity(j2)
    sgn = Scalar.from_int((-1) ** p)
    if kind == "K":
        eps = s[2]
        if name == "sigma":
            return AlgElement.gen(d, sym_K(j2, -eps)).scale(sgn)
        if name in ("wp", "varrho_conj"):
            return AlgElement.gen(d, s)
        if name in ("bar", "omega"):
            return AlgElement.gen(d, sym_K(j2, -eps))
        if name == "tau":
            return AlgElement.gen(d, sym_K(-j2, eps)).scale(sgn)
        if name == "vartheta":
            return AlgElement.gen(d, sym_K(-j2, -eps))
    if name == "sigma":
        return AlgElement.gen(d, s)
    if name == "wp":
        if kind == "E":
            return AlgElement.word(d, [sym_K(j2), sym_F(j2)]).scale(qj(d, j2))
        return AlgElement.word(d, [sym_E(j2), sym_K(j2, -1)]) \
            .scale(qj(d, j2).inverse())
    if name == "varrho_conj":
        return AlgElement.gen(d, s).scale(sgn)
    if name == "tau":
        return AlgElement.gen(d, (kind, -j2))
    if name == "omega":
        if kind == "E":
            return AlgElement.gen(d, sym_F(j2))
        return AlgElement.gen(d, sym_E(j2)).scale(sgn)
    if name == "vartheta":
        qt = qj(d, -j2)
        if kind == "E":
            return AlgElement.word(d, [sym_F(-j2), sym_K(-j2, -1)]) \
                .scale(qt if p == 0 else -qt)
        return AlgElement.word(d, [sym_K(-j2), sym_E(-j2)]) \
            .scale(qt.inverse() if p == 0 else -(qt.inverse()))
    raise ValueError(f"unknown map {name}")


# ---------------------------------------------------------------------------
# braid operators between presentations


def braid_gauge_sign(d, i2, sym):
    """Extra sign correcting the raising/lowering images at odd nodes.

    The printed substitution tables fail to preserve the defining
    relations once odd reflections enter (their Cartan images carry a
    parity sign that contradicts the supercommutator identity, and the
    braid relations force compensating signs on the raising images).
    The gauge below was solved for computationally: it is the unique
    sign pattern of this shape making every image a homomorphism, the
    two families mutually inverse, and the braid relations exact.
    """
    skind = sym[0]
    if skind not in ("E", "F"):
        return 1
    if d.parity(i2) == 0:
        return 1
    j2 = sym[1]
    if j2 == i2:
        return -1
    if j2 == i2 + 2:
        return -((-1) ** d.parity(j2))
    return 1


def braid_generator_image(d, i2, e, kind, sym):
    """Image over reflect(d, i2) of one generator symbol.

    kind "doubleprime" is T''_{i,e}; kind "prime" is T'_{i,e}, realized
    as the literal inverse of T''_{i,-e} (generator preimages are solved
    once and cached).  Cartan images move by the plain weight reflection;
    raising/lowering images at odd nodes carry the solved gauge sign.
    """
    if kind == "prime":
        return _prime_image(d, i2, e, sym)
    y = d.reflect(i2)
    skind = sym[0]
    if skind == "R":
        return RHO_(y)
    if skind == "C":
        raise UnsupportedDiagram("braid image of a general Cartan symbol")
    j2 = sym[1]
    p_i = y.parity(i2)
    if skind == "K":
        eps = sym[2]
        if j2 == i2:
            return AlgElement.gen(y, sym_K(i2, -eps))
        if abs(j2 - i2) == 2:
            return AlgElement.word(y, [sym_K(i2, eps), sym_K(j2, eps)])
        return AlgElement.gen(y, sym)
    if abs(j2 - i2) == 2:
        pair = Scalar.q_power(bilinear_form(y.alpha(i2), y.alpha(j2)))
        sgn = Scalar.from_int((-1) ** (p_i * y.parity(j2)))
    gauge = Scalar.from_int(braid_gauge_sign(d, i2, sym))
    if skind == "E":
        if j2 == i2:
            return AlgElement.word(y, [sym_F(i2), sym_K(i2, e)]).scale(-gauge)
        if abs(j2 - i2) == 2:
            z = sgn * pair ** e
            lead = AlgElement.word(y, [sym_E(i2), sym_E(j2)])
            trail = AlgElement.word(y, [sym_E(j2), sym_E(i2)])
            return (lead - trail.scale(z)).scale(gauge)
        return AlgElement.gen(y, sym)
    if skind == "F":
        if j2 == i2:
            return AlgElement.word(y, [sym_K(i2, -e), sym_E(i2)]).scale(-gauge)
        if abs(j2 - i2) == 2:
            z = sgn * pair ** (-e)
            lead = AlgElement.word(y, [sym_F(j2), sym_F(i2)])
            trail = AlgElement.word(y, [sym_F(i2), sym_F(j2)])
            return (lead - trail.scale(z)).scale(gauge)
        return AlgElement.gen(y, sym)
    raise AssertionError(sym)


_PRIME_CACHE = {}


def _prime_image(d, i2, e, sym):
    """T'_{i,e} on one generator: the preimage of sym under T''_{i,-e}."""
    y = d.reflect(i2)
    skind = sym[0]
    if skind == "R":
        return RHO_(y)
    if skind == "C":
        raise UnsupportedDiagram("braid image of a general Cartan symbol")
    j2 = sym[1]
    if skind == "K":
        eps = sym[2]
        if j2 == i2:
            return AlgElement.gen(y, sym_K(i2, -eps))
        if abs(j2 - i2) == 2:
            return AlgElement.word(y, [sym_K(i2, eps), sym_K(j2, eps)])
        return AlgElement.gen(y, sym)
    if j2 == i2:
        flip = Scalar.from_int(-braid_gauge_sign(y, i2, sym))
        if skind == "E":
            return AlgElement.word(y, [sym_K(i2, e), sym_F(i2)]).scale(flip)
        return AlgElement.word(y, [sym_E(i2), sym_K(i2, -e)]).scale(flip)
    if abs(j2 - i2) != 2:
        return AlgElement.gen(y, sym)
    key = (d, i2, e, sym)
    got = _PRIME_CACHE.get(key)
    if got is not None:
        return got
    mk = sym_E if skind == "E" else sym_F
    w1 = AlgElement.word(y, [mk(j2), mk(i2)])
    w2 = AlgElement.word(y, [mk(i2), mk(j2)])
    u1 = braid_apply(w1, i2, -e, "doubleprime")
    u2 = braid_apply(w2, i2, -e, "doubleprime")
    target = triangular_coordinates(AlgElement.gen(d, sym))
    c1 = triangular_coordinates(u1)
    c2 = triangular_coordinates(u2)
    a, b = _solve_two(c1, c2, target)
    got = w1.scale(a) + w2.scale(b)
    _PRIME_CACHE[key] = got
    return got


def _solve_two(c1, c2, target):
    """Solve a*c1 + b*c2 = target for sparse coordinate dictionaries."""
    keys = sorted(set(c1) | set(c2) | set(target),
                  key=lambda k: repr(k))
    a = b = None
    for k in keys:
        x1, x2 = c1.get(k, ZERO), c2.get(k, ZERO)
        t = target.get(k, ZERO)
        if x1.is_zero() and x2.is_zero():
            if not t.is_zero():
                raise ArithmeticError("braid preimage outside the ansatz")
            continue
        if a is None and not x1.is_zero() and x2.is_zero():
            a = t / x1
        elif b is None and x1.is_zero() and not x2.is_zero():
            b = t / x2
    if a is None or b is None:
        # fall back: pick two rows and solve the dense 2x2 system
        rows = [(c1.get(k, ZERO), c2.get(k, ZERO), target.get(k, ZERO))
                for k in keys]
        for m in range(len(rows)):
            for n in range(m + 1, len(rows)):
                det = rows[m][0] * rows[n][1] - rows[n][0] * rows[m][1]
                if not det.is_zero():
                    a = (rows[m][2] * rows[n][1] - rows[n][2] * rows[m][1]) / det
                    b = (rows[m][0] * rows[n][2] - rows[n][0] * rows[m][2]) / det
                    break
            if a is not None:
                break
    for k in keys:
        lhs = a * c1.get(k, ZERO) + b * c2.get(k, ZERO)
        if lhs != target.get(k, ZERO):
            raise ArithmeticError("braid preimage system is inconsistent")
    return a, b


def braid_apply(x, i2, e=1, kind="doubleprime"):
    """One braid operator applied to a whole element."""
    y = x.diagram.reflect(i2)
    out = AlgElement(y)
    for word, coeff in x.terms.items():
        img = AlgElement.unit(y, coeff)
        for s in word:
            img = img * braid_generator_image(x.diagram, i2, e, kind, s)
        out = out + img
    return out


def braid_apply_word(x, word, e=1, kind="doubleprime"):
    """T_{j_1} ... T_{j_k} applied left to right: rightmost acts first."""
    for j2 in reversed(word):
        x = braid_apply(x, j2, e, kind)
    return x


def twbullet_image(satake, j2, cap=None):
    """T_{w_black} of the opposite-node raising generator, inside U+(Gamma)."""
    memo = satake.__dict__.setdefault("_twb_memo", {})
    if j2 in memo:
        return memo[j2]
    x = E_(satake.gamma_tilde, satake.tau(j2))
    img = braid_apply_word(x, satake.word)
    if img.diagram != satake.gamma:
        raise AssertionError("braid word did not land on the expected diagram")
    img = positive_part_words(img, cap)
    memo[j2] = img
    return img
