import itertools
import random

import pytest

from iqsuper.scalars import ONE, ZERO, Scalar, q_int
from iqsuper.rootdata import (Diagram, bilinear_form, standard_labels,
                              wt_add, wt_scale)
from iqsuper.superalg import (AlgElement, E_, F_, K_, RHO_, apply_map,
                              braid_apply, braid_apply_word, elements_equal,
                              is_zero_element, pairing, r5_scalar,
                              serre_generators, skew_l, skew_r, sym_E, sym_K,
                              triangular_coordinates, twbullet_image,
                              weight_space_basis, word_weight)
from iqsuper.profiles import shipped_profiles

q = Scalar.q_power(1)


def gl3():
    return Diagram(standard_labels(3, 0))


def test_weight_space_dimensions():
    d = gl3()
    assert weight_space_basis(d, d.alpha(1)).dim == 1
    mu = wt_add(wt_scale(d.alpha(-1), 2), d.alpha(1))
    assert weight_space_basis(d, mu).dim == 2      # brute-force echelon count
    d11 = Diagram(standard_labels(1, 1))
    assert weight_space_basis(d11, wt_scale(d11.alpha(0), 2)).dim == 0


def test_reduce_idempotent_on_basis():
    d = gl3()
    mu = wt_add(wt_scale(d.alpha(-1), 2), d.alpha(1))
    wsb = weight_space_basis(d, mu)
    for w in wsb.standard:
        assert wsb.reduce_word(w) == {w: ONE}


def test_serre_elements_reduce_to_zero():
    d = Diagram(standard_labels(2, 1))
    for _, _, rel in serre_generators(d, "E"):
        mu = word_weight(d, next(iter(rel.terms)))
        assert not weight_space_basis(d, mu).reduce(rel)


def test_skew_generator_values():
    d = gl3()
    assert skew_r(d, 1, E_(d, 1)).terms == {(): ONE}
    assert skew_l(d, 1, E_(d, 1)).terms == {(): ONE}
    assert skew_r(d, 1, E_(d, -1)).is_zero_syntactic()
    # one application of the product rule
    got = skew_l(d, 1, E_(d, 1) * E_(d, -1))
    assert got == E_(d, -1)
    dmix = Diagram([("b", 1), ("u", 1), ("b", 2)])   # both nodes odd
    got = skew_l(dmix, -1, E_(dmix, -1) * E_(dmix, 1))
    sign = (-1) ** (dmix.parity(-1) * dmix.parity(1))
    assert sign == -1
    assert got == E_(dmix, 1).scale(Scalar.from_int(sign))


def test_pairing_table_and_recursion():
    d = gl3()
    assert pairing(F_(d, 1), E_(d, 1)).is_one()
    assert pairing(F_(d, 1), E_(d, -1)).is_zero()
    assert pairing(K_(d, 1), E_(d, 1)).is_zero()
    assert pairing(F_(d, 1), K_(d, 1)).is_zero()
    # two applications of the skew recursion, p(j) = 0
    got = pairing(F_(d, 1) * F_(d, 1), E_(d, 1) * E_(d, 1))
    assert got == ONE + q * q


def test_maps_on_generators():
    d = Diagram(standard_labels(2, 1))
    assert apply_map("bar", K_(d, 1)) == K_(d, 1, -1)
    sat = shipped_profiles()["gl21-rank1"].satake
    g = sat.gamma
    for j2 in g.nodes2():
        got = apply_map("vartheta", E_(g, j2), sat)
        qt = Scalar.q_power(g.norm2(-j2) // 2)
        want = AlgElement.word(g, [("F", -j2), sym_K(-j2, -1)]) \
            .scale(qt if g.parity(j2) == 0 else -qt)
        assert got == want
    # vartheta is sigma then wp then tau on generators
    for gen in (E_(g, -1), F_(g, 1), K_(g, 1)):
        via = apply_map("sigma", apply_map("wp", apply_map("tau", gen, sat)))
        assert is_zero_element(via - apply_map("vartheta", gen, sat))


def test_sigma_antihomomorphism():
    d = Diagram(standard_labels(2, 1))
    rng = random.Random(3)
    gens = [E_(d, -1), E_(d, 1), F_(d, -1), K_(d, 1)]
    for _ in range(10):
        a, b, c = (rng.choice(gens) for _ in range(3))
        w = a * b * c
        assert is_zero_element(
            apply_map("sigma", w)
            - apply_map("sigma", c) * apply_map("sigma", b)
            * apply_map("sigma", a))


def test_braid_images_even_node():
    d = gl3()                       # all nodes even: the printed tables
    i2 = -1
    img = braid_apply(E_(d, i2), i2)
    y = d.reflect(i2)
    assert img == AlgElement.word(y, [("F", i2), sym_K(i2, 1)]).scale(-ONE)
    imgk = braid_apply(K_(d, 1), i2)       # adjacent Cartan image
    assert imgk == AlgElement.word(y, [sym_K(i2, 1), sym_K(1, 1)])
    far = Diagram(standard_labels(4, 0))
    assert braid_apply(E_(far, 2), -2) == E_(far.reflect(-2), 2)


def test_braid_inverse_pairs():
    for labels in (standard_labels(2, 1), standard_labels(2, 2)):
        d = Diagram(labels)
        for i2 in d.nodes2():
            for g in [E_(d, j) for j in d.nodes2()] + [RHO_(d)]:
                back = braid_apply(braid_apply(g, i2, -1, "prime"),
                                   i2, 1, "doubleprime")
                assert is_zero_element(back - g)


def test_braid_word_examples():
    d = Diagram(standard_labels(2, 2))
    x = E_(d, 1)
    assert braid_apply_word(x, ()) == x
    jn, kn = -1, 1                      # adjacent pair through node 0? no:
    jn, kn = d.nodes2()[0], d.nodes2()[1]
    y = d.reflect(kn).reflect(jn)
    got = braid_apply_word(E_(d, jn), (jn, kn))
    assert elements_equal(got, E_(y, kn))
    # distant commute on all generators
    j, l = d.nodes2()[0], d.nodes2()[2]
    for g in (E_(d, j), F_(d, l), K_(d, j)):
        a = braid_apply_word(g, (j, l))
        b = braid_apply_word(g, (l, j))
        assert elements_equal(a, b)


def test_twbullet_black_action():
    sat = shipped_profiles()["gl22-oneblack"].satake
    g = sat.gamma
    img = braid_apply_word(E_(sat.gamma_tilde, 0), sat.word)
    assert elements_equal(img, (F_(g, 0) * K_(g, 0)).scale(-ONE))
    imgf = braid_apply_word(F_(sat.gamma_tilde, 0), sat.word)
    assert elements_equal(imgf, (K_(g, 0, -1) * E_(g, 0)).scale(-ONE))
    imgk = braid_apply_word(K_(sat.gamma_tilde, 0), sat.word)
    assert elements_equal(imgk, K_(g, 0, -1))


def test_twbullet_outside_black():
    sat = shipped_profiles()["gl42-rank2"].satake
    assert elements_equal(twbullet_image(sat, 4), E_(sat.gamma, -4))
    assert elements_equal(twbullet_image(sat, -4), E_(sat.gamma, 4))


def test_twbullet_chain_action():
    from iqsuper.tensorrep import act_on_tensor
    sat = shipped_profiles()["gl22-oneblack"].satake
    g = sat.gamma
    m = sat.m
    # the transported top generator acts as the full raising chain
    low = twbullet_image(sat, -m)
    chain = E_(g, -m + 2) if m == 2 else None
    prod = AlgElement.unit(g)
    for j2 in range(-m + 2, m + 1, 2):
        prod = prod * E_(g, j2)
    assert (act_on_tensor(sat, low, 1)
            - act_on_tensor(sat, prod, 1)).is_zero()


def random_eword(d, rng, height):
    nodes = d.nodes2()
    while True:
        word = tuple(rng.choice(nodes) for _ in range(height))
        elem = AlgElement(d, {tuple(sym_E(j) for j in word): ONE})
        return elem


IDENTITY_PACK_DIAGRAMS = [Diagram(standard_labels(2, 1)),
                          Diagram(standard_labels(2, 2)),
                          Diagram(standard_labels(1, 2))]


def identity_pack_cases(count=24, height=4, seed=5):
    rng = random.Random(seed)
    for k in range(count):
        d = IDENTITY_PACK_DIAGRAMS[k % len(IDENTITY_PACK_DIAGRAMS)]
        yield d, random_eword(d, rng, 1 + rng.randrange(height))


def test_identity_pack_size():
    assert len(list(identity_pack_cases())) >= 20


def test_skew_product_rules():
    rng = random.Random(9)
    for d, x in identity_pack_cases(height=2):
        y = random_eword(d, rng, 2)
        for i2 in d.nodes2():
            mu = x.weight()
            nu = y.weight()
            sgn = Scalar.from_int((-1) ** (y.parity() * d.parity(i2)))
            lhs = skew_l(d, i2, x * y)
            rhs = (skew_l(d, i2, x) * y).scale(sgn) + \
                (x * skew_l(d, i2, y)).scale(
                    Scalar.q_power(bilinear_form(d.alpha(i2), mu)))
            assert is_zero_element(lhs - rhs)
            lhs = skew_r(d, i2, x * y)
            rhs = (skew_r(d, i2, x) * y).scale(
                sgn * Scalar.q_power(bilinear_form(d.alpha(i2), nu))) + \
                x * skew_r(d, i2, y)
            assert is_zero_element(lhs - rhs)


def test_commutator_with_lowering_on_tensor_square():
    from iqsuper.tensorrep import act_on_tensor
    profs = shipped_profiles()
    sat = profs["gl21-rank1"].satake
    g = sat.gamma
    rng = random.Random(21)
    for _ in range(20):
        x = random_eword(g, rng, 1 + rng.randrange(3))
        for j2 in g.nodes2():
            sgn = Scalar.from_int((-1) ** (x.parity() * g.parity(j2)))
            lhs = x * F_(g, j2) - (F_(g, j2) * x).scale(sgn)
            rhs = (skew_r(g, j2, x) * K_(g, j2)
                   - K_(g, j2, -1) * skew_l(g, j2, x)).scale(
                       r5_scalar(g, j2))
            op = act_on_tensor(sat, lhs - rhs, 2)
            assert op.is_zero()


def test_sigma_skew_exchange():
    for d, x in identity_pack_cases(seed=6):
        for i2 in d.nodes2():
            sign = (-1) ** (d.parity(i2) * (x.parity() + 1))
            lhs = apply_map("sigma", skew_l(d, i2, x))
            rhs = skew_r(d, i2, apply_map("sigma", x)) \
                .scale(Scalar.from_int(sign))
            assert is_zero_element(lhs - rhs)


def test_bar_skew_twist():
    for d, x in identity_pack_cases(seed=7):
        mu = x.weight()
        for i2 in d.nodes2():
            alpha = d.alpha(i2)
            lhs = apply_map("bar", skew_r(d, i2, apply_map("bar", x)))
            pw = bilinear_form(alpha, wt_add(alpha, wt_scale(mu, -1)))
            rhs = skew_l(d, i2, x).scale(Scalar.q_power(pw))
            assert is_zero_element(lhs - rhs)


def test_skew_supercommute():
    for d, x in identity_pack_cases(seed=8):
        for i2 in d.nodes2():
            for j2 in d.nodes2():
                sign = Scalar.from_int((-1) ** (d.parity(i2) * d.parity(j2)))
                lhs = skew_r(d, i2, skew_l(d, j2, x))
                rhs = skew_l(d, j2, skew_r(d, i2, x)).scale(sign)
                assert is_zero_element(lhs - rhs)


def test_serre_ideal_closed_under_skew():
    # the derivations descend to the quotient: relation-span elements map
    # into the lower relation span (sampled embeddings up to height 5/6)
    for labels in (standard_labels(1, 1), standard_labels(2, 1),
                   standard_labels(2, 2)):
        d = Diagram(labels)
        cap = 6 if len(labels) < 4 else 5
        for _, _, rel in serre_generators(d, "E"):
            base = word_weight(d, next(iter(rel.terms)))
            extras = [()] + [(j2,) for j2 in d.nodes2()]
            for extra in extras:
                elem = rel
                mu = base
                for j2 in extra:
                    elem = E_(d, j2) * elem
                    mu = wt_add(mu, d.alpha(j2))
                if sum(dict(_root(d, mu)).values()) > cap:
                    continue
                for i2 in d.nodes2():
                    for smap in (skew_r, skew_l):
                        img = smap(d, i2, elem)
                        sub = wt_add(mu, wt_scale(d.alpha(i2), -1))
                        if img.is_zero_syntactic():
                            continue
                        assert not weight_space_basis(d, sub).reduce(img)


def _root(d, mu):
    from iqsuper.superalg import _content_of
    return (_content_of(d, mu) or {}).items()
