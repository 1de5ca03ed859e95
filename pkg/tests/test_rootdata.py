import itertools

import pytest

from iqsuper.rootdata import (BAR, UND, Diagram, SatakeData, bilinear_form,
                              pair_coweight, standard_labels, wbullet_word,
                              wbullet_word_alternate, wt, wt_add, wt_scale)
from iqsuper.profiles import shipped_profiles


def std(nbar, nund):
    return Diagram(standard_labels(nbar, nund))


def test_bilinear_form_on_basis():
    e1b = {(BAR, 1): 1}
    e1u = {(UND, 1): 1}
    assert bilinear_form(e1b, e1b) == 1
    assert bilinear_form(e1u, e1u) == -1
    assert bilinear_form(e1b, e1u) == 0


def test_ell_values():
    d = std(2, 1)
    assert d.ell(-1) == 1          # flanked by even labels
    for j2 in d.nodes2():
        # ell_j <h_j, lam> = (alpha_j, lam) on every basis weight
        for lab in d.seq:
            lam = {lab: 1}
            assert d.ell(j2) * pair_coweight(d.coroot(j2), lam) == \
                bilinear_form(d.alpha(j2), lam)


def test_ell_flip_symmetry():
    # on a flip-symmetric diagram, ell_j = (-1)^p(j) ell_{-j}
    d = shipped_profiles()["gl22-oneblack"].satake.gamma
    for j2 in d.nodes2():
        assert d.ell(j2) == (-1) ** d.parity(j2) * d.ell(-j2)


def test_reflect_two_odd_nodes_example():
    d = Diagram([(BAR, 1), (UND, 1), (BAR, 2)])
    assert d.parity(-1) == 1 and d.parity(1) == 1
    r = d.reflect(-1)
    assert r.seq == ((UND, 1), (BAR, 1), (BAR, 2))
    assert r.parity(1) == 0            # neighbour parity flipped


def test_reflect_involution():
    d = std(2, 2)
    for j2 in d.nodes2():
        assert d.reflect(j2).reflect(j2) == d


def test_parity_change_rule():
    for perm in itertools.permutations(standard_labels(2, 2)):
        d = Diagram(perm)
        for j2 in d.nodes2():
            r = d.reflect(j2)
            for k2 in d.nodes2():
                if abs(k2 - j2) == 2:
                    assert r.parity(k2) == (d.parity(k2) + d.parity(j2)) % 2
                else:
                    assert r.parity(k2) == d.parity(k2)


def test_diagram_braid_relations():
    seen = {std(2, 2)}
    frontier = list(seen)
    for _ in range(4):
        frontier = [d.reflect(j2) for d in frontier for j2 in d.nodes2()]
        seen.update(frontier)
    for d in seen:
        for j2, k2 in itertools.combinations(d.nodes2(), 2):
            if abs(j2 - k2) == 2:
                assert d.reflect(j2).reflect(k2).reflect(j2) == \
                    d.reflect(k2).reflect(j2).reflect(k2)
            else:
                assert d.reflect(j2).reflect(k2) == \
                    d.reflect(k2).reflect(j2)


def test_wbullet_word_lengths():
    assert wbullet_word(0) == ()
    assert wbullet_word(1) == ()
    assert wbullet_word(2) == (0,)
    assert wbullet_word(3) == (1, -1, 1)
    assert len(wbullet_word(4)) == 6
    assert wbullet_word_alternate(3) == (-1, 1, -1)


def test_gamma_satisfies_assumption():
    for pid, prof in shipped_profiles().items():
        sat = prof.satake
        if sat.validate():
            continue
        # the transformed diagram keeps the defining parity constraints
        odd_black = sum(sat.gamma.parity(j2) for j2 in sat.black_nodes2())
        assert odd_black % 2 == 0
        for j2 in sat.white_nodes2():
            assert sat.gamma.parity(j2) == sat.gamma.parity(-j2)


def test_validate_flags():
    bad = shipped_profiles()["bad-oddblack"].satake
    assert "odd-black-count-parity" in bad.validate()
    d = Diagram([(BAR, 1), (UND, 1), (BAR, 2), (BAR, 3), (UND, 2)])
    # parity of node 2 differs from node -2: tau violation
    sat = SatakeData(d, 1, 2)
    assert "tau-parity" in sat.validate()
    good = shipped_profiles()["gl22-oneblack"].satake
    assert good.validate() == []


def test_two_rho_bullet():
    sat = shipped_profiles()["gl21-rank1"].satake
    assert sat.two_rho_bullet() == {}
    satB = shipped_profiles()["gl22-oneblack"].satake
    assert satB.two_rho_bullet() == satB.gamma.alpha(0)


def test_iweight_image_kills_symmetrized():
    sat = shipped_profiles()["gl22-oneblack"].satake
    for a2 in sat.gamma.positions2():
        mu = {sat.gamma.label(a2): 1}
        sym = wt_add(mu, sat.w_bullet(sat.tau_weight(mu)))
        assert sat.iweight_image(sym) == {}
    mu = {sat.gamma.label(1): 2, sat.gamma.label(3): -1}
    img = sat.iweight_image(mu)
    assert sat.iweight_image(wt_add(mu, wt_scale(img, 0))) == img


def test_w_bullet_is_black_reversal():
    sat = shipped_profiles()["gl42-rank2"].satake
    g = sat.gamma
    for a2 in sat.positions_black2():
        mu = {g.label(a2): 1}
        assert sat.w_bullet(mu) == {g.label(-a2): 1}
    out = {g.label(5): 1}
    assert sat.w_bullet(out) == out


def test_profile_roundtrip():
    import json
    from iqsuper.profiles import profile_from_json
    for pid, prof in shipped_profiles().items():
        data = json.loads(json.dumps(prof.to_json()))
        back = profile_from_json(data)
        assert back.satake.gamma_tilde == prof.satake.gamma_tilde
        assert back.satake.params == prof.satake.params
        assert back.satake.kappa0 == prof.satake.kappa0
