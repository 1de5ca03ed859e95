"""Batch verification entry point.

Runs the identity suites against a profile and emits deterministic
reports; exit code 0 means every selected check passed, 1 flags a failed
check, 2 flags an invalid profile.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .scalars import Scalar
from .rootdata import Diagram, standard_labels
from .superalg import (E_, F_, K_, RHO_, braid_apply, braid_apply_word,
                       elements_equal, is_zero_element, twbullet_image)
from .rootdata import wbullet_word, wbullet_word_alternate
from .tensorrep import check_relations_on_rep
from .iqsp import (check_bj_oracle, check_coideal, check_ejbk, check_grading,
                   check_iserre_exact, check_submodules)
from .heckeb import (check_centralizer, check_duality, check_h0_eigensplit,
                     check_hecke_relations, perturbed_duality_residual)
from .kmatrix import (bar_parameter_ok, check_T_morphism,
                      check_T_normalization, check_bar_involution,
                      check_g_consistency, check_h0_realization,
                      check_intertwiner, check_upsilon_bar_inverse,
                      check_upsilon_second_line, kmatrix_operator,
                      solve_upsilon)
from .profiles import Profile, load_profile, shipped_profiles
from .reporting import CheckReport, all_pass


SUBCOMMANDS = ("validate", "relations", "braid", "iqg", "hecke", "duality",
               "upsilon", "kmatrix", "all")


def resolve_profile(name):
    shipped = shipped_profiles()
    if name in shipped:
        return shipped[name]
    return load_profile(name)


def run_validate(profile, args):
    bad = profile.satake.validate()
    return [CheckReport("validate." + (v if bad else "all"), profile.id,
                        "fail", [], v) for v in bad] or \
        [CheckReport("validate.all", profile.id, "pass")]


def run_relations(profile, args):
    reports = []
    for d in range(1, _dmax(profile, args) + 1):
        for name, ok, support in check_relations_on_rep(profile.satake, d):
            reports.append(CheckReport.from_residual(
                f"relations.{name}.d{d}", profile.id, ok, support))
    return reports


def braid_battery_diagrams():
    out = []
    for nbar, nund in ((2, 1), (2, 2)):
        for perm in itertools.permutations(standard_labels(nbar, nund)):
            out.append(Diagram(perm))
    return out


def run_braid(profile, args):
    """Generator-level braid identities over every small diagram, plus the
    two-reduced-word cross-check of the transported generators."""
    reports = []
    for d in braid_battery_diagrams():
        nodes = d.nodes2()
        gens = [E_(d, j) for j in nodes] + [F_(d, j) for j in nodes] + \
            [K_(d, j) for j in nodes] + [RHO_(d)]
        label = "".join(k for k in d.kinds())
        for jn, kn in itertools.combinations(nodes, 2):
            adjacent = abs(jn - kn) == 2
            for e in (1, -1):
                for kind in ("doubleprime", "prime"):
                    ok = True
                    for g in gens:
                        if adjacent:
                            lhs = braid_apply(braid_apply(braid_apply(
                                g, jn, e, kind), kn, e, kind), jn, e, kind)
                            rhs = braid_apply(braid_apply(braid_apply(
                                g, kn, e, kind), jn, e, kind), kn, e, kind)
                        else:
                            lhs = braid_apply(braid_apply(g, jn, e, kind),
                                              kn, e, kind)
                            rhs = braid_apply(braid_apply(g, kn, e, kind),
                                              jn, e, kind)
                        if not is_zero_element(lhs - rhs):
                            ok = False
                            break
                    word = "braid" if adjacent else "commute"
                    reports.append(CheckReport.from_residual(
                        f"braid.{word}.{label}.{jn/2:g}.{kn/2:g}.e{e}.{kind}",
                        profile.id, ok))
        for i2 in nodes:
            ok = True
            for e in (1, -1):
                for g in gens:
                    back = braid_apply(braid_apply(g, i2, -e, "prime"),
                                       i2, e, "doubleprime")
                    if not is_zero_element(back - g):
                        ok = False
            reports.append(CheckReport.from_residual(
                f"braid.inverse.{label}.{i2/2:g}", profile.id, ok))
    reports.extend(word_crosscheck_reports(profile.id))
    return reports


def word_crosscheck_reports(profile_id):
    """Canonical versus mirrored reduced word for the black longest
    element: identical transported generators (ranks up to two)."""
    from .rootdata import SatakeData
    cases = [
        ("m2", SatakeData(Diagram([("u", 1), ("b", 1), ("b", 2), ("u", 2)]),
                          2, 1, extra_even=True)),
        ("m3", SatakeData(Diagram([("b", 1), ("b", 2), ("u", 1), ("b", 3),
                                   ("b", 4)]), 3, 1)),
        ("m4", SatakeData(Diagram([("u", 1), ("b", 1), ("b", 2), ("b", 3),
                                   ("b", 4), ("u", 2)]), 4, 1,
                          extra_even=True)),
    ]
    reports = []
    for tag, sat in cases:
        alt = wbullet_word_alternate(sat.m)
        ok = True
        for j2 in sat.white_nodes2():
            canon = twbullet_image(sat, j2)
            x = E_(sat.gamma_tilde, sat.tau(j2))
            img = braid_apply_word(x, alt)
            if img.diagram != sat.gamma or not elements_equal(img, canon):
                ok = False
        reports.append(CheckReport.from_residual(
            f"braid.word-crosscheck.{tag}", profile_id, ok))
    return reports


def run_iqg(profile, args):
    sat = profile.satake
    reports = check_bj_oracle(sat, profile.id)
    reports += check_grading(sat, profile.id)
    reports += check_coideal(sat, profile.id)
    for d in range(1, min(2, _dmax(profile, args)) + 1):
        reports += check_ejbk(sat, d, profile.id)
        reports += check_iserre_exact(sat, d, profile.id)
    if profile.mode == "duality":
        reports += check_submodules(sat, profile.id)
    return reports


def run_hecke(profile, args):
    reports = []
    for d in range(1, _dmax(profile, args) + 1):
        reports += check_hecke_relations(profile.satake, d, profile.id)
        if profile.mode == "duality":
            reports += check_h0_eigensplit(profile.satake, d, profile.id)
    return reports


def run_duality(profile, args):
    if profile.mode != "duality":
        return [CheckReport("duality.skipped", profile.id, "pass", [],
                            "profile does not carry duality parameters")]
    reports = []
    for d in range(1, _dmax(profile, args) + 1):
        reports += check_duality(profile.satake, d, profile.id)
    worst = perturbed_duality_residual(profile.satake)
    reports.append(CheckReport.from_residual(
        "duality.perturbed-negative", profile.id, worst is not None,
        worst[1] if worst else [],
        "perturbing a parameter must break the zeroth commutation"))
    if args.q_pin is not None or profile.q_pin is not None:
        pin = args.q_pin if args.q_pin is not None else profile.q_pin
        for d in range(1, min(2, _dmax(profile, args)) + 1):
            reports += check_centralizer(profile.satake, d, profile.id, pin)
    return reports


def _upsilon_ready(profile):
    sat = profile.satake
    if any(sat.gamma.parity(j2) for j2 in sat.black_nodes2()):
        return False
    return sat.kappa0.is_zero()


def run_upsilon(profile, args, dump_to=None):
    if not _upsilon_ready(profile):
        return [CheckReport("upsilon.skipped", profile.id, "pass", [],
                            "profile is outside the even-black scope")]
    sat = profile.satake
    height = args.height if args.height is not None else profile.height
    vanish = min(height, 8 if sat.gamma.size <= 3 else 6)
    ups = solve_upsilon(sat, height, check_heights=vanish)
    reports = [CheckReport.from_residual(
        f"upsilon.solved.h{height}.vanish{vanish}", profile.id, True)]
    reports += check_upsilon_second_line(sat, ups, profile.id)
    for d in range(1, min(2, _dmax(profile, args)) + 1):
        reports += check_intertwiner(sat, ups, d, profile.id)
        reports += check_upsilon_bar_inverse(sat, ups, d, profile.id)
    if bar_parameter_ok(sat):
        for d in range(1, min(2, _dmax(profile, args)) + 1):
            reports += check_bar_involution(sat, ups, d, profile.id)
    if dump_to is not None:
        dump_to["upsilon"] = ups.dump()
    return reports


def run_kmatrix(profile, args):
    if not _upsilon_ready(profile) or profile.mode != "duality":
        return [CheckReport("kmatrix.skipped", profile.id, "pass", [],
                            "needs the even-black duality setting")]
    sat = profile.satake
    height = args.height if args.height is not None else profile.height
    ups = solve_upsilon(sat, height)
    reports = check_g_consistency(sat, profile.id)
    reports += check_g_consistency(sat, profile.id, mode="qinv")
    reports += check_T_morphism(sat, ups, profile.id)
    T = kmatrix_operator(sat, ups)
    reports += check_T_normalization(sat, T, profile.id)
    for d in range(1, _dmax(profile, args) + 1):
        reports += check_h0_realization(sat, ups, d, profile.id)
    return reports


GROUPS = {
    "validate": run_validate,
    "relations": run_relations,
    "braid": run_braid,
    "iqg": run_iqg,
    "hecke": run_hecke,
    "duality": run_duality,
    "upsilon": run_upsilon,
    "kmatrix": run_kmatrix,
}


def _dmax(profile, args):
    return args.d if args.d is not None else profile.d_max


def _run_group(profile_name, group, d, height, q_pin):
    args = argparse.Namespace(d=d, height=height, q_pin=q_pin)
    profile = resolve_profile(profile_name)
    return [r.to_json() for r in GROUPS[group](profile, args)]


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="iqsuper",
        description="exact verification suites for the two-parameter "
                    "symmetric-pair engine")
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--profile", default="gl21-rank1",
                        help="shipped profile id or path to a JSON descriptor")
    parser.add_argument("--d", type=int, default=None,
                        help="override the tensor-power bound")
    parser.add_argument("--height", type=int, default=None,
                        help="override the weight height cap")
    parser.add_argument("--q-pin", dest="q_pin", type=int, default=None,
                        help="pin the second parameter to this power of the "
                             "first for centralizer solves")
    parser.add_argument("--json-out", default=None)
    parser.add_argument("--parallel", action="store_true")
    args = parser.parse_args(argv)

    try:
        profile = resolve_profile(args.profile)
    except (OSError, ValueError, KeyError) as exc:
        print(f"cannot load profile: {exc}", file=sys.stderr)
        return 2

    violations = profile.satake.validate()
    if violations and args.subcommand != "validate":
        payload = {"profile": profile.id, "violations": violations}
        print(json.dumps(payload, sort_keys=True))
        return 2

    groups = [args.subcommand] if args.subcommand != "all" else \
        [g for g in GROUPS if g != "validate"]
    reports = []
    t0 = time.time()
    if args.subcommand == "validate":
        reports = run_validate(profile, args)
        exit_code = 0 if all_pass(reports) else 2
    else:
        if args.parallel and len(groups) > 1:
            with ProcessPoolExecutor() as pool:
                futs = [(g, pool.submit(_run_group, args.profile, g, args.d,
                                        args.height, args.q_pin))
                        for g in groups]
                for g, fut in futs:
                    reports.extend(CheckReport(**r) for r in
                                   [_from_json(x) for x in fut.result()])
        else:
            for g in groups:
                reports.extend(GROUPS[g](profile, args))
        exit_code = 0 if all_pass(reports) else 1
    print(f"{len(reports)} checks in {time.time() - t0:.1f}s",
          file=sys.stderr)

    payload = {"profile": profile.id,
               "reports": sorted((r.to_json() for r in reports),
                                 key=lambda r: r["check"])}
    text = json.dumps(payload, sort_keys=True, indent=1)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    for r in reports:
        if r.status == "fail":
            print(f"FAIL {r.check}", file=sys.stderr)
    return exit_code


def _from_json(data):
    return {"check": data["check"], "profile": data["profile"],
            "status": data["status"],
            "residual_support": data.get("residual_support", []),
            "detail": data.get("detail", "")}


if __name__ == "__main__":
    raise SystemExit(main())
