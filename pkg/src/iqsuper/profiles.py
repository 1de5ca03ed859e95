"""Shipped verification profiles and the JSON descriptor format.

A profile bundles a decorated diagram with run limits.  The descriptor is
{"id": ..., "m": int, "r": int, "sequence": ["1bar", "1und", ...],
 "params": {"1/2": "scalar-string", ...}, "kappa0": "scalar-string",
 "extra_even": bool, "mode": "duality"|"custom", "d_max": int,
 "height": int, "q_pin": int|null}; sequence lists the untransformed
 diagram left to right, params are keyed by white node index.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .scalars import Scalar, format_scalar, parse_scalar
from .rootdata import BAR, UND, Diagram, SatakeData
from .iqsp import default_parameters


class Profile:
    def __init__(self, pid, satake, mode="duality", d_max=2, height=6,
                 q_pin=None):
        self.id = pid
        self.satake = satake
        self.mode = mode
        self.d_max = d_max
        self.height = height
        self.q_pin = q_pin

    def to_json(self):
        sat = self.satake
        return {
            "id": self.id,
            "m": sat.m,
            "r": sat.r,
            "sequence": [_label_str(lab) for lab in sat.gamma_tilde.seq],
            "params": {_node_str(j2): format_scalar(s)
                       for j2, s in sorted(sat.params.items())},
            "kappa0": format_scalar(sat.kappa0),
            "extra_even": sat.extra_even,
            "mode": self.mode,
            "d_max": self.d_max,
            "height": self.height,
            "q_pin": self.q_pin,
        }


def _label_str(lab):
    return f"{lab[1]}{'bar' if lab[0] == BAR else 'und'}"


def _parse_label(text):
    m = re.fullmatch(r"(\d+)(bar|und)", text)
    if not m:
        raise ValueError(f"bad label {text!r}")
    return (BAR if m.group(2) == "bar" else UND, int(m.group(1)))


def _node_str(j2):
    return str(Fraction(j2, 2))


def _parse_node(text):
    return int(Fraction(text) * 2)


def profile_from_json(data):
    diagram = Diagram([_parse_label(t) for t in data["sequence"]])
    params = {_parse_node(k): parse_scalar(v)
              for k, v in data.get("params", {}).items()}
    kappa0 = parse_scalar(data["kappa0"]) if data.get("kappa0") else None
    satake = SatakeData(diagram, data["m"], data["r"], params, kappa0,
                        data.get("extra_even", False))
    mode = data.get("mode", "custom")
    if mode == "duality" and not params:
        p, k = default_parameters(satake)
        satake = satake.with_params(p, k)
    return Profile(data["id"], satake, mode, data.get("d_max", 2),
                   data.get("height", 6), data.get("q_pin"))


def load_profile(path):
    with open(path) as fh:
        return profile_from_json(json.load(fh))


def _mk(pid, seq, m, r, mode, d_max, height, extra_even, q_pin=None,
        params=None, kappa0=None):
    diagram = Diagram([_parse_label(t) for t in seq])
    satake = SatakeData(diagram, m, r, params, kappa0, extra_even)
    if mode == "duality":
        p, k = default_parameters(satake)
        satake = satake.with_params(p, k)
    return Profile(pid, satake, mode, d_max, height, q_pin)


def shipped_profiles():
    """The verification profiles exercised by the acceptance suite."""
    out = {}

    def put(p):
        out[p.id] = p

    # A: rank one, two odd white nodes paired by the flip, no black part
    put(_mk("gl21-rank1", ["1bar", "1und", "2bar"], 1, 1,
            "duality", 3, 8, True))
    # B: one even black node, odd white pair
    put(_mk("gl22-oneblack", ["1und", "1bar", "2bar", "2und"], 2, 1,
            "duality", 3, 8, True))
    # C: two white pairs around one even black node
    put(_mk("gl42-rank2", ["1bar", "1und", "2bar", "3bar", "2und", "4bar"],
            2, 2, "duality", 2, 6, True))
    # D: deliberately violates the evenness count on the black part
    put(_mk("bad-oddblack", ["1bar", "2bar", "1und", "2und"], 2, 1,
            "custom", 1, 2, False,
            params={-2: Scalar.from_int(1), 2: Scalar.from_int(1)}))
    # E: two odd black nodes (general mixed-parity black part)
    put(_mk("gl41-oddblack", ["1bar", "2bar", "1und", "3bar", "4bar"], 3, 1,
            "duality", 2, 4, False))
    # F: no black nodes, flip-fixed white node, nonzero extra parameter
    put(_mk("gl2-quasisplit", ["1bar", "2bar"], 0, 1,
            "duality", 3, 4, True))
    return out


def bar_symmetric_profile():
    """A custom-parameter variant of the one-black profile whose
    parameters satisfy the bar-compatibility constraint."""
    diagram = Diagram([_parse_label(t)
                       for t in ["1und", "1bar", "2bar", "2und"]])
    satake = SatakeData(diagram, 2, 1, extra_even=True)
    params = {-2: Scalar.Q_power(1),
              2: -(Scalar.q_power(2) * Scalar.Q_power(-1))}
    return Profile("gl22-barsym", satake.with_params(params), "custom", 2, 8)
