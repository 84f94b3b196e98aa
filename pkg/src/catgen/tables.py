"""Fixture files holding the reference parameter sets, and their parser.

Complex values are stored in the notation the parameter tables use:
``0.755``, ``-i0.656``, or ``0.814*exp(-i0.601pi)`` (modulus times a phase
given in units of pi).  Fixtures transcribe the tables verbatim; any
convention fixing (e.g. the cascade reflection phases) happens in the
loaders, not in the data.
"""

from __future__ import annotations

import cmath
import json
import math
import re
from dataclasses import dataclass
from importlib import resources

from .fock import BeamSplitter
from .cascade import CascadeConfig

_MODEXP = re.compile(
    r"^(?P<sign>-?)(?P<mod>\d+(?:\.\d+)?)\*exp\((?P<isign>-?)i(?P<theta>\d+(?:\.\d+)?)pi\)$"
)
_IMAG = re.compile(r"^(?P<sign>-?)i(?P<mod>\d+(?:\.\d+)?)$")
_REAL = re.compile(r"^-?\d+(?:\.\d+)?$")


def parse_complex(text: str) -> complex:
    """Parse the tables' complex-number notation."""
    s = text.strip().replace(" ", "")
    m = _MODEXP.match(s)
    if m:
        mod = float(m.group("mod"))
        if m.group("sign"):
            mod = -mod
        theta = float(m.group("theta")) * math.pi
        if m.group("isign"):
            theta = -theta
        return mod * cmath.exp(1j * theta)
    m = _IMAG.match(s)
    if m:
        mod = float(m.group("mod"))
        return -1j * mod if m.group("sign") else 1j * mod
    if _REAL.match(s):
        return complex(float(s))
    raise ValueError(f"unrecognized complex literal: {text!r}")


def _load(name: str) -> dict:
    with resources.files("catgen.fixtures").joinpath(name).open("r") as fh:
        return json.load(fh)


@dataclass(frozen=True)
class Table1Row:
    n: int
    parity: str
    alpha: float
    beta: float


def load_table1() -> list[Table1Row]:
    data = _load("table1.json")
    return [Table1Row(r["n"], r["parity"], r["alpha"], r["beta"]) for r in data["rows"]]


@dataclass(frozen=True)
class HeraldColumn:
    """One reference column of the entangled-input scheme.

    Splitters are plain (t, r) pairs: the printed 3-decimal values are not
    exactly unitary, so they stay reference data rather than BeamSplitters.
    """

    parity: str
    n: int
    beta: float
    alpha: float
    alpha_prime: float
    probability: float
    splitters: tuple[tuple[complex, complex], ...]


def load_herald_table(parity: str) -> list[HeraldColumn]:
    data = _load("table2.json" if parity == "even" else "table3.json")
    cols = []
    for col in data["columns"]:
        splitters = tuple(
            (parse_complex(s["t"]), parse_complex(s["r"])) for s in col["splitters"]
        )
        cols.append(
            HeraldColumn(
                parity=data["parity"],
                n=col["n"],
                beta=col["beta"],
                alpha=col["alpha"],
                alpha_prime=col["alpha_prime"],
                probability=col["probability"],
                splitters=splitters,
            )
        )
    return cols


@dataclass(frozen=True)
class CascadeColumn:
    """One reference column of the Fock-cascade scheme."""

    parity: str
    beta: float
    fidelity: float
    probability: float
    config: CascadeConfig


def load_cascade_table(m: int) -> list[CascadeColumn]:
    """Reference cascade parameters for m = 3, 4 or 5 auxiliary modes.

    The tables list |t_j| e^(i arg t_j) and alpha_j but no reflection
    coefficients.  The reference fidelities are reproduced by r_j =
    +sqrt(1 - |t_j|^2) with the displacement amplitudes conjugated, which is
    the convention applied here (see README).
    """
    name = {3: "table4.json", 4: "table5.json", 5: "table6.json"}.get(m)
    if name is None:
        raise ValueError("cascade tables exist for m in {3, 4, 5}")
    data = _load(name)
    photons = tuple(data["photons"])
    cols = []
    for col in data["columns"]:
        ts = [parse_complex(s) for s in col["ts"]]
        splitters = tuple(
            BeamSplitter(t, math.sqrt(max(0.0, 1.0 - abs(t) ** 2))) for t in ts
        )
        alphas = tuple(parse_complex(s).conjugate() for s in col["alphas"])
        config = CascadeConfig(photons, splitters, alphas, col["alpha"])
        cols.append(
            CascadeColumn(
                parity=col["parity"],
                beta=data["beta"],
                fidelity=col["fidelity"],
                probability=col["probability"],
                config=config,
            )
        )
    return cols
