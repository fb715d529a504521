"""The rational map from the modular curve X_20b to the j-line, and a bounded search for preimages.

Every value is an exact ``fractions.Fraction``; there is no floating point here.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from math import gcd
from typing import Iterable

from .errors import Pole

__all__ = ["NUMERATOR", "DENOMINATOR", "cm_j_invariants", "j_of_t", "parse_rational", "search_preimages"]

# coefficients from the constant term upwards
NUMERATOR = (-1188, -864, 1296, 864, -504, -288, 80, 32, -4)
DENOMINATOR = (1, 4, 6, 4, 1)  # (t + 1)^4


def _horner(coeffs: tuple[int, ...], t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def j_of_t(t: Fraction | int | str) -> Fraction:
    """j-invariant of the curve over the parameter t; raises Pole at t = -1."""
    t = parse_rational(t) if isinstance(t, str) else Fraction(t)
    den = _horner(DENOMINATOR, t)
    if den == 0:
        raise Pole(f"the map has a pole at t = {t}")
    return _horner(NUMERATOR, t) / den


def parse_rational(text: str) -> Fraction:
    """'a/b', 'a' or a finite decimal to a reduced Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def _parameters(height: int):
    """Reduced a/b with |a| <= height and 1 <= b <= height, ordered by (b, a)."""
    for b in range(1, height + 1):
        for a in range(-height, height + 1):
            if gcd(a, b) == 1:
                yield Fraction(a, b)


def search_preimages(targets: Iterable[Fraction | int], height: int) -> dict[Fraction, list[Fraction]]:
    """Every parameter of height at most ``height`` mapping onto each target."""
    if height < 1:
        raise ValueError("height bound must be at least 1")
    wanted = {Fraction(x) for x in targets}
    hits: dict[Fraction, list[Fraction]] = {x: [] for x in sorted(wanted)}
    if not wanted:
        return {}
    for t in _parameters(height):
        if t == -1:
            continue
        j = j_of_t(t)
        if j in wanted:
            hits[j].append(t)
    return hits


def cm_j_invariants() -> list[Fraction]:
    """The rational j-invariants of CM curves, from the bundled data file."""
    raw = json.loads(resources.files("coincidence").joinpath("data/cm_j_invariants.json").read_text())
    return [Fraction(entry["j"]) for entry in raw["values"]]
