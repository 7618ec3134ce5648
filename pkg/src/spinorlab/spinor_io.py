"""Spinor file format: JSON with 17-significant-digit decimal coefficients.

Layout: {"format": "spinorlab/1", "n": <int>, "coeffs": [[re, im], ...]}
with exactly 2^floor(n/2) coefficient pairs in basis-index order.  Floats
are written with 17 significant digits so a save/load round trip
reproduces every double exactly.
"""

from __future__ import annotations

import json
import math
import os

from .clifford import Spinor, make_space
from .errors import DimensionError, ParseError

FORMAT_TAG = "spinorlab/1"


def _fmt(x: float) -> str:
    return format(float(x), ".16e")


def spinor_to_json(psi: Spinor) -> str:
    pairs = ", ".join(
        f"[{_fmt(c.real)}, {_fmt(c.imag)}]" for c in psi.coeffs
    )
    return (
        f'{{"format": "{FORMAT_TAG}", "n": {psi.space.n}, "coeffs": [{pairs}]}}\n'
    )


def save_spinor(psi: Spinor, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(spinor_to_json(psi))


def _reject_constant(token: str):
    raise ParseError(f"non-finite value {token!r} in spinor file")


def spinor_from_json(text: str, source: str = "<string>") -> Spinor:
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{source}: top level must be an object")
    if doc.get("format") != FORMAT_TAG:
        raise ParseError(
            f"{source}: field 'format' must be {FORMAT_TAG!r}, got {doc.get('format')!r}"
        )
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise ParseError(f"{source}: field 'n' must be an integer")
    if n < 2:
        raise DimensionError(f"{source}: ambient dimension must be >= 2, got {n}")
    space = make_space(n)
    coeffs = doc.get("coeffs")
    if not isinstance(coeffs, list):
        raise ParseError(f"{source}: field 'coeffs' must be a list")
    if len(coeffs) != space.dim:
        raise DimensionError(
            f"{source}: expected {space.dim} coefficients for n={n}, got {len(coeffs)}"
        )
    values = []
    for idx, pair in enumerate(coeffs):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in pair)
        ):
            raise ParseError(
                f"{source}: coeffs[{idx}] must be a [re, im] pair of numbers"
            )
        re, im = float(pair[0]), float(pair[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise ParseError(f"{source}: coeffs[{idx}] is not finite")
        values.append(complex(re, im))
    return Spinor(space, values)


def load_spinor(path) -> Spinor:
    try:
        with open(path, "r", encoding="ascii") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {os.fspath(path)!r}: {exc}") from exc
    return spinor_from_json(text, source=os.fspath(path))
