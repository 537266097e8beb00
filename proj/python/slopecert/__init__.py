"""Exact K-instability certificates for rational surfaces.

Rationals are returned as :class:`fractions.Fraction`; the JSON certificate
keeps its canonical ``"num/den"`` strings.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import _core
from ._core import DomainError, ParseError, Unsupported, UsageError

__all__ = [
    "DomainError",
    "ParseError",
    "Unsupported",
    "UsageError",
    "describe",
    "destabilize",
    "df",
    "endpoint_df",
    "find_destabilizing_lambda",
    "reductivity",
    "run_cli",
    "scan",
    "verify",
]


def _q(text: str) -> Fraction:
    return Fraction(text)


def _s(value) -> str:
    return str(Fraction(value))


def describe(presentation: str) -> dict:
    return _core.describe(presentation)


def destabilize(presentation: str, lambda_depth: int = 32, epsilon_depth: int = 64) -> dict | None:
    """Certificate as a dict, or None when the surface is P2 or F(0)."""
    doc = _core.destabilize(presentation, lambda_depth, epsilon_depth)
    return None if doc is None else json.loads(doc)


def verify(certificate) -> tuple[bool, str, str]:
    doc = certificate if isinstance(certificate, str) else json.dumps(certificate, indent=2)
    return _core.verify(doc)


def df(n: int, a, b, lam, oracle: bool = False) -> Fraction:
    return _q(_core.df(n, _s(a), _s(b), _s(lam), oracle))


def endpoint_df(n: int, a, b) -> Fraction:
    return _q(_core.endpoint_df(n, _s(a), _s(b)))


def find_destabilizing_lambda(n: int, a, b, depth: int = 32):
    hit = _core.find_destabilizing_lambda(n, _s(a), _s(b), depth)
    return None if hit is None else (_q(hit[0]), _q(hit[1]))


def reductivity(presentation: str, schedule=None) -> dict:
    return json.loads(_core.reductivity(presentation, schedule))


def scan(n: int, range_=4, grid: int = 10, depth: int = 32) -> list[tuple[Fraction, Fraction, Fraction]]:
    return [tuple(_q(x) for x in row) for row in _core.scan(n, _s(range_), grid, depth)]


def run_cli(*args: str) -> tuple[int, str, str]:
    return _core.run_cli(list(args))
