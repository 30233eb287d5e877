"""Small shared helpers: exact rationals and seed derivation."""

from __future__ import annotations

import hashlib
from fractions import Fraction
from numbers import Rational


def as_fraction(x) -> Fraction:
    """Exact rational for ``x``; floats are read through their shortest repr
    so that ``0.01`` becomes ``1/100`` rather than the binary expansion."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(repr(float(x)))


def fraction_to_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def derive_seed(*parts) -> int:
    """Stable 64-bit seed from the repr of ``parts`` (blake2b)."""
    key = ":".join(repr(p) for p in parts).encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "little")
