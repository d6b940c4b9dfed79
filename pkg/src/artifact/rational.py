"""Exact rational helpers shared by every module (parsing and JSON output)."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import InputError


def Q(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction.

    Floats are rejected on purpose: every quantity in the workbench is exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {x!r}") from exc
    raise InputError(f"not a rational: {x!r}")


def rat_json(x):
    """Integers serialize bare, other rationals as reduced "p/q" strings."""
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


def to_jsonable(obj):
    """Recursively convert Fractions (and tuples/sets) for json.dumps."""
    if isinstance(obj, Fraction):
        return rat_json(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        if obj == float("inf"):
            return "inf"
        return obj
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (frozenset, set)):
        return sorted((to_jsonable(v) for v in obj), key=repr)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    return str(obj)


def exact_sqrt(x: Fraction) -> Fraction | None:
    """Square root of a non-negative rational if it is rational, else None."""
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def parse_range(text: str) -> list[int]:
    """Parse an inclusive k-range "a..b" (or a single integer)."""
    text = str(text).strip()
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise InputError(f"bad range {text!r}; expected a..b") from exc
    if hi < lo:
        raise InputError(f"empty range {text!r}")
    return list(range(lo, hi + 1))
