"""Exact rational scalars.

All coefficients are GMP-backed rationals (``gmpy2.mpq``); they mix freely
with Python ints and ``fractions.Fraction``.
"""

from __future__ import annotations

import numbers

from gmpy2 import mpq as Rational

__all__ = ["Rational", "is_scalar"]


def is_scalar(x) -> bool:
    return isinstance(x, numbers.Rational)
