"""Prime factorization of exact moduli."""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Dict

import sympy

from .exceptions import FactorizationError

DEFAULT_TRIAL_BOUND = 10 ** 5


def factor_int(n: int, trial_bound: int = DEFAULT_TRIAL_BOUND) -> Dict[int, int]:
    """Factor a positive integer: trial division up to ``trial_bound``, then sympy.

    The result is checked by multiplying back; a mismatch is an error rather
    than a silently wrong exponent vector.
    """
    if n < 1:
        raise FactorizationError(f"cannot factor {n}")
    out: Counter = Counter()
    m = n
    for p in (2, 3):
        while m % p == 0:
            out[p] += 1
            m //= p
    p = 5
    while p <= trial_bound and p * p <= m:
        for q in (p, p + 2):
            while m % q == 0:
                out[q] += 1
                m //= q
        p += 6
    if m > 1:
        if m < p * p or m <= trial_bound:
            out[m] += 1
        else:
            try:
                rest = sympy.factorint(m)
            except Exception as exc:  # sympy raises assorted errors on pathological input
                raise FactorizationError(f"factorization of {m} failed") from exc
            for q, e in rest.items():
                out[int(q)] += int(e)
    check = 1
    for q, e in out.items():
        check *= q ** e
    if check != n or any(not sympy.isprime(q) for q in out):
        raise FactorizationError(f"factorization of {n} did not verify")
    return dict(out)


def prime_exponents(q: Fraction, trial_bound: int = DEFAULT_TRIAL_BOUND) -> Dict[int, int]:
    """Exponent map ``{p: e}`` with ``q == prod p**e`` (negative e from the denominator)."""
    q = Fraction(q)
    if q <= 0:
        raise FactorizationError(f"cannot factor non-positive {q}")
    out = Counter(factor_int(q.numerator, trial_bound))
    out.subtract(factor_int(q.denominator, trial_bound))
    return {p: e for p, e in out.items() if e}
