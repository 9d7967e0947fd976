"""Kodaira dimension of diagonal Hopf manifolds and quasi-regularity.

A section of ``K^k`` on the Hopf manifold lifts to ``f(z) (dz_1 ^ ... ^ dz_n)^k``
on ``C^n \\ 0``; by Hartogs and the torus action ``f`` is a sum of monomials,
and ``z^m (dz)^k`` descends iff ``alpha^m (prod alpha_i)^k == 1``. Every such
weight has modulus ``prod |alpha_i|^(m_i + k) > 1`` when ``k >= 1``, hence no
sections and Kodaira dimension minus infinity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np

from .eigendata import ContractionSpec, Polar
from .exceptions import NotCertified, NotQuasiRegular, TheoremViolation
from .factor import prime_exponents

CLOSED_FORM = "closed-form"
ENUMERATION = "enumeration"
NEG_INF = -math.inf

_MODULUS_CERTIFICATE = ("every monomial pluricanonical weight has modulus "
                        "prod |alpha_i|^(m_i + k) > 1 for k >= 1, so H^0(K^k) = 0")


@dataclass(frozen=True)
class PluricanonicalCount:
    k: int
    count: int
    method: str


@lru_cache(maxsize=32)
def _monomials(n: int, max_degree: int) -> np.ndarray:
    """All ``m in Z_{>=0}^n`` with ``sum m <= max_degree`` as an int64 array."""
    rows = [()]
    for _ in range(n):
        rows = [r + (i,) for r in rows for i in range(max_degree + 1 - sum(r))]
    return np.array(rows, dtype=np.int64).reshape(-1, n)


def _weight_data(spec: ContractionSpec):
    exps = [prime_exponents(e.modulus) for e in spec.eigenvalues]
    primes = sorted(set().union(*exps))
    vmat = np.array([[ex.get(p, 0) for p in primes] for ex in exps], dtype=np.int64)
    vmat = vmat.reshape(spec.n, len(primes))
    args = [e.arg_over_pi for e in spec.eigenvalues]
    d = math.lcm(*(a.denominator for a in args))
    cvec = np.array([int(a * d) for a in args], dtype=np.int64)
    return vmat, cvec, d


def enumerate_pluricanonical(spec: ContractionSpec, k: int, max_degree: int = 20) -> int:
    """Brute-force count of descending monomial sections of ``K^k``, degree <= max_degree.

    Each weight ``alpha^(m + k*1)`` is tested for equality with 1 exactly:
    the prime-exponent vectors of the moduli must cancel and the summed
    argument must be an even multiple of pi.
    """
    if not spec.is_exact:
        raise NotCertified("enumeration needs an exact spec")
    if k < 0:
        raise ValueError("k must be non-negative")
    vmat, cvec, d = _weight_data(spec)
    exps = _monomials(spec.n, max_degree) + k
    modulus_one = np.all(exps @ vmat == 0, axis=1) if vmat.shape[1] else np.ones(len(exps), bool)
    arg_zero = (exps @ cvec) % (2 * d) == 0
    return int(np.count_nonzero(modulus_one & arg_zero))


def pluricanonical_dimension(spec: ContractionSpec, k: int, verify_degree: Optional[int] = None
                             ) -> PluricanonicalCount:
    """``dim H^0(K^k)`` from the closed form; optionally cross-checked by enumeration."""
    if k < 0:
        raise ValueError("k must be non-negative")
    count = 1 if k == 0 else 0
    if verify_degree is not None and spec.is_exact:
        brute = enumerate_pluricanonical(spec, k, verify_degree)
        # for k == 0 only the constant monomial has weight 1
        if brute != count:
            raise TheoremViolation(f"closed form {count} != enumeration {brute} for k = {k}")
    return PluricanonicalCount(k, count, CLOSED_FORM)


def growth_degree(counts: Sequence[int]) -> float:
    """Kodaira-style growth exponent of a plurigenus sequence ``counts[k-1] = P_k``.

    Minus infinity when the tail (second half) vanishes, 0 when bounded, else
    the rounded log-log slope of the nonzero tail.
    """
    counts = list(counts)
    if not counts:
        raise ValueError("empty sequence")
    tail = counts[len(counts) // 2:]
    if not any(tail):
        return NEG_INF
    nz = [(k, c) for k, c in enumerate(counts, start=1) if c > 0]
    if max(c for _, c in nz) == min(c for _, c in nz) or len(nz) < 2:
        return 0.0
    ks = np.log([k for k, _ in nz])
    cs = np.log([c for _, c in nz])
    slope = np.polyfit(ks, cs, 1)[0]
    return float(max(0, round(slope)))


@dataclass(frozen=True)
class KodairaDimension:
    value: float
    certificate: str
    counts: Tuple[int, ...] = ()

    def to_json(self) -> str:
        return "-inf" if self.value == NEG_INF else str(int(self.value))


def kodaira_dimension(spec: ContractionSpec, max_k: int = 10) -> KodairaDimension:
    counts = tuple(pluricanonical_dimension(spec, k).count for k in range(1, max_k + 1))
    return KodairaDimension(NEG_INF, _MODULUS_CERTIFICATE, counts)


@dataclass(frozen=True)
class QuasiRegularReport:
    is_quasi_regular: bool
    weights: Tuple[int, ...] = ()
    base: Optional[Polar] = None
    reason: str = ""

    def to_json(self) -> dict:
        out = {"is_quasi_regular": self.is_quasi_regular, "weights": list(self.weights),
               "reason": self.reason}
        if self.base is not None:
            out["base"] = {"modulus": str(self.base.modulus),
                           "arg_over_pi": str(self.base.arg_over_pi)}
        return out


def _primitive(v: Sequence[int]) -> Tuple[int, ...]:
    g = math.gcd(*v)
    return tuple(x // g for x in v)


def detect_quasi_regular(spec: ContractionSpec) -> QuasiRegularReport:
    """Decide whether ``alpha_i = c ** w_i`` for some complex ``c`` and coprime ``w_i >= 1``.

    Moduli: the prime-exponent vectors must all be positive multiples of one
    integer vector ``u``; then ``w_i`` are the multiples divided by their gcd
    and ``|c| = prod p ** (gcd * u_p)``. Arguments: ``arg c / pi = b`` must
    satisfy ``w_i b == a_i (mod 2)``; any solution has denominator dividing
    ``lcm(den(a_i) * w_i)``, so a finite search decides it.
    """
    if not spec.is_exact:
        raise NotCertified("quasi-regularity is only decided for exact specs")
    exps = [prime_exponents(e.modulus) for e in spec.eigenvalues]
    primes = sorted(set().union(*exps))
    vecs = [tuple(ex.get(p, 0) for p in primes) for ex in exps]
    direction = _primitive(vecs[0])
    mult = []
    for v in vecs:
        j = next(i for i, x in enumerate(direction) if x)
        c, rem = divmod(v[j], direction[j])
        if rem or c <= 0 or tuple(c * x for x in direction) != v:
            return QuasiRegularReport(False, reason="log-moduli are not commensurable")
        mult.append(c)
    g = math.gcd(*mult)
    weights = tuple(c // g for c in mult)
    modulus = Fraction(1)
    for p, x in zip(primes, direction):
        modulus *= Fraction(p) ** (g * x)
    args = [e.arg_over_pi for e in spec.eigenvalues]
    big_n = math.lcm(*(a.denominator * w for a, w in zip(args, weights)))
    for x in range(2 * big_n):
        b = Fraction(x, big_n)
        if all((w * b - a) % 2 == 0 for w, a in zip(weights, args)):
            return QuasiRegularReport(True, weights, Polar(modulus, b))
    return QuasiRegularReport(False, reason="arguments are incompatible with the weights")


def weighted_projective_name(weights: Sequence[int]) -> str:
    if all(w == 1 for w in weights):
        return f"P^{len(weights) - 1}"
    return "P(" + ",".join(map(str, weights)) + ")"


def weighted_plurigenus(weights: Sequence[int], k: int) -> int:
    """Monomials of weighted degree ``-k * sum(w)``: sections of ``K_X^k = O(-k sum w)``."""
    target = -k * sum(weights)
    if target < 0:
        return 0
    n = len(weights)
    return int(np.count_nonzero(_monomials(n, target) @ np.array(weights) == target))


def leaf_space_summary(report: QuasiRegularReport, spec: ContractionSpec, max_k: int = 10) -> dict:
    """Leaf space of the elliptic fibration and the Kodaira consistency check."""
    if not report.is_quasi_regular:
        raise NotQuasiRegular("spec is not quasi-regular: " + report.reason)
    kod_m = kodaira_dimension(spec, max_k)
    plurigenera_x = [weighted_plurigenus(report.weights, k) for k in range(1, max_k + 1)]
    kappa_x = growth_degree(plurigenera_x)
    return {
        "leaf_space": weighted_projective_name(report.weights),
        "weights": list(report.weights),
        "plurigenera_X": plurigenera_x,
        "kodaira_X": "-inf" if kappa_x == NEG_INF else str(int(kappa_x)),
        "kodaira_M": kod_m.to_json(),
        "consistent": kappa_x == kod_m.value,
        "justification": [
            "H^0(K_{M'}^k) = H^0(K_X^k) for the elliptic fibration M' -> X",
            "K_X = O(-(w_1 + ... + w_n)) on P(w) has no sections in positive powers",
            "H^0(K_M^k) = H^0(K_{M'}^k): sections are invariant under the Lee/anti-Lee closure",
        ],
    }
