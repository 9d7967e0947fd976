"""Monomial holomorphic tensor fields on C^n \\ 0 and their Lee-flow behaviour.

A field ``z^m dz_K (x) d/dz_J`` is an eigenvector of every diagonal linear
flow. Pulling it back along ``diag(d_i)`` multiplies it by
``prod d_i ** e_i`` where ``e = m + #K - #J`` is its net exponent, so it
descends to the Hopf quotient iff ``prod alpha_i ** e_i == 1``, and its Lie
derivative along ``sum v_i z_i d/dz_i`` is ``sum e_i v_i`` times itself.

Coefficient exponents are non-negative: Laurent monomials do not extend
holomorphically across the origin when n >= 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .eigendata import EXACT, ContractionSpec, Polar, lee_generator, product
from .exceptions import (DimensionMismatch, NotDescending, NumericMismatch, ParseError,
                         PrecisionExhausted, TheoremViolation)

FLOW_TIMES = (0.1, 0.5, 1.0)


@dataclass(frozen=True)
class MonomialTensorField:
    """``z^m`` times ``dz_k`` for k in ``form_slots`` times ``d/dz_j`` for j in ``vector_slots``.

    Slot indices are 1-based. Tensor factors are ordered forms first, then vectors.
    """

    m: Tuple[int, ...]
    vector_slots: Tuple[int, ...] = ()
    form_slots: Tuple[int, ...] = ()

    def __post_init__(self):
        m = tuple(int(x) for x in self.m)
        if any(x < 0 for x in m):
            raise ParseError("coefficient exponents must be non-negative")
        vs = tuple(int(x) for x in self.vector_slots)
        fs = tuple(int(x) for x in self.form_slots)
        if any(not 1 <= i <= len(m) for i in vs + fs):
            raise DimensionMismatch(f"slot index out of range 1..{len(m)}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "vector_slots", vs)
        object.__setattr__(self, "form_slots", fs)

    @property
    def n(self) -> int:
        return len(self.m)

    def net_exponent(self) -> Tuple[int, ...]:
        e = list(self.m)
        for k in self.form_slots:
            e[k - 1] += 1
        for j in self.vector_slots:
            e[j - 1] -= 1
        return tuple(e)

    def to_json(self) -> dict:
        return {"m": list(self.m), "vector_slots": list(self.vector_slots),
                "form_slots": list(self.form_slots)}

    @classmethod
    def from_json(cls, data: dict) -> "MonomialTensorField":
        try:
            return cls(tuple(data["m"]), tuple(data.get("vector_slots", ())),
                       tuple(data.get("form_slots", ())))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad field JSON {data!r}") from exc

    def components(self, z: np.ndarray) -> np.ndarray:
        """Dense component array at the point ``z`` (axes: forms, then vectors)."""
        z = np.asarray(z, dtype=complex)
        slots = len(self.form_slots) + len(self.vector_slots)
        out = np.zeros((self.n,) * slots, dtype=complex)
        target = tuple(k - 1 for k in self.form_slots) + tuple(j - 1 for j in self.vector_slots)
        out[target] = np.prod(z ** np.array(self.m))
        return out


def _check(t: MonomialTensorField, n: int) -> None:
    if t.n != n:
        raise DimensionMismatch(f"field on C^{t.n} against a spec with n = {n}")


def deck_weight(t: MonomialTensorField, spec: ContractionSpec) -> Polar:
    """Factor by which pullback along the deck generator multiplies ``t``."""
    _check(t, spec.n)
    return product(spec.eigenvalues, t.net_exponent())


def descends(t: MonomialTensorField, spec: ContractionSpec, tolerance: float = 1e-12,
             band: float = 1e4) -> bool:
    w = deck_weight(t, spec)
    if w.mode == EXACT:
        return w.is_one()
    res = abs(w.to_complex() - 1)
    if res <= tolerance:
        return True
    if res > band * tolerance:
        return False
    raise PrecisionExhausted(f"deck weight residual {res:.3g} inside the tolerance band")


def sum_descends(terms: Iterable[MonomialTensorField], spec: ContractionSpec, **kw) -> bool:
    """A finite sum of monomial fields descends iff every term does."""
    return all(descends(t, spec, **kw) for t in terms)


def lie_eigenvalue(t: MonomialTensorField, v: Sequence[complex]) -> complex:
    """Eigenvalue of the Lie derivative along ``sum v_i z_i d/dz_i`` on ``t``."""
    if len(v) != t.n:
        raise DimensionMismatch(f"vector of length {len(v)} for a field on C^{t.n}")
    return complex(sum(e * complex(x) for e, x in zip(t.net_exponent(), v)))


def lee_modulus_ratio(t: MonomialTensorField, spec: ContractionSpec):
    """``prod |alpha_i| ** e_i``; the Lee eigenvalue is its logarithm."""
    _check(t, spec.n)
    return product([Polar(e.modulus, e.arg_over_pi * 0) for e in spec.eigenvalues],
                   t.net_exponent()).modulus


def pullback(components: np.ndarray, n_forms: int, linear_map: np.ndarray) -> np.ndarray:
    """Pull back a dense tensor (already evaluated at ``L z``) along ``z -> L z``.

    Form axes contract with ``L``, vector axes with ``L^-1``.
    """
    lin = np.asarray(linear_map, dtype=complex)
    inv_t = np.linalg.inv(lin).T
    out = components
    for ax in range(out.ndim):
        mat = lin if ax < n_forms else inv_t
        out = np.moveaxis(np.tensordot(out, mat, axes=([ax], [0])), -1, ax)
    return out


@dataclass
class LeeInvarianceReport:
    field: MonomialTensorField
    descends: bool
    symbolic_zero: bool
    mu_lee: float
    mu_anti_lee: complex
    max_pullback_residual: float = 0.0
    max_rate_mismatch: float = 0.0
    tolerance: float = 1e-10
    flow_times: Tuple[float, ...] = FLOW_TIMES

    @property
    def verdict(self) -> str:
        return "invariant" if self.descends and self.symbolic_zero else "not invariant"

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "verdict": self.verdict,
                "descends": self.descends, "symbolic_zero": self.symbolic_zero,
                "mu_lee": self.mu_lee,
                "mu_anti_lee": [self.mu_anti_lee.real, self.mu_anti_lee.imag],
                "max_pullback_residual": self.max_pullback_residual,
                "max_rate_mismatch": self.max_rate_mismatch,
                "tolerance": self.tolerance, "flow_times": list(self.flow_times)}


def verify_lee_invariance(t: MonomialTensorField, spec: ContractionSpec,
                          flow_times: Sequence[float] = FLOW_TIMES, tolerance: float = 1e-10,
                          seed: int = 0, n_points: int = 2) -> LeeInvarianceReport:
    """Check that a descending field is fixed by the Lee and anti-Lee flows.

    Symbolically: ``mu = sum e_i log|alpha_i|`` must vanish, decided exactly
    as ``prod |alpha_i| ** e_i == 1`` for exact specs. The anti-Lee flow
    ``i * v`` has eigenvalue ``i * mu``, so both reduce to the same equation.
    Numerically: the dense tensor is pulled back along ``diag(|alpha_i|^s)``
    and ``diag(|alpha_i|^(i s))`` at random points and compared with itself;
    the rate ``log(ratio) / s`` must match the symbolic eigenvalue.
    """
    _check(t, spec.n)
    if not descends(t, spec):
        raise NotDescending(f"{t.to_json()} has deck weight {deck_weight(t, spec)}")
    v = lee_generator(spec)
    if spec.is_exact:
        symbolic_zero = lee_modulus_ratio(t, spec) == 1
        mu = 0.0 if symbolic_zero else math.log(lee_modulus_ratio(t, spec))
    else:
        mu = lie_eigenvalue(t, v).real
        symbolic_zero = abs(mu) <= tolerance
    if not symbolic_zero:
        raise TheoremViolation(f"descending field {t.to_json()} has Lee eigenvalue {mu}")
    report = LeeInvarianceReport(t, True, symbolic_zero, mu, 1j * mu,
                                 tolerance=tolerance, flow_times=tuple(flow_times))

    rng = np.random.default_rng(seed)
    n_forms = len(t.form_slots)
    target = tuple(k - 1 for k in t.form_slots) + tuple(j - 1 for j in t.vector_slots)
    worst_res = worst_rate = 0.0
    for _ in range(n_points):
        z = rng.normal(size=spec.n) + 1j * rng.normal(size=spec.n)
        base = t.components(z)
        scale = max(1.0, float(np.max(np.abs(base))))
        for s in flow_times:
            for rate, diag in ((mu, np.exp(s * v)), (1j * mu, np.exp(1j * s * v))):
                lin = np.diag(diag)
                pulled = pullback(t.components(lin @ z), n_forms, lin)
                worst_res = max(worst_res, float(np.max(np.abs(pulled - base))) / scale)
                ratio = pulled[target] / base[target] if base[target] != 0 else 1.0
                worst_rate = max(worst_rate, abs(np.log(ratio) / s - rate))
    report.max_pullback_residual = worst_res
    report.max_rate_mismatch = float(worst_rate)
    if worst_res > tolerance or worst_rate > tolerance:
        raise NumericMismatch(f"flow pullback disagrees with the symbolic eigenvalue "
                              f"(residual {worst_res:.3g}, rate {worst_rate:.3g})")
    return report
