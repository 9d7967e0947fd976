"""Diagonal deck generators and the operators derived from them.

A diagonal Hopf manifold is ``(C^n \\ 0) / <A>`` with ``A = diag(alpha_1..alpha_n)``.
We store ``A`` as the *expanding* generator, all ``|alpha_i| > 1``; the contraction
flow used elsewhere is ``z -> diag(|alpha_i|^(-s)) z``.

Numbers are kept in polar form ``modulus * exp(i * pi * arg_over_pi)``. In exact
mode both parts are :class:`fractions.Fraction`; in float mode both are floats.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from pathlib import Path
from typing import Any, Iterable, Sequence, Union

import numpy as np

from .exceptions import DimensionMismatch, MixedModes, ModulusNotGreaterThanOne, ParseError

EXACT = "exact"
FLOAT = "float"

Number = Union[Fraction, float]


def reduce_arg(a):
    """Reduce an argument (in units of pi) into the half-open interval (-1, 1]."""
    return a - 2 * math.ceil((a - 1) / 2)


def _is_exact_scalar(x) -> bool:
    return isinstance(x, (Rational, str)) and not isinstance(x, bool)


def _to_fraction(x) -> Fraction:
    if isinstance(x, bool):
        raise ParseError(f"boolean is not a number: {x!r}")
    if isinstance(x, dict):
        try:
            return Fraction(int(x["num"]), int(x.get("den", 1)))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {x!r}") from exc
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {x!r}") from exc


@dataclass(frozen=True)
class Polar:
    """A nonzero complex number ``modulus * exp(i*pi*arg_over_pi)``."""

    modulus: Number
    arg_over_pi: Number = Fraction(0)

    def __post_init__(self):
        m, a = self.modulus, self.arg_over_pi
        if isinstance(m, float) or isinstance(a, float):
            m, a = float(m), float(a)
            if not (math.isfinite(m) and math.isfinite(a)):
                raise ParseError(f"non-finite polar value ({m}, {a})")
        else:
            m, a = _to_fraction(m), _to_fraction(a)
        if m <= 0:
            raise ParseError(f"modulus must be positive, got {m}")
        object.__setattr__(self, "modulus", m)
        object.__setattr__(self, "arg_over_pi", reduce_arg(a))

    @property
    def mode(self) -> str:
        return EXACT if isinstance(self.modulus, Fraction) else FLOAT

    @classmethod
    def from_complex(cls, w: complex) -> "Polar":
        w = complex(w)
        if w == 0:
            raise ParseError("zero is not an admissible eigenvalue")
        return cls(abs(w), math.atan2(w.imag, w.real) / math.pi)

    def to_complex(self) -> complex:
        return float(self.modulus) * cmath.exp(1j * math.pi * float(self.arg_over_pi))

    def _coerce(self, other) -> "Polar":
        if isinstance(other, Polar):
            if other.mode != self.mode:
                raise MixedModes("cannot combine exact and float values")
            return other
        return NotImplemented

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polar(self.modulus * other.modulus, self.arg_over_pi + other.arg_over_pi)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polar(self.modulus / other.modulus, self.arg_over_pi - other.arg_over_pi)

    def __pow__(self, k: int):
        if self.mode == EXACT:
            return Polar(self.modulus ** k, self.arg_over_pi * k)
        return Polar(self.modulus ** k, self.arg_over_pi * k)

    def inverse(self) -> "Polar":
        return Polar(1 / self.modulus, -self.arg_over_pi)

    def is_one(self) -> bool:
        """Exact test for equality with 1 (float values compare bitwise)."""
        return self.modulus == 1 and self.arg_over_pi == 0

    def abs(self) -> "Polar":
        return Polar(self.modulus, self.arg_over_pi * 0)


@dataclass(frozen=True)
class Eigenvalue(Polar):
    """An eigenvalue of the deck generator; modulus strictly greater than one."""

    def __post_init__(self):
        super().__post_init__()
        if self.modulus <= 1:
            raise ModulusNotGreaterThanOne(
                f"deck generator eigenvalues need modulus > 1, got {self.modulus}")


def product(values: Iterable[Polar], exponents: Iterable[int] | None = None) -> Polar:
    """Return ``prod values[i] ** exponents[i]`` (all exponents 1 by default)."""
    values = list(values)
    if not values:
        return Polar(Fraction(1))
    if exponents is None:
        exponents = [1] * len(values)
    out = None
    for v, e in zip(values, exponents):
        term = v ** int(e)
        out = term if out is None else out * term
    return out


@dataclass(frozen=True)
class ContractionSpec:
    """Validated eigenvalue data for a diagonal deck generator."""

    eigenvalues: tuple

    def __post_init__(self):
        eigs = tuple(self.eigenvalues)
        if not eigs:
            raise ParseError("a spec needs at least one eigenvalue")
        modes = {e.mode for e in eigs}
        if len(modes) > 1:
            raise MixedModes("exact and float eigenvalues cannot share a spec")
        object.__setattr__(self, "eigenvalues", eigs)

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def mode(self) -> str:
        return self.eigenvalues[0].mode

    @property
    def is_exact(self) -> bool:
        return self.mode == EXACT

    @property
    def moduli(self) -> tuple:
        return tuple(e.modulus for e in self.eigenvalues)

    def to_complex(self) -> np.ndarray:
        return np.array([e.to_complex() for e in self.eigenvalues], dtype=complex)

    def as_element(self) -> "DiagonalElement":
        return DiagonalElement(tuple(Polar(e.modulus, e.arg_over_pi) for e in self.eigenvalues))

    def to_float(self) -> "ContractionSpec":
        """Cast to a float-mode spec through the complex values (re, im)."""
        return ContractionSpec(tuple(_eigenvalue_from_complex(w) for w in self.to_complex()))

    def permuted(self, perm: Sequence[int]) -> "ContractionSpec":
        return ContractionSpec(tuple(self.eigenvalues[p] for p in perm))

    def power(self, p: int) -> "ContractionSpec":
        if p < 1:
            raise ValueError("power must be >= 1")
        return ContractionSpec(tuple(Eigenvalue(e.modulus ** p, e.arg_over_pi * p)
                                     for e in self.eigenvalues))


@dataclass(frozen=True)
class DiagonalElement:
    """A diagonal matrix ``g = diag(entries)`` in the eigenbasis of the deck generator."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(e if isinstance(e, Polar) else Polar.from_complex(e) for e in self.entries)
        if not entries:
            raise ParseError("a diagonal element needs at least one entry")
        if len({e.mode for e in entries}) > 1:
            raise MixedModes("exact and float entries cannot share an element")
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def mode(self) -> str:
        return self.entries[0].mode

    @classmethod
    def identity(cls, n: int, exact: bool = True) -> "DiagonalElement":
        one = Polar(Fraction(1)) if exact else Polar(1.0, 0.0)
        return cls((one,) * n)

    @classmethod
    def from_complex(cls, values: Iterable[complex]) -> "DiagonalElement":
        return cls(tuple(Polar.from_complex(w) for w in values))

    def to_complex(self) -> np.ndarray:
        return np.array([e.to_complex() for e in self.entries], dtype=complex)

    def character(self, m: Sequence[int]) -> Polar:
        """Evaluate the character ``chi_m(g) = prod g_i ** m_i``."""
        if len(m) != self.n:
            raise DimensionMismatch(f"character of length {len(m)} on a {self.n}-element")
        return product(self.entries, m)


def _eigenvalue_from_complex(w: complex) -> Eigenvalue:
    p = Polar.from_complex(w)
    return Eigenvalue(p.modulus, p.arg_over_pi)


def _parse_one(item: Any) -> Eigenvalue:
    if isinstance(item, Polar):
        return Eigenvalue(item.modulus, item.arg_over_pi)
    if isinstance(item, complex):
        return _eigenvalue_from_complex(item)
    if isinstance(item, float):
        return _eigenvalue_from_complex(complex(item))
    if isinstance(item, dict):
        if "re" in item or "im" in item:
            try:
                w = complex(float(item.get("re", 0.0)), float(item.get("im", 0.0)))
            except (TypeError, ValueError) as exc:
                raise ParseError(f"bad complex eigenvalue {item!r}") from exc
            return _eigenvalue_from_complex(w)
        if "modulus" not in item:
            raise ParseError(f"eigenvalue needs 'modulus' or 're'/'im': {item!r}")
        return Eigenvalue(_parse_scalar(item["modulus"]), _parse_scalar(item.get("arg_over_pi", 0)))
    if isinstance(item, (tuple, list)) and len(item) == 2:
        return Eigenvalue(_parse_scalar(item[0]), _parse_scalar(item[1]))
    if _is_exact_scalar(item):
        return Eigenvalue(_to_fraction(item), Fraction(0))
    raise ParseError(f"cannot parse eigenvalue {item!r}")


def _parse_scalar(x):
    if isinstance(x, float):
        return x
    if isinstance(x, dict) or _is_exact_scalar(x):
        return _to_fraction(x)
    raise ParseError(f"cannot parse number {x!r}")


def make_spec(raw: Iterable[Any]) -> ContractionSpec:
    """Build a validated :class:`ContractionSpec` from loosely typed eigenvalue data.

    Each item may be an :class:`Eigenvalue`/:class:`Polar`, a ``(modulus,
    arg_over_pi)`` pair, an exact scalar modulus, a complex/float number, or a
    JSON-style dict (``{"modulus":..., "arg_over_pi":...}`` or ``{"re":..., "im":...}``).
    Pairs of exact scalars produce an exact spec; floats produce a float spec.
    """
    if isinstance(raw, (str, bytes, dict)):
        raise ParseError("eigenvalues must be given as a list")
    try:
        items = list(raw)
    except TypeError as exc:
        raise ParseError("eigenvalues must be given as a list") from exc
    if not items:
        raise ParseError("a spec needs at least one eigenvalue")
    return ContractionSpec(tuple(_parse_one(item) for item in items))


def real_part_operator(spec: ContractionSpec) -> DiagonalElement:
    """``A_1 = diag(|alpha_1|, ..., |alpha_n|)``, exact when the spec is exact."""
    return DiagonalElement(tuple(e.abs() for e in spec.eigenvalues))


def log_modulus(x: Number) -> float:
    if isinstance(x, Fraction):
        return math.log(x.numerator) - math.log(x.denominator)
    return math.log(x)


def lee_generator(spec: ContractionSpec) -> np.ndarray:
    """Return ``(log|alpha_1|, ..., log|alpha_n|)``.

    This is the diagonal of ``log A_1``; the Lee field of the Vaisman metric
    built from the shell potential is its negative. Always float.
    """
    return np.array([log_modulus(e.modulus) for e in spec.eigenvalues], dtype=float)


def _fraction_json(q: Fraction) -> dict:
    return {"num": q.numerator, "den": q.denominator}


def spec_to_json(spec: ContractionSpec) -> dict:
    if spec.is_exact:
        return {"mode": EXACT,
                "eigenvalues": [{"modulus": _fraction_json(e.modulus),
                                 "arg_over_pi": _fraction_json(e.arg_over_pi)}
                                for e in spec.eigenvalues]}
    return {"mode": FLOAT,
            "eigenvalues": [{"re": w.real, "im": w.imag} for w in spec.to_complex()]}


def spec_from_json(data: Any) -> ContractionSpec:
    if not isinstance(data, dict) or "eigenvalues" not in data:
        raise ParseError("spec JSON must be an object with an 'eigenvalues' list")
    spec = make_spec(data["eigenvalues"])
    mode = data.get("mode")
    if mode is not None and mode != spec.mode:
        raise MixedModes(f"declared mode {mode!r} but eigenvalues are {spec.mode}")
    return spec


def load_spec(path: Union[str, Path]) -> ContractionSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read spec file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"spec file {path} is not valid JSON: {exc}") from exc
    return spec_from_json(data)
