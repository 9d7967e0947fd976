"""Zariski closure of the cyclic group generated by a diagonal deck generator.

For diagonal ``A`` the closure is the diagonal subgroup cut out by the
characters ``chi_m(g) = prod g_i ** m_i`` with ``m`` in the relation lattice.
Membership is decided by those characters only: this captures the finite
component group too, as long as ``g`` is diagonal in the same basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .eigendata import EXACT, ContractionSpec, DiagonalElement, real_part_operator
from .exceptions import DimensionMismatch, NotCertified, PrecisionExhausted
from .relation_lattice import RelationLattice, relation_lattice

MEMBERSHIP_MODEL = "character-conditions"


@dataclass(frozen=True)
class TorusClosure:
    n: int
    lattice: RelationLattice

    @property
    def dim_connected(self) -> int:
        return self.n - self.lattice.rank

    @property
    def certified(self) -> bool:
        return self.lattice.certified


def closure(spec: ContractionSpec, lattice: Optional[RelationLattice] = None,
            **lattice_kwargs) -> TorusClosure:
    if lattice is None:
        lattice = relation_lattice(spec, **lattice_kwargs)
    if lattice.n != spec.n:
        raise DimensionMismatch("lattice and spec dimensions differ")
    return TorusClosure(spec.n, lattice)


def membership_verdict(c: TorusClosure, g: DiagonalElement, tolerance: float = 1e-12,
                       band: float = 1e4) -> Optional[bool]:
    """Three-valued membership: True, False, or None when float data is inconclusive.

    Exact elements are decided exactly. For float elements a character
    residual ``|chi_m(g) - 1|`` up to ``tolerance`` counts as 1, above
    ``band * tolerance`` as a definite failure; in between is undecidable.
    """
    if g.n != c.n:
        raise DimensionMismatch(f"element of size {g.n} for a closure in GL({c.n})")
    if g.mode == EXACT:
        return all(g.character(m).is_one() for m in c.lattice.basis)
    verdict: Optional[bool] = True
    for m in c.lattice.basis:
        chi = g.character(m)
        res = abs(chi.to_complex() - 1)
        if res > band * tolerance:
            return False
        if res > tolerance:
            verdict = None
    return verdict


def contains(c: TorusClosure, g: DiagonalElement, tolerance: float = 1e-12,
             band: float = 1e4) -> bool:
    verdict = membership_verdict(c, g, tolerance, band)
    if verdict is None:
        raise PrecisionExhausted("membership cannot be decided within the tolerance band")
    return verdict


def verify_real_part(spec: ContractionSpec, lattice: Optional[RelationLattice] = None) -> bool:
    """Check that ``A_1 = diag(|alpha_i|)`` lies in the closure of ``<A>``.

    Must always be True; a False return means a bug somewhere upstream.
    """
    if lattice is None:
        if not spec.is_exact:
            raise NotCertified("verify_real_part needs an exact spec")
        lattice = relation_lattice(spec)
    if not lattice.certified:
        raise NotCertified("verify_real_part needs a certified lattice")
    return contains(closure(spec, lattice), real_part_operator(spec))


def lie_algebra_contains(c: TorusClosure, v: Sequence, tolerance: float = 1e-12) -> bool:
    """Whether ``diag(v)`` is tangent to the closure: ``sum m_i v_i == 0`` on the lattice.

    Rational entries are compared exactly; anything else within
    ``tolerance`` relative to ``sum |m_i v_i|``.
    """
    if len(v) != c.n:
        raise DimensionMismatch(f"vector of length {len(v)} for a closure in GL({c.n})")
    exact = all(isinstance(x, (int, Fraction)) for x in v)
    for m in c.lattice.basis:
        if exact:
            if sum(Fraction(x) * k for x, k in zip(v, m)) != 0:
                return False
            continue
        s = sum(complex(x) * k for x, k in zip(v, m))
        scale = max(1.0, sum(abs(complex(x)) * abs(k) for x, k in zip(v, m)))
        if abs(s) > tolerance * scale:
            return False
    return True


def closure_report(spec: ContractionSpec, c: TorusClosure) -> dict:
    contains_a1 = contains(c, real_part_operator(spec))
    return {"dim_connected": c.dim_connected, "rank": c.lattice.rank,
            "contains_A1": contains_a1, "certified": c.certified,
            "membership_model": MEMBERSHIP_MODEL}
