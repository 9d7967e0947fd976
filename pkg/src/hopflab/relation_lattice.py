"""Multiplicative relations among the eigenvalues of a diagonal deck generator.

The relation lattice is ``L = {m in Z^n : prod alpha_i ** m_i == 1}``. A tensor
eigenvector of weight ``prod alpha_i ** e_i`` is A-invariant exactly when
``e in L``, so ``L`` carries all the tensor invariants of ``<A>``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .eigendata import ContractionSpec, product
from .exceptions import DimensionMismatch, NotCertified, PrecisionExhausted
from .factor import DEFAULT_TRIAL_BOUND, prime_exponents
from .intlattice import hermite_normal_form, in_lattice, integer_kernel, lll_reduce

_FLOAT_EPS = 2.0 ** -52


@dataclass(frozen=True)
class RelationLattice:
    """A lattice of integer relations, stored as a basis in Hermite normal form.

    ``certified`` is True only when the lattice came out of exact arithmetic.
    """

    n: int
    basis: tuple = ()
    certified: bool = True

    def __post_init__(self):
        rows = [tuple(int(x) for x in row) for row in self.basis]
        if any(len(r) != self.n for r in rows):
            raise DimensionMismatch("basis vectors must have length n")
        hnf = hermite_normal_form(rows) if rows else []
        object.__setattr__(self, "basis", tuple(tuple(r) for r in hnf))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {"rank": self.rank, "certified": self.certified,
                "basis": [list(r) for r in self.basis]}

    @classmethod
    def from_json(cls, data: dict, n: int | None = None) -> "RelationLattice":
        basis = [list(map(int, r)) for r in data.get("basis", [])]
        if n is None:
            if not basis:
                raise DimensionMismatch("cannot infer n from an empty basis")
            n = len(basis[0])
        return cls(n=n, basis=tuple(map(tuple, basis)), certified=bool(data.get("certified", False)))

    def permuted(self, perm: Sequence[int]) -> "RelationLattice":
        """Lattice of the spec whose i-th eigenvalue is the ``perm[i]``-th one here."""
        return RelationLattice(self.n, tuple(tuple(r[p] for p in perm) for r in self.basis),
                               self.certified)


def is_relation(lattice: RelationLattice, m: Sequence[int]) -> bool:
    """True iff ``m`` lies in the integer span of the lattice basis."""
    if len(m) != lattice.n:
        raise DimensionMismatch(f"vector of length {len(m)} for a lattice in Z^{lattice.n}")
    return in_lattice(lattice.basis, m)


def exact_relation_lattice(spec: ContractionSpec,
                           trial_bound: int = DEFAULT_TRIAL_BOUND) -> RelationLattice:
    """Certified relation lattice of an exact spec.

    ``prod alpha_i ** m_i == 1`` splits into two integer conditions:
    the prime-exponent vectors of the moduli must cancel, and
    ``sum m_i * arg_over_pi_i`` must be an even integer. With ``D`` the common
    denominator of the arguments the second reads ``sum m_i (D a_i) - 2 D k = 0``
    for some integer ``k``; both are solved as one integer kernel in
    ``Z^(n+1)`` and projected back to ``Z^n`` (``k`` is determined by ``m``).
    """
    if not spec.is_exact:
        raise NotCertified("exact_relation_lattice needs an exact spec")
    n = spec.n
    exps = [prime_exponents(e.modulus, trial_bound) for e in spec.eigenvalues]
    primes = sorted(set().union(*exps))
    rows = [[ex.get(p, 0) for ex in exps] + [0] for p in primes]
    args = [e.arg_over_pi for e in spec.eigenvalues]
    d = math.lcm(*(a.denominator for a in args))
    rows.append([int(a * d) for a in args] + [-2 * d])
    kernel = integer_kernel(rows, ncols=n + 1)
    return RelationLattice(n, tuple(tuple(v[:n]) for v in kernel), certified=True)


def evaluate_relation(spec: ContractionSpec, m: Sequence[int]):
    """``prod alpha_i ** m_i`` as a :class:`Polar` (exact for exact specs)."""
    if len(m) != spec.n:
        raise DimensionMismatch(f"vector of length {len(m)} for n = {spec.n}")
    return product(spec.eigenvalues, m)


def relation_residual(spec: ContractionSpec, m: Sequence[int], dps: int = 50) -> float:
    """``|prod alpha_i ** m_i - 1|`` recomputed at ``dps`` decimal digits.

    The stored moduli and arguments are taken as exact binary numbers.
    """
    with mpmath.workdps(dps):
        log_w = mpmath.mpf(0)
        arg = mpmath.mpf(0)
        for e, k in zip(spec.eigenvalues, m):
            if k:
                log_w += k * mpmath.log(mpmath.mpf(float(e.modulus)))
                arg += k * mpmath.mpf(float(e.arg_over_pi))
        w = mpmath.exp(log_w) * mpmath.expjpi(arg)
        return float(abs(w - 1))


def heuristic_relation_lattice(spec: ContractionSpec, height_bound: int = 12,
                               tolerance: float = 1e-12, scale: float = 1e13,
                               dps: int = 50) -> RelationLattice:
    """Relation lattice of float data by LLL integer-relation detection.

    The lattice ``{(m, k)}`` with rows ``e_i (+) C*(log|alpha_i|, arg alpha_i)``
    and ``e_{n+1} (+) C*(0, 2 pi)`` is LLL-reduced; reduced rows whose ``m``
    part stays within ``height_bound`` are verified by recomputing
    ``|prod alpha_i ** m_i - 1|`` at ``dps`` digits. A residual below
    ``tolerance`` accepts the row. A residual above ``tolerance`` but inside
    the rounding noise of the float inputs cannot be decided and raises
    :class:`PrecisionExhausted`; so does a reduced row that verifies but is
    taller than ``height_bound``, since dropping it would understate the
    lattice. The result is never marked certified.
    """
    if height_bound < 1:
        raise ValueError("height_bound must be >= 1")
    if spec.is_exact:
        spec = spec.to_float()
    n = spec.n
    with mpmath.workdps(dps):
        c = mpmath.mpf(scale)
        logs = [mpmath.log(mpmath.mpf(float(e.modulus))) for e in spec.eigenvalues]
        angs = [mpmath.pi * mpmath.mpf(float(e.arg_over_pi)) for e in spec.eigenvalues]
        rows = []
        for i in range(n):
            unit = [int(i == j) for j in range(n + 1)]
            rows.append(unit + [int(mpmath.nint(c * logs[i])), int(mpmath.nint(c * angs[i]))])
        rows.append([0] * n + [1, 0, int(mpmath.nint(2 * c * mpmath.pi))])
    reduced = lll_reduce(rows)

    found = []
    for row in reduced:
        m = row[:n]
        if not any(m):
            continue
        res = relation_residual(spec, m, dps)
        noise = 4 * _FLOAT_EPS * sum(abs(x) for x in m)
        if max(abs(x) for x in m) > height_bound:
            if res < tolerance:
                # discarding a verified relation would return a silently smaller lattice
                raise PrecisionExhausted(
                    f"verified relation {m} exceeds height bound {height_bound}")
            continue
        if res < tolerance:
            found.append(tuple(m))
        elif res <= noise:
            raise PrecisionExhausted(
                f"candidate {m} has residual {res:.3g}, inside the input rounding noise "
                f"{noise:.3g} but above tolerance {tolerance:.3g}")
    return RelationLattice(n, tuple(found), certified=False)


def relation_lattice(spec: ContractionSpec, **kwargs) -> RelationLattice:
    """Exact lattice for exact specs, heuristic lattice for float specs."""
    if spec.is_exact:
        return exact_relation_lattice(spec, **{k: v for k, v in kwargs.items()
                                              if k == "trial_bound"})
    return heuristic_relation_lattice(spec, **{k: v for k, v in kwargs.items()
                                              if k != "trial_bound"})
