"""Invariant tensor monomials of a diagonal generator.

The eigenbasis of ``W = V^{(x)k} (x) (V*)^{(x)l}`` is indexed by ordered tuples
``up`` (V factors) and ``down`` (V* factors); the generator acts on the basis
vector by ``prod alpha_up / prod alpha_down``. A basis vector is invariant iff
its exponent vector lies in the relation lattice.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from .eigendata import EXACT, ContractionSpec, DiagonalElement, Polar, product, real_part_operator
from .exceptions import DimensionMismatch, EnumerationCapExceeded
from .relation_lattice import RelationLattice, is_relation, relation_lattice

MAX_ORDER = 8
MAX_TUPLES = 10 ** 7


@dataclass(frozen=True, order=True)
class TensorMonomialIndex:
    """Basis tensor ``z_up[0] (x) ... (x) zeta_down[0] (x) ...``; indices are 1-based."""

    up: Tuple[int, ...] = ()
    down: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "up", tuple(int(i) for i in self.up))
        object.__setattr__(self, "down", tuple(int(i) for i in self.down))
        if any(i < 1 for i in self.up + self.down):
            raise DimensionMismatch("tensor indices are 1-based")

    def check(self, n: int) -> None:
        if any(i > n for i in self.up + self.down):
            raise DimensionMismatch(f"index out of range 1..{n}: {self}")

    def exponent(self, n: int) -> Tuple[int, ...]:
        self.check(n)
        e = [0] * n
        for i in self.up:
            e[i - 1] += 1
        for i in self.down:
            e[i - 1] -= 1
        return tuple(e)

    def to_json(self) -> dict:
        return {"up": list(self.up), "down": list(self.down)}


def weight(idx: TensorMonomialIndex, g: DiagonalElement) -> Polar:
    """Eigenvalue of ``g`` on the basis tensor ``idx``."""
    idx.check(g.n)
    return product(g.entries, idx.exponent(g.n))


def _multiset_permutations(items: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    counts = Counter(items)
    keys = sorted(counts)
    size = len(items)

    def rec(prefix):
        if len(prefix) == size:
            yield tuple(prefix)
            return
        for key in keys:
            if counts[key]:
                counts[key] -= 1
                prefix.append(key)
                yield from rec(prefix)
                prefix.pop()
                counts[key] += 1

    yield from rec([])


def _arrangements(items: Sequence[int]) -> int:
    out = math.factorial(len(items))
    for c in Counter(items).values():
        out //= math.factorial(c)
    return out


def _check_caps(n: int, k: int, l: int, max_order: int, max_tuples: int) -> None:
    if k < 0 or l < 0:
        raise ValueError("k and l must be non-negative")
    if k + l > max_order:
        raise EnumerationCapExceeded(f"k + l = {k + l} exceeds the cap {max_order}")
    if n ** (k + l) > max_tuples:
        raise EnumerationCapExceeded(f"{n}^{k + l} index tuples exceed the cap {max_tuples}")


def invariant_multisets(spec: ContractionSpec, k: int, l: int,
                        lattice: Optional[RelationLattice] = None,
                        max_order: int = MAX_ORDER, max_tuples: int = MAX_TUPLES,
                        ) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Sorted (up, down) multisets, as sorted tuples, whose exponent is a relation."""
    n = spec.n
    _check_caps(n, k, l, max_order, max_tuples)
    if lattice is None:
        lattice = relation_lattice(spec)
    out = []
    indices = range(1, n + 1)
    for up in itertools.combinations_with_replacement(indices, k):
        for down in itertools.combinations_with_replacement(indices, l):
            if is_relation(lattice, TensorMonomialIndex(up, down).exponent(n)):
                out.append((up, down))
    return out


def enumerate_invariants(spec: ContractionSpec, k: int, l: int,
                         lattice: Optional[RelationLattice] = None,
                         max_order: int = MAX_ORDER, max_tuples: int = MAX_TUPLES,
                         ) -> List[TensorMonomialIndex]:
    """All invariant ordered index tuples, lexicographically sorted."""
    out = []
    for up, down in invariant_multisets(spec, k, l, lattice, max_order, max_tuples):
        for pu in _multiset_permutations(up):
            for pd in _multiset_permutations(down):
                out.append(TensorMonomialIndex(pu, pd))
    out.sort()
    return out


def invariant_counts(spec: ContractionSpec, k: int, l: int,
                     lattice: Optional[RelationLattice] = None, **caps) -> dict:
    """Ordered-tuple count (dimension of the invariant subspace) and distinct-exponent count."""
    multisets = invariant_multisets(spec, k, l, lattice, **caps)
    ordered = sum(_arrangements(up) * _arrangements(down) for up, down in multisets)
    exponents = {TensorMonomialIndex(up, down).exponent(spec.n) for up, down in multisets}
    return {"k": k, "l": l, "ordered": ordered, "exponent_vectors": len(exponents)}


def invariant_dimension(spec: ContractionSpec, k: int, l: int,
                        lattice: Optional[RelationLattice] = None, **caps) -> int:
    return invariant_counts(spec, k, l, lattice, **caps)["ordered"]


def check_A1_fixes_invariants(spec: ContractionSpec, k: int, l: int,
                              lattice: Optional[RelationLattice] = None,
                              tolerance: float = 1e-12, **caps) -> bool:
    """Every A-invariant basis tensor is also fixed by ``A_1 = diag(|alpha_i|)``.

    The weight only depends on the multisets of indices, so one representative
    per multiset pair covers every ordered tuple.
    """
    a1 = real_part_operator(spec)
    for up, down in invariant_multisets(spec, k, l, lattice, **caps):
        w = weight(TensorMonomialIndex(up, down), a1)
        ok = w.is_one() if w.mode == EXACT else abs(w.to_complex() - 1) <= tolerance
        if not ok:
            return False
    return True


def invariants_by_weight(g: DiagonalElement, k: int, l: int,
                         tolerance: float = 1e-12) -> List[TensorMonomialIndex]:
    """Brute force: every ordered tuple whose ``g``-weight equals 1.

    Works straight from the weights, with no lattice involved.
    """
    n = g.n
    out = []
    indices = range(1, n + 1)
    for up in itertools.product(indices, repeat=k):
        for down in itertools.product(indices, repeat=l):
            idx = TensorMonomialIndex(up, down)
            w = weight(idx, g)
            if (w.is_one() if w.mode == EXACT else abs(w.to_complex() - 1) <= tolerance):
                out.append(idx)
    out.sort()
    return out
