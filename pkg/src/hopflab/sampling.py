"""Seeded random generators for exact specs and descending tensor fields."""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional

import numpy as np

from .eigendata import ContractionSpec, Eigenvalue
from .field_tensors import MonomialTensorField
from .relation_lattice import RelationLattice, exact_relation_lattice

BASE_MODULI = (Fraction(2), Fraction(3), Fraction(5), Fraction(7), Fraction(3, 2),
               Fraction(5, 3), Fraction(7, 2), Fraction(4, 3), Fraction(11, 5))
ARG_DENOMINATORS = (1, 2, 3, 4, 6)


def random_arg(rng: np.random.Generator) -> Fraction:
    if rng.random() < 0.3:
        return Fraction(0)
    d = int(rng.choice(ARG_DENOMINATORS))
    return Fraction(int(rng.integers(-d + 1, d + 1)), d)


def random_exact_spec(rng: np.random.Generator, n: Optional[int] = None, max_n: int = 5,
                      planted: Optional[bool] = None) -> ContractionSpec:
    """A random exact spec; with ``planted`` the moduli share a few base moduli.

    Planted moduli are products ``prod b_t ** e_t`` (``e_t`` in 0..2, not all
    zero) over one to three bases, which forces multiplicative relations.
    Unplanted moduli are drawn independently from the base list.
    """
    if n is None:
        n = int(rng.integers(1, max_n + 1))
    if planted is None:
        planted = bool(rng.random() < 0.7)
    eigs = []
    if planted:
        nb = int(rng.integers(1, min(3, n) + 1))
        idx = rng.choice(len(BASE_MODULI), size=nb, replace=False)
        bases = [BASE_MODULI[i] for i in idx]
        for _ in range(n):
            while True:
                e = rng.integers(0, 3, size=nb)
                if e.any():
                    break
            mod = Fraction(1)
            for b, k in zip(bases, e):
                mod *= b ** int(k)
            eigs.append(Eigenvalue(mod, random_arg(rng)))
    else:
        for _ in range(n):
            eigs.append(Eigenvalue(BASE_MODULI[int(rng.integers(len(BASE_MODULI)))], random_arg(rng)))
    return ContractionSpec(tuple(eigs))


def exact_corpus(size: int, seed: int = 0, max_n: int = 5) -> List[ContractionSpec]:
    rng = np.random.default_rng(seed)
    return [random_exact_spec(rng, max_n=max_n) for _ in range(size)]


def random_descending_field(spec: ContractionSpec, rng: np.random.Generator,
                            lattice: Optional[RelationLattice] = None, max_slots: int = 6,
                            max_tries: int = 200) -> MonomialTensorField:
    """A random monomial field whose net exponent lies in the relation lattice.

    Picks a small random lattice vector ``e`` (possibly zero) and splits it as
    ``m + #forms - #vectors`` with ``m >= 0`` and random padding.
    """
    if lattice is None:
        lattice = exact_relation_lattice(spec)
    n = spec.n
    for _ in range(max_tries):
        e = np.zeros(n, dtype=int)
        for row in lattice.basis:
            e += int(rng.integers(-1, 2)) * np.array(row)
        m = rng.integers(0, 3, size=n)
        forms = rng.integers(0, 2, size=n)
        vectors = m + forms - e
        fix = np.maximum(0, -vectors)
        forms = forms + fix
        vectors = vectors + fix
        if forms.sum() + vectors.sum() > max_slots:
            continue
        form_slots = [i + 1 for i in range(n) for _ in range(int(forms[i]))]
        vector_slots = [i + 1 for i in range(n) for _ in range(int(vectors[i]))]
        rng.shuffle(form_slots)
        rng.shuffle(vector_slots)
        return MonomialTensorField(tuple(int(x) for x in m), tuple(vector_slots), tuple(form_slots))
    return MonomialTensorField(tuple([1] + [0] * (n - 1)), (1,), ())
