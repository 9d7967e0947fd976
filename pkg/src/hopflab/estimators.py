"""scikit-learn style wrappers.

``TorusClosureEstimator`` is fit on the eigenvalues of a deck generator and
predicts closure membership of diagonal elements; ``ShellPotentialTransformer``
maps points of ``C^n \\ 0`` to the shell potential. Both follow the usual
conventions (constructor stores params, ``fit`` sets trailing-underscore
attributes, ``get_params``/``set_params``/``clone`` work).
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_elements, check_points, check_spec
from .eigendata import real_part_operator
from .factor import DEFAULT_TRIAL_BOUND
from .relation_lattice import exact_relation_lattice, heuristic_relation_lattice
from .shell_potential import ShellPotential, log_potential, potential, shell_time, vaisman_sample
from .zariski_closure import closure, contains


class TorusClosureEstimator(BaseEstimator):
    """Zariski closure of ``<A>`` learned from the eigenvalues of ``A``.

    Parameters
    ----------
    height_bound, tolerance : used for float eigenvalues (heuristic lattice).
    band : float membership is undecidable for residuals in ``(tol, band*tol]``.
    trial_bound : trial-division bound for exact factorization.
    """

    def __init__(self, height_bound=12, tolerance=1e-12, band=1e4,
                 trial_bound=DEFAULT_TRIAL_BOUND):
        self.height_bound = height_bound
        self.tolerance = tolerance
        self.band = band
        self.trial_bound = trial_bound

    def fit(self, X, y=None):
        spec = check_spec(X)
        if spec.is_exact:
            lattice = exact_relation_lattice(spec, self.trial_bound)
        else:
            lattice = heuristic_relation_lattice(spec, self.height_bound, self.tolerance)
        self.spec_ = spec
        self.lattice_ = lattice
        self.closure_ = closure(spec, lattice)
        self.n_features_in_ = spec.n
        self.dim_connected_ = self.closure_.dim_connected
        self.certified_ = lattice.certified
        return self

    def predict(self, X):
        """Membership of each diagonal element (row) in the closure."""
        check_is_fitted(self, "closure_")
        elements = check_elements(X, self.n_features_in_)
        return np.array([contains(self.closure_, g, self.tolerance, self.band) for g in elements])

    def transform(self, X):
        """Character values ``chi_m(g)`` for the lattice basis, shape ``(n_samples, rank)``."""
        check_is_fitted(self, "closure_")
        elements = check_elements(X, self.n_features_in_)
        basis = self.lattice_.basis
        out = np.empty((len(elements), len(basis)), dtype=complex)
        for i, g in enumerate(elements):
            for j, m in enumerate(basis):
                out[i, j] = g.character(m).to_complex()
        return out

    def contains_real_part(self) -> bool:
        check_is_fitted(self, "closure_")
        return contains(self.closure_, real_part_operator(self.spec_), self.tolerance, self.band)


class ShellPotentialTransformer(TransformerMixin, BaseEstimator):
    """Evaluate the shell potential (or shell time / log potential) at points.

    ``eigenvalues`` is anything :func:`hopflab.make_spec` accepts. ``fit``
    only validates; the transform is determined by the parameters.
    """

    _outputs = {"potential": potential, "log_potential": log_potential}

    def __init__(self, eigenvalues=None, lam=1.0, output="potential",
                 root_tolerance=1e-13, hessian_step=1e-4):
        self.eigenvalues = eigenvalues
        self.lam = lam
        self.output = output
        self.root_tolerance = root_tolerance
        self.hessian_step = hessian_step

    def fit(self, X=None, y=None):
        if self.eigenvalues is None:
            raise ValueError("eigenvalues must be set before fit")
        if self.output not in ("potential", "log_potential", "shell_time"):
            raise ValueError(f"unknown output {self.output!r}")
        spec = check_spec(self.eigenvalues)
        self.spec_ = spec
        self.potential_ = ShellPotential(spec, float(self.lam), self.root_tolerance,
                                         self.hessian_step)
        self.n_features_in_ = spec.n
        if X is not None:
            check_points(X, spec.n)
        return self

    def transform(self, X):
        check_is_fitted(self, "potential_")
        pts = check_points(X, self.n_features_in_)
        p = self.potential_
        if self.output == "shell_time":
            vals = [shell_time(z, p.log_moduli, p.root_tolerance) for z in pts]
        else:
            f = self._outputs[self.output]
            vals = [f(z, p) for z in pts]
        return np.asarray(vals, dtype=float).reshape(-1, 1)

    def vaisman_samples(self, X):
        check_is_fitted(self, "potential_")
        return [vaisman_sample(z, self.potential_) for z in check_points(X, self.n_features_in_)]
