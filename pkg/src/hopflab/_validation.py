"""Input validation helpers shared by the estimators and the CLI."""
from __future__ import annotations

from typing import Any, List

import numpy as np

from .eigendata import ContractionSpec, DiagonalElement, make_spec, spec_from_json
from .exceptions import DimensionMismatch, ValidationError


def check_spec(x: Any) -> ContractionSpec:
    """Coerce a spec, a JSON dict, or an eigenvalue sequence to a :class:`ContractionSpec`.

    Complex numpy arrays give float specs; sequences of exact scalars or
    ``(modulus, arg_over_pi)`` pairs give exact ones.
    """
    if isinstance(x, ContractionSpec):
        return x
    if isinstance(x, dict):
        return spec_from_json(x)
    if isinstance(x, np.ndarray):
        if np.iscomplexobj(x) or x.dtype.kind == "f":
            return make_spec([complex(w) for w in x.reshape(-1)])
        if x.dtype.kind in "iu":
            return make_spec([int(w) for w in x.reshape(-1)])
        return make_spec(list(x))
    return make_spec(x)


def check_points(z: Any, n: int) -> np.ndarray:
    """Return points as a complex array of shape ``(n_samples, n)``.

    Accepts complex arrays of width ``n`` or real arrays of width ``2n`` laid
    out as ``(x_1..x_n, y_1..y_n)``; a single point may be 1-D.
    """
    arr = np.asarray(z)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D array of points, got shape {arr.shape}")
    if np.iscomplexobj(arr):
        if arr.shape[1] != n:
            raise DimensionMismatch(f"points have {arr.shape[1]} coordinates, expected {n}")
        out = arr.astype(complex)
    else:
        arr = arr.astype(float)
        if arr.shape[1] == 2 * n:
            out = arr[:, :n] + 1j * arr[:, n:]
        elif arr.shape[1] == n:
            out = arr.astype(complex)
        else:
            raise DimensionMismatch(f"points have {arr.shape[1]} columns, expected {n} or {2 * n}")
    if not np.all(np.isfinite(out)):
        raise ValidationError("points contain NaN or infinity")
    return out


def check_elements(g: Any, n: int) -> List[DiagonalElement]:
    """Coerce diagonal elements (objects or a complex array of rows) to a list."""
    if isinstance(g, DiagonalElement):
        g = [g]
    if isinstance(g, (list, tuple)) and g and all(isinstance(e, DiagonalElement) for e in g):
        out = list(g)
    else:
        out = [DiagonalElement.from_complex(row) for row in check_points(g, n)]
    for e in out:
        if e.n != n:
            raise DimensionMismatch(f"element of size {e.n}, expected {n}")
    return out
