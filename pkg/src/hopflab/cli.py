"""Command-line front end: ``hopflab {analyze,invariants,potential,verify-lee,kodaira}``.

Reports are JSON on stdout (or ``--out``). Exit codes: 0 success,
2 parse/validation error, 3 precision or certification failure,
4 an internal check that must always hold came out false.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from typing import Callable, Iterable, List, Optional, Sequence

import numpy as np

from . import __version__
from .eigendata import ContractionSpec, load_spec, spec_to_json
from .exceptions import HopfLabError, ParseError, TheoremViolation
from .field_tensors import MonomialTensorField, descends, verify_lee_invariance
from .kodaira import (detect_quasi_regular, kodaira_dimension, leaf_space_summary,
                      pluricanonical_dimension)
from .relation_lattice import exact_relation_lattice, heuristic_relation_lattice
from .shell_potential import (ShellPotential, automorphy_factor, complex_hessian,
                              empirical_psd_threshold, flow, potential, random_points,
                              time_to_shell, vaisman_sample)
from .tensor_invariants import (check_A1_fixes_invariants, enumerate_invariants,
                                invariant_counts)
from .zariski_closure import MEMBERSHIP_MODEL, closure, contains, verify_real_part
from .eigendata import real_part_operator

DEFAULT_SEED = 20240601
DEFAULT_TOLERANCE = 1e-12
FLOW_GRID = (-2.0, -1.0, -0.5, 0.5, 1.0, 2.0)
FD_TOLERANCE = 1e-6


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("HOPFLAB_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(f: Callable, items: Iterable) -> List:
    items = list(items)
    if _threads() == 1 or len(items) < 2:
        return [f(x) for x in items]
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        return list(pool.map(f, items))


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def _parse_point(text: str) -> np.ndarray:
    try:
        return np.array([complex(part.strip().replace(" ", "")) for part in text.split(",")])
    except ValueError as exc:
        raise ParseError(f"cannot parse point {text!r}") from exc


def _parse_pair(text: str):
    try:
        k, l = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise ParseError(f"expected K,L but got {text!r}") from exc
    return k, l


def _lattice(spec: ContractionSpec, args):
    if spec.is_exact:
        return exact_relation_lattice(spec)
    return heuristic_relation_lattice(spec, args.height_bound, args.tolerance)


def _cplx(z) -> list:
    return [[float(w.real), float(w.imag)] for w in z]


def _default_lambda(spec: ContractionSpec) -> float:
    return 2.0 * math.log(float(min(spec.moduli)))


def _header(args, command: str) -> dict:
    out = {"tool": "hopflab", "version": __version__, "command": command,
           "seed": args.seed, "tolerance": args.tolerance}
    if not args.no_timestamp:
        out["timestamp"] = datetime.now(timezone.utc).isoformat()
    return out


# --- potential checks --------------------------------------------------------

def potential_checks(spec: ContractionSpec, lam: float, checks: Sequence[str], seed: int,
                     samples: int, at: Optional[np.ndarray] = None) -> dict:
    p = ShellPotential(spec, lam)
    rng = np.random.default_rng(seed)
    pts = random_points(spec.n, samples, rng, r_min=0.5, r_max=2.0)
    if at is not None:
        pts = np.vstack([at[None, :], pts])
    out = {}
    if "normalization" in checks:
        sphere = random_points(spec.n, samples, rng, radius=1.0)
        res = max(abs(potential(z, p) - 1.0) for z in sphere)
        out["normalization"] = {"max_residual": res, "tolerance": 1e-12, "ok": res < 1e-12}
    if "flow" in checks:
        def rel(z):
            base = potential(z, p)
            return max(abs(potential(flow(z, spec, s), p) - math.exp(lam * s) * base) / base
                       for s in FLOW_GRID)
        res = max(_pmap(rel, pts))
        out["flow"] = {"max_relative_residual": res, "tolerance": 1e-10, "ok": res < 1e-10}
    if "phase" in checks:
        def phase(z):
            rot = z * np.exp(1j * rng_phases[: spec.n])
            return abs(potential(rot, p) - potential(z, p)) / potential(z, p)
        rng_phases = rng.uniform(0, 2 * np.pi, size=spec.n)
        res = max(_pmap(phase, pts))
        out["phase"] = {"max_relative_residual": res, "tolerance": 1e-12, "ok": res < 1e-12}
    if "psh" in checks:
        mins = _pmap(lambda z: float(np.linalg.eigvalsh(complex_hessian(z, p)).min()), pts)
        out["psh"] = {"min_eigenvalue": min(mins), "tolerance": FD_TOLERANCE,
                      "ok": min(mins) >= -FD_TOLERANCE}
    if "kernel" in checks:
        samples_v = _pmap(lambda z: vaisman_sample(z, p), pts)
        k_res = max(max(s.kernel_residual_lee, s.kernel_residual_anti_lee) for s in samples_v)
        min0 = min(float(s.omega0_eigenvalues.min()) for s in samples_v)
        ranks = sorted({s.omega0_rank for s in samples_v})
        out["kernel"] = {"max_kernel_residual": k_res, "min_omega0_eigenvalue": min0,
                         "omega0_ranks": ranks, "expected_rank": spec.n - 1,
                         "tolerance": FD_TOLERANCE,
                         "ok": k_res <= FD_TOLERANCE and min0 >= -FD_TOLERANCE
                         and ranks == [spec.n - 1]}
    return out


# --- commands ----------------------------------------------------------------

def cmd_invariants(args) -> dict:
    spec = load_spec(args.spec)
    lattice = _lattice(spec, args)
    counts = invariant_counts(spec, args.k, args.l, lattice)
    report = _header(args, "invariants")
    report.update({"k": args.k, "l": args.l, "ordered": counts["ordered"],
                   "exponent_vectors": counts["exponent_vectors"],
                   "certified": lattice.certified})
    if args.list:
        report["indices"] = [i.to_json() for i in enumerate_invariants(spec, args.k, args.l, lattice)]
    return report


def cmd_potential(args) -> dict:
    spec = load_spec(args.spec)
    lam = args.lam if args.lam is not None else _default_lambda(spec)
    p = ShellPotential(spec, lam)
    report = _header(args, "potential")
    report.update({"lambda": lam, "automorphy_factor": automorphy_factor(p)})
    at = _parse_point(args.at) if args.at else None
    if at is not None:
        report["at"] = _cplx(at)
        report["shell_time"] = time_to_shell(at, spec)
        report["phi"] = potential(at, p)
    checks = [c for c in args.check.split(",") if c] if args.check else []
    unknown = set(checks) - {"psh", "flow", "kernel", "phase", "normalization"}
    if unknown:
        raise ParseError(f"unknown checks {sorted(unknown)}")
    report["checks"] = potential_checks(spec, lam, checks, args.seed, args.samples, at)
    if args.find_threshold:
        rng = np.random.default_rng(args.seed)
        pts = random_points(spec.n, args.samples, rng, r_min=0.5, r_max=2.0)
        report["empirical_psd_threshold"] = empirical_psd_threshold(spec, pts)
    return report


def cmd_verify_lee(args) -> dict:
    spec = load_spec(args.spec)
    fld = MonomialTensorField.from_json(_load_json(args.field))
    report = _header(args, "verify-lee")
    rep = verify_lee_invariance(fld, spec, tolerance=args.fd_tolerance, seed=args.seed)
    report.update(rep.to_json())
    report["certified"] = spec.is_exact
    return report


def cmd_kodaira(args) -> dict:
    spec = load_spec(args.spec)
    kod = kodaira_dimension(spec, args.max_k)
    if spec.is_exact:
        for k in range(0, args.max_k + 1):
            pluricanonical_dimension(spec, k, verify_degree=args.verify_degree)
    report = _header(args, "kodaira")
    report.update({"kodaira": kod.to_json(), "counts": list(kod.counts),
                   "certificate": kod.certificate, "certified": spec.is_exact})
    if spec.is_exact:
        qr = detect_quasi_regular(spec)
        report["quasi_regular"] = qr.to_json()
        if qr.is_quasi_regular:
            summary = leaf_space_summary(qr, spec, args.max_k)
            if not summary["consistent"]:
                raise TheoremViolation("Kodaira dimension of M and of the leaf space differ")
            report["leaf_space"] = summary
    else:
        report["quasi_regular"] = None
    return report


def cmd_analyze(args) -> dict:
    spec = load_spec(args.spec)
    lattice = _lattice(spec, args)
    clo = closure(spec, lattice)
    if lattice.certified:
        contains_a1 = verify_real_part(spec, lattice)
    else:
        contains_a1 = contains(clo, real_part_operator(spec), args.tolerance)
    if not contains_a1:
        raise TheoremViolation("A_1 is not in the computed closure")

    pairs = [_parse_pair(x) for x in (args.invariants or [])]
    inv_reports = []
    fields = [MonomialTensorField(tuple([1] + [0] * (spec.n - 1)), (1,), ())]
    for k, l in pairs:
        counts = invariant_counts(spec, k, l, lattice)
        if not check_A1_fixes_invariants(spec, k, l, lattice, tolerance=args.tolerance):
            raise TheoremViolation(f"A_1 moves an A-invariant tensor for (k, l) = ({k}, {l})")
        inv_reports.append({**counts, "A1_fixes_all": True})
        for idx in enumerate_invariants(spec, k, l, lattice)[: args.max_fields]:
            fields.append(MonomialTensorField((0,) * spec.n, idx.down, idx.up))

    lee = []
    for fld in fields:
        if spec.is_exact or descends(fld, spec):
            rep = verify_lee_invariance(fld, spec, seed=args.seed)
            lee.append({"field": fld.to_json(), "verdict": rep.verdict, "mu_lee": rep.mu_lee,
                        "max_pullback_residual": rep.max_pullback_residual,
                        "tolerance": rep.tolerance})

    lam = args.lam if args.lam is not None else _default_lambda(spec)
    checks = potential_checks(spec, lam, ("normalization", "flow", "phase", "psh", "kernel"),
                              args.seed, args.samples)
    kod = kodaira_dimension(spec, args.max_k)
    kod_report = {"kodaira": kod.to_json(), "counts": list(kod.counts),
                  "certificate": kod.certificate}
    if spec.is_exact:
        qr = detect_quasi_regular(spec)
        kod_report["quasi_regular"] = qr.to_json()
        if qr.is_quasi_regular:
            kod_report["leaf_space"] = leaf_space_summary(qr, spec, args.max_k)

    report = _header(args, "analyze")
    report.update({
        "spec": spec_to_json(spec),
        "lattice": lattice.to_json(),
        "closure": {"dim_connected": clo.dim_connected, "rank": lattice.rank,
                    "contains_A1": contains_a1, "certified": lattice.certified,
                    "membership_model": MEMBERSHIP_MODEL},
        "invariants": inv_reports,
        "potential": {"lambda": lam, "checks": checks},
        "lee_invariance": lee,
        "kodaira": kod_report,
        "certified": bool(spec.is_exact and lattice.certified),
    })
    return report


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--spec", required=True, help="spec JSON file")
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    parser.add_argument("--json", action="store_true", help="compact JSON output")
    parser.add_argument("--no-timestamp", action="store_true")
    parser.add_argument("--height-bound", type=int, default=12)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hopflab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hopflab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for one spec")
    _common(p)
    p.add_argument("--invariants", action="append", metavar="K,L")
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--max-k", type=int, default=10)
    p.add_argument("--max-fields", type=int, default=10)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("invariants", help="count A-invariant tensor monomials")
    _common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("potential", help="evaluate and check the shell potential")
    _common(p)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--at", help="comma-separated complex coordinates, e.g. 1,0 or 1+1j,2")
    p.add_argument("--check", default="", help="comma list of psh,flow,kernel,phase,normalization")
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--find-threshold", action="store_true")
    p.set_defaults(func=cmd_potential)

    p = sub.add_parser("verify-lee", help="Lee/anti-Lee invariance of a monomial field")
    _common(p)
    p.add_argument("--field", required=True, help="field JSON file")
    p.add_argument("--fd-tolerance", type=float, default=1e-10)
    p.set_defaults(func=cmd_verify_lee)

    p = sub.add_parser("kodaira", help="plurigenera, Kodaira dimension, quasi-regularity")
    _common(p)
    p.add_argument("--max-k", type=int, default=10)
    p.add_argument("--verify-degree", type=int, default=12)
    p.set_defaults(func=cmd_kodaira)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except HopfLabError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return exc.exit_code
    text = json.dumps(report, sort_keys=True, separators=(",", ":") if args.json else None,
                      indent=None if args.json else 2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
