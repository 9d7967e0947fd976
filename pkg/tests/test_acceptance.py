"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (lines are repeated in the
terminal summary) or ``python tests/test_acceptance.py``.
"""
import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from hopflab import (PrecisionExhausted, ShellPotential, exact_relation_lattice,
                     heuristic_relation_lattice, kodaira_dimension, make_spec, potential,
                     real_part_operator, time_to_shell, vaisman_sample, verify_lee_invariance,
                     verify_real_part)
from hopflab.field_tensors import deck_weight, lee_modulus_ratio
from hopflab.intlattice import lll_reduce
from hopflab.kodaira import enumerate_pluricanonical, pluricanonical_dimension
from hopflab.sampling import exact_corpus, random_descending_field
from hopflab.shell_potential import empirical_psd_threshold, flow, random_points
from hopflab.tensor_invariants import enumerate_invariants, weight

RESULTS = {}
CORPUS_SEED = 11


def record(num, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {title} -- {detail}"
    RESULTS[num] = line
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def corpus():
    return exact_corpus(200, seed=CORPUS_SEED, max_n=5)


def test_criterion_1_real_part_in_closure(corpus):
    start = time.perf_counter()
    results = [verify_real_part(spec) for spec in corpus]
    elapsed = time.perf_counter() - start
    planted = sum(exact_relation_lattice(s).rank > 0 for s in corpus)
    ok = all(results) and len(corpus) >= 200 and elapsed < 60
    record(1, "A_1 in closure", ok,
           f"{sum(results)}/{len(corpus)} true ({planted} with relations), {elapsed:.2f}s < 60s")


def test_criterion_2_invariants_fixed_by_real_part(corpus):
    checked = exceptions = 0
    for spec in corpus:
        lat = exact_relation_lattice(spec)
        a1 = real_part_operator(spec)
        for k in range(7):
            for l in range(7 - k):
                for idx in enumerate_invariants(spec, k, l, lat):
                    checked += 1
                    exceptions += not weight(idx, a1).is_one()
    record(2, "weight(., A_1) == 1 for every invariant, k+l <= 6", exceptions == 0,
           f"{checked} ordered monomials checked, {exceptions} exceptions")


def test_criterion_3_lee_invariance(corpus):
    rng = np.random.default_rng(3)
    lattices = [exact_relation_lattice(s) for s in corpus]
    worst = 0.0
    nonzero = 0
    count = 500
    for i in range(count):
        j = int(rng.integers(len(corpus)))
        spec, lat = corpus[j], lattices[j]
        t = random_descending_field(spec, rng, lat)
        assert deck_weight(t, spec).is_one()
        nonzero += lee_modulus_ratio(t, spec) != 1
        rep = verify_lee_invariance(t, spec, seed=i, tolerance=1e-10)
        nonzero += not rep.symbolic_zero or rep.mu_lee != 0 or rep.mu_anti_lee != 0
        worst = max(worst, rep.max_pullback_residual)
    ok = nonzero == 0 and worst <= 1e-10
    record(3, "Lee / anti-Lee invariance of descending fields", ok,
           f"{count} fields, {nonzero} nonzero symbolic eigenvalues, "
           f"max pullback residual {worst:.2e} <= 1e-10")


def test_criterion_4_classical_closed_form():
    spec = make_spec([2, 2])
    p = ShellPotential(spec, 2 * math.log(2))
    pts = random_points(2, 1000, np.random.default_rng(4), r_min=0.5, r_max=4.0)
    start = time.perf_counter()
    err = max(abs(potential(z, p) - float(np.vdot(z, z).real)) for z in pts)
    elapsed = time.perf_counter() - start
    record(4, "classical Hopf potential equals |z|^2", err < 1e-10 and elapsed < 5,
           f"max error {err:.2e} < 1e-10 over 1000 points, {elapsed:.2f}s < 5s")


def test_criterion_5_functional_equations():
    rng = np.random.default_rng(5)
    specs = exact_corpus(10, seed=55, max_n=5)
    shell = flow_res = phase = 0.0
    for spec in specs:
        lam = float(rng.uniform(0.2, 4.0))
        p = ShellPotential(spec, lam)
        for z in random_points(spec.n, 100, rng):
            t = time_to_shell(z, spec)
            shell = max(shell, abs(float(np.sum(np.abs(flow(z, spec, -t)) ** 2)) - 1.0))
            s = float(rng.uniform(-3, 3))
            base = potential(z, p)
            flow_res = max(flow_res, abs(potential(flow(z, spec, s), p) - math.exp(lam * s) * base)
                           / abs(math.exp(lam * s) * base))
            rot = z * np.exp(1j * rng.uniform(0, 2 * np.pi, size=spec.n))
            phase = max(phase, abs(potential(rot, p) - base) / base)
    ok = shell < 1e-12 and flow_res < 1e-10 and phase < 1e-12
    record(5, "shell / flow / phase equations", ok,
           f"10 specs x 100 samples: shell {shell:.2e} < 1e-12, flow {flow_res:.2e} < 1e-10 "
           f"(relative), phase {phase:.2e} < 1e-12 (relative)")


def test_criterion_6_vaisman_form():
    rng = np.random.default_rng(6)
    specs = [s for s in exact_corpus(40, seed=66, max_n=4) if s.n >= 2][:5]
    min_eig = math.inf
    kernel = 0.0
    bad_rank = 0
    lams = []
    for spec in specs:
        pts = random_points(spec.n, 20, rng, r_min=0.5, r_max=2.0)
        lam = 2 * empirical_psd_threshold(spec, pts)
        lams.append(lam)
        p = ShellPotential(spec, lam)
        for z in pts:
            s = vaisman_sample(z, p)
            min_eig = min(min_eig, float(s.hessian_eigenvalues.min()))
            kernel = max(kernel, s.kernel_residual_lee, s.kernel_residual_anti_lee)
            bad_rank += s.omega0_rank != spec.n - 1
    ok = len(specs) == 5 and min_eig >= -1e-6 and kernel <= 1e-6 and bad_rank == 0
    record(6, "Vaisman form semi-positivity and kernel", ok,
           f"5 specs x 20 points, lambda = {', '.join(f'{x:.3g}' for x in lams)}: "
           f"min eig {min_eig:.2e} >= -1e-6, kernel {kernel:.2e} <= 1e-6, "
           f"{bad_rank} points with rank != n-1")


def test_criterion_7_kodaira_oracle():
    specs = exact_corpus(50, seed=77, max_n=5)
    disagreements = 0
    kappa_ok = True
    for spec in specs:
        for k in range(1, 11):
            disagreements += (enumerate_pluricanonical(spec, k, 20)
                              != pluricanonical_dimension(spec, k).count)
        kappa_ok &= kodaira_dimension(spec, 10).to_json() == "-inf"
    ok = disagreements == 0 and kappa_ok
    record(7, "plurigenera closed form vs enumeration", ok,
           f"50 specs, k = 1..10, degree <= 20: {disagreements} disagreements, "
           f"kappa = -inf in all cases: {kappa_ok}")


def _within_bound(lattice, bound):
    if not lattice.basis:
        return True
    return max(abs(x) for row in lll_reduce(lattice.basis) for x in row) <= bound


def _compare(specs, bound=12, tol=1e-12):
    agree = flagged = wrong = 0
    for spec in specs:
        exact = exact_relation_lattice(spec)
        try:
            heur = heuristic_relation_lattice(spec.to_float(), bound, tol)
        except PrecisionExhausted:
            flagged += 1
            continue
        if heur.basis == exact.basis:
            agree += 1
        else:
            wrong += 1
    return agree, flagged, wrong


def test_criterion_8_exact_vs_heuristic_lattice():
    raw = exact_corpus(100, seed=88, max_n=5)
    a_raw, f_raw, w_raw = _compare(raw)
    pool = exact_corpus(400, seed=89, max_n=5)
    inside = [s for s in pool if _within_bound(exact_relation_lattice(s), 12)][:100]
    a_in, f_in, w_in = _compare(inside)
    ok = len(inside) == 100 and w_raw == 0 and w_in == 0 and a_in >= 99
    record(8, "heuristic lattice reproduces the certified lattice", ok,
           f"specs with relations of height <= 12: {a_in}/100 agree, {f_in} flagged, "
           f"{w_in} wrong; unfiltered: {a_raw}/100 agree, {f_raw} flagged, {w_raw} wrong")


def test_criterion_9_cli_determinism(tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"mode": "exact", "eigenvalues": [
        {"modulus": {"num": 3, "den": 2}, "arg_over_pi": {"num": 1, "den": 3}},
        {"modulus": {"num": 9, "den": 4}, "arg_over_pi": {"num": 2, "den": 3}},
        {"modulus": {"num": 2, "den": 1}, "arg_over_pi": {"num": 0, "den": 1}}]}))
    base = [sys.executable, "-m", "hopflab", "analyze", "--spec", str(spec), "--seed", "42",
            "--invariants", "1,1", "--invariants", "2,1"]
    runs = [subprocess.run(base + ["--no-timestamp"], capture_output=True, check=True).stdout
            for _ in range(2)]
    stamped = [json.loads(subprocess.run(base, capture_output=True, check=True).stdout)
               for _ in range(2)]
    for rep in stamped:
        rep.pop("timestamp")
    ok = runs[0] == runs[1] and stamped[0] == stamped[1] == json.loads(runs[0])
    record(9, "CLI analyze determinism", ok,
           f"byte-identical --no-timestamp output: {runs[0] == runs[1]}; "
           f"timestamped reports equal after dropping the timestamp: {stamped[0] == stamped[1]}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
