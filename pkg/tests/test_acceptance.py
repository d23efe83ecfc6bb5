"""Acceptance criteria at default settings (mass 1, 200 samples, seed 42).

Each criterion is one test; a one-line PASS/FAIL summary per criterion is
printed at the end of the pytest run (and by running this file directly).
"""

import json
import time

import pytest

from elko_kit import suites
from elko_kit.cli import main

RESULTS = {}

CRITERIA = {
    1: ("ELKO construction fidelity",
        ["elko.charge-eigen", "elko.helicity-eigen", "elko.system1"]),
    2: ("compact-equation equivalence", ["compact.equivalence"]),
    3: ("unitary-antiunitary equivalence", ["u.equivalence"]),
    4: ("Poincare algebra closure, both realizations", ["algebra.dirac", "algebra.elko"]),
    5: ("generator identities and negative controls",
        ["generators.dirac-solution-form", "generators.elko-solution-form",
         "generators.k-conjugation", "generators.dirac-solution-form.control",
         "generators.elko-solution-form.control", "algebra.elko.perturbed.control",
         "algebra.elko.unprojected.control"]),
    6: ("finite-boost cross-validation",
        ["boost.closed-vs-ode", "boost.assembled-vs-ode", "boost.resolves.system1",
         "boost.resolves.label-eigen"]),
    7: ("parallel-boost covariance", ["boost.parallel-covariance",
                                      "boost.parallel-covariance.control"]),
    8: ("Lambda-matrix identities", ["lambda.identities"]),
    9: ("toy model", ["toy.kernel.dimension", "toy.kernel.residual", "toy.offshell.empty",
                      "toy.system1", "toy.involution", "toy.gamma5pct.phase"]),
}


@pytest.fixture(scope="module")
def reports(tmp_path_factory):
    d = tmp_path_factory.mktemp("acceptance")
    out = []
    for k in range(2):
        path = d / f"report{k}.json"
        code = main(["verify", "--suite", "all", "--reproducible", "--out", str(path)])
        out.append((code, path.read_bytes()))
    return out


def _record(n, ok, detail):
    RESULTS[n] = (ok, detail)
    assert ok, detail


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(reports, n):
    title, names = CRITERIA[n]
    rep = json.loads(reports[0][1])
    rows = {c["name"]: c for c in rep["checks"]}
    missing = [x for x in names if x not in rows]
    bad = [x for x in names if x in rows and not rows[x]["pass"]]
    worst = ", ".join(f"{x}={rows[x]['max_residual']:.2e}" for x in names if x in rows)
    detail = f"{title}: {worst}" + (f"; missing {missing}" if missing else "") + \
        (f"; failed {bad}" if bad else "")
    extra_ok = True
    if n == 6:
        conv = rep["meta"]["convention"]
        extra_ok = conv["boost-reading"] is not None and conv["assembled-reading"] is not None
    if n == 9:
        extra_ok = rep["meta"]["measured"]["toy-kernel-dimension"] > 0
    _record(n, not missing and not bad and extra_ok, detail)


def test_criterion_10_determinism(reports):
    (c1, a), (c2, b) = reports
    _record(10, a == b and c1 == c2 == 0,
            f"determinism: byte-identical={a == b}, exit codes {c1}/{c2}")


@pytest.mark.parametrize("suite", sorted(suites.SUITES))
def test_suite_runtime(suite):
    t = time.perf_counter()
    rows, _ = suites.run(suite, suites.Context())
    dt = time.perf_counter() - t
    assert dt <= 60.0, f"{suite} took {dt:.1f} s"
    assert all(r.passed for r in rows)


def summary_lines():
    lines = []
    for n in range(1, 11):
        if n in RESULTS:
            ok, detail = RESULTS[n]
            lines.append(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        else:
            lines.append(f"criterion {n:2d}: NOT RUN")
    return lines


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
