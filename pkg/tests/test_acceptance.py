"""Acceptance gate: seven criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""

import json
import math
import random
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from reference_table import published_rows  # noqa: E402
from helpers import check_corrupt, corrupt_cases  # noqa: E402
from oracles import normal_equations_exact  # noqa: E402

from chanfit.dataset import DatasetManifest, ingest  # noqa: E402
from chanfit.errors import OutOfDomain  # noqa: E402
from chanfit.fitting import FitSpec, StatPoint, fit, refit_catalog  # noqa: E402
from chanfit.models import PLYWOOD_KEY, evaluate, lookup, plywood_loss  # noqa: E402
from chanfit.registry import registry_load, registry_query  # noqa: E402
from chanfit.sampling import sample_lsp  # noqa: E402
from chanfit.synthetic import dataset_path, manifest_path, registry_path, standard_plan  # noqa: E402
from chanfit.types import (  # noqa: E402
    Basis,
    Condition,
    Method,
    ModelKey,
    ModelSet,
    ParameterKind,
    Release,
    Scenario,
    SourceType,
    StatisticKind,
)


def K(scen, cond, param, stat, mset):
    return ModelKey(Scenario(scen), Condition(cond), ParameterKind(param), StatisticKind(stat), ModelSet(mset))


def check(cond, msg):
    if not cond:
        raise AssertionError(msg)


def c1_model_fidelity():
    n = 0
    for scen, cond, param, stat, mset, slope, icpt in published_rows():
        if scen == "SMa":
            continue
        f = 9.0 if scen == "UMi" else 10.0
        expected = (slope or 0.0) + icpt
        got = evaluate(lookup(K(scen, cond, param, stat, mset)), f).value
        check(abs(got - expected) <= 1e-12, f"{scen} {cond} {param} {stat} {mset}: {got} != {expected}")
        n += 1
    check(n == 96, f"expected 96 UMi/UMa models, checked {n}")
    spot = [
        (K("UMi", "LOS", "DS", "Mean", "legacy"), 9.0, -7.38),
        (K("UMa", "NLOS", "ZSA", "Mean", "combined"), 10.0, 1.1594),
    ]
    for key, f, expected in spot:
        got = evaluate(lookup(key), f).value
        check(abs(got - expected) <= 1e-12, f"{key}: {got} != {expected}")
    sma = lookup(K("SMa", "NLOS", "ASA", "Std", "rel19"))
    for f in (0.5, 3.4, 9.0, 24.0, 60.0):
        check(abs(evaluate(sma, f).value - 0.26) <= 1e-12, f"SMa NLOS std ASA at {f}")
    return f"{n} models + 3 spot checks"


def _points(xs_f, ys, ws):
    return [
        StatPoint(Scenario.UMi, Condition.LOS, ParameterKind.DS, StatisticKind.Mean, f, y, w)
        for f, y, w in zip(xs_f, ys, ws)
    ]


def _rel(a, b):
    return abs(a - b) / abs(b) if b != 0 else abs(a)


def c2_oracle_equivalence():
    rnd = random.Random(20260101)
    worst = 0.0
    for i in range(100):
        basis = (Basis.Log10F, Basis.Log10OnePlusF, Basis.LinearF)[i % 3]
        n = rnd.randint(2, 12)
        fs = sorted(rnd.sample([0.5, 0.87, 2, 3.4, 3.5, 6, 6.5, 6.75, 7, 8, 10, 10.5, 13, 15, 16.95,
                                20, 22, 28, 38, 60, 73, 100], n))
        ys = [rnd.uniform(-8, 2) for _ in fs]
        ws = [rnd.uniform(0.1, 10) for _ in fs]
        xs = [basis.apply(f) for f in fs]
        pts = _points(fs, ys, ws)
        rng = (0.5, 100.0)
        for method, w in ((Method.OLS, None), (Method.WLS, ws)):
            r = fit(pts, FitSpec(method, basis, rng))
            a, b = normal_equations_exact(xs, ys, w)
            err = max(_rel(r.form.slope, float(a)), _rel(r.form.intercept, float(b)))
            worst = max(worst, err)
            check(err <= 1e-9, f"dataset {i} {method}: relative error {err:.3g}")
        eq = _points(fs, ys, [ws[0]] * n)
        ols, wls = fit(eq, FitSpec(Method.OLS, basis, rng)), fit(eq, FitSpec(Method.WLS, basis, rng))
        am, wm = fit(eq, FitSpec(Method.AM, Basis.Const, rng)), fit(eq, FitSpec(Method.WM, Basis.Const, rng))
        check(abs(ols.form.slope - wls.form.slope) <= 1e-12, f"dataset {i}: WLS slope != OLS")
        check(abs(ols.form.intercept - wls.form.intercept) <= 1e-12, f"dataset {i}: WLS intercept != OLS")
        check(abs(am.form.intercept - wm.form.intercept) <= 1e-12, f"dataset {i}: WM != AM")
    return f"100 datasets, worst relative error {worst:.2g}"


def _distractors():
    """Off-line points that only a correct range or release filter drops.

    Weight 0 keeps a point out of the weighted combined fits, so it tests the
    unweighted Rel-19-only fits alone; the 150 GHz points carry weight and
    test the combined range.
    """
    out = []
    for scen in (Scenario.UMi, Scenario.UMa):
        for cond in Condition:
            for param in (ParameterKind.DS, ParameterKind.ASD, ParameterKind.ASA, ParameterKind.ZSA):
                for stat in StatisticKind:
                    for f, w, rel in ((3.0, 0.0, Release.Rel19), (30.0, 0.0, Release.Rel19),
                                      (10.0, 0.0, Release.Rel14), (150.0, 1.0, Release.Rel14)):
                        out.append(StatPoint(scen, cond, param, stat, f, 5.0, w, "distractor", release=rel))
    return out


def c3_synthetic_refit():
    points = ingest(str(dataset_path()), strict=True).points + _distractors()
    entries = refit_catalog(points, standard_plan())
    by_key = {e.key: e for e in entries}
    n = 0
    for scen, cond, param, stat, mset, slope, icpt in published_rows():
        if mset == "legacy":
            continue
        e = by_key[lookup(K(scen, cond, param, stat, mset)).key]
        check(e.ok, f"{e.key}: {e.error}")
        form = e.result.form
        check(abs(form.slope - (slope or 0.0)) <= 1e-9, f"{e.key}: slope {form.slope} vs {slope}")
        check(abs(form.intercept - icpt) <= 1e-9, f"{e.key}: intercept {form.intercept} vs {icpt}")
        n += 1
    ply = by_key[PLYWOOD_KEY].result.form
    check(abs(ply.slope - 0.17) <= 1e-9 and abs(ply.intercept - 1.03) <= 1e-9, f"plywood refit {ply}")
    return f"{n} published models + plywood recovered"


def c4_plywood():
    for f, expected in ((0.5, 1.115), (30.0, 6.13)):
        v = plywood_loss(f).value
        check(abs(v - expected) <= 1e-12, f"PL({f}) = {v}, expected {expected}")
    check(plywood_loss(30.0).extrapolated is False, "flag set at 30 GHz")
    check(plywood_loss(30.0001).extrapolated is True, "flag not set at 30.0001 GHz")
    check(plywood_loss(100.0).extrapolated is True, "flag not set at 100 GHz")
    for f in (100.0001, 150.0):
        try:
            plywood_loss(f)
        except OutOfDomain:
            continue
        raise AssertionError(f"no OutOfDomain at {f} GHz")
    return "values, flag edge and ceiling"


def c5_ingest_robustness():
    res = ingest(str(dataset_path()), strict=True)
    committed = DatasetManifest.from_dict(json.loads(Path(str(manifest_path())).read_text()))
    check(res.diagnostics == [], f"diagnostics on shipped dataset: {res.diagnostics[:3]}")
    check(res.manifest.counts == committed.counts, "manifest counts differ from the committed manifest")
    check(res.manifest.bindings == committed.bindings, "manifest bindings differ")
    check(res.manifest.checksum == committed.checksum, "dataset checksum differs")
    check(len(res.points) == sum(committed.counts.values()), "points lost in strict mode")
    cases = corrupt_cases()
    check(len(cases) == 10, f"expected 10 corrupt fixtures, found {len(cases)}")
    problems = [p for name, exp in cases.items() for p in check_corrupt(name, exp)]
    check(not problems, "; ".join(problems))
    return f"{len(res.points)} rows clean, 10 corrupt fixtures"


def c6_sampling():
    mean = lookup(K("UMi", "LOS", "DS", "Mean", "combined"))
    std = lookup(K("UMi", "LOS", "DS", "Std", "combined"))
    n = 100_000
    s = sample_lsp(mean, std, 9.0, n, seed=12345)
    lg = np.log10(s.values)
    mu, sigma = -7.46, 0.39
    check(abs(s.mu - mu) <= 1e-12 and abs(s.sigma - sigma) <= 1e-12, f"model moments {s.mu}, {s.sigma}")
    m_err = abs(lg.mean() - mu)
    check(m_err <= 4 * sigma / math.sqrt(n), f"mean off by {m_err:.3g}")
    sd = lg.std(ddof=1)
    check(abs(sd - sigma) <= 0.02 * sigma, f"std {sd:.5f} not within 2% of {sigma}")
    again = sample_lsp(mean, std, 9.0, n, seed=12345)
    check(np.array_equal(s.values, again.values), "same seed gave different vectors")
    return f"mean err {m_err:.2g}, std {sd:.4f}"


def c7_registry():
    reg = registry_load(str(registry_path()))

    def ids(rs):
        return {(r.source, r.freq_ghz[0]) for r in rs}

    uma = registry_query(reg, scenario=Scenario.UMa, parameter=ParameterKind.DS, kind=SourceType.Meas, freq_range_ghz=(6, 24))
    want_uma = {("AT&T", 7.0), ("AT&T", 8.0), ("AT&T", 15.0), ("Apple", 13.0), ("BUPT, Spark", 13.0),
                ("Huawei", 6.5), ("Huawei", 13.0), ("Huawei", 15.0), ("Sony", 15.0)}
    check(ids(uma) == want_uma and len(uma) == len(want_uma), f"UMa/DS/Meas/6-24 gave {sorted(ids(uma))}")
    inf = registry_query(reg, scenario=Scenario.InF, parameter=ParameterKind.ASD)
    want_inf = {("Sharp, NYU, Nokia", 6.75), ("Sharp, NYU, Nokia", 16.95)}
    check(ids(inf) == want_inf and len(inf) == 2, f"InF/ASD gave {sorted(ids(inf))}")
    rma = registry_query(reg, scenario=Scenario.RMa, parameter=ParameterKind.ZSA)
    check(rma == [], f"RMa/ZSA gave {len(rma)} records")
    return "UMa 9, InF 2, RMa 0 records"


CRITERIA = [
    (1, "model-table fidelity", c1_model_fidelity, 1.0),
    (2, "estimator-oracle equivalence", c2_oracle_equivalence, 1.0),
    (3, "synthetic refit", c3_synthetic_refit, 5.0),
    (4, "plywood model", c4_plywood, None),
    (5, "ingest robustness", c5_ingest_robustness, None),
    (6, "sampling statistics", c6_sampling, 2.0),
    (7, "registry queries", c7_registry, None),
]


def run_criterion(num, name, func, limit):
    """Run one criterion; return (ok, line)."""
    t0 = time.perf_counter()
    try:
        detail = func()
        elapsed = time.perf_counter() - t0
        if limit is not None and elapsed >= limit:
            raise AssertionError(f"took {elapsed:.2f} s, limit {limit:g} s")
        return True, f"PASS criterion {num} ({name}): {detail} [{elapsed:.2f} s]"
    except AssertionError as exc:
        elapsed = time.perf_counter() - t0
        return False, f"FAIL criterion {num} ({name}): {exc} [{elapsed:.2f} s]"


@pytest.mark.parametrize("num,name,func,limit", CRITERIA, ids=[f"c{c[0]}-{c[1].replace(' ', '-')}" for c in CRITERIA])
def test_criterion(num, name, func, limit, capsys):
    ok, line = run_criterion(num, name, func, limit)
    with capsys.disabled():
        print(f"\n{line}")
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
