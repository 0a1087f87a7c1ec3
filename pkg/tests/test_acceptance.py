"""Exit criteria.  Each test prints one ``ACCEPTANCE <n> PASS|FAIL`` line."""
import contextlib
import csv
import io
import json
import time
from decimal import Decimal

import numpy as np
import pytest

from resintensity import (
    SimpleOperation,
    SweepSpec,
    evaluate_set,
    generate_sweep,
    mirror_rank_stat,
    resource_intensity_simple,
    actual_completion_simple,
    round_half_up,
    thread_series,
)
from resintensity.io_cli import RunConfig, emit_report, main

from oracles import spearman
from tables import HORIZON, SWEEP_TIME, SWEEP_RE, SWEEP_PE, MIN_COST_FAMILY

# brute-force rank correlation of the reference (R, Prof) pairs of the fixed-PE family, tests/oracles.py
REFERENCE_MIRROR_STAT = -0.9545454545454546


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def check(n, title):
        t0 = time.perf_counter()
        try:
            yield
        except BaseException:
            with capsys.disabled():
                print(f"\nACCEPTANCE {n} FAIL: {title}")
            raise
        with capsys.disabled():
            print(f"\nACCEPTANCE {n} PASS: {title} ({time.perf_counter() - t0:.2f}s)")
    return check


def cli(argv):
    buf = io.StringIO()
    assert main(argv, out=buf) == 0
    return buf.getvalue()


def split_report(text):
    table, summary = text.split("\n\n")
    rows = list(csv.DictReader(io.StringIO(table)))
    return rows, dict(list(csv.reader(io.StringIO(summary)))[1:])


def test_1_worked_example(criterion):
    with criterion(1, "worked example t_a=20, R=108, numeric within 0.5 / 0.05"):
        t0 = time.perf_counter()
        coarse = json.loads(cli(["analyze", "--re", "2", "--pe", "3", "--tr", "2", "--tp", "8"]))
        elapsed = time.perf_counter() - t0
        fine = json.loads(cli(["analyze", "--re", "2", "--pe", "3", "--tr", "2", "--tp", "8",
                               "--step", "1e-4"]))
        assert coarse["t_a_analytic"] == 20
        assert coarse["R_analytic"] == 108
        assert abs(coarse["R_numeric"] - 108) <= 0.5
        assert abs(fine["R_numeric"] - 108) <= 0.05
        assert elapsed < 1.0


def test_2_sweep_sets(criterion):
    with criterion(2, "time, RE and PE sweeps reproduce the reference R columns"):
        t0 = time.perf_counter()
        sets = [
            (SweepSpec(SimpleOperation(2, 3, 0, 1), "op_time", 1, 1, 7), SWEEP_TIME),
            (SweepSpec(SimpleOperation(2, 3, 0, 3), "re_value", 2.0, 0.1, 7), SWEEP_RE),
            (SweepSpec(SimpleOperation(2, 3, 0, 3), "pe_value", 2.5, 0.1, 7), SWEEP_PE),
        ]
        for spec, ref in sets:
            buf = io.StringIO()
            emit_report(evaluate_set(generate_sweep(spec)), RunConfig(), buf)
            rows, _ = split_report(buf.getvalue())
            got = [r["r_intensity"] for r in rows]
            assert got == [str(p[3]) for p in ref], (spec.varied_field, got)
        assert time.perf_counter() - t0 < 1.0


def test_3_min_cost_family(criterion, tmp_path):
    with criterion(3, "fixed-PE family R/Prof to 2 decimals, min cost N6, min R = max Prof N4"):
        path = tmp_path / "family.csv"
        path.write_text("id,re,pe,tr,tp\n" + "".join(
            f"{n},{re},{pe},0,{t}\n" for n, re, pe, t, _, _ in MIN_COST_FAMILY))
        t0 = time.perf_counter()
        rows, summary = split_report(cli(["table", "--input", str(path), "--horizon", "1150"]))
        elapsed = time.perf_counter() - t0
        for row, (n, _, _, _, r, prof) in zip(rows, MIN_COST_FAMILY):
            assert Decimal(row["r_intensity"]) == Decimal(r), n
            assert Decimal(row["prof"]) == Decimal(prof), n
        assert summary["argmin_cost"] == "6"
        assert summary["argmin_r"] == "4"
        assert summary["argmax_prof"] == "4"
        rep = evaluate_set([SimpleOperation(re, pe, 0, t) for _, re, pe, t, _, _ in MIN_COST_FAMILY], HORIZON)
        gap = rep.rows[3].horizon_profit - rep.rows[5].horizon_profit
        assert abs(gap - 26.96) <= 0.01
        assert abs((728.00 - 701.04) - 26.96) <= 0.01
        assert elapsed < 1.0


def test_4_oracle_equivalence(criterion):
    with criterion(4, "200 random ops: numeric R within 1e-3 rel, t_a within 2 steps"):
        rng = np.random.default_rng(20141)
        t0 = time.perf_counter()
        worst_r = worst_t = 0.0
        for _ in range(200):
            re = rng.uniform(0.1, 10)
            ratio = rng.uniform(1.01, 4)
            while ratio <= 1.01:
                ratio = rng.uniform(1.01, 4)
            T = rng.uniform(0.1, 10)
            tr = rng.uniform(0, 5)
            op = SimpleOperation(re, re * ratio, tr, tr + T)
            step = T / 1e4
            prof = thread_series(op, step)
            R = resource_intensity_simple(op)
            rel = abs(prof.resource_intensity - R) / R
            dt = abs(prof.t_a - actual_completion_simple(op))
            worst_r = max(worst_r, rel)
            worst_t = max(worst_t, dt / step)
            assert rel <= 1e-3, (op, rel)
            assert dt <= 2 * step, (op, dt, step)
        assert time.perf_counter() - t0 < 30.0
        print(f"\n  worst R rel err {worst_r:.2e}, worst t_a err {worst_t:.2e} steps")


def test_5_invariants(criterion):
    with criterion(5, "ties, permutation, monotonicity, scale covariance, threads"):
        t0 = time.perf_counter()
        # ties resolve to the lowest index
        tied = [SimpleOperation(2, 3, 0, 2), SimpleOperation(1, 3, 0, 1),
                SimpleOperation(1, 3, 0, 1)]
        rep = evaluate_set(tied, 100)
        assert (rep.argmin_cost, rep.argmin_R, rep.argmax_profit) == (1, 1, 1)
        assert rep.ties["argmin_R"] == (1, 2)

        # permutation equivariance on the fixed-PE family
        ops = [SimpleOperation(re, pe, 0, t) for _, re, pe, t, _, _ in MIN_COST_FAMILY]
        base = evaluate_set(ops, HORIZON)
        rng = np.random.default_rng(7)
        for _ in range(20):
            perm = rng.permutation(len(ops))
            rep = evaluate_set([ops[i] for i in perm], HORIZON)
            assert [m.resource_intensity for m in rep.rows] == \
                [base.rows[i].resource_intensity for i in perm]
            assert perm[rep.argmin_cost] == base.argmin_cost
            assert perm[rep.argmin_R] == base.argmin_R
            assert perm[rep.argmax_profit] == base.argmax_profit

        # monotonicity on 50-point grids
        r_T = [resource_intensity_simple(SimpleOperation(2, 3, 0, T)) for T in np.linspace(0.1, 10, 50)]
        r_re = [resource_intensity_simple(SimpleOperation(re, 3, 0, 3)) for re in np.linspace(0.1, 2.95, 50)]
        r_pe = [resource_intensity_simple(SimpleOperation(2, pe, 0, 3)) for pe in np.linspace(2.05, 20, 50)]
        assert np.all(np.diff(r_T) > 0)
        assert np.all(np.diff(r_re) > 0)
        assert np.all(np.diff(r_pe) < 0)

        # scale covariance
        for k in np.linspace(0.1, 10, 50):
            for re, pe, T in [(2, 3, 6), (1.772, 2.5, 1.15), (0.3, 1.1, 4)]:
                a = resource_intensity_simple(SimpleOperation(re, pe, 0, T))
                b = resource_intensity_simple(SimpleOperation(k * re, k * pe, 0, T))
                assert b == pytest.approx(k * a, rel=1e-12)

        # dif(t_a) -> 0 and r nondecreasing for simple operations
        for op in [SimpleOperation(2, 3, 2, 8), SimpleOperation(1.772, 2.5, 0, 1.15),
                   SimpleOperation(0.5, 0.51, 1, 2)]:
            ends = []
            for step in (op.op_time / 100, op.op_time / 1000):
                prof = thread_series(op, step)
                ends.append(abs(prof.dif[-1]))
                assert np.all(np.diff(prof.r) >= 0)
                assert prof.dif.min() >= -1e-9
            assert max(ends) <= 1e-9 * max(1.0, prof.vre[-1])
        assert time.perf_counter() - t0 < 10.0


def test_6_substitute_for_production_claim(criterion):
    with criterion(6, "min R coincides with max Prof; reference-pair rank stat <= -0.9"):
        ref_r = [float(row[4]) for row in MIN_COST_FAMILY]
        ref_prof = [float(row[5]) for row in MIN_COST_FAMILY]
        assert spearman(ref_r, ref_prof) == pytest.approx(REFERENCE_MIRROR_STAT, abs=1e-12)
        stat = mirror_rank_stat(ref_r, ref_prof)
        assert stat == pytest.approx(REFERENCE_MIRROR_STAT, abs=1e-12)
        assert stat <= -0.9
        assert int(np.argmin(ref_r)) == int(np.argmax(ref_prof)) == 3
        rep = evaluate_set([SimpleOperation(re, pe, 0, t) for _, re, pe, t, _, _ in MIN_COST_FAMILY], HORIZON)
        assert rep.argmin_R == rep.argmax_profit == 3
        assert rep.argmin_cost == 5
        assert rep.mirror_rank_stat <= -0.9
