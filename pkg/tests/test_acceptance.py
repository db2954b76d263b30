"""End-to-end acceptance checks, one test per criterion.

Each test records a ``criterion N: PASS|FAIL`` line (shown in the terminal
summary) and then asserts, so a failure is both reported and visible to
pytest. Run alone with ``pytest tests/test_acceptance.py``.
"""

import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from fracwhittle.cli import main
from fracwhittle.mc import McConfig, run_mc
from fracwhittle.spectrum import dft_full, identity_residual

TABLE_D = (-3.5, -1.3, -0.7, 0.0, 0.3, 0.7, 1.3, 2.3, 3.5)
SEED = 2024
TESTS = Path(__file__).parent


def record(num, ok, detail):
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def elw_table():
    return run_mc(McConfig(n=500, m=56, reps=1000, d_values=TABLE_D, estimators=("elw",), seed=SEED))


@pytest.fixture(scope="module")
def comparators():
    # same seed, so replication r sees the same innovations as in elw_table
    tapers = run_mc(McConfig(n=500, m=56, reps=1000, d_values=(0.0,), estimators=("hc", "velasco"), seed=SEED))
    lw = run_mc(McConfig(n=500, m=56, reps=1000, d_values=(2.3, 3.5), estimators=("lw",), seed=SEED))
    return tapers, lw


def test_criterion_1_elw_table(elw_table):
    rows = [elw_table.row("elw", d) for d in TABLE_D]
    bad = [r.d for r in rows if not (abs(r.bias) <= 0.02 and 0.068 <= r.sd <= 0.090)]
    worst_bias = max(abs(r.bias) for r in rows)
    sds = [r.sd for r in rows]
    record(1, not bad and all(r.failures == 0 for r in rows),
           f"max|bias|={worst_bias:.4f} sd in [{min(sds):.4f}, {max(sds):.4f}] failing d={bad}")


def test_criterion_2_lw_collapse(comparators):
    _, lw = comparators
    m23 = 2.3 + lw.row("lw", 2.3).bias
    m35 = 3.5 + lw.row("lw", 3.5).bias
    record(2, 0.94 <= m23 <= 1.14 and 0.90 <= m35 <= 1.12,
           f"mean LW at d=2.3 {m23:.4f} (want [0.94, 1.14]), at d=3.5 {m35:.4f} (want [0.90, 1.12])")


def test_criterion_3_taper_moments(elw_table, comparators):
    tapers, _ = comparators
    sd_elw = elw_table.row("elw", 0.0).sd
    sd_hc = tapers.row("hc", 0.0).sd
    sd_v = tapers.row("velasco", 0.0).sd
    ok = (0.085 <= sd_hc <= 0.113 and 0.106 <= sd_v <= 0.140
          and 1.05 <= sd_hc / sd_elw <= 1.45 and 1.30 <= sd_v / sd_elw <= 1.80)
    record(3, ok, f"sd hc={sd_hc:.4f} velasco={sd_v:.4f} elw={sd_elw:.4f} "
                  f"ratios {sd_hc / sd_elw:.3f}, {sd_v / sd_elw:.3f}")


def test_criterion_4_exact_identity():
    worst, where = 0.0, None
    for n in (16, 128, 512):
        for seed in range(5):
            x = np.random.default_rng([n, seed]).normal(size=n)
            for d in (-4.5, -2.0, -0.5, 0.0, 0.5, 1.0, 1.3, 2.3, 4.5):
                for j in range(1, min(32, n - 1) + 1):
                    r = identity_residual(x, d, j)
                    if r > worst or where is None:
                        worst, where = r, (n, d, j, seed)
    record(4, worst <= 1e-8, f"max normalised residual {worst:.3e} at (n, d, j, seed)={where}")


@pytest.mark.slow
def test_criterion_5_coverage():
    n, d0, reps = 2048, 0.4, 2000
    m = math.floor(n ** 0.65)
    rep = run_mc(McConfig(n=n, m=m, reps=reps, d_values=(d0,), estimators=("elw",), seed=SEED))
    est = rep.estimates[:, 0, 0]
    half = 1.959964 / (2.0 * math.sqrt(m))
    rate = float(np.mean(np.abs(est - d0) <= half))
    record(5, m == 142 and 0.92 <= rate <= 0.97 and not np.isnan(est).any(),
           f"m={m} coverage {100 * rate:.2f}% over {reps} reps (want [92, 97])")


def test_criterion_6_filter_algebra():
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
         str(TESTS / "test_fracfilter.py"), str(TESTS / "test_spectrum.py"), "-k", "not identity"],
        capture_output=True, text=True)
    suite_ok = proc.returncode == 0
    summary = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    worst_p = worst_s = 0.0
    rng = np.random.default_rng(SEED)
    for n in list(range(2, 70)) + [127, 128, 500, 511, 512, 1000, 2048, 4097]:
        a = rng.normal(size=n) * rng.uniform(0.01, 100.0)
        pg = np.abs(dft_full(a)) ** 2
        energy = float(np.sum(a * a)) / (2 * math.pi)
        worst_p = max(worst_p, abs(float(pg.sum()) - energy) / energy)
        worst_s = max(worst_s, float(np.max(np.abs(pg[1:] - pg[1:][::-1]))) / float(pg.max()))
    ok = suite_ok and worst_p <= 1e-10 and worst_s <= 1e-10
    record(6, ok, f"filter/spectrum suite: {summary}; parseval {worst_p:.2e}, symmetry {worst_s:.2e}")


def test_criterion_7_bench_determinism(tmp_path, capsys):
    blobs = {}
    for w in ("1", "2", "3"):
        out = tmp_path / f"w{w}"
        code = main(["bench", "--reps", "60", "--d-list=-0.7,0,1.3,2.3", "--seed", "7",
                     "--density", "--workers", w, "--out-dir", str(out)])
        assert code == 0
        blobs[w] = tuple((out / f).read_bytes() for f in ("table.csv", "density.csv", "table.json"))
    capsys.readouterr()
    same = blobs["1"] == blobs["2"] == blobs["3"]
    record(7, same, f"table/density CSV and JSON byte-identical across --workers 1, 2, 3: {same}")
