"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line (shown with ``pytest -s``) and also
records it for the terminal summary at the end of the run.
"""
import time
from pathlib import Path

import numpy as np

from minkrep import integrals as I
from minkrep import suites
from minkrep.fields import FieldSyntaxError, eval_field, parse_field, to_text
from minkrep.hilbert import inner, scale
from minkrep.lorentz import SL2C, InhomogeneousElement, covering_map, metric_defect, spinor_boost
from minkrep.representation import RepConfig, unit_square_x23
from minkrep.sampling import (
    lorentz_matrix_of,
    make_rng,
    random_field,
    random_polar_factors,
    random_sl2c,
    random_spatial_rectangle,
    random_state_pair,
)

from conftest import ACCEPTANCE_LINES

SEED = 2024
CFG = RepConfig(1.0, 0.5)
CORPUS = Path(__file__).parent / "data" / "malformed_fields.txt"


def report(k, title, ok, detail=""):
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {title}  {detail}".rstrip()
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_01_metric_preservation():
    rng = make_rng(SEED, "lorentz")
    t0 = time.perf_counter()
    worst = max(metric_defect(lorentz_matrix_of(random_polar_factors(rng, 2.0))) for _ in range(1000))
    dt = time.perf_counter() - t0
    report(1, "metric preservation", worst <= 1e-12 and dt < 1.0, f"max defect {worst:.2e}, {dt:.3f}s")


def test_02_covering_homomorphism():
    rng = make_rng(SEED, "sl2c")
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        a, b = random_sl2c(rng), random_sl2c(rng)
        lhs, rhs = covering_map(a @ b), covering_map(a) @ covering_map(b)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    dt = time.perf_counter() - t0
    minus = float(np.max(np.abs(covering_map(-SL2C.identity()) - np.eye(4))))
    ok = worst <= 1e-10 and minus <= 1e-12 and dt < 1.0
    report(2, "covering-map homomorphism", ok, f"max {worst:.2e}, Y(-1) defect {minus:.1e}, {dt:.3f}s")


def test_03_area_correctness():
    rng = make_rng(SEED, "area")
    t0 = time.perf_counter()
    closed = quad = 0.0
    for _ in range(100):
        rect, _ = random_spatial_rectangle(rng)
        want = np.linalg.norm(rect.span_u) * np.linalg.norm(rect.span_v)
        closed = max(closed, abs(I.area(rect) - want))
        quad = max(quad, abs(I.area(rect, I.squared_s(I.chart_of(rect))) - want))
    dt = time.perf_counter() - t0
    ok = closed <= 1e-12 and quad <= 1e-8 and dt < 5.0
    report(3, "area correctness", ok, f"closed {closed:.1e}, quadrature {quad:.1e}, {dt:.3f}s")


def test_04_basis_independence():
    rng = make_rng(SEED, "basis")
    worst = 0.0
    for _ in range(100):
        q, _ = np.linalg.qr(rng.normal(size=(4, 4)))
        p = I.affine_chart(rng.normal(size=4), *rng.normal(size=(2, 4)))
        s, t = rng.random(100), rng.random(100)
        base = I.euclidean_density(p, s, t)
        worst = max(worst, float(np.max(np.abs(I.wedge_check(p, s, t, q) - base))))
    report(4, "basis independence", worst <= 1e-10, f"max {worst:.2e}")


def test_05_minkowski_measure_invariance():
    inv = {r.name: r for r in suites.run("invariance", SEED, 100)}
    ident = suites.run("identity", SEED, 100)[0]
    ok = (inv["mink-area-invariance"].passed and inv["signed-mink-area-invariance"].passed
          and ident.passed and ident.values["trials"] == 1000)
    detail = (f"abs {inv['mink-area-invariance'].values['max_difference']:.1e}, "
              f"signed {inv['signed-mink-area-invariance'].values['max_difference']:.1e}, "
              f"identity {ident.values['max_difference']:.1e}")
    report(5, "Minkowski measure invariance", ok, detail)


def test_06_negative_control():
    boosted = unit_square_x23().transformed(InhomogeneousElement.pure_lorentz(spinor_boost(2, 1.0)))
    eucl, mink = I.area(boosted), I.mink_area(boosted)
    ok = abs(eucl - np.sqrt(np.cosh(2.0))) <= 1e-10 and abs(eucl - 1) > 0.5 and abs(mink - 1) <= 1e-10
    report(6, "boost negative control", ok, f"euclidean {eucl:.15f}, minkowski {mink:.15f}")


def test_07_inner_product_axioms():
    rng = make_rng(SEED, "inner")
    herm = sesq = 0.0
    lowest = np.inf
    for _ in range(200):
        v, w = random_state_pair(rng)
        lam = complex(*rng.normal(size=2))
        ip = inner(v, w)
        size = max(1.0, abs(lam * ip))
        sesq = max(sesq, abs(inner(scale(lam, v), w) - lam * ip) / size,
                   abs(inner(v, scale(lam, w)) - np.conj(lam) * ip) / size,
                   abs(inner(v + w, v) - inner(v, v) - inner(w, v)) / max(1.0, abs(inner(v + w, v))))
        herm = max(herm, abs(ip - np.conj(inner(w, v))))
        lowest = min(lowest, inner(v, v).real, inner(w, w).real)
    ok = sesq <= 1e-10 and herm <= 1e-12 and lowest >= -1e-12
    report(7, "inner-product axioms", ok, f"sesq {sesq:.1e}, hermitian {herm:.1e}, min <v,v> {lowest:.3g}")


def test_08_unitarity():
    main, legacy = suites.run("unitarity", SEED, 100, CFG)
    ok = main.passed and legacy.passed and legacy.values["max_difference"] >= 0.1
    report(8, "unitarity", ok, f"max {main.values['max_difference']:.1e}, "
                               f"legacy discrepancy {legacy.values['max_difference']:.3f}")


def test_09_group_law():
    (rep,) = suites.run("grouplaw", SEED, 200, CFG)
    ok = rep.passed and rep.values["max_norm"] <= 1e-8
    report(9, "group law", ok, f"failures {rep.values['failures']}, max norm {rep.values['max_norm']:.1e}")


def test_10_nonseparability():
    (rep,) = suites.run("orthogonality", SEED)
    ok = rep.passed and rep.values["size"] == 50 and rep.values["max_defect"] <= 1e-12
    report(10, "translate orthonormality", ok, f"size {rep.values['size']}, defect {rep.values['max_defect']:.1e}")


def _close(a, b, tol):
    both_nan = np.isnan(a) & np.isnan(b)
    err = np.abs(a - b) <= tol * np.maximum(1.0, np.abs(b))
    return bool(np.all(both_nan | (a == b) | err))


def test_11_parser():
    rng = make_rng(SEED, "parser")
    trips = 0
    for _ in range(500):
        f = random_field(rng)
        pts = rng.uniform(-2, 2, (10, 4))
        with np.errstate(all="ignore"):
            trips += _close(eval_field(parse_field(to_text(f)), pts), eval_field(f, pts), 1e-12)
    bad = 0
    cases = [line.split("\t", 1) for line in CORPUS.read_text().splitlines() if not line.startswith("#")]
    for pos, src in cases:
        src = {"<empty>": "", "<spaces>": "   "}.get(src, src)
        try:
            parse_field(src)
            bad += 1
        except FieldSyntaxError as err:
            bad += err.position != int(pos)
    ok = trips == 500 and bad == 0
    report(11, "parser", ok, f"round trips {trips}/500, corpus {len(cases) - bad}/{len(cases)}")
