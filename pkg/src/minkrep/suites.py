"""Seeded verification suites shared by the CLI and the acceptance tests."""
from __future__ import annotations

import numpy as np

from . import integrals
from .hilbert import gram_matrix
from .lorentz import InhomogeneousElement, spinor_boost
from .representation import (
    CheckReport,
    RepConfig,
    nonseparability_family,
    unit_square_x23,
    verify_group_law,
    verify_unitarity,
)
from .sampling import make_rng, random_element, random_spacelike_rectangle, random_state_pair

SUITES = ("invariance", "unitarity", "grouplaw", "orthogonality", "identity")


def _summary(name, diffs, tol, extra=None) -> CheckReport:
    diffs = np.asarray(diffs, dtype=float)
    values = {
        "trials": int(diffs.size),
        "max_difference": float(diffs.max()) if diffs.size else 0.0,
        "failures": int(np.sum(diffs > tol)),
    }
    values.update(extra or {})
    return CheckReport(name, bool(values["failures"] == 0), values, tol)


def invariance(seed: int, trials: int, tol: float = 1e-10, **_) -> list[CheckReport]:
    """Minkowski surface measures of random space-like rectangles under random Lorentz maps."""
    rng = make_rng(seed, "invariance")
    abs_d, signed_d = [], []
    for _ in range(trials):
        rect, _frame = random_spacelike_rectangle(rng)
        g = random_element(rng)
        moved = rect.transformed(g)
        before = integrals.mink_area(rect, integrals.chart_of(rect))
        after = integrals.mink_area(moved, integrals.chart_of(moved))
        abs_d.append(abs(after - before) / abs(before))
        sb = integrals.mink_area_signed(rect, integrals.chart_of(rect))
        sa = integrals.mink_area_signed(moved, integrals.chart_of(moved))
        signed_d.append(abs(sa - sb) / abs(sb))
    square = unit_square_x23()
    boosted = square.transformed(InhomogeneousElement.pure_lorentz(spinor_boost(2, 1.0)))
    eucl = integrals.area(boosted)
    mink = integrals.mink_area(boosted)
    control = CheckReport(
        "boost-area-control",
        bool(abs(eucl - np.sqrt(np.cosh(2.0))) <= tol and abs(eucl - 1) >= 0.5 and abs(mink - 1) <= tol),
        {"euclidean_area": eucl, "expected": float(np.sqrt(np.cosh(2.0))), "minkowski_area": mink},
        tol,
    )
    return [
        _summary("mink-area-invariance", abs_d, tol),
        _summary("signed-mink-area-invariance", signed_d, tol),
        control,
    ]


def identity(seed: int, trials: int, tol: float = 1e-12, **_) -> list[CheckReport]:
    """Pointwise: imaginary-time density equals the Minkowski Gram density."""
    rng = make_rng(seed, "identity")
    diffs = []
    for _ in range(trials):
        rect, _frame = random_spacelike_rectangle(rng)
        p = integrals.chart_of(rect)
        s, t = rng.random(10), rng.random(10)
        lhs = integrals.density_rho_imag(p, s, t)
        d_s, d_t = p.partials(s, t)
        rhs = integrals.minkowski_gram_density(d_s, d_t)
        scale = np.maximum(1.0, integrals.euclidean_gram_density(d_s, d_t))
        diffs.extend(np.abs(lhs - rhs) / scale)
    return [_summary("imaginary-time-identity", diffs, tol)]


def unitarity(seed: int, trials: int, cfg: RepConfig | None = None, tol: float = 1e-9, **_) -> list[CheckReport]:
    """``<Uv, Uw> = <v, w>``, plus the Euclidean pairing as a negative control."""
    cfg = cfg or RepConfig()
    rng = make_rng(seed, "unitarity")
    diffs, legacy = [], []
    control = InhomogeneousElement.pure_lorentz(spinor_boost(2, 1.0))
    for _ in range(trials):
        v, w = random_state_pair(rng)
        g = random_element(rng)
        diffs.append(verify_unitarity(cfg, g, v, w, tol).values["difference"])
        legacy.append(verify_unitarity(cfg, control, v, v, tol, legacy=True).values["difference"])
    legacy = np.asarray(legacy)
    neg = CheckReport(
        "unitarity-legacy-control",
        bool(legacy.size and legacy.max() >= 0.1 and np.any(legacy > tol)),
        {"trials": int(legacy.size), "max_difference": float(legacy.max()) if legacy.size else 0.0,
         "violations": int(np.sum(legacy > tol))},
        0.1,
    )
    return [_summary("unitarity", diffs, tol), neg]


def grouplaw(seed: int, trials: int, cfg: RepConfig | None = None, tol: float = 1e-9, **_) -> list[CheckReport]:
    cfg = cfg or RepConfig()
    rng = make_rng(seed, "grouplaw")
    worst = {"vertex": 0.0, "frame": 0.0, "field": 0.0, "norm": 0.0}
    failures = 0
    for _ in range(trials):
        v, _w = random_state_pair(rng)
        g1, g2 = random_element(rng), random_element(rng)
        rep = verify_group_law(cfg, g1, g2, v, rng, tol)
        failures += not rep.passed
        for k in worst:
            worst[k] = max(worst[k], rep.values[k])
    values = {"trials": trials, "failures": failures, **{f"max_{k}": v for k, v in worst.items()}}
    return [CheckReport("group-law", failures == 0, values, tol)]


def orthogonality(seed: int, trials: int = 50, tol: float = 1e-12, **_) -> list[CheckReport]:
    """Gram matrix of unit-norm disjoint translates is the identity."""
    k = max(int(trials), 2)
    family = nonseparability_family(k, (0, 0, 2, 0))
    g = gram_matrix(family)
    defect = float(np.max(np.abs(g - np.eye(k))))
    return [CheckReport("translate-orthonormality", defect <= tol, {"size": k, "max_defect": defect}, tol)]


RUNNERS = {
    "invariance": invariance,
    "unitarity": unitarity,
    "grouplaw": grouplaw,
    "orthogonality": orthogonality,
    "identity": identity,
}


def run(suite: str, seed: int = 0, trials: int = 100, cfg: RepConfig | None = None,
        tol: float | None = None) -> list[CheckReport]:
    names = SUITES if suite == "all" else (suite,)
    out = []
    for name in names:
        if name not in RUNNERS:
            raise KeyError(f"unknown suite {name!r}")
        kwargs = {"cfg": cfg}
        if tol is not None:
            kwargs["tol"] = tol
        n = 50 if name == "orthogonality" else trials
        out.extend(RUNNERS[name](seed, n, **kwargs))
    return out
