"""Euclidean versus Minkowski area of the unit x2-x3 square under boosts.

Prints a table over rapidities: the Euclidean area grows like sqrt(cosh 2z)
while the Minkowski measure stays at 1, and the Euclidean pairing of a fixed
state drifts by the same factor while the invariant pairing does not.
"""
import argparse
from dataclasses import dataclass

import numpy as np

from minkrep import integrals
from minkrep.fields import FieldSection
from minkrep.geometry import Frame
from minkrep.hilbert import StateVector, inner, inner_legacy
from minkrep.lorentz import InhomogeneousElement, spinor_boost
from minkrep.representation import RepConfig, act, unit_square_x23


@dataclass
class BoostSweep:
    axis: int = 2
    z_max: float = 2.0
    steps: int = 9
    fields: tuple = ("1", "x3")


def run(cfg: BoostSweep):
    square = unit_square_x23()
    v = StateVector.single(square, FieldSection(cfg.fields), Frame.standard())
    rows = []
    for z in np.linspace(0, cfg.z_max, cfg.steps):
        g = InhomogeneousElement.pure_lorentz(spinor_boost(cfg.axis, z))
        moved = square.transformed(g)
        gv = act(RepConfig(), g, v)
        rows.append((z, integrals.area(moved), np.sqrt(np.cosh(2 * z)), integrals.mink_area(moved),
                     inner(gv, gv).real, inner_legacy(gv, gv).real))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--axis", type=int, default=2)
    ap.add_argument("--z-max", type=float, default=2.0)
    ap.add_argument("--steps", type=int, default=9)
    a = ap.parse_args(argv)
    rows = run(BoostSweep(a.axis, a.z_max, a.steps))
    print(f"{'zeta':>6} {'area':>12} {'sqrt(cosh2z)':>12} {'mink_area':>12} {'<v,v>':>10} {'legacy':>10}")
    for r in rows:
        print(f"{r[0]:6.3f} {r[1]:12.9f} {r[2]:12.9f} {r[3]:12.9f} {r[4]:10.6f} {r[5]:10.6f}")


if __name__ == "__main__":
    main()
