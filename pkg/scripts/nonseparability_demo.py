"""Arbitrarily small translations give orthogonal unit states.

The unit x2-x3 square is shifted along x1, out of its own plane. However small
the shift, the two states live on different planes, so their inner product is
zero and their distance is sqrt(2). Shifts below the coplanarity tolerance
(1e-9) are treated as the same plane. The script also prints the Gram matrix
defect of a family of disjoint translates.
"""
import argparse
from dataclasses import dataclass

import numpy as np

from minkrep.fields import FieldSection
from minkrep.geometry import Frame
from minkrep.hilbert import StateVector, gram_matrix, inner, norm
from minkrep.representation import nonseparability_family, unit_square_x23


@dataclass
class Demo:
    family_size: int = 50
    shifts: tuple = (1.0, 1e-2, 1e-5, 1e-8)


def run(cfg: Demo):
    fam = nonseparability_family(cfg.family_size, (0, 0, 2, 0))
    defect = float(np.max(np.abs(gram_matrix(fam) - np.eye(cfg.family_size))))
    field = FieldSection(("1",))
    v = StateVector.single(unit_square_x23(), field, Frame.standard())
    rows = []
    for eps in cfg.shifts:
        w = StateVector.single(unit_square_x23((0, eps, 0, 0)), field, Frame.standard())
        rows.append((eps, abs(inner(v, w)), norm(v - w)))
    return defect, rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=50)
    a = ap.parse_args(argv)
    defect, rows = run(Demo(a.size))
    print(f"Gram matrix of {a.size} disjoint unit translates: max |G - 1| = {defect:.2e}")
    print(f"{'x1 shift':>10} {'|<v,w>|':>10} {'||v - w||':>12}")
    for eps, ip, dist in rows:
        print(f"{eps:10.0e} {ip:10.3g} {dist:12.9f}")


if __name__ == "__main__":
    main()
