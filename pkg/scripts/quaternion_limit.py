"""Probe the associative limit: chart points supported on e1, e2, e3.

Prints, per point, whether the associator coefficients, the mixed commutator
[L_x, R_y] and the Yamaguti functions vanish on the quaternion block, and the
residual of Y - (1/3) C(u - v), the form Y takes when the associator vanishes.
"""

import argparse
from itertools import product

from moufang import loopgeom as lg
from moufang.octonion import OCTONION_LOOP, derive_structure_constants
from moufang.sampling import SampleConfig, sample_points, sample_vectors
from moufang.scalars import format_scalar


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    loop, C = OCTONION_LOOP, derive_structure_constants()
    block = range(3)
    cfg = SampleConfig(seed=args.seed)
    pts = sample_points(args.points, cfg, "quaternion", 7, support=block)
    xs, ys = (sample_vectors(args.points, cfg, s, 7, support=block) for s in ("qx", "qy"))
    for g, x, y in zip(pts, xs, ys):
        fj = lg.frame_jet(loop, g)
        l = lg.associator_coeffs(loop, g, fj)
        Y = lg.yamaguti_functions(loop, g, fj)
        idx = list(product(block, repeat=3))
        lr = lg.evaluate(loop, lg.comm(lg.L(x), lg.R(y)), g)
        resid = [
            Y[i][j][k] - sum(C.C[s][j][k] * (fj.u[i][s] - fj.v[i][s]) for s in range(7)) / 3 for i, j, k in idx
        ]
        ymax = max(abs(Y[s][j][k]) for s, j, k in idx)
        print(
            f"g={[format_scalar(c) for c in g[:3]]}  l=0:{not any(l[s][j][k] for s, j, k in idx)}  "
            f"[L,R]=0:{lr.is_zero()}  max|Y|={format_scalar(ymax)}  Y-(1/3)C(u-v)=0:{not any(resid)}"
        )


if __name__ == "__main__":
    main()
