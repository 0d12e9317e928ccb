"""Brownian roughness under dyadic magnification.

Increment maxima track the envelope sqrt(2 h log(1/h)) with ratio near
one, and the increment quotient max |W(t+h) - W(t)| / h grows like
h^{-1/2}: paths are Holder continuous up to exponent 1/2 and nowhere
any better.  The script zooms one path through three magnifications
under diffusive rescaling and tabulates the modulus statistics over
independent seeds.
"""
import argparse
import math
from pathlib import Path

import numpy as np

from pathlab import RngStream
from pathlab._io import write_csv
from pathlab.nogo.modulus import (brownian_grid_path, modulus_ratio_of_path,
                                  quotient_slope_of_path)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="out", help="output directory")
    ap.add_argument("--n-seeds", type=int, default=8)
    ap.add_argument("--n-grid", type=int, default=1 << 20)
    ap.add_argument("--seed", type=int, default=20250825)
    args = ap.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    rows = []
    first_path = None
    for k in range(args.n_seeds):
        w = brownian_grid_path(RngStream(args.seed, k), args.n_grid)
        if first_path is None:
            first_path = w
        rows.append([k, modulus_ratio_of_path(w), quotient_slope_of_path(w)])
    ratios = np.array([r[1] for r in rows])
    slopes = np.array([r[2] for r in rows])
    rows.append([-1, float(ratios.mean()), float(slopes.mean())])
    write_csv(out / "modulus_table.csv",
              ["seed_index", "envelope_ratio", "quotient_slope"], rows)

    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    w, n = first_path, args.n_grid
    fig, axes = plt.subplots(1, 3, figsize=(9.0, 3.0), sharey=True)
    for ax, j in zip(axes, (0, 4, 8)):
        cut = n >> j
        tt = np.linspace(0.0, 2.0 ** -j, cut + 1)
        # diffusive rescaling: zoom time by 2^j, amplitude by 2^{j/2}
        ax.plot(tt * 2.0 ** j, (w[:cut + 1] - w[0]) * 2.0 ** (j / 2.0),
                lw=0.4, color="C0")
        ax.set_title(f"window 2^-{j}, rescaled")
        ax.set_xlabel("t")
    axes[0].set_ylabel("rescaled W")
    fig.suptitle("one path, three magnifications: statistically alike")
    fig.tight_layout()
    fig.savefig(out / "brownian_zoom.png", dpi=150)
    plt.close(fig)

    print(f"mean envelope ratio {ratios.mean():.3f} (limit 1), "
          f"mean quotient slope {slopes.mean():.3f} (exponent 1/2)")
    ok = 0.6 < ratios.mean() < 1.4 and 0.25 < slopes.mean() < 0.75
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
