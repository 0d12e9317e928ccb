"""End to end obstruction diagnostics at reduced size.

Runs the four no-go experiments with small parameters through the real
command line entry points, then assembles and prints the report.  The
shipped configs under configs/ are the full size versions; this script
is the two minute tour.  Pass --full to run the defaults instead.
"""
import argparse
import json
from pathlib import Path

from pathlab.cli import main as cli_main

REDUCED = {
    "nogo-tv": {"eps_levels": 9, "depth": 12},
    "nogo-bochner": {},
    "nogo-kernel-fit": {"heat_grids": [16, 64], "dirac_grids": [16, 128]},
    "nogo-levy": {"n_seeds": 8, "n_grid": 1 << 18},
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="out", help="output directory")
    ap.add_argument("--seed", type=int, default=20250825)
    ap.add_argument("--full", action="store_true",
                    help="run default experiment sizes")
    args = ap.parse_args(argv)
    out = Path(args.out) / "nogo_tour"
    out.mkdir(parents=True, exist_ok=True)

    for name, params in REDUCED.items():
        cfg = {"experiment": name, "seed": args.seed,
               "params": {} if args.full else params}
        cfg_path = out / f"{name}.config.json"
        cfg_path.write_text(json.dumps(cfg, indent=2) + "\n")
        code = cli_main([name, "--config", str(cfg_path), "--out", str(out)])
        if code != 0:
            print(f"{name} failed with exit code {code}")
            return code

    return cli_main(["report", "--records", str(out / "*.run.json"),
                     "--out", str(out)])


if __name__ == "__main__":
    raise SystemExit(main())
