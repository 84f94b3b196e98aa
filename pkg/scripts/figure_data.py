#!/usr/bin/env python3
"""Emit the CSV inputs consumed by the plotting frontend.

Produces fidelity surfaces for a range of qudit dimensions, a max-fidelity
curve, a scalar-product surface, heralding-probability curves, and the
Wigner grids for the generated-versus-ideal comparison.
"""

import argparse
import json
import sys
import tempfile
from pathlib import Path

import numpy as np

from catgen.cats import CatSpec, max_fidelity_over_alpha, scalar_product_scq
from catgen.cli import main as catgen_main
from catgen.entangled import success_probability_scq


def write_csv(path: Path, header: str, rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w") as fh:
        fh.write("# provenance: command=figure-data seed=0\n")
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(f"{v:.10g}" if isinstance(v, float) else str(v) for v in row) + "\n")


def run(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out/figures")
    args = parser.parse_args(argv)
    out = Path(args.out)

    with tempfile.TemporaryDirectory() as tmp:
        cfg = Path(tmp) / "cfg.json"
        for n in (2, 5, 9):
            cfg.write_text(json.dumps({"n": n, "parity": "even"}))
            catgen_main(["fidelity-map", "--config", str(cfg), "--out", str(out)])
        catgen_main(["wigner", "--out", str(out)])

    betas = np.linspace(0.1, 2.6, 51)
    rows = []
    for n in (3, 6, 9):
        for beta in betas:
            alpha_opt, f_max = max_fidelity_over_alpha(n, "even", float(beta))
            rows.append((n, float(beta), alpha_opt, f_max))
    write_csv(out / "max_fidelity_curve.csv", "n,beta,alpha_opt,f_max", rows)

    rows = []
    for alpha in np.linspace(-2, 2, 41):
        for beta in np.linspace(0.1, 2.0, 39):
            rows.append((float(alpha), float(beta), abs(scalar_product_scq(9, float(alpha), float(beta)))))
    write_csv(out / "scalar_product_n9.csv", "alpha,beta,abs_sp", rows)

    rows = []
    spec = CatSpec("even", 1.03, 0.328, 3)
    for ap in np.linspace(0.4, 3.2, 57):
        rows.append((float(ap), success_probability_scq(spec, 0, float(ap))))
    write_csv(out / "herald_probability_n3.csv", "alpha_prime,probability", rows)

    print(f"figure data written under {out}")
    return 0


if __name__ == "__main__":
    sys.exit(run())
