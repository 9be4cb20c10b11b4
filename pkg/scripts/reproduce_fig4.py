"""Run the three Fig. 4 scenarios at full size and tabulate BER-1e-3 crossings.

Writes one CSV, CSV metadata and SVG per scenario into --out (default results/).

    python scripts/reproduce_fig4.py --out results
"""

import argparse
import math
import sys
import time
from pathlib import Path

from pdsdcma.cli import main as cli_main
from pdsdcma.harness.output import read_csv
from pdsdcma.harness.sim import BerTargetNotReached, snr_at_ber

# approximate readings quoted with the published figure
REPORTED = {
    "2u-16qam": {"PD-SDCMA": [17.0, 19.0], "PD-NOMA": [31.0, 32.5]},
    "3u-qpsk": {"gain": [17.0, 7.7, 8.7]},
    "5u-qpsk": {},
}


def crossing(records, user, scheme, target):
    try:
        return snr_at_ber(records, user, target, scheme)
    except BerTargetNotReached:
        return math.inf


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--symbols", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=2025)
    ap.add_argument("--scenarios", nargs="*", default=list(REPORTED))
    args = ap.parse_args(argv)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in args.scenarios:
        t0 = time.perf_counter()
        csv_path, svg_path = out / f"{name}.csv", out / f"{name}.svg"
        code = cli_main(["sweep", "--scenario", name, "--snr-start", "0", "--snr-stop", "40", "--snr-step", "1",
                         "--trials", str(args.trials), "--symbols", str(args.symbols), "--seed", str(args.seed),
                         "--csv", str(csv_path), "--svg", str(svg_path), "-q"])
        if code:
            return code
        recs = read_csv(csv_path)
        users = max(r.user for r in recs)
        sd = [crossing(recs, u, "PD-SDCMA", 1e-3) for u in range(1, users + 1)]
        no = [crossing(recs, u, "PD-NOMA", 1e-3) for u in range(1, users + 1)]
        print(f"\n== {name} ({time.perf_counter() - t0:.0f}s)")
        print(f"{'user':>4} {'PD-SDCMA':>9} {'PD-NOMA':>9} {'gain':>7}  reported")
        for u in range(users):
            rep = REPORTED[name]
            if "gain" in rep:
                note = f"gain {rep['gain'][u]}"
            elif rep:
                note = f"{rep['PD-SDCMA'][u]} / {rep['PD-NOMA'][u]}"
            else:
                note = ""
            print(f"{u + 1:>4} {sd[u]:>9.2f} {no[u]:>9.2f} {no[u] - sd[u]:>7.2f}  {note}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
