"""Command-line entry point: ``pdsdcma sweep`` and ``pdsdcma validate``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .errors import ConfigurationError, InputShapeError
from .harness.config import link_spec_from_values, load_config
from .harness.output import emit_svg, write_csv
from .harness.presets import PRESETS
from .harness.sim import BerTargetNotReached, SimConfig, snr_at_ber, sweep
from .harness.validation import run_validation
from .link import Scheme

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2

SNR_DEFINITION = ("composite transmitted power per time-domain sample (cyclic prefix included) "
                  "divided by complex noise variance per sample")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pdsdcma", description="PD-SDCMA / PD-NOMA link-level BER simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="Monte Carlo BER sweep over SNR")
    src = sw.add_mutually_exclusive_group(required=True)
    src.add_argument("--scenario", choices=sorted(PRESETS), help="preset scenario")
    src.add_argument("--config", help="key = value scenario file")
    sw.add_argument("--scheme", default=None, choices=["pd-sdcma", "pd-noma", "both"],
                    help="access scheme(s) to simulate (default both)")
    sw.add_argument("--snr-start", type=float)
    sw.add_argument("--snr-stop", type=float)
    sw.add_argument("--snr-step", type=float)
    sw.add_argument("--trials", type=int)
    sw.add_argument("--symbols", type=int, help="OFDM symbols per trial")
    sw.add_argument("--seed", type=int)
    sw.add_argument("--early-stop", type=int, default=None,
                    help="stop a point once every user has this many errors (0 disables; default 200)")
    sw.add_argument("--csv", help="output CSV path")
    sw.add_argument("--svg", help="output SVG path")
    sw.add_argument("--target-ber", type=float, default=1e-3)
    sw.add_argument("-q", "--quiet", action="store_true")

    sub.add_parser("validate", help="run the built-in property and calibration checks")
    return parser


def _sweep(args) -> int:
    values = load_config(args.config) if args.config else {"scenario": args.scenario}
    overrides = {
        "snr_start": args.snr_start, "snr_stop": args.snr_stop, "snr_step": args.snr_step,
        "trials": args.trials, "n_symbols": args.symbols, "seed": args.seed,
        "csv": args.csv, "svg": args.svg, "scheme": args.scheme, "early_stop_errors": args.early_stop,
    }
    values.update({k: v for k, v in overrides.items() if v is not None})

    spec = link_spec_from_values(values)
    scheme_arg = str(values.get("scheme", "both")).lower()
    schemes = list(Scheme) if scheme_arg == "both" else [Scheme.parse(scheme_arg)]
    early = values.get("early_stop_errors", 200)
    configs = [
        SimConfig(spec.link(s), float(values.get("snr_start", 0.0)), float(values.get("snr_stop", 40.0)),
                  float(values.get("snr_step", 1.0)), int(values.get("trials", 10)), int(values.get("seed", 0)),
                  int(early) if early else None)
        for s in schemes
    ]

    def progress(point):
        if not args.quiet:
            bers = " ".join(f"{r.ber:.2e}" for r in point)
            print(f"  {point[0].scheme:<9} {point[0].snr_db:6.2f} dB  trials={point[0].trials:<3} {bers}",
                  file=sys.stderr, flush=True)

    records = []
    t0 = time.perf_counter()
    for cfg in configs:
        records.extend(sweep(cfg, progress))
    records.sort(key=lambda r: (r.scheme, r.user, r.snr_db))

    for cfg in configs:
        name = cfg.link.scheme.value
        for user in range(1, cfg.link.n_users + 1):
            try:
                at = f"{snr_at_ber(records, user, args.target_ber, name):.2f} dB"
            except BerTargetNotReached as exc:
                at = f"not reached (boundary BER {exc.boundary_ber:.2e})"
            print(f"{name:<9} user {user}: BER {args.target_ber:g} at {at}")
    print(f"{len(records)} records in {time.perf_counter() - t0:.1f}s")

    if values.get("csv"):
        write_csv(records, values["csv"])
        meta = {
            "snr_definition": SNR_DEFINITION,
            "constellation": spec.constellation,
            "powers": list(spec.powers),
            "s2d": spec.s2d.to_lists(),
            "ofdm": {"n_fft": spec.ofdm.n_fft, "n_carriers": spec.ofdm.n_carriers,
                     "cp_fraction": spec.ofdm.cp_fraction},
            "n_symbols": spec.n_symbols,
            "trials": configs[0].trials,
            "early_stop_errors": configs[0].early_stop_errors,
        }
        Path(str(values["csv"]) + ".meta.json").write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    if values.get("svg"):
        title = values.get("scenario", Path(args.config).stem if args.config else "BER vs SNR")
        emit_svg(records, values["svg"], title=str(title))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            return EXIT_OK if run_validation() else EXIT_RUNTIME
        return _sweep(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InputShapeError, OSError, ArithmeticError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
