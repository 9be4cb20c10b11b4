"""CSV and SVG emission for BER records."""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from xml.sax.saxutils import escape

from .sim import BerRecord

CSV_COLUMNS = ("scheme", "user", "snr_db", "errors", "bits", "ber", "trials", "seed")


def records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow([r.scheme, r.user, repr(float(r.snr_db)), r.errors, r.bits, repr(r.ber), r.trials, r.seed])
    return buf.getvalue()


def write_csv(records, path) -> None:
    Path(path).write_text(records_to_csv(records), encoding="utf-8", newline="")


def read_csv(path) -> list[BerRecord]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        return [BerRecord(row["scheme"], int(row["user"]), float(row["snr_db"]), int(row["errors"]),
                          int(row["bits"]), int(row["trials"]), int(row["seed"])) for row in reader]


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#e377c2")
_DASH = {"PD-SDCMA": "", "PD-NOMA": "6,3"}


def emit_svg(records, path=None, *, title: str = "BER vs SNR", width: int = 640, height: int = 440,
             ber_floor: float | None = None) -> str:
    """Log-BER line chart, one polyline per (scheme, user).

    Zero-error points have no place on a log axis and are left out of their
    polyline.  Returns the SVG text and writes it when ``path`` is given.
    """
    records = list(records)
    left, right, top, bottom = 70, 150, 40, 50
    pw, ph = width - left - right, height - top - bottom

    snrs = [r.snr_db for r in records] or [0.0, 1.0]
    x0, x1 = min(snrs), max(snrs)
    if x1 == x0:
        x1 = x0 + 1.0
    positive = [r.ber for r in records if r.ber > 0]
    lo_dec = math.floor(math.log10(min(positive))) if positive else -6
    if ber_floor is not None:
        lo_dec = max(lo_dec, math.floor(math.log10(ber_floor)))
    hi_dec = 0
    if lo_dec >= hi_dec:
        lo_dec = hi_dec - 1

    def px(snr):
        return left + (snr - x0) / (x1 - x0) * pw

    def py(ber):
        return top + (hi_dec - math.log10(ber)) / (hi_dec - lo_dec) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{left + pw / 2:.1f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for dec in range(lo_dec, hi_dec + 1):
        y = py(10.0 ** dec)
        out.append(f'<line x1="{left}" y1="{y:.2f}" x2="{left + pw}" y2="{y:.2f}" stroke="#ddd"/>')
        out.append(f'<text x="{left - 6}" y="{y + 4:.2f}" text-anchor="end">1e{dec}</text>')
    for tick in _nice_ticks(x0, x1):
        x = px(tick)
        out.append(f'<line x1="{x:.2f}" y1="{top}" x2="{x:.2f}" y2="{top + ph}" stroke="#eee"/>')
        out.append(f'<text x="{x:.2f}" y="{top + ph + 16}" text-anchor="middle">{tick:g}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 10}" text-anchor="middle">SNR (dB)</text>')
    out.append(f'<text x="18" y="{top + ph / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 18 {top + ph / 2:.1f})">BER</text>')

    series: dict[tuple[str, int], list[BerRecord]] = {}
    for r in records:
        series.setdefault((r.scheme, r.user), []).append(r)
    for k, ((scheme, user), rs) in enumerate(sorted(series.items())):
        color = _PALETTE[(user - 1) % len(_PALETTE)]
        dash = _DASH.get(scheme, "2,2")
        pts = " ".join(f"{px(r.snr_db):.2f},{py(r.ber):.2f}"
                       for r in sorted(rs, key=lambda r: r.snr_db) if r.ber > 0 and math.log10(r.ber) >= lo_dec)
        label = escape(f"{scheme} user {user}")
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<polyline data-series="{label}" fill="none" stroke="{color}" stroke-width="1.5"'
                   f'{dash_attr} points="{pts}"/>')
        ly = top + 10 + 16 * k
        lx = left + pw + 10
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 24}" y2="{ly}" stroke="{color}" stroke-width="1.5"{dash_attr}/>')
        out.append(f'<text x="{lx + 30}" y="{ly + 4}">{label}</text>')
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def _nice_ticks(lo: float, hi: float, target: int = 8) -> list[float]:
    raw = (hi - lo) / target
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step) * step
    n = int(math.floor((hi - first) / step + 1e-9)) + 1
    return [round(first + i * step, 10) for i in range(n)]
