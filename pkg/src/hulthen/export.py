"""CSV and JSON serialization with fixed, deterministic number formatting."""

import csv
import io
import json
import math

ROUND_TRIP = 17


def fmt(x, digits=ROUND_TRIP):
    """``digits`` significant digits; ints and strings pass through."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        return format(x, f".{digits}g")
    return str(x)


def to_csv(header, rows, digits=ROUND_TRIP, comments=()):
    buf = io.StringIO()
    for line in comments:
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v, digits) for v in row])
    return buf.getvalue()


def _clean(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def to_json(doc):
    """Floats keep their shortest round-trip repr; non-finite values become null."""
    return json.dumps(_clean(doc), indent=2, sort_keys=False) + "\n"


def curves_csv(curves, digits=ROUND_TRIP):
    rows = []
    for c in curves:
        rows.extend((c.delta, x, e, a) for x, e, a in zip(c.delta_r, c.exact, c.approx))
    return to_csv(("delta", "delta_r", "exact", "approx"), rows, digits)


def curves_json(curves):
    return to_json(
        {
            "curves": [
                {
                    "delta": c.delta,
                    "max_relative_gap": c.max_relative_gap(),
                    "delta_r": c.delta_r.tolist(),
                    "exact": c.exact.tolist(),
                    "approx": c.approx.tolist(),
                }
                for c in curves
            ]
        }
    )


def wavefunction_meta(wf):
    return {
        "state": wf.state.label,
        "n": wf.state.n,
        "l": wf.state.l,
        "delta": wf.delta,
        "eps": wf.eps,
        "norm_quadrature": wf.norm_quadrature,
        "norm_analytic": wf.norm_analytic,
        "node_count": wf.node_count,
        "normalizable": True,
    }


def wavefunction_csv(wf, digits=ROUND_TRIP):
    meta = wavefunction_meta(wf)
    comments = [f"{k}={fmt(v, digits)}" for k, v in meta.items()]
    return to_csv(("r", "u"), zip(wf.r.tolist(), wf.u.tolist()), digits, comments)


def wavefunction_json(wf):
    doc = wavefunction_meta(wf)
    doc["r"] = wf.r.tolist()
    doc["u"] = wf.u.tolist()
    return to_json(doc)


REPORT_HEADER = ("state", "delta", "present", "usual", "numerov", "err_present", "err_usual")


def report_rows(rows):
    return [(r.state, r.delta, r.present, r.usual, r.numerov, r.err_present, r.err_usual) for r in rows]
