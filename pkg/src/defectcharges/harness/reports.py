"""Deterministic CSV/JSON serialization of harness results.

Floats are rendered with 17 significant digits in fixed exponent style so a
given configuration produces byte-identical files.
"""

from __future__ import annotations

import json
from typing import Dict, List

from .runner import ChargeReport

CHARGE_CSV_COLUMNS = [
    "model",
    "scenario",
    "order",
    "t",
    "re_bulk_left",
    "im_bulk_left",
    "re_bulk_right",
    "im_bulk_right",
    "re_defect",
    "im_defect",
    "re_boundary",
    "im_boundary",
    "re_total",
    "im_total",
    "drift",
]


def format_float(x: float) -> str:
    return f"{x:.16e}"


def charge_report_to_csv(report: ChargeReport) -> str:
    drifts = report.drifts()
    lines = [",".join(CHARGE_CSV_COLUMNS)]
    rows = sorted(report.rows, key=lambda r: (r.order, r.t))
    for r in rows:
        total = r.total
        vals = [
            report.model,
            report.scenario,
            str(r.order),
            format_float(r.t),
            format_float(r.bulk_left.real),
            format_float(r.bulk_left.imag),
            format_float(r.bulk_right.real),
            format_float(r.bulk_right.imag),
            format_float(r.defect_total.real),
            format_float(r.defect_total.imag),
            format_float(r.boundary.real),
            format_float(r.boundary.imag),
            format_float(total.real),
            format_float(total.imag),
            format_float(drifts[r.order]),
        ]
        lines.append(",".join(vals))
    return "\n".join(lines) + "\n"


def charge_report_to_json(report: ChargeReport) -> str:
    drifts = report.drifts()
    payload = {
        "schema": "defectcharges/charge-report/1",
        "model": report.model,
        "scenario": report.scenario,
        "orders": list(report.orders),
        "times": [format_float(t) for t in report.times],
        "drift": {str(n): format_float(v) for n, v in drifts.items()},
        "rows": [
            {
                "order": r.order,
                "t": format_float(r.t),
                "bulk_segments": [
                    [format_float(z.real), format_float(z.imag)]
                    for z in r.bulk_segments
                ],
                "defect_terms": [
                    [format_float(z.real), format_float(z.imag)]
                    for z in r.defect_terms
                ],
                "boundary": [
                    format_float(r.boundary.real),
                    format_float(r.boundary.imag),
                ],
                "total": [
                    format_float(r.total.real),
                    format_float(r.total.imag),
                ],
            }
            for r in sorted(report.rows, key=lambda r: (r.order, r.t))
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def charge_plot_script(csv_name: str) -> str:
    """A plotting recipe referencing the CSV; nothing is plotted in-process."""
    return (
        "# plot recipe for the charge report (run separately)\n"
        "import matplotlib.pyplot as plt\n"
        "import csv\n"
        "rows = []\n"
        f"with open({csv_name!r}) as fh:\n"
        "    for rec in csv.DictReader(fh):\n"
        "        rows.append(rec)\n"
        "orders = sorted(set(int(r['order']) for r in rows))\n"
        "fig, ax = plt.subplots()\n"
        "for n in orders:\n"
        "    ts = [float(r['t']) for r in rows if int(r['order']) == n]\n"
        "    tot = [float(r['re_total']) for r in rows if int(r['order']) == n]\n"
        "    ax.plot(ts, [v - tot[0] for v in tot], label=f'order {n}')\n"
        "ax.set_xlabel('t')\n"
        "ax.set_ylabel('total(t) - total(0)')\n"
        "ax.legend()\n"
        "fig.savefig('charges.png', dpi=150)\n"
    )


def monodromy_to_csv(results: List[Dict]) -> str:
    cols = [
        "model",
        "scenario",
        "lambda_re",
        "lambda_im",
        "t",
        "dt",
        "residual",
        "det_identity_error",
    ]
    lines = [",".join(cols)]
    for r in results:
        lines.append(
            ",".join(
                [
                    r["model"],
                    r["scenario"],
                    format_float(r["lambda_re"]),
                    format_float(r["lambda_im"]),
                    format_float(r["t"]),
                    format_float(r["dt"]),
                    format_float(r["residual"]),
                    format_float(r["det_identity_error"]),
                ]
            )
        )
    return "\n".join(lines) + "\n"
