"""Canonical report documents: fixed key order, exact numbers, no floats."""

from __future__ import annotations

import json
from fractions import Fraction

from .recipes import RunReport


def _rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def build_document(run: RunReport) -> dict:
    """Schema-stable document; wall time is excluded from the body by
    design so reruns are byte-identical."""
    report = run.report
    h1 = report.h1
    doc = {
        "recipe": run.recipe,
        "params": {k: run.params[k] for k in sorted(run.params)},
        "steps": [
            {
                "op": entry.op,
                "details": entry.details,
                "relators_added": list(entry.relators_added),
                "e_delta": entry.e_delta,
                "sigma_delta": entry.sigma_delta,
                "b1_before": entry.b1_before,
                "b1_after": entry.b1_after,
            }
            for entry in run.model.log
        ],
        "e": report.e,
        "sigma": report.sigma,
        "b1": report.b1,
        "h1": None
        if h1 is None
        else {"rank": h1.free_rank, "torsion": list(h1.torsion)},
        "b2": report.b2,
        "chi_h": _rational(report.chi_h),
        "c1sq": report.c1sq,
        "freedman": None
        if report.freedman is None
        else {"m": report.freedman[0], "n": report.freedman[1]},
        "exactness": run.model.exactness.value,
        "certificate": run.certificate_summary,
        "assertions": [
            {
                "kind": a.kind,
                "label": a.label,
                "expected": a.expected,
                "outcome": a.outcome,
                "method": a.method,
                "details": a.details,
                "budget_used": dict(a.budget_used),
            }
            for a in run.assertions
        ],
        "budget_used": {k: run.budget_counters[k] for k in sorted(run.budget_counters)},
    }
    return doc


def render_json(run: RunReport) -> str:
    return json.dumps(build_document(run), indent=2)


def render_text(run: RunReport) -> str:
    report = run.report
    lines = [f"recipe {run.recipe}"]
    if run.params:
        lines.append("params: " + ", ".join(f"{k}={v}" for k, v in sorted(run.params.items())))
    for entry in run.model.log:
        extras = []
        if entry.relators_added:
            extras.append("adds " + ", ".join(entry.relators_added))
        if entry.b1_before is not None and entry.b1_after is not None:
            extras.append(f"b1 {entry.b1_before}->{entry.b1_after}")
        suffix = ("  [" + "; ".join(extras) + "]") if extras else ""
        lines.append(f"  {entry.op}: {entry.details}{suffix}")
    lines.append(
        f"e={report.e} sigma={report.sigma} b1={report.b1} "
        f"b2={report.b2} chi_h={_rational(report.chi_h)} c1sq={report.c1sq}"
    )
    if report.h1 is not None:
        lines.append(f"H1 = {report.h1}")
    if report.freedman is not None:
        m, n = report.freedman
        lines.append(f"freedman type: {m}CP^2 # {n}CP^2-bar")
    lines.append(f"pi1 certificate: {run.certificate_summary} ({run.model.exactness.value})")
    for a in run.assertions:
        mark = {"pass": "ok", "fail": "FAIL", "unknown": "??"}[a.outcome]
        lines.append(f"  [{mark}] {a.kind} {a.label}: expected {a.expected}"
                     + (f" ({a.details})" if a.details else ""))
    lines.append(f"wall time: {run.wall_time:.3f}s")
    return "\n".join(lines)
