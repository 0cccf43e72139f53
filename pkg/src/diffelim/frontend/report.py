"""JSON and plain-text rendering of engine reports."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from ..diffring import DiffSystem, unflatten
from ..engine import (BoundReport, ConsistencyReport, EliminationReport, ProbabilisticReport,
                      VarietyStats)
from ..groebner import ChainCertificate

SCHEMA_VERSION = "1.0"
SCHEMA_PATH = Path(__file__).with_name("report_schema.json")


def load_schema() -> dict:
    return json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))


def _probes(report) -> list[dict]:
    out = []
    for p in report.probes:
        row = {"transforms": p.transforms, "success": p.success, "seconds": round(p.seconds, 6)}
        if p.method is not None:
            row["method"] = p.method
        out.append(row)
    return out


def certificate_dict(cert, field) -> dict:
    """Cofactor certificates list ``target = sum cofactor_j * generator_j``;
    chain certificates list the steps ``left_factor*item[left] - right_factor*item[right]``
    appended after the generators."""
    def text(q):
        return str(unflatten(q, field))

    out = {
        "kind": "chain" if isinstance(cert, ChainCertificate) else "cofactors",
        "target": text(cert.target),
        "generators": [text(g) for g in cert.generators],
        "verified": cert.verify(),
    }
    if isinstance(cert, ChainCertificate):
        out["factor"] = str(cert.factor)
        out["steps"] = [{"left": st.left, "right": st.right, "left_factor": text(a), "right_factor": text(b)}
                        for st, (a, b) in zip(cert.steps, cert.step_factors())]
    else:
        out["cofactors"] = {str(j): text(q) for j, q in sorted(cert.cofactors.items())}
    return out


def _base(command: dict, verdict: str) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "verdict": verdict}


def consistency_json(r: ConsistencyReport, command: dict) -> dict:
    out = _base(command, r.verdict)
    out.update({
        "stats": r.stats.as_dict(),
        "bound": r.bound.as_dict(),
        "transforms_used": r.transforms_used,
        "shifts_applied": r.shifts_applied,
        "gb_size": r.gb_size,
        "probes": _probes(r),
        "timings": {"elapsed": round(r.elapsed, 6)},
    })
    return out


def elimination_json(r: EliminationReport, command: dict, system: DiffSystem,
                     with_certificate: bool = False) -> dict:
    out = _base(command, r.verdict)
    out.update({
        "stats": r.stats.as_dict(),
        "bound": r.bound.as_dict(),
        "transforms_used": r.transforms_used,
        "shifts_applied": r.shifts_applied,
        "gb_size": r.gb_size,
        "probes": _probes(r),
        "witness": None if r.witness is None else str(r.witness),
        "witness_terms": None if r.witness is None else len(r.witness.terms),
        "method": r.method,
        "certificate_verified": None if r.certificate is None else r.certificate.verify(),
        "param_values": r.param_values,
        "timings": {"elapsed": round(r.elapsed, 6)},
    })
    if with_certificate and r.certificate is not None:
        field = r.witness.field if r.witness is not None else system.field
        out["certificate"] = certificate_dict(r.certificate, field)
    return out


def probabilistic_json(r: ProbabilisticReport, command: dict) -> dict:
    out = _base(command, r.verdict)
    out.update({
        "p": r.p,
        "seed": r.seed,
        "transforms_used": r.transforms_used,
        "shifts_applied": r.shifts_applied,
        "degree_bound": r.degree_bound,
        "sample_range": r.sample_range,
        "substitution": r.substitution,
        "param_values": r.param_values,
        "gb_size": r.gb_size,
        "timings": {"elapsed": round(r.elapsed, 6)},
    })
    return out


def stats_json(s: VarietyStats, bound: BoundReport, command: dict) -> dict:
    out = _base(command, "computed")
    out.update({"stats": s.as_dict(), "bound": bound.as_dict()})
    return out


def bound_json(b: BoundReport, command: dict) -> dict:
    out = _base(command, "computed")
    out["bound"] = b.as_dict()
    return out


def transform_json(command: dict, copies: int, text: str) -> dict:
    out = _base(command, "computed")
    out.update({"transforms_used": copies, "shifts_applied": copies - 1, "system": text})
    return out


def certify_json(command: dict, verdict: str, target, cert, field, with_certificate: bool) -> dict:
    out = _base(command, verdict)
    out["target"] = str(target)
    out["certificate_verified"] = None if cert is None else cert.verify()
    if with_certificate and cert is not None:
        out["certificate"] = certificate_dict(cert, field)
    return out


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)


# -- plain text --------------------------------------------------------------

def _stats_line(s: VarietyStats) -> str:
    flag = ", unit ideal" if s.unit_ideal else ""
    return f"stats: d={s.d_hat} D={s.D_hat} H={s.H} ({s.deg_mode}, {s.dim_mode}{flag})"


def _bound_line(b: BoundReport) -> str:
    value = b.value if b.value is not None else f"2^{b.log2}"
    return f"bound: B({b.d}, {b.D}) = {value}"


def consistency_text(r: ConsistencyReport) -> str:
    lines = [f"verdict: {r.verdict}", _stats_line(r.stats), _bound_line(r.bound),
             f"transforms used: {r.transforms_used} (highest shift {r.shifts_applied})"]
    return "\n".join(lines)


def stats_text(s: VarietyStats, b: BoundReport) -> str:
    return "\n".join([_stats_line(s), _bound_line(b)])


def elimination_text(r: EliminationReport, witness: Optional[str] = None) -> str:
    lines = [f"verdict: {r.verdict}", _stats_line(r.stats), _bound_line(r.bound),
             f"transforms used: {r.transforms_used} (highest shift {r.shifts_applied})"]
    if r.witness is not None:
        lines.append(f"witness: {witness if witness is not None else r.witness}")
    if r.certificate is not None:
        lines.append(f"certificate: verified={r.certificate.verify()} ({r.method})")
    if r.param_values:
        lines.append("parameters: " + ", ".join(f"{k}={v}" for k, v in r.param_values.items()))
    return "\n".join(lines)


def probabilistic_text(r: ProbabilisticReport) -> str:
    return "\n".join([
        f"verdict: {r.verdict}",
        f"transforms used: {r.transforms_used} (highest shift {r.shifts_applied})",
        f"p: {r.p}  seed: {r.seed}  degree bound: {r.degree_bound}  range: {r.sample_range}",
    ])
