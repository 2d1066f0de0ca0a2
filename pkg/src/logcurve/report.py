"""Full reports: dimensions, operators and every verification verdict.

A report is a plain JSON-ready dict (rationals as strings).  The text
rendering shown by the CLI is derived from the same dict.
"""

from __future__ import annotations

import random
from typing import Optional

from . import linalg
from .cohomology import h0_log, h1_log_basis, h1_truncated_oracle, residue_theorem_check
from .dual_graph import LogCurveModel, betti1, lemma_intersection_check
from .exact_arith import fstr
from .monodromy import (
    dubois_h1,
    expected_dims,
    monodromy_matrix,
    nilpotency_check,
    orientation_invariance_check,
    sp_matrix,
    uniformizer_invariance_check,
    verify_invariant_cycles,
)


def matrix_json(a: linalg.Matrix) -> list[list[str]]:
    return [[fstr(x) for x in row] for row in a]


def vector_json(v) -> list[str]:
    return [fstr(x) for x in v]


def random_flip_sets(model: LogCurveModel, k: int, rng: random.Random) -> list[list[str]]:
    eids = model.edge_ids
    if not eids:
        return [[] for _ in range(k)]
    out = []
    for _ in range(k):
        n = rng.randint(1, len(eids))
        out.append(sorted(rng.sample(eids, n), key=eids.index))
    return out


def verify(model: LogCurveModel, oracle: int = 2, flips: int = 3, seed: int = 0,
           unit_trials: int = 5, coboundaries: int = 3, residue_forms: int = 5) -> dict:
    """Run every check; the result carries dims, verdicts and an overall ``passed``."""
    rng = random.Random(seed)
    basis = h1_log_basis(model)
    op = monodromy_matrix(model, basis)
    inv = verify_invariant_cycles(model, basis, op)
    exp = expected_dims(model)
    dims = {
        "h0": h0_log(model),
        "h1_log": basis.dim,
        "h1_db": inv.dim_h1_db,
        "betti1": betti1(model),
        "rank_monodromy": op.rank,
        "dim_ker_monodromy": inv.dim_ker_monodromy,
        "rank_sp": inv.rank_sp,
    }
    verdicts = {
        "sp_injective": inv.sp_injective,
        "monodromy_kills_sp": inv.monodromy_kills_sp,
        "kernel_equals_image": inv.kernel_equals_image,
        "nilpotency": nilpotency_check(model, op),
        "expected_dims": (dims["h1_log"], dims["h1_db"]) == (exp["h1_log"], exp["h1_db"]),
        "combinatorial_lemma": lemma_intersection_check(model),
    }

    flip_sets = random_flip_sets(model, flips, rng)
    verdicts["orientation_invariance"] = all(orientation_invariance_check(model, fs) for fs in flip_sets)

    units = uniformizer_invariance_check(model, random.Random(rng.getrandbits(32)),
                                         trials=unit_trials, coboundaries=coboundaries)
    verdicts["uniformizer_invariance"] = units.passed

    residue = residue_theorem_check(model, random.Random(rng.getrandbits(32)), residue_forms)
    verdicts["residue_theorem"] = all(residue.values())

    oracle_out: Optional[dict] = None
    if model.is_concrete:
        lo = h1_truncated_oracle(model, oracle)
        hi = h1_truncated_oracle(model, oracle + 1)
        oracle_out = {"D": oracle, "h1": [lo.h1, hi.h1], "h0": [lo.h0, hi.h0]}
        verdicts["oracle_agreement"] = lo.h1 == hi.h1 == basis.dim and lo.h0 == hi.h0 == dims["h0"]

    return {
        "dims": dims,
        "verdicts": verdicts,
        "residue_theorem": residue,
        "flip_sets": flip_sets,
        "oracle": oracle_out,
        "passed": all(verdicts.values()),
    }


def build_report(model: LogCurveModel, **kwargs) -> dict:
    basis = h1_log_basis(model)
    op = monodromy_matrix(model, basis)
    db = dubois_h1(model, basis)
    out = verify(model, **kwargs)
    out["basis"] = basis.labels()
    out["monodromy"] = matrix_json(op.matrix)
    out["dubois_basis"] = db.labels(model)
    out["sp"] = matrix_json(sp_matrix(model, basis))
    return out


def _render_matrix(rows: list[list[str]], row_labels: list[str], col_labels: list[str]) -> list[str]:
    if not rows or not col_labels:
        return ["  (empty)"]
    width = max(len(x) for x in [*col_labels, *(y for r in rows for y in r)])
    lw = max(len(x) for x in row_labels)
    lines = ["  " + " " * lw + "  " + " ".join(c.rjust(width) for c in col_labels)]
    for lab, row in zip(row_labels, rows):
        lines.append("  " + lab.ljust(lw) + "  " + " ".join(x.rjust(width) for x in row))
    return lines


def render_text(report: dict) -> str:
    lines = ["dimensions:"]
    for k, v in report["dims"].items():
        lines.append("  %-18s %d" % (k, v))
    if "monodromy" in report:
        lines.append("monodromy (columns = images of basis vectors):")
        lines += _render_matrix(report["monodromy"], report["basis"], report["basis"])
        lines.append("specialization H1_DB -> H1_log:")
        lines += _render_matrix(report["sp"], report["basis"], report["dubois_basis"])
    if report["oracle"] is not None:
        o = report["oracle"]
        lines.append("truncation oracle: h1 = %d at D=%d, %d at D=%d"
                     % (o["h1"][0], o["D"], o["h1"][1], o["D"] + 1))
    else:
        lines.append("truncation oracle: skipped (positive-genus components)")
    lines.append("checks:")
    for k, v in report["verdicts"].items():
        lines.append("  %-24s %s" % (k, "pass" if v else "FAIL"))
    lines.append("result: %s" % ("PASS" if report["passed"] else "FAIL"))
    return "\n".join(lines) + "\n"
