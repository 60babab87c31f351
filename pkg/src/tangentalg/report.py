"""Operation records and their JSON / text rendering.

Each record is ``{op, inputs, result, citations, timing}``.  ``timing``
holds the Groebner work done by the operation (pairs processed,
reductions), which is reproducible; wall-clock seconds are added only on
request because they differ between runs.
"""

from __future__ import annotations

import json
import math
import time
from fractions import Fraction

from .diffalg import NoWitness
from .groebner import ComputationTimeout, budget, work_counter
from .idealops import NotHomogeneous
from .polycore import DegreeCapExceeded, PolyMatrix, Polynomial

__all__ = ["NotCheckable", "OperationLog", "jsonable", "NOT_CHECKABLE_ERRORS"]

SCHEMA_VERSION = 1


class NotCheckable(Exception):
    """The tool cannot decide this item (as opposed to a failed computation)."""


NOT_CHECKABLE_ERRORS = (ComputationTimeout, NotHomogeneous, DegreeCapExceeded, NoWitness, NotCheckable)


def jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Polynomial):
        return str(x)
    if isinstance(x, PolyMatrix):
        return [[str(e) for e in row] for row in x.rows]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    raise TypeError(f"cannot serialise {type(x).__name__}")


def not_checkable(reason) -> dict:
    return {"status": "not-checkable", "reason": str(reason)}


class OperationLog:
    """Runs operations under a time budget and records them."""

    def __init__(self, timeout: float | None = None, wall_time: bool = False):
        self.timeout = timeout
        self.wall_time = wall_time
        self.operations: list[dict] = []
        self.failed_required = False

    def run(self, op: str, inputs: dict, fn, citations=(), work: int | None = None, required: bool = True) -> dict:
        """Evaluate ``fn()`` (returning a result dict) and record it.

        Timeouts, degree-cap overflows and ungraded input give a
        ``not-checkable`` result instead of an exception.
        """
        start = time.perf_counter()
        with work_counter() as w:
            try:
                with budget(self.timeout, work):
                    result = fn()
            except NOT_CHECKABLE_ERRORS as exc:
                result = not_checkable(exc)
        timing = w.as_dict()
        if self.wall_time:
            timing["seconds"] = round(time.perf_counter() - start, 3)
        if result.get("status") == "not-checkable" and required:
            self.failed_required = True
        record = {"op": op, "inputs": jsonable(inputs), "result": jsonable(result),
                  "citations": list(citations), "timing": timing}
        self.operations.append(record)
        return result


def dump_json(payload: dict) -> str:
    return json.dumps(jsonable(payload), sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def render_text(payload: dict) -> str:
    lines = []
    sess = payload.get("session", {})
    if sess:
        lines.append(f"# {sess.get('source') or 'input'}: ring {' '.join(sess.get('ring', []))} over "
                     f"{'QQ' if sess.get('char') == 0 else 'GF(%s)' % sess.get('char')}")
    for rec in payload.get("operations", []):
        res = rec["result"]
        args = ", ".join(f"{k}={v}" for k, v in sorted(rec["inputs"].items()) if k != "object")
        head = f"{rec['op']}({args})" if args else rec["op"]
        body = ", ".join(f"{k}={_short(v)}" for k, v in sorted(res.items()))
        secs = rec["timing"].get("seconds")
        lines.append(f"{head}: {body}" + (f"  [{secs}s]" if secs is not None else ""))
    if "audit" in payload:
        lines.extend(render_audit(payload["audit"]))
    return "\n".join(lines) + "\n"


_LABEL = {"hypotheses": "hypothesis", "conclusions": "conclusion"}


def render_audit(a: dict) -> list[str]:
    lines = [f"audit {a['tag']}: {a['status']}"]
    for part in ("hypotheses", "conclusions"):
        for item in a[part]:
            mark = {True: "yes", False: "no", None: "?"}[item["verdict"]]
            lines.append(f"  [{_LABEL[part]}] {item['name']}: {mark} ({item['state']}) {item.get('detail', '')}".rstrip())
    for note in a.get("notes", []):
        lines.append(f"  note: {note}")
    return lines


def _short(v, limit: int = 120) -> str:
    s = json.dumps(v, sort_keys=True, ensure_ascii=False) if not isinstance(v, str) else v
    return s if len(s) <= limit else s[: limit - 3] + "..."
