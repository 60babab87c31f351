"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line; the lines are printed in the terminal
summary (see conftest.py) so a plain ``pytest`` run shows the scoreboard.
"""

import json
import subprocess
import sys
import time
from pathlib import Path

from click.testing import CliRunner

from tangentalg import groebner
from tangentalg.audit import audit_theorem
from tangentalg.battery import Workspace, run_battery
from tangentalg.cli import main
from tangentalg.corpus import example_source
from tangentalg.diffalg import PresentedAlgebra, edim_criterion, ft_check, omega_presentation, rees_algebra
from tangentalg.homology import cy_type_check, is_cohen_macaulay
from tangentalg.idealops import hilbert_series, krull_dim, membership
from tangentalg.report import OperationLog
from tangentalg.session import Options, parse_input

RESULTS: list[str] = []
TESTS = Path(__file__).parent


def record(number: int, title: str, ok: bool, detail: str):
    line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def battery(name: str, options: Options | None = None) -> dict:
    session = parse_input(example_source(name), options, source=name)
    log = OperationLog(timeout=600)
    run_battery(log, Workspace(session.ideal(), name))
    return {o["op"] if o["op"] != "is_cohen_macaulay" else f"cm-{o['inputs']['target']}": o["result"]
            for o in log.operations if o["op"] != "ft_check"} | {
        f"F{o['inputs']['t']}": o["result"] for o in log.operations if o["op"] == "ft_check"}


def test_criterion_1_catalecticant_family():
    expected = {1: False, 2: False, 3: True, 4: True}
    found, heights, slowest = {}, {}, 0.0
    for r in expected:
        start = time.perf_counter()
        out = battery(f"catalecticant-{r}")
        slowest = max(slowest, time.perf_counter() - start)
        found[r] = out["rees_algebra"]["linear_type"]
        heights[r] = out["krull_dim"]["height"]
    ok = found == expected and set(heights.values()) == {3} and slowest < 300
    record(1, "catalecticant linear type and height", ok,
           f"linear_type {found}, heights {heights}, slowest {slowest:.1f}s (limit 300s)")


def test_criterion_2_veronese():
    start = time.perf_counter()
    out = battery("veronese")
    elapsed = time.perf_counter() - start
    lt = out["rees_algebra"]["linear_type"]
    mu = out["mu_mod_cube"]
    cm_a = out["cm-A"]["value"]
    s_cm = out["cm-S"]
    s_text = s_cm.get("status", s_cm.get("value"))
    ok = lt is False and mu["value"] == 6 == mu["bound"] + 1 and cm_a is True and elapsed < 600
    record(2, "Veronese surface", ok,
           f"linear_type {lt}, mu_mod_cube {mu['value']} against bound {mu['bound']}, A CM {cm_a}, "
           f"S CM {s_text}, {elapsed:.1f}s (limit 600s)")


def test_criterion_3_cusp_over_rationals():
    start = time.perf_counter()
    session = parse_input(example_source("cusp"), Options(characteristic=0))
    A = PresentedAlgebra(session.ideal().ring, session.ideal())
    R, rep = rees_algebra(A)
    h = R.ring("2*x*T2 - 3*y*T1")
    in_sat, in_j = membership(h, rep.J_sat), membership(h, rep.J)
    cm = is_cohen_macaulay(R)
    audit = audit_theorem("cm-edim", Workspace(session.ideal(), "cusp"))
    elapsed = time.perf_counter() - start
    ok = (R.ring.field.characteristic == 0 and R.ring.nvars == 4 and in_sat and not in_j
          and cm is False and audit.status == "consistent" and elapsed < 60)
    record(3, "cusp over Q", ok,
           f"2xT2-3yT1 in J_sat {in_sat}, in J {in_j}, Rees CM {cm}, audit {audit.status}, "
           f"{elapsed:.1f}s (limit 60s)")


def test_criterion_4_fermat_quintic():
    start = time.perf_counter()
    I = parse_input(example_source("fermat-5-5")).ideal()
    A = PresentedAlgebra(I.ring, I)
    cy = cy_type_check(A)
    a = hilbert_series(I).a_invariant
    f2 = edim_criterion(A, 2)
    elapsed = time.perf_counter() - start
    ok = cy and a == 0 and f2 and elapsed < 120
    record(4, "Fermat quintic", ok, f"cy_type {cy}, a-invariant {a}, edim t=2 {f2}, {elapsed:.1f}s (limit 120s)")


CODIM2 = {
    "twisted cubic": "ring x0..x3; ideal I = minors 2 [[x0, x1, x2], [x1, x2, x3]];",
    "generic 2x3": "ring x1..x6; ideal I = minors 2 generic 2 3;",
    "rational normal scroll": "ring x0..x4; ideal I = minors 2 [[x0, x1, x3], [x1, x2, x4]];",
    "two quadrics in 4 variables": "ring x1..x4; ideal I = x1^2+x2^2+x3^2+x4^2, x1^2+2*x2^2+3*x3^2+4*x4^2;",
    "two quadrics in 5 variables":
        "ring x1..x5; ideal I = x1^2+x2^2+x3^2+x4^2+x5^2, x1^2+2*x2^2+3*x3^2+4*x4^2+5*x5^2;",
    "two quadrics in 6 variables":
        "ring x1..x6; ideal I = x1^2+x2^2+x3^2+x4^2+x5^2+x6^2, x1^2+2*x2^2+3*x3^2+4*x4^2+5*x5^2+6*x6^2;",
    "quadric and cubic in 5 variables":
        "ring x1..x5; ideal I = x1^2+x2^2+x3^2+x4^2+x5^2, x1^3+2*x2^3+3*x3^3+4*x4^3+5*x5^3;",
}


def test_criterion_5_codim2_equivalence():
    agree, rows = 0, []
    for name, src in CODIM2.items():
        I = parse_input(src).ideal()
        A = PresentedAlgebra(I.ring, I)
        assert I.ring.nvars - krull_dim(I) == 2, name
        assert is_cohen_macaulay(A), name
        _, rep = rees_algebra(A)
        f1 = ft_check(omega_presentation(A), 1).verdict
        agree += rep.linear_type == f1
        rows.append(f"{name} {rep.linear_type}/{f1}")
    ok = agree == len(CODIM2) >= 5
    record(5, "codim 2 linear type vs F_1", ok, f"{agree}/{len(CODIM2)} agree ({'; '.join(rows)})")


def test_criterion_6_property_suites():
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
                           str(TESTS / "test_properties.py")], capture_output=True, text=True)
    summary = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    record(6, "property suites", proc.returncode == 0, summary)


def test_criterion_7_determinism(tmp_path):
    runner = CliRunner()
    outputs = []
    for k in range(2):
        groebner.clear_cache()
        r = runner.invoke(main, ["run", "all", "--json", "--cache-dir", str(tmp_path / f"cold{k}")])
        assert r.exit_code in (0, 3), r.output
        outputs.append(r.stdout)
    json.loads(outputs[0])
    same = outputs[0] == outputs[1]
    record(7, "determinism", same, f"two cold corpus runs, {len(outputs[0])} bytes each, identical {same}")
