"""The canonical battery of checks and the single checks behind ``check``."""

from __future__ import annotations

from .diffalg import (
    PresentedAlgebra,
    analytic_spread,
    edim_criterion,
    ft_check,
    generic_rank,
    omega_presentation,
    rees_algebra,
    tangent_algebra,
    torsion_witness,
    mu_mod_cube,
)
from .groebner import ComputationTimeout
from .homology import free_resolution, is_cohen_macaulay, is_gorenstein, cy_type_check, koszul_h1, module_is_zero
from .idealops import NotHomogeneous, hilbert_series, krull_dim
from .report import NotCheckable, OperationLog

__all__ = ["CITATIONS", "DEFAULT_STRETCH_WORK", "Workspace", "run_battery", "run_check", "CHECKS"]

# work budget (processed S-pairs) for the optional Cohen-Macaulay test of the
# tangent algebra; exceeding it reports not-checkable
DEFAULT_STRETCH_WORK = 1000

CITATIONS = {
    "torsion": "the symmetric algebra of differentials is torsionfree exactly when saturating "
               "its defining ideal by a nonzerodivisor Jacobian minor adds nothing",
    "ft": "condition F_t on the differentials is equivalent to edim A_p <= 2 dim A_p - t "
          "at the relevant primes, read off from heights of Fitting ideals of the Jacobian",
    "quadric-bound": "reducedness and torsionfreeness of the tangent algebra agree when the "
                     "defining ideal lies in the square of the maximal ideal and needs at most "
                     "dim R - 1 generators modulo its cube",
    "cm": "Cohen-Macaulay means depth equals dimension; depth via Auslander-Buchsbaum "
          "from a minimal graded free resolution",
    "dim": "Krull dimension from the lead-term ideal of a Groebner basis",
}


class Workspace:
    """Lazily computed objects attached to one base algebra A = R/I."""

    def __init__(self, ideal, source: str = ""):
        self.ideal = ideal
        self.source = source
        self.A = PresentedAlgebra(ideal.ring, ideal)
        self._cache: dict = {}

    def get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def omega(self):
        return self.get("omega", lambda: omega_presentation(self.A))

    @property
    def tangent(self):
        return self.get("tangent", lambda: tangent_algebra(self.A))

    @property
    def witness(self):
        return self.get("witness", lambda: torsion_witness(self.A))

    @property
    def rees(self):
        """(Rees algebra, TorsionReport)."""
        return self.get("rees", lambda: rees_algebra(self.A))

    def ft(self, t: int):
        return self.get(("ft", t), lambda: ft_check(self.omega, t))

    def dim(self) -> int:
        return self.get("dim", lambda: krull_dim(self.ideal))

    @property
    def graded(self) -> bool:
        return self.get("graded", lambda: self.ideal.is_homogeneous())


def _need_graded(ws: Workspace, what: str):
    if not ws.graded:
        raise NotHomogeneous(f"{what} needs a homogeneous presentation")


# -- single checks -------------------------------------------------------------

def _krull_dim(ws):
    d = ws.dim()
    return {"dim": d, "height": ws.ideal.ring.nvars - d if d >= 0 else "inf"}


def _tangent(ws):
    S = ws.tangent
    return {"variables": list(S.ring.variables), "relations": len(S.ideal.gens), "dim": krull_dim(S.ideal)}


def _witness(ws):
    return {"witness": ws.witness}


def _rees(ws):
    _, rep = ws.rees
    return {"linear_type": rep.linear_type, "steps": rep.steps, "witness": ws.witness,
            "torsion_generators": rep.new_generators, "rees_relations": len(rep.J_sat.basis())}


def _ft(ws, t: int):
    rep = ws.ft(t)
    return {"verdict": rep.verdict, "rank": rep.rank,
            "records": [{"index": r.index, "height": r.height, "bound": r.bound} for r in rep.records]}


def _mu(ws):
    n = ws.ideal.ring.nvars
    try:
        v = mu_mod_cube(ws.ideal)
    except ValueError as exc:
        raise NotCheckable(exc) from exc
    return {"value": v, "bound": n - 1, "within_bound": v <= n - 1}


def _cm(ws, target: str):
    _need_graded(ws, "Cohen-Macaulay test")
    X = _target(ws, target)
    hints = ()
    if target == "S" and "rees" in ws._cache:
        # torsion elements of S are the natural candidates for a mixedness certificate
        hints = ws.rees[1].new_generators
    return {"target": target, "value": is_cohen_macaulay(X, hints)}


def _target(ws, target: str):
    if target == "A":
        return ws.A
    if target == "S":
        return ws.tangent
    if target == "R":
        return ws.rees[0]
    raise NotCheckable(f"unknown target {target!r} (expected A, S or R)")


def _gorenstein(ws, target: str = "A"):
    _need_graded(ws, "Gorenstein test")
    return {"target": target, "value": is_gorenstein(_target(ws, target))}


def _cy(ws):
    if any(w != 1 for w in ws.ideal.ring.weights):
        raise NotHomogeneous("Calabi-Yau type test uses the standard grading")
    _need_graded(ws, "Calabi-Yau type test")
    hs = hilbert_series(ws.ideal)
    return {"value": cy_type_check(ws.A), "a_invariant": hs.a_invariant}


def _hilbert(ws):
    if any(w != 1 for w in ws.ideal.ring.weights):
        raise NotHomogeneous("Hilbert series uses the standard grading")
    hs = hilbert_series(ws.ideal)
    return {"series": str(hs), "numerator": list(hs.numerator), "dim": hs.dim, "a_invariant": hs.a_invariant}


def _resolution(ws, target: str = "A"):
    _need_graded(ws, "free resolution")
    res = free_resolution(_target(ws, target))
    return {"target": target, "ranks": res.ranks(), "betti": res.betti().as_rows(), "length": res.length}


def _edim(ws, t: int):
    return {"t": t, "verdict": edim_criterion(ws.A, t)}


def _spread(ws):
    return {"value": analytic_spread(ws.ideal, ws.A)}


def _generic_rank(ws):
    return {"value": generic_rank(ws.omega)}


def _koszul(ws):
    H = koszul_h1(ws.ideal)
    return {"zero": module_is_zero(H), "generators": H.ngens}


CHECKS = {
    "krull_dim": (_krull_dim, 0, ["dim"]),
    "tangent": (_tangent, 0, []),
    "witness": (_witness, 0, ["torsion"]),
    "rees": (_rees, 0, ["torsion"]),
    "linear_type": (_rees, 0, ["torsion"]),
    "ft": (_ft, 1, ["ft"]),
    "edim": (_edim, 1, ["ft"]),
    "mu_mod_cube": (_mu, 0, ["quadric-bound"]),
    "cm": (_cm, 1, ["cm"]),
    "gorenstein": (_gorenstein, 1, ["cm"]),
    "cy_type": (_cy, 0, []),
    "hilbert": (_hilbert, 0, []),
    "resolution": (_resolution, 1, []),
    "spread": (_spread, 0, []),
    "generic_rank": (_generic_rank, 0, []),
    "koszul_h1": (_koszul, 0, []),
}


def run_check(log: OperationLog, ws: Workspace, name: str, args: list[str]):
    if name not in CHECKS:
        raise KeyError(f"unknown check {name!r}; known: {', '.join(sorted(CHECKS))}")
    fn, nargs, cites = CHECKS[name]
    if len(args) > nargs:
        raise ValueError(f"check {name} takes at most {nargs} argument(s)")
    parsed = []
    inputs = {"object": ws.source or "I"}
    for a in args:
        parsed.append(int(a) if a.lstrip("-").isdigit() else a)
    if name in ("cm", "gorenstein", "resolution") and not parsed:
        parsed = ["A"]
    if parsed:
        inputs["arg"] = parsed[0]
    log.run(name, inputs, lambda: fn(ws, *parsed), [CITATIONS[c] for c in cites])


def run_battery(log: OperationLog, ws: Workspace, stretch_work: int | None = DEFAULT_STRETCH_WORK):
    """tangent algebra, Rees algebra, F_0..F_2, mu mod cube, and Cohen-Macaulayness."""
    obj = ws.source or "I"
    cite = lambda *keys: [CITATIONS[k] for k in keys]
    log.run("krull_dim", {"object": obj}, lambda: _krull_dim(ws), cite("dim"))
    log.run("tangent_algebra", {"object": obj}, lambda: _tangent(ws))
    log.run("rees_algebra", {"object": obj}, lambda: _rees(ws), cite("torsion"))
    for t in range(3):
        log.run("ft_check", {"object": obj, "t": t}, lambda t=t: _ft(ws, t), cite("ft"))
    log.run("mu_mod_cube", {"object": obj}, lambda: _mu(ws), cite("quadric-bound"), required=False)
    log.run("is_cohen_macaulay", {"object": obj, "target": "A"}, lambda: _cm(ws, "A"), cite("cm"), required=False)
    log.run("is_cohen_macaulay", {"object": obj, "target": "S"}, lambda: _cm(ws, "S"), cite("cm"),
            work=stretch_work, required=False)
