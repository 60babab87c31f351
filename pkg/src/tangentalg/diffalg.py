"""Kaehler differentials, tangent and Rees algebras, and Fitting-ideal criteria.

For A = k[X]/I with I = (f_1..f_m), the module of differentials is the
cokernel of the Jacobian (rows indexed by variables), its symmetric algebra
is k[X,T]/(I + (sum_j df_i/dX_j T_j)), and the Rees algebra is the quotient
by A-torsion, obtained by saturating with a nonzerodivisor that frees the
module.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .idealops import (
    Ideal,
    NotHomogeneous,
    height_in_quotient,
    is_nonzerodivisor,
    krull_dim,
    membership,
    saturation,
)
from .groebner import buchberger, normal_form, syzygies
from .polycore import PolyMatrix, PolyRing, Polynomial, matrix_rank, minors, minors_indexed

__all__ = [
    "FtReport",
    "NoWitness",
    "PresentedAlgebra",
    "PresentedModule",
    "TorsionReport",
    "analytic_spread",
    "edim_criterion",
    "fitting_ideal",
    "ft_check",
    "generic_rank",
    "ideal_module",
    "jacobian",
    "jacobian_rank_at_point",
    "mu_mod_cube",
    "omega_mod_torsion",
    "omega_presentation",
    "quadric_part",
    "rees_algebra",
    "rees_ideal",
    "spread_of_quadric_part",
    "symmetric_algebra",
    "tangent_algebra",
    "torsion_witness",
]


class NoWitness(RuntimeError):
    """No minor of the presentation is a nonzerodivisor outside the ideal."""


@dataclass
class PresentedAlgebra:
    """A quotient ring ``ring / ideal``.

    ``role`` is ``base`` for A itself, ``tangent`` for its symmetric algebra
    of differentials, ``rees`` for the Rees algebra.  Tangent and Rees
    algebras keep the base algebra and the names of the T block.
    """

    ring: PolyRing
    ideal: Ideal
    role: str = "base"
    base: "PresentedAlgebra | None" = None
    t_vars: tuple[str, ...] = ()
    witness: Polynomial | None = None
    domain: bool = True

    @classmethod
    def quotient(cls, ring: PolyRing, gens: Sequence[Polynomial | str] = (), domain: bool = True):
        return cls(ring, Ideal(ring, gens), domain=domain)

    @property
    def x_vars(self) -> tuple[str, ...]:
        return tuple(v for v in self.ring.variables if v not in self.t_vars)

    def dim(self) -> int:
        return krull_dim(self.ideal)

    def codim(self) -> int:
        """height of the defining ideal (ambient dimension minus dim)."""
        return self.ring.nvars - self.dim()

    def is_graded(self) -> bool:
        return self.ideal.is_homogeneous()

    def __repr__(self):
        return f"PresentedAlgebra({self.role}, {self.ring.variables}, {self.ideal!r})"


@dataclass
class PresentedModule:
    """Cokernel of ``matrix`` (generators x relations) over ``base``.

    ``gen_degrees`` are the degrees of the generators; ``rank`` is the
    declared generic rank.
    """

    base: PresentedAlgebra
    matrix: PolyMatrix
    rank: int
    gen_degrees: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.gen_degrees:
            self.gen_degrees = (0,) * self.matrix.nrows

    @property
    def ngens(self) -> int:
        return self.matrix.nrows

    @property
    def nrels(self) -> int:
        return self.matrix.ncols

    @property
    def ring(self) -> PolyRing:
        return self.base.ring


@dataclass
class TorsionReport:
    J: Ideal
    J_sat: Ideal
    witness: Polynomial
    steps: int
    linear_type: bool
    new_generators: list[Polynomial] = field(default_factory=list)


@dataclass
class FtRecord:
    index: int
    height: float | int
    bound: int

    @property
    def ok(self) -> bool:
        return self.height >= self.bound


@dataclass
class FtReport:
    t: int
    rank: int
    records: list[FtRecord]

    @property
    def verdict(self) -> bool:
        return all(r.ok for r in self.records)


# -- differentials -------------------------------------------------------------

def _base_ideal(X) -> Ideal:
    return X if isinstance(X, Ideal) else X.ideal


def jacobian(I, variables: Sequence[str] | None = None) -> PolyMatrix:
    """Matrix of partial derivatives: entry (j, i) is d f_i / d X_j."""
    I = _base_ideal(I)
    ring = I.ring
    variables = list(variables) if variables is not None else list(ring.variables)
    rows = [[f.derivative(v) for f in I.gens] for v in variables]
    return PolyMatrix(ring, rows) if I.gens else PolyMatrix.zeros(ring, len(variables), 0)


def omega_presentation(A: PresentedAlgebra) -> PresentedModule:
    """Omega_{A/k} as the cokernel of the Jacobian, declared of rank dim A."""
    ring = A.ring
    return PresentedModule(A, jacobian(A.ideal), A.dim(), tuple(ring.weights))


def generic_rank(E: PresentedModule) -> int:
    """ngens minus the largest t having a t-minor that is a nonzerodivisor mod I."""
    I = E.base.ideal
    M = E.matrix
    for t in range(min(M.shape), 0, -1):
        for _, _, d in minors_indexed(M, t):
            if d.terms and is_nonzerodivisor(d, I):
                return E.ngens - t
    return E.ngens


def _t_names(ring: PolyRing, count: int) -> list[str]:
    names = []
    for j in range(1, count + 1):
        name = f"T{j}"
        while name in ring.index or name in names:
            name = name + "_"
        names.append(name)
    return names


def symmetric_algebra(E: PresentedModule, role: str = "symmetric") -> PresentedAlgebra:
    """Sym(E) = k[X,T]/(I + (sum_j phi_{jk} T_j for each relation k))."""
    A = E.base
    ring = A.ring
    tn = _t_names(ring, E.ngens)
    weights = [max(int(d), 1) for d in E.gen_degrees]
    big = ring.extend(tn, weights=weights, order=ring.order.kind if ring.order.kind != "elim" else "degrevlex")
    Ts = [big.gen(t) for t in tn]
    gens = [f.to_ring(big) for f in A.ideal.gens]
    for k in range(E.nrels):
        form = big.zero()
        for j in range(E.ngens):
            entry = E.matrix[j, k]
            if entry.terms:
                form = form + entry.to_ring(big) * Ts[j]
        if form.terms:
            gens.append(form)
    return PresentedAlgebra(big, Ideal(big, gens), role=role, base=A, t_vars=tuple(tn), domain=False)


def tangent_algebra(A: PresentedAlgebra) -> PresentedAlgebra:
    """Presentation of the symmetric algebra of Omega_{A/k} in k[X,T]."""
    return symmetric_algebra(omega_presentation(A), role="tangent")


def _witness_candidates(M: PolyMatrix, t: int):
    found = []
    for idx, (rows, cols, d) in enumerate(minors_indexed(M, t)):
        if d.terms:
            found.append((d.total_degree(), len(d.terms), idx, d))
    found.sort(key=lambda x: x[:3])
    return [d for *_, d in found]


def module_witness(E: PresentedModule) -> Polynomial:
    """A (ngens - rank)-minor of the presentation that is a nonzerodivisor mod I.

    Candidates are scanned by increasing degree, then by number of terms,
    then in the lexicographic row-set / column-set order.
    """
    I = E.base.ideal
    t = E.ngens - E.rank
    if t <= 0:
        return E.ring.one()
    if t > min(E.matrix.shape):
        raise NoWitness(f"presentation has no {t}x{t} minors")
    for d in _witness_candidates(E.matrix, t):
        if not membership(d, I) and is_nonzerodivisor(d, I):
            return d
    raise NoWitness(f"no {t}x{t} minor is a nonzerodivisor modulo the ideal")


def torsion_witness(A: PresentedAlgebra) -> Polynomial:
    """A c x c Jacobian minor (c = height I) that is a nonzerodivisor mod I."""
    return module_witness(omega_presentation(A))


def rees_ideal(S: PresentedAlgebra, witness: Polynomial, method: str = "iterate") -> tuple[Ideal, int]:
    g = witness.to_ring(S.ring)
    return saturation(S.ideal, g, method=method)


def _torsion_report(S: PresentedAlgebra, g: Polynomial, method: str) -> tuple[PresentedAlgebra, TorsionReport]:
    J = S.ideal
    J_sat, steps = rees_ideal(S, g, method)
    linear = J_sat == J
    new = []
    if not linear:
        G = J.gb()
        for h in J_sat.basis():
            if normal_form(h, G).terms:
                new.append(h)
            if len(new) >= 5:
                break
    R = PresentedAlgebra(S.ring, J_sat, role="rees", base=S.base, t_vars=S.t_vars,
                         witness=g.to_ring(S.ring), domain=False)
    return R, TorsionReport(J, J_sat, g.to_ring(S.ring), steps, linear, new)


def rees_algebra(A: PresentedAlgebra, method: str = "iterate") -> tuple[PresentedAlgebra, TorsionReport]:
    """Rees algebra of Omega_{A/k}: the tangent algebra saturated by a witness minor."""
    g = torsion_witness(A)
    S = tangent_algebra(A)
    return _torsion_report(S, g, method)


def rees_of_module(E: PresentedModule, method: str = "iterate") -> tuple[PresentedAlgebra, TorsionReport]:
    g = module_witness(E)
    S = symmetric_algebra(E)
    return _torsion_report(S, g, method)


# -- Fitting ideals -------------------------------------------------------------

def fitting_ideal(E: PresentedModule, i: int) -> Ideal:
    """Fitt_i(E) = I_{n-i}(presentation) + I, lifted to the ambient ring."""
    ring = E.ring
    n = E.ngens
    if i < 0:
        raise ValueError("Fitting index must be non-negative")
    if i >= n:
        return Ideal(ring, [ring.one()])
    k = n - i
    gens = list(E.base.ideal.gens)
    if k <= min(E.matrix.shape):
        gens = minors(E.matrix, k) + gens
    return Ideal(ring, gens)


def ft_check(E: PresentedModule, t: int) -> FtReport:
    """Condition (F_t): height Fitt_i(E) >= i - r + t + 1 for r <= i < ngens."""
    r = E.rank
    records = []
    for i in range(r, E.ngens):
        h = height_in_quotient(fitting_ideal(E, i), E.base)
        records.append(FtRecord(i, h, i - r + t + 1))
    return FtReport(t, r, records)


def edim_criterion(A: PresentedAlgebra, t: int) -> bool:
    """edim A_p <= 2 dim A_p - t at non-regular primes, via (F_t) for Omega."""
    return ft_check(omega_presentation(A), t).verdict


# -- spreads and quadrics --------------------------------------------------------

def ideal_module(K: Ideal, base: PresentedAlgebra | None = None) -> PresentedModule:
    """The ideal K (of the ambient ring, nonzero) as a module over base = R/I.

    Presented by the syzygies of its generators together with I; the
    relations coming from I-multiples are dropped since they vanish over A.
    """
    ring = K.ring
    if base is None:
        base = PresentedAlgebra(ring, Ideal(ring, []))
    gens = K.gens
    if not gens:
        raise ValueError("zero ideal")
    row = PolyMatrix(ring, [list(gens) + list(base.ideal.gens)])
    degs = [g.degree() for g in gens] + [f.degree() for f in base.ideal.gens]
    S = syzygies(row, row_degrees=[0], column_degrees=degs)
    m = len(gens)
    cols = []
    for j in range(S.ncols):
        col = [S[i, j] for i in range(m)]
        if any(c.terms for c in col):
            cols.append(col)
    mat = PolyMatrix.from_columns(ring, cols, m) if cols else PolyMatrix.zeros(ring, m, 0)
    return PresentedModule(base, mat, 1, tuple(max(g.degree(), 1) for g in gens))


def analytic_spread(E, base: PresentedAlgebra | None = None, method: str = "iterate") -> int:
    """dim of the special fibre k[X,T]/(Rees ideal + (X)), at the irrelevant ideal."""
    if isinstance(E, Ideal):
        if E.is_zero():
            return 0
        E = ideal_module(E, base)
    if all(not c.terms for row in E.matrix.rows for c in row):
        return E.ngens
    R, _ = rees_of_module(E, method)
    big = R.ring
    fibre = R.ideal + [big.gen(x) for x in R.x_vars]
    return krull_dim(fibre)


def quadric_part(I: Ideal) -> list[Polynomial]:
    """A basis of the degree-2 piece [I]_2 (standard grading, I inside n^2)."""
    ring = I.ring
    if I.is_zero():
        return []
    G = buchberger(I.gens, ring, truncate=2) if all(w == 1 for w in ring.weights) else None
    if G is None:
        raise NotHomogeneous("quadric_part needs the standard grading")
    return [f for f in G.polys if f.total_degree() == 2 and f.min_total_degree() == 2]


def jacobian_rank_at_point(polys: Sequence[Polynomial], seed: int = 0) -> int:
    """Rank of the Jacobian of ``polys`` at a pseudo-random point."""
    if not polys:
        return 0
    ring = polys[0].ring
    rng = random.Random(seed)
    point = [ring.field.random(rng) for _ in ring.variables]
    rows = [[f.derivative(v).evaluate(point) for v in ring.variables] for f in polys]
    return matrix_rank(rows, ring.field)


@dataclass
class SpreadReport:
    spread: int
    twice_height: int
    equal: bool
    jacobian_rank: int
    cross_check_agrees: bool


def spread_of_quadric_part(I: Ideal, seed: int = 0) -> SpreadReport:
    """Analytic spread of I_2 compared with 2 height I.

    The spread is computed from the fibre of the Rees algebra of I_2; the
    rank of the Jacobian of a basis of I_2 at a random point is an
    independent estimate of the same number (valid in characteristic 0 and
    for generic points in large characteristic).
    """
    quads = quadric_part(I)
    height = I.ring.nvars - krull_dim(I)
    if quads:
        ell = analytic_spread(Ideal(I.ring, quads))
    else:
        ell = 0
    jr = jacobian_rank_at_point(quads, seed)
    return SpreadReport(ell, 2 * height, ell == 2 * height, jr, jr == ell)


def mu_mod_cube(I: Ideal) -> int:
    """Minimal number of generators of (I + n^3)/n^3 for I inside n^2.

    Equal to the rank of the quadratic parts of the generators, which for
    a homogeneous ideal is dim_k [I]_2.
    """
    ring = I.ring
    for g in I.gens:
        if g.min_total_degree() < 2:
            raise ValueError(f"generator {g} is not inside the square of the maximal ideal")
    quads = [g.homogeneous_part(2) for g in I.gens]
    keys = sorted({k for q in quads for k in q.terms})
    rows = [[q.terms.get(k, 0) for k in keys] for q in quads]
    return matrix_rank(rows, ring.field) if keys else 0


# -- Omega modulo torsion ---------------------------------------------------------

def _t_degree(f: Polynomial, tidx: Sequence[int]) -> set[int]:
    return {sum(f.ring.decode(k)[i] for i in tidx) for k in f.terms}


def omega_mod_torsion(A: PresentedAlgebra, method: str = "iterate") -> PresentedModule:
    """Omega/tau presented by the T-linear part of the Rees ideal.

    Starts from the Jacobian columns and appends the coefficient vectors of
    T-linear basis elements of the Rees ideal that are not already in the
    tangent ideal.
    """
    R, report = rees_algebra(A, method)
    big = R.ring
    ring = A.ring
    tidx = [big.index[t] for t in R.t_vars]
    jac = jacobian(A.ideal)
    cols = [jac.column(j) for j in range(jac.ncols)]
    G = report.J.gb()
    for h in report.J_sat.basis():
        if _t_degree(h, tidx) != {1}:
            continue
        if not normal_form(h, G).terms:
            continue
        col = []
        for t in R.t_vars:
            coeff = {}
            tk = big.var_key(t)
            for k, c in h.terms.items():
                e = big.decode(k)
                if e[big.index[t]] == 1:
                    coeff[k - tk] = c
            col.append(Polynomial(big, coeff).to_ring(ring))
        cols.append(col)
    mat = PolyMatrix.from_columns(ring, cols, ring.nvars) if cols else PolyMatrix.zeros(ring, ring.nvars, 0)
    return PresentedModule(A, mat, A.dim(), tuple(ring.weights))
