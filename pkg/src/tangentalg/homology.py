"""Graded free resolutions and the invariants read off from them.

Resolutions are built over the ambient polynomial ring by iterated
syzygies; after each step, unit entries of the new differential are
eliminated (together with the matching basis vectors of the two free
modules involved), which leaves a minimal resolution for graded input.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .diffalg import PresentedAlgebra, PresentedModule
from .groebner import module_buchberger, syzygies
from .idealops import (
    Ideal,
    NotHomogeneous,
    hilbert_numerator,
    hilbert_series,
    ideal_quotient,
    is_nonzerodivisor,
    krull_dim,
    membership,
)
from .polycore import PolyMatrix, PolyRing, Polynomial

__all__ = [
    "BettiTable",
    "FreeResolution",
    "cy_type_check",
    "depth_probe",
    "free_resolution",
    "is_cohen_macaulay",
    "is_gorenstein",
    "koszul_h1",
    "mixed_witness",
    "module_dim",
    "module_hilbert_numerator",
    "module_is_zero",
    "projdim_depth",
]


@dataclass
class BettiTable:
    """beta[(i, j)]: number of degree-j generators of the i-th free module."""

    beta: dict[tuple[int, int], int]

    def total(self, i: int) -> int:
        return sum(v for (a, _), v in self.beta.items() if a == i)

    def ranks(self) -> list[int]:
        if not self.beta:
            return []
        top = max(i for i, _ in self.beta)
        return [self.total(i) for i in range(top + 1)]

    def alternating_sum(self) -> dict[int, int]:
        """sum_i (-1)^i sum_j beta_{i,j} t^j as a {degree: coefficient} map."""
        out: dict[int, int] = {}
        for (i, j), v in self.beta.items():
            out[j] = out.get(j, 0) + (-v if i % 2 else v)
        return {k: c for k, c in out.items() if c}

    def as_rows(self) -> list[list[int]]:
        """Macaulay-style layout: row r holds beta_{i, i+r}."""
        if not self.beta:
            return []
        top = max(i for i, _ in self.beta)
        regs = sorted({j - i for i, j in self.beta})
        return [[self.beta.get((i, i + r), 0) for i in range(top + 1)] for r in range(regs[0], regs[-1] + 1)]

    def __str__(self):
        if not self.beta:
            return "(zero)"
        top = max(i for i, _ in self.beta)
        lo = min(j - i for i, j in self.beta)
        lines = ["      " + " ".join(f"{i:>4}" for i in range(top + 1))]
        for k, row in enumerate(self.as_rows()):
            cells = " ".join(f"{v:>4}" if v else "   -" for v in row)
            lines.append(f"{lo + k:>4}: {cells}")
        lines.append("total " + " ".join(f"{self.total(i):>4}" for i in range(top + 1)))
        return "\n".join(lines)


@dataclass
class FreeResolution:
    """F_0 <- F_1 <- ... ; ``degrees[i]`` lists the twists of F_i and
    ``maps[i]`` is the differential F_{i+1} -> F_i."""

    ring: PolyRing
    degrees: list[list[int]]
    maps: list[PolyMatrix]
    minimal: bool = True

    @property
    def length(self) -> int:
        return len(self.maps)

    def ranks(self) -> list[int]:
        return [len(d) for d in self.degrees]

    def betti(self) -> BettiTable:
        beta: dict[tuple[int, int], int] = {}
        for i, degs in enumerate(self.degrees):
            for d in degs:
                beta[(i, d)] = beta.get((i, d), 0) + 1
        return BettiTable(beta)

    def compositions_vanish(self) -> bool:
        return all((self.maps[i] * self.maps[i + 1]).is_zero() for i in range(len(self.maps) - 1))

    def entries_in_maximal_ideal(self) -> bool:
        return all(not any(k == 0 for k in e.terms) for M in self.maps for row in M.rows for e in row)


# -- module presentations over the ambient ring ---------------------------------

def _presentation(X) -> tuple[PolyRing, PolyMatrix, list[int]]:
    """(ring, matrix, generator degrees) presenting X as a module over the ambient ring."""
    if isinstance(X, Ideal):
        X = PresentedAlgebra(X.ring, X)
    if isinstance(X, PresentedAlgebra):
        ring = X.ring
        gens = X.ideal.gens
        mat = PolyMatrix(ring, [list(gens)]) if gens else PolyMatrix.zeros(ring, 1, 0)
        return ring, mat, [0]
    if isinstance(X, PresentedModule):
        ring = X.ring
        n = X.ngens
        cols = [X.matrix.column(j) for j in range(X.nrels)]
        zero = ring.zero()
        for f in X.base.ideal.gens:
            for i in range(n):
                cols.append([f if r == i else zero for r in range(n)])
        cols = [c for c in cols if any(e.terms for e in c)]
        mat = PolyMatrix.from_columns(ring, cols, n) if cols else PolyMatrix.zeros(ring, n, 0)
        return ring, mat, list(X.gen_degrees)
    raise TypeError(f"cannot resolve {type(X).__name__}")


def _column_degree(col: Sequence[Polynomial], row_degrees: Sequence[int]) -> int:
    for f, d in zip(col, row_degrees):
        if f.terms:
            return f.degree() + d
    return 0


def _check_graded(M: PolyMatrix, row_degrees: Sequence[int]):
    for j in range(M.ncols):
        col = M.column(j)
        degs = set()
        for f, d in zip(col, row_degrees):
            for k in f.terms:
                degs.add(M.ring.key_degree(k) + d)
        if len(degs) > 1:
            raise NotHomogeneous("presentation is not homogeneous for the ring grading")


def _find_unit(M: PolyMatrix):
    for j in range(M.ncols):
        for i in range(M.nrows):
            e = M.rows[i][j]
            if len(e.terms) == 1 and 0 in e.terms:
                return i, j
    return None


def _eliminate_unit(M: PolyMatrix, r: int, c: int) -> PolyMatrix:
    """Drop row r and column c: M' = M[-r,-c] - M[-r,c] * M[r,-c] / M[r,c]."""
    ring = M.ring
    u = M.rows[r][c].terms[0]
    inv = ring.field.inv(u)
    pivot_row = M.rows[r]
    rows = []
    for i, row in enumerate(M.rows):
        if i == r:
            continue
        a = row[c]
        new = []
        for j, e in enumerate(row):
            if j == c:
                continue
            if a.terms and pivot_row[j].terms:
                e = e - (a * pivot_row[j]).scale(inv)
            new.append(e)
        rows.append(new)
    return PolyMatrix(ring, rows, M.ncols - 1)


def _drop_row(M: PolyMatrix, r: int) -> PolyMatrix:
    return PolyMatrix(M.ring, [row for i, row in enumerate(M.rows) if i != r], M.ncols)


def _drop_col(M: PolyMatrix, c: int) -> PolyMatrix:
    return PolyMatrix(M.ring, [[e for j, e in enumerate(row) if j != c] for row in M.rows], M.ncols - 1)


def _minimalize(maps: list[PolyMatrix], degrees: list[list[int]], i: int):
    """Remove unit entries from maps[i] (F_{i+1} -> F_i), in place."""
    while True:
        hit = _find_unit(maps[i])
        if hit is None:
            return
        r, c = hit
        maps[i] = _eliminate_unit(maps[i], r, c)
        if i > 0:
            maps[i - 1] = _drop_col(maps[i - 1], r)
        if i + 1 < len(maps):
            maps[i + 1] = _drop_row(maps[i + 1], c)
        del degrees[i][r]
        del degrees[i + 1][c]


def _strip_zero_columns(M: PolyMatrix, degs: list[int]) -> tuple[PolyMatrix, list[int]]:
    keep = [j for j in range(M.ncols) if any(M.rows[i][j].terms for i in range(M.nrows))]
    if len(keep) == M.ncols:
        return M, degs
    return PolyMatrix(M.ring, [[row[j] for j in keep] for row in M.rows], len(keep)), [degs[j] for j in keep]


def free_resolution(X, max_length: int | None = None) -> FreeResolution:
    """Minimal graded free resolution over the ambient polynomial ring.

    X is an Ideal or PresentedAlgebra (resolving R/I) or a PresentedModule.
    """
    ring, d1, degs0 = _presentation(X)
    _check_graded(d1, degs0)
    limit = ring.nvars + 1 if max_length is None else max_length
    degs1 = [_column_degree(d1.column(j), degs0) for j in range(d1.ncols)]
    d1, degs1 = _strip_zero_columns(d1, degs1)
    maps = [d1]
    degrees = [list(degs0), degs1]
    _minimalize(maps, degrees, 0)
    while len(maps) <= limit:
        last = maps[-1]
        if last.ncols == 0:
            break
        S = syzygies(last, row_degrees=degrees[-2], column_degrees=degrees[-1])
        if S.ncols == 0:
            break
        sdegs = [_column_degree(S.column(j), degrees[-1]) for j in range(S.ncols)]
        maps.append(S)
        degrees.append(sdegs)
        _minimalize(maps, degrees, len(maps) - 1)
        if maps[-1].ncols == 0:
            maps.pop()
            degrees.pop()
            break
    while maps and maps[-1].ncols == 0:
        maps.pop()
        degrees.pop()
    # drop trailing zero free modules
    return FreeResolution(ring, degrees, maps)


# -- dimension, depth --------------------------------------------------------------

def _relation_basis(X):
    ring, mat, degs = _presentation(X)
    n = mat.nrows
    if mat.ncols == 0:
        return ring, None, n, degs
    G = module_buchberger(mat, row_degrees=degs)
    return ring, G, n, degs


def module_dim(X) -> int:
    """Krull dimension of the module (or of R/I): max over components of dim R/in_c."""
    from .idealops import _min_hitting_set, _minimal_supports

    ring, G, n, _ = _relation_basis(X)
    if n == 0:
        return -1
    if G is None:
        return ring.nvars
    by_comp = G.lead_terms_by_component()
    best = -1
    for c in range(n):
        leads = by_comp.get(c)
        if not leads:
            return ring.nvars
        if any(sum(e) == 0 for e in leads):
            continue
        best = max(best, ring.nvars - _min_hitting_set(_minimal_supports(leads), ring.nvars + 1))
    return best


def module_is_zero(X) -> bool:
    return module_dim(X) < 0


def module_hilbert_numerator(X) -> dict[int, int]:
    """K-polynomial of the module: HS = K(t) / prod(1 - t^{w_i})."""
    ring, G, n, degs = _relation_basis(X)
    by_comp = G.lead_terms_by_component() if G is not None else {}
    out: dict[int, int] = {}
    for c in range(n):
        leads = by_comp.get(c, [])
        k = hilbert_numerator(leads, ring.weights) if leads else {0: 1}
        for d, v in k.items():
            out[d + degs[c]] = out.get(d + degs[c], 0) + v
    return {d: v for d, v in out.items() if v}


def projdim_depth(X) -> tuple[int, int]:
    """(projective dimension, depth) over the ambient ring, by Auslander-Buchsbaum."""
    res = X if isinstance(X, FreeResolution) else free_resolution(X)
    pd = res.length
    return pd, res.ring.nvars - pd


def mixed_witness(I: Ideal, candidates: Sequence[Polynomial]) -> Polynomial | None:
    """An h not in I whose annihilator in R/I has smaller dimension than R/I.

    Such an h shows R/I has an associated prime of lower dimension, so R/I
    is not unmixed and in particular not Cohen-Macaulay.
    """
    d = krull_dim(I)
    for h in candidates:
        h = h.to_ring(I.ring) if h.ring != I.ring else h
        if membership(h, I):
            continue
        if krull_dim(ideal_quotient(I, h)) < d:
            return h
    return None


def is_cohen_macaulay(X, hints: Sequence[Polynomial] = ()) -> bool:
    """depth equals Krull dimension (the zero module is not Cohen-Macaulay).

    For an algebra, ``hints`` are elements tried first as certificates of
    mixedness (see ``mixed_witness``); one that succeeds settles the answer
    without a resolution.
    """
    d = module_dim(X)
    if d < 0:
        return False
    if hints and not isinstance(X, PresentedModule):
        I = X if isinstance(X, Ideal) else X.ideal
        if mixed_witness(I, hints) is not None:
            return False
    _, depth = projdim_depth(X)
    return depth == d


def is_gorenstein(A) -> bool:
    """Cohen-Macaulay with last Betti number 1 (for a cyclic module R/I)."""
    if isinstance(A, Ideal):
        A = PresentedAlgebra(A.ring, A)
    res = free_resolution(A)
    d = module_dim(A)
    if d < 0 or res.ring.nvars - res.length != d:
        return False
    return res.ranks()[-1] == 1


def cy_type_check(A) -> bool:
    """Gorenstein with a-invariant 0 (standard grading)."""
    if isinstance(A, Ideal):
        A = PresentedAlgebra(A.ring, A)
    if not is_gorenstein(A):
        return False
    return hilbert_series(A.ideal).a_invariant == 0


def depth_probe(A, seed: int = 0, attempts: int = 3) -> int:
    """Length of a regular sequence of random linear forms on R/I.

    Probabilistic over a finite field (a failure may be an unlucky choice,
    hence a few attempts per step); the resolution-based depth is the
    authoritative value.
    """
    I = A if isinstance(A, Ideal) else A.ideal
    ring = I.ring
    if any(w != 1 for w in ring.weights):
        raise NotHomogeneous("depth_probe needs the standard grading")
    rng = random.Random(seed)
    field = ring.field
    current = I
    depth = 0
    if current.is_unit():
        return 0
    while True:
        found = None
        for _ in range(attempts):
            form = ring.zero()
            for v in ring.variables:
                form = form + ring.gen(v).scale(field.random(rng) or 1)
            if is_nonzerodivisor(form, current):
                found = form
                break
        if found is None:
            return depth
        current = current + [found]
        depth += 1
        if current.is_unit():
            return depth


# -- Koszul homology ---------------------------------------------------------------

def koszul_h1(I) -> PresentedModule:
    """First Koszul homology of the stored generators, presented over A = R/I.

    Generators are the columns of a syzygy matrix Z of (f_1..f_m); the
    relations are the coefficient vectors a with Z a in the span of the
    Koszul relations f_i e_j - f_j e_i.
    """
    if isinstance(I, PresentedAlgebra):
        A, I = I, I.ideal
    else:
        A = PresentedAlgebra(I.ring, I)
    ring = I.ring
    gens = I.gens
    m = len(gens)
    zero = ring.zero()
    if m == 0:
        return PresentedModule(A, PolyMatrix.zeros(ring, 0, 0), 0)
    row = PolyMatrix(ring, [list(gens)])
    degs = [g.degree() for g in gens]
    Z = syzygies(row, row_degrees=[0], column_degrees=degs)
    s = Z.ncols
    if s == 0:
        return PresentedModule(A, PolyMatrix.zeros(ring, 0, 0), 0)
    kos = []
    for i in range(m):
        for j in range(i + 1, m):
            col = [zero] * m
            col[i] = gens[j]
            col[j] = -gens[i]
            kos.append(col)
    zcols = [Z.column(j) for j in range(s)]
    zdegs = [_column_degree(c, degs) for c in zcols]
    kdegs = [_column_degree(c, degs) for c in kos]
    big = PolyMatrix.from_columns(ring, zcols + kos, m)
    S = syzygies(big, row_degrees=degs, column_degrees=zdegs + kdegs)
    rel_cols = []
    for j in range(S.ncols):
        col = [S[i, j] for i in range(s)]
        if any(c.terms for c in col):
            rel_cols.append(col)
    pres = PolyMatrix.from_columns(ring, rel_cols, s) if rel_cols else PolyMatrix.zeros(ring, s, 0)
    rank = max(m - (ring.nvars - krull_dim(I)), 0)
    return PresentedModule(A, pres, rank, tuple(zdegs))
