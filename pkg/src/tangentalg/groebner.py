"""Buchberger's algorithm for ideals and submodules of free modules.

Internally a polynomial (or module element) is a plain ``dict`` from term
keys to coefficients.  For module elements the component index sits in the
bits above the monomial key, so comparing keys is the position-over-term
extension of the ring order (larger component index wins).

Pair handling follows Gebauer-Moeller with sugar selection; the coprime
criterion is used only for ideals, where it is valid.
"""

from __future__ import annotations

import contextlib
import contextvars
import hashlib
import heapq
import threading
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .polycore import DegreeCapExceeded, PolyMatrix, PolyRing, Polynomial, RingMismatch

__all__ = [
    "ComputationTimeout",
    "GroebnerBasis",
    "GBStats",
    "budget",
    "buchberger",
    "module_buchberger",
    "module_normal_form",
    "normal_form",
    "set_store",
    "syzygies",
    "work_counter",
]


class ComputationTimeout(RuntimeError):
    """Raised when a cooperative time or work budget runs out."""


@dataclass
class _Budget:
    deadline: float | None = None
    work_limit: int | None = None
    used: int = 0

    def charge(self, amount: int = 1):
        self.used += amount
        if self.work_limit is not None and self.used > self.work_limit:
            raise ComputationTimeout(f"work budget of {self.work_limit} S-pair steps exhausted")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ComputationTimeout("time budget exhausted")


_BUDGET: contextvars.ContextVar[_Budget | None] = contextvars.ContextVar("tangentalg_budget", default=None)


@contextlib.contextmanager
def budget(seconds: float | None = None, work: int | None = None):
    """Limit the enclosed computations by wall time and/or work.

    Work is counted in processed S-pairs and input generators, so a work
    budget gives reproducible cut-offs.  Inside an outer budget the tighter
    of the two limits applies, and work done here is charged to the outer
    budget as well.
    """
    outer = _BUDGET.get()
    deadline = time.monotonic() + seconds if seconds is not None else None
    limit = work
    if outer is not None:
        if outer.deadline is not None:
            deadline = outer.deadline if deadline is None else min(deadline, outer.deadline)
        if outer.work_limit is not None:
            room = outer.work_limit - outer.used
            limit = room if limit is None else min(limit, room)
    b = _Budget(deadline, limit)
    token = _BUDGET.set(b)
    try:
        yield b
    finally:
        _BUDGET.reset(token)
        if outer is not None:
            outer.used += b.used


def _charge(amount: int = 1):
    b = _BUDGET.get()
    if b is not None:
        b.charge(amount)


@dataclass
class GBStats:
    inputs: int = 0
    pairs: int = 0
    reductions: int = 0
    zero_reductions: int = 0
    criteria_skipped: int = 0

    def as_dict(self) -> dict:
        return {"inputs": self.inputs, "pairs": self.pairs, "reductions": self.reductions,
                "zero_reductions": self.zero_reductions, "criteria_skipped": self.criteria_skipped}


class _Ctx:
    """Term-key helpers for one ring and (optionally) a free module."""

    def __init__(self, ring: PolyRing, shifts: Sequence[int] | None = None, module: bool = False):
        self.ring = ring
        self.p = ring.field.characteristic
        self.cb = ring.key_bits
        self.cmask = (1 << self.cb) - 1
        self.module = module
        self.shifts = tuple(shifts) if shifts else (0,)
        self.revlex = ring._revlex
        self.bad = ring._bad
        self.cap = ring.max_degree

    def divides(self, a: int, b: int) -> bool:
        if self.module and (a >> self.cb) != (b >> self.cb):
            return False
        if self.revlex:
            return not ((a - b) & self.bad)
        return not ((b - a) & self.bad)

    def lcm(self, a: int, b: int) -> int:
        ring = self.ring
        cm = self.cmask
        ea, eb = ring.decode(a & cm), ring.decode(b & cm)
        exps = tuple(map(max, ea, eb))
        d = sum(exps)
        if d > self.cap:
            raise DegreeCapExceeded(d, self.cap)
        return ((a >> self.cb) << self.cb) + ring.encode(exps)

    def deg(self, key: int) -> int:
        return self.ring.key_degree(key & self.cmask) + self.shifts[key >> self.cb]

    def tdeg(self, key: int) -> int:
        return self.ring.key_total_degree(key & self.cmask)

    def inv(self, c):
        return pow(c, -1, self.p) if self.p else Fraction(1) / c


class _Basis:
    """Growing list of monic polynomials with lookup of reducers by lead term."""

    def __init__(self, ctx: _Ctx):
        self.ctx = ctx
        self.polys: list[dict] = []
        self.tails: list[list[tuple[int, object]]] = []
        self.leads: list[int] = []
        self.sugar: list[int] = []
        self.maxdeg: list[int] = []
        self.cofactors: list[dict | None] = []
        self.reducers: dict[int, list[int]] = {}

    def add(self, f: dict, sugar: int, cof: dict | None = None) -> int:
        ctx = self.ctx
        lead = max(f)
        lc = f[lead]
        if lc != 1:
            inv = ctx.inv(lc)
            p = ctx.p
            if p:
                f = {k: c * inv % p for k, c in f.items()}
            else:
                f = {k: _norm(c * inv) for k, c in f.items()}
            if cof is not None:
                cof = {i: _scale(v, inv, p) for i, v in cof.items()}
        idx = len(self.polys)
        self.polys.append(f)
        self.tails.append(sorted(((k, c) for k, c in f.items() if k != lead), reverse=True))
        self.leads.append(lead)
        self.sugar.append(sugar)
        self.maxdeg.append(max(ctx.tdeg(k) for k in f))
        self.cofactors.append(cof)
        self.reducers.setdefault(lead >> ctx.cb, []).append(idx)
        return idx

    def retire(self, idx: int):
        comp = self.leads[idx] >> self.ctx.cb
        self.reducers[comp].remove(idx)

    def find_reducer(self, key: int) -> int:
        cands = self.reducers.get(key >> self.ctx.cb)
        if not cands:
            return -1
        leads = self.leads
        bad = self.ctx.bad
        if self.ctx.revlex:
            for i in cands:
                if not ((leads[i] - key) & bad):
                    return i
        else:
            for i in cands:
                if not ((key - leads[i]) & bad):
                    return i
        return -1


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _scale(poly: dict, c, p) -> dict:
    if p:
        return {k: v * c % p for k, v in poly.items()}
    return {k: _norm(v * c) for k, v in poly.items()}


def _axpy(acc: dict, poly: dict, shift: int, c, p):
    """acc -= c * x^shift * poly (in place)."""
    get = acc.get
    if p:
        for k, v in poly.items():
            nk = k + shift
            w = (get(nk, 0) - c * v) % p
            if w:
                acc[nk] = w
            else:
                acc.pop(nk, None)
    else:
        for k, v in poly.items():
            nk = k + shift
            w = get(nk, 0) - c * v
            if w:
                acc[nk] = _norm(w)
            else:
                acc.pop(nk, None)


def _reduce(f: dict, basis: _Basis, full: bool = True, track: bool = False, stats: GBStats | None = None,
            skip: int = -1):
    """Reduce f (consumed) by the basis.

    Returns (remainder, quotients) where quotients maps basis index to a dict
    {shift: coefficient} when ``track`` is set.  ``skip`` excludes one basis
    index from the reducers (used during interreduction).
    """
    ctx = basis.ctx
    p = ctx.p
    cap = ctx.cap
    leads, tails, maxdeg = basis.leads, basis.tails, basis.maxdeg
    heap = [-k for k in f]
    heapq.heapify(heap)
    rem: dict = {}
    quots: dict = {} if track else None
    pop = heapq.heappop
    push = heapq.heappush
    steps = 0
    while heap:
        k = -pop(heap)
        c = f.pop(k, None)
        if c is None:
            continue
        i = basis.find_reducer(k)
        if i == skip and i >= 0:
            i = _find_other(basis, k, skip)
        if i < 0:
            if not full:
                f[k] = c
                rem.update(f)
                return rem, quots
            rem[k] = c
            continue
        steps += 1
        shift = k - leads[i]
        if maxdeg[i] + ctx.tdeg(shift) > cap:
            raise DegreeCapExceeded(maxdeg[i] + ctx.tdeg(shift), cap)
        if track:
            q = quots.setdefault(i, {})
            q[shift] = q.get(shift, 0) + c
        get = f.get
        if p:
            for kk, cc in tails[i]:
                nk = kk + shift
                v = get(nk)
                if v is None:
                    f[nk] = (-c * cc) % p
                    push(heap, -nk)
                else:
                    v = (v - c * cc) % p
                    if v:
                        f[nk] = v
                    else:
                        del f[nk]
        else:
            for kk, cc in tails[i]:
                nk = kk + shift
                v = get(nk)
                if v is None:
                    f[nk] = _norm(-c * cc)
                    push(heap, -nk)
                else:
                    v = v - c * cc
                    if v:
                        f[nk] = _norm(v)
                    else:
                        del f[nk]
    if stats is not None:
        stats.reductions += steps
    return rem, quots


def _find_other(basis: _Basis, key: int, skip: int) -> int:
    cands = basis.reducers.get(key >> basis.ctx.cb, ())
    for i in cands:
        if i != skip and basis.ctx.divides(basis.leads[i], key):
            return i
    return -1


def _apply_quotients(cof: dict, quots: dict, basis: _Basis, p) -> dict:
    """cof - sum_i quots[i] * cofactor(basis_i); cofactors are {gen index: poly dict}."""
    out = {i: dict(v) for i, v in cof.items()}
    for bi, q in quots.items():
        bcof = basis.cofactors[bi]
        for shift, c in q.items():
            for gi, poly in bcof.items():
                acc = out.setdefault(gi, {})
                _axpy(acc, poly, shift, c, p)
    return {i: v for i, v in out.items() if v}


def _spoly(basis: _Basis, i: int, j: int, lcm: int) -> dict:
    ctx = basis.ctx
    p = ctx.p
    si, sj = lcm - basis.leads[i], lcm - basis.leads[j]
    f: dict = {}
    for k, c in basis.tails[i]:
        f[k + si] = c
    _axpy(f, dict(basis.tails[j]), sj, 1, p)
    return f


def _spoly_cof(basis: _Basis, i: int, j: int, lcm: int) -> dict:
    p = basis.ctx.p
    si, sj = lcm - basis.leads[i], lcm - basis.leads[j]
    out: dict = {}
    for gi, poly in basis.cofactors[i].items():
        out[gi] = {k + si: c for k, c in poly.items()}
    for gi, poly in basis.cofactors[j].items():
        acc = out.setdefault(gi, {})
        _axpy(acc, poly, sj, 1, p)
    return {i: v for i, v in out.items() if v}


def _run(gens: list[dict], ctx: _Ctx, *, truncate: int | None = None, track: bool = False,
         stats: GBStats | None = None, reduce_tails: bool = True):
    """Core Buchberger loop.  Returns (polys, cofactors) of the reduced basis."""
    stats = stats if stats is not None else GBStats()
    basis = _Basis(ctx)
    active: list[int] = []
    pairs: list[tuple] = []  # (sugar, lcm, i, j); i == -1 marks input generator j
    inputs = []
    for gi, g in enumerate(gens):
        if not g:
            continue
        sug = max(ctx.deg(k) for k in g)
        inputs.append(g)
        cof = {gi: {0: 1}} if track else None
        heapq.heappush(pairs, (sug, max(g), -1, len(inputs) - 1, cof))
    p = ctx.p
    use_coprime = not ctx.module
    while pairs:
        sug, lcm, i, j, cof = heapq.heappop(pairs)
        if truncate is not None and sug > truncate:
            continue
        _charge()
        if i == -1:
            stats.inputs += 1
            f = dict(inputs[j])
        else:
            stats.pairs += 1
            f = _spoly(basis, i, j, lcm)
            if track:
                cof = _spoly_cof(basis, i, j, lcm)
        h, quots = _reduce(f, basis, full=True, track=track, stats=stats)
        if not h:
            stats.zero_reductions += 1
            continue
        if track:
            cof = _apply_quotients(cof, quots, basis, p)
        lh = max(h)
        if i >= 0:
            sug = max(sug, max(ctx.deg(k) for k in h))
        hi = basis.add(h, sug, cof)
        lh = basis.leads[hi]
        # Gebauer-Moeller update
        cands = []
        for a in active:
            la = basis.leads[a]
            if ctx.module and (la >> ctx.cb) != (lh >> ctx.cb):
                continue
            L = ctx.lcm(la, lh)
            coprime = use_coprime and L == la + lh
            cands.append((a, L, coprime))
        kept = []
        for idx, (a, L, coprime) in enumerate(cands):
            if coprime:
                kept.append((a, L, True))
                continue
            dominated = any(ctx.divides(L2, L) and (L2 != L or idx2 > idx)
                            for idx2, (_, L2, _) in enumerate(cands) if idx2 != idx and idx2 > idx)
            if not dominated:
                dominated = any(ctx.divides(L2, L) for (_, L2, _) in kept)
            if not dominated:
                kept.append((a, L, False))
            else:
                stats.criteria_skipped += 1
        new_pairs = []
        for s, L, a, b, c in pairs:
            if a >= 0 and ctx.divides(lh, L):
                la, lb = basis.leads[a], basis.leads[b]
                if ctx.lcm(la, lh) != L and ctx.lcm(lb, lh) != L:
                    stats.criteria_skipped += 1
                    continue
            new_pairs.append((s, L, a, b, c))
        for a, L, coprime in kept:
            if coprime:
                stats.criteria_skipped += 1
                continue
            la = basis.leads[a]
            s = max(basis.sugar[a] + ctx.deg(L) - ctx.deg(la), basis.sugar[hi] + ctx.deg(L) - ctx.deg(lh))
            new_pairs.append((s, L, a, hi, None))
        heapq.heapify(new_pairs)
        pairs = new_pairs
        still = []
        for a in active:
            if ctx.divides(lh, basis.leads[a]):
                basis.retire(a)
            else:
                still.append(a)
        still.append(hi)
        active = still
    # interreduce: retired elements are already out of the reducer lists
    active.sort(key=lambda a: basis.leads[a])
    out_polys, out_cofs = [], []
    for a in active:
        f = basis.polys[a]
        lead = basis.leads[a]
        if reduce_tails:
            tail = {k: c for k, c in f.items() if k != lead}
            t, quots = _reduce(tail, basis, full=True, track=track, stats=None, skip=a)
            t[lead] = 1
            if track:
                cof = _apply_quotients(basis.cofactors[a], quots, basis, p)
            f = t
        else:
            cof = basis.cofactors[a]
        out_polys.append(f)
        out_cofs.append(cof if track else None)
    return out_polys, out_cofs, stats


# -- public API ------------------------------------------------------------

class GroebnerBasis:
    """Reduced Groebner basis of an ideal, or of a submodule of R^rank.

    For modules, ``elements`` are lists of polynomials (column vectors);
    for ideals they are polynomials.  ``cofactors[i][j]`` (when tracked)
    is the multiplier of input generator j in element i.
    """

    def __init__(self, ring: PolyRing, raw: list[dict], ctx: _Ctx, stats: GBStats,
                 rank: int | None = None, cofactors=None, generators=None, truncated: int | None = None):
        self.ring = ring
        self.raw = raw
        self.ctx = ctx
        self.stats = stats
        self.rank = rank
        self.truncated = truncated
        self.generators = generators
        self._cofactors_raw = cofactors
        self._basis = None

    @property
    def is_module(self) -> bool:
        return self.rank is not None

    @property
    def order(self):
        return self.ring.order

    def __len__(self):
        return len(self.raw)

    @property
    def elements(self):
        if self.is_module:
            return [_vector_from_raw(self.ring, d, self.rank, self.ctx) for d in self.raw]
        return [Polynomial(self.ring, dict(d)) for d in self.raw]

    @property
    def polys(self) -> list[Polynomial]:
        if self.is_module:
            raise TypeError("module basis: use .elements")
        return self.elements

    @property
    def cofactors(self):
        if self._cofactors_raw is None:
            return None
        n = len(self.generators)
        out = []
        for cof in self._cofactors_raw:
            row = [Polynomial(self.ring, {}) for _ in range(n)]
            for gi, poly in cof.items():
                row[gi] = Polynomial(self.ring, dict(poly))
            out.append(row)
        return out

    def lead_keys(self) -> list[int]:
        return [max(d) for d in self.raw]

    def lead_exponents(self) -> list[tuple[int, ...]]:
        cm = self.ctx.cmask
        return [self.ring.decode(max(d) & cm) for d in self.raw]

    def lead_terms_by_component(self) -> dict[int, list[tuple[int, ...]]]:
        out: dict[int, list] = {}
        for d in self.raw:
            k = max(d)
            comp = self.rank - 1 - (k >> self.ctx.cb) if self.is_module else 0
            out.setdefault(comp, []).append(self.ring.decode(k & self.ctx.cmask))
        return out

    def _basis_obj(self) -> _Basis:
        if self._basis is None:
            b = _Basis(self.ctx)
            for d in self.raw:
                b.add(d, 0)
            self._basis = b
        return self._basis

    def reduce_raw(self, f: dict) -> dict:
        rem, _ = _reduce(dict(f), self._basis_obj(), full=True)
        return rem

    def reduce_raw_with_quotients(self, f: dict):
        return _reduce(dict(f), self._basis_obj(), full=True, track=True)

    def contains_unit(self) -> bool:
        return any(len(d) == 1 and (max(d) & self.ctx.cmask) == 0 for d in self.raw) and not self.is_module

    def __eq__(self, other):
        return isinstance(other, GroebnerBasis) and self.ring == other.ring and self.rank == other.rank \
            and sorted(map(_freeze, self.raw)) == sorted(map(_freeze, other.raw))

    def __repr__(self):
        kind = f"module rank {self.rank}" if self.is_module else "ideal"
        return f"GroebnerBasis({kind}, {len(self.raw)} elements, order={self.ring.order})"


def _freeze(d: dict):
    return tuple(sorted(d.items()))


def content_hash(ring: PolyRing, raws: Iterable[dict], extra=()) -> str:
    h = hashlib.sha256()
    h.update(repr(ring.signature()).encode())
    h.update(repr(extra).encode())
    for d in raws:
        h.update(repr(_freeze(d)).encode())
        h.update(b"|")
    return h.hexdigest()


_CACHE: dict[str, tuple] = {}
_CACHE_LOCK = threading.Lock()
_CACHE_LIMIT = 512
cache_enabled = True
_STORE = None
_WORK: contextvars.ContextVar[GBStats | None] = contextvars.ContextVar("tangentalg_work", default=None)


def clear_cache():
    with _CACHE_LOCK:
        _CACHE.clear()


def set_store(store):
    """Install a persistent basis store (``load(key)``/``save(key, polys, stats)``), or None."""
    global _STORE
    _STORE = store


@contextlib.contextmanager
def work_counter():
    """Accumulate the statistics of every basis computed inside the block."""
    acc = GBStats()
    token = _WORK.set(acc)
    try:
        yield acc
    finally:
        _WORK.reset(token)


def _record(stats: GBStats):
    acc = _WORK.get()
    if acc is not None:
        acc.inputs += stats.inputs
        acc.pairs += stats.pairs
        acc.reductions += stats.reductions
        acc.zero_reductions += stats.zero_reductions
        acc.criteria_skipped += stats.criteria_skipped


def _cached_run(ring: PolyRing, raws: list[dict], ctx: _Ctx, tag: tuple, truncate, use_cache: bool):
    key = content_hash(ring, raws, tag) if use_cache and cache_enabled else None
    if key is not None:
        with _CACHE_LOCK:
            hit = _CACHE.get(key)
        if hit is None and _STORE is not None:
            hit = _STORE.load(key)
            if hit is not None:
                with _CACHE_LOCK:
                    _CACHE[key] = hit
        if hit is not None:
            polys, stats = hit
            stats = GBStats(**stats.as_dict())
            # replay the recorded work so reports and work budgets do not
            # depend on cache state
            _charge(stats.pairs + stats.inputs)
            _record(stats)
            return polys, stats
    polys, _, stats = _run([dict(r) for r in raws], ctx, truncate=truncate)
    _record(stats)
    if key is not None:
        with _CACHE_LOCK:
            if len(_CACHE) >= _CACHE_LIMIT:
                _CACHE.pop(next(iter(_CACHE)))
            _CACHE[key] = (polys, stats)
        if _STORE is not None:
            _STORE.save(key, polys, stats)
    return polys, stats


def buchberger(gens: Sequence[Polynomial], ring: PolyRing | None = None, *, truncate: int | None = None,
               track: bool = False, use_cache: bool = True) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    ``truncate`` (homogeneous input only) stops at pairs of degree above the
    bound; the result is then a basis in degrees <= truncate.  With
    ``track`` set, ``cofactors`` expresses each basis element in the
    generators.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("empty generator list needs an explicit ring")
        ring = gens[0].ring
    raws = []
    for g in gens:
        if g.ring != ring:
            raise RingMismatch(f"generator in {g.ring!r}, expected {ring!r}")
        raws.append(g.terms)
    ctx = _Ctx(ring)
    if track:
        polys, cofs, stats = _run([dict(r) for r in raws], ctx, truncate=truncate, track=True)
        _record(stats)
        return GroebnerBasis(ring, polys, ctx, stats, cofactors=cofs, generators=gens, truncated=truncate)
    polys, stats = _cached_run(ring, raws, ctx, ("ideal", truncate), truncate, use_cache)
    return GroebnerBasis(ring, polys, ctx, stats, generators=gens, truncated=truncate)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Fully reduced remainder of f modulo the basis G."""
    if G.is_module:
        raise TypeError("use module_normal_form for module bases")
    if f.ring != G.ring:
        raise RingMismatch(f"{f.ring!r} vs basis ring {G.ring!r}")
    return Polynomial(G.ring, G.reduce_raw(f.terms))


# -- modules ---------------------------------------------------------------

def _vector_to_raw(ring: PolyRing, vec: Sequence[Polynomial], ctx: _Ctx) -> dict:
    rank = len(vec)
    out = {}
    cb = ctx.cb
    for pos, f in enumerate(vec):
        if f.ring != ring:
            raise RingMismatch("vector entries must share the ring")
        comp = (rank - 1 - pos) << cb
        for k, c in f.terms.items():
            out[comp + k] = c
    return out


def _vector_from_raw(ring: PolyRing, raw: dict, rank: int, ctx: _Ctx) -> list[Polynomial]:
    parts: list[dict] = [{} for _ in range(rank)]
    cb, cm = ctx.cb, ctx.cmask
    for k, c in raw.items():
        parts[rank - 1 - (k >> cb)][k & cm] = c
    return [Polynomial(ring, d) for d in parts]


def module_context(ring: PolyRing, row_degrees: Sequence[int] | None, rank: int) -> _Ctx:
    row_degrees = list(row_degrees) if row_degrees is not None else [0] * rank
    # component value c corresponds to position rank-1-c
    shifts = [row_degrees[rank - 1 - c] for c in range(rank)]
    return _Ctx(ring, shifts, module=True)


def module_buchberger(M: PolyMatrix | Sequence[Sequence[Polynomial]], ring: PolyRing | None = None,
                      row_degrees: Sequence[int] | None = None, rank: int | None = None,
                      truncate: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the column span of M inside R^rows.

    Position-over-term order with the first row the most significant.
    ``row_degrees`` gives the grading shift of each basis vector.
    """
    if isinstance(M, PolyMatrix):
        ring = M.ring
        columns = M.columns()
        rank = M.nrows
    else:
        columns = [list(c) for c in M]
        if rank is None:
            rank = len(columns[0])
    if rank == 0:
        raise ValueError("module of rank 0")
    ctx = module_context(ring, row_degrees, rank)
    raws = [_vector_to_raw(ring, col, ctx) for col in columns]
    polys, stats = _cached_run(ring, raws, ctx, ("module", rank, tuple(ctx.shifts), truncate), truncate, True)
    return GroebnerBasis(ring, polys, ctx, stats, rank=rank, truncated=truncate)


def module_normal_form(vec: Sequence[Polynomial], G: GroebnerBasis) -> list[Polynomial]:
    if not G.is_module:
        raise TypeError("not a module basis")
    raw = _vector_to_raw(G.ring, vec, G.ctx)
    return _vector_from_raw(G.ring, G.reduce_raw(raw), G.rank, G.ctx)


def syzygies(M: PolyMatrix, row_degrees: Sequence[int] | None = None,
             column_degrees: Sequence[int] | None = None) -> PolyMatrix:
    """Matrix whose columns generate the kernel of M: R^cols -> R^rows.

    The module spanned by the columns of the stacked matrix [M; Id] is
    computed under a position-over-term order eliminating the M block;
    basis elements whose M part vanishes form a basis of the kernel.
    """
    ring = M.ring
    nr, nc = M.shape
    if nc == 0:
        return PolyMatrix.zeros(ring, 0, 0)
    if row_degrees is None:
        row_degrees = [0] * nr
    if column_degrees is None:
        column_degrees = [_column_degree(M.column(j), row_degrees) for j in range(nc)]
    one, zero = ring.one(), ring.zero()
    stacked = []
    for j in range(nc):
        col = M.column(j) + [one if i == j else zero for i in range(nc)]
        stacked.append(col)
    G = module_buchberger(stacked, ring, row_degrees=list(row_degrees) + list(column_degrees), rank=nr + nc)
    kept = []
    cb = G.ctx.cb
    threshold = nc  # components < nc are the identity block
    for raw in G.raw:
        if (max(raw) >> cb) < threshold:
            kept.append(_vector_from_raw(ring, raw, nr + nc, G.ctx)[nr:])
    if not kept:
        return PolyMatrix.zeros(ring, nc, 0)
    return PolyMatrix.from_columns(ring, kept, nc)


def _column_degree(col: Sequence[Polynomial], row_degrees: Sequence[int]) -> int:
    for f, d in zip(col, row_degrees):
        if f.terms:
            return f.degree() + d
    return 0
