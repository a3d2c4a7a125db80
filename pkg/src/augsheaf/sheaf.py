"""The combinatorial sheaf of a chain homotopy diagram.

Each stratum s over the handle cell h(I, J) gets a module X(s) = Y(s) + Z(s):
Y(s) is spanned by the sheets of e_J strictly below s, Z(s) by the cusp
components of e_J for which s is exceptional (strictly above the lower
branch, weakly below the upper one, at every point of s).  The CHD turns X
into a functor to simplex diagrams G, and F = Map o G.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .chd import CHD, boundary_extend
from .front import Diagnostic, FrontComplex, cell_name
from .homalg import (AlgebraError, ChainMap, CochainComplex, CommutativeSquare, GradedModule,
                     is_acyclic, cone, total_betti, total_complex)
from .simplex import (InvalidDiagram, SDMorphism, SimplexDiagram, cylinder_map,
                      mapping_cylinder)
from .strat import Stratification, StratificationError, Stratum


def zlabel(c: str) -> str:
    return f"v[{c}]"


@dataclass(frozen=True)
class PreliminaryModule:
    stratum: str
    Y: tuple[str, ...]
    Z: tuple[str, ...]
    module: GradedModule

    @property
    def key(self) -> tuple:
        return (self.Y, self.Z)


def _slot(f: FrontComplex, K, sheet) -> int:
    return 2 * f.level_of(K, sheet) + 1


def preliminary_X(S: Stratification, s: Stratum) -> PreliminaryModule:
    f = S.front
    J = s.handle.J
    ys, zs, zdeg = set(), set(), {}
    first = True
    for (P, slot) in s.cells:
        K = P[2]
        io = f.iota(J, K)
        y = frozenset(T for T in f.sheets(J) if _slot(f, K, io[T]) > slot)
        fate = f.cusp_fate(J, K)
        z = set()
        for c in f.cusps(J):
            fc = fate[c]
            if fc[0] == "pair" and _slot(f, K, fc[1]) <= slot < _slot(f, K, fc[2]):
                z.add(c)
                zdeg.setdefault(c, -f.mu(K, fc[2]))
        if first:
            ys, zs, first = y, z, False
        elif y != ys:
            raise StratificationError(f"{s.id}: sheets below differ between cells")
        else:
            zs &= z
    if len(zs) > 1:
        raise StratificationError(f"{s.id}: exceptional for {len(zs)} cusp components")
    Y = tuple(T for T in f.sheets(J) if T in ys)
    Z = tuple(sorted(zs))
    pairs = [(T, -f.mu(J, T)) for T in Y] + [(zlabel(c), zdeg[c]) for c in Z]
    return PreliminaryModule(s.id, Y, Z, GradedModule.from_pairs(pairs))


def _true_delta(Xt: PreliminaryModule, cusp: str) -> bool:
    return cusp in Xt.Z


def preliminary_map(S: Stratification, s: Stratum, t: Stratum, Xs: PreliminaryModule,
                    Xt: PreliminaryModule,
                    delta: Callable[[PreliminaryModule, str], bool] = _true_delta
                    ) -> np.ndarray:
    """Matrix of X(s -> t) = (p, k + l); delta(X(t), C') says whether t is
    exceptional for the cusp C' (the default reads Z(t))."""
    f = S.front
    J, J2 = s.handle.J, t.handle.J
    inv = {v: u for u, v in f.iota(J2, J).items()}
    fate = f.cusp_fate(J2, J)
    col = {b: n for n, b in enumerate(Xs.module.basis)}
    row = {b: n for n, b in enumerate(Xt.module.basis)}
    m = np.zeros((len(row), len(col)), dtype=np.int64)
    for T in Xs.Y:
        if T in inv:
            if inv[T] not in row:
                raise StratificationError(f"{s.id} -> {t.id}: {T} leaves the sheets below")
            m[row[inv[T]], col[T]] = 1
            continue
        for c2, fc in fate.items():
            if fc[0] == "pair" and fc[2] == T and delta(Xt, c2):
                m[row[zlabel(c2)], col[T]] = 1
    for c in Xs.Z:
        for c2, fc in fate.items():
            if fc == ("cusp", c) and delta(Xt, c2):
                m[row[zlabel(c2)], col[zlabel(c)]] = 1
    return m


class XFunctor:
    """Preliminary modules and maps on every stratum and poset edge."""

    def __init__(self, S: Stratification, delta=_true_delta):
        self.S = S
        self.X = {s.id: preliminary_X(S, s) for s in S.strata}
        self.maps = {}
        for a, b in S.edges():
            sa, sb = S.by_id[a], S.by_id[b]
            self.maps[(a, b)] = preliminary_map(S, sa, sb, self.X[a], self.X[b], delta)

    def map(self, a: str, b: str) -> np.ndarray:
        if a == b:
            return np.eye(len(self.X[a].module), dtype=np.int64)
        return self.maps[(a, b)]


def check_X_functor(X: XFunctor) -> list[Diagnostic]:
    out = []
    for a, b, c in X.S.composable():
        if not np.array_equal(X.map(b, c) @ X.map(a, b), X.map(a, c)):
            out.append(Diagnostic("X functor", a, f"via {b} to {c}"))
    return out


def restrict_block(m: np.ndarray, keep: list[int], where: str) -> np.ndarray:
    rest = [n for n in range(m.shape[0]) if n not in keep]
    if rest and keep and m[np.ix_(rest, keep)].any():
        raise AlgebraError(f"{where}: sheets below are not preserved")
    return m[np.ix_(keep, keep)]


def G_of(S: Stratification, s: Stratum, Xs: PreliminaryModule, c: CHD) -> SimplexDiagram:
    f = S.front
    I, J = s.handle.I, s.handle.J
    sj = f.sheets(J)
    keep = [sj.index(T) for T in Xs.Y]
    ny, nz = len(Xs.Y), len(Xs.Z)
    maps = {}
    for F in f.base.faces(I):
        ext = boundary_extend(f, c.matrices[F], F, J, c.p)
        a = np.zeros((ny + nz, ny + nz), dtype=np.int64)
        a[:ny, :ny] = restrict_block(ext, keep, f"{s.id} face {cell_name(F)}")
        if len(F) == 2:
            a[ny:, ny:] = np.eye(nz, dtype=np.int64)
        maps[F] = a
    return SimplexDiagram(I, Xs.module, maps, c.p)


class CombinatorialSheaf:
    """F(C) = Map o G(C), built lazily and shared between strata with equal data."""

    def __init__(self, S: Stratification, c: CHD, X: XFunctor | None = None):
        self.S = S
        self.chd = c
        self.p = c.p
        self.X = X or XFunctor(S)
        self._G: dict = {}
        self._F: dict = {}
        self._maps: dict = {}

    def _key(self, sid: str) -> tuple:
        s = self.S.by_id[sid]
        return (s.handle.I, s.handle.J, self.X.X[sid].key)

    def G(self, sid: str) -> SimplexDiagram:
        key = self._key(sid)
        if key not in self._G:
            self._G[key] = G_of(self.S, self.S.by_id[sid], self.X.X[sid], self.chd)
        return self._G[key]

    def complex(self, sid: str) -> CochainComplex:
        key = self._key(sid)
        if key not in self._F:
            self._F[key] = mapping_cylinder(self.G(sid))
        return self._F[key]

    def G_map(self, a: str, b: str) -> SDMorphism:
        return SDMorphism(self.G(a), self.G(b), self.X.map(a, b))

    def edge_key(self, a: str, b: str) -> tuple:
        return (self._key(a), self._key(b), self.X.map(a, b).tobytes())

    def chain_map(self, a: str, b: str) -> ChainMap:
        key = self.edge_key(a, b)
        if key not in self._maps:
            self._maps[key] = cylinder_map(self.G_map(a, b), self.complex(a), self.complex(b))
        return self._maps[key]


class ZeroSheaf:
    """Zero complex on every stratum."""

    def __init__(self, S: Stratification, p: int):
        self.S = S
        self.p = p
        self._zero = CochainComplex.zero_differential(GradedModule((), ()), p)

    def complex(self, sid: str) -> CochainComplex:
        return self._zero

    def chain_map(self, a: str, b: str) -> ChainMap:
        return ChainMap(self._zero, self._zero, np.zeros((0, 0), dtype=np.int64))


def build_sheaf(f: FrontComplex, c: CHD, S: Stratification | None = None) -> CombinatorialSheaf:
    S = S or Stratification(f)
    F = CombinatorialSheaf(S, c)
    for s in S.strata:
        F.complex(s.id)
    return F


def microlocal_rank(F, sid: str, n: int = 1) -> int:
    if n != 1:
        raise NotImplementedError("microlocal rank n > 1 needs higher rank representations")
    s = F.S.by_id[sid]
    if s.tag != "Legendrian-2":
        raise ValueError(f"{sid} is not a Legendrian 2-stratum")
    return total_betti(cone(F.chain_map(sid, F.S.legendrian_up(s))))


def is_identity_map(F: CombinatorialSheaf, a: str, b: str) -> bool:
    Xa, Xb = F.X.X[a], F.X.X[b]
    return Xa.module == Xb.module and np.array_equal(F.X.map(a, b), np.eye(len(Xa.module)))


def _qi(F, a: str, b: str, cache: dict) -> bool:
    key = F.edge_key(a, b) if hasattr(F, "edge_key") else (a, b)
    if key not in cache:
        cache[key] = is_acyclic(cone(F.chain_map(a, b)))
    return cache[key]


def square_acyclic(F, sq) -> bool:
    s1, a, b, s3 = sq
    cs = CommutativeSquare(F.chain_map(s1, a), F.chain_map(s1, b),
                           F.chain_map(a, s3), F.chain_map(b, s3))
    return is_acyclic(total_complex(cs))


def bullet_facts(F: CombinatorialSheaf, a: str, b: str) -> list[str]:
    """The four structural facts behind same-index quasi-isomorphisms."""
    S, f = F.S, F.S.front
    sa, sb = S.by_id[a], S.by_id[b]
    Xa, Xb = F.X.X[a], F.X.X[b]
    J, J2 = sa.handle.J, sb.handle.J
    m = F.X.map(a, b)
    col = {x: n for n, x in enumerate(Xa.module.basis)}
    row = {x: n for n, x in enumerate(Xb.module.basis)}
    inv = {v: u for u, v in f.iota(J2, J).items()}
    fate = f.cusp_fate(J2, J)
    pairs = [(fc[1], fc[2], c2) for c2, fc in fate.items() if fc[0] == "pair"]
    Ya = set(Xa.Y)
    Y1 = [T for T in Xa.Y if T in inv]
    Y2 = [T for u, l, _ in pairs if u in Ya and l in Ya for T in (u, l)]
    Y3 = [l for u, l, _ in pairs if l in Ya and u not in Ya]
    ZD = [zlabel(c2) for c2 in Xb.Z if fate[c2][0] == "cusp"]
    ZC = [zlabel(c2) for c2 in Xb.Z if fate[c2][0] == "pair"]
    bad = []

    def bijective(src, tgt) -> bool:
        if len(src) != len(tgt):
            return False
        block = m[np.ix_([row[x] for x in tgt], [col[x] for x in src])] if src else np.zeros((0, 0))
        return sorted(block.sum(axis=0).tolist()) == [1] * len(src) and \
            sorted(block.sum(axis=1).tolist()) == [1] * len(tgt)

    if not bijective(Y1, list(Xb.Y)):
        bad.append("Y1 onto Y(t)")
    if not bijective([zlabel(c) for c in Xa.Z], ZD):
        bad.append("Z(s) onto Z_D")
    if not bijective(Y3, ZC):
        bad.append("Y3 onto Z_C")
    kernel = [x for x in Xa.module.basis if not m[:, col[x]].any()]
    if sorted(kernel) != sorted(Y2):
        bad.append("kernel is Y2")
    d = F.G(a).a((sa.handle.I[0],))
    for u, l, _ in pairs:
        if u in Ya and l in Ya:
            v = np.zeros(len(col), dtype=np.int64)
            v[col[u]] = 1
            w = np.zeros(len(col), dtype=np.int64)
            w[col[l]] = 1
            if not np.array_equal(d @ v % F.p, w):
                bad.append(f"d({u}) = {l}")
    return bad


@dataclass
class Check:
    name: str
    total: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, what):
        self.total += 1
        if not ok:
            self.failures.append(what)

    def as_dict(self, limit: int = 5) -> dict:
        return {"name": self.name, "checked": self.total, "passed": self.passed,
                "failures": [str(x) for x in self.failures[:limit]],
                "failure_count": len(self.failures)}


CHECK_NAMES = (
    "simplex diagrams",
    "X functor",
    "G morphisms",
    "functor laws",
    "downward maps are identities",
    "(1) downward quasi-isomorphisms",
    "(2) same-index quasi-isomorphisms",
    "(3) crossing squares acyclic",
    "generalized downward quasi-isomorphisms",
    "top dimensional squares acyclic",
    "same-index structure",
    "microlocal rank one",
)


def verify_axioms(F: CombinatorialSheaf) -> list[Check]:
    S = F.S
    checks = {n: Check(n) for n in CHECK_NAMES}
    try:
        for s in S.strata:
            F.complex(s.id)
            checks["simplex diagrams"].record(True, s.id)
    except (InvalidDiagram, AlgebraError) as e:
        checks["simplex diagrams"].record(False, f"{s.id}: {e}")
        return [checks[n] for n in CHECK_NAMES]
    for d in check_X_functor(F.X):
        checks["X functor"].record(False, d)
    checks["X functor"].total = sum(1 for _ in S.composable())
    edges = S.edges()
    for a, b in edges:
        try:
            F.chain_map(a, b)
            checks["G morphisms"].record(True, (a, b))
        except AlgebraError as e:
            checks["G morphisms"].record(False, f"{a} -> {b}: {e}")
    if not checks["G morphisms"].passed:
        return [checks[n] for n in CHECK_NAMES]
    for a, b, c in S.composable():
        ok = np.array_equal((F.chain_map(b, c).matrix @ F.chain_map(a, b).matrix) % F.p,
                            F.chain_map(a, c).matrix % F.p)
        checks["functor laws"].record(ok, f"{a} -> {b} -> {c}")
    qi_cache: dict = {}
    for a, b in edges:
        if S.is_downward(a, b):
            checks["downward maps are identities"].record(is_identity_map(F, a, b), (a, b))
            checks["(1) downward quasi-isomorphisms"].record(_qi(F, a, b, qi_cache), (a, b))
        if S.same_lambda(a, b):
            checks["(2) same-index quasi-isomorphisms"].record(_qi(F, a, b, qi_cache), (a, b))
            facts = bullet_facts(F, a, b)
            checks["same-index structure"].record(not facts, f"{a} -> {b}: {facts}")
        if S.is_generalized_downward(a, b):
            checks["generalized downward quasi-isomorphisms"].record(_qi(F, a, b, qi_cache),
                                                                      (a, b))
    sq_cache: dict = {}

    def acyclic(sq) -> bool:
        s1, a, b, s3 = sq
        key = (F.edge_key(s1, a), F.edge_key(s1, b), F.edge_key(a, s3), F.edge_key(b, s3))
        if key not in sq_cache:
            sq_cache[key] = square_acyclic(F, sq)
        return sq_cache[key]

    for sq in S.crossing_squares():
        checks["(3) crossing squares acyclic"].record(acyclic(sq), sq)
    for sq in S.top_squares():
        checks["top dimensional squares acyclic"].record(acyclic(sq), sq)
    for s in S.strata:
        if s.tag == "Legendrian-2":
            r = microlocal_rank(F, s.id)
            checks["microlocal rank one"].record(r == 1, f"{s.id}: rank {r}")
    return [checks[n] for n in CHECK_NAMES]
