"""
Exact linear algebra over Z and Z/n, and low-degree group cohomology.

H^1 is computed for Gamma acting on a lattice. H^2 is computed with trivial
coefficients Z/n. A normalized 2-cocycle is pinned down by its values f(x, s)
on the generators s, because f(x, ys) = f(x, y) + f(xy, s) - f(y, s) recovers
the whole table. The unknowns are these |G|*|S| edge values, and the equations
say that the recursion is consistent around every edge of the Cayley graph.
This gives the same group as the full bar complex with far fewer unknowns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, prod
from typing import Sequence

import numpy as np

from .groups import FiniteGroup

H2_SIZE_CAP = 48


class CohomologyError(ValueError):
    pass


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


# integer Smith normal form

def _ident(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (U, D, V) with U*A*V = D, U and V unimodular, diagonal d1 | d2 | ... ."""
    M = [list(map(int, r)) for r in A]
    r = len(M)
    c = len(M[0]) if r else 0
    U, V = _ident(r), _ident(c)

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def row_comb(i, j, a, b, cc, d):
        # (row_i, row_j) <- (a row_i + b row_j, cc row_i + d row_j)
        for X in (M, U):
            ri, rj = X[i], X[j]
            X[i] = [a * x + b * y for x, y in zip(ri, rj)]
            X[j] = [cc * x + d * y for x, y in zip(ri, rj)]

    def col_comb(i, j, a, b, cc, d):
        for X in (M, V):
            for row in X:
                x, y = row[i], row[j]
                row[i], row[j] = a * x + b * y, cc * x + d * y

    t = 0
    while t < min(r, c):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, r):
            for j in range(t, c):
                v = M[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, r):
                if M[i][t]:
                    a, b = M[t][t], M[i][t]
                    if b % a == 0:
                        row_comb(t, i, 1, 0, -(b // a), 1)
                    else:
                        g, x, y = ext_gcd(a, b)
                        row_comb(t, i, x, y, -b // g, a // g)
                        done = False
            for j in range(t + 1, c):
                if M[t][j]:
                    a, b = M[t][t], M[t][j]
                    if b % a == 0:
                        col_comb(t, j, 1, 0, -(b // a), 1)
                    else:
                        g, x, y = ext_gcd(a, b)
                        col_comb(t, j, x, y, -b // g, a // g)
                        done = False
            if not done:
                continue
            a = M[t][t]
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c) if M[i][j] % a), None)
            if bad is None:
                break
            row_comb(t, bad[0], 1, 1, 0, 1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, M, V


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(x * y for x, y in zip(row, col)) for col in Bt] for row in A]


def det(A) -> int:
    from sympy import Matrix
    return int(Matrix(A).det())


def hermite_rows(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form; returns the nonzero rows (a Z-basis of the row span)."""
    M = [list(map(int, r)) for r in rows if any(r)]
    if not M:
        return []
    c = len(M[0])
    out: list[list[int]] = []
    col = 0
    while M and col < c:
        nz = [r for r in M if r[col]]
        if not nz:
            col += 1
            continue
        zero = [r for r in M if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            rest = []
            for r in nz[1:]:
                q = r[col] // p[col]
                r2 = [x - q * y for x, y in zip(r, p)]
                (rest if r2[col] else zero).append(r2)
            nz = [p] + rest
        p = nz[0]
        if p[col] < 0:
            p = [-x for x in p]
        for k, r in enumerate(out):
            q = r[col] // p[col]
            out[k] = [x - q * y for x, y in zip(r, p)]
        out.append(p)
        M = [r for r in zero if any(r)]
        col += 1
    return out


# finite abelian groups

@dataclass
class FinAbGroup:
    """prod Z/d_i with d_1 | d_2 | ..., each d_i > 1; optional generator data."""

    invariants: tuple[int, ...]
    generators: list = field(default_factory=list)

    @property
    def order(self) -> int:
        return prod(self.invariants)

    @property
    def exponent(self) -> int:
        return self.invariants[-1] if self.invariants else 1

    def elements(self, cap: int = 100_000):
        if self.order > cap:
            raise CohomologyError("group too large to enumerate")
        return list(product(*[range(d) for d in self.invariants]))

    def add(self, a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariants))

    def zero(self):
        return tuple(0 for _ in self.invariants)

    def __str__(self) -> str:
        return " x ".join(f"Z/{d}" for d in self.invariants) if self.invariants else "0"


def abelian_quotient(gens_orders: Sequence[int], relations: Sequence[Sequence[int]]):
    """Structure of (prod Z/o_i) / <relations>.

    Returns (invariants, coord, gen_vectors): coord maps a coordinate vector c in terms
    of the original generators to invariant-factor coordinates; gen_vectors[j] expresses
    the j-th invariant generator in the original generators."""
    k = len(gens_orders)
    rel = [list(r) for r in relations] + [[o if i == j else 0 for j in range(k)] for i, o in enumerate(gens_orders)]
    if k == 0:
        return (), (lambda c: ()), []
    U, D, V = smith_normal_form(rel)
    diag = [D[i][i] if i < len(D) else 0 for i in range(k)]
    Vinv = _inverse_unimodular(V)
    keep = [i for i, d in enumerate(diag) if d != 1]
    if any(diag[i] == 0 for i in keep):
        raise CohomologyError("quotient is infinite")
    inv = tuple(diag[i] for i in keep)

    def coord(c):
        cv = [sum(c[i] * V[i][j] for i in range(k)) for j in range(k)]
        return tuple(cv[j] % diag[j] for j in keep)

    return inv, coord, [Vinv[j] for j in keep]


def _inverse_unimodular(V):
    from sympy import Matrix
    Mi = Matrix(V).inv()
    return [[int(x) for x in Mi.row(i)] for i in range(Mi.rows)]


# linear algebra over Z/n

@dataclass
class ModSNF:
    n: int
    diag: list[int]  # pivots, each a proper divisor of n
    V: np.ndarray
    Vinv: np.ndarray
    rhs: np.ndarray | None  # transformed right-hand sides (U @ B)
    ncols: int

    @property
    def rank(self) -> int:
        return len(self.diag)

    def kernel(self) -> list[tuple[np.ndarray, int]]:
        """Generators of ker A as (vector, order); vectors mod n."""
        n = self.n
        out = []
        for t, d in enumerate(self.diag):
            if d != 1:
                out.append(((self.V[:, t] * (n // d)) % n, d))
        for t in range(self.rank, self.ncols):
            out.append((self.V[:, t] % n, n))
        return out

    def kernel_coords(self, x: np.ndarray) -> list[int]:
        """Coordinates of a kernel vector in the generators returned by kernel()."""
        n = self.n
        u = (self.Vinv @ (np.asarray(x) % n)) % n
        out = []
        for t, d in enumerate(self.diag):
            if d != 1:
                q = n // d
                if u[t] % q:
                    raise CohomologyError("vector is not in the kernel")
                out.append(int(u[t] // q))
        out.extend(int(v) for v in u[self.rank:])
        return out


def snf_mod(A, n: int, B=None) -> ModSNF:
    """Diagonalize A over Z/n by unimodular row and column operations.

    Row operations are also applied to the columns of B when given.
    The pivot rule is deterministic: minimal gcd with n, first in row-major order."""
    A = np.array(A, dtype=np.int64) % n
    r, m = A.shape if A.ndim == 2 else (0, 0)
    V = np.eye(m, dtype=np.int64)
    Vinv = np.eye(m, dtype=np.int64)
    Bm = None if B is None else np.array(B, dtype=np.int64).reshape(r, -1) % n
    diag: list[int] = []
    if n == 1:
        return ModSNF(n, [], V, Vinv, Bm, m)

    def rows_2x2(i, j, a, b, c, d):
        for X in (A, Bm):
            if X is None:
                continue
            ri, rj = X[i].copy(), X[j].copy()
            X[i] = (a * ri + b * rj) % n
            X[j] = (c * ri + d * rj) % n

    def cols_2x2(i, j, a, b, c, d):
        # (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j); V likewise, Vinv inversely
        for X in (A, V):
            ci, cj = X[:, i].copy(), X[:, j].copy()
            X[:, i] = (a * ci + b * cj) % n
            X[:, j] = (c * ci + d * cj) % n
        # inverse of [[a, c], [b, d]] acting on rows of Vinv; det = a*d - b*c = +-1
        dt = a * d - b * c
        ri, rj = Vinv[i].copy(), Vinv[j].copy()
        Vinv[i] = (dt * (d * ri - c * rj)) % n
        Vinv[j] = (dt * (-b * ri + a * rj)) % n

    t = 0
    while t < min(r, m):
        sub = A[t:, t:]
        if not sub.any():
            break
        g = np.gcd(sub, n)
        g[sub == 0] = n + 1
        i, j = np.unravel_index(int(np.argmin(g)), g.shape)
        i, j = int(i) + t, int(j) + t
        if i != t:
            A[[t, i]] = A[[i, t]]
            if Bm is not None:
                Bm[[t, i]] = Bm[[i, t]]
        if j != t:
            A[:, [t, j]] = A[:, [j, t]]
            V[:, [t, j]] = V[:, [j, t]]
            Vinv[[t, j]] = Vinv[[j, t]]
        while True:
            a = int(A[t, t])
            d = gcd(a, n)
            if a != d:
                u = _unit_to(a, d, n)
                uinv = pow(u, -1, n)
                A[:, t] = (A[:, t] * u) % n
                V[:, t] = (V[:, t] * u) % n
                Vinv[t] = (Vinv[t] * uinv) % n
            col = A[t + 1:, t]
            ok = col % d == 0
            if ok.any():
                k = np.where(ok, col // d, 0)
                A[t + 1:] = (A[t + 1:] - np.outer(k, A[t])) % n
                if Bm is not None:
                    Bm[t + 1:] = (Bm[t + 1:] - np.outer(k, Bm[t])) % n
            badr = np.nonzero(A[t + 1:, t])[0]
            if badr.size:
                i = int(badr[0]) + t + 1
                gg, x, y = ext_gcd(int(A[t, t]), int(A[i, t]))
                rows_2x2(t, i, x, y, -int(A[i, t]) // gg, int(A[t, t]) // gg)
                continue
            row = A[t, t + 1:]
            ok = row % d == 0
            if ok.any():
                k = np.where(ok, row // d, 0)
                A[:, t + 1:] = (A[:, t + 1:] - np.outer(A[:, t], k)) % n
                V[:, t + 1:] = (V[:, t + 1:] - np.outer(V[:, t], k)) % n
                Vinv[t] = (Vinv[t] + k @ Vinv[t + 1:]) % n
            badc = np.nonzero(A[t, t + 1:])[0]
            if badc.size:
                j = int(badc[0]) + t + 1
                gg, x, y = ext_gcd(int(A[t, t]), int(A[t, j]))
                cols_2x2(t, j, x, y, -int(A[t, j]) // gg, int(A[t, t]) // gg)
                continue
            break
        diag.append(int(A[t, t]))
        t += 1
    return ModSNF(n, diag, V, Vinv, Bm, m)


def _unit_to(a: int, d: int, n: int) -> int:
    """A unit u mod n with a*u = d mod n, where d = gcd(a, n)."""
    a1, n1 = a // d, n // d
    u = pow(a1 % n1, -1, n1) if n1 > 1 else 1
    while gcd(u, n) != 1:
        u += n1
    return u % n


def solve_mod(A, b, n: int) -> np.ndarray | None:
    """A solution of A x = b over Z/n, or None."""
    A = np.array(A, dtype=np.int64)
    b = np.array(b, dtype=np.int64).reshape(-1, 1)
    S = snf_mod(A, n, b)
    bp = S.rhs[:, 0] % n
    u = np.zeros(S.ncols, dtype=np.int64)
    for t, d in enumerate(S.diag):
        if bp[t] % d:
            return None
        # d * u_t = bp_t with pivot exactly d
        u[t] = bp[t] // d
    if np.any(bp[S.rank:] % n):
        return None
    return (S.V @ u) % n


# H^1 of Gamma with lattice coefficients

@dataclass
class H1Result:
    group: FinAbGroup
    cocycles: list[dict[int, list[int]]]  # generator crossed homs: Gamma element -> lattice vector
    coord: object = None  # function: crossed hom (values on gens) -> invariant coordinates


def h1_lattice(gamma: FiniteGroup, matrices: Sequence[Sequence[Sequence[int]]],
               gens: Sequence[int] | None = None) -> H1Result:
    """H^1(Gamma, M) for M = Z^r with sigma acting by matrices[sigma] (one per element).

    Crossed homomorphisms are determined by their values on generators; the
    constraints f(sigma s) = f(sigma) + sigma f(s) are assembled over the Cayley
    graph and the quotient by principal crossed homomorphisms is taken via SNF."""
    gens = list(gens if gens is not None else gamma.generators)
    mats = [[list(map(int, row)) for row in m] for m in matrices]
    r = len(mats[0]) if mats else 0
    for s in range(gamma.order):
        for t in gens + [gamma.identity]:
            if matmul(mats[s], mats[t]) != mats[gamma.mul(s, t)]:
                raise CohomologyError("matrices do not define a Gamma-action")
    if not gens or r == 0:
        return H1Result(FinAbGroup(()), [])
    k = len(gens)
    nv = k * r
    # f(sigma) as an r x nv integer matrix in the generator values
    F: list = [None] * gamma.order
    F[gamma.identity] = [[0] * nv for _ in range(r)]
    frontier = [gamma.identity]
    order = []
    while frontier:
        nxt = []
        for x in frontier:
            for gi, s in enumerate(gens):
                y = gamma.mul(x, s)
                if F[y] is None:
                    F[y] = _cocycle_step(F[x], mats[x], gi, r, nv)
                    nxt.append(y)
                    order.append(y)
        frontier = nxt
    rows = []
    for x in range(gamma.order):
        for gi, s in enumerate(gens):
            lhs = F[gamma.mul(x, s)]
            rhs = _cocycle_step(F[x], mats[x], gi, r, nv)
            for a, b in zip(lhs, rhs):
                row = [p - q for p, q in zip(a, b)]
                if any(row):
                    rows.append(row)
    # Z^1 = integer kernel of rows
    Z = _integer_kernel(rows, nv)
    # B^1: f_v(s) = s v - v
    B = []
    for i in range(r):
        vec = []
        for s in gens:
            vec.extend(mats[s][a][i] - (a == i) for a in range(r))
        B.append(vec)
    # express B in the Z basis
    coordsB = [_solve_integer(Z, b) for b in B]
    if Z:
        inv, coord, gvecs = _lattice_quotient(len(Z), coordsB)
    else:
        inv, coord, gvecs = (), (lambda c: ()), []
    cocycles = []
    for gv in gvecs:
        vals = [sum(c * z[j] for c, z in zip(gv, Z)) for j in range(nv)]
        cocycles.append({x: [sum(F[x][a][j] * vals[j] for j in range(nv)) for a in range(r)] for x in range(gamma.order)})

    def coord_of(values_on_gens):
        flat = [v for s in values_on_gens for v in s]
        return coord(_solve_integer(Z, flat))

    return H1Result(FinAbGroup(inv, gvecs), cocycles, coord_of)


def _cocycle_step(Fx, Mx, gi, r, nv):
    # f(x s) = f(x) + x f(s); f(s) is the unit block for generator gi
    out = [row[:] for row in Fx]
    for a in range(r):
        for b in range(r):
            if Mx[a][b]:
                out[a][gi * r + b] += Mx[a][b]
    return out


def _integer_kernel(rows, nv) -> list[list[int]]:
    if not rows:
        return _ident(nv)
    U, D, V = smith_normal_form(rows)
    rank = sum(1 for i in range(min(len(D), nv)) if D[i][i])
    return [[V[j][t] for j in range(nv)] for t in range(rank, nv)]


def _solve_integer(basis, vec) -> list[int]:
    """Integer coordinates of vec in the given basis rows (which must span it)."""
    from sympy import Matrix
    if not basis:
        if any(vec):
            raise CohomologyError("vector not in lattice")
        return []
    M = Matrix(basis).T
    sol, params = M.gauss_jordan_solve(Matrix(vec))
    sol = sol.subs({p: 0 for p in params})
    out = []
    for x in sol:
        if not x.is_integer:
            raise CohomologyError("vector not in lattice")
        out.append(int(x))
    return out


def _lattice_quotient(k, relations):
    # quotient of Z^k by relations; must be finite
    rel = [list(r) for r in relations]
    if not rel:
        rel = [[0] * k]
    U, D, V = smith_normal_form(rel)
    diag = [D[i][i] if i < len(D) else 0 for i in range(k)]
    if any(d == 0 for d in diag):
        raise CohomologyError("H^1 quotient is infinite; is Gamma finite and the action faithful?")
    Vinv = _inverse_unimodular(V)
    keep = [i for i, d in enumerate(diag) if d != 1]

    def coord(c):
        cv = [sum(c[i] * V[i][j] for i in range(k)) for j in range(k)]
        return tuple(cv[j] % diag[j] for j in keep)

    return tuple(diag[i] for i in keep), coord, [Vinv[j] for j in keep]


# H^2 with trivial coefficients

@dataclass(frozen=True)
class TwoCocycle:
    n: int
    table: tuple[tuple[int, ...], ...]

    def __call__(self, g: int, h: int) -> int:
        return self.table[g][h]

    def __add__(self, other: "TwoCocycle") -> "TwoCocycle":
        if self.n != other.n:
            raise CohomologyError("moduli differ")
        return TwoCocycle(self.n, tuple(tuple((a + b) % self.n for a, b in zip(r, s))
                                        for r, s in zip(self.table, other.table)))

    def scale(self, k: int, n: int | None = None) -> "TwoCocycle":
        m = n or self.n
        return TwoCocycle(m, tuple(tuple((k * a) % m for a in r) for r in self.table))

    def is_cocycle(self, G: FiniteGroup) -> bool:
        f = np.array(self.table, dtype=np.int64)
        t = G.table
        # f(h,k) - f(gh,k) + f(g,hk) - f(g,h) = 0 for all g,h,k
        lhs = f[None, :, :] - f[t][:, :, :] + f[:, t].reshape(G.order, G.order, G.order) - f[:, :, None]
        return not np.any(lhs % self.n)

    def is_normalized(self, G: FiniteGroup) -> bool:
        e = G.identity
        return all(self.table[e][g] == 0 and self.table[g][e] == 0 for g in range(G.order))


def bockstein(G: FiniteGroup, chi: Sequence[int], n: int) -> TwoCocycle:
    """beta(chi)(g, h) = (chi(g) + chi(h) - chi(gh)) / n mod n, lifts in [0, n)."""
    c = [x % n for x in chi]
    tab = []
    for g in range(G.order):
        row = []
        for h in range(G.order):
            s = c[g] + c[h] - c[G.mul(g, h)]
            if s % n:
                raise CohomologyError("chi is not a homomorphism to Z/n")
            row.append((s // n) % n)
        tab.append(tuple(row))
    return TwoCocycle(n, tuple(tab))


def homs_to_cyclic(G: FiniteGroup, n: int) -> list[list[int]]:
    """Generators of Hom(G, Z/n) as value tables."""
    out = []
    X = G.characters
    for i in X.generators:
        chi = X.characters[i]
        d = max((x.denominator for x in chi), default=1)
        # chi has order d; image in Z/n exists for the n-torsion part
        g = gcd(d, n)
        k = d // g  # k*chi has order g, which maps into Z/n
        out.append([int((k * x % 1) * n) for x in chi])
    return out


class H2:
    """H^2(G, Z/n), optionally modulo the Bockstein image (the Q/Z presentation)."""

    def __init__(self, G: FiniteGroup, n: int, qz: bool = False, size_cap: int = H2_SIZE_CAP):
        if G.order > size_cap:
            raise CohomologyError(f"|G| = {G.order} exceeds the degree-2 cap of {size_cap}")
        self.G, self.n, self.qz = G, n, qz
        gens = list(G.generators) or []
        self.gens = gens
        N, k = G.order, len(gens)
        m = N * k
        self.m = m
        var = lambda z, si: z * k + si  # noqa: E731
        # F[x, y] is f(x, y) as a vector in the edge unknowns
        F = np.zeros((N, N, max(m, 1)), dtype=np.int64)
        done = np.zeros(N, dtype=bool)
        done[G.identity] = True
        frontier = [G.identity]
        xs = np.arange(N)
        Gt = G.table
        while frontier:
            nxt = []
            for p in frontier:
                for si, s in enumerate(gens):
                    y = G.mul(p, s)
                    if not done[y]:
                        F[:, y] = F[:, p]
                        np.add.at(F, (xs, y, Gt[xs, p] * k + si), 1)
                        F[:, y, var(p, si)] -= 1
                        F[:, y] %= n
                        done[y] = True
                        nxt.append(y)
            frontier = nxt
        self.F = F[:, :, :m] % n if m else F[:, :, :0]
        rows = []
        for si, s in enumerate(gens):
            r0 = np.zeros(m, dtype=np.int64)
            r0[var(G.identity, si)] = 1
            rows.append(r0)
        for y in range(N):
            for si, s in enumerate(gens):
                ys = G.mul(y, s)
                R = self.F[:, ys] - self.F[:, y]
                R[xs, Gt[xs, y] * k + si] -= 1
                R[:, var(y, si)] += 1
                R %= n
                for row in R[R.any(axis=1)]:
                    rows.append(row)
        A = np.array(rows, dtype=np.int64).reshape(-1, m) if rows else np.zeros((0, m), dtype=np.int64)
        A = np.unique(A, axis=0) if len(A) else A
        self._snf = snf_mod(A, n) if m else None
        kern = self._snf.kernel() if m else []
        self._kern = kern
        # relations: coboundaries and (optionally) Bocksteins
        rel_vecs = []
        for h in range(N):
            if h == G.identity:
                continue
            # delta of the indicator function of h: f(x,s) = [x=h] + [s=h] - [xs=h]
            v = np.zeros(m, dtype=np.int64)
            for x in range(N):
                for si, s in enumerate(gens):
                    v[var(x, si)] += (x == h) + (s == h) - (G.mul(x, s) == h)
            rel_vecs.append(v % n)
        if qz:
            for chi in homs_to_cyclic(G, n):
                f = bockstein(G, chi, n)
                rel_vecs.append(self.edge_vector(f))
        rels = [self._snf.kernel_coords(v) for v in rel_vecs] if m else []
        orders = [o for _, o in kern]
        inv, coord, gvecs = abelian_quotient(orders, rels) if orders else ((), (lambda c: ()), [])
        self._coord = coord
        self.group = FinAbGroup(inv)
        self.generators = [self._from_kernel_combo(gv) for gv in gvecs]
        self.group.generators = self.generators

    def edge_vector(self, f: TwoCocycle) -> np.ndarray:
        k = len(self.gens)
        v = np.zeros(self.m, dtype=np.int64)
        for x in range(self.G.order):
            for si, s in enumerate(self.gens):
                v[x * k + si] = f(x, s)
        return v % self.n

    def _from_kernel_combo(self, combo) -> TwoCocycle:
        n = self.n
        t = np.zeros(self.m, dtype=np.int64)
        for c, (vec, _) in zip(combo, self._kern):
            t = (t + int(c) % n * vec) % n
        return self.cocycle_from_edges(t)

    def cocycle_from_edges(self, t) -> TwoCocycle:
        N = self.G.order
        if self.m == 0:
            return TwoCocycle(self.n, tuple(tuple(0 for _ in range(N)) for _ in range(N)))
        tab = (self.F.reshape(N * N, self.m) @ (np.asarray(t) % self.n)) % self.n
        tab = tab.reshape(N, N)
        return TwoCocycle(self.n, tuple(tuple(int(x) for x in r) for r in tab))

    def classify(self, f: TwoCocycle) -> tuple[int, ...]:
        """Coordinates of the class of f (which must be a normalized cocycle mod n)."""
        if f.n != self.n:
            raise CohomologyError("modulus mismatch")
        if self.m == 0:
            return ()
        return self._coord(self._snf.kernel_coords(self.edge_vector(f)))

    def element(self, coords: Sequence[int]) -> TwoCocycle:
        f = TwoCocycle(self.n, tuple(tuple(0 for _ in range(self.G.order)) for _ in range(self.G.order)))
        for c, g in zip(coords, self.generators):
            if c:
                f = f + g.scale(c)
        return f


def h2_trivial(G: FiniteGroup, n: int) -> H2:
    return H2(G, n, qz=False)


def h2_qz_group(G: FiniteGroup) -> H2:
    """H^2(G, Q/Z) presented at modulus |G| and cut by the Bockstein image."""
    return H2(G, G.order, qz=True)


def restrict_test(G: FiniteGroup, f: TwoCocycle, A: Sequence[int], qz: bool = True) -> bool:
    """Whether f restricted to the subgroup A is trivial.

    With qz, triviality is in H^2(A, Q/Z) (coboundaries plus Bocksteins); else in H^2(A, Z/n)."""
    n = f.n
    A = sorted(set(A))
    pos = {a: i for i, a in enumerate(A)}
    sub = G.subgroup(A).group
    e = pos[G.identity]
    cols = []
    for h in range(len(A)):
        if h == e:
            continue
        cols.append([(x == h) + (y == h) - (sub.mul(x, y) == h) for x in range(len(A)) for y in range(len(A))])
    if qz:
        for chi in homs_to_cyclic(sub, n):
            b = bockstein(sub, chi, n)
            cols.append([b(x, y) for x in range(len(A)) for y in range(len(A))])
    rhs = [f(A[x], A[y]) for x in range(len(A)) for y in range(len(A))]
    if not cols:
        return not any(v % n for v in rhs)
    M = np.array(cols, dtype=np.int64).T
    return solve_mod(M, rhs, n) is not None


def commutator_pairing(f: TwoCocycle, g: int, h: int) -> int:
    """For commuting g, h: the commutator of their lifts in the extension defined by f."""
    return (f(g, h) - f(h, g)) % f.n


def qz_value(k: int, n: int) -> Fraction:
    return Fraction(k % n, n)
