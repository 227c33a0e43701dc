"""
Finite groups stored as Cayley tables.

Elements are integers 0..n-1. Groups built from permutations are sorted
lexicographically on their image tuples, so the identity is always 0 there.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

DEFAULT_SIZE_CAP = 10_000


class GroupError(ValueError):
    pass


class CycleParseError(GroupError):
    def __init__(self, text: str, token: str, pos: int):
        self.text, self.token, self.pos = text, token, pos
        super().__init__(f"bad cycle notation at position {pos}: token {token!r} in {text!r}")


@dataclass(frozen=True, order=True)
class Perm:
    """A permutation of {0..n-1}; printed 1-based in cycle notation."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise GroupError(f"not a bijection: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(n)))

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> "Perm":
        """Parse 1-based cycle notation such as "(1,2)(3,4)"; "()" is the identity."""
        s = re.sub(r"\s+", "", text)
        cycles: list[list[int]] = []
        i = 0
        while i < len(s):
            if s[i] != "(":
                raise CycleParseError(text, s[i], i)
            j = s.find(")", i)
            if j < 0:
                raise CycleParseError(text, s[i:], i)
            body = s[i + 1:j]
            pts: list[int] = []
            if body:
                for tok in body.split(","):
                    if not tok.isdigit() or int(tok) < 1:
                        raise CycleParseError(text, tok, i)
                    pts.append(int(tok))
            if len(set(pts)) != len(pts):
                raise CycleParseError(text, body, i)
            cycles.append(pts)
            i = j + 1
        n = max([p for c in cycles for p in c], default=0)
        if degree is not None:
            if degree < n:
                raise GroupError(f"point {n} exceeds degree {degree}")
            n = degree
        img = list(range(n))
        seen: set[int] = set()
        for c in cycles:
            if seen & set(c):
                raise CycleParseError(text, str(c), 0)
            seen |= set(c)
            for a, b in zip(c, c[1:] + c[:1]):
                img[a - 1] = b - 1
        return cls(tuple(img))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Perm") -> "Perm":
        # (p*q)(x) = p(q(x)): apply q first
        if self.degree != other.degree:
            raise GroupError("degree mismatch")
        return Perm(tuple(self.images[i] for i in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(self.degree):
            if i in seen:
                continue
            c = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                c.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(c))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def num_orbits(self) -> int:
        return len(self.cycles())

    def __str__(self) -> str:
        cs = [c for c in self.cycles() if len(c) > 1]
        if not cs:
            return "()"
        return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cs)

    def __repr__(self) -> str:
        return f"Perm({self})"


@dataclass(frozen=True)
class ClassPartition:
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]

    @property
    def reps(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.classes)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def __len__(self) -> int:
        return len(self.classes)


class FiniteGroup:
    """A finite group given by its multiplication table."""

    def __init__(self, cayley, labels: Sequence | None = None, identity: int = 0,
                 check: bool = True, size_cap: int = DEFAULT_SIZE_CAP):
        t = np.asarray(cayley, dtype=np.int64)
        n = t.shape[0]
        if n > size_cap:
            raise GroupError(f"group of order {n} exceeds size cap {size_cap}")
        if t.shape != (n, n):
            raise GroupError("Cayley table must be square")
        self.order = n
        self.table = t
        self._t = t.tolist()
        self.identity = identity
        self.labels = list(labels) if labels is not None else None
        if check:
            self._check_axioms()
        inv = [0] * n
        for a in range(n):
            inv[a] = self._t[a].index(identity)
        self._inv = inv

    def _check_axioms(self):
        n, t, e = self.order, self.table, self.identity
        rng = np.arange(n)
        if not (np.all(t[e] == rng) and np.all(t[:, e] == rng)):
            raise GroupError("identity axiom fails")
        if np.any(np.sort(t, axis=1) != rng) or np.any(np.sort(t, axis=0) != rng[:, None]):
            raise GroupError("table is not a Latin square")
        if n <= 200:
            if not np.array_equal(t[t], t[:, t]):
                raise GroupError("associativity fails")
        else:
            rs = np.random.default_rng(0)
            a, b, c = rs.integers(0, n, (3, 20000))
            if np.any(t[t[a, b], c] != t[a, t[b, c]]):
                raise GroupError("associativity fails")

    # basic arithmetic
    def mul(self, a: int, b: int) -> int:
        return self._t[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, x: int, g: int) -> int:
        """x g x^-1"""
        return self._t[self._t[x][g]][self._inv[x]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self._inv[a], -k
        r, b = self.identity, a
        while k:
            if k & 1:
                r = self._t[r][b]
            b = self._t[b][b]
            k >>= 1
        return r

    def prod(self, xs: Iterable[int]) -> int:
        r = self.identity
        for x in xs:
            r = self._t[r][x]
        return r

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for a in range(self.order):
            k, b = 1, a
            while b != self.identity:
                b = self._t[b][a]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def exponent(self) -> int:
        return lcm(*self.element_orders) if self.order else 1

    def m_torsion_count(self, m: int) -> int:
        return sum(1 for o in self.element_orders if m % o == 0)

    def label(self, a: int) -> str:
        return str(self.labels[a]) if self.labels is not None else str(a)

    def index_of(self, label) -> int:
        if self.labels is None:
            raise GroupError("group has no labels")
        if isinstance(label, str):
            deg = self.labels[0].degree if isinstance(self.labels[0], Perm) else None
            label = Perm.parse(label, deg)
        try:
            return self._label_index[label]
        except KeyError:
            raise GroupError(f"{label} is not an element of the group") from None

    @cached_property
    def _label_index(self) -> dict:
        return {x: i for i, x in enumerate(self.labels or [])}

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    # classes
    @cached_property
    def classes(self) -> ClassPartition:
        n = self.order
        class_of = [-1] * n
        classes = []
        for a in range(n):
            if class_of[a] >= 0:
                continue
            members = sorted({self.conj(x, a) for x in range(n)})
            for m in members:
                class_of[m] = len(classes)
            classes.append(tuple(members))
        return ClassPartition(tuple(classes), tuple(class_of))

    def centralizer(self, a: int) -> list[int]:
        return [x for x in range(self.order) if self._t[x][a] == self._t[a][x]]

    @cached_property
    def center(self) -> tuple[int, ...]:
        return tuple(a for a in range(self.order) if all(self._t[a][x] == self._t[x][a] for x in range(self.order)))

    # subgroups
    def closure(self, gens: Iterable[int]) -> tuple[int, ...]:
        gens = [g for g in set(gens) if g != self.identity]
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self._t[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(seen))

    def is_normal(self, elems: Iterable[int]) -> bool:
        s = set(elems)
        return all(self.conj(x, h) in s for h in s for x in self.generators)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily in index order (largest order first)."""
        gens: list[int] = []
        cur = {self.identity}
        for a in sorted(range(self.order), key=lambda x: (-self.element_orders[x], x)):
            if a not in cur:
                gens.append(a)
                cur = set(self.closure(gens))
                if len(cur) == self.order:
                    break
        return tuple(gens)

    def subgroup(self, elems: Iterable[int]) -> "Subgroup":
        return Subgroup(self, tuple(sorted(set(elems))))

    def subgroup_generated(self, S: Iterable[int]) -> "Subgroup":
        return self.subgroup(self.closure(S))

    @cached_property
    def derived_subgroup(self) -> tuple[int, ...]:
        comms = {self.prod([a, b, self.inv(a), self.inv(b)]) for a in range(self.order) for b in self.generators}
        # normal closure of commutators of generators with all elements
        return self.closure({self.conj(x, c) for c in comms for x in range(self.order)})

    def quotient(self, N: Iterable[int]) -> tuple["FiniteGroup", list[int]]:
        N = tuple(sorted(set(N)))
        if self.identity not in N or len(self.closure(N)) != len(N):
            raise GroupError("not a subgroup")
        if not self.is_normal(N):
            raise GroupError("subgroup is not normal")
        coset_of = [-1] * self.order
        reps = []
        for a in range(self.order):
            if coset_of[a] < 0:
                for h in N:
                    coset_of[self._t[a][h]] = len(reps)
                reps.append(a)
        m = len(reps)
        table = [[coset_of[self._t[reps[i]][reps[j]]] for j in range(m)] for i in range(m)]
        return FiniteGroup(table, labels=None, identity=coset_of[self.identity]), coset_of

    def abelianization(self) -> tuple["FiniteGroup", list[int]]:
        return self.quotient(self.derived_subgroup)

    def structure_queries(self) -> dict:
        ab, _ = self.abelianization()
        return {
            "order": self.order,
            "center": len(self.center),
            "abelianization": ab.order,
            "exponent": self.exponent,
            "two_torsion": self.m_torsion_count(2),
            "element_orders": sorted(set(self.element_orders)),
        }

    def extend_hom(self, gens: Sequence[int], values: Sequence, add, zero, check: bool = True):
        """Extend an assignment on generators to a map G -> A by walking the Cayley graph.

        Returns the value table, or None if the assignment is not a homomorphism."""
        val: list = [None] * self.order
        val[self.identity] = zero
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g, v in zip(gens, values):
                    y = self._t[x][g]
                    if val[y] is None:
                        val[y] = add(val[x], v)
                        nxt.append(y)
            frontier = nxt
        if any(v is None for v in val):
            raise GroupError("elements do not generate the group")
        if check:
            for x in range(self.order):
                for g, v in zip(gens, values):
                    if val[self._t[x][g]] != add(val[x], v):
                        return None
        return val

    @cached_property
    def characters(self) -> "CharacterGroup":
        return one_dim_characters(self)

    def automorphism_from_images(self, gens: Sequence[int], images: Sequence[int]) -> list[int] | None:
        """The automorphism sending gens[i] to images[i], or None."""
        phi = self.extend_hom(gens, images, self.mul, self.identity)
        if phi is None or len(set(phi)) != self.order:
            return None
        return phi

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"


@dataclass
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def is_normal(self) -> bool:
        return self.parent.is_normal(self.elements)

    @cached_property
    def group(self) -> FiniteGroup:
        """The subgroup as a group in its own right; element i is parent element elements[i]."""
        idx = {x: i for i, x in enumerate(self.elements)}
        P = self.parent
        table = [[idx[P.mul(a, b)] for b in self.elements] for a in self.elements]
        labels = [P.labels[a] for a in self.elements] if P.labels is not None else list(self.elements)
        return FiniteGroup(table, labels=labels, identity=idx[P.identity], check=False)

    @property
    def inclusion(self) -> tuple[int, ...]:
        return self.elements


@dataclass(frozen=True)
class CharacterGroup:
    """Hom(G, Q/Z); each character is a tuple of Fractions in [0, 1)."""

    group_order: int
    characters: tuple[tuple[Fraction, ...], ...]
    generators: tuple[int, ...] = field(default=())

    @property
    def order(self) -> int:
        return len(self.characters)

    def index(self, chi: Sequence[Fraction]) -> int:
        return self.characters.index(tuple(chi))

    def add(self, i: int, j: int) -> int:
        a, b = self.characters[i], self.characters[j]
        return self.index(tuple((x + y) % 1 for x, y in zip(a, b)))

    def trivial(self) -> int:
        return self.index(tuple(Fraction(0) for _ in range(self.group_order)))


def _qz_add(a: Fraction, b: Fraction) -> Fraction:
    return (a + b) % 1


def one_dim_characters(G: FiniteGroup) -> CharacterGroup:
    """Enumerate Hom(G, Q/Z) by assigning values on generators and keeping homomorphisms."""
    ab, proj = G.abelianization()
    e = ab.exponent
    gens = G.generators
    chars = []
    choices = [[Fraction(k, e) for k in range(e)] for _ in gens]
    for vals in product(*choices):
        # cheap filter: order of value divides order of generator
        if any((v * G.element_orders[g]) % 1 for g, v in zip(gens, vals)):
            continue
        t = G.extend_hom(gens, vals, _qz_add, Fraction(0))
        if t is not None:
            chars.append(tuple(t))
    chars.sort()
    if len(chars) != ab.order:
        raise GroupError("character enumeration failed")
    # generating set, greedy
    gen_idx: list[int] = []
    span = {tuple(Fraction(0) for _ in range(G.order))}
    for i, c in enumerate(chars):
        if c in span:
            continue
        gen_idx.append(i)
        new = set(span)
        frontier = list(span)
        while frontier:
            nxt = []
            for s in frontier:
                for j in gen_idx:
                    t = tuple((x + y) % 1 for x, y in zip(s, chars[j]))
                    if t not in new:
                        new.add(t)
                        nxt.append(t)
            frontier = nxt
        span = new
    return CharacterGroup(G.order, tuple(chars), tuple(gen_idx))


def group_from_generators(gens: Sequence[Perm | str], degree: int | None = None,
                          size_cap: int = DEFAULT_SIZE_CAP) -> FiniteGroup:
    """Close a set of permutations under multiplication."""
    ps = [Perm.parse(g, degree) if isinstance(g, str) else g for g in gens]
    if ps:
        degs = {p.degree for p in ps}
        if len(degs) > 1:
            if degree is None and all(isinstance(g, str) for g in gens):
                d = max(degs)
                ps = [Perm.parse(g, d) for g in gens]
            else:
                raise GroupError(f"generators have different degrees {sorted(degs)}")
        n = ps[0].degree
    else:
        n = degree or 1
    e = Perm.identity(n)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in ps:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > size_cap:
                        raise GroupError(f"closure exceeds size cap {size_cap}")
        frontier = nxt
    elems = sorted(seen, key=lambda p: p.images)
    idx = {p: i for i, p in enumerate(elems)}
    table = [[idx[a * b] for b in elems] for a in elems]
    return FiniteGroup(table, labels=elems, identity=0, size_cap=size_cap)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G x H with element (g, h) at index g*|H| + h; permutation labels are concatenated."""
    m = H.order
    n = G.order * m
    table = [[G.mul(a // m, b // m) * m + H.mul(a % m, b % m) for b in range(n)] for a in range(n)]
    labels = None
    if G.labels is not None and H.labels is not None and isinstance(G.labels[0], Perm):
        dg = G.labels[0].degree
        labels = [Perm(G.labels[a // m].images + tuple(dg + i for i in H.labels[a % m].images)) for a in range(n)]
    return FiniteGroup(table, labels=labels, identity=G.identity * m + H.identity)


def cyclic_group(n: int) -> FiniteGroup:
    """Z/n with element k at index k (no permutation labels)."""
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)])


def units_mod(e: int) -> tuple[FiniteGroup, list[int]]:
    """(Z/e)^x as a group; returns the group and the list of residues by index."""
    if e <= 2:
        return FiniteGroup([[0]]), [1 % e]
    res = [u for u in range(1, e) if gcd(u, e) == 1]
    idx = {u: i for i, u in enumerate(res)}
    table = [[idx[(a * b) % e] for b in res] for a in res]
    return FiniteGroup(table, identity=idx[1 % e]), res
