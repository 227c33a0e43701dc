"""Named permutation groups used throughout the examples."""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .groups import FiniteGroup, GroupError, Perm, group_from_generators


def _cyc(n: int) -> str:
    return "(" + ",".join(str(i) for i in range(1, n + 1)) + ")"


def _dihedral(n: int) -> list[str]:
    # x -> -x mod n on points 1..n
    refl = "".join(f"({i},{n + 2 - i})" for i in range(2, n + 1) if i < n + 2 - i)
    return [_cyc(n), refl]


def _sl2f3() -> list[Perm]:
    vecs = [v for v in product(range(3), repeat=2) if v != (0, 0)]
    idx = {v: i for i, v in enumerate(vecs)}

    def act(m):
        return Perm(tuple(idx[((m[0][0] * x + m[0][1] * y) % 3, (m[1][0] * x + m[1][1] * y) % 3)] for x, y in vecs))

    return [act(((1, 1), (0, 1))), act(((0, 2), (1, 0)))]


def _q8() -> list[str]:
    return ["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"]


CATALOG: dict[str, list] = {
    **{f"C{n}": [_cyc(n)] for n in range(2, 9)},
    "V4": ["(1,2)(3,4)", "(1,3)(2,4)"],
    "S3": ["(1,2)", "(1,2,3)"],
    "S4": ["(1,2)", "(1,2,3,4)"],
    "S5": ["(1,2)", "(1,2,3,4,5)"],
    "S6": ["(1,2)", "(1,2,3,4,5,6)"],
    "A4": ["(1,2,3)", "(1,2)(3,4)"],
    "D3": _dihedral(3),
    "D4": ["(1,2,3,4)", "(1,3)"],
    "D5": _dihedral(5),
    "D6": _dihedral(6),
    "D9": _dihedral(9),
    "D15": _dihedral(15),
    "Q8": _q8(),
    "C3wrC2": ["(1,2,3)", "(1,4)(2,5)(3,6)"],
    "SL(2,3)": _sl2f3(),
}

ALIASES = {"C3wrC2": ["C3 wr C2", "C3≀C2"], "SL(2,3)": ["SL2F3", "SL(2,F3)"]}

ORDERS = {**{f"C{n}": n for n in range(2, 9)}, "V4": 4, "S3": 6, "S4": 24, "S5": 120, "S6": 720,
          "A4": 12, "D3": 6, "D4": 8, "D5": 10, "D6": 12, "D9": 18, "D15": 30, "Q8": 8, "C3wrC2": 18,
          "SL(2,3)": 24}


def canonical_name(name: str) -> str:
    if name in CATALOG:
        return name
    for k, al in ALIASES.items():
        if name in al:
            return k
    raise GroupError(f"unknown catalog group {name!r}; known: {', '.join(CATALOG)}")


@lru_cache(maxsize=None)
def catalog_group(name: str) -> FiniteGroup:
    name = canonical_name(name)
    G = group_from_generators(CATALOG[name])
    if G.order != ORDERS[name]:
        raise GroupError(f"catalog entry {name} has order {G.order}, expected {ORDERS[name]}")
    return G


def catalog_names(max_order: int | None = None) -> list[str]:
    return [k for k in CATALOG if max_order is None or ORDERS[k] <= max_order]
