"""
Problem specifications in YAML.

A spec names a group, a Galois datum, a height and a few run options. Parsing
turns it into the group, datum, bundle and height data the other modules use.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import yaml

from .catalog import canonical_name, catalog_group
from .galois import GaloisDatum, constant_datum_over_Q, extend_by_quadratic
from .groups import CycleParseError, FiniteGroup, GroupError, Perm, group_from_generators
from .picorb import OrbifoldLineBundle, builtin_weight, fujita, validate_bundle
from .tamagawa import HeightSpec, fixture_densities


class SpecError(ValueError):
    pass


class _LineStr(str):
    line: int = 0


class _Loader(yaml.SafeLoader):
    pass


def _construct_str(loader, node):
    s = _LineStr(loader.construct_scalar(node))
    s.line = node.start_mark.line + 1
    return s


_Loader.add_constructor("tag:yaml.org,2002:str", _construct_str)

TOP_KEYS = {"name", "group", "galois", "height", "brauer", "primes", "bad_places", "arch_heights", "output"}
GROUP_KEYS = {"catalog", "generators", "degree"}
GALOIS_KEYS = {"type", "modulus", "quadratic"}
HEIGHT_KEYS = {"name", "weight", "class_function", "values", "character"}
BRAUER_KEYS = {"support"}
OUTPUT_KEYS = {"split_arch", "mode"}


@dataclass
class ProblemSpec:
    raw: dict
    source: str = "<string>"
    group: FiniteGroup | None = field(default=None, repr=False, compare=False)
    datum: GaloisDatum | None = field(default=None, repr=False, compare=False)
    bundle: OrbifoldLineBundle | None = field(default=None, repr=False, compare=False)

    def __eq__(self, other):
        return isinstance(other, ProblemSpec) and _plain(self.raw) == _plain(other.raw)

    @property
    def name(self) -> str:
        return str(self.raw.get("name", Path(self.source).stem))

    @property
    def primes(self) -> int:
        return int(self.raw.get("primes", 100_000))

    @property
    def height_name(self) -> str:
        h = self.raw["height"]
        return str(h.get("name", h.get("weight")))

    @property
    def group_name(self) -> str | None:
        g = self.raw["group"]
        return canonical_name(str(g["catalog"])) if "catalog" in g else None

    def support(self) -> list[int]:
        """Classes for the Brauer group: the minimal ones by default."""
        sup = self.raw.get("brauer", {}).get("support", "minimal")
        G, datum = self.group, self.datum
        idc = datum.classes.identity_class
        if sup == "minimal":
            return list(fujita(self.bundle).minimal_classes)
        if sup == "all":
            return [c for c in range(len(G.classes)) if c != idc]
        out = set()
        for lab in sup:
            out.add(G.classes.class_of[_element(G, lab)])
        return sorted(out)

    def height_spec(self) -> HeightSpec:
        bad = {}
        if self.group_name:
            bad.update(fixture_densities(self.group_name, self.height_name))
        for p, rec in (self.raw.get("bad_places") or {}).items():
            entry = {"plain": Fraction(str(rec["plain"]))}
            entry["twisted"] = {str(k): Fraction(str(v)) for k, v in (rec.get("twisted") or {}).items()}
            bad[int(p)] = entry
        arch = {0: {str(k): Fraction(str(v)) for k, v in (self.raw.get("arch_heights") or {}).items()}}
        return HeightSpec(self.bundle, bad, arch)


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_plain(v) for v in x]
    if isinstance(x, str):
        return str(x)
    return x


def _line(x) -> str:
    return f"line {x.line}: " if isinstance(x, _LineStr) else ""


def _check_keys(block: dict, allowed: set, where: str):
    if not isinstance(block, dict):
        raise SpecError(f"{where} must be a mapping")
    for k in block:
        if k not in allowed:
            raise SpecError(f"{_line(k)}unknown key {k!r} in {where}; allowed: {', '.join(sorted(allowed))}")


def _element(G: FiniteGroup, label) -> int:
    try:
        return G.index_of(str(label))
    except CycleParseError as e:
        raise SpecError(f"{_line(label)}malformed cycle {str(label)!r}: {e}") from e
    except (GroupError, KeyError, ValueError) as e:
        raise SpecError(f"{_line(label)}{str(label)!r} is not an element of the group") from e


def _fraction(x, where) -> Fraction:
    try:
        return Fraction(str(x))
    except ValueError as e:
        raise SpecError(f"{_line(x)}bad number {x!r} in {where}") from e


def bundled_configs() -> list[str]:
    d = resources.files("malle").joinpath("data/configs")
    return sorted(p.name[:-5] for p in d.iterdir() if p.name.endswith(".yaml"))


def _read(path_or_name: str) -> tuple[str, str]:
    p = Path(path_or_name)
    if p.exists():
        return p.read_text(), str(p)
    res = resources.files("malle").joinpath(f"data/configs/{path_or_name}.yaml")
    if res.is_file():
        return res.read_text(), path_or_name
    raise SpecError(f"no such spec file or bundled config: {path_or_name!r} (bundled: {', '.join(bundled_configs())})")


def parse_spec(path_or_name: str) -> ProblemSpec:
    text, src = _read(path_or_name)
    return parse_spec_text(text, src)


def parse_spec_text(text: str, source: str = "<string>") -> ProblemSpec:
    try:
        raw = yaml.load(text, Loader=_Loader)
    except yaml.YAMLError as e:
        raise SpecError(f"{source}: {e}") from e
    if not isinstance(raw, dict):
        raise SpecError(f"{source}: spec must be a mapping")
    _check_keys(raw, TOP_KEYS, "spec")
    for k in ("group", "height"):
        if k not in raw:
            raise SpecError(f"{source}: missing block {k!r}")
    spec = ProblemSpec(raw, source)
    _build(spec)
    return spec


def _build(spec: ProblemSpec):
    raw = spec.raw
    g = raw["group"]
    _check_keys(g, GROUP_KEYS, "group")
    if "catalog" in g:
        try:
            G = catalog_group(str(g["catalog"]))
        except GroupError as e:
            raise SpecError(f"{_line(g['catalog'])}{e}") from e
    elif "generators" in g:
        gens = list(g["generators"])
        for s in gens:
            try:
                Perm.parse(str(s), g.get("degree"))
            except CycleParseError as e:
                raise SpecError(f"{_line(s)}malformed cycle string {str(s)!r}, token {e.token!r}") from e
        G = group_from_generators([str(s) for s in gens], degree=g.get("degree"))
    else:
        raise SpecError("group block needs 'catalog' or 'generators'")
    spec.group = G

    gal = raw.get("galois") or {"type": "constant"}
    _check_keys(gal, GALOIS_KEYS, "galois")
    if str(gal.get("type", "constant")) != "constant":
        raise SpecError(f"{_line(gal['type'])}only constant data over Q are configurable here")
    datum = constant_datum_over_Q(G, gal.get("modulus"))
    if gal.get("quadratic") is not None:
        datum = extend_by_quadratic(datum, int(gal["quadratic"]))
    spec.datum = datum

    h = raw["height"]
    _check_keys(h, HEIGHT_KEYS, "height")
    kind = str(h.get("weight", "disc"))
    cf = vals = None
    if "class_function" in h:
        cf = _class_map(G, h["class_function"], "height.class_function", fill=None)
    if "values" in h:
        vals = _class_map(G, h["values"], "height.values", fill=Fraction(0))
    w = builtin_weight(kind, datum, class_function=cf, values=vals)
    chi = G.characters.trivial()
    spec.bundle = validate_bundle(datum, chi, w)

    _check_keys(raw.get("brauer") or {}, BRAUER_KEYS, "brauer")
    _check_keys(raw.get("output") or {}, OUTPUT_KEYS, "output")


def _class_map(G: FiniteGroup, table: dict, where: str, fill):
    out = {}
    for lab, v in table.items():
        out[G.classes.class_of[_element(G, lab)]] = _fraction(v, where)
    missing = [c for c in range(len(G.classes)) if c not in out]
    if missing and fill is None:
        reps = ", ".join(G.label(G.classes.reps[c]) for c in missing)
        raise SpecError(f"{where} is missing classes {reps}")
    for c in missing:
        out[c] = fill
    return out


def serialize_spec(spec: ProblemSpec) -> str:
    return yaml.safe_dump(_plain(copy.deepcopy(spec.raw)), sort_keys=False)
