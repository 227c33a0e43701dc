"""Shared constructors for bundles used across the test modules."""

from fractions import Fraction

from malle.catalog import catalog_group
from malle.config import parse_spec
from malle.galois import constant_datum_over_Q
from malle.picorb import builtin_weight, validate_bundle


def bundle(name: str, kind: str = "disc", datum=None, **kw):
    G = catalog_group(name) if datum is None else datum.G
    d = datum or constant_datum_over_Q(G)
    return validate_bundle(d, G.characters.trivial(), builtin_weight(kind, d, **kw))


def explicit(datum, by_label: dict):
    G = datum.G
    vals = {G.classes.class_of[G.index_of(k)]: Fraction(v) for k, v in by_label.items()}
    return validate_bundle(datum, G.characters.trivial(), builtin_weight("explicit", datum, values=vals))


def spec(name: str):
    return parse_spec(name)
