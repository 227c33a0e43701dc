"""
Fetching A4-quartic fields from the LMFDB and counting them by height.

Requests are sequential with a fixed delay and cached on disk by query hash.
Snapshots are CSV files with columns label, disc_K, disc_resolvent, signature.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import os
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

log = logging.getLogger(__name__)

API = "https://www.lmfdb.org/api/nf_fields/"
CACHE_ENV = "MALLE_CACHE_DIR"

# LMFDB field name -> our field name; kept in one place because the schema drifts
FIELD_MAP = {"label": "label", "disc_abs": "disc_K", "r2": "r2", "coeffs": "coeffs"}

A4_QUERY = {"degree": "4", "galois_label": "4T4"}


class FetchError(RuntimeError):
    pass


@dataclass(frozen=True)
class FieldRecord:
    label: str
    disc_K: int  # absolute value
    disc_resolvent: int  # absolute value of the cubic resolvent field discriminant
    signature: str  # "4,0" or "0,2"

    @property
    def totally_real(self) -> bool:
        return self.signature == "4,0"


def default_cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV, Path.home() / ".cache" / "malle"))


def query_key(query: dict) -> str:
    return hashlib.sha256(json.dumps(query, sort_keys=True).encode()).hexdigest()[:16]


class LMFDBClient:
    def __init__(self, cache_dir: Path | str | None = None, delay: float = 1.0, session=None,
                 page_size: int = 100):
        self.cache_dir = Path(cache_dir) if cache_dir else default_cache_dir()
        self.delay = delay
        self.page_size = page_size
        self._session = session
        self._last = 0.0
        self.calls = 0

    @property
    def session(self):
        if self._session is None:
            import requests
            self._session = requests.Session()
        return self._session

    def _get(self, params: dict) -> dict:
        wait = self._last + self.delay - time.monotonic()
        if wait > 0:
            time.sleep(wait)
        self._last = time.monotonic()
        self.calls += 1
        try:
            r = self.session.get(API, params=params, timeout=60)
        except Exception as e:  # network layer
            raise FetchError(f"LMFDB request failed: {e}; retry later or pass --input with a snapshot") from e
        if r.status_code == 429:
            ra = r.headers.get("Retry-After", "60")
            raise FetchError(f"LMFDB rate limit hit; retry after {ra} s")
        if r.status_code != 200:
            raise FetchError(f"LMFDB returned HTTP {r.status_code}; retry later or pass --input")
        try:
            return r.json()
        except ValueError as e:
            raise FetchError("LMFDB response is not JSON") from e

    def fetch_raw(self, query: dict, max_disc: int | None = None) -> list[dict]:
        q = dict(query)
        if max_disc is not None:
            q["disc_abs"] = f"1-{max_disc}"
        cache = self.cache_dir / f"{query_key(q)}.json"
        if cache.exists():
            return json.loads(cache.read_text())
        rows: list[dict] = []
        offset = 0
        while True:
            params = {**q, "_format": "json", "_fields": ",".join(FIELD_MAP),
                      "_limit": self.page_size, "_offset": offset}
            page = self._get(params)
            data = page.get("data", [])
            rows.extend(data)
            if len(data) < self.page_size or not page.get("next"):
                break
            offset += len(data)
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        cache.write_text(json.dumps(rows))
        return rows

    def fetch_a4(self, max_disc: int | None = None) -> list[FieldRecord]:
        return [record_from_row(r) for r in self.fetch_raw(A4_QUERY, max_disc)]


def cubic_resolvent(coeffs: Sequence[int]) -> list[int]:
    """Resolvent cubic of x^4 + b x^3 + c x^2 + d x + e, as coefficients from the constant term up."""
    e, d, c, b, lead = [int(x) for x in coeffs]
    if lead != 1:
        raise ValueError("expected a monic quartic")
    # roots x1 x2 + x3 x4 etc.
    return [-(b * b * e - 4 * c * e + d * d), b * d - 4 * e, -c, 1]


def field_discriminant(coeffs: Sequence[int]) -> int:
    from sympy import Poly, symbols
    from sympy.polys.numberfields.basis import round_two
    x = symbols("x")
    f = Poly(list(reversed([int(a) for a in coeffs])), x)
    return int(round_two(f)[1])


def record_from_row(row: dict) -> FieldRecord:
    r = {FIELD_MAP[k]: v for k, v in row.items() if k in FIELD_MAP}
    res = cubic_resolvent(r["coeffs"])
    dl = abs(field_discriminant(res))
    sig = "4,0" if int(r["r2"]) == 0 else "0,2"
    return FieldRecord(str(r["label"]), abs(int(r["disc_K"])), dl, sig)


def write_snapshot(records: Iterable[FieldRecord], path: Path | str):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["label", "disc_K", "disc_resolvent", "signature"])
        for r in records:
            w.writerow([r.label, r.disc_K, r.disc_resolvent, r.signature])


def read_snapshot(path: Path | str) -> list[FieldRecord]:
    with open(path, newline="") as fh:
        rd = csv.DictReader(fh)
        missing = {"label", "disc_K", "disc_resolvent", "signature"} - set(rd.fieldnames or [])
        if missing:
            raise ValueError(f"snapshot is missing columns {sorted(missing)}")
        return [FieldRecord(row["label"], int(row["disc_K"]), int(row["disc_resolvent"]), row["signature"])
                for row in rd]


def a4_conductor_height(r: FieldRecord) -> float:
    """H(K) = |disc K| |disc L|^(-1/2) with L the cubic resolvent."""
    return r.disc_K / r.disc_resolvent ** 0.5


def empirical_density(records: Sequence[FieldRecord], B: float, height=a4_conductor_height,
                      groupoid: int = 2) -> dict:
    """groupoid * #{H <= B} / B per signature, and the totally real share."""
    counts = {"4,0": 0, "0,2": 0}
    for r in records:
        if height(r) <= B:
            counts[r.signature] = counts.get(r.signature, 0) + 1
    tot = counts["4,0"] + counts["0,2"]
    if B <= 0:
        return {"R^4": 0.0, "C^2": 0.0, "share_totally_real": 0.0, "counts": counts}
    return {
        "R^4": groupoid * counts["4,0"] / B,
        "C^2": groupoid * counts["0,2"] / B,
        "share_totally_real": counts["4,0"] / tot if tot else 0.0,
        "counts": counts,
    }


def bundled_snapshot() -> Path | None:
    from importlib import resources
    p = resources.files("malle").joinpath("data/a4_quartics.csv")
    return Path(str(p)) if p.is_file() else None
