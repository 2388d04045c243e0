"""Eigenvalue-table JSON ingestion, validation, and the fetch cache.

Wire format:

    {"label": "11.2.a.a", "level": 11, "rank": 2,
     "weight_parity": 1 | -1 | null,
     "ap": {"2": [re, im], "3": [re, im], ...}}

Primes are decimal-string keys and complex values are two-element arrays,
so the files are trivially producible from external sources.  Network
access lives only in :func:`fetch_table`; everything else is pure and
offline, and fetched documents are cached per label under
``$TWISTBOUND_CACHE`` (default ``~/.cache/twistbound``).
"""

from __future__ import annotations

import json
import os
import re
import urllib.error
import urllib.request
from pathlib import Path
from typing import Callable

from .factored import factor
from .scan import EigenvalueTable

__all__ = [
    "TableFormatError",
    "FetchError",
    "table_to_json",
    "table_from_json",
    "load_table",
    "save_table",
    "cache_dir",
    "cache_path",
    "fetch_table",
    "BASE_URL_ENV",
    "CACHE_ENV",
]

BASE_URL_ENV = "TWISTBOUND_LMFDB_URL"
CACHE_ENV = "TWISTBOUND_CACHE"


class TableFormatError(ValueError):
    """The document does not satisfy the eigenvalue-table schema."""


class FetchError(OSError):
    """Fetching failed and no cached copy exists."""


def table_to_json(table: EigenvalueTable) -> dict:
    return {
        "label": table.label,
        "level": table.level_value,
        "rank": table.rank,
        "weight_parity": table.weight_parity,
        "ap": {
            str(p): [z.real, z.imag] for p, z in sorted(table.ap.items())
        },
    }


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise TableFormatError(message)


def table_from_json(doc: object) -> EigenvalueTable:
    """Validate a parsed JSON document and build the table."""
    _require(isinstance(doc, dict), "top level must be an object")
    assert isinstance(doc, dict)
    unknown = set(doc) - {"label", "level", "rank", "weight_parity", "ap"}
    _require(not unknown, f"unknown keys: {sorted(unknown)}")

    label = doc.get("label")
    _require(isinstance(label, str) and bool(label), "label must be a nonempty string")

    level = doc.get("level")
    _require(
        isinstance(level, int) and not isinstance(level, bool) and level >= 1,
        "level must be an integer >= 1",
    )

    rank = doc.get("rank", 2)
    _require(
        isinstance(rank, int) and not isinstance(rank, bool) and rank >= 1,
        "rank must be an integer >= 1",
    )

    parity = doc.get("weight_parity")
    _require(parity in (None, 1, -1), "weight_parity must be 1, -1 or null")

    ap_doc = doc.get("ap")
    _require(isinstance(ap_doc, dict), "ap must be an object")
    assert isinstance(ap_doc, dict)
    ap: dict[int, complex] = {}
    for key, val in ap_doc.items():
        _require(
            isinstance(key, str) and re.fullmatch(r"[1-9][0-9]*", key) is not None,
            f"ap key {key!r} is not a decimal prime",
        )
        p = int(key)
        _require(
            isinstance(val, list)
            and len(val) == 2
            and all(
                isinstance(x, (int, float)) and not isinstance(x, bool) for x in val
            ),
            f"ap[{key}] must be a [re, im] pair",
        )
        ap[p] = complex(val[0], val[1])
    try:
        return EigenvalueTable(
            label=label,
            level=factor(level),
            ap=ap,
            rank=rank,
            weight_parity=parity,
        )
    except ValueError as exc:
        raise TableFormatError(str(exc)) from exc


def load_table(path: str | Path) -> EigenvalueTable:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FetchError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"{path}: invalid JSON: {exc}") from exc
    return table_from_json(doc)


def save_table(table: EigenvalueTable, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(table_to_json(table), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "twistbound"


def cache_path(label: str, cache: Path | None = None) -> Path:
    safe = re.sub(r"[^A-Za-z0-9._-]", "_", label)
    return (cache if cache is not None else cache_dir()) / f"{safe}.json"


def _default_fetcher(url: str) -> bytes:
    with urllib.request.urlopen(url, timeout=30) as resp:
        return resp.read()


def fetch_table(
    label: str,
    base_url: str | None = None,
    cache: Path | None = None,
    fetcher: Callable[[str], bytes] | None = None,
) -> Path:
    """Return the path of the cached table for ``label``, fetching on miss.

    The cached copy is served without touching the network.  On a miss the
    document is fetched from ``{base_url}/{label}.json``, validated, and
    written to the cache; any failure without a cached copy raises
    :class:`FetchError`.
    """
    path = cache_path(label, cache)
    if path.is_file():
        return path
    base = base_url or os.environ.get(BASE_URL_ENV)
    if not base:
        raise FetchError(
            f"no cached copy of {label!r} and no base URL "
            f"(flag --base-url or ${BASE_URL_ENV})"
        )
    url = f"{base.rstrip('/')}/{label}.json"
    get = fetcher if fetcher is not None else _default_fetcher
    try:
        raw = get(url)
    except (urllib.error.URLError, OSError, ValueError) as exc:
        raise FetchError(f"fetching {url} failed: {exc}") from exc
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FetchError(f"{url}: response is not valid JSON: {exc}") from exc
    table = table_from_json(doc)  # may raise TableFormatError
    path.parent.mkdir(parents=True, exist_ok=True)
    save_table(table, path)
    return path
