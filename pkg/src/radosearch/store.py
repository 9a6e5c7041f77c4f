"""On-disk store of coloring certificates (one JSON file per certificate)."""

from __future__ import annotations

import datetime as _dt
import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import __version__
from .equation import Coloring, Equation, is_excellent_coloring, is_good_coloring
from .search import SearchStatus, rado_number

KINDS = ("good", "excellent")
DEFAULT_STORE_ENV = "RADOSEARCH_STORE"


class IntegrityError(Exception):
    """A certificate failed verification on store or load."""


@dataclass(frozen=True)
class Certificate:
    kind: str
    coeffs: tuple[int, ...]
    shift: int
    num_colors: int
    colors: tuple[int, ...]
    exact: bool = False  # engine proved no longer coloring of this kind exists
    created_at: str = field(default_factory=lambda: _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"))
    engine_version: str = __version__

    @property
    def length(self) -> int:
        return len(self.colors)

    @property
    def coloring(self) -> Coloring:
        return Coloring(self.num_colors, self.colors)

    @property
    def key(self) -> str:
        return certificate_key(self.kind, self.coeffs, self.num_colors, self.length, self.shift)

    def verify(self) -> bool:
        if self.kind == "good":
            return is_good_coloring(Equation(self.coeffs, self.shift), self.coloring)
        if self.kind == "excellent":
            return self.shift == 0 and is_excellent_coloring(self.coeffs, self.coloring)
        return False

    def payload(self) -> dict:
        d = {
            "kind": self.kind,
            "coeffs": list(self.coeffs),
            "shift": self.shift,
            "num_colors": self.num_colors,
            "length": self.length,
            "colors": " ".join(map(str, self.colors)),
            "exact": self.exact,
            "created_at": self.created_at,
            "engine_version": self.engine_version,
        }
        if self.kind == "excellent":
            d["j_range"] = [0, sum(self.coeffs) - 1]
        return d

    @classmethod
    def from_payload(cls, d: dict) -> Certificate:
        colors = tuple(int(c) for c in d["colors"].split())
        if len(colors) != d["length"]:
            raise IntegrityError(f"length field {d['length']} disagrees with {len(colors)} colors")
        return cls(
            kind=d["kind"],
            coeffs=tuple(d["coeffs"]),
            shift=int(d["shift"]),
            num_colors=int(d["num_colors"]),
            colors=colors,
            exact=bool(d["exact"]),
            created_at=d["created_at"],
            engine_version=d["engine_version"],
        )


def certificate_key(kind: str, coeffs: Sequence[int], t: int, n: int, shift: int = 0) -> str:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    c = "-".join(map(str, coeffs))
    if kind == "excellent":
        return f"excellent_c{c}_t{t}_n{n}"
    return f"good_c{c}_b{shift}_t{t}_n{n}"


def _digest(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def default_store_path() -> Path:
    return Path(os.environ.get(DEFAULT_STORE_ENV, ".radosearch-store"))


class CertificateStore:
    """Directory of human-readable certificate files.

    Every file carries a sha256 digest of its payload, and the coloring is
    re-verified on every load, so edited files are rejected either way.
    """

    def __init__(self, root: str | os.PathLike | None = None):
        self.root = Path(root) if root is not None else default_store_path()

    def path_for(self, key: str) -> Path:
        return self.root / f"{key}.json"

    def store(self, cert: Certificate) -> str:
        if not cert.verify():
            raise IntegrityError(f"refusing to store unverified certificate {cert.key}")
        self.root.mkdir(parents=True, exist_ok=True)
        payload = cert.payload()
        doc = {"payload": payload, "sha256": _digest(payload)}
        path = self.path_for(cert.key)
        tmp = path.with_suffix(".json.tmp")
        tmp.write_text(json.dumps(doc, indent=2) + "\n")
        tmp.replace(path)
        return cert.key

    def _read(self, path: Path) -> Certificate:
        try:
            doc = json.loads(path.read_text())
            payload = doc["payload"]
            digest = doc["sha256"]
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise IntegrityError(f"unreadable certificate {path.name}: {exc}") from exc
        if _digest(payload) != digest:
            raise IntegrityError(f"digest mismatch in {path.name}")
        try:
            cert = Certificate.from_payload(payload)
        except (KeyError, ValueError, TypeError) as exc:
            raise IntegrityError(f"malformed certificate {path.name}: {exc}") from exc
        if not cert.verify():
            raise IntegrityError(f"coloring in {path.name} does not verify")
        if path.stem != cert.key:
            raise IntegrityError(f"{path.name} holds certificate {cert.key}")
        return cert

    def load(self, kind: str, coeffs: Sequence[int], t: int, n: int, shift: int = 0) -> Certificate | None:
        path = self.path_for(certificate_key(kind, coeffs, t, n, shift))
        if not path.exists():
            return None
        return self._read(path)

    def find_exact(self, kind: str, coeffs: Sequence[int], t: int, shift: int = 0) -> Certificate | None:
        """The longest stored certificate for this key flagged exact, if any."""
        if not self.root.is_dir():
            return None
        prefix = certificate_key(kind, coeffs, t, 0, shift).rsplit("_n", 1)[0] + "_n"
        best = None
        for path in sorted(self.root.glob(f"{prefix}*.json")):
            if not path.stem[len(prefix):].isdigit():
                continue
            cert = self._read(path)
            if cert.exact and (best is None or cert.length > best.length):
                best = cert
        return best

    def __iter__(self):
        if self.root.is_dir():
            for path in sorted(self.root.glob("*.json")):
                yield self._read(path)


@dataclass(frozen=True)
class CachedResult:
    status: SearchStatus
    value: int
    witness: Coloring
    method: str  # "store" or "search"
    elapsed: float = 0.0


def cached_rado_number(
    eq: Equation,
    t: int,
    cap: int,
    store: CertificateStore | None = None,
    *,
    force: bool = False,
    threads: int = 1,
    budget: float | None = None,
) -> CachedResult:
    """rado_number, answered from ``store`` when an exact certificate exists.

    Exact search results are written back to the store.
    """
    if store is not None and not force:
        cert = store.find_exact("good", eq.coeffs, t, shift=eq.shift)
        if cert is not None:
            return CachedResult(SearchStatus.EXACT, cert.length + 1, cert.coloring, "store")
    res = rado_number(eq, t, cap, threads=threads, budget=budget)
    if store is not None and res.status is SearchStatus.EXACT:
        store.store(Certificate("good", eq.coeffs, eq.shift, t, res.witness.colors, exact=True))
    return CachedResult(res.status, res.value, res.witness, "search", res.elapsed)
