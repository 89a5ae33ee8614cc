"""JSON brace documents and the on-disk catalog.

Documents are written canonically (sorted keys, compact separators,
integers only, trailing newline) so their SHA-256 digests are reproducible.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .brace import SkewBrace, brace_from_tables, is_classical, is_trivial, is_two_sided
from .errors import BraceForgeError, DocumentError

FORMAT_VERSION = "1"
INDEX_NAME = "index.json"


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def brace_document(A: SkewBrace, **metadata) -> dict:
    meta = {
        "two_sided": is_two_sided(A),
        "classical": is_classical(A),
        "trivial": is_trivial(A),
    }
    meta.update(metadata)
    return {
        "format_version": FORMAT_VERSION,
        "order": A.order,
        "add_table": A.add.to_list(),
        "mul_table": A.mul.to_list(),
        "metadata": meta,
    }


def parse_document(text: str) -> dict:
    """Parse and schema-check a document; raises DocumentError."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise DocumentError(f"unsupported format_version {doc.get('format_version')!r}")
    n = doc.get("order")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DocumentError("order must be a positive integer")
    for key in ("add_table", "mul_table"):
        table = doc.get(key)
        if (
            not isinstance(table, list)
            or len(table) != n
            or not all(isinstance(row, list) and len(row) == n for row in table)
            or not all(isinstance(x, int) and not isinstance(x, bool) for row in table for x in row)
        ):
            raise DocumentError(f"{key} must be an {n}x{n} array of integers")
    if not isinstance(doc.get("metadata", {}), dict):
        raise DocumentError("metadata must be an object")
    return doc


def document_brace(doc: dict) -> SkewBrace:
    """Validate the tables of a parsed document; axiom failures propagate with witnesses."""
    return brace_from_tables(doc["add_table"], doc["mul_table"])


def metadata_mismatches(doc: dict, A: SkewBrace) -> list:
    """Metadata flags that disagree with recomputation."""
    meta = doc.get("metadata", {})
    computed = {"two_sided": is_two_sided(A), "classical": is_classical(A), "trivial": is_trivial(A)}
    return [k for k, v in computed.items() if k in meta and meta[k] != v]


def read_document(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from None
    return parse_document(text)


def write_document(path, doc: dict) -> str:
    """Write canonically; returns the SHA-256 of the written text."""
    text = canonical_dumps(doc)
    Path(path).write_text(text, encoding="utf-8")
    return sha256_text(text)


# ---------------------------------------------------------------------------
# catalog


@dataclass
class CatalogEntry:
    id: str
    order: int
    source: str
    sha256: str
    path: str

    def as_dict(self) -> dict:
        return {"id": self.id, "order": self.order, "source": self.source, "sha256": self.sha256, "path": self.path}


@dataclass
class LoadedCatalog:
    braces: list = field(default_factory=list)  # (id, SkewBrace)
    rejected: list = field(default_factory=list)  # (id, reason)


def write_catalog(out_dir, corpora: dict, names: Optional[dict] = None) -> list:
    """Write one document per brace plus index.json; returns the entries.

    ``corpora`` maps order to a sequence of braces.  ``names`` optionally
    maps an additive-group key to a short group name for metadata.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    for n in sorted(corpora):
        sub = out / f"order-{n}"
        sub.mkdir(exist_ok=True)
        for k, B in enumerate(corpora[n]):
            bid = f"n{n}-{k:04d}"
            meta = {"source": "enumeration", "id": bid}
            if names and B.add.key in names:
                meta["add_group"] = names[B.add.key]
            rel = f"order-{n}/{bid}.json"
            digest = write_document(out / rel, brace_document(B, **meta))
            entries.append(CatalogEntry(bid, n, "enumeration", digest, rel))
    index = {"format_version": FORMAT_VERSION, "entries": [e.as_dict() for e in entries]}
    (out / INDEX_NAME).write_text(canonical_dumps(index), encoding="utf-8")
    return entries


def read_index(catalog_dir) -> list:
    path = Path(catalog_dir) / INDEX_NAME
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
        return [CatalogEntry(**e) for e in raw["entries"]]
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise DocumentError(f"bad catalog index {path}: {exc}") from None


def load_catalog(catalog_dir) -> LoadedCatalog:
    """Load and re-validate every document; failures are collected, not raised.

    Without an index.json every ``*.json`` file below the directory is loaded.
    """
    root = Path(catalog_dir)
    if not root.is_dir():
        raise DocumentError(f"catalog directory {root} does not exist")
    if (root / INDEX_NAME).exists():
        items = [(e.id, root / e.path, e.sha256) for e in read_index(root)]
    else:
        items = [(str(p.relative_to(root)), p, None) for p in sorted(root.rglob("*.json"))]
    loaded = LoadedCatalog()
    for bid, path, digest in items:
        try:
            text = path.read_text(encoding="utf-8")
            brace = document_brace(parse_document(text))
            if digest is not None and sha256_text(text) != digest:
                raise DocumentError("content hash does not match index")
            loaded.braces.append((bid, brace))
        except (OSError, BraceForgeError) as exc:
            loaded.rejected.append((bid, f"{type(exc).__name__}: {exc}"))
    return loaded
