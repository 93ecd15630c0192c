"""JSON persistence of intermediate artifacts (filtered timelines, built networks)."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

from egocircles.errors import FatalFormat
from egocircles.ingestion import EgoTimeline
from egocircles.model import LayeredEgoNetwork

FORMAT_VERSION = 1


def _dump(doc: dict, path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, sort_keys=True, ensure_ascii=False, separators=(",", ":"))
        fh.write("\n")


def save_timelines(timelines: Iterable[EgoTimeline], path: Path) -> None:
    items = sorted(timelines, key=lambda t: t.ego_id)
    _dump({"kind": "timelines", "version": FORMAT_VERSION, "egos": [t.to_dict() for t in items]}, path)


def save_networks(networks: Iterable[LayeredEgoNetwork], path: Path) -> None:
    items = sorted(networks, key=lambda n: n.ego_id)
    _dump({"kind": "networks", "version": FORMAT_VERSION, "networks": [n.to_dict() for n in items]}, path)


def load_document(path: Path) -> tuple[str, list]:
    """Return ``('timelines', [...])`` or ``('networks', [...])`` for a saved artifact."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FatalFormat(f"{path}: not a JSON artifact ({exc})") from None
    kind = doc.get("kind") if isinstance(doc, dict) else None
    if kind == "timelines":
        return kind, [EgoTimeline.from_dict(d) for d in doc["egos"]]
    if kind == "networks":
        return kind, [LayeredEgoNetwork.from_dict(d) for d in doc["networks"]]
    raise FatalFormat(f"{path}: unknown artifact kind {kind!r}")
