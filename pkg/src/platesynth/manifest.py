"""Corpus manifest records and JSON Lines io.

A manifest is the single contract describing a corpus: one UTF-8 JSON object
per line with fields id, path, label, source, seed, transforms[] and
inverted. Paths are stored relative to the manifest file's directory.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .augment import AugmentStep
from .errors import ManifestError

SOURCE_TAGS = ("script", "cyclewgan", "cyclewgan_gp", "augmented_real", "real")


@dataclass
class ManifestRecord:
    id: str
    path: str
    label: str
    source: str
    seed: int
    transforms: list[AugmentStep] = field(default_factory=list)
    inverted: bool = False

    def __post_init__(self):
        if self.source not in SOURCE_TAGS:
            raise ManifestError(f"unknown source tag {self.source!r}")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "path": self.path,
            "label": self.label,
            "source": self.source,
            "seed": self.seed,
            "transforms": [step.to_dict() for step in self.transforms],
            "inverted": self.inverted,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ManifestRecord":
        try:
            return cls(
                id=data["id"],
                path=data["path"],
                label=data["label"],
                source=data["source"],
                seed=int(data["seed"]),
                transforms=[AugmentStep.from_dict(t) for t in data.get("transforms", [])],
                inverted=bool(data.get("inverted", False)),
            )
        except KeyError as exc:
            raise ManifestError(f"manifest row missing field {exc}") from exc


def write_manifest(records: list[ManifestRecord], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record.to_dict(), ensure_ascii=False) + "\n")
    return path


def read_manifest(path: str | Path) -> list[ManifestRecord]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                records.append(ManifestRecord.from_dict(json.loads(line)))
            except (json.JSONDecodeError, ManifestError) as exc:
                raise ManifestError(f"{path}:{lineno}: {exc}") from exc
    return records


def resolve_path(manifest_path: str | Path, record: ManifestRecord) -> Path:
    """Absolute location of a record's image file."""
    return (Path(manifest_path).parent / record.path).resolve()
