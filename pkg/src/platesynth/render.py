"""Scripted synthetic plate rendering.

Single-row blue-plate geometry at 1 px/mm: a 440x140 canvas with seven
45x90 glyph cells at y=25 and a separator dot between the second and third
cells. Glyphs are composited through a thresholded mask so foreground pixels
are exactly the requested glyph color, which keeps renders byte-reproducible
and makes per-cell coverage easy to audit.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from fontTools.ttLib import TTFont
from PIL import Image, ImageDraw, ImageFont

from .alphabet import DEFAULT_ALPHABET, PlateAlphabet, label_errors, sample_label
from .errors import FontLoadError, MissingGlyph, PlatesynthError
from .manifest import ManifestRecord, write_manifest
from .seeding import mix64

ASSET_FONT_DIR = Path(__file__).resolve().parent / "assets" / "fonts"

CANVAS_W = 440
CANVAS_H = 140
CELL_W = 45
CELL_H = 90
CELL_Y = 25
CELL_X = (15, 72, 151, 208, 265, 322, 379)

# plate-blue background, white glyphs
PLATE_BLUE = (10, 80, 180)
GLYPH_WHITE = (255, 255, 255)

MIN_CELL_COVERAGE = 0.01


@dataclass(frozen=True)
class RenderSpec:
    canvas_w: int = CANVAS_W
    canvas_h: int = CANVAS_H
    background_color: tuple[int, int, int] = PLATE_BLUE
    glyph_color: tuple[int, int, int] = GLYPH_WHITE
    font_province: str = str(ASSET_FONT_DIR / "plate_province.ttf")
    font_latin: str = str(ASSET_FONT_DIR / "DejaVuSans-Bold.ttf")
    cells: tuple[tuple[int, int, int, int], ...] = tuple(
        (x, CELL_Y, CELL_W, CELL_H) for x in CELL_X
    )
    separator_radius: int = 6

    def __post_init__(self):
        if len(self.cells) != 7:
            raise PlatesynthError("a plate layout needs exactly 7 glyph cells")
        if self.background_color == self.glyph_color:
            raise PlatesynthError("glyph color must differ from background color")
        boxes = []
        for x, y, w, h in self.cells:
            if x < 0 or y < 0 or x + w > self.canvas_w or y + h > self.canvas_h:
                raise PlatesynthError(f"cell {(x, y, w, h)} exceeds the canvas")
            boxes.append((x, y, x + w, y + h))
        for i, a in enumerate(boxes):
            for b in boxes[i + 1 :]:
                if a[0] < b[2] and b[0] < a[2] and a[1] < b[3] and b[1] < a[3]:
                    raise PlatesynthError("glyph cells must not overlap")

    @property
    def separator_center(self) -> tuple[int, int]:
        """Midpoint between cell 2's right edge and cell 3's left edge."""
        left = self.cells[1][0] + self.cells[1][2]
        right = self.cells[2][0]
        return ((left + right) // 2, self.canvas_h // 2)


class _LoadedFont:
    """A font file plus its code-point coverage and a per-glyph size cache."""

    def __init__(self, path: str):
        self.path = path
        try:
            with TTFont(path, lazy=True) as tt:
                self.coverage = frozenset(tt.getBestCmap().keys())
        except Exception as exc:
            raise FontLoadError(f"cannot load font {path}: {exc}") from exc
        self._sized: dict[int, ImageFont.FreeTypeFont] = {}
        self._fit: dict[tuple[str, int, int], tuple[int, tuple[int, int, int, int]]] = {}

    def covers(self, ch: str) -> bool:
        return ord(ch) in self.coverage

    def at_size(self, size: int) -> ImageFont.FreeTypeFont:
        font = self._sized.get(size)
        if font is None:
            try:
                font = ImageFont.truetype(self.path, size)
            except OSError as exc:
                raise FontLoadError(f"cannot load font {self.path}: {exc}") from exc
            self._sized[size] = font
        return font

    def fit(self, ch: str, cell_w: int, cell_h: int):
        """Largest integer font size whose ink box for ``ch`` fits the cell."""
        key = (ch, cell_w, cell_h)
        if key in self._fit:
            return self._fit[key]
        probe = 100
        bbox = self.at_size(probe).getbbox(ch)
        if bbox is None:
            raise MissingGlyph(f"font {self.path} renders nothing for {ch!r}")
        bw, bh = max(1, bbox[2] - bbox[0]), max(1, bbox[3] - bbox[1])
        size = max(1, int(probe * min(cell_w / bw, cell_h / bh)))
        while size > 1:
            bbox = self.at_size(size).getbbox(ch)
            bw, bh = bbox[2] - bbox[0], bbox[3] - bbox[1]
            if bw <= cell_w and bh <= cell_h:
                break
            size -= 1
        self._fit[key] = (size, bbox)
        return self._fit[key]


_FONT_CACHE: dict[str, _LoadedFont] = {}


def _font(path: str) -> _LoadedFont:
    font = _FONT_CACHE.get(path)
    if font is None:
        font = _LoadedFont(path)
        _FONT_CACHE[path] = font
    return font


def render_plate(
    label: str,
    spec: RenderSpec = RenderSpec(),
    seed: int = 0,
    alphabet: PlateAlphabet = DEFAULT_ALPHABET,
) -> np.ndarray:
    """Rasterize a 7-glyph label onto the plate canvas.

    A pure function of (label, spec, seed); the layout itself is fixed, the
    seed is accepted for interface symmetry with the batch pipeline and
    recorded in manifests for provenance.
    """
    problems = label_errors(label, alphabet)
    if problems:
        raise PlatesynthError(f"label {label!r} violates the grammar: {problems[0]}")

    province_font = _font(spec.font_province)
    latin_font = _font(spec.font_latin)
    for pos, ch in enumerate(label):
        font = province_font if pos == 0 else latin_font
        if not font.covers(ch):
            raise MissingGlyph(f"font {font.path} lacks code point for {ch!r}")

    canvas = Image.new("RGB", (spec.canvas_w, spec.canvas_h), spec.background_color)
    for pos, ch in enumerate(label):
        font = province_font if pos == 0 else latin_font
        cx, cy, cw, ch_px = spec.cells[pos]
        size, bbox = font.fit(ch, cw, ch_px)
        bw, bh = bbox[2] - bbox[0], bbox[3] - bbox[1]
        mask = Image.new("L", (cw, ch_px), 0)
        ImageDraw.Draw(mask).text(
            (-bbox[0] + (cw - bw) // 2, -bbox[1] + (ch_px - bh) // 2),
            ch,
            font=font.at_size(size),
            fill=255,
        )
        binary = mask.point(lambda v: 255 if v >= 128 else 0)
        canvas.paste(spec.glyph_color, box=(cx, cy), mask=binary)

    dot_x, dot_y = spec.separator_center
    r = spec.separator_radius
    ImageDraw.Draw(canvas).ellipse(
        (dot_x - r, dot_y - r, dot_x + r, dot_y + r), fill=spec.glyph_color
    )

    out = np.asarray(canvas, dtype=np.uint8)
    _check_cell_coverage(out, spec)
    return out


def _check_cell_coverage(img: np.ndarray, spec: RenderSpec) -> None:
    fg = np.array(spec.glyph_color, dtype=np.uint8)
    for x, y, w, h in spec.cells:
        assert x + w <= spec.canvas_w and y + h <= spec.canvas_h
        cell = img[y : y + h, x : x + w]
        coverage = np.mean(np.all(cell == fg, axis=2))
        assert coverage >= MIN_CELL_COVERAGE, (
            f"glyph cell at {(x, y)} has only {coverage:.2%} foreground"
        )


def batch_render(
    count: int,
    master_seed: int,
    spec: RenderSpec = RenderSpec(),
    out_dir: str | Path = "renders",
    alphabet: PlateAlphabet = DEFAULT_ALPHABET,
    threads: int = 1,
) -> list[ManifestRecord]:
    """Render ``count`` plates with per-record seeds split off ``master_seed``.

    Writes PNGs under ``out_dir/images`` plus ``out_dir/manifest.jsonl`` and
    returns the records in index order. Record i uses seed
    ``mix64(master_seed, i)``, so output is independent of scheduling.
    """
    if count < 0:
        raise PlatesynthError(f"count must be non-negative, got {count}")
    out_dir = Path(out_dir)
    (out_dir / "images").mkdir(parents=True, exist_ok=True)

    def one(index: int) -> ManifestRecord:
        seed = mix64(master_seed, index)
        label = sample_label(seed, alphabet)
        img = render_plate(label, spec, seed, alphabet)
        rel = f"images/script_{index:06d}.png"
        from .images import save_png

        save_png(img, out_dir / rel)
        return ManifestRecord(
            id=f"script_{index:06d}",
            path=rel,
            label=label,
            source="script",
            seed=seed,
        )

    if threads > 1 and count > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(one, range(count)))
    else:
        records = [one(i) for i in range(count)]
    write_manifest(records, out_dir / "manifest.jsonl")
    return records
