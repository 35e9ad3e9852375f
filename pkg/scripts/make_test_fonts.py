#!/usr/bin/env python3
"""Regenerate the fonts bundled under src/platesynth/assets/fonts/.

Two files are produced:

* ``plate_province.ttf`` -- a synthetic font covering the 31 province
  code points. Each glyph is a dense, deterministic block pattern (distinct
  per code point), standing in for licensed CJK glyph data.
* ``DejaVuSans-Bold.ttf`` -- an unmodified copy of the permissively licensed
  DejaVu Sans Bold shipped with matplotlib, used for letters and digits.

Run from the repository root:  python scripts/make_test_fonts.py
"""

from __future__ import annotations

import shutil
import sys
from pathlib import Path

from fontTools.fontBuilder import FontBuilder
from fontTools.pens.ttGlyphPen import TTGlyphPen

REPO = Path(__file__).resolve().parent.parent
OUT_DIR = REPO / "src" / "platesynth" / "assets" / "fonts"

sys.path.insert(0, str(REPO / "src"))
from platesynth.alphabet import PROVINCES  # noqa: E402
from platesynth.seeding import mix64  # noqa: E402

UPM = 1000
GRID = 5  # block pattern resolution
BOX = (80, -120, 920, 780)  # xmin, ymin, xmax, ymax of the pattern box


def _rect(pen: TTGlyphPen, x0: float, y0: float, x1: float, y1: float) -> None:
    pen.moveTo((round(x0), round(y0)))
    pen.lineTo((round(x1), round(y0)))
    pen.lineTo((round(x1), round(y1)))
    pen.lineTo((round(x0), round(y1)))
    pen.closePath()


def _block_glyph(codepoint: int) -> TTGlyphPen:
    """Dense 5x5 block pattern keyed by the code point.

    The top and bottom rows are always filled so every glyph spans the full
    pattern box; interior cells come from a seed-derived bit field, topped up
    deterministically if the pattern would be too sparse.
    """
    bits = mix64(codepoint, 0)
    filled = {(r, c) for c in range(GRID) for r in (0, GRID - 1)}
    for r in range(1, GRID - 1):
        for c in range(GRID):
            if (bits >> (r * GRID + c)) & 1:
                filled.add((r, c))
    for k in range(GRID * GRID):  # top-up for sparse patterns
        if len(filled) >= 16:
            break
        filled.add(((k * 7) % GRID, (k * 3 + codepoint) % GRID))

    pen = TTGlyphPen(None)
    x0, y0, x1, y1 = BOX
    cw = (x1 - x0) / GRID
    ch = (y1 - y0) / GRID
    pad = 0.08  # fractional gap so adjacent cells read as strokes
    for r, c in sorted(filled):
        _rect(
            pen,
            x0 + (c + pad) * cw,
            y1 - (r + 1 - pad) * ch,
            x0 + (c + 1 - pad) * cw,
            y1 - (r + pad) * ch,
        )
    return pen


def build_province_font(path: Path) -> None:
    names = [f"uni{ord(ch):04X}" for ch in PROVINCES]
    order = [".notdef"] + names
    cmap = {ord(ch): f"uni{ord(ch):04X}" for ch in PROVINCES}

    glyphs = {".notdef": TTGlyphPen(None).glyph()}
    for ch, name in zip(PROVINCES, names):
        glyphs[name] = _block_glyph(ord(ch)).glyph()

    fb = FontBuilder(UPM, isTTF=True)
    fb.setupGlyphOrder(order)
    fb.setupCharacterMap(cmap)
    fb.setupGlyf(glyphs)
    metrics = {name: (UPM, 0) for name in order}
    fb.setupHorizontalMetrics(metrics)
    fb.setupHorizontalHeader(ascent=800, descent=-200)
    fb.setupNameTable(
        {
            "familyName": "Plate Province Blocks",
            "styleName": "Regular",
            "fullName": "Plate Province Blocks",
            "psName": "PlateProvinceBlocks-Regular",
        }
    )
    fb.setupOS2(sTypoAscender=800, sTypoDescender=-200, usWinAscent=800, usWinDescent=200)
    fb.setupPost()
    fb.save(str(path))
    print(f"wrote {path} ({len(names)} glyphs)")


def copy_latin_font(path: Path) -> None:
    import matplotlib

    src = Path(matplotlib.get_data_path()) / "fonts" / "ttf" / "DejaVuSans-Bold.ttf"
    shutil.copyfile(src, path)
    print(f"copied {src} -> {path}")


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    build_province_font(OUT_DIR / "plate_province.ttf")
    copy_latin_font(OUT_DIR / "DejaVuSans-Bold.ttf")


if __name__ == "__main__":
    main()
