"""Image buffer conventions and PNG io.

Images are numpy uint8 arrays: RGB is (h, w, 3), grayscale is (h, w).
All disk io goes through PIL so color images stay in RGB channel order
(cv2 is used only for channel-order-agnostic filtering and warping).
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

from .errors import WrongChannelCount


def channels_of(img: np.ndarray) -> int:
    if img.ndim == 2:
        return 1
    if img.ndim == 3 and img.shape[2] in (1, 3):
        return img.shape[2]
    raise WrongChannelCount(f"unsupported image shape {img.shape}")


def require_uint8(img: np.ndarray) -> np.ndarray:
    if not isinstance(img, np.ndarray) or img.dtype != np.uint8:
        raise TypeError("images must be numpy uint8 arrays")
    channels_of(img)
    return img


def require_channels(img: np.ndarray, channels: int) -> np.ndarray:
    require_uint8(img)
    if channels_of(img) != channels:
        raise WrongChannelCount(
            f"expected {channels}-channel image, got {channels_of(img)}"
        )
    return img


def load_png(path: str | Path) -> np.ndarray:
    """Read a PNG as uint8, RGB (h, w, 3) or grayscale (h, w)."""
    with Image.open(path) as im:
        if im.mode == "L":
            return np.asarray(im, dtype=np.uint8)
        return np.asarray(im.convert("RGB"), dtype=np.uint8)


def save_png(img: np.ndarray, path: str | Path) -> None:
    require_uint8(img)
    arr = img[:, :, 0] if img.ndim == 3 and img.shape[2] == 1 else img
    mode = "L" if arr.ndim == 2 else "RGB"
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(arr, mode=mode).save(path, format="PNG")
