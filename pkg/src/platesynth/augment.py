"""The six plate augmentation transforms plus grayscale/inversion/resizing.

Every transform is a pure function of its arguments (noise is driven by an
explicit seed), preserves the source dimensions, resamples bilinearly and
replicates edges, so batches can run in parallel and any output can be
reproduced byte-exactly by replaying its transform log.

Chains apply an independently sampled subset of the six kinds in a fixed
geometric -> photometric -> noise order so logs stay canonical:
affine, stretch, morphology, motion_blur, uneven_light, degrade.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict
from typing import Any

import cv2
import numpy as np

from .errors import ParamOutOfRange
from .images import require_channels, require_uint8

INPUT_W = 136
INPUT_H = 36

CHAIN_ORDER = (
    "affine",
    "stretch",
    "morphology",
    "motion_blur",
    "uneven_light",
    "degrade",
)

_WARP_FLAGS = cv2.INTER_LINEAR
_BORDER = cv2.BORDER_REPLICATE


def _warp(img: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    h, w = img.shape[:2]
    return cv2.warpAffine(
        img, matrix, (w, h), flags=_WARP_FLAGS, borderMode=_BORDER
    )


def affine(
    img: np.ndarray,
    rotation_deg: float,
    shear: float,
    scale: float,
    tx_px: float,
    ty_px: float,
) -> np.ndarray:
    """Rotate/shear/scale about the image center, then translate.

    Identity parameters (0, 0, 1, 0, 0) produce a byte-identical copy.
    """
    require_uint8(img)
    if scale <= 0:
        raise ParamOutOfRange(f"scale must be positive, got {scale}")
    h, w = img.shape[:2]
    cx, cy = (w - 1) / 2.0, (h - 1) / 2.0
    theta = math.radians(rotation_deg)
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    rot = np.array([[cos_t, -sin_t], [sin_t, cos_t]])
    shr = np.array([[1.0, shear], [0.0, 1.0]])
    lin = rot @ shr * scale
    center = np.array([cx, cy])
    offset = center - lin @ center + np.array([tx_px, ty_px])
    matrix = np.hstack([lin, offset[:, None]])
    return _warp(img, matrix)


def stretch(img: np.ndarray, sx: float, sy: float) -> np.ndarray:
    """Anisotropic rescale about the image center; output size unchanged."""
    require_uint8(img)
    if not (0.8 <= sx <= 1.3 and 0.8 <= sy <= 1.3):
        raise ParamOutOfRange(f"stretch factors must be in [0.8, 1.3], got {(sx, sy)}")
    h, w = img.shape[:2]
    cx, cy = (w - 1) / 2.0, (h - 1) / 2.0
    matrix = np.array([[sx, 0.0, cx * (1.0 - sx)], [0.0, sy, cy * (1.0 - sy)]])
    return _warp(img, matrix)


def morphology(
    img: np.ndarray, mode: str, kernel_size: int = 3, iterations: int = 1
) -> np.ndarray:
    """Square-kernel min filter (erode) or max filter (dilate), per channel."""
    require_uint8(img)
    if mode not in ("erode", "dilate"):
        raise ParamOutOfRange(f"mode must be erode or dilate, got {mode!r}")
    if kernel_size < 1 or kernel_size % 2 == 0:
        raise ParamOutOfRange(f"kernel_size must be odd and positive, got {kernel_size}")
    if iterations < 1:
        raise ParamOutOfRange(f"iterations must be >= 1, got {iterations}")
    kernel = np.ones((kernel_size, kernel_size), np.uint8)
    op = cv2.erode if mode == "erode" else cv2.dilate
    return op(img, kernel, iterations=iterations)


def motion_blur_kernel(length: int, angle_rad: float) -> np.ndarray:
    """Normalized line kernel of ``length`` taps along ``angle_rad``."""
    if length % 2 == 0 or not (3 <= length <= 9):
        raise ParamOutOfRange(f"length must be odd in [3, 9], got {length}")
    if not (0.0 <= angle_rad < math.pi):
        raise ParamOutOfRange(f"angle must lie in [0, pi), got {angle_rad}")
    center = length // 2
    kernel = np.zeros((length, length), np.float64)
    for t in range(-center, center + 1):
        x = center + int(round(t * math.cos(angle_rad)))
        y = center + int(round(t * math.sin(angle_rad)))
        kernel[y, x] += 1.0
    kernel /= kernel.sum()
    return kernel.astype(np.float32)


def motion_blur(img: np.ndarray, length: int, angle_rad: float) -> np.ndarray:
    require_uint8(img)
    kernel = motion_blur_kernel(length, angle_rad)
    return cv2.filter2D(img, -1, kernel, borderType=_BORDER)


def uneven_light(
    img: np.ndarray, gain_min: float, gain_max: float, axis_angle_rad: float = 0.0
) -> np.ndarray:
    """Multiply by a gain ramp running from gain_min to gain_max along an axis.

    The gain at a pixel depends on its projection onto the axis direction,
    normalized over the image extent, so gain_min lands on one edge and
    gain_max on the opposite edge.
    """
    require_uint8(img)
    if gain_min < 0 or gain_min > gain_max:
        raise ParamOutOfRange(
            f"need 0 <= gain_min <= gain_max, got {(gain_min, gain_max)}"
        )
    h, w = img.shape[:2]
    xs = np.arange(w, dtype=np.float32) * math.cos(axis_angle_rad)
    ys = np.arange(h, dtype=np.float32) * math.sin(axis_angle_rad)
    proj = xs[None, :] + ys[:, None]
    lo, hi = float(proj.min()), float(proj.max())
    unit = (proj - lo) / (hi - lo) if hi > lo else np.zeros_like(proj)
    gain = np.float32(gain_min) + np.float32(gain_max - gain_min) * unit
    if img.ndim == 3:
        gain = gain[:, :, None]
    out = np.rint(img.astype(np.float32) * gain)
    return np.clip(out, 0, 255).astype(np.uint8)


def degrade(img: np.ndarray, factor: float, sigma: float, seed: int) -> np.ndarray:
    """Bilinear down/up round trip by ``factor`` plus seeded Gaussian noise."""
    require_uint8(img)
    if not (1.0 <= factor <= 4.0):
        raise ParamOutOfRange(f"factor must be in [1, 4], got {factor}")
    if not (0.0 <= sigma <= 12.0):
        raise ParamOutOfRange(f"sigma must be in [0, 12], got {sigma}")
    h, w = img.shape[:2]
    out = img
    if factor > 1.0:
        dw = max(1, int(round(w / factor)))
        dh = max(1, int(round(h / factor)))
        small = cv2.resize(out, (dw, dh), interpolation=cv2.INTER_LINEAR)
        out = cv2.resize(small, (w, h), interpolation=cv2.INTER_LINEAR)
    if sigma > 0.0:
        rng = np.random.default_rng(seed)
        noise = rng.standard_normal(out.shape, dtype=np.float32) * np.float32(sigma)
        out = np.clip(np.rint(out.astype(np.float32) + noise), 0, 255).astype(np.uint8)
    return out


def to_gray(img: np.ndarray) -> np.ndarray:
    """BT.601 luma: gray = round(0.299 R + 0.587 G + 0.114 B)."""
    require_channels(img, 3)
    arr = img.astype(np.float64)
    gray = 0.299 * arr[:, :, 0] + 0.587 * arr[:, :, 1] + 0.114 * arr[:, :, 2]
    return np.clip(np.rint(gray), 0, 255).astype(np.uint8)


def invert(img: np.ndarray) -> np.ndarray:
    require_channels(img, 1)
    return 255 - img


def resize_to_input(img: np.ndarray) -> np.ndarray:
    """Bilinear resize to the 136x36 grayscale network input."""
    require_uint8(img)
    if img.ndim == 3:
        img = to_gray(img)
    return cv2.resize(img, (INPUT_W, INPUT_H), interpolation=cv2.INTER_LINEAR)


# --- transform logs and seeded chains ------------------------------------

_APPLY = {
    "affine": lambda img, p, seed: affine(
        img, p["rotation_deg"], p["shear"], p["scale"], p["tx_px"], p["ty_px"]
    ),
    "stretch": lambda img, p, seed: stretch(img, p["sx"], p["sy"]),
    "morphology": lambda img, p, seed: morphology(
        img, p["mode"], int(p.get("kernel_size", 3)), int(p.get("iterations", 1))
    ),
    "motion_blur": lambda img, p, seed: motion_blur(
        img, int(p["length"]), p["angle_rad"]
    ),
    "uneven_light": lambda img, p, seed: uneven_light(
        img, p["gain_min"], p["gain_max"], p["axis_angle_rad"]
    ),
    "degrade": lambda img, p, seed: degrade(img, p["factor"], p["sigma"], seed),
}


@dataclass(frozen=True)
class AugmentStep:
    """One applied transform: kind, concrete parameters, per-op seed."""

    kind: str
    params: dict[str, Any]
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in _APPLY:
            raise ParamOutOfRange(f"unknown transform kind {self.kind!r}")

    def apply(self, img: np.ndarray) -> np.ndarray:
        return _APPLY[self.kind](img, self.params, self.seed)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "params": dict(self.params), "seed": self.seed}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "AugmentStep":
        return cls(kind=data["kind"], params=dict(data["params"]), seed=data.get("seed"))


@dataclass
class AugmentPolicy:
    """Per-kind application probabilities and parameter sampling ranges."""

    probabilities: dict[str, float] = field(
        default_factory=lambda: {kind: 0.5 for kind in CHAIN_ORDER}
    )
    rotation_range: tuple[float, float] = (-15.0, 15.0)
    shear_range: tuple[float, float] = (-0.3, 0.3)
    scale_range: tuple[float, float] = (0.8, 1.2)
    shift_range: tuple[float, float] = (-6.0, 6.0)
    stretch_range: tuple[float, float] = (0.8, 1.3)
    blur_lengths: tuple[int, ...] = (3, 5, 7, 9)
    gain_min_range: tuple[float, float] = (0.3, 1.0)
    gain_max_range: tuple[float, float] = (1.0, 1.6)
    degrade_factor_range: tuple[float, float] = (1.0, 4.0)
    degrade_sigma_range: tuple[float, float] = (0.0, 12.0)

    def __post_init__(self):
        for kind in CHAIN_ORDER:
            p = self.probabilities.get(kind, 0.0)
            if not (0.0 <= p <= 1.0):
                raise ParamOutOfRange(f"probability for {kind} must be in [0, 1]")

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "AugmentPolicy":
        kwargs = dict(data)
        for key, value in kwargs.items():
            if isinstance(value, list):
                kwargs[key] = tuple(value)
        return cls(**kwargs)

    @classmethod
    def never(cls) -> "AugmentPolicy":
        return cls(probabilities={kind: 0.0 for kind in CHAIN_ORDER})


def _sample_params(kind: str, policy: AugmentPolicy, rng: np.random.Generator):
    if kind == "affine":
        return {
            "rotation_deg": float(rng.uniform(*policy.rotation_range)),
            "shear": float(rng.uniform(*policy.shear_range)),
            "scale": float(rng.uniform(*policy.scale_range)),
            "tx_px": float(rng.uniform(*policy.shift_range)),
            "ty_px": float(rng.uniform(*policy.shift_range)),
        }
    if kind == "stretch":
        return {
            "sx": float(rng.uniform(*policy.stretch_range)),
            "sy": float(rng.uniform(*policy.stretch_range)),
        }
    if kind == "morphology":
        return {
            "mode": "erode" if rng.random() < 0.5 else "dilate",
            "kernel_size": 3,
            "iterations": 1,
        }
    if kind == "motion_blur":
        return {
            "length": int(policy.blur_lengths[rng.integers(len(policy.blur_lengths))]),
            "angle_rad": float(rng.uniform(0.0, math.pi)),
        }
    if kind == "uneven_light":
        return {
            "gain_min": float(rng.uniform(*policy.gain_min_range)),
            "gain_max": float(rng.uniform(*policy.gain_max_range)),
            "axis_angle_rad": float(rng.uniform(0.0, 2.0 * math.pi)),
        }
    if kind == "degrade":
        return {
            "factor": float(rng.uniform(*policy.degrade_factor_range)),
            "sigma": float(rng.uniform(*policy.degrade_sigma_range)),
        }
    raise ParamOutOfRange(f"unknown transform kind {kind!r}")


def random_chain(
    img: np.ndarray, seed: int, policy: AugmentPolicy
) -> tuple[np.ndarray, list[AugmentStep]]:
    """Apply a seeded random subset of the six transforms in canonical order.

    Returns the transformed image and the exact log of applied steps;
    ``replay`` of that log on the source image reproduces the output
    byte-exactly.
    """
    require_uint8(img)
    rng = np.random.default_rng(seed)
    steps: list[AugmentStep] = []
    out = img
    for kind in CHAIN_ORDER:
        if rng.random() >= policy.probabilities.get(kind, 0.0):
            continue
        params = _sample_params(kind, policy, rng)
        op_seed = int(rng.integers(0, 2**63)) if kind == "degrade" else None
        step = AugmentStep(kind=kind, params=params, seed=op_seed)
        out = step.apply(out)
        steps.append(step)
    if not steps:
        out = img.copy()
    return out, steps


def replay(img: np.ndarray, steps: list[AugmentStep]) -> np.ndarray:
    """Re-apply a recorded transform log to a source image."""
    out = img
    for step in steps:
        out = step.apply(out)
    return out.copy() if not steps else out
