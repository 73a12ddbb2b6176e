"""Quantitative security evaluation: key sweeps, pixel statistics, attacks.

All image statistics run on the 0-255 integer scale (so magnitudes are
comparable across image sources) and use every adjacent pixel pair rather
than a random sample, keeping the whole harness deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.stats import chi2 as _chi2

from .cipher import Ciphertext, KeyBundle, PlainSet, decrypt, stream_generator
from .errors import DimensionMismatch, DomainError, OutOfBounds, SingularSweepPoint
from .lct import LCTParams, Matrix2

__all__ = [
    "SweepResult",
    "CorrelationReport",
    "mse",
    "to_gray255",
    "adjacent_correlation",
    "global_correlation",
    "histogram",
    "chi_square_uniformity",
    "histogram_l1",
    "key_sweep_matrix",
    "key_sweep_beta",
    "noise_attack",
    "occlusion_attack",
    "occlusion_presets",
]

_NOISE_STREAM = 0x6E6F6973  # dedicated stream id for attack noise

_DIRECTIONS = ("horizontal", "vertical", "diagonal")


def to_gray255(grid: np.ndarray) -> np.ndarray:
    """Quantize a [0, 1] grid to the 0-255 scale (round half up)."""
    return np.floor(np.clip(grid, 0.0, 1.0) * 255.0 + 0.5)


def mse(i1: np.ndarray, i2: np.ndarray) -> float:
    """Mean squared difference of two images on the 0-255 scale."""
    a = np.asarray(i1, dtype=np.float64)
    b = np.asarray(i2, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatch(f"image shapes differ: {a.shape} vs {b.shape}")
    return float(np.mean((a - b) ** 2))


@dataclass(frozen=True)
class CorrelationReport:
    """Pearson coefficient for one direction (or the global image pair)."""

    direction: str
    value: float
    constant_input: bool = False


def _pearson(x: np.ndarray, y: np.ndarray) -> tuple[float, bool]:
    x = x.astype(np.float64).ravel()
    y = y.astype(np.float64).ravel()
    xc = x - x.mean()
    yc = y - y.mean()
    denom = np.sqrt(np.sum(xc * xc) * np.sum(yc * yc))
    if denom == 0.0:
        return 0.0, True
    return float(np.sum(xc * yc) / denom), False


def adjacent_correlation(img: np.ndarray, direction: str) -> CorrelationReport:
    """Pearson r over all adjacent pixel pairs in one direction."""
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2 or img.shape[0] < 2 or img.shape[1] < 2:
        raise DimensionMismatch("need a 2D image of size at least 2x2")
    if direction == "horizontal":
        x, y = img[:, :-1], img[:, 1:]
    elif direction == "vertical":
        x, y = img[:-1, :], img[1:, :]
    elif direction == "diagonal":
        x, y = img[:-1, :-1], img[1:, 1:]
    else:
        raise DomainError(f"unknown direction {direction!r}; expected one of {_DIRECTIONS}")
    value, flat = _pearson(x, y)
    return CorrelationReport(direction, value, flat)


def global_correlation(i1: np.ndarray, i2: np.ndarray) -> CorrelationReport:
    """Pearson rho across all pixels of two equally sized images."""
    a = np.asarray(i1, dtype=np.float64)
    b = np.asarray(i2, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatch(f"image shapes differ: {a.shape} vs {b.shape}")
    value, flat = _pearson(a, b)
    return CorrelationReport("global", value, flat)


def _normalize_for_histogram(img: np.ndarray) -> np.ndarray:
    arr = np.asarray(img, dtype=np.float64)
    if np.issubdtype(np.asarray(img).dtype, np.integer):
        return arr / 255.0
    top = arr.max()
    return arr / top if top > 1.0 else arr


def histogram(img: np.ndarray, bins: int = 256) -> np.ndarray:
    """Counts of normalized pixel values binned uniformly on [0, 1]."""
    if bins < 2:
        raise DomainError("need at least 2 bins")
    counts, _ = np.histogram(_normalize_for_histogram(img), bins=bins, range=(0.0, 1.0))
    return counts


def chi_square_uniformity(counts: np.ndarray, significance: float = 0.01):
    """Chi-square statistic of counts against the uniform distribution.

    Returns (statistic, critical_value, passed); passed means uniformity is
    not rejected at the given significance level.
    """
    counts = np.asarray(counts, dtype=np.float64)
    expected = counts.sum() / counts.size
    statistic = float(np.sum((counts - expected) ** 2 / expected))
    critical = float(_chi2.ppf(1.0 - significance, counts.size - 1))
    return statistic, critical, statistic < critical


def histogram_l1(img1: np.ndarray, img2: np.ndarray, bins: int = 256) -> float:
    """L1 distance between the normalized histograms of two images."""
    h1 = histogram(img1, bins).astype(np.float64)
    h2 = histogram(img2, bins).astype(np.float64)
    return float(np.abs(h1 / h1.sum() - h2 / h2.sum()).sum())


# ---------------------------------------------------------------------------
# key sweeps
# ---------------------------------------------------------------------------


@dataclass
class SweepResult:
    """MSE profile of decryptions across a perturbed key parameter."""

    kind: str
    stage: int
    parameters: list[float]
    mses: list[float]
    correct_index: int
    skipped: list[int] = field(default_factory=list)

    def _wrong(self) -> np.ndarray:
        vals = [v for i, v in enumerate(self.mses) if i != self.correct_index and np.isfinite(v)]
        return np.asarray(vals)

    @property
    def correct_mse(self) -> float:
        return self.mses[self.correct_index]

    @property
    def min_wrong_mse(self) -> float:
        return float(self._wrong().min())

    @property
    def argmin_is_correct(self) -> bool:
        finite = np.where(np.isfinite(self.mses), self.mses, np.inf)
        return int(np.argmin(finite)) == self.correct_index

    @property
    def plateau_variation(self) -> float:
        """(max - min) / mean over the wrong-key points."""
        w = self._wrong()
        return float((w.max() - w.min()) / w.mean())


def _sweep(kind, stage, c, k, originals, values, rebuild) -> SweepResult:
    if not (0 <= stage < k.count):
        raise DomainError(f"stage index {stage} out of range for {k.count} stages")
    reference = to_gray255(originals.images[stage])
    mses, skipped = [], []
    for i, value in enumerate(values):
        try:
            bundle = rebuild(value)
        except SingularSweepPoint:
            skipped.append(i)
            mses.append(float("nan"))
            continue
        recovered = decrypt(c, bundle)
        mses.append(mse(reference, to_gray255(recovered.images[stage])))
    return SweepResult(
        kind=kind,
        stage=stage,
        parameters=[float(v) for v in values],
        mses=mses,
        correct_index=len(values) // 2,
        skipped=skipped,
    )


def _with_stage_matrix(k: KeyBundle, stage: int, params: LCTParams) -> KeyBundle:
    matrices = list(k.matrices)
    matrices[stage] = params
    return KeyBundle(
        matrices=matrices,
        betas=list(k.betas),
        taus=k.taus,
        gamma_mask=k.gamma_mask,
        xis=k.xis,
        rows=k.rows,
        cols=k.cols,
        seed=k.seed,
    )


def _with_stage_beta(k: KeyBundle, stage: int, beta: float) -> KeyBundle:
    betas = list(k.betas)
    betas[stage] = beta
    return KeyBundle(
        matrices=list(k.matrices),
        betas=betas,
        taus=k.taus,
        gamma_mask=k.gamma_mask,
        xis=k.xis,
        rows=k.rows,
        cols=k.cols,
        seed=k.seed,
    )


def key_sweep_matrix(
    c: Ciphertext,
    k: KeyBundle,
    originals: PlainSet,
    stage: int,
    delta: float = 2.0,
    half_steps: int = 15,
) -> SweepResult:
    """Sweep the second axis matrix's (1,2) entry of one stage.

    Each perturbed value replaces b; the (2,1) entry is repaired to
    (a*d - 1)/b so the matrix stays unimodular.  A perturbed b of exactly 0
    is skipped and flagged.
    """
    if not (0 <= stage < k.count):
        raise DomainError(f"stage index {stage} out of range for {k.count} stages")
    target = k.matrices[stage].ax2
    offsets = np.arange(-half_steps, half_steps + 1) * float(delta)
    values = target.b + offsets

    def rebuild(b):
        if b == 0.0:
            raise SingularSweepPoint("swept entry hit zero")
        repaired = Matrix2(target.a, float(b), (target.a * target.d - 1.0) / float(b), target.d)
        return _with_stage_matrix(k, stage, LCTParams(k.matrices[stage].ax1, repaired))

    return _sweep("matrix", stage, c, k, originals, values, rebuild)


def key_sweep_beta(
    c: Ciphertext,
    k: KeyBundle,
    originals: PlainSet,
    stage: int,
    delta: float = 0.025,
    half_steps: int = 15,
) -> SweepResult:
    """Sweep one stage's fractional order; values outside (0, 2) are skipped."""
    if not (0 <= stage < k.count):
        raise DomainError(f"stage index {stage} out of range for {k.count} stages")
    offsets = np.arange(-half_steps, half_steps + 1) * float(delta)
    values = k.betas[stage] + offsets

    def rebuild(beta):
        if not (0.0 < beta < 2.0):
            raise SingularSweepPoint(f"order {beta} outside (0, 2)")
        return _with_stage_beta(k, stage, float(beta))

    return _sweep("beta", stage, c, k, originals, values, rebuild)


# ---------------------------------------------------------------------------
# attacks
# ---------------------------------------------------------------------------


def noise_attack(c: Ciphertext, lam: float, seed: int) -> Ciphertext:
    """Add seeded Gaussian noise of strength lam to the ciphertext.

    The noise is scaled to gray levels of the stored ciphertext image
    (sigma = lam * max/255), matching an attack on the rendered 8-bit
    amplitude; negative results clamp to zero to stay a valid amplitude.
    """
    if lam < 0:
        raise DomainError("noise strength must be nonnegative")
    if lam == 0:
        return Ciphertext(c.values.copy())
    rng = stream_generator(seed, _NOISE_STREAM)
    gray = c.values.max() / 255.0
    noisy = c.values + lam * gray * rng.standard_normal(c.values.shape)
    return Ciphertext(np.clip(noisy, 0.0, None))


def occlusion_attack(c: Ciphertext, region: tuple[int, int, int, int]) -> Ciphertext:
    """Zero a (row0, col0, height, width) rectangle of the ciphertext."""
    r0, c0, h, w = (int(v) for v in region)
    rows, cols = c.shape
    if h < 0 or w < 0 or r0 < 0 or c0 < 0 or r0 + h > rows or c0 + w > cols:
        raise OutOfBounds(f"region {region} exceeds ciphertext bounds {c.shape}")
    out = c.values.copy()
    out[r0 : r0 + h, c0 : c0 + w] = 0.0
    return Ciphertext(out)


def occlusion_presets(shape: tuple[int, int]) -> dict[str, tuple[int, int, int, int]]:
    """Standard occlusion rectangles: corner quarters and the left half."""
    rows, cols = shape
    return {
        "top-left-quarter": (0, 0, rows // 2, cols // 2),
        "bottom-left-quarter": (rows // 2, 0, rows - rows // 2, cols // 2),
        "left-half": (0, 0, rows, cols // 2),
    }
