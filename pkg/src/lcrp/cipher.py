"""Cascaded multi-image encryption built on phase separation and the
transform-domain fractional multipliers.

Encryption runs five stages:

I.   Each normalized image f_k in [0, 1] is split into two phase masks
     theta_k (seeded uniform noise) and phi_k = theta_k + alpha_k with
     alpha_k = pi - arccos((2 - f_k^2)/2), so that per pixel
     |e^(i phi_k) + e^(i theta_k)| = f_k exactly.
II.  The phi masks are combined nonlinearly: G = sum phi_k, and decoy-
     protected difference keys tau_k are stored (tau_1 absorbs a seeded
     random field R and is never consulted during decryption).
III. G is rectified to a nonnegative field h_0 = |G| with a binary sign
     mask gamma recording the flipped pixels.
IV.  m cascaded rounds: multiply by e^(i theta_j), transform with the
     stage's matrix pair, attenuate with the order-beta_j multiplier, then
     truncate the phase.  The truncated phases xi_j become decryption-side
     keys (the source of the scheme's asymmetry).
V.   The final amplitude h_m is the ciphertext.

Decryption walks the cascade backwards using the stored xi_j, multiplying
by the exact reciprocal (amplifying) multiplier, then demodulates the
phases with gamma and the tau keys and reassembles every image.

All randomness comes from counter-based Philox streams keyed by
(seed, stream index), so ciphertexts are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, DomainError, KeyIntegrityError, RangeError
from .lct import ComplexGrid, Grid1D, LCTParams, ilct_2d, lct_2d
from .potentials import laplacian_symbol, riesz_symbol, symbol_multiply_in_lct_domain

__all__ = [
    "PlainSet",
    "PhasePair",
    "KeyBundle",
    "Ciphertext",
    "stream_generator",
    "generate_phase_masks",
    "modulate_phases",
    "phase_correction",
    "cascade_encrypt",
    "encrypt",
    "decrypt",
]

_RANDOM_FIELD_STREAM_OFFSET = 1  # stream m + 1 holds the decoy field
_CHANNEL_STREAM_STRIDE = 2**32  # color channels get disjoint stream blocks


def stream_generator(seed: int, stream: int) -> np.random.Generator:
    """Philox generator for one named stream of a 64-bit seed.

    Stream k (1-based) drives the mask theta_k; stream m+1 drives the decoy
    field.  Channel c of a color image uses streams offset by c * 2^32.
    """
    key = np.array([np.uint64(seed & 0xFFFFFFFFFFFFFFFF), np.uint64(stream)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class PlainSet:
    """Stack of m same-shaped grayscale images with values in [0, 1]."""

    images: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.images, dtype=np.float64)
        if arr.ndim == 2:
            arr = arr[None, :, :]
        if arr.ndim != 3 or arr.shape[0] < 1:
            raise DimensionMismatch("expected an (m, rows, cols) image stack")
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise RangeError("image values must lie in [0, 1]")
        object.__setattr__(self, "images", arr)

    @property
    def count(self) -> int:
        return self.images.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.images.shape[1:]


@dataclass(frozen=True)
class PhasePair:
    """Mask pair reconstructing one image: |e^(i phi) + e^(i theta)| = f."""

    theta: np.ndarray
    phi: np.ndarray


@dataclass
class Ciphertext:
    """Final real nonnegative amplitude image."""

    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 2:
            raise DimensionMismatch("ciphertext must be a 2D grid")
        if not np.all(np.isfinite(arr)) or np.any(arr < 0):
            raise RangeError("ciphertext values must be finite and nonnegative")
        self.values = arr

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


@dataclass
class KeyBundle:
    """Everything decryption needs (plus the seed for reproducibility)."""

    matrices: list[LCTParams]
    betas: list[float]
    taus: list[np.ndarray]
    gamma_mask: np.ndarray
    xis: list[np.ndarray]
    rows: int
    cols: int
    seed: int

    @property
    def count(self) -> int:
        return len(self.matrices)

    def validate(self) -> None:
        m = self.count
        if not (len(self.betas) == len(self.taus) == len(self.xis) == m) or m < 1:
            raise KeyIntegrityError("per-stage key lists have inconsistent lengths")
        for beta in self.betas:
            if not (0.0 < beta < 2.0):
                raise KeyIntegrityError(f"stage order {beta} outside (0, 2)")
        shape = (self.rows, self.cols)
        if self.gamma_mask.shape != shape:
            raise KeyIntegrityError("sign mask shape mismatch")
        if not np.all((self.gamma_mask == 0) | (self.gamma_mask == 1)):
            raise KeyIntegrityError("sign mask must be binary")
        for arr in (*self.taus, *self.xis):
            if arr.shape != shape:
                raise KeyIntegrityError("phase key shape mismatch")


def _wrap_phase(angles: np.ndarray) -> np.ndarray:
    """Reduce to [-pi, pi); the representative used throughout the pipeline."""
    return np.mod(angles + np.pi, 2.0 * np.pi) - np.pi


def generate_phase_masks(p: PlainSet, seed: int, channel: int = 0) -> list[PhasePair]:
    """Stage I: split every image into a seeded random mask and its partner.

    alpha = pi - arccos((2 - f^2)/2) makes |e^(i phi) + e^(i theta)| = f hold
    per pixel (|...|^2 = 2 + 2 cos(alpha) = f^2); phi is stored wrapped to
    [-pi, pi) so the later sign bookkeeping has a definite representative.
    """
    pairs = []
    base = channel * _CHANNEL_STREAM_STRIDE
    for k in range(p.count):
        f = p.images[k]
        rng = stream_generator(seed, base + k + 1)
        theta = rng.uniform(0.0, 2.0 * np.pi, size=f.shape)
        alpha = np.pi - np.arccos((2.0 - f * f) / 2.0)
        phi = _wrap_phase(theta + alpha)
        pairs.append(PhasePair(theta=theta, phi=phi))
    return pairs


def modulate_phases(
    phis: list[np.ndarray], seed: int, channel: int = 0
) -> tuple[np.ndarray, list[np.ndarray]]:
    """Stage II: composite phase G = sum phi_k and the difference keys.

    tau_k = sum_{d != k} phi_d for k >= 2; tau_1 additionally absorbs a
    seeded random field, making it a decoy (decryption never reads it).
    """
    m = len(phis)
    if m < 1:
        raise DomainError("need at least one phase mask")
    total = np.add.reduce(phis)
    rng = stream_generator(seed, channel * _CHANNEL_STREAM_STRIDE + m + _RANDOM_FIELD_STREAM_OFFSET)
    decoy = rng.uniform(0.0, 2.0 * np.pi, size=phis[0].shape)
    taus = [total - phis[0] + decoy]
    taus.extend(total - phis[k] for k in range(1, m))
    return total, taus


def phase_correction(g: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Stage III: rectify the signed phase sum to a nonnegative amplitude.

    gamma = 1 where G < 0; h0 = G * e^(i pi gamma) = |G| pixelwise.
    """
    gamma = (g < 0).astype(np.uint8)
    h0 = np.abs(g)
    return h0, gamma


def _stage_grids(rows: int, cols: int) -> tuple[Grid1D, Grid1D]:
    return Grid1D(rows, 1.0), Grid1D(cols, 1.0)


def cascade_encrypt(
    h0: np.ndarray,
    thetas: list[np.ndarray],
    params: list[tuple[LCTParams, float]],
) -> tuple[Ciphertext, list[np.ndarray]]:
    """Stage IV: m rounds of modulate / transform / attenuate / truncate.

    Round j forms Psi_j = h_(j-1) e^(i theta_j), transforms it with the
    stage matrices, multiplies the order-beta_j attenuator on the output
    grid, and splits the result into the carried amplitude h_j and the
    stored phase key xi_j.  Input pixels sit on unit-spacing grids; each
    round's output grid (spacing |b|/n) feeds the next round.
    """
    if len(thetas) != len(params):
        raise DimensionMismatch("one stage parameter set is required per mask")
    rows, cols = h0.shape
    grid1, grid2 = _stage_grids(rows, cols)
    h = np.asarray(h0, dtype=np.float64)
    xis = []
    for theta, (p, beta) in zip(thetas, params):
        psi = ComplexGrid(h * np.exp(1j * theta), grid1, grid2)
        spec = lct_2d(psi, p)
        sym = riesz_symbol((spec.grid1, spec.grid2), p.ax1.b, p.ax2.b, beta)
        out = symbol_multiply_in_lct_domain(spec, sym)
        h = np.abs(out.values)
        xis.append(np.angle(out.values))
        grid1, grid2 = out.grid1, out.grid2
    return Ciphertext(h), xis


def encrypt(
    p: PlainSet,
    stage_params: list[tuple[LCTParams, float]],
    seed: int,
    channel: int = 0,
) -> tuple[Ciphertext, KeyBundle]:
    """Run stages I-V; returns the ciphertext and the full key bundle.

    The mask of image j doubles as the round-j stage key, so the number of
    stage parameter sets must equal the number of images.
    """
    if len(stage_params) != p.count:
        raise DomainError("need exactly one (matrices, order) pair per image")
    for _, beta in stage_params:
        if not (0.0 < beta < 2.0):
            raise DomainError(f"stage order {beta} outside (0, 2)")
    pairs = generate_phase_masks(p, seed, channel)
    g, taus = modulate_phases([pair.phi for pair in pairs], seed, channel)
    h0, gamma = phase_correction(g)
    cipher, xis = cascade_encrypt(h0, [pair.theta for pair in pairs], stage_params)
    rows, cols = p.shape
    bundle = KeyBundle(
        matrices=[m for m, _ in stage_params],
        betas=[b for _, b in stage_params],
        taus=taus,
        gamma_mask=gamma,
        xis=xis,
        rows=rows,
        cols=cols,
        seed=int(seed),
    )
    return cipher, bundle


def decrypt(c: Ciphertext, k: KeyBundle) -> PlainSet:
    """Invert the cascade with the stored keys and reassemble the images."""
    k.validate()
    if c.shape != (k.rows, k.cols):
        raise DimensionMismatch(
            f"ciphertext shape {c.shape} does not match keys ({k.rows}, {k.cols})"
        )
    m = k.count
    # replay the forward grid chain so each round's multiplier is built on
    # exactly the grid the encryption used
    grids = [_stage_grids(k.rows, k.cols)]
    for p in k.matrices:
        g1, g2 = grids[-1]
        grids.append(
            (
                Grid1D(g1.n, abs(p.ax1.b) / (g1.n * g1.spacing)),
                Grid1D(g2.n, abs(p.ax2.b) / (g2.n * g2.spacing)),
            )
        )

    h = np.asarray(c.values, dtype=np.float64)
    thetas: list[np.ndarray | None] = [None] * m
    for j in range(m - 1, -1, -1):
        p, beta = k.matrices[j], k.betas[j]
        out_grids = grids[j + 1]
        spec = ComplexGrid(h * np.exp(1j * k.xis[j]), *out_grids)
        sym = laplacian_symbol(out_grids, p.ax1.b, p.ax2.b, beta)
        psi = ilct_2d(symbol_multiply_in_lct_domain(spec, sym), p)
        h = np.abs(psi.values)
        thetas[j] = np.angle(psi.values)

    g = h * np.where(k.gamma_mask == 1, -1.0, 1.0)
    phis = [None] * m
    for idx in range(1, m):
        phis[idx] = g - k.taus[idx]
    phis[0] = g - np.add.reduce(phis[1:]) if m > 1 else g

    images = np.empty((m, k.rows, k.cols))
    for idx in range(m):
        recon = np.abs(np.exp(1j * phis[idx]) + np.exp(1j * thetas[idx]))
        images[idx] = np.clip(recon, 0.0, 1.0)
    return PlainSet(images)
