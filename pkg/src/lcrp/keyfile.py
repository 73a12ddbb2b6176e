"""Binary containers for key bundles and ciphertexts.

Key file ("LCRK"): magic, u32 version, u32 m, u32 rows, u32 cols, u64 seed,
then per stage the 8 axis-matrix entries plus the order as little-endian
f64, the packed sign-mask bits (row-major, padded to a byte), the tau grids,
the xi grids (row-major little-endian f64), and a trailing CRC-32 of all
preceding bytes.

Ciphertext file ("LCRC"): magic, u32 version, u32 rows, u32 cols, raw f64
little-endian amplitudes, trailing CRC-32.  A ciphertext can also be stored
as a 16-bit PGM with its amplitude scale in a header comment; that route is
lossy (see save_ciphertext).
"""

from __future__ import annotations

import struct
import zlib

import numpy as np

from .cipher import Ciphertext, KeyBundle
from .errors import CRCError, FormatError
from .imageio import read_pgm, write_pgm
from .lct import LCTParams, Matrix2

__all__ = ["save_keys", "load_keys", "save_ciphertext", "load_ciphertext"]

_KEY_MAGIC = b"LCRK"
_CIPHER_MAGIC = b"LCRC"
_VERSION = 1


def _f64(values) -> bytes:
    return np.asarray(values, dtype="<f8").tobytes()


def save_keys(k: KeyBundle, path) -> None:
    """Serialize a key bundle; byte-identical for identical bundles."""
    k.validate()
    parts = [_KEY_MAGIC, struct.pack("<IIII", _VERSION, k.count, k.rows, k.cols)]
    parts.append(struct.pack("<Q", k.seed & 0xFFFFFFFFFFFFFFFF))
    for p, beta in zip(k.matrices, k.betas):
        parts.append(
            _f64(
                [
                    p.ax1.a,
                    p.ax1.b,
                    p.ax1.c,
                    p.ax1.d,
                    p.ax2.a,
                    p.ax2.b,
                    p.ax2.c,
                    p.ax2.d,
                    beta,
                ]
            )
        )
    parts.append(np.packbits(k.gamma_mask.astype(np.uint8).ravel()).tobytes())
    for tau in k.taus:
        parts.append(_f64(tau.ravel()))
    for xi in k.xis:
        parts.append(_f64(xi.ravel()))
    payload = b"".join(parts)
    with open(path, "wb") as fh:
        fh.write(payload)
        fh.write(struct.pack("<I", zlib.crc32(payload)))


def load_keys(path) -> KeyBundle:
    """Read a key bundle back; verifies magic, version, length, and CRC."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < 4 + 16 + 8 + 4 or blob[:4] != _KEY_MAGIC:
        raise FormatError(f"{path}: not a key file")
    payload, (crc,) = blob[:-4], struct.unpack("<I", blob[-4:])
    if zlib.crc32(payload) != crc:
        raise CRCError(f"{path}: checksum mismatch")
    version, m, rows, cols = struct.unpack_from("<IIII", payload, 4)
    if version != _VERSION:
        raise FormatError(f"{path}: unsupported version {version}")
    (seed,) = struct.unpack_from("<Q", payload, 20)
    pos = 28
    matrices, betas = [], []
    for _ in range(m):
        vals = np.frombuffer(payload, dtype="<f8", count=9, offset=pos)
        matrices.append(
            LCTParams(Matrix2(*(float(v) for v in vals[:4])), Matrix2(*(float(v) for v in vals[4:8])))
        )
        betas.append(float(vals[8]))
        pos += 9 * 8
    npix = rows * cols
    nbytes_mask = (npix + 7) // 8
    bits = np.unpackbits(np.frombuffer(payload, dtype=np.uint8, count=nbytes_mask, offset=pos))
    gamma = bits[:npix].reshape(rows, cols).astype(np.uint8)
    pos += nbytes_mask

    def read_grids(count):
        nonlocal pos
        grids = []
        for _ in range(count):
            arr = np.frombuffer(payload, dtype="<f8", count=npix, offset=pos)
            grids.append(arr.reshape(rows, cols).copy())
            pos += npix * 8
        return grids

    taus = read_grids(m)
    xis = read_grids(m)
    if pos != len(payload):
        raise FormatError(f"{path}: payload length mismatch ({pos} != {len(payload)})")
    bundle = KeyBundle(
        matrices=matrices,
        betas=betas,
        taus=taus,
        gamma_mask=gamma,
        xis=xis,
        rows=rows,
        cols=cols,
        seed=int(seed),
    )
    bundle.validate()
    return bundle


def save_ciphertext(c: Ciphertext, path) -> None:
    """Write a ciphertext.

    ``.pgm`` paths store a 16-bit PGM with the amplitude scale in a header
    comment; that is viewable anywhere but quantizes the amplitudes (the
    decryption keys are exact, so the quantization error is amplified by the
    reciprocal multipliers - use the exact container for archival).  Any
    other extension gets the exact f64 container.
    """
    if str(path).lower().endswith(".pgm"):
        scale = float(c.values.max())
        if scale == 0.0:
            scale = 1.0
        samples = np.floor(c.values / scale * 65535.0 + 0.5).astype(np.uint16)
        write_pgm(path, samples, maxval=65535, comments={"amplitude-scale": repr(scale)})
        return
    payload = _CIPHER_MAGIC + struct.pack("<III", _VERSION, *c.values.shape) + _f64(c.values.ravel())
    with open(path, "wb") as fh:
        fh.write(payload)
        fh.write(struct.pack("<I", zlib.crc32(payload)))


def load_ciphertext(path) -> Ciphertext:
    """Read a ciphertext from either container."""
    if str(path).lower().endswith(".pgm"):
        samples, maxval, comments = read_pgm(path)
        scale = float(comments.get("amplitude-scale", "1.0"))
        return Ciphertext(samples.astype(np.float64) / maxval * scale)
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < 20 or blob[:4] != _CIPHER_MAGIC:
        raise FormatError(f"{path}: not a ciphertext file")
    payload, (crc,) = blob[:-4], struct.unpack("<I", blob[-4:])
    if zlib.crc32(payload) != crc:
        raise CRCError(f"{path}: checksum mismatch")
    version, rows, cols = struct.unpack_from("<III", payload, 4)
    if version != _VERSION:
        raise FormatError(f"{path}: unsupported version {version}")
    arr = np.frombuffer(payload, dtype="<f8", count=rows * cols, offset=16)
    if 16 + rows * cols * 8 != len(payload):
        raise FormatError(f"{path}: payload length mismatch")
    return Ciphertext(arr.reshape(rows, cols).copy())
