"""Estimator-style wrappers so the transforms compose with sklearn pipelines.

Each estimator is a thin, stateless-on-transform facade over the functional
core: construction takes the operator parameters, ``fit`` validates and
records the grid geometry, ``transform`` / ``inverse_transform`` map arrays
to arrays.  ``PhaseCascadeCipher.fit`` performs the actual encryption (key
generation is data-dependent: the truncated phases double as decryption
keys), so ``inverse_transform`` only recovers the fitted images - which is
the defining property of the scheme, not a limitation of the wrapper.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .cipher import Ciphertext, KeyBundle, PlainSet, decrypt, encrypt
from .lct import ComplexGrid, Grid1D, LCTParams, ilct_2d, lct_2d
from .potentials import apply_lclo, apply_lcrp
from .validation import as_matrix, check_image_stack, check_pow2_field

__all__ = [
    "LinearCanonicalTransform2D",
    "RieszPotential2D",
    "PhaseCascadeCipher",
]


class _FieldTransformerBase(TransformerMixin, BaseEstimator):
    """Shared plumbing: accepts one field (rows, cols) or a stack (m, rows, cols)."""

    def _params(self) -> LCTParams:
        m2 = self.matrix if self.matrix2 is None else self.matrix2
        return LCTParams(as_matrix(self.matrix), as_matrix(m2))

    def fit(self, X, y=None):
        fields = self._as_stack(X)
        self.n_rows_ = fields.shape[1]
        self.n_cols_ = fields.shape[2]
        self.params_ = self._params()
        return self

    def _as_stack(self, X) -> np.ndarray:
        arr = np.asarray(X)
        if arr.ndim == 2:
            arr = arr[None]
        if arr.ndim != 3:
            raise ValueError(f"expected 2D field or 3D stack, got shape {arr.shape}")
        checked = [check_pow2_field(f) for f in arr]
        return np.stack(checked)

    def _map(self, X, op, forward_domain: bool):
        check_is_fitted(self)
        arr = np.asarray(X)
        single = arr.ndim == 2
        stack = self._as_stack(X)
        n1, n2 = stack.shape[1], stack.shape[2]
        if forward_domain:
            g1, g2 = Grid1D(n1, self.spacing), Grid1D(n2, self.spacing)
        else:
            # inverse inputs live on the forward transform's output grid
            p = self.params_
            g1 = Grid1D(n1, abs(p.ax1.b) / (n1 * self.spacing))
            g2 = Grid1D(n2, abs(p.ax2.b) / (n2 * self.spacing))
        out = np.stack([op(ComplexGrid(f, g1, g2)).values for f in stack])
        return out[0] if single else out


class LinearCanonicalTransform2D(_FieldTransformerBase):
    """Separable 2D linear canonical transform as a transformer.

    Parameters
    ----------
    matrix : tuple (a, b, c, d)
        Unimodular axis matrix (b != 0) applied along rows.
    matrix2 : tuple or None
        Matrix for the column axis; defaults to ``matrix``.
    spacing : float
        Input grid spacing (the output grid spacing is |b|/(n*spacing)).
    """

    def __init__(self, matrix=(0.0, 1.0, -1.0, 0.0), matrix2=None, spacing=1.0):
        self.matrix = matrix
        self.matrix2 = matrix2
        self.spacing = spacing

    def transform(self, X):
        return self._map(X, lambda f: lct_2d(f, self.params_), forward_domain=True)

    def inverse_transform(self, X):
        return self._map(X, lambda f: ilct_2d(f, self.params_), forward_domain=False)


class RieszPotential2D(_FieldTransformerBase):
    """Fractional integral of order ``order`` in the chosen transform domain.

    ``transform`` applies the attenuating multiplier sandwich;
    ``inverse_transform`` applies the exact reciprocal (the discrete pair is
    mutually inverse thanks to the shared DC regularization).
    """

    def __init__(self, matrix=(0.0, 1.0, -1.0, 0.0), matrix2=None, order=1.0, spacing=1.0):
        self.matrix = matrix
        self.matrix2 = matrix2
        self.order = order
        self.spacing = spacing

    def transform(self, X):
        # the multiplier sandwich returns to the spatial grid, so both
        # directions act on forward-domain fields
        return self._map(X, lambda f: apply_lcrp(f, self.params_, self.order), forward_domain=True)

    def inverse_transform(self, X):
        return self._map(X, lambda f: apply_lclo(f, self.params_, self.order), forward_domain=True)


class PhaseCascadeCipher(BaseEstimator):
    """Multi-image cascaded phase cipher with an estimator interface.

    Parameters
    ----------
    stages : list of ((a, b, c, d), (a, b, c, d), order) triples
        One stage per image: the two axis matrices and the fractional order.
    seed : int
        64-bit seed for the mask and decoy streams.

    Attributes
    ----------
    keys_ : KeyBundle
        Full key material generated while fitting (encrypting).
    ciphertext_ : ndarray
        Amplitude image produced from the fitted stack.
    """

    def __init__(self, stages=None, seed=0):
        self.stages = stages
        self.seed = seed

    def _stage_params(self):
        if not self.stages:
            raise ValueError("stages must be a nonempty list of (matrix, matrix, order)")
        return [
            (LCTParams(as_matrix(m1), as_matrix(m2)), float(order))
            for m1, m2, order in self.stages
        ]

    def fit(self, X, y=None):
        """Encrypt the (m, rows, cols) stack, storing ciphertext and keys."""
        stack = check_image_stack(X)
        cipher, bundle = encrypt(PlainSet(stack), self._stage_params(), int(self.seed))
        self.keys_ = bundle
        self.ciphertext_ = cipher.values
        self.n_images_ = stack.shape[0]
        return self

    def transform(self, X):
        """Ciphertext of a stack (pure re-encryption under the same seed)."""
        check_is_fitted(self)
        stack = check_image_stack(X)
        cipher, _ = encrypt(PlainSet(stack), self._stage_params(), int(self.seed))
        return cipher.values

    def fit_transform(self, X, y=None):
        return self.fit(X, y).ciphertext_.copy()

    def inverse_transform(self, C):
        """Decrypt a ciphertext amplitude with the fitted keys."""
        check_is_fitted(self)
        recovered = decrypt(Ciphertext(np.asarray(C, dtype=np.float64)), self.keys_)
        return recovered.images
