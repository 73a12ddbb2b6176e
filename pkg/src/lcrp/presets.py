"""Named stage-parameter sets for the cascaded cipher.

The cascade's behavior is governed by how strongly the stage multipliers
reweight the transform domain.  Small b entries and orders near 2 maximize
key sensitivity but amplify any ciphertext perturbation on decryption;
grid-preserving matrices (b equal to the grid size) with small orders keep
the gain near unity, which is what the robustness demonstrations need.
The two regimes cannot be had at once - the amplification constant that
makes a wrong key fail completely is the same one that blows up noise.
"""

from __future__ import annotations

from .lct import LCTParams, make_matrix

__all__ = [
    "demo_stage_params",
    "high_sensitivity_stage_params",
    "low_gain_stage_params",
]


def demo_stage_params() -> list[tuple[LCTParams, float]]:
    """Three-stage reference key set used by the round-trip demonstrations."""
    a1 = LCTParams(make_matrix(6, 7, 5, 6), make_matrix(1, 20, 0, 1))
    a2 = LCTParams(make_matrix(5, 12, 2, 5), make_matrix(1, 11, 9, 100))
    a3 = LCTParams(make_matrix(7, 11, 5, 8), make_matrix(11, 21, 1, 2))
    return [(a1, 1.0), (a2, 1.5), (a3, 0.7)]


def high_sensitivity_stage_params() -> list[tuple[LCTParams, float]]:
    """Key set with small b entries for the key-sensitivity sweeps.

    Stage 1's second-axis b = 15.99 is the canonical swept entry; the
    repair rule c := (a*d - 1)/b keeps every perturbed matrix unimodular.
    """
    s1 = LCTParams(make_matrix(20, 399, 1, 20), make_matrix(40, 15.99, 100, 40))
    s2 = LCTParams(
        make_matrix(10, 495, 0.2, 10),
        make_matrix(2, 0.4495, (2 * 1 - 1) / 0.4495, 1),
    )
    s3 = LCTParams(make_matrix(5, 12, 2, 5), make_matrix(1, 99, 0, 1))
    return [(s1, 1.0), (s2, 1.8), (s3, 0.3)]


def low_gain_stage_params(n: int) -> list[tuple[LCTParams, float]]:
    """Unit-gain key set for an n x n grid (robustness / statistics runs).

    b = n keeps every stage on unit-spacing grids, and the small orders
    bound the decryption-side amplification of ciphertext perturbations.
    """
    m1 = LCTParams(make_matrix(1, n, 0, 1), make_matrix(1, n, 0, 1))
    m2 = LCTParams(make_matrix(3, n, 2 / n, 1), make_matrix(2, n, 1 / n, 1))
    m3 = LCTParams(make_matrix(1, n, 0, 1), make_matrix(5, n, 4 / n, 1))
    return [(m1, 0.04), (m2, 0.03), (m3, 0.05)]
