import time

import numpy as np
import pytest

from lcrp.cipher import (
    Ciphertext,
    KeyBundle,
    PlainSet,
    cascade_encrypt,
    decrypt,
    encrypt,
    generate_phase_masks,
    modulate_phases,
    phase_correction,
)
from lcrp.errors import DimensionMismatch, DomainError, KeyIntegrityError, RangeError
from lcrp.lct import ComplexGrid, Grid1D, LCTParams, Matrix2, lct_2d
from lcrp.metrics import mse, to_gray255
from lcrp.presets import demo_stage_params

from .conftest import synth_natural_image


def _plain(n=128, count=3):
    return PlainSet(np.stack([synth_natural_image(n, s) for s in range(1, count + 1)]))


def _replace(bundle, **kwargs):
    fields = dict(
        matrices=list(bundle.matrices),
        betas=list(bundle.betas),
        taus=bundle.taus,
        gamma_mask=bundle.gamma_mask,
        xis=[x.copy() for x in bundle.xis],
        rows=bundle.rows,
        cols=bundle.cols,
        seed=bundle.seed,
    )
    fields.update(kwargs)
    return KeyBundle(**fields)


class TestPhaseSeparation:
    def test_reconstruction_identity_random_field(self):
        plain = _plain(64, 2)
        pairs = generate_phase_masks(plain, seed=9)
        for image, pair in zip(plain.images, pairs):
            recon = np.abs(np.exp(1j * pair.phi) + np.exp(1j * pair.theta))
            assert np.max(np.abs(recon - image)) <= 1e-12

    def test_full_intensity_pixel(self):
        plain = PlainSet(np.ones((1, 8, 8)))
        pair = generate_phase_masks(plain, seed=1)[0]
        # separation angle pi - arccos(1/2) = 2 pi/3; |sum| = 2 cos(pi/3) = 1
        recon = np.abs(np.exp(1j * pair.phi) + np.exp(1j * pair.theta))
        assert np.allclose(recon, 1.0)

    def test_zero_pixel_cancels(self):
        plain = PlainSet(np.zeros((1, 8, 8)))
        pair = generate_phase_masks(plain, seed=1)[0]
        recon = np.abs(np.exp(1j * pair.phi) + np.exp(1j * pair.theta))
        assert np.max(recon) <= 1e-12

    def test_seeds_change_masks_not_identity(self):
        plain = _plain(32, 1)
        a = generate_phase_masks(plain, seed=1)[0]
        b = generate_phase_masks(plain, seed=2)[0]
        assert not np.allclose(a.theta, b.theta)
        for pair in (a, b):
            recon = np.abs(np.exp(1j * pair.phi) + np.exp(1j * pair.theta))
            assert np.max(np.abs(recon - plain.images[0])) <= 1e-12

    def test_out_of_range_rejected(self):
        with pytest.raises(RangeError):
            PlainSet(np.full((1, 8, 8), 1.5))


class TestPhaseModulation:
    def test_two_image_difference_recovers_phase(self):
        rng = np.random.default_rng(4)
        phis = [rng.uniform(-np.pi, np.pi, (16, 16)) for _ in range(2)]
        total, taus = modulate_phases(phis, seed=3)
        assert np.allclose(total - taus[1], phis[1])

    def test_three_image_telescoping(self):
        rng = np.random.default_rng(5)
        phis = [rng.uniform(-np.pi, np.pi, (16, 16)) for _ in range(3)]
        total, taus = modulate_phases(phis, seed=3)
        for k in (1, 2):
            assert np.allclose(total - taus[k], phis[k])
        assert np.allclose(total - (phis[1] + phis[2]), phis[0])

    def test_first_key_is_decoy(self):
        rng = np.random.default_rng(6)
        phis = [rng.uniform(-np.pi, np.pi, (16, 16)) for _ in range(3)]
        _, taus = modulate_phases(phis, seed=3)
        assert not np.allclose(taus[0], phis[1] + phis[2])

    def test_single_image(self):
        # with m = 1 the composite phase is phi itself and the only stored
        # key is the pure decoy field (never consulted by decryption)
        phi = np.zeros((8, 8))
        total, taus = modulate_phases([phi], seed=3)
        assert np.array_equal(total, phi) and len(taus) == 1
        assert np.all(taus[0] >= 0) and np.any(taus[0] > 0)
        _, taus_again = modulate_phases([phi], seed=3)
        assert np.array_equal(taus[0], taus_again[0])


class TestPhaseCorrection:
    def test_signs(self):
        g = np.array([[-2.0, 3.0]])
        h0, gamma = phase_correction(g)
        assert h0[0, 0] == 2.0 and gamma[0, 0] == 1
        assert h0[0, 1] == 3.0 and gamma[0, 1] == 0

    def test_restore_identity(self):
        rng = np.random.default_rng(7)
        g = rng.normal(size=(32, 32)) * 3
        h0, gamma = phase_correction(g)
        assert np.array_equal(h0 * np.where(gamma == 1, -1.0, 1.0), g)
        assert np.all(h0 >= 0)


class TestCascade:
    def test_single_stage_zero_order_amplitude(self):
        rng = np.random.default_rng(8)
        h0 = np.abs(rng.normal(size=(64, 64))) * 2
        theta = rng.uniform(0, 2 * np.pi, (64, 64))
        params = demo_stage_params()[:1]
        cipher, xis = cascade_encrypt(h0, [theta], [(params[0][0], 0.0)])
        grid = Grid1D(64, 1.0)
        spec = lct_2d(ComplexGrid(h0 * np.exp(1j * theta), grid, grid), params[0][0])
        assert np.allclose(cipher.values, np.abs(spec.values))
        assert len(xis) == 1

    def test_finite_amplitudes(self):
        plain = _plain(64)
        cipher, bundle = encrypt(plain, demo_stage_params(), seed=11)
        assert np.all(np.isfinite(cipher.values)) and np.all(cipher.values >= 0)
        for h in bundle.xis:
            assert np.all(np.isfinite(h))

    def test_stage_count_must_match(self):
        plain = _plain(64, 2)
        with pytest.raises(DomainError):
            encrypt(plain, demo_stage_params(), seed=1)

    def test_order_range_checked(self):
        plain = _plain(64, 1)
        stage = [(demo_stage_params()[0][0], 2.5)]
        with pytest.raises(DomainError):
            encrypt(plain, stage, seed=1)


class TestRoundTrip:
    @pytest.mark.parametrize("count", [1, 2, 3])
    def test_exact_recovery(self, count):
        plain = _plain(128, count)
        cipher, bundle = encrypt(plain, demo_stage_params()[:count], seed=21)
        recovered = decrypt(cipher, bundle)
        for a, b in zip(plain.images, recovered.images):
            assert np.mean((a - b) ** 2) <= 1e-8

    def test_deterministic_bits(self):
        plain = _plain(64)
        c1, _ = encrypt(plain, demo_stage_params(), seed=42)
        c2, _ = encrypt(plain, demo_stage_params(), seed=42)
        assert np.array_equal(c1.values, c2.values)
        c3, _ = encrypt(plain, demo_stage_params(), seed=43)
        assert not np.allclose(c1.values, c3.values)

    def test_interactive_speed(self):
        plain = _plain(256)
        start = time.perf_counter()
        cipher, bundle = encrypt(plain, demo_stage_params(), seed=5)
        decrypt(cipher, bundle)
        assert time.perf_counter() - start < 5.0

    def test_channel_streams_are_disjoint(self):
        plain = _plain(64, 1)
        c0, _ = encrypt(plain, demo_stage_params()[:1], seed=9, channel=0)
        c1, _ = encrypt(plain, demo_stage_params()[:1], seed=9, channel=1)
        assert not np.allclose(c0.values, c1.values)


@pytest.fixture(scope="module")
def wrong_key_setup():
    plain = _plain(256)
    cipher, bundle = encrypt(plain, demo_stage_params(), seed=42)
    base = [
        mse(to_gray255(a), to_gray255(b))
        for a, b in zip(plain.images, decrypt(cipher, bundle).images)
    ]
    return plain, cipher, bundle, base


class TestWrongKeys:
    @pytest.fixture
    def setup(self, wrong_key_setup):
        return wrong_key_setup

    def _mses(self, plain, cipher, bundle):
        rec = decrypt(cipher, bundle)
        return [mse(to_gray255(a), to_gray255(b)) for a, b in zip(plain.images, rec.images)]

    def test_single_wrong_matrix_entry(self, setup):
        plain, cipher, bundle, base = setup
        # b entry 7 -> 6 in the first stage's first axis matrix (the perturbed
        # matrix is deliberately non-unimodular, as in an adversarial guess)
        wrong = _replace(
            bundle,
            matrices=[LCTParams(Matrix2(6, 6, 5, 6), bundle.matrices[0].ax2)]
            + list(bundle.matrices[1:]),
        )
        mses = self._mses(plain, cipher, wrong)
        assert all(w >= 100 * max(b, 1e-6) for w, b in zip(mses, base))

    def test_wrong_order(self, setup):
        plain, cipher, bundle, base = setup
        wrong = _replace(bundle, betas=[1.1] + list(bundle.betas[1:]))
        mses = self._mses(plain, cipher, wrong)
        assert all(w >= 100 * max(b, 1e-6) for w, b in zip(mses, base))

    def test_withholding_any_truncated_phase_breaks(self, setup):
        plain, cipher, bundle, base = setup
        for j in range(3):
            xis = [x.copy() for x in bundle.xis]
            xis[j] = np.zeros_like(xis[j])
            mses = self._mses(plain, cipher, _replace(bundle, xis=xis))
            assert all(w >= 100 * max(b, 1e-6) for w, b in zip(mses, base))


class TestValidation:
    def test_dims_must_match(self):
        plain = _plain(64)
        cipher, bundle = encrypt(plain, demo_stage_params(), seed=1)
        with pytest.raises(DimensionMismatch):
            decrypt(Ciphertext(np.zeros((32, 32))), bundle)

    def test_key_integrity(self):
        plain = _plain(64)
        cipher, bundle = encrypt(plain, demo_stage_params(), seed=1)
        broken = _replace(bundle, betas=[3.0] + list(bundle.betas[1:]))
        with pytest.raises(KeyIntegrityError):
            decrypt(cipher, broken)
        bad_mask = _replace(bundle, gamma_mask=np.full((64, 64), 2, dtype=np.uint8))
        with pytest.raises(KeyIntegrityError):
            decrypt(cipher, bad_mask)

    def test_ciphertext_nonnegative(self):
        with pytest.raises(RangeError):
            Ciphertext(np.array([[-1.0, 0.0]]))
