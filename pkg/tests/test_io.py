import numpy as np
import pytest

from lcrp.cipher import Ciphertext, PlainSet, decrypt, encrypt
from lcrp.errors import CRCError, FormatError
from lcrp.imageio import load_image, read_pgm, save_image, write_pgm
from lcrp.keyfile import load_ciphertext, load_keys, save_ciphertext, save_keys
from lcrp.presets import demo_stage_params

from .conftest import synth_natural_image


class TestPgm:
    def test_round_trip_8bit(self, tmp_path):
        rng = np.random.default_rng(0)
        samples = rng.integers(0, 256, size=(12, 17), dtype=np.uint8)
        path = tmp_path / "img.pgm"
        write_pgm(path, samples)
        back, maxval, _ = read_pgm(path)
        assert maxval == 255 and np.array_equal(back, samples)

    def test_round_trip_16bit_with_comment(self, tmp_path):
        samples = np.arange(64, dtype=np.uint16).reshape(8, 8) * 1000
        path = tmp_path / "img16.pgm"
        write_pgm(path, samples, maxval=65535, comments={"amplitude-scale": "3.5"})
        back, maxval, comments = read_pgm(path)
        assert maxval == 65535
        assert np.array_equal(back, samples)
        assert comments["amplitude-scale"] == "3.5"

    def test_zero_image(self, tmp_path):
        path = tmp_path / "zero.pgm"
        write_pgm(path, np.zeros((3, 3), dtype=np.uint8))
        back, _, _ = read_pgm(path)
        assert np.all(back == 0)

    def test_reject_non_p5(self, tmp_path):
        path = tmp_path / "ascii.pgm"
        path.write_bytes(b"P2\n2 2\n255\n0 1 2 3\n")
        with pytest.raises(FormatError):
            read_pgm(path)

    def test_truncated_raster(self, tmp_path):
        path = tmp_path / "short.pgm"
        path.write_bytes(b"P5\n4 4\n255\nab")
        with pytest.raises(FormatError):
            read_pgm(path)


class TestLoadSave:
    def test_scaling_and_padding(self, tmp_path):
        samples = np.zeros((100, 130), dtype=np.uint8)
        samples[3, 4] = 255
        path = tmp_path / "img.pgm"
        write_pgm(path, samples)
        loaded = load_image(path)
        assert loaded.original_shape == (100, 130)
        assert loaded.padded_shape == (128, 256)
        assert loaded.channels[0][3, 4] == 1.0
        # edge replication: the last real column extends to the pad
        assert np.all(loaded.channels[0][:, 130:] == loaded.channels[0][:, [129]])

    def test_save_quantization_is_round_half_up(self, tmp_path):
        path = tmp_path / "q.pgm"
        save_image(np.array([[0.5, 0.0, 1.0, 0.25]]), path)
        back, _, _ = read_pgm(path)
        assert list(back[0]) == [128, 0, 255, 64]

    def test_save_crop(self, tmp_path):
        path = tmp_path / "c.pgm"
        save_image(np.ones((16, 16)), path, crop=(10, 12))
        back, _, _ = read_pgm(path)
        assert back.shape == (10, 12)

    def test_png_grayscale(self, tmp_path):
        from PIL import Image

        arr = np.arange(64, dtype=np.uint8).reshape(8, 8) * 4
        path = tmp_path / "g.png"
        Image.fromarray(arr, mode="L").save(path)
        loaded = load_image(path)
        assert not loaded.is_color
        assert np.allclose(loaded.channels[0], arr / 255.0)

    def test_png_rgb_splits_channels(self, tmp_path):
        from PIL import Image

        rng = np.random.default_rng(1)
        arr = rng.integers(0, 256, size=(16, 16, 3), dtype=np.uint8)
        path = tmp_path / "c.png"
        Image.fromarray(arr, mode="RGB").save(path)
        loaded = load_image(path)
        assert loaded.is_color and len(loaded.channels) == 3
        for c in range(3):
            assert np.allclose(loaded.channels[c], arr[:, :, c] / 255.0)


@pytest.fixture(scope="module")
def bundle_pair():
    plain = PlainSet(np.stack([synth_natural_image(64, s) for s in (1, 2, 3)]))
    return encrypt(plain, demo_stage_params(), seed=99)


class TestKeyFile:
    def test_round_trip_bit_exact(self, tmp_path, bundle_pair):
        _, bundle = bundle_pair
        path = tmp_path / "keys.lcrk"
        save_keys(bundle, path)
        loaded = load_keys(path)
        assert loaded.seed == bundle.seed
        assert loaded.betas == bundle.betas
        assert np.array_equal(loaded.gamma_mask, bundle.gamma_mask)
        for a, b in zip(loaded.taus, bundle.taus):
            assert np.array_equal(a, b)
        for a, b in zip(loaded.xis, bundle.xis):
            assert np.array_equal(a, b)
        assert loaded.matrices == bundle.matrices
        # re-serializing reproduces the file byte for byte
        second = tmp_path / "keys2.lcrk"
        save_keys(loaded, second)
        assert path.read_bytes() == second.read_bytes()

    def test_single_byte_corruption_detected(self, tmp_path, bundle_pair):
        _, bundle = bundle_pair
        path = tmp_path / "keys.lcrk"
        save_keys(bundle, path)
        blob = bytearray(path.read_bytes())
        blob[100] ^= 0x01
        path.write_bytes(bytes(blob))
        with pytest.raises(CRCError):
            load_keys(path)

    def test_wrong_magic(self, tmp_path):
        path = tmp_path / "x.lcrk"
        path.write_bytes(b"NOPE" + b"\x00" * 64)
        with pytest.raises(FormatError):
            load_keys(path)

    def test_loaded_keys_decrypt(self, tmp_path, bundle_pair):
        cipher, bundle = bundle_pair
        path = tmp_path / "keys.lcrk"
        save_keys(bundle, path)
        recovered = decrypt(cipher, load_keys(path))
        assert recovered.count == 3


class TestCiphertextFile:
    def test_exact_container_round_trip(self, tmp_path, bundle_pair):
        cipher, _ = bundle_pair
        path = tmp_path / "c.lcrc"
        save_ciphertext(cipher, path)
        back = load_ciphertext(path)
        assert np.array_equal(back.values, cipher.values)

    def test_exact_container_crc(self, tmp_path, bundle_pair):
        cipher, _ = bundle_pair
        path = tmp_path / "c.lcrc"
        save_ciphertext(cipher, path)
        blob = bytearray(path.read_bytes())
        blob[40] ^= 0x80
        path.write_bytes(bytes(blob))
        with pytest.raises(CRCError):
            load_ciphertext(path)

    def test_pgm_container_carries_scale(self, tmp_path):
        cipher = Ciphertext(np.abs(np.random.default_rng(3).normal(size=(16, 16))) * 7)
        path = tmp_path / "c.pgm"
        save_ciphertext(cipher, path)
        back = load_ciphertext(path)
        assert back.values.max() == pytest.approx(cipher.values.max(), rel=1e-4)
        assert np.max(np.abs(back.values - cipher.values)) <= cipher.values.max() / 65535
