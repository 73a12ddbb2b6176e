import numpy as np
import pytest
from scipy.ndimage import gaussian_filter

from lcrp.lct import LCTParams, make_matrix


def synth_natural_image(n: int, seed: int, style: int = 0) -> np.ndarray:
    """Smooth blob/wave fields with natural-image-like pixel correlation."""
    rng = np.random.default_rng(seed)
    if style == 0:
        base = rng.normal(size=(n // 8, n // 8))
        img = np.kron(base, np.ones((8, 8)))
        img = gaussian_filter(img, 4.0)
    else:
        x, y = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        img = np.sin(x / 17) + np.cos(y / 23) + 2 * gaussian_filter(rng.normal(size=(n, n)), 9.0)
    return (img - img.min()) / (img.max() - img.min())


@pytest.fixture
def natural_images_256():
    return np.stack([synth_natural_image(256, s) for s in (1, 2, 3)])


@pytest.fixture
def demo_params():
    from lcrp.presets import demo_stage_params

    return demo_stage_params()


def random_unimodular(rng) -> "LCTParams":
    while True:
        a = rng.uniform(-5, 5)
        b = rng.uniform(-8, 8)
        c = rng.uniform(-3, 3)
        if abs(a) > 0.3 and abs(b) > 0.5:
            d = (1.0 + b * c) / a
            if abs(d) < 40:
                return make_matrix(a, b, c, d)
