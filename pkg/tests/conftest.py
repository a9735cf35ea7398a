import numpy as np
import pytest

from quincunx import EquirectImage


def smooth_panorama(width=512, color=False):
    """Low-frequency synthetic panorama: nearest-texel displacement moves
    values by well under one 8-bit step, which the resampling-equivalence
    checks rely on."""
    height = width // 2
    row = np.arange(height)[:, None]
    col = np.arange(width)[None, :]
    base = (128.0
            + 60.0 * np.sin(2.0 * np.pi * col / width) * np.cos(np.pi * row / height)
            + 30.0 * np.cos(np.pi * row / height + 1.0))
    if not color:
        return EquirectImage(np.clip(base, 0, 255).astype(np.uint8))
    g = 128.0 + 50.0 * np.cos(2.0 * np.pi * col / width)
    b = 128.0 + 50.0 * np.sin(np.pi * row / height)
    rgb = np.stack([base, np.broadcast_to(g, base.shape),
                    np.broadcast_to(b, base.shape)], axis=-1)
    return EquirectImage(np.clip(rgb, 0, 255).astype(np.uint8))


@pytest.fixture(scope="session")
def gray_pano():
    return smooth_panorama(512)


@pytest.fixture(scope="session")
def rgb_pano():
    return smooth_panorama(512, color=True)


@pytest.fixture(scope="session")
def big_pano():
    return smooth_panorama(2048)
