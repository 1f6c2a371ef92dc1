import numpy as np
import pytest


def haar_rotation(rng, n):
    """Haar-uniform rotation via sign-corrected QR of a Gaussian matrix."""
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0.0:
        q[:, [0, 1]] = q[:, [1, 0]]
    return q


@pytest.fixture
def rng():
    return np.random.default_rng(13)
