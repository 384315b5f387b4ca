import numpy as np
import pytest

from stability_lab.relators import Generator


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_unitary(rng, n: int) -> np.ndarray:
    """Haar-ish unitary from the QR of a complex Gaussian matrix."""
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def gens(*names: str) -> tuple[Generator, ...]:
    return tuple(Generator(n) for n in names)
