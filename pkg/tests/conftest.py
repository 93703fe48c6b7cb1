import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make refdata importable

from cobsic import (
    construction1,
    gell_mann_basis,
    orthogonal_matrix_fixed_row,
)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_cob(d, rng, tol=1e-9):
    """A random COB: rotated Gell-Mann basis (construction 1)."""
    ortho = orthogonal_matrix_fixed_row(d * d, rng)
    return construction1(gell_mann_basis(d), ortho, tol=tol)
