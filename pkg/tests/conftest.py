import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ardlkit.dataio import log_all, read_dataset, sample_data_path  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def sample_logs():
    """The bundled sample in logs, restricted to the default model variables."""
    d = log_all(read_dataset(sample_data_path()))
    return d.select(["LCO2", "LGDP", "LAI", "LENU", "LFDI", "LURB"])
