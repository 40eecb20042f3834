import json
import numpy as np
import pytest

from spanLattice.lattice import StateSpace


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def space3():
    return StateSpace.uniform(3)


@pytest.fixture
def exact_space4():
    return StateSpace.uniform(4, exact=True)


@pytest.fixture
def market_file(tmp_path):
    """Five-state market with an injective asset, a constant asset and claims."""

    def write(data=None, name="market.json"):
        if data is None:
            data = {
                "format_version": 1,
                "states": ["s0", "s1", "s2", "s3", "s4"],
                "probs": ["1/5", "1/5", "1/5", "1/5", "1/5"],
                "assets": {
                    "f": [0, 1, 2, 3, 4],
                    "flat": [2, 2, 2, 2, 2],
                    "h": [0, 0, 1, 1, 2],
                },
                "claims": {
                    "g": [5, "1/2", 0, 7, 1],
                    "g_h": [3, 3, 1, 1, 4],
                    "g_bad": [3, 4, 1, 1, 4],
                },
            }
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return path

    return write
