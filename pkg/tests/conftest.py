import numpy as np
import pytest

from compat2x2 import Table2x2

SURVEY_COUNTS = (10, 110, 16, 464)


@pytest.fixture
def survey_table() -> Table2x2:
    return Table2x2(*SURVEY_COUNTS)


def random_interior_tables(seed: int, count: int, lo: int = 1, hi: int = 60):
    """Tables with every cell >= lo, so the observed count is interior to the
    conditional support and all estimators are finite."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        a, b, c, d = (int(x) for x in rng.integers(lo, hi + 1, size=4))
        out.append(Table2x2(a, b, c, d))
    return out
