import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_conjugate_closed(rng, n, box=5.0):
    """Random conjugate-closed root multiset of size n with a decent
    minimal root separation."""
    while True:
        pts = []
        while len(pts) + 2 <= n:
            if rng.uniform() < 0.3:
                pts.extend([complex(rng.uniform(-box, box), 0.0) for _ in range(2)])
            else:
                w = complex(rng.uniform(-box, box), rng.uniform(0.1, box))
                pts.extend([w, w.conjugate()])
        while len(pts) < n:
            pts.append(complex(rng.uniform(-box, box), 0.0))
        sep = min(
            abs(a - b) for i, a in enumerate(pts) for b in pts[i + 1:]
        )
        if sep > 1e-3:
            return pts
