import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pmds.fields import field_from_order

SMALL_ORDERS = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)
GRID_ORDERS = SMALL_ORDERS  # acceptance grid: q <= 16, k <= min(q, 6)


@pytest.fixture(params=SMALL_ORDERS, ids=lambda q: f"q{q}")
def small_field(request):
    return field_from_order(request.param)
