import pytest

from planargw.gw_table import MemoTable, n_planar
from planargw.p2_oracle import kontsevich, kontsevich_table

# Classical counts of rational plane curves through 3d-1 points.
KNOWN = {1: 1, 2: 1, 3: 12, 4: 620, 5: 87304, 6: 26312976}


@pytest.mark.parametrize("d", sorted(KNOWN))
def test_known_values(d):
    assert kontsevich(d) == KNOWN[d]


def test_positive_and_increasing():
    values = [kontsevich(d) for d in range(1, 10)]
    assert all(v >= 1 for v in values)
    assert all(a < b for a, b in zip(values[1:], values[2:]))


def test_rejects_nonpositive():
    with pytest.raises(ValueError):
        kontsevich(0)


@pytest.mark.parametrize("d", range(2, 7))
def test_fixed_plane_crosscheck(d):
    # three points fix the plane; the 3d-4 lines cut it in 3d-4 further points
    assert n_planar((d, 3 * d - 4, 3, 0), MemoTable()) == kontsevich(d)


def test_table():
    assert kontsevich_table(3) == [{"d": 1, "value": "1"}, {"d": 2, "value": "1"}, {"d": 3, "value": "12"}]
