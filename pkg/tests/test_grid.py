import numpy as np
import pytest

from blochkit.grid import DiskGrid, default_radii


def test_default_schedule():
    g = DiskGrid.default()
    assert g.radii[:4] == (0.0, 0.125, 0.25, 0.375)
    assert g.radii[4:] == tuple(1 - 2.0 ** -k for k in range(1, 21))
    assert g.angles_per_ring == 512 and g.refinement_rounds == 3


def test_points_count_origin_once():
    g = DiskGrid((0.0, 0.5), 8)
    pts = g.points()
    assert pts.shape == (9,)
    assert np.count_nonzero(pts == 0) == 1
    assert DiskGrid((0.25, 0.5), 8).points().shape == (16,)


@pytest.mark.parametrize("kwargs", [
    {"radii": ()},
    {"radii": (0.5, 0.25)},
    {"radii": (0.0, 1.0)},
    {"radii": (-0.1, 0.5)},
    {"radii": (0.5,), "angles_per_ring": 0},
    {"radii": (0.5,), "refinement_rounds": -1},
])
def test_validation(kwargs):
    with pytest.raises(ValueError):
        DiskGrid(**kwargs)


def test_config_round_trip():
    g = DiskGrid.default(rings=6, angles=32, refine=1)
    assert DiskGrid(**g.config()) == g
    with pytest.raises(ValueError):
        default_radii(0)
