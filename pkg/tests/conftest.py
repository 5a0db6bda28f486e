"""Shared fixtures: two reference geometries and one mode per family class.

The seven case modes cover every structurally distinct branch: TEM, gapped
plates (TM, TE), doubly indexed rectangular (TM, TE), and the two degenerate
rectangular TE lines (n = 0 and m = 0).
"""

import pytest

from wgquant import Family, Geometry, Kind, ModeId, Quadratures

E_M = 2.5e4  # test drive amplitude (V/m), nothing special about the value

PLATES = Geometry(Kind.PARALLEL_PLATES, w=0.10, d=0.008, L=0.30)
RECT = Geometry(Kind.RECTANGULAR, w=0.023, d=0.010, L=0.25)

# one (geometry, mode) pair per family class
CASES = [
    ("tem", PLATES, ModeId(Family.TEM, l=2)),
    ("tm-plates", PLATES, ModeId(Family.TM_PLATES, n=2, l=-3)),
    ("te-plates", PLATES, ModeId(Family.TE_PLATES, n=1, l=2)),
    ("tm-rect", RECT, ModeId(Family.TM_RECT, n=2, m=1, l=3)),
    ("te-rect", RECT, ModeId(Family.TE_RECT, n=1, m=2, l=-2)),
    ("te-rect-0m", RECT, ModeId(Family.TE_RECT, n=0, m=2, l=1)),
    ("te-rect-n0", RECT, ModeId(Family.TE_RECT, n=3, m=0, l=2)),
]

CASE_IDS = [c[0] for c in CASES]


@pytest.fixture
def plates():
    return PLATES


@pytest.fixture
def rect():
    return RECT


@pytest.fixture
def q():
    return Quadratures(X=0.8, Y=-0.45, theta0=0.3)


@pytest.fixture(params=CASES, ids=CASE_IDS)
def case(request):
    """(geometry, mode) for each family class."""
    _, g, mode = request.param
    return g, mode
