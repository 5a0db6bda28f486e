"""Modal E/B fields: Maxwell residuals, wall conditions, frames, quadratures.

The Maxwell check is the load-bearing one: every closed-form profile is
differentiated by central differences and pushed through all four equations.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wgquant import (
    Family,
    Geometry,
    InvalidFrame,
    Kind,
    ModeId,
    OutOfCrossSection,
    Quadratures,
    ReferenceFrame,
    canonical_frame,
    convert_frame,
    dispersion,
    eval_fields,
    f_quadrature,
    f_tilde_quadrature,
    maxwell_convergence,
    maxwell_residuals,
    valid_frames,
)
from conftest import CASES, E_M


def test_quadrature_pair_identities(rect, q):
    dp = dispersion(rect, ModeId(Family.TM_RECT, n=2, m=1, l=3))
    z = np.linspace(0.0, rect.L, 7)
    t = 3.1e-12
    f = f_quadrature(q, dp, z, t)
    ft = f_tilde_quadrature(q, dp, z, t)
    # amplitude invariant and half-period flip
    assert np.allclose(f * f + ft * ft, q.X**2 + q.Y**2, rtol=1e-14)
    f_half = f_quadrature(q, dp, z, t + math.pi / dp.omega)
    assert np.allclose(f_half, -f, rtol=0, atol=1e-12)
    # quarter period turns f into -f_tilde
    f_quarter = f_quadrature(q, dp, z, t + math.pi / (2 * dp.omega))
    assert np.allclose(f_quarter, -ft, rtol=0, atol=1e-12)


@pytest.mark.parametrize("name,g,mode", CASES, ids=[c[0] for c in CASES])
def test_maxwell_residuals_under_gate(name, g, mode, q):
    rep = maxwell_residuals(g, mode, valid_frames(mode)[0], q, E_M)
    assert rep.max_rel < 1e-6, f"{name}: {rep.max_rel:.3e}"


def test_maxwell_second_order_convergence(rect, q):
    mode = ModeId(Family.TE_RECT, n=1, m=2, l=-2)
    coarse, fine, order = maxwell_convergence(rect, mode, canonical_frame(mode), q, E_M)
    assert fine < coarse
    assert 1.8 < order < 2.3


def test_tangential_e_vanishes_on_real_walls(rect, q):
    # on every conductor: tangential E = 0 and normal B = 0
    for mode in (ModeId(Family.TM_RECT, n=2, m=1, l=3), ModeId(Family.TE_RECT, n=1, m=2, l=-2)):
        fr = canonical_frame(mode)
        zs = np.linspace(0.0, rect.L / 2, 5)
        t = 2.7e-12
        scale = E_M
        for x_wall in (+rect.w / 2, -rect.w / 2):
            ys = np.linspace(-rect.d / 2, rect.d / 2, 7)
            s = eval_fields(rect, mode, fr, q, E_M, x_wall, ys[:, None], zs[None, :], t)
            assert np.max(np.abs(s.E[1])) < 1e-12 * scale
            assert np.max(np.abs(s.E[2])) < 1e-12 * scale
            assert np.max(np.abs(s.B[0])) < 1e-12 * scale / 3e8
        for y_wall in (+rect.d / 2, -rect.d / 2):
            xs = np.linspace(-rect.w / 2, rect.w / 2, 7)
            s = eval_fields(rect, mode, fr, q, E_M, xs[:, None], y_wall, zs[None, :], t)
            assert np.max(np.abs(s.E[0])) < 1e-12 * scale
            assert np.max(np.abs(s.E[2])) < 1e-12 * scale
            assert np.max(np.abs(s.B[1])) < 1e-12 * scale / 3e8


def test_plate_walls_and_tem_side_control(plates, q):
    tm = ModeId(Family.TM_PLATES, n=2, l=-3)
    xs = np.linspace(-plates.w / 2, plates.w / 2, 5)
    s = eval_fields(plates, tm, canonical_frame(tm), q, E_M, xs, plates.d / 2, 0.01, 0.0)
    assert np.max(np.abs(s.E[0])) < 1e-12 * E_M
    assert np.max(np.abs(s.E[2])) < 1e-12 * E_M
    # negative control: TEM side walls are virtual, the transverse field
    # does NOT vanish there
    tem = ModeId(Family.TEM, l=2)
    s2 = eval_fields(plates, tem, canonical_frame(tem), q, E_M, plates.w / 2,
                     0.0, 0.013, 1e-12)
    assert np.max(np.abs(s2.E[1])) > 0.1 * E_M


def test_out_of_cross_section_raises(rect, q):
    mode = ModeId(Family.TM_RECT, n=1, m=1, l=1)
    with pytest.raises(OutOfCrossSection):
        eval_fields(rect, mode, canonical_frame(mode), q, E_M, rect.w, 0.0, 0.0, 0.0)


def test_frame_validity_rules():
    TB, LR = ReferenceFrame.TOP_BOTTOM, ReferenceFrame.LEFT_RIGHT
    assert valid_frames(ModeId(Family.TEM, l=1)) == (TB,)
    assert valid_frames(ModeId(Family.TM_PLATES, n=1, l=1)) == (TB,)
    assert valid_frames(ModeId(Family.TE_PLATES, n=1, l=1)) == (LR,)
    assert valid_frames(ModeId(Family.TM_RECT, n=1, m=1, l=1)) == (TB, LR)
    assert valid_frames(ModeId(Family.TE_RECT, n=1, m=1, l=1)) == (TB, LR)
    assert valid_frames(ModeId(Family.TE_RECT, n=0, m=2, l=1)) == (TB,)
    assert valid_frames(ModeId(Family.TE_RECT, n=3, m=0, l=1)) == (LR,)
    with pytest.raises(InvalidFrame):
        eval_fields(
            Geometry(Kind.PARALLEL_PLATES, w=0.1, d=0.008, L=0.3),
            ModeId(Family.TEM, l=1), LR, Quadratures(1, 0, 0), 1.0,
            0.0, 0.0, 0.0, 0.0,
        )


def test_two_frame_descriptions_give_identical_fields(rect, q):
    # the same physical mode, amplitude quoted against either electrode pair
    for mode in (ModeId(Family.TM_RECT, n=2, m=1, l=3), ModeId(Family.TE_RECT, n=1, m=2, l=-2)):
        TB, LR = ReferenceFrame.TOP_BOTTOM, ReferenceFrame.LEFT_RIGHT
        e_lr = convert_frame(rect, mode, E_M, TB, LR)
        xs = np.linspace(-rect.w / 2, rect.w / 2, 6)[:, None]
        ys = np.linspace(-rect.d / 2, rect.d / 2, 5)[None, :]
        a = eval_fields(rect, mode, TB, q, E_M, xs, ys, 0.04, 1.5e-12)
        b = eval_fields(rect, mode, LR, q, e_lr, xs, ys, 0.04, 1.5e-12)
        scale = float(np.max(np.abs(a.E)))
        assert np.max(np.abs(a.E - b.E)) < 1e-12 * scale
        assert np.max(np.abs(a.B - b.B)) < 1e-12 * scale / 3e8


def test_convert_frame_round_trip_frozen_draws(rect):
    rng = np.random.default_rng(2)
    TB, LR = ReferenceFrame.TOP_BOTTOM, ReferenceFrame.LEFT_RIGHT
    for _ in range(20):
        n = int(rng.integers(1, 5))
        m = int(rng.integers(1, 5))
        fam = Family.TM_RECT if rng.random() < 0.5 else Family.TE_RECT
        mode = ModeId(fam, n=n, m=m, l=int(rng.integers(1, 9)))
        e0 = float(rng.uniform(1.0, 1e5))
        back = convert_frame(rect, mode, convert_frame(rect, mode, e0, TB, LR), LR, TB)
        # the factor is an exact rational times e0: round trip within 1 ulp
        assert abs(back - e0) <= np.spacing(e0)


@given(
    n=st.integers(1, 6),
    m=st.integers(1, 6),
    e0=st.floats(1e-3, 1e6),
)
@settings(max_examples=60, deadline=None)
def test_convert_frame_round_trip_property(n, m, e0):
    g = Geometry(Kind.RECTANGULAR, w=0.023, d=0.010, L=0.25)
    mode = ModeId(Family.TM_RECT, n=n, m=m, l=1)
    TB, LR = ReferenceFrame.TOP_BOTTOM, ReferenceFrame.LEFT_RIGHT
    there = convert_frame(g, mode, e0, TB, LR)
    back = convert_frame(g, mode, there, LR, TB)
    assert abs(back - e0) <= np.spacing(e0)
    # identity conversion is exact
    assert convert_frame(g, mode, e0, TB, TB) == e0


def test_random_mode_maxwell_spot_checks():
    # one random draw per family class, fixed seed
    rng = np.random.default_rng(7)
    draws = []
    for fam, idx in (
        (Family.TEM, (0, 0)),
        (Family.TM_PLATES, (int(rng.integers(1, 4)), 0)),
        (Family.TE_PLATES, (int(rng.integers(1, 4)), 0)),
        (Family.TM_RECT, (int(rng.integers(1, 4)), int(rng.integers(1, 4)))),
        (Family.TE_RECT, (int(rng.integers(1, 4)), int(rng.integers(1, 4)))),
        (Family.TE_RECT, (0, int(rng.integers(1, 4)))),
    ):
        if fam.kind is Kind.PARALLEL_PLATES:
            d = float(rng.uniform(0.004, 0.012))
            g = Geometry(Kind.PARALLEL_PLATES, w=float(rng.uniform(15, 30)) * d, d=d, L=0.3)
        else:
            g = Geometry(
                Kind.RECTANGULAR,
                w=float(rng.uniform(0.015, 0.03)),
                d=float(rng.uniform(0.006, 0.012)),
                L=0.25,
            )
        mode = ModeId(fam, n=idx[0], m=idx[1], l=int(rng.integers(1, 6)))
        qq = Quadratures(float(rng.normal()), float(rng.normal()), float(rng.uniform(0, 6)))
        draws.append((g, mode, qq))
    for g, mode, qq in draws:
        rep = maxwell_residuals(g, mode, valid_frames(mode)[0], qq, E_M)
        assert rep.max_rel < 1e-6, f"{mode.family.value}({mode.n},{mode.m}): {rep.max_rel:.2e}"
