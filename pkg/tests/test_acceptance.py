"""Acceptance suite: one test per acceptance criterion, at the stated
tolerances. Each test prints a single PASS line with its headline numbers
(visible with -s or on failure); the -v test report carries the per-criterion
pass/fail verdict.
"""

import math
import time

import numpy as np
import pytest

from wgquant import (
    C_LIGHT,
    HBAR,
    Family,
    Geometry,
    Kind,
    ModeId,
    Quadratures,
    ReferenceFrame,
    closed_form_constants,
    convert_frame,
    dispersion,
    eval_fields,
    flux_field,
    flux_link_residual,
    ladder_algebra_check,
    lorenz_residual,
    maxwell_convergence,
    maxwell_residuals,
    modal_coefficients,
    motion_by_quadrature,
    quantize,
    reconstruct_fields,
    scaling_invariance_check,
    surface_density_from_fields,
    surface_density_from_flux,
    valid_frames,
    zpf_ratio,
)
from wgquant.boundary import ElectrodeId
from wgquant.geometry import transverse_wavenumbers
from wgquant.fields import f_tilde_quadrature
from conftest import CASES


def test_criterion_1_single_photon_ratio_sweep():
    # square tube, guide a hundred heights long, lowest doubly indexed mode
    t0 = time.perf_counter()
    d = 0.01
    g = Geometry(Kind.RECTANGULAR, w=d, d=d, L=100 * d)
    r1 = zpf_ratio(g, ModeId(Family.TM_RECT, n=1, m=1, l=1))
    r_inf = zpf_ratio(g, ModeId(Family.TM_RECT, n=1, m=1, l=10**5))
    ls = np.unique(np.logspace(0, 5, 60).astype(int))
    ratios = [zpf_ratio(g, ModeId(Family.TM_RECT, n=1, m=1, l=int(l))) for l in ls]
    elapsed = time.perf_counter() - t0
    assert abs(r1 - 0.02) <= 0.02 * 0.02
    assert abs(r_inf - math.sqrt(2.0)) <= 1e-3 * math.sqrt(2.0)
    assert all(b > a for a, b in zip(ratios, ratios[1:]))  # monotone rise
    assert elapsed < 1.0
    print(f"criterion 1: PASS ratio(1) = {r1:.6f}, ratio(1e5) = {r_inf:.8f}, "
          f"{elapsed * 1e3:.0f} ms")


def test_criterion_2_vacuum_ratio_closure():
    worst = 0.0
    plates = Geometry(Kind.PARALLEL_PLATES, w=0.10, d=0.008, L=0.30)
    rect = Geometry(Kind.RECTANGULAR, w=0.023, d=0.010, L=0.25)
    cases = [
        (plates, ModeId(Family.TEM, l=2), 1.0, 5e-15),
        (plates, ModeId(Family.TE_PLATES, n=1, l=2), math.sqrt(2.0), 1e-12),
        (rect, ModeId(Family.TE_RECT, n=0, m=2, l=1), math.sqrt(2.0), 1e-12),
        (rect, ModeId(Family.TE_RECT, n=3, m=0, l=2), math.sqrt(2.0), 1e-12),
    ]
    mode_nm = ModeId(Family.TE_RECT, n=1, m=2, l=-2)
    k_cx, k_cy = transverse_wavenumbers(rect, mode_nm)
    cases.append(
        (rect, mode_nm, math.sqrt(4.0 / (1.0 + (k_cy / k_cx) ** 2)), 1e-12)
    )
    for g, mode, want, tol in cases:
        got = zpf_ratio(g, mode)
        rel = abs(got - want) / want
        worst = max(worst, rel)
        assert rel <= tol, f"{mode.family.value}({mode.n},{mode.m}): {rel:.2e}"
        # independent route: E_m = sqrt(hbar omega / (2 C_P h_eff^2))
        dp = dispersion(g, mode)
        mc = modal_coefficients(g, mode, valid_frames(mode)[0])
        e_ind = math.sqrt(HBAR * dp.omega / (2.0 * mc.C_P * mc.h_eff**2))
        assert abs(quantize(g, mode).E_m - e_ind) <= 1e-12 * e_ind
    print(f"criterion 2: PASS worst ratio deviation {worst:.2e}")


def test_criterion_3_maxwell_random_draws():
    t0 = time.perf_counter()
    rng = np.random.default_rng(20260816)
    classes = [
        (Family.TEM, lambda: (0, 0)),
        (Family.TM_PLATES, lambda: (int(rng.integers(1, 4)), 0)),
        (Family.TE_PLATES, lambda: (int(rng.integers(1, 4)), 0)),
        (Family.TM_RECT, lambda: (int(rng.integers(1, 4)), int(rng.integers(1, 4)))),
        (Family.TE_RECT, lambda: (int(rng.integers(1, 4)), int(rng.integers(1, 4)))),
        (Family.TE_RECT, lambda: (0, int(rng.integers(1, 4)))
            if rng.random() < 0.5 else (int(rng.integers(1, 4)), 0)),
    ]
    worst_rel, worst_order = 0.0, (2.0, 2.0)
    for fam, draw_nm in classes:
        for _ in range(5):
            n, m = draw_nm()
            if fam.kind is Kind.PARALLEL_PLATES:
                d = float(rng.uniform(0.004, 0.012))
                g = Geometry(Kind.PARALLEL_PLATES, w=float(rng.uniform(12, 25)) * d,
                             d=d, L=float(rng.uniform(0.15, 0.5)))
            else:
                g = Geometry(Kind.RECTANGULAR, w=float(rng.uniform(0.012, 0.035)),
                             d=float(rng.uniform(0.005, 0.014)),
                             L=float(rng.uniform(0.1, 0.6)))
            sign = -1 if rng.random() < 0.5 else 1
            mode = ModeId(fam, n=n, m=m, l=sign * int(rng.integers(1, 6)))
            q = Quadratures(float(rng.normal()), float(rng.normal()),
                            float(rng.uniform(0.0, 2 * math.pi)))
            frame = valid_frames(mode)[0]
            rep = maxwell_residuals(g, mode, frame, q, 2.5e4)
            assert rep.max_rel < 1e-6, f"{fam.value}({n},{m}): {rep.max_rel:.2e}"
            worst_rel = max(worst_rel, rep.max_rel)
            coarse, fine, order = maxwell_convergence(g, mode, frame, q, 2.5e4)
            assert fine < coarse
            assert 1.7 < order < 2.4, f"{fam.value}({n},{m}): order {order:.3f}"
            worst_order = min(worst_order, (abs(order - 2.0), order))
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0
    print(f"criterion 3: PASS 30 draws, worst residual {worst_rel:.2e}, "
          f"orders ~2, {elapsed:.1f} s")


def test_criterion_4_constants_of_motion(q):
    worst_h = worst_j = worst_t = 0.0
    for name, g, mode in CASES:
        qa = quantize(g, mode)
        dp = dispersion(g, mode)
        mot = motion_by_quadrature(g, mode, q, qa.E_m)
        H_ref, P_ref = closed_form_constants(g, mode, q)
        rel_h = abs(mot.H - H_ref) / abs(H_ref)
        rel_p = abs(mot.P_z - P_ref) / abs(P_ref)
        assert rel_h <= 1e-8 and rel_p <= 1e-8, name
        assert float(np.max(np.abs(mot.J))) <= 1e-10 * mot.H / dp.omega, name
        period = 2.0 * math.pi / dp.omega
        hs = [motion_by_quadrature(g, mode, q, qa.E_m, t=k * period / 8.0)
              for k in range(8)]
        drift = max(
            max(abs(v.H - mot.H) / mot.H, abs(v.P_z - mot.P_z) / abs(mot.P_z))
            for v in hs
        )
        assert drift <= 1e-10, name
        worst_h = max(worst_h, rel_h, rel_p)
        worst_j = max(worst_j, float(np.max(np.abs(mot.J))) * dp.omega / mot.H)
        worst_t = max(worst_t, drift)
    print(f"criterion 4: PASS closed-form {worst_h:.2e}, J {worst_j:.2e}, "
          f"time drift {worst_t:.2e}")


def test_criterion_5_gauge_suite(q):
    worst_fd = worst_an = 0.0
    for name, g, mode in CASES:
        E_m = 2.5e4
        _, rel_l = lorenz_residual(g, mode, q, E_m)
        assert rel_l <= 1e-6, f"{name} lorenz {rel_l:.2e}"
        xs = np.linspace(-0.7 * g.w / 2, 0.7 * g.w / 2, 5)[:, None]
        ys = np.linspace(-0.7 * g.d / 2, 0.7 * g.d / 2, 4)[None, :]
        want = eval_fields(g, mode, valid_frames(mode)[0], q, E_m, xs, ys,
                           0.3 * g.L, 1.7e-12)
        got = reconstruct_fields(g, mode, q, E_m, xs, ys, 0.3 * g.L, 1.7e-12)
        rel_r = float(np.max(np.abs(got.E - want.E))) / float(np.max(np.abs(want.E)))
        rel_rb = float(np.max(np.abs(got.B - want.B))) / float(np.max(np.abs(want.B)))
        assert rel_r <= 1e-6 and rel_rb <= 1e-6, f"{name} reconstruction"
        worst_fd = max(worst_fd, rel_l, rel_r, rel_rb)
        for pair in valid_frames(mode):  # both pairs on the doubly indexed
            rel_v, rel_a = flux_link_residual(g, mode, pair, q, E_m)
            assert max(rel_v, rel_a) <= 1e-10, f"{name}/{pair.value} links"
            worst_an = max(worst_an, rel_v, rel_a)
    print(f"criterion 5: PASS FD worst {worst_fd:.2e}, analytic worst {worst_an:.2e}")


def test_criterion_6_propagation_trichotomy(q):
    # Own law by the analytic quadrature identities (phi_zz = -beta^2 phi,
    # phi_tt = -omega^2 phi): residual < 1e-8 of the k^2 |phi| scale. A
    # single harmonic mode cannot violate the two laws whose parameters it
    # defines (phase velocity, own mass gap), so the discriminating negative
    # controls are (a) the free-space law fails on every gapped family at
    # exactly the k_c^2 |phi| scale and (b) the TM and TE current structures
    # are mutually exclusive on the electrodes.
    worst_own = 0.0
    for name, g, mode in CASES:
        dp = dispersion(g, mode)
        pair = valid_frames(mode)[0]
        ff = flux_field(g, mode, pair, 2.5e4)
        u0 = 0.0
        if not ff.g_phi(np.array([0.0]))[0]:
            u0 = (g.w if pair is ReferenceFrame.TOP_BOTTOM else g.d) / 4.0
        zs = np.linspace(0.0, g.L / 3, 5)
        phi = ff.phi(q, dp, u0, zs, 1.3e-12)
        scale = dp.k**2 * float(np.max(np.abs(phi)))
        law = {"tem": "c-wave",
               "tm-plates": "phase-velocity-wave", "tm-rect": "phase-velocity-wave",
               "te-plates": "klein-gordon", "te-rect": "klein-gordon"}[mode.family.value]
        phi_zz = -dp.beta**2 * phi
        phi_tt = -dp.omega**2 * phi
        if law == "c-wave":
            resid = phi_zz - phi_tt / C_LIGHT**2
        elif law == "phase-velocity-wave":
            resid = phi_zz - phi_tt / dp.v_phi**2
        else:
            resid = phi_zz - phi_tt / C_LIGHT**2 - dp.k_c**2 * phi
        rel = float(np.max(np.abs(resid))) / scale
        assert rel < 1e-8, f"{name}: own law {rel:.2e}"
        worst_own = max(worst_own, rel)
        if dp.k_c > 0.0:
            # free-space law misses by the full mass term
            viol = phi_zz - phi_tt / C_LIGHT**2
            assert float(np.max(np.abs(viol))) > 0.1 * dp.k_c**2 * float(
                np.max(np.abs(phi))), f"{name}: c-wave not rejected"

    # TM and TE electrode current structures reject each other
    rect = CASES[3][1]
    for mode, wrong in ((ModeId(Family.TE_RECT, n=1, m=2, l=-2), "tm"),
                        (ModeId(Family.TM_RECT, n=2, m=1, l=3), "te")):
        dp = dispersion(rect, mode)
        us = np.linspace(-rect.w / 2, rect.w / 2, 9)[:, None]
        zs = np.linspace(0.0, rect.L / 2, 5)[None, :]
        t = math.pi / (7 * dp.omega)
        a = surface_density_from_fields(rect, mode, ElectrodeId.TOP, q, 2.5e4, us, zs, t)
        b = surface_density_from_flux(rect, mode, ElectrodeId.TOP, q, 2.5e4, us, zs, t,
                                      form_override=wrong)
        scale = float(np.max(np.abs(a.j_z)))
        assert float(np.max(np.abs(a.j_z - b.j_z))) > 0.1 * scale
    print(f"criterion 6: PASS own-law worst {worst_own:.2e}, "
          "negative controls reject")


def test_criterion_7_quantum_algebra(rect, q):
    rep = ladder_algebra_check(fock_dim=16, angle=0.3)
    assert rep.commutator_exact and rep.number_identity_exact
    assert rep.truncation_tail_exact and rep.mirror_exact and rep.scaling_exact
    assert rep.rotation_residual <= 1e-12
    mode = ModeId(Family.TM_RECT, n=2, m=1, l=3)
    dev = scaling_invariance_check(rect, mode, q, alphas=(0.5, -0.5, 2.0, -2.0))
    assert dev == 0.0
    # the hbar closure is a property of the mode, independent of drive scale
    dp = dispersion(rect, mode)
    mc = modal_coefficients(rect, mode, valid_frames(mode)[0])
    closure = 2.0 * mc.C_P * dp.omega * quantize(rect, mode).phi_m**2
    assert abs(closure - HBAR) <= 1e-12 * HBAR
    print(f"criterion 7: PASS rotation residual {rep.rotation_residual:.2e}, "
          f"scaling deviation {dev:.1e}")


def test_criterion_8_cross_frame_equivalence(rect, q):
    TB, LR = ReferenceFrame.TOP_BOTTOM, ReferenceFrame.LEFT_RIGHT
    worst = 0.0
    for mode in (ModeId(Family.TM_RECT, n=2, m=1, l=3),
                 ModeId(Family.TE_RECT, n=1, m=2, l=-2)):
        E_m = 2.5e4
        e_lr = convert_frame(rect, mode, E_m, TB, LR)
        xs = np.linspace(-rect.w / 2, rect.w / 2, 7)[:, None]
        ys = np.linspace(-rect.d / 2, rect.d / 2, 5)[None, :]
        a = eval_fields(rect, mode, TB, q, E_m, xs, ys, 0.07, 2.2e-12)
        b = eval_fields(rect, mode, LR, q, e_lr, xs, ys, 0.07, 2.2e-12)
        rel = float(np.max(np.abs(a.E - b.E))) / float(np.max(np.abs(a.E)))
        assert rel <= 1e-8
        worst = max(worst, rel)

        mot_tb = motion_by_quadrature(rect, mode, q, E_m, frame=TB)
        mot_lr = motion_by_quadrature(rect, mode, q, e_lr, frame=LR)
        assert abs(mot_tb.H - mot_lr.H) <= 1e-8 * mot_tb.H
        assert abs(mot_tb.P_z - mot_lr.P_z) <= 1e-8 * abs(mot_tb.P_z)

        dp = dispersion(rect, mode)
        for fr in (TB, LR):
            mc = modal_coefficients(rect, mode, fr)
            closure = 2.0 * mc.C_P * dp.omega * quantize(rect, mode, fr).phi_m**2
            assert abs(closure - HBAR) <= 1e-8 * HBAR
            worst = max(worst, abs(closure - HBAR) / HBAR)
    print(f"criterion 8: PASS worst deviation {worst:.2e}")
