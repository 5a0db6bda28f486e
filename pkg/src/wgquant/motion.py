"""Constants of motion of a single guided mode.

Three independent routes to the same invariants:

* volume quadrature of the electromagnetic energy, momentum, and angular
  momentum densities (motion_by_quadrature);
* the flux-line form: lumped per-length capacitance/inductance coefficients
  against the peak flux function along the guide (energy_by_flux_form);
* per-electrode-pair surface integrals of the charge/current energy
  densities (surface_energy_integrals), whose pair totals sum to the
  volume energy for the doubly indexed families and equal it outright for
  the singly indexed ones.

All three agree to quadrature precision; their mutual equality is the
strongest single consistency check in the package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import C_LIGHT, EPSILON_0, MU_0
from .errors import GridTooCoarse, UndefinedElectrode
from .fields import Quadratures, ReferenceFrame, eval_g, f_quadrature, f_tilde_quadrature, valid_frames
from .boundary import flux_field, pair_definitions
from .geometry import (
    Family,
    Geometry,
    ModeId,
    check_mode,
    dispersion,
    transverse_wavenumbers,
)
from .numerics import composite_gauss_legendre, gauss_legendre

Array = np.ndarray


@dataclass(frozen=True, slots=True)
class MotionConstants:
    """Field energy H (J), axial momentum P_z (kg m/s), and angular momentum
    J (kg m^2/s, Cartesian 3-vector) of one mode over the guide volume."""

    H: float
    P_z: float
    J: Array


@dataclass(frozen=True, slots=True)
class ModalCoefficients:
    """Lumped flux-dynamics coefficients of one electrode pair: the Hamiltonian
    and momentum capacitances C_H, C_P (F), inverse inductance L_H_inv (1/H),
    the pair's effective plate separation, and the electrode combination
    parity."""

    C_H: float
    C_P: float
    L_H_inv: float
    h_eff: float
    sigma: float
    k_c: float
    v_phi: float
    pair: ReferenceFrame


@dataclass(frozen=True, slots=True)
class SurfaceEnergy:
    """One pair's surface-route invariants; H_addendum is the cutoff
    (below-propagation) energy share carried by this pair."""

    H: float
    H_addendum: float
    P_z: float


def modal_coefficients(
    g: Geometry, mode: ModeId, pair: ReferenceFrame
) -> ModalCoefficients:
    """Lumped coefficients of the pair's flux dynamics.

    Defined only for pairs that carry the mode's potential difference;
    auxiliary transverse-current pairs raise UndefinedElectrode.
    """
    check_mode(g, mode)
    if pair not in valid_frames(mode):
        raise UndefinedElectrode(
            f"{pair.value} pair of {mode.family.value} has no flux dynamics"
        )
    dp = dispersion(g, mode)
    k_cx, k_cy = transverse_wavenumbers(g, mode)
    defs = pair_definitions(g, mode)
    h_eff = defs[pair].h_eff
    c_d = EPSILON_0 / h_eff
    l_d_inv = 1.0 / (MU_0 * h_eff)
    fam = mode.family
    tb = pair is ReferenceFrame.TOP_BOTTOM
    span = g.w if tb else g.d

    if fam is Family.TEM:
        area = span * g.L
        c_h = c_d * area
        c_p = c_h
        l_h_inv = l_d_inv * area
        sigma = -1.0
    elif fam is Family.TM_PLATES:
        area = span * g.L
        c_h = c_d * area
        c_p = c_h * (dp.k / dp.beta) ** 2
        l_h_inv = l_d_inv * area * (dp.k / dp.beta) ** 4
        sigma = (-1.0) ** mode.n
    elif fam is Family.TE_PLATES or (fam is Family.TE_RECT and mode.m == 0):
        area = (g.d / 2.0) * g.L
        c_h = c_d * area
        c_p = c_h
        l_h_inv = l_d_inv * area
        sigma = 1.0
    elif fam is Family.TE_RECT and mode.n == 0:
        area = (g.w / 2.0) * g.L
        c_h = c_d * area
        c_p = c_h
        l_h_inv = l_d_inv * area
        sigma = 1.0
    elif fam is Family.TM_RECT:
        ratio = 1.0 + (k_cx / k_cy) ** 2 if tb else 1.0 + (k_cy / k_cx) ** 2
        area = (span / 2.0) * ratio * g.L
        c_h = c_d * area
        c_p = c_h * (dp.k / dp.beta) ** 2
        l_h_inv = l_d_inv * area * (dp.k / dp.beta) ** 4
        sigma = (-1.0) ** (mode.n if tb else mode.m)
    else:  # te-rect, n >= 1 and m >= 1
        ratio = 1.0 + (k_cy / k_cx) ** 2 if tb else 1.0 + (k_cx / k_cy) ** 2
        area = (span / 2.0) * ratio * g.L
        c_h = c_d * area
        c_p = c_h
        l_h_inv = l_d_inv * area
        sigma = (-1.0) ** (mode.n if tb else mode.m)

    return ModalCoefficients(
        C_H=c_h,
        C_P=c_p,
        L_H_inv=l_h_inv,
        h_eff=h_eff,
        sigma=sigma,
        k_c=dp.k_c,
        v_phi=dp.v_phi,
        pair=pair,
    )


# --------------------------------------------------------------------------
# Volume quadrature.
# --------------------------------------------------------------------------


def _z_moments(
    g: Geometry,
    mode: ModeId,
    q: Quadratures,
    t: float,
    analytic: bool,
) -> tuple[float, float, float, float]:
    """(I_ff, I_tt, I_ft, Z_ft): integrals over z in [0, L] of f^2, ft^2,
    f*ft, and z*f*ft at fixed time."""
    dp = dispersion(g, mode)
    if analytic:
        # full number of beat periods fits in L, so the quadratic means are
        # exact and the only surviving z-weighted moment is the beat moment
        amp2 = q.X * q.X + q.Y * q.Y
        a = dp.omega * t + q.theta0
        m_c = -g.L * np.sin(2 * a) / (2 * dp.beta)
        m_s = +g.L * np.cos(2 * a) / (2 * dp.beta)
        i_ff = g.L * amp2 / 2.0
        z_ft = (q.X * q.X - q.Y * q.Y) * m_s / 2.0 - q.X * q.Y * m_c
        return i_ff, i_ff, 0.0, float(z_ft)
    rule = composite_gauss_legendre(0.0, g.L, panels=2 * max(1, abs(mode.l)), order=16)
    f = f_quadrature(q, dp, rule.nodes, t)
    ft = f_tilde_quadrature(q, dp, rule.nodes, t)
    i_ff = float(np.sum(rule.weights * f * f))
    i_tt = float(np.sum(rule.weights * ft * ft))
    i_ft = float(np.sum(rule.weights * f * ft))
    z_ft = float(np.sum(rule.weights * rule.nodes * f * ft))
    return i_ff, i_tt, i_ft, z_ft


def motion_by_quadrature(
    g: Geometry,
    mode: ModeId,
    q: Quadratures,
    E_m: float,
    t: float = 0.0,
    frame: ReferenceFrame | None = None,
    order_x: int | None = None,
    order_y: int | None = None,
    analytic_z: bool = True,
) -> MotionConstants:
    """Volume integrals of energy, momentum, and angular momentum density.

    Cross-section by Gauss-Legendre at orders resolving every transverse
    half-oscillation (at least 4 nodes per half-wave, else GridTooCoarse);
    the axial direction either by exact quadratic z-means (analytic_z) or
    by composite quadrature resolving the traveling beat.
    """
    check_mode(g, mode)
    if frame is None:
        frame = valid_frames(mode)[0]
    if order_x is None:
        order_x = max(16, 8 * (mode.m + 1))
    if order_y is None:
        order_y = max(16, 8 * (mode.n + 1))
    if order_x < 4 * max(1, mode.m) or order_y < 4 * max(1, mode.n):
        raise GridTooCoarse(
            f"orders ({order_x}, {order_y}) under-resolve mode "
            f"(n={mode.n}, m={mode.m}); need at least 4 nodes per half-wave"
        )
    rx = gauss_legendre(-g.w / 2, g.w / 2, order_x)
    ry = gauss_legendre(-g.d / 2, g.d / 2, order_y)
    X, Y = np.meshgrid(rx.nodes, ry.nodes, indexing="ij")
    WXY = rx.weights[:, None] * ry.weights[None, :]
    gv = eval_g(g, mode, frame, X, Y)
    E = E_m * gv.e
    B = (E_m / C_LIGHT) * gv.b

    def sec(density: Array) -> float:
        return float(np.sum(WXY * density))

    # in-phase (f^2) and quadrature (ft^2) energy shares
    u_f = 0.5 * EPSILON_0 * (E[0] ** 2 + E[1] ** 2) + (B[0] ** 2 + B[1] ** 2) / (
        2 * MU_0
    )
    u_t = 0.5 * EPSILON_0 * E[2] ** 2 + B[2] ** 2 / (2 * MU_0)
    # momentum density shares: axial goes with f^2, transverse with f*ft
    p_z = EPSILON_0 * (E[0] * B[1] - E[1] * B[0])
    p_x = EPSILON_0 * (E[1] * B[2] - E[2] * B[1])
    p_y = EPSILON_0 * (E[2] * B[0] - E[0] * B[2])

    i_ff, i_tt, i_ft, z_ft = _z_moments(g, mode, q, t, analytic_z)
    H = sec(u_f) * i_ff + sec(u_t) * i_tt
    P_z = sec(p_z) * i_ff
    J_x = sec(Y * p_z) * i_ff - sec(p_y) * z_ft
    J_y = sec(p_x) * z_ft - sec(X * p_z) * i_ff
    J_z = sec(X * p_y - Y * p_x) * i_ft
    return MotionConstants(H=H, P_z=P_z, J=np.array([J_x, J_y, J_z]))


# --------------------------------------------------------------------------
# Flux-line route.
# --------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class FluxFormEnergy:
    """Invariants from the lumped flux-line form; H_addendum is the cutoff
    energy term, P_z the momentum from the flux gradient pairing."""

    H: float
    H_addendum: float
    P_z: float


def energy_by_flux_form(
    g: Geometry,
    mode: ModeId,
    pair: ReferenceFrame,
    q: Quadratures,
    E_m: float,
    t: float = 0.0,
    frame: ReferenceFrame | None = None,
    n_z: int | None = None,
) -> FluxFormEnergy:
    """Energy and momentum from the lumped coefficients against the peak flux
    line phi(z, t), averaged per unit length then restored over the guide:

        H = (1/L) integral of C_H phidot^2 / 2 + L_H_inv phi_z^2 / 2
            + C_P (c k_c)^2 phi^2 / 2 over z,
        P_z = (1/L) integral of C_P phidot (-phi_z) over z.

    Every pair that carries the mode yields the same full H and P_z.
    """
    check_mode(g, mode)
    mc = modal_coefficients(g, mode, pair)
    ff = flux_field(g, mode, pair, E_m, frame)
    dp = dispersion(g, mode)
    rule = composite_gauss_legendre(
        0.0, g.L, panels=2 * max(1, abs(mode.l)), order=n_z or 16
    )
    f = f_quadrature(q, dp, rule.nodes, t)
    ft = f_tilde_quadrature(q, dp, rule.nodes, t)
    phi = ff.phi_m * ft
    phi_dot = ff.phi_m * dp.omega * f
    phi_z = -ff.phi_m * dp.beta * f
    omega_c = C_LIGHT * dp.k_c

    def line(vals: Array) -> float:
        return float(np.sum(rule.weights * vals)) / g.L

    h_add = line(0.5 * mc.C_P * omega_c**2 * phi**2)
    h_main = line(0.5 * mc.C_H * phi_dot**2 + 0.5 * mc.L_H_inv * phi_z**2)
    p_z = line(mc.C_P * phi_dot * (-phi_z))
    return FluxFormEnergy(H=h_main + h_add, H_addendum=h_add, P_z=p_z)


# --------------------------------------------------------------------------
# Surface route.
# --------------------------------------------------------------------------


def surface_energy_integrals(
    g: Geometry,
    mode: ModeId,
    pair: ReferenceFrame,
    q: Quadratures,
    E_m: float,
    t: float = 0.0,
    frame: ReferenceFrame | None = None,
    n_u: int | None = None,
    n_z: int | None = None,
) -> SurfaceEnergy:
    """One pair's surface-route energy and momentum from its flux sheet
    phi(u, z, t).

    Singly indexed families put the whole H, P_z on their one pair; the
    doubly indexed rectangular families split them so the two pairs sum to
    the volume values, with equal cutoff addenda.
    """
    check_mode(g, mode)
    mc = modal_coefficients(g, mode, pair)  # validates the pair
    ff = flux_field(g, mode, pair, E_m, frame)
    dp = dispersion(g, mode)
    k_cx, k_cy = transverse_wavenumbers(g, mode)
    fam = mode.family
    tb = pair is ReferenceFrame.TOP_BOTTOM
    span = g.w if tb else g.d
    c_d = EPSILON_0 / mc.h_eff
    l_d_inv = 1.0 / (MU_0 * mc.h_eff)
    idx_u = mode.m if tb else mode.n
    ru = gauss_legendre(-span / 2, span / 2, n_u or max(16, 8 * (idx_u + 1)))
    rz = composite_gauss_legendre(
        0.0, g.L, panels=2 * max(1, abs(mode.l)), order=n_z or 16
    )
    U, Z = np.meshgrid(ru.nodes, rz.nodes, indexing="ij")
    W = ru.weights[:, None] * rz.weights[None, :]
    f = f_quadrature(q, dp, Z, t)
    ft = f_tilde_quadrature(q, dp, Z, t)
    g_u = ff.g_phi(U)
    dg_u = ff.dg_phi(U)
    phi = ff.phi_m * g_u * ft
    phi_dot = ff.phi_m * g_u * dp.omega * f
    phi_z = -ff.phi_m * g_u * dp.beta * f
    phi_u = ff.phi_m * dg_u * ft
    omega_c = C_LIGHT * dp.k_c

    def sheet(vals: Array) -> float:
        return float(np.sum(W * vals))

    if fam in (Family.TEM, Family.TM_PLATES) or (
        fam is Family.TM_RECT
    ):
        a_fac = 1.0 if fam is Family.TEM else (dp.k / dp.beta) ** 2
        if fam is Family.TM_RECT:
            ratio = 1.0 + (k_cx / k_cy) ** 2 if tb else 1.0 + (k_cy / k_cx) ** 2
            add_coef = 0.25 * ratio
        else:
            add_coef = 0.5
        h_add = sheet(add_coef * c_d * a_fac * omega_c**2 * phi**2)
        h_main = sheet(0.5 * c_d * phi_dot**2 + 0.5 * l_d_inv * a_fac**2 * phi_z**2)
        p_z = sheet(c_d * a_fac * phi_dot * (-phi_z))
    else:
        # transverse-electric: the cutoff share lives in the in-plane flux
        # gradient rather than an explicit mass term
        if fam is Family.TE_PLATES or (fam is Family.TE_RECT and (mode.n == 0 or mode.m == 0)):
            grad_coef = 0.5
        else:
            ratio = 1.0 + (k_cy / k_cx) ** 2 if tb else 1.0 + (k_cx / k_cy) ** 2
            grad_coef = 0.25 * ratio**2
        h_add = sheet(grad_coef * l_d_inv * phi_u**2)
        h_main = sheet(0.5 * c_d * phi_dot**2 + 0.5 * l_d_inv * phi_z**2)
        p_z = sheet(c_d * phi_dot * (-phi_z))
    return SurfaceEnergy(H=h_main + h_add, H_addendum=h_add, P_z=p_z)


# --------------------------------------------------------------------------
# Propagation law of the flux line.
# --------------------------------------------------------------------------

PROPAGATION_LAWS = ("c-wave", "phase-velocity-wave", "klein-gordon")


def family_propagation_law(mode: ModeId) -> str:
    """The named law the family's flux obeys with family-level constants:
    light-speed wave for the transverse electromagnetic mode, the
    phase-velocity wave for transverse magnetic, and the massive
    (klein-gordon) wave for transverse electric."""
    tag = mode.family.tag
    if tag == "TEM":
        return "c-wave"
    if tag == "TM":
        return "phase-velocity-wave"
    return "klein-gordon"


def flux_propagation_residual(
    g: Geometry,
    mode: ModeId,
    pair: ReferenceFrame,
    q: Quadratures,
    E_m: float,
    law: str,
    phase_step: float = 2.0 * np.pi / 4096.0,
    n_z: int = 7,
    n_t: int = 4,
    frame: ReferenceFrame | None = None,
) -> tuple[float, float]:
    """Finite-difference residual of a named propagation law on the pair's
    peak flux line, (abs, rel).

    c-wave:               phi_zz - phi_tt / c^2 = 0
    phase-velocity-wave:  phi_zz - (beta/k)^2 phi_tt / c^2 = 0
    klein-gordon:         phi_zz - phi_tt / c^2 - k_c^2 phi = 0

    A single mode satisfies its own family law and any law that reduces to
    it under the mode's dispersion; the light-speed wave discriminates the
    cutoff families (residual k_c^2 phi).
    """
    if law not in PROPAGATION_LAWS:
        raise ValueError(f"unknown propagation law {law!r}")
    check_mode(g, mode)
    dp = dispersion(g, mode)
    ff = flux_field(g, mode, pair, E_m, frame)
    hz = phase_step / abs(dp.beta)
    ht = phase_step / dp.omega
    zs = np.linspace(0.0, g.L / 2, n_z)
    ts = np.linspace(0.0, np.pi / dp.omega, n_t)
    Z, T = np.meshgrid(zs, ts, indexing="ij")
    u_peak = _peak_u(g, mode, pair)

    def phi(zz: Array, tt: Array) -> Array:
        return ff.phi(q, dp, u_peak, zz, tt)

    p0 = phi(Z, T)
    phi_zz = (phi(Z + hz, T) - 2 * p0 + phi(Z - hz, T)) / hz**2
    phi_tt = (phi(Z, T + ht) - 2 * p0 + phi(Z, T - ht)) / ht**2
    if law == "c-wave":
        resid = phi_zz - phi_tt / C_LIGHT**2
        mass = 0.0 * p0
    elif law == "phase-velocity-wave":
        resid = phi_zz - (dp.beta / dp.k) ** 2 * phi_tt / C_LIGHT**2
        mass = 0.0 * p0
    else:
        mass = dp.k_c**2 * p0
        resid = phi_zz - phi_tt / C_LIGHT**2 - mass
    r = float(np.max(np.abs(resid)))
    scale = max(
        float(np.max(np.abs(phi_zz))),
        float(np.max(np.abs(phi_tt))) / C_LIGHT**2,
        float(np.max(np.abs(mass))),
    )
    return r, (r / scale if scale > 0.0 else 0.0)


def _peak_u(g: Geometry, mode: ModeId, pair: ReferenceFrame) -> float:
    """In-plane coordinate where the pair's flux profile peaks."""
    k_cx, k_cy = transverse_wavenumbers(g, mode)
    if pair is ReferenceFrame.TOP_BOTTOM:
        span, k_u = g.w, k_cx
    else:
        span, k_u = g.d, k_cy
    if k_u == 0.0:
        return 0.0
    # first crest of sin(k_u (u + span/2))
    return float(np.pi / (2 * k_u) - span / 2)
