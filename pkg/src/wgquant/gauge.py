"""Gauge potentials of the guided modes.

Each family carries a closed-form four-potential (A, V) in the Lorenz gauge
whose electrode-pair differences reproduce the flux field exactly:

    dphi/dt = DeltaV,     dphi/dz = -DeltaA_z,

where DeltaF = F(base electrode) + sigma F(facing electrode) with the
family parity sigma. The gauge freedom that survives the fixing is, for the
TEM/TM families and the doubly indexed TE family, a single transverse
profile p(x, y) solving p_xx + p_yy + k_c^2 p = 0 that vanishes on the
electrodes; its in-phase and out-of-phase coefficients (b_pi, b_tilde_pi)
can be injected to probe invariance. The remaining families are completely
fixed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import C_LIGHT
from .errors import UndefinedElectrode
from .fields import (
    FieldSample,
    Quadratures,
    ReferenceFrame,
    f_quadrature,
    f_tilde_quadrature,
    valid_frames,
)
from .boundary import pair_amplitude, pair_definitions
from .geometry import (
    Family,
    Geometry,
    ModeId,
    check_mode,
    dispersion,
    transverse_wavenumbers,
)
from .numerics import Stencil

Array = np.ndarray


@dataclass(frozen=True, slots=True)
class PotentialSample:
    """Vector potential A (V s/m) and scalar potential V (V); leading axis of
    A is the Cartesian component."""

    A: Array
    V: Array


@dataclass(frozen=True, slots=True)
class GaugeLedger:
    """Which gauge-basis coefficients the closed form fixes and which stay
    free (injectable through eval_potentials)."""

    fixed: tuple[str, ...]
    free: tuple[str, ...]


@dataclass(frozen=True, slots=True)
class Parity:
    """Electrode-pair combination signs: DeltaF = F_top + sigma F_bottom and
    DeltaF' = F_left + sigma_prime F_right; None where the pair carries no
    potential difference."""

    sigma: float | None
    sigma_prime: float | None


def parity(mode: ModeId) -> Parity:
    fam = mode.family
    if fam is Family.TEM:
        return Parity(sigma=-1.0, sigma_prime=None)
    if fam is Family.TM_PLATES:
        return Parity(sigma=(-1.0) ** mode.n, sigma_prime=None)
    if fam is Family.TE_PLATES:
        return Parity(sigma=None, sigma_prime=1.0)
    if fam is Family.TM_RECT:
        return Parity(sigma=(-1.0) ** mode.n, sigma_prime=(-1.0) ** mode.m)
    if mode.n == 0:
        return Parity(sigma=1.0, sigma_prime=None)
    if mode.m == 0:
        return Parity(sigma=None, sigma_prime=1.0)
    return Parity(sigma=(-1.0) ** mode.n, sigma_prime=(-1.0) ** mode.m)


def gauge_ledger(mode: ModeId) -> GaugeLedger:
    fam = mode.family
    if fam is Family.TEM:
        return GaugeLedger(fixed=("a_pi",), free=("b_pi", "b_tilde_pi"))
    if fam is Family.TM_PLATES:
        return GaugeLedger(fixed=("a_pi",), free=("b_pi", "b_tilde_pi"))
    if fam is Family.TE_PLATES:
        return GaugeLedger(fixed=("a_pi", "b_pi"), free=())
    if fam is Family.TM_RECT:
        return GaugeLedger(
            fixed=("a_pi", "c_pi", "d_pi"), free=("b_pi", "b_tilde_pi")
        )
    # te-rect: the free profile sin(u) sin(v) vanishes identically when an
    # index is zero, so the degenerate cases are completely fixed
    if mode.n == 0 or mode.m == 0:
        return GaugeLedger(fixed=("a_pi", "b_pi"), free=())
    return GaugeLedger(fixed=("a_pi", "c_pi", "d_pi"), free=("b_pi", "b_tilde_pi"))


def _pair_flux_amplitudes(
    g: Geometry, mode: ModeId, E_m: float, frame: ReferenceFrame
) -> tuple[float, float]:
    """(phi_m of the top/bottom row, phi_m of the left/right row); 0.0 where
    the mode has no such row."""
    defs = pair_definitions(g, mode)
    dp = dispersion(g, mode)
    out = []
    for pr in (ReferenceFrame.TOP_BOTTOM, ReferenceFrame.LEFT_RIGHT):
        pd = defs.get(pr)
        if pd is None or pd.form == "transverse":
            out.append(0.0)
        else:
            out.append(pair_amplitude(g, mode, pr, E_m, frame) * pd.h_eff / dp.omega)
    return out[0], out[1]


def eval_potentials(
    g: Geometry,
    mode: ModeId,
    q: Quadratures,
    E_m: float,
    x: Array,
    y: Array,
    z: Array,
    t: Array,
    frame: ReferenceFrame | None = None,
    b_pi: float = 0.0,
    b_tilde_pi: float = 0.0,
) -> PotentialSample:
    """Lorenz-gauge potentials at (x, y, z, t), broadcast over coordinates.

    E_m is referenced to `frame` (default canonical). b_pi / b_tilde_pi
    inject the residual gauge freedom where it exists; passing a nonzero
    value for a completely fixed family raises ValueError.
    """
    check_mode(g, mode)
    if frame is None:
        frame = valid_frames(mode)[0]
    ledger = gauge_ledger(mode)
    if not ledger.free and (b_pi != 0.0 or b_tilde_pi != 0.0):
        raise ValueError(
            f"gauge of {mode.family.value}(n={mode.n}, m={mode.m}) is completely fixed"
        )
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    dp = dispersion(g, mode)
    beta, omega, k = dp.beta, dp.omega, dp.k
    k_cx, k_cy = transverse_wavenumbers(g, mode)
    phi_m, phi_mp = _pair_flux_amplitudes(g, mode, E_m, frame)
    shape = np.broadcast_shapes(x.shape, y.shape)
    xb = np.broadcast_to(x, shape)
    yb = np.broadcast_to(y, shape)
    zero = np.zeros(shape)
    one = np.ones(shape)

    s_u = np.sin(k_cx * (xb + g.w / 2)) if k_cx > 0.0 else zero
    c_u = np.cos(k_cx * (xb + g.w / 2)) if k_cx > 0.0 else one
    s_v = np.sin(k_cy * (yb + g.d / 2)) if k_cy > 0.0 else zero
    c_v = np.cos(k_cy * (yb + g.d / 2)) if k_cy > 0.0 else one
    sg_n = float((-1) ** mode.n)
    sg_m = float((-1) ** mode.m)
    kc2 = k_cx * k_cx + k_cy * k_cy
    fam = mode.family

    # in-phase-free coefficients: component = P * f_tilde for A_x, A_y and
    # P * f for A_z, V
    if fam is Family.TEM:
        p_ax, p_ay = zero, zero
        p_az = phi_m * beta * (yb / g.d)
        p_v = phi_m * omega * (yb / g.d)
        free_p, dfree_dx, dfree_dy = one, zero, zero
    elif fam is Family.TM_PLATES:
        k_c = k_cy
        p_ax = zero
        p_ay = phi_m * sg_n * (c_v / g.d + k_c * s_v / 2.0)
        p_az = phi_m * sg_n * beta * (
            c_v / 2.0 + ((2.0 * k_c**2 + beta**2) / (g.d * k_c * beta**2)) * s_v
        )
        p_v = phi_m * sg_n * omega * (c_v / 2.0 + s_v / (g.d * k_c))
        free_p, dfree_dx, dfree_dy = s_v, zero, k_c * c_v
    elif fam is Family.TE_PLATES or (fam is Family.TE_RECT and mode.m == 0):
        k_c = k_cy
        p_ax = phi_mp * s_v / g.w
        p_ay = -phi_mp * k_c * c_v / 2.0
        p_az = phi_mp * beta * s_v / 2.0
        p_v = phi_mp * omega * s_v / 2.0
        free_p, dfree_dx, dfree_dy = zero, zero, zero
    elif fam is Family.TE_RECT and mode.n == 0:
        p_ax = -phi_m * k_cx * c_u / 2.0
        p_ay = phi_m * s_u / g.d
        p_az = phi_m * beta * s_u / 2.0
        p_v = phi_m * omega * s_u / 2.0
        free_p, dfree_dx, dfree_dy = zero, zero, zero
    elif fam is Family.TM_RECT:
        p_ax = (
            sg_n * phi_m * (-k_cx / 2.0) * c_u * c_v
            + sg_m * phi_mp * ((4.0 / g.w) * c_u * s_v + (k_cx / 2.0) * s_u * s_v)
        )
        p_ay = (
            sg_n * phi_m * (k_cy / 2.0) * s_u * s_v
            + sg_m
            * phi_mp
            * ((4.0 * k_cy / (g.w * k_cx)) * s_u * c_v - (k_cy / 2.0) * c_u * c_v)
        )
        p_az = (
            sg_n * phi_m * beta * s_u * c_v / 2.0
            + sg_m
            * phi_mp
            * (
                beta * c_u * s_v / 2.0
                + (2.0 * (kc2 - beta**2) / (g.w * k_cx * beta)) * s_u * s_v
            )
        )
        p_v = (
            sg_n * phi_m * omega * s_u * c_v / 2.0
            + sg_m
            * phi_mp
            * omega
            * (c_u * s_v / 2.0 - (2.0 / (g.w * k_cx)) * s_u * s_v)
        )
        free_p = s_u * s_v
        dfree_dx = k_cx * c_u * s_v
        dfree_dy = k_cy * s_u * c_v
    else:  # te-rect with n >= 1 and m >= 1
        p_ax = (
            sg_n * phi_m * (-k_cx / 2.0) * c_u * c_v
            + sg_m
            * phi_mp
            * (
                (2.0 * (k_cx**2 + k_cy * beta) / (g.w * k_cy * beta)) * c_u * s_v
                + (k_cx / 2.0) * s_u * s_v
            )
        )
        p_ay = (
            sg_n * phi_m * (k_cy / 2.0) * s_u * s_v
            + sg_m
            * phi_mp
            * (
                (2.0 * k_cx * (k_cy - beta) / (g.w * k_cy * beta)) * s_u * c_v
                - (k_cy / 2.0) * c_u * c_v
            )
        )
        p_az = (
            sg_n * phi_m * beta * s_u * c_v / 2.0
            + sg_m
            * phi_mp
            * (beta * c_u * s_v / 2.0 - (2.0 * k_cx / (g.w * k_cy)) * s_u * s_v)
        )
        p_v = (
            sg_n * phi_m * omega * s_u * c_v / 2.0
            + sg_m
            * phi_mp
            * omega
            * (c_u * s_v / 2.0 - (2.0 * k_cx / (g.w * k_cy * beta)) * s_u * s_v)
        )
        free_p = s_u * s_v
        dfree_dx = k_cx * c_u * s_v
        dfree_dy = k_cy * s_u * c_v

    ff = f_quadrature(q, dp, z, t)
    ft = f_tilde_quadrature(q, dp, z, t)
    full = np.broadcast_shapes(shape, np.shape(ff))
    ff = np.broadcast_to(ff, full)
    ft = np.broadcast_to(ft, full)

    def combine(coef_f: Array, coef_ft: Array) -> Array:
        return np.broadcast_to(coef_f, full) * ff + np.broadcast_to(coef_ft, full) * ft

    # free gauge term Pi = (b_pi f + b_tilde_pi f_tilde) p(x, y):
    # A += grad Pi, V -= dPi/dt
    a_x = combine(b_pi * dfree_dx, p_ax + b_tilde_pi * dfree_dx)
    a_y = combine(b_pi * dfree_dy, p_ay + b_tilde_pi * dfree_dy)
    a_z = combine(p_az - b_tilde_pi * beta * free_p, b_pi * beta * free_p)
    v = combine(p_v - b_tilde_pi * omega * free_p, b_pi * omega * free_p)
    return PotentialSample(A=np.stack([a_x, a_y, a_z]), V=v)


# --------------------------------------------------------------------------
# Electrode-pair differences and flux links.
# --------------------------------------------------------------------------


def delta_potentials(
    g: Geometry,
    mode: ModeId,
    pair: ReferenceFrame,
    q: Quadratures,
    E_m: float,
    u: Array,
    z: Array,
    t: Array,
    frame: ReferenceFrame | None = None,
    b_pi: float = 0.0,
    b_tilde_pi: float = 0.0,
) -> tuple[Array, Array]:
    """(DeltaV, DeltaA_z) across an electrode pair, at in-plane coordinate u.

    Defined exactly for the pairs carrying a potential difference (the
    mode's valid reference frames); others raise UndefinedElectrode.
    """
    check_mode(g, mode)
    if pair not in valid_frames(mode):
        raise UndefinedElectrode(
            f"{pair.value} pair of {mode.family.value} carries no potential link"
        )
    par = parity(mode)
    u = np.asarray(u, dtype=float)
    if pair is ReferenceFrame.TOP_BOTTOM:
        sig = par.sigma
        base = eval_potentials(
            g, mode, q, E_m, u, np.full_like(u, +g.d / 2), z, t, frame, b_pi, b_tilde_pi
        )
        face = eval_potentials(
            g, mode, q, E_m, u, np.full_like(u, -g.d / 2), z, t, frame, b_pi, b_tilde_pi
        )
    else:
        sig = par.sigma_prime
        base = eval_potentials(
            g, mode, q, E_m, np.full_like(u, +g.w / 2), u, z, t, frame, b_pi, b_tilde_pi
        )
        face = eval_potentials(
            g, mode, q, E_m, np.full_like(u, -g.w / 2), u, z, t, frame, b_pi, b_tilde_pi
        )
    assert sig is not None
    return base.V + sig * face.V, base.A[2] + sig * face.A[2]


def flux_link_residual(
    g: Geometry,
    mode: ModeId,
    pair: ReferenceFrame,
    q: Quadratures,
    E_m: float,
    n_u: int = 9,
    n_z: int = 7,
    n_t: int = 4,
    frame: ReferenceFrame | None = None,
    b_pi: float = 0.0,
    b_tilde_pi: float = 0.0,
) -> tuple[float, float]:
    """Max relative residuals of (dphi/dt = DeltaV, dphi/dz = -DeltaA_z),
    all sides analytic. Returns (rel_V, rel_A)."""
    from .boundary import flux_field  # local import to avoid cycle at load

    check_mode(g, mode)
    dp = dispersion(g, mode)
    ff = flux_field(g, mode, pair, E_m, frame)
    span = g.w if pair is ReferenceFrame.TOP_BOTTOM else g.d
    us = np.linspace(-span / 2, span / 2, n_u)
    zs = np.linspace(0.0, g.L / 2, n_z)
    ts = np.linspace(0.0, np.pi / dp.omega, n_t)
    U, Z, T = np.meshgrid(us, zs, ts, indexing="ij")
    dV, dA = delta_potentials(g, mode, pair, q, E_m, U, Z, T, frame, b_pi, b_tilde_pi)
    f = f_quadrature(q, dp, Z, T)
    phi_t = ff.phi_m * ff.g_phi(U) * dp.omega * f
    phi_z = -ff.phi_m * ff.g_phi(U) * dp.beta * f
    scale_t = float(np.max(np.abs(phi_t)))
    scale_z = float(np.max(np.abs(phi_z)))
    r_v = float(np.max(np.abs(phi_t - dV)))
    r_a = float(np.max(np.abs(phi_z + dA)))
    return (
        r_v / scale_t if scale_t > 0.0 else r_v,
        r_a / scale_z if scale_z > 0.0 else r_a,
    )


# --------------------------------------------------------------------------
# First-principles checks: Lorenz condition and field reconstruction.
# --------------------------------------------------------------------------


def _gauge_steps(
    g: Geometry,
    mode: ModeId,
    phase_step: float,
    skew: tuple[float, float, float, float],
) -> tuple[float, float, float, float]:
    dp = dispersion(g, mode)
    k_cx, k_cy = transverse_wavenumbers(g, mode)
    hx = skew[0] * phase_step / k_cx if k_cx > 0.0 else g.w / 16.0
    hy = skew[1] * phase_step / k_cy if k_cy > 0.0 else g.d / 16.0
    hz = skew[2] * phase_step / abs(dp.beta)
    ht = skew[3] * phase_step / dp.omega
    return hx, hy, hz, ht


MATCHED = (1.0, 1.0, 1.0, 1.0)


def lorenz_residual(
    g: Geometry,
    mode: ModeId,
    q: Quadratures,
    E_m: float,
    phase_step: float = 1.0e-3,
    skew: tuple[float, float, float, float] = MATCHED,
    n_trans: int = 5,
    n_z: int = 4,
    n_t: int = 3,
    frame: ReferenceFrame | None = None,
    b_pi: float = 0.0,
    b_tilde_pi: float = 0.0,
) -> tuple[float, float]:
    """Max |div A + (1/c^2) dV/dt| by central differences, (abs, rel).

    Relative to the largest constituent term and to omega max|V| / c^2,
    whichever is larger. Matched default steps measure closed-form
    consistency; skewed steps expose the O(h^2) for convergence studies.
    """
    dp = dispersion(g, mode)
    hx, hy, hz, ht = _gauge_steps(g, mode, phase_step, skew)
    xs = np.linspace(-g.w / 2 + 2 * hx, g.w / 2 - 2 * hx, n_trans)
    ys = np.linspace(-g.d / 2 + 2 * hy, g.d / 2 - 2 * hy, n_trans)
    zs = np.linspace(0.0, g.L / 2, n_z)
    ts = np.linspace(0.0, np.pi / dp.omega, n_t)
    X, Y, Z, T = np.meshgrid(xs, ys, zs, ts, indexing="ij")

    def pot(xx: Array, yy: Array, zz: Array, tt: Array) -> PotentialSample:
        return eval_potentials(
            g, mode, q, E_m, xx, yy, zz, tt, frame, b_pi, b_tilde_pi
        )

    dax = (pot(X + hx, Y, Z, T).A[0] - pot(X - hx, Y, Z, T).A[0]) / (2 * hx)
    day = (pot(X, Y + hy, Z, T).A[1] - pot(X, Y - hy, Z, T).A[1]) / (2 * hy)
    daz = (pot(X, Y, Z + hz, T).A[2] - pot(X, Y, Z - hz, T).A[2]) / (2 * hz)
    dvdt = (pot(X, Y, Z, T + ht).V - pot(X, Y, Z, T - ht).V) / (2 * ht)
    resid = dax + day + daz + dvdt / C_LIGHT**2
    r = float(np.max(np.abs(resid)))
    base = pot(X, Y, Z, T)
    scale = max(
        float(np.max(np.abs(dax))),
        float(np.max(np.abs(day))),
        float(np.max(np.abs(daz))),
        float(np.max(np.abs(dvdt))) / C_LIGHT**2,
        dp.omega * float(np.max(np.abs(base.V))) / C_LIGHT**2,
    )
    return r, (r / scale if scale > 0.0 else 0.0)


def reconstruct_fields(
    g: Geometry,
    mode: ModeId,
    q: Quadratures,
    E_m: float,
    x: Array,
    y: Array,
    z: Array,
    t: Array,
    phase_step: float = 2.0 * np.pi / 4096.0,
    frame: ReferenceFrame | None = None,
    b_pi: float = 0.0,
    b_tilde_pi: float = 0.0,
) -> FieldSample:
    """Fields from the potentials by central differences:
    E = -dA/dt - grad V, B = curl A.

    The stencil must stay inside the cross-section (StencilOutOfBounds
    otherwise). Matched phase steps on every axis keep the sinc factors
    common, so the error is (1 - sinc) ~ phase_step^2 / 6 of the local field;
    linear-profile families (TEM) reconstruct exactly.
    """
    hx, hy, hz, ht = _gauge_steps(g, mode, phase_step, MATCHED)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    sx = Stencil(hx, bounds=(-g.w / 2, g.w / 2))
    sy = Stencil(hy, bounds=(-g.d / 2, g.d / 2))
    x_lo, x_hi = sx.offsets(x)
    y_lo, y_hi = sy.offsets(y)

    def pot(xx: Array, yy: Array, zz: Array, tt: Array) -> PotentialSample:
        return eval_potentials(
            g, mode, q, E_m, xx, yy, zz, tt, frame, b_pi, b_tilde_pi
        )

    p_xhi, p_xlo = pot(x_hi, y, z, t), pot(x_lo, y, z, t)
    p_yhi, p_ylo = pot(x, y_hi, z, t), pot(x, y_lo, z, t)
    p_zhi, p_zlo = pot(x, y, np.asarray(z) + hz, t), pot(x, y, np.asarray(z) - hz, t)
    p_thi, p_tlo = pot(x, y, z, np.asarray(t) + ht), pot(x, y, z, np.asarray(t) - ht)

    dA_dx = (p_xhi.A - p_xlo.A) / (2 * hx)
    dA_dy = (p_yhi.A - p_ylo.A) / (2 * hy)
    dA_dz = (p_zhi.A - p_zlo.A) / (2 * hz)
    dA_dt = (p_thi.A - p_tlo.A) / (2 * ht)
    grad_v = np.stack(
        [
            (p_xhi.V - p_xlo.V) / (2 * hx),
            (p_yhi.V - p_ylo.V) / (2 * hy),
            (p_zhi.V - p_zlo.V) / (2 * hz),
        ]
    )
    E = -dA_dt - grad_v
    B = np.stack(
        [
            dA_dy[2] - dA_dz[1],
            dA_dz[0] - dA_dx[2],
            dA_dx[1] - dA_dy[0],
        ]
    )
    return FieldSample(E=E, B=B)
