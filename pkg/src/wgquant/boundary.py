"""Electrode surface charges, surface currents, and the generalized flux.

Orientation (fixed by the closed forms): Top is the electrode at y = +d/2
with inward normal -y, Bottom at y = -d/2 (+y), Left at x = +w/2 (-x),
Right at x = -w/2 (+x). With these choices the base electrode of each pair
(Top, Left) carries sigma = +C_d dphi/dt, and the facing electrode's
densities are -(-1)^n (top/bottom) or -(-1)^m (left/right) times the base
ones.

Two independent density routes exist and must agree:
  * from the fields:  sigma = eps0 n.E,  j = n x B / mu0, at the wall;
  * from the flux:    per-family closed forms in phi(u, z, t).
The flux phi of a pair is phi_m g_phi(u) f_tilde with phi_m = E_m h_eff /
omega, where E_m is the amplitude referenced to that pair.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .constants import EPSILON_0, MU_0
from .errors import InvalidMode, UndefinedElectrode
from .fields import (
    Quadratures,
    ReferenceFrame,
    convert_frame,
    eval_fields,
    f_quadrature,
    f_tilde_quadrature,
    valid_frames,
)
from .geometry import (
    Family,
    Geometry,
    Kind,
    ModeId,
    check_mode,
    dispersion,
    transverse_wavenumbers,
)

Array = np.ndarray


class ElectrodeId(enum.Enum):
    TOP = "top"
    BOTTOM = "bottom"
    LEFT = "left"
    RIGHT = "right"

    @property
    def pair(self) -> ReferenceFrame:
        if self in (ElectrodeId.TOP, ElectrodeId.BOTTOM):
            return ReferenceFrame.TOP_BOTTOM
        return ReferenceFrame.LEFT_RIGHT


class Reality(enum.Enum):
    REAL = "real"
    VIRTUAL = "virtual"


@dataclass(frozen=True, slots=True)
class Electrode:
    """One wall of the guide: location, inward normal, and whether it is a
    physical conductor or a bookkeeping (virtual) wall."""

    id: ElectrodeId
    reality: Reality
    position: float  # the fixed coordinate (y for top/bottom, x for left/right)
    normal: tuple[float, float, float]  # inward unit normal
    u_axis: str  # in-plane transverse coordinate: "x" for top/bottom, "y" for left/right


def electrode(g: Geometry, mode: ModeId, eid: ElectrodeId) -> Electrode:
    """Electrode data for this mode, or UndefinedElectrode if the wall plays
    no role in the mode's description (lateral walls of TEM/TM plates)."""
    check_mode(g, mode)
    if g.kind is Kind.PARALLEL_PLATES and eid.pair is ReferenceFrame.LEFT_RIGHT:
        if mode.family is not Family.TE_PLATES:
            raise UndefinedElectrode(
                f"{eid.value} wall carries no definition for {mode.family.value}"
            )
        reality = Reality.VIRTUAL
    else:
        reality = Reality.REAL
    table = {
        ElectrodeId.TOP: (+g.d / 2, (0.0, -1.0, 0.0), "x"),
        ElectrodeId.BOTTOM: (-g.d / 2, (0.0, +1.0, 0.0), "x"),
        ElectrodeId.LEFT: (+g.w / 2, (-1.0, 0.0, 0.0), "y"),
        ElectrodeId.RIGHT: (-g.w / 2, (+1.0, 0.0, 0.0), "y"),
    }
    pos, normal, u_axis = table[eid]
    return Electrode(id=eid, reality=reality, position=pos, normal=normal, u_axis=u_axis)


@dataclass(frozen=True, slots=True)
class SurfaceDensity:
    """Surface charge density sigma (C/m^2) and the in-plane surface current
    (A/m): j_u along the electrode's transverse coordinate (x on top/bottom,
    y on left/right) and j_z along the guide."""

    sigma: Array
    j_u: Array
    j_z: Array


# --------------------------------------------------------------------------
# Flux description of each electrode pair.
# --------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class PairDef:
    """How one electrode pair of a mode is described by a flux field.

    form is the current structure: "tem" (axial current only), "tm" (axial
    with the (k/beta)^2 factor), "te" (axial plus transverse), or
    "transverse" (the real-electrode pair of a gapped TE mode whose only
    density is a transverse current -L_inv k_c phi)."""

    pair: ReferenceFrame
    form: str
    h_eff: float
    base: ElectrodeId
    parity_index: int  # n for top/bottom pairs, m for left/right pairs
    k_par: float  # transverse wavenumber along the pair's u axis
    k_perp: float
    g_is_flat: bool  # g_phi = 1 instead of sin(k_par (u + span/2))
    u_span: float  # w for top/bottom pairs, d for left/right pairs


def pair_definitions(g: Geometry, mode: ModeId) -> dict[ReferenceFrame, PairDef]:
    """Flux descriptions of every electrode pair defined for this mode."""
    check_mode(g, mode)
    k_cx, k_cy = transverse_wavenumbers(g, mode)
    fam = mode.family
    TB, LR = ReferenceFrame.TOP_BOTTOM, ReferenceFrame.LEFT_RIGHT
    out: dict[ReferenceFrame, PairDef] = {}

    def tb(form: str, h: float, base: ElectrodeId, flat: bool) -> PairDef:
        return PairDef(
            pair=TB, form=form, h_eff=h, base=base, parity_index=mode.n,
            k_par=k_cx, k_perp=k_cy, g_is_flat=flat, u_span=g.w,
        )

    def lr(form: str, h: float, base: ElectrodeId, flat: bool) -> PairDef:
        return PairDef(
            pair=LR, form=form, h_eff=h, base=base, parity_index=mode.m,
            k_par=k_cy, k_perp=k_cx, g_is_flat=flat, u_span=g.d,
        )

    if fam is Family.TEM:
        out[TB] = tb("tem", g.d, ElectrodeId.TOP, flat=True)
    elif fam is Family.TM_PLATES:
        out[TB] = tb("tm", g.d / 2, ElectrodeId.TOP, flat=True)
    elif fam is Family.TE_PLATES:
        out[LR] = lr("te", g.w, ElectrodeId.LEFT, flat=False)
        out[TB] = tb("transverse", g.d, ElectrodeId.BOTTOM, flat=True)
    elif fam is Family.TM_RECT:
        out[TB] = tb("tm", g.d / 2, ElectrodeId.TOP, flat=False)
        out[LR] = lr("tm", g.w / 2, ElectrodeId.LEFT, flat=False)
    else:  # te-rect
        if mode.m >= 1:
            out[TB] = tb("te", g.d / 2 if mode.n >= 1 else g.d, ElectrodeId.TOP,
                         flat=False)
        else:
            out[TB] = tb("transverse", g.d, ElectrodeId.BOTTOM, flat=True)
        if mode.n >= 1:
            out[LR] = lr("te", g.w / 2 if mode.m >= 1 else g.w, ElectrodeId.LEFT,
                         flat=False)
        else:
            out[LR] = lr("transverse", g.w, ElectrodeId.RIGHT, flat=True)
    return out


def pair_amplitude(
    g: Geometry, mode: ModeId, pair: ReferenceFrame, E_m: float, frame: ReferenceFrame
) -> float:
    """Amplitude referenced to `pair`, given E_m referenced to `frame`.

    For a pair that is also a valid reference frame this is convert_frame;
    the transverse-current pairs of the gapped TE modes share the value of
    the mode's single frame amplitude."""
    if pair in valid_frames(mode):
        return convert_frame(g, mode, E_m, frame, pair)
    return convert_frame(g, mode, E_m, frame, valid_frames(mode)[0])


@dataclass(frozen=True, slots=True)
class FluxField:
    """Generalized flux phi(u, z, t) = phi_m g_phi(u) f_tilde(z, t) of one
    electrode pair, with the derived line capacitance / inductance scales."""

    pair: ReferenceFrame
    phi_m: float
    h_eff: float
    C_d: float
    L_d_inv: float
    g_phi: Callable[[Array], Array]
    dg_phi: Callable[[Array], Array]

    def phi(self, q: Quadratures, dp, u: Array, z: Array, t: Array) -> Array:
        return self.phi_m * self.g_phi(np.asarray(u)) * f_tilde_quadrature(q, dp, z, t)


def flux_field(
    g: Geometry,
    mode: ModeId,
    pair: ReferenceFrame,
    E_m: float,
    frame: ReferenceFrame | None = None,
) -> FluxField:
    """The flux field of an electrode pair; E_m is referenced to `frame`
    (default: the mode's canonical frame)."""
    defs = pair_definitions(g, mode)
    if pair not in defs:
        raise UndefinedElectrode(
            f"{pair.value} pair carries no flux for {mode.family.value}"
        )
    pd = defs[pair]
    if frame is None:
        frame = valid_frames(mode)[0]
    amp = pair_amplitude(g, mode, pair, E_m, frame)
    dp = dispersion(g, mode)
    phi_m = amp * pd.h_eff / dp.omega
    half_span = pd.u_span / 2

    if pd.g_is_flat:
        def g_phi(u: Array) -> Array:
            return np.ones_like(np.asarray(u, dtype=float))

        def dg_phi(u: Array) -> Array:
            return np.zeros_like(np.asarray(u, dtype=float))
    else:
        k_par = pd.k_par

        def g_phi(u: Array) -> Array:
            return np.sin(k_par * (np.asarray(u, dtype=float) + half_span))

        def dg_phi(u: Array) -> Array:
            return k_par * np.cos(k_par * (np.asarray(u, dtype=float) + half_span))

    return FluxField(
        pair=pair,
        phi_m=phi_m,
        h_eff=pd.h_eff,
        C_d=EPSILON_0 / pd.h_eff,
        L_d_inv=1.0 / (MU_0 * pd.h_eff),
        g_phi=g_phi,
        dg_phi=dg_phi,
    )


def facing_factor(mode: ModeId, eid: ElectrodeId, pd: PairDef) -> float:
    """Densities on `eid` = factor x densities on the pair's base electrode."""
    if eid is pd.base:
        return 1.0
    return -((-1.0) ** pd.parity_index)


def surface_density_from_fields(
    g: Geometry,
    mode: ModeId,
    eid: ElectrodeId,
    q: Quadratures,
    E_m: float,
    u: Array,
    z: Array,
    t: Array,
    frame: ReferenceFrame | None = None,
) -> SurfaceDensity:
    """sigma = eps0 n.E and j = n x B / mu0 evaluated on the electrode."""
    el = electrode(g, mode, eid)
    if frame is None:
        frame = valid_frames(mode)[0]
    u = np.asarray(u, dtype=float)
    if el.u_axis == "x":
        x, y = u, np.full_like(u, el.position)
    else:
        x, y = np.full_like(u, el.position), u
    s = eval_fields(g, mode, frame, q, E_m, x, y, z, t)
    n = np.array(el.normal).reshape((3,) + (1,) * (s.E.ndim - 1))
    sigma = EPSILON_0 * np.sum(n * s.E, axis=0)
    j3 = np.cross(np.broadcast_to(n, s.B.shape), s.B, axis=0) / MU_0
    j_u = j3[0] if el.u_axis == "x" else j3[1]
    return SurfaceDensity(sigma=sigma, j_u=j_u, j_z=j3[2])


def surface_density_from_flux(
    g: Geometry,
    mode: ModeId,
    eid: ElectrodeId,
    q: Quadratures,
    E_m: float,
    u: Array,
    z: Array,
    t: Array,
    frame: ReferenceFrame | None = None,
    form_override: str | None = None,
) -> SurfaceDensity:
    """Closed-form densities from the pair's flux field.

    Base-electrode forms (facing electrode = facing_factor times these):
      sigma = C_d dphi/dt
      tem:  j = -L_inv phi_z zhat
      tm:   j = -L_inv (k/beta)^2 phi_z zhat
      te:   j = -L_inv phi_z zhat - L_inv (1 + k_perp^2/k_par^2) phi_u uhat
      transverse: j = -L_inv k_c phi uhat, sigma = 0
    form_override forces one of tem/tm/te on a canonical pair (used for
    negative controls); it does not apply to transverse pairs.
    """
    el = electrode(g, mode, eid)
    defs = pair_definitions(g, mode)
    if el.id.pair not in defs:
        raise UndefinedElectrode(
            f"{eid.value} carries no flux densities for {mode.family.value}"
        )
    pd = defs[el.id.pair]
    ff = flux_field(g, mode, el.id.pair, E_m, frame)
    dp = dispersion(g, mode)
    u = np.asarray(u, dtype=float)
    f = f_quadrature(q, dp, z, t)
    ft = f_tilde_quadrature(q, dp, z, t)
    shape = np.broadcast_shapes(u.shape, np.shape(f))
    gp = np.broadcast_to(ff.g_phi(u), shape)
    dgp = np.broadcast_to(ff.dg_phi(u), shape)
    f = np.broadcast_to(f, shape)
    ft = np.broadcast_to(ft, shape)

    form = pd.form
    if form_override is not None:
        if form == "transverse":
            raise UndefinedElectrode("transverse-current pair has no axial form")
        if form_override not in ("tem", "tm", "te"):
            raise ValueError(f"unknown form {form_override!r}")
        form = form_override

    fac = facing_factor(mode, eid, pd)
    if pd.form == "transverse":
        k_c_pair = pd.k_perp  # the only nonzero transverse wavenumber here
        sigma = np.zeros(shape)
        j_u = -ff.L_d_inv * k_c_pair * ff.phi_m * gp * ft
        j_z = np.zeros(shape)
        return SurfaceDensity(sigma=fac * sigma, j_u=fac * j_u, j_z=fac * j_z)

    # canonical pair: phi_t = omega phi_m g f, phi_z = -beta phi_m g f
    sigma = ff.C_d * ff.phi_m * dp.omega * gp * f
    phi_z = -dp.beta * ff.phi_m * gp * f
    a_z = (dp.k / dp.beta) ** 2 if form == "tm" else 1.0
    j_z = -ff.L_d_inv * a_z * phi_z
    if form == "te":
        r_fac = 1.0 + (pd.k_perp / pd.k_par) ** 2 if pd.k_par > 0.0 else 1.0
        j_u = -ff.L_d_inv * r_fac * ff.phi_m * dgp * ft
    else:
        j_u = np.zeros(shape)
    return SurfaceDensity(sigma=fac * sigma, j_u=fac * j_u, j_z=fac * j_z)


# --------------------------------------------------------------------------
# Conservation checks.
# --------------------------------------------------------------------------


def charge_conservation_residual(
    g: Geometry,
    mode: ModeId,
    eid: ElectrodeId,
    q: Quadratures,
    E_m: float,
    phase_step: float = 1.0e-3,
    skew: tuple[float, float, float] = (1.0, 1.0, 1.0),
    n_u: int = 9,
    n_z: int = 7,
    n_t: int = 4,
) -> tuple[float, float]:
    """Max |d j_u/du + d j_z/dz + d sigma/dt| on the electrode, (abs, rel).

    Central differences with per-axis steps of phase_step radians (times
    skew). Equal phases cancel the discretization exactly for these harmonic
    densities, so the default measures pure closed-form consistency; skewed
    phases expose an honest O(h^2) for convergence studies. The relative
    value is against the largest constituent term (omega max|sigma| when the
    pair carries charge).
    """
    el = electrode(g, mode, eid)
    dp = dispersion(g, mode)
    defs = pair_definitions(g, mode)
    if el.id.pair not in defs:
        raise UndefinedElectrode(
            f"{eid.value} carries no flux densities for {mode.family.value}"
        )
    pd = defs[el.id.pair]
    k_par = pd.k_par if pd.form != "transverse" else pd.k_perp
    h_u = skew[0] * phase_step / k_par if k_par > 0.0 else pd.u_span / 16.0
    h_z = skew[1] * phase_step / abs(dp.beta)
    h_t = skew[2] * phase_step / dp.omega

    span = pd.u_span
    us = np.linspace(-span / 2 + 2 * h_u, span / 2 - 2 * h_u, n_u)
    zs = np.linspace(0.0, g.L / 2, n_z)
    ts = np.linspace(0.0, np.pi / dp.omega, n_t)
    U, Z, T = np.meshgrid(us, zs, ts, indexing="ij")

    def dens(uu: Array, zz: Array, tt: Array) -> SurfaceDensity:
        return surface_density_from_flux(g, mode, eid, q, E_m, uu, zz, tt)

    dj_u = (dens(U + h_u, Z, T).j_u - dens(U - h_u, Z, T).j_u) / (2 * h_u)
    dj_z = (dens(U, Z + h_z, T).j_z - dens(U, Z - h_z, T).j_z) / (2 * h_z)
    dsig = (dens(U, Z, T + h_t).sigma - dens(U, Z, T - h_t).sigma) / (2 * h_t)
    resid = float(np.max(np.abs(dj_u + dj_z + dsig)))
    scale = max(
        float(np.max(np.abs(a))) for a in (dj_u, dj_z, dsig)
    )
    base = dens(U, Z, T)
    scale = max(scale, dp.omega * float(np.max(np.abs(base.sigma))))
    return resid, (resid / scale if scale > 0.0 else 0.0)


#: the four guide edges: (top/bottom electrode, left/right electrode,
#: x position, y position)
_EDGES = (
    (ElectrodeId.TOP, ElectrodeId.LEFT),
    (ElectrodeId.TOP, ElectrodeId.RIGHT),
    (ElectrodeId.BOTTOM, ElectrodeId.LEFT),
    (ElectrodeId.BOTTOM, ElectrodeId.RIGHT),
)


def peripheral_current_continuity(
    g: Geometry,
    mode: ModeId,
    q: Quadratures,
    E_m: float,
    n_z: int = 7,
    n_t: int = 4,
) -> tuple[float, float]:
    """Continuity of the surface current around the cross-section perimeter.

    At each of the four edges the current leaving one electrode across the
    edge must enter the adjacent one: j_A . nu_A + j_B . nu_B = 0 with nu the
    in-plane outward normals, and the axial components must match. Returns
    (abs, rel to max |j|). Only the TE families circulate current through the
    edges; other families raise InvalidMode.
    """
    check_mode(g, mode)
    if mode.family not in (Family.TE_PLATES, Family.TE_RECT):
        raise InvalidMode(
            f"{mode.family.value} carries no peripheral current loop"
        )
    dp = dispersion(g, mode)
    zs = np.linspace(0.0, g.L / 2, n_z)
    ts = np.linspace(0.0, np.pi / dp.omega, n_t)
    Z, T = np.meshgrid(zs, ts, indexing="ij")
    worst = 0.0
    jmax = 0.0
    for e_tb, e_lr in _EDGES:
        x_edge = +g.w / 2 if e_lr is ElectrodeId.LEFT else -g.w / 2
        y_edge = +g.d / 2 if e_tb is ElectrodeId.TOP else -g.d / 2
        d_tb = surface_density_from_flux(g, mode, e_tb, q, E_m, x_edge, Z, T)
        d_lr = surface_density_from_flux(g, mode, e_lr, q, E_m, y_edge, Z, T)
        nu_tb = np.sign(x_edge)  # in-plane outward normal of top/bottom at the edge
        nu_lr = np.sign(y_edge)
        mism = np.abs(nu_tb * d_tb.j_u + nu_lr * d_lr.j_u)
        mism_z = np.abs(d_tb.j_z - d_lr.j_z)
        worst = max(worst, float(np.max(mism)), float(np.max(mism_z)))
        jmax = max(
            jmax,
            float(np.max(np.hypot(d_tb.j_u, d_tb.j_z))),
            float(np.max(np.hypot(d_lr.j_u, d_lr.j_z))),
        )
    return worst, (worst / jmax if jmax > 0.0 else 0.0)
