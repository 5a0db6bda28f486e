"""Second quantization of the guided modes.

The lumped flux dynamics quantizes like an LC line: the closure
2 C_P omega phi_m^2 = hbar fixes the single-photon amplitude scale of every
mode, and the quadrature pair (X, Y) becomes the standard ladder pair with
[X, Y] = 2i and X^2 + Y^2 = 4 (n + 1/2). The module provides the quantized
amplitude scales, their ratio to the free-space vacuum field of the same
volume, and exact finite-dimensional checks of the ladder algebra carried
out in rational arithmetic over square roots (floating square roots do not
square back exactly: fl(sqrt(2))^2 != 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .constants import C_LIGHT, EPSILON_0, HBAR
from .errors import DegenerateScale, InvalidFrame
from .fields import Quadratures, ReferenceFrame, valid_frames
from .geometry import (
    Family,
    Geometry,
    ModeId,
    check_mode,
    dispersion,
    transverse_wavenumbers,
)
from .motion import modal_coefficients

Array = np.ndarray


@dataclass(frozen=True, slots=True)
class QuantumAmplitudes:
    """Single-photon scales of one mode: flux, field, and induction
    amplitudes, conjugate charge scale, comoving energy gap per photon,
    effective photon mass, and the equal-volume vacuum field."""

    phi_m: float
    E_m: float
    B_m: float
    Q_scale: float
    dH_per_photon: float
    photon_mass: float
    E_zpf: float


def zpf_level(g: Geometry, mode: ModeId) -> float:
    """Vacuum field of a hbar omega / 2 oscillator spread over the guide
    volume: sqrt(hbar omega / (2 eps0 w d L))."""
    dp = dispersion(g, mode)
    return float(np.sqrt(HBAR * dp.omega / (2.0 * EPSILON_0 * g.w * g.d * g.L)))


def quantize(
    g: Geometry, mode: ModeId, frame: ReferenceFrame | None = None
) -> QuantumAmplitudes:
    """Single-photon amplitude scales from the closure
    2 C_P omega phi_m^2 = hbar on the chosen electrode pair.

    E_m is referenced to `frame` (default canonical); a frame the mode does
    not support raises InvalidFrame.
    """
    check_mode(g, mode)
    frames = valid_frames(mode)
    if frame is None:
        frame = frames[0]
    if frame not in frames:
        raise InvalidFrame(
            f"{mode.family.value} mode has no {frame.value} description"
        )
    dp = dispersion(g, mode)
    mc = modal_coefficients(g, mode, frame)
    phi_m = float(np.sqrt(HBAR / (2.0 * mc.C_P * dp.omega)))
    e_m = phi_m * dp.omega / mc.h_eff
    return QuantumAmplitudes(
        phi_m=phi_m,
        E_m=e_m,
        B_m=e_m / C_LIGHT,
        Q_scale=mc.C_H * dp.omega * phi_m,
        dH_per_photon=HBAR * (C_LIGHT * dp.k_c) ** 2 / dp.omega,
        photon_mass=HBAR * dp.k_c / C_LIGHT,
        E_zpf=zpf_level(g, mode),
    )


def zpf_ratio(
    g: Geometry, mode: ModeId, frame: ReferenceFrame | None = None
) -> float:
    """E_m / E_zpf of the quantized mode."""
    qa = quantize(g, mode, frame)
    return qa.E_m / qa.E_zpf


def zpf_ratio_closed_form(
    g: Geometry, mode: ModeId, frame: ReferenceFrame | None = None
) -> float:
    """The same ratio from the family's closed form."""
    check_mode(g, mode)
    frames = valid_frames(mode)
    if frame is None:
        frame = frames[0]
    if frame not in frames:
        raise InvalidFrame(
            f"{mode.family.value} mode has no {frame.value} description"
        )
    dp = dispersion(g, mode)
    k_cx, k_cy = transverse_wavenumbers(g, mode)
    fam = mode.family
    slowing = abs(dp.beta) / dp.k
    if fam is Family.TEM:
        return 1.0
    if fam is Family.TM_PLATES:
        return float(np.sqrt(2.0) * slowing)
    if fam is Family.TE_PLATES or (
        fam is Family.TE_RECT and (mode.n == 0 or mode.m == 0)
    ):
        return float(np.sqrt(2.0))
    tb = frame is ReferenceFrame.TOP_BOTTOM
    if fam is Family.TM_RECT:
        ratio = 1.0 + (k_cx / k_cy) ** 2 if tb else 1.0 + (k_cy / k_cx) ** 2
        return float(np.sqrt(4.0 / ratio) * slowing)
    ratio = 1.0 + (k_cy / k_cx) ** 2 if tb else 1.0 + (k_cx / k_cy) ** 2
    return float(np.sqrt(4.0 / ratio))


def zpf_ratio_sweep(
    g: Geometry, family: Family, n: int, m: int, ls: Array
) -> Array:
    """E_m / E_zpf over a range of axial mode numbers."""
    out = np.empty(len(ls), dtype=float)
    for i, l in enumerate(ls):
        out[i] = zpf_ratio(g, ModeId(family, n=n, m=m, l=int(l)))
    return out


def closed_form_constants(
    g: Geometry, mode: ModeId, q: Quadratures
) -> tuple[float, float]:
    """(H, P_z) of the quantized mode at quadratures (X, Y):
    H = hbar omega (X^2 + Y^2) / 4, P_z = hbar beta (X^2 + Y^2) / 4."""
    check_mode(g, mode)
    dp = dispersion(g, mode)
    amp2 = q.X * q.X + q.Y * q.Y
    return HBAR * dp.omega * amp2 / 4.0, HBAR * dp.beta * amp2 / 4.0


def scaling_invariance_check(
    g: Geometry,
    mode: ModeId,
    q: Quadratures,
    alphas: tuple[float, ...] = (0.5, -0.5, 2.0, -2.0),
) -> float:
    """Max deviation of H(alpha q) - alpha^2 H(q) and the momentum analog,
    exactly zero in binary floating point for power-of-two alphas.

    alpha = 0 degenerates the quadrature scale and raises DegenerateScale.
    """
    worst = 0.0
    h0, p0 = closed_form_constants(g, mode, q)
    for a in alphas:
        if a == 0.0:
            raise DegenerateScale("zero quadrature scaling")
        qs = Quadratures(X=a * q.X, Y=a * q.Y, theta0=q.theta0)
        h1, p1 = closed_form_constants(g, mode, qs)
        worst = max(worst, abs(h1 - a * a * h0), abs(p1 - a * a * p0))
    return worst


# --------------------------------------------------------------------------
# Exact ladder algebra over the ring of rationals with square roots.
# --------------------------------------------------------------------------

RadMatrix = dict[int, list[list[Fraction]]]


def _squarefree(nval: int) -> tuple[int, int]:
    """n = s^2 * r with r squarefree; returns (s, r)."""
    s, r = 1, nval
    p = 2
    while p * p <= r:
        while r % (p * p) == 0:
            r //= p * p
            s *= p
        p += 1
    return s, r


def _zeros(dim: int) -> list[list[Fraction]]:
    return [[Fraction(0)] * dim for _ in range(dim)]


def _rad_add(a: RadMatrix, b: RadMatrix, sign: int = 1) -> RadMatrix:
    out: RadMatrix = {}
    for src, sgn in ((a, 1), (b, sign)):
        for r, mat in src.items():
            acc = out.setdefault(r, _zeros(len(mat)))
            for i, row in enumerate(mat):
                for j, v in enumerate(row):
                    acc[i][j] += sgn * v
    return {r: m for r, m in out.items() if any(any(v for v in row) for row in m)}


def _rad_mul(a: RadMatrix, b: RadMatrix, dim: int) -> RadMatrix:
    out: RadMatrix = {}
    for ra, ma in a.items():
        for rb, mb in b.items():
            s, r = _squarefree(ra * rb)
            acc = out.setdefault(r, _zeros(dim))
            for i in range(dim):
                row_a = ma[i]
                for k in range(dim):
                    v = row_a[k]
                    if v:
                        vs = v * s
                        row_b = mb[k]
                        acc_i = acc[i]
                        for j in range(dim):
                            if row_b[j]:
                                acc_i[j] += vs * row_b[j]
    return {r: m for r, m in out.items() if any(any(v for v in row) for row in m)}


def _lowering(dim: int) -> RadMatrix:
    out: RadMatrix = {}
    for i in range(dim - 1):
        s, r = _squarefree(i + 1)
        acc = out.setdefault(r, _zeros(dim))
        acc[i][i + 1] = Fraction(s)
    return out


def _transpose(a: RadMatrix) -> RadMatrix:
    return {
        r: [list(col) for col in zip(*mat)]  # noqa: B905
        for r, mat in a.items()
    }


@dataclass(frozen=True, slots=True)
class LadderReport:
    """Outcome of the ladder-algebra checks at Fock-space dimension dim.

    The exact flags are verdicts of rational arithmetic; the truncation tail
    is the required -(dim - 1) commutator entry at the last index. Rotation
    covariance is a floating-point check with its residual reported."""

    dim: int
    commutator_exact: bool
    number_identity_exact: bool
    truncation_tail_exact: bool
    rotation_residual: float
    mirror_exact: bool
    scaling_exact: bool


def ladder_algebra_check(
    fock_dim: int = 16, angle: float = 0.3, alphas: tuple[float, ...] = (0.5, -0.5, 2.0, -2.0)
) -> LadderReport:
    """Verify the quadrature operator algebra on a truncated Fock space.

    With X = b + b*, W = b - b* (so Y = -i W):
    * [b, b*] = diag(1, ..., 1, -(dim-1)) exactly;
    * X^2 - W^2 = X^2 + Y^2 = 4 (n + 1/2) exactly below the last index;
    * [X, W] = -2 [b, b*] exactly (so [X, Y] = 2i there);
    * rotated quadratures preserve both identities in floating point;
    * mirror flip Y -> -Y and power-of-two amplitude scalings are
      float-exact.
    """
    if fock_dim < 3:
        raise ValueError("need at least three Fock levels")
    dim = fock_dim
    b = _lowering(dim)
    bt = _transpose(b)
    x = _rad_add(b, bt)
    w = _rad_add(b, bt, sign=-1)

    comm_b = _rad_add(_rad_mul(b, bt, dim), _rad_mul(bt, b, dim), sign=-1)
    expect = {1: _zeros(dim)}
    for i in range(dim - 1):
        expect[1][i][i] = Fraction(1)
    expect[1][dim - 1][dim - 1] = Fraction(-(dim - 1))
    commutator_exact = comm_b == expect
    truncation_tail_exact = comm_b.get(1, _zeros(dim))[dim - 1][dim - 1] == Fraction(
        -(dim - 1)
    )

    # X^2 - W^2 = 2(b b* + b* b): diagonal 4n + 2 below the truncation row
    quad = _rad_add(_rad_mul(x, x, dim), _rad_mul(w, w, dim), sign=-1)
    number_identity_exact = set(quad.keys()) == {1}
    if number_identity_exact:
        mat = quad[1]
        for i in range(dim):
            for j in range(dim):
                want = Fraction(0)
                if i == j:
                    want = Fraction(4 * i + 2) if i < dim - 1 else Fraction(2 * (dim - 1))
                if mat[i][j] != want:
                    number_identity_exact = False

    comm_xw = _rad_add(_rad_mul(x, w, dim), _rad_mul(w, x, dim), sign=-1)
    minus_two = {
        r: [[Fraction(-2) * v for v in row] for row in m] for r, m in comm_b.items()
    }
    commutator_exact = commutator_exact and comm_xw == minus_two

    # floating-point rotation covariance
    bf = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1)
    xf = bf + bf.T
    yf = -1j * (bf - bf.T)
    c, s = np.cos(angle), np.sin(angle)
    xr = c * xf + s * yf
    yr = -s * xf + c * yf
    quad0 = xf @ xf + yf @ yf
    quadr = xr @ xr + yr @ yr
    comm0 = xf @ yf - yf @ xf
    commr = xr @ yr - yr @ xr
    rotation_residual = float(
        max(
            np.max(np.abs(quadr - quad0)) / np.max(np.abs(quad0)),
            np.max(np.abs(commr - comm0)) / np.max(np.abs(comm0)),
        )
    )

    # mirror flip: exact in floating point because negation is exact
    ym = -yf
    mirror_exact = bool(
        np.array_equal(xf @ xf + ym @ ym, quad0)
        and np.array_equal(xf @ ym - ym @ xf, -comm0)
    )

    scaling_exact = True
    for a in alphas:
        if a == 0.0:
            raise DegenerateScale("zero quadrature scaling")
        qa2 = (a * xf) @ (a * xf) + (a * yf) @ (a * yf)
        scaling_exact = scaling_exact and np.array_equal(qa2, a * a * quad0)

    return LadderReport(
        dim=dim,
        commutator_exact=commutator_exact,
        number_identity_exact=number_identity_exact,
        truncation_tail_exact=truncation_tail_exact,
        rotation_residual=rotation_residual,
        mirror_exact=mirror_exact,
        scaling_exact=scaling_exact,
    )
