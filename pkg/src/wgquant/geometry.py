"""Guide geometry, mode families, and dispersion.

Coordinates: x spans the width w, y spans the height d, z runs along the
guide of length L. Electrodes sit at y = +-d/2 (top/bottom) and, for the
rectangular guide, x = +-w/2 (left/right). The parallel-plate guide keeps
x = +-w/2 as virtual walls.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field

import numpy as np

from .constants import C_LIGHT
from .errors import DegenerateWavevector, InvalidMode


class Kind(enum.Enum):
    PARALLEL_PLATES = "plates"
    RECTANGULAR = "rect"


class Family(enum.Enum):
    TEM = "tem"
    TM_PLATES = "tm-plates"
    TE_PLATES = "te-plates"
    TM_RECT = "tm-rect"
    TE_RECT = "te-rect"

    @property
    def tag(self) -> str:
        """Short label used for display and tie-breaking: TEM, TM, TE."""
        if self is Family.TEM:
            return "TEM"
        return "TM" if self in (Family.TM_PLATES, Family.TM_RECT) else "TE"

    @property
    def kind(self) -> Kind:
        if self in (Family.TEM, Family.TM_PLATES, Family.TE_PLATES):
            return Kind.PARALLEL_PLATES
        return Kind.RECTANGULAR


@dataclass(frozen=True, slots=True)
class Geometry:
    """Cross-section and length of a Cartesian guide.

    Parameters
    ----------
    kind : Kind
        Parallel plates (virtual side walls) or rectangular tube.
    w, d, L : float
        Width (x), height (y), guide length (z), all in meters.
    wide_threshold : float
        Plates are treated as ideal when w >= wide_threshold * d; a
        narrower plate pair still computes but emits a warning, since the
        virtual side walls then sit close to the region of interest.
    """

    kind: Kind
    w: float
    d: float
    L: float
    wide_threshold: float = field(default=10.0, compare=False)

    def __post_init__(self) -> None:
        for name in ("w", "d", "L"):
            v = getattr(self, name)
            if not np.isfinite(v) or v <= 0.0:
                raise ValueError(f"{name} must be positive and finite, got {v}")
        if self.kind is Kind.PARALLEL_PLATES and self.w < self.wide_threshold * self.d:
            warnings.warn(
                f"parallel plates with w = {self.w} < {self.wide_threshold} x d = "
                f"{self.wide_threshold * self.d}: virtual side walls are not far "
                "from the plates",
                stacklevel=2,
            )


@dataclass(frozen=True, slots=True)
class ModeId:
    """A single guided mode: family, transverse indices, longitudinal index.

    n counts half-oscillations along y (height), m along x (width). l is the
    longitudinal index, a nonzero integer; beta = 2 pi l / L.
    """

    family: Family
    n: int = 0
    m: int = 0
    l: int = 1

    def __post_init__(self) -> None:
        for name in ("n", "m", "l"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)):
                raise InvalidMode(f"{name} must be an integer, got {v!r}")
        if self.l == 0:
            raise InvalidMode("l = 0 carries no propagating wave")
        fam = self.family
        if fam is Family.TEM and (self.n, self.m) != (0, 0):
            raise InvalidMode("TEM has no transverse indices")
        if fam in (Family.TM_PLATES, Family.TE_PLATES):
            if self.n < 1 or self.m != 0:
                raise InvalidMode(f"{fam.value} needs n >= 1 and m = 0")
        if fam is Family.TM_RECT and (self.n < 1 or self.m < 1):
            raise InvalidMode("tm-rect needs n >= 1 and m >= 1")
        if fam is Family.TE_RECT:
            if self.n < 0 or self.m < 0 or (self.n, self.m) == (0, 0):
                raise InvalidMode("te-rect needs n, m >= 0 and (n, m) != (0, 0)")


@dataclass(frozen=True, slots=True)
class DispersionPoint:
    """Wavenumbers and frequencies of one mode at one beta."""

    beta: float
    k: float
    omega: float
    k_c: float
    v_phi: float


def check_mode(g: Geometry, mode: ModeId) -> None:
    """Raise InvalidMode when the mode family does not live on this geometry."""
    if mode.family.kind is not g.kind:
        raise InvalidMode(
            f"{mode.family.value} is not defined on a {g.kind.value} guide"
        )


def transverse_wavenumbers(g: Geometry, mode: ModeId) -> tuple[float, float]:
    """(k_cx, k_cy) = (m pi / w, n pi / d)."""
    check_mode(g, mode)
    return mode.m * np.pi / g.w, mode.n * np.pi / g.d


def cutoff_wavenumber(g: Geometry, mode: ModeId) -> float:
    """Transverse wavenumber k_c; 0 for TEM."""
    k_cx, k_cy = transverse_wavenumbers(g, mode)
    return float(np.hypot(k_cx, k_cy))


def dispersion_at_beta(g: Geometry, mode: ModeId, beta: float) -> DispersionPoint:
    """Dispersion data at a continuous longitudinal wavenumber beta.

    The integer-l entry point wraps this; beta = 0 has no phase velocity and
    breaks every 1/beta closed form, so it raises DegenerateWavevector.
    """
    if beta == 0.0:
        raise DegenerateWavevector("beta = 0: phase velocity undefined")
    if not np.isfinite(beta):
        raise ValueError(f"beta must be finite, got {beta}")
    k_c = cutoff_wavenumber(g, mode)
    k = float(np.hypot(beta, k_c))
    omega = C_LIGHT * k
    return DispersionPoint(
        beta=float(beta), k=k, omega=omega, k_c=k_c, v_phi=C_LIGHT * k / abs(beta)
    )


def dispersion(g: Geometry, mode: ModeId) -> DispersionPoint:
    """Dispersion data for the mode's own beta = 2 pi l / L."""
    return dispersion_at_beta(g, mode, 2.0 * np.pi * mode.l / g.L)


@dataclass(frozen=True, slots=True)
class ModeSummary:
    """One row of a mode census: transverse structure only, no l."""

    family: Family
    n: int
    m: int
    k_c: float
    omega_c: float


def enumerate_modes(
    g: Geometry, omega_max: float, n_max: int = 50, m_max: int = 50
) -> list[ModeSummary]:
    """All mode families with cutoff frequency omega_c <= omega_max.

    Sorted by omega_c ascending (TEM first on plates since its cutoff is 0);
    ties broken by (family tag, n, m). Transverse indices are capped at
    n_max/m_max; a hit on the cap means the census is incomplete, so it
    raises rather than silently truncating.
    """
    if omega_max <= 0.0 or not np.isfinite(omega_max):
        raise ValueError("omega_max must be positive and finite")
    rows: list[ModeSummary] = []

    def push(family: Family, n: int, m: int) -> bool:
        k_c = float(np.hypot(m * np.pi / g.w, n * np.pi / g.d))
        omega_c = C_LIGHT * k_c
        if omega_c > omega_max:
            return False
        rows.append(ModeSummary(family=family, n=n, m=m, k_c=k_c, omega_c=omega_c))
        return True

    if g.kind is Kind.PARALLEL_PLATES:
        push(Family.TEM, 0, 0)
        for fam in (Family.TM_PLATES, Family.TE_PLATES):
            for n in range(1, n_max + 1):
                if not push(fam, n, 0):
                    break
            else:
                raise ValueError(f"n_max = {n_max} too small for omega_max")
    else:
        row_live = False
        for n in range(0, n_max + 1):
            row_live = False
            for m in range(0, m_max + 1):
                if (n, m) == (0, 0):
                    continue
                if push(Family.TE_RECT, n, m):
                    row_live = True
                    if n >= 1 and m >= 1:
                        push(Family.TM_RECT, n, m)  # same cutoff as the TE twin
                else:
                    break  # cutoff rises with m: row is finished
            else:
                raise ValueError(f"m_max = {m_max} too small for omega_max")
            if n >= 1 and not row_live:
                break  # cutoff rises with n: all later rows are empty too
        else:
            if row_live:
                raise ValueError(f"n_max = {n_max} too small for omega_max")
    return sorted(rows, key=lambda r: (r.omega_c, r.family.tag, r.n, r.m))
