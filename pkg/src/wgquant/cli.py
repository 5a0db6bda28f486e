"""Command-line front end.

Subcommands: `modes` (cutoff catalog), `field` (grid samples of E, B and
optionally A, V as CSV), `verify` (the full consistency report as JSON),
and `zpf` (vacuum-fluctuation ratio sweep as CSV). Every command accepts
--config pointing at a JSON object with the same keys as its long options;
explicit flags override the file. Data goes to stdout (or --out), all
diagnostics to stderr, and numeric output is scientific notation with 17
significant digits so identical configurations give byte-identical output.
"""

from __future__ import annotations

import json
import sys

import click

FRAME_CHOICES = ("top-bottom", "left-right")
FAULT_CHOICES = ("drop-kc-term", "wrong-facing-sign")


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"cannot read config: {exc}") from exc
    if not isinstance(cfg, dict):
        raise click.UsageError("config file must hold a JSON object")
    return cfg


def _pick(flag, cfg: dict, key: str, default=None, required: bool = False):
    """Flag value if given, else config value, else default."""
    val = flag if flag is not None else cfg.get(key, default)
    if required and val is None:
        raise click.UsageError(f"missing required option --{key}")
    return val


def _build_geometry(kind, w, d, length):
    from .errors import WaveguideError
    from .geometry import Geometry, Kind

    try:
        return Geometry(Kind(kind), w=w, d=d, L=length)
    except (WaveguideError, ValueError, TypeError) as exc:
        raise click.UsageError(f"invalid geometry: {exc}") from exc


def _build_mode(kind: str, family: str, n: int, m: int, l: int):
    from .errors import WaveguideError
    from .geometry import Family, ModeId

    table = {
        ("plates", "tem"): Family.TEM,
        ("plates", "tm"): Family.TM_PLATES,
        ("plates", "te"): Family.TE_PLATES,
        ("rect", "tm"): Family.TM_RECT,
        ("rect", "te"): Family.TE_RECT,
    }
    fam = table.get((kind, family))
    if fam is None:
        raise click.UsageError(f"family {family!r} is not defined for kind {kind!r}")
    try:
        return ModeId(fam, n=n, m=m, l=l)
    except (WaveguideError, ValueError, TypeError) as exc:
        raise click.UsageError(f"invalid mode: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _fmt(v: float) -> str:
    return f"{v:.16e}"


def _geometry_options(fn):
    for opt in reversed(
        (
            click.option(
                "--kind",
                type=click.Choice(["plates", "rect"]),
                default=None,
                help="Guide cross-section: parallel plates or rectangular tube.",
            ),
            click.option("--w", "w", type=float, default=None, help="Width (m)."),
            click.option("--d", "d", type=float, default=None, help="Height (m)."),
            click.option(
                "--L", "length", type=float, default=None, help="Guide length (m)."
            ),
            click.option(
                "--config",
                "config_path",
                type=click.Path(dir_okay=False),
                default=None,
                help="JSON file with defaults for these options.",
            ),
        )
    ):
        fn = opt(fn)
    return fn


def _mode_options(fn):
    for opt in reversed(
        (
            click.option(
                "--family",
                type=click.Choice(["tem", "tm", "te"]),
                default=None,
                help="Wave family.",
            ),
            click.option("--n", "n", type=int, default=None, help="Height-wise index."),
            click.option("--m", "m", type=int, default=None, help="Width-wise index."),
            click.option("--l", "l", type=int, default=None, help="Axial index (nonzero)."),
        )
    ):
        fn = opt(fn)
    return fn


def _quadrature_options(fn):
    for opt in reversed(
        (
            click.option("--X", "big_x", type=float, default=None, help="In-phase quadrature."),
            click.option("--Y", "big_y", type=float, default=None, help="Out-of-phase quadrature."),
            click.option("--theta0", type=float, default=None, help="Phase offset (rad)."),
        )
    ):
        fn = opt(fn)
    return fn


@click.group()
def main() -> None:
    """Complete quantum description of Cartesian waveguides: modal fields,
    gauge potentials, boundary charges and currents, generalized flux,
    constants of motion, and second-quantized amplitudes, each backed by
    first-principles numerical verification."""


@main.command("modes")
@_geometry_options
@click.option("--fmax", type=float, default=None, help="Upper frequency (Hz).")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "json"]),
    default=None,
    help="Output format (default text).",
)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def cmd_modes(kind, w, d, length, config_path, fmax, fmt, out) -> None:
    """List every propagating branch with cutoff below FMAX."""
    cfg = _load_config(config_path)
    kind = _pick(kind, cfg, "kind", required=True)
    w = _pick(w, cfg, "w", default=1.0 if kind == "plates" else None,
              required=kind != "plates")
    d = _pick(d, cfg, "d", required=True)
    length = _pick(length, cfg, "L", default=1.0)
    fmax = _pick(fmax, cfg, "fmax", required=True)
    fmt = _pick(fmt, cfg, "format", default="text")
    out = _pick(out, cfg, "out")
    g = _build_geometry(kind, w, d, length)

    import numpy as np

    from .geometry import enumerate_modes

    if fmax <= 0.0:
        raise click.UsageError("--fmax must be positive")
    rows = enumerate_modes(g, omega_max=2.0 * np.pi * fmax)
    if fmt == "json":
        payload = {
            "geometry": {"kind": kind, "w": g.w, "d": g.d},
            "modes": [
                {
                    "family": r.family.value,
                    "n": r.n,
                    "m": r.m,
                    "k_c": r.k_c,
                    "omega_c": r.omega_c,
                    "f_c": r.omega_c / (2.0 * np.pi),
                }
                for r in rows
            ],
        }
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", out)
    else:
        lines = [f"{'family':<10s} {'n':>3s} {'m':>3s} {'k_c [1/m]':>24s} {'omega_c [rad/s]':>24s}"]
        for r in rows:
            lines.append(
                f"{r.family.value:<10s} {r.n:>3d} {r.m:>3d} {_fmt(r.k_c):>24s} {_fmt(r.omega_c):>24s}"
            )
        _emit("\n".join(lines) + "\n", out)
    click.echo(f"{len(rows)} branch(es) below {fmax:g} Hz", err=True)


@main.command("field")
@_geometry_options
@_mode_options
@_quadrature_options
@click.option("--frame", type=click.Choice(list(FRAME_CHOICES)), default=None,
              help="Electrode pair the amplitude refers to (default canonical).")
@click.option("--E-m", "e_m", type=float, default=None,
              help="Field amplitude (V/m); default is the single-photon scale.")
@click.option("--nx", type=int, default=None, help="Grid points across width.")
@click.option("--ny", type=int, default=None, help="Grid points across height.")
@click.option("--nz", type=int, default=None, help="Grid points along the guide.")
@click.option("--t", "t_sample", type=float, default=None, help="Sample time (s).")
@click.option("--with-potentials", "with_potentials", is_flag=True, default=None,
              help="Append the gauge potential columns Ax,Ay,Az,V.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def cmd_field(kind, w, d, length, config_path, family, n, m, l, big_x, big_y,
              theta0, frame, e_m, nx, ny, nz, t_sample, with_potentials, out) -> None:
    """Sample E and B (and optionally A, V) on a regular grid as CSV."""
    cfg = _load_config(config_path)
    kind = _pick(kind, cfg, "kind", required=True)
    w = _pick(w, cfg, "w", required=True)
    d = _pick(d, cfg, "d", required=True)
    length = _pick(length, cfg, "L", required=True)
    family = _pick(family, cfg, "family", required=True)
    n = int(_pick(n, cfg, "n", default=0))
    m = int(_pick(m, cfg, "m", default=0))
    l = int(_pick(l, cfg, "l", default=1))
    big_x = _pick(big_x, cfg, "X", default=1.0)
    big_y = _pick(big_y, cfg, "Y", default=0.0)
    theta0 = _pick(theta0, cfg, "theta0", default=0.0)
    frame = _pick(frame, cfg, "frame")
    e_m = _pick(e_m, cfg, "E_m")
    nx = int(_pick(nx, cfg, "nx", default=5))
    ny = int(_pick(ny, cfg, "ny", default=5))
    nz = int(_pick(nz, cfg, "nz", default=5))
    t_sample = _pick(t_sample, cfg, "t", default=0.0)
    with_potentials = bool(_pick(with_potentials, cfg, "with_potentials", default=False))
    out = _pick(out, cfg, "out")
    g = _build_geometry(kind, w, d, length)
    mode = _build_mode(kind, family, n, m, l)
    if min(nx, ny, nz) < 1:
        raise click.UsageError("grid sizes must be at least 1")

    import numpy as np

    from .errors import WaveguideError
    from .fields import Quadratures, ReferenceFrame, eval_fields, valid_frames
    from .gauge import eval_potentials
    from .quanta import quantize

    try:
        fr = ReferenceFrame(frame) if frame is not None else valid_frames(mode)[0]
        if e_m is None:
            e_m = quantize(g, mode, fr).E_m
        q = Quadratures(X=big_x, Y=big_y, theta0=theta0)
        xs = np.linspace(-g.w / 2, g.w / 2, nx)
        ys = np.linspace(-g.d / 2, g.d / 2, ny)
        zs = np.linspace(0.0, g.L, nz)
        Z, Yg, Xg = np.meshgrid(zs, ys, xs, indexing="ij")
        fs = eval_fields(g, mode, fr, q, e_m, Xg, Yg, Z, t_sample)
        cols = [Xg, Yg, Z, np.full_like(Xg, t_sample), *fs.E, *fs.B]
        header = "x,y,z,t,Ex,Ey,Ez,Bx,By,Bz"
        if with_potentials:
            ps = eval_potentials(g, mode, q, e_m, Xg, Yg, Z, t_sample, fr)
            cols.extend([*ps.A, ps.V])
            header += ",Ax,Ay,Az,V"
    except (WaveguideError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc
    flat = [np.broadcast_to(c, Xg.shape).ravel() for c in cols]
    lines = [header]
    for i in range(flat[0].size):
        lines.append(",".join(_fmt(col[i]) for col in flat))
    _emit("\n".join(lines) + "\n", out)
    click.echo(
        f"{flat[0].size} samples of {mode.family.value}(n={mode.n}, m={mode.m}, "
        f"l={mode.l}) at E_m = {e_m:.6e} V/m",
        err=True,
    )


@main.command("verify")
@_geometry_options
@_mode_options
@_quadrature_options
@click.option("--E-m", "e_m", type=float, default=None,
              help="Field amplitude (V/m); default is the single-photon scale.")
@click.option("--fault", type=click.Choice(list(FAULT_CHOICES)), default=None,
              hidden=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def cmd_verify(kind, w, d, length, config_path, family, n, m, l, big_x, big_y,
               theta0, e_m, fault, out) -> None:
    """Run every consistency check against one mode; JSON report to stdout,
    exit 0 only if all checks pass."""
    cfg = _load_config(config_path)
    kind = _pick(kind, cfg, "kind", required=True)
    w = _pick(w, cfg, "w", required=True)
    d = _pick(d, cfg, "d", required=True)
    length = _pick(length, cfg, "L", required=True)
    family = _pick(family, cfg, "family", required=True)
    n = int(_pick(n, cfg, "n", default=0))
    m = int(_pick(m, cfg, "m", default=0))
    l = int(_pick(l, cfg, "l", default=1))
    big_x = _pick(big_x, cfg, "X", default=0.8)
    big_y = _pick(big_y, cfg, "Y", default=-0.45)
    theta0 = _pick(theta0, cfg, "theta0", default=0.3)
    e_m = _pick(e_m, cfg, "E_m")
    fault = _pick(fault, cfg, "fault")
    out = _pick(out, cfg, "out")
    g = _build_geometry(kind, w, d, length)
    mode = _build_mode(kind, family, n, m, l)

    from .errors import WaveguideError
    from .fields import Quadratures
    from .verify import run_checks

    try:
        q = Quadratures(X=big_x, Y=big_y, theta0=theta0)
        report = run_checks(g, mode, q, e_m, fault)
    except (WaveguideError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc
    _emit(json.dumps(report, sort_keys=True, indent=2) + "\n", out)
    for c in report["checks"]:
        flag = "ok  " if c["passed"] else "FAIL"
        click.echo(
            f"{flag} {c['name']:<21s} {c['residual']:.3e} <= {c['tolerance']:.0e}",
            err=True,
        )
    if not report["all_passed"]:
        click.echo("verification FAILED", err=True)
        sys.exit(1)
    click.echo("verification passed", err=True)


@main.command("zpf")
@_geometry_options
@_mode_options
@click.option("--l-min", "l_min", type=int, default=None, help="First axial index.")
@click.option("--l-max", "l_max", type=int, default=None, help="Last axial index.")
@click.option("--points", type=int, default=None,
              help="Sweep size (log-spaced unique integers).")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def cmd_zpf(kind, w, d, length, config_path, family, n, m, l, l_min, l_max,
            points, out) -> None:
    """Sweep the single-photon field over axial index as CSV `l,ratio`,
    with the ratio normalized to the equal-volume vacuum field."""
    cfg = _load_config(config_path)
    kind = _pick(kind, cfg, "kind", required=True)
    w = _pick(w, cfg, "w", required=True)
    d = _pick(d, cfg, "d", required=True)
    length = _pick(length, cfg, "L", required=True)
    family = _pick(family, cfg, "family", required=True)
    n = int(_pick(n, cfg, "n", default=0))
    m = int(_pick(m, cfg, "m", default=0))
    l_min = int(_pick(l_min, cfg, "l_min", default=1))
    l_max = int(_pick(l_max, cfg, "l_max", default=10000))
    points = int(_pick(points, cfg, "points", default=50))
    out = _pick(out, cfg, "out")
    _ = l  # the sweep supplies the axial index
    if not (0 < l_min <= l_max):
        raise click.UsageError("need 0 < l-min <= l-max")
    if points < 1:
        raise click.UsageError("--points must be positive")
    g = _build_geometry(kind, w, d, length)
    mode = _build_mode(kind, family, n, m, max(1, l_min))

    import numpy as np

    from .errors import WaveguideError
    from .quanta import zpf_ratio_sweep

    ls = np.unique(
        np.round(
            np.logspace(np.log10(l_min), np.log10(l_max), points)
        ).astype(int)
    )
    try:
        ratios = zpf_ratio_sweep(g, mode.family, mode.n, mode.m, ls)
    except (WaveguideError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc
    lines = ["l,ratio"]
    for li, ri in zip(ls, ratios):
        lines.append(f"{li},{_fmt(ri)}")
    _emit("\n".join(lines) + "\n", out)
    click.echo(
        f"{len(ls)} points; ratio({ls[0]}) = {ratios[0]:.6f}, "
        f"ratio({ls[-1]}) = {ratios[-1]:.6f}, sqrt(2) = {np.sqrt(2.0):.6f}",
        err=True,
    )


if __name__ == "__main__":
    main()
