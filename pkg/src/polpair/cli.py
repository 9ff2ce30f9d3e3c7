"""Command-line interface.

Subcommands: dispersion, gap-map, bound, finite, validate. Parameters
come from flags, optionally backed by a key=value config file (flags
win). Angles are radians unless --pi-units is given, in which case phi,
Kx, Ky and their sweep ranges are read as multiples of pi.

Exit codes: 0 success, 1 structured computation error (a JSON error
object is printed), 2 usage error.

The --threads flag only changes how gap-map sweep rows are scheduled
across worker processes; row arithmetic is identical either way, so
output files are byte-identical for any thread count (and the flag is
deliberately not echoed into file headers).
"""

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .bound import bound_energy, bound_energy_approx, relative_wavefunction
from .dispersion import WaveVector2, axis_profile, bz_axis, gap_map
from .errors import (
    ConvergenceFailureError,
    DimensionError,
    DomainError,
    MaxIterationsError,
    NoGapError,
    NoSignChangeError,
    OutsideGapError,
    QuadratureFailureError,
    SingularityError,
)
from .lattice import spatial_distribution, two_excitation_spectrum
from .model import ModelParams
from .output import format_float, header_lines, write_csv, write_json
from .validate import CHECKS, run_checks

_STRUCTURED_ERRORS = (
    NoGapError,
    NoSignChangeError,
    OutsideGapError,
    DomainError,
    DimensionError,
    QuadratureFailureError,
    MaxIterationsError,
    ConvergenceFailureError,
    SingularityError,
    ValueError,
)

_STATE_SELECTORS = ("max-s", "min-gamma", "max-gamma")


def load_config(path, parser):
    """key=value lines; blanks and '#' comments ignored."""
    config = {}
    try:
        text = open(path).read()
    except OSError as exc:
        parser.error(f"cannot read config file: {exc}")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            parser.error(f"{path}:{lineno}: expected key=value, got {raw!r}")
        config[key.strip().replace("-", "_")] = value.strip()
    return config


class Resolver:
    """Flag > config-file > default resolution, with a header echo dict."""

    def __init__(self, ns, parser):
        self.ns = ns
        self.parser = parser
        self.config = load_config(ns.config, parser) if getattr(ns, "config", None) else {}
        self.pi_units = bool(
            getattr(ns, "pi_units", False) or self._config_value("pi_units") in ("true", "1")
        )
        self.echo = {"pi_units_input": self.pi_units}

    def _config_value(self, key):
        return self.config.get(key)

    def _raw(self, key):
        value = getattr(self.ns, key, None)
        if value is None:
            value = self._config_value(key)
        return value

    def get(self, key, cast=float, default=None, required=False, angle=False, echo=True):
        value = self._raw(key)
        if value is None:
            value = default
        elif isinstance(value, str):
            try:
                value = cast(value)
            except ValueError:
                self.parser.error(f"bad value for {key}: {value!r}")
        if value is None:
            if required:
                self.parser.error(f"missing required parameter: {key}")
            return None
        if angle and self.pi_units:
            value = value * np.pi
        if echo:
            self.echo[key] = value
        return value

    def get_range(self, key, angle=False):
        """Sweep range (lo, hi, count) from a 3-token flag or config value."""
        value = self._raw(key)
        if value is None:
            return None
        if isinstance(value, str):
            value = value.split()
        if len(value) != 3:
            self.parser.error(f"{key} needs three values: LO HI COUNT")
        try:
            lo, hi, count = float(value[0]), float(value[1]), int(value[2])
        except ValueError:
            self.parser.error(f"bad {key}: {value!r}")
        if count < 1:
            self.parser.error(f"{key} needs COUNT >= 1")
        if angle and self.pi_units:
            lo, hi = lo * np.pi, hi * np.pi
        self.echo[key] = f"{format_float(lo)}:{format_float(hi)}:{count}"
        return np.linspace(lo, hi, count)


def _write_rows_csv(ns, command, resolver, columns, rows):
    write_csv(ns.out, command, resolver.echo, columns, rows)


def cmd_dispersion(ns, parser):
    res = Resolver(ns, parser)
    phi = res.get("phi", required=True, angle=True)
    kx = res.get("kx", required=True, angle=True)
    ky = res.get("ky", required=True, angle=True)
    grid = res.get("grid", cast=int, default=201)
    if grid < 2:
        parser.error(f"--grid must be >= 2, got {grid}")
    ModelParams(phi=phi, n_sites=1)  # validates phi range

    qs = bz_axis(grid)
    x = axis_profile(qs, kx, phi)
    y = axis_profile(qs, ky, phi)
    eps = 0.5 * (x[:, None] + y[None, :])
    rows = []
    for i, qx in enumerate(qs):
        for j, qy in enumerate(qs):
            if np.isfinite(eps[i, j]):
                rows.append((format_float(qx), format_float(qy), format_float(eps[i, j])))
    _write_rows_csv(ns, "dispersion", res, ("qx", "qy", "eps"), rows)
    return 0


def cmd_gap_map(ns, parser):
    res = Resolver(ns, parser)
    phis = res.get_range("phi_range", angle=True)
    kxs = res.get_range("kx_range", angle=True)
    kys = res.get_range("ky_range", angle=True)
    swept = {
        name for name, rng in (("phi", phis), ("kx", kxs), ("ky", kys)) if rng is not None
    }
    allowed = ({"kx", "ky"}, {"phi"}, {"phi", "ky"})
    if swept not in allowed:
        parser.error(
            "gap-map sweeps exactly one of: {kx,ky} at fixed phi, {phi} at fixed K, "
            f"{{phi,ky}} at fixed kx; got ranges for {sorted(swept) or 'nothing'}"
        )
    phi_fixed = None if "phi" in swept else res.get("phi", angle=True, required=True)
    kx_fixed = None if "kx" in swept else res.get("kx", angle=True, required=True)
    ky_fixed = None if "ky" in swept else res.get("ky", angle=True, required=True)
    grid = res.get("grid", cast=int, default=1001)
    if grid < 64:
        parser.error(f"--grid must be >= 64 for gap maps, got {grid}")
    threads = res.get("threads", cast=int, default=os.cpu_count() or 1, echo=False)

    axes = [
        (name, values)
        for name, values in (("phi", phis), ("kx", kxs), ("ky", kys))
        if values is not None
    ]
    points = []
    sweeps = []
    if len(axes) == 1:
        for a in axes[0][1]:
            sweeps.append((a,))
    else:
        for a in axes[0][1]:
            for b in axes[1][1]:
                sweeps.append((a, b))
    for values in sweeps:
        row = dict(zip([name for name, _ in axes], values))
        phi = row.get("phi", phi_fixed)
        kx = row.get("kx", kx_fixed)
        ky = row.get("ky", ky_fixed)
        points.append((phi, WaveVector2(kx, ky)))
    reports = gap_map(points, grid_n=grid, n_workers=threads)

    columns = [name for name, _ in axes] + ["delta", "lower_edge", "upper_edge"]
    rows = []
    for values, report in zip(sweeps, reports):
        rows.append(
            tuple(format_float(v) for v in values)
            + (
                format_float(report.delta),
                format_float(report.lower_edge),
                format_float(report.upper_edge),
            )
        )
    _write_rows_csv(ns, "gap-map", res, columns, rows)
    return 0


def cmd_bound(ns, parser):
    res = Resolver(ns, parser)
    phi = res.get("phi", required=True, angle=True)
    kx = res.get("kx", required=True, angle=True)
    ky = res.get("ky", required=True, angle=True)
    grid = res.get("grid", cast=int, default=1001)
    tol = res.get("tol", default=1e-6)
    approx_only = bool(ns.approx)
    res.echo["approx"] = approx_only
    dmax = res.get("wavefunction", cast=int, default=None)
    wf_tol = res.get("wf_tol", default=1e-6, echo=dmax is not None)

    k_com = WaveVector2(kx, ky)
    try:
        eps_approx = bound_energy_approx(phi)
    except DomainError:
        eps_approx = None
    payload = {
        "command": "bound",
        "version": __version__,
        "config": {k: _jsonable(v) for k, v in sorted(res.echo.items())},
        "phi": phi,
        "Kx": kx,
        "Ky": ky,
        "eps_b_approx": eps_approx,
    }
    if approx_only:
        if eps_approx is None:
            raise DomainError(f"--approx needs pi/2 < phi < pi, got phi={phi}")
        payload.update({"eps_b_numeric": None, "gap": None, "residual": None})
        write_json(ns.out, payload)
        return 0

    result = bound_energy(k_com, phi, tol=tol, grid_n=grid)
    payload.update(
        {
            "eps_b_numeric": result.energy,
            "residual": result.residual,
            "gap": {
                "lo": result.gap.lower_edge,
                "hi": result.gap.upper_edge,
                "delta": result.gap.delta,
                "window_lo": result.gap.window_lo,
                "window_hi": result.gap.window_hi,
            },
        }
    )
    write_json(ns.out, payload)

    if dmax is not None:
        wf = relative_wavefunction(result, k_com, phi, dmax=dmax, tol=wf_tol)
        wf_path = ns.wavefunction_out or _derive_path(ns.out, "wavefunction.csv")
        res.echo.update({"eps_b_numeric": result.energy, "wavefunction_out": wf_path})
        rows = []
        offsets = range(-dmax, dmax + 1)
        for dx in offsets:
            for dy in offsets:
                rows.append((str(dx), str(dy), format_float(wf.amp(dx, dy))))
        write_csv(wf_path, "bound --wavefunction", res.echo, ("dx", "dy", "phi_amp"), rows)
    return 0


def _jsonable(value):
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    return value


def _derive_path(out_path, suffix):
    stem, _ = os.path.splitext(out_path)
    return f"{stem}.{suffix}"


def _select_state(selector, reports, parser):
    if selector == "max-s":
        return max(range(len(reports)), key=lambda k: reports[k].s_degree)
    if selector == "min-gamma":
        return min(range(len(reports)), key=lambda k: reports[k].decay)
    if selector == "max-gamma":
        return max(range(len(reports)), key=lambda k: reports[k].decay)
    try:
        index = int(selector)
    except ValueError:
        parser.error(f"--state-dump takes row indices or one of {_STATE_SELECTORS}")
    if not 0 <= index < len(reports):
        parser.error(f"state index {index} outside 0..{len(reports) - 1}")
    return index


def cmd_finite(ns, parser):
    res = Resolver(ns, parser)
    phi = res.get("phi", required=True, angle=True)
    n_sites = res.get("n", cast=int, required=True)
    force = bool(ns.force)
    if ns.state_dump and not ns.fixed_site:
        parser.error("--state-dump requires --fixed-site I J")
    if n_sites < 2:
        raise DimensionError(f"finite spectra need N >= 2, got {n_sites}")
    if n_sites > 12 and not force:
        raise DimensionError(
            f"N={n_sites} exceeds the desk-scale guard (12); pass --force to override"
        )
    params = ModelParams(phi=phi, n_sites=n_sites)
    reports, fields = two_excitation_spectrum(params)

    rows = [
        (
            format_float(rep.energy.real),
            format_float(rep.energy.imag),
            format_float(rep.decay),
            format_float(rep.s_degree),
            rep.label,
        )
        for rep in reports
    ]
    _write_rows_csv(ns, "finite", res, ("re_eps", "im_eps", "gamma", "s_degree", "label"), rows)

    if ns.state_dump:
        i, j = ns.fixed_site
        for selector in ns.state_dump:
            index = _select_state(selector, reports, parser)
            grid = spatial_distribution(fields[index], (i, j))
            info = dict(res.echo)
            info.update(
                {
                    "state_index": index,
                    "selector": selector,
                    "fixed_site": f"{i},{j}",
                    "re_eps": reports[index].energy.real,
                    "im_eps": reports[index].energy.imag,
                    "s_degree": reports[index].s_degree,
                }
            )
            state_rows = []
            for a in range(n_sites):
                for b in range(n_sites):
                    state_rows.append((str(a + 1), str(b + 1), format_float(grid[a, b])))
            write_csv(
                _derive_path(ns.out, f"state{index}.csv"),
                "finite --state-dump",
                info,
                ("x", "y", "prob"),
                state_rows,
            )
    return 0


def cmd_validate(ns, parser):
    only = ns.only or None
    if only:
        unknown = [name for name in only if name not in CHECKS]
        if unknown:
            parser.error(f"unknown check(s): {', '.join(unknown)}; have {', '.join(CHECKS)}")
    report = run_checks(only)
    report["version"] = __version__
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    if ns.out:
        write_json(ns.out, report)
    return 0 if report["all_passed"] else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="polpair",
        description="Two-polariton dispersion, bound pairs and finite-lattice "
        "spectra of a 2D waveguide-QED qubit lattice.",
    )
    parser.add_argument("--version", action="version", version=f"polpair {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_required=True):
        p.add_argument("--config", help="key=value config file; flags override it")
        p.add_argument(
            "--pi-units",
            action="store_true",
            default=None,
            help="interpret phi/Kx/Ky inputs as multiples of pi",
        )
        p.add_argument("--out", required=out_required, help="output file path")

    p_disp = sub.add_parser("dispersion", help="continuum energy over the relative-q zone")
    common(p_disp)
    p_disp.add_argument("--phi", type=float)
    p_disp.add_argument("--kx", type=float, dest="kx")
    p_disp.add_argument("--ky", type=float, dest="ky")
    p_disp.add_argument("--grid", type=int, help="samples per q axis (default 201)")
    p_disp.set_defaults(func=cmd_dispersion)

    p_gap = sub.add_parser("gap-map", help="band-gap size over a parameter sweep")
    common(p_gap)
    p_gap.add_argument("--phi", type=float)
    p_gap.add_argument("--kx", type=float)
    p_gap.add_argument("--ky", type=float)
    p_gap.add_argument("--phi-range", nargs=3, metavar=("LO", "HI", "COUNT"))
    p_gap.add_argument("--kx-range", nargs=3, metavar=("LO", "HI", "COUNT"))
    p_gap.add_argument("--ky-range", nargs=3, metavar=("LO", "HI", "COUNT"))
    p_gap.add_argument("--grid", type=int, help="samples per q axis (default 1001)")
    p_gap.add_argument("--threads", type=int, help="worker processes for sweep rows")
    p_gap.set_defaults(func=cmd_gap_map)

    p_bound = sub.add_parser("bound", help="bound-pair energy (and wavefunction)")
    common(p_bound)
    p_bound.add_argument("--phi", type=float)
    p_bound.add_argument("--kx", type=float)
    p_bound.add_argument("--ky", type=float)
    p_bound.add_argument("--grid", type=int)
    p_bound.add_argument("--tol", type=float, help="|G0| residual target (default 1e-6)")
    p_bound.add_argument(
        "--approx", action="store_true", help="closed form only; no gap or root search"
    )
    p_bound.add_argument(
        "--wavefunction", type=int, metavar="DMAX", help="also write the Phi grid CSV"
    )
    p_bound.add_argument("--wf-tol", type=float, help="wavefunction quadrature tol")
    p_bound.add_argument("--wavefunction-out", help="path for the Phi CSV")
    p_bound.set_defaults(func=cmd_bound)

    p_finite = sub.add_parser("finite", help="finite-lattice two-excitation spectrum")
    common(p_finite)
    p_finite.add_argument("--n", type=int, help="lattice side N (2..12; --force beyond)")
    p_finite.add_argument("--phi", type=float)
    p_finite.add_argument("--force", action="store_true", help="override the N guard")
    p_finite.add_argument(
        "--state-dump",
        nargs="+",
        metavar="SELECTOR",
        help="states to dump as spatial grids: row index, max-s, min-gamma, max-gamma",
    )
    p_finite.add_argument(
        "--fixed-site", nargs=2, type=int, metavar=("I", "J"), help="pinned site, 1-based"
    )
    p_finite.set_defaults(func=cmd_finite)

    p_val = sub.add_parser("validate", help="run the cross-validation suite")
    common(p_val, out_required=False)
    p_val.add_argument("--only", action="append", metavar="CHECK", help=f"one of {list(CHECKS)}")
    p_val.set_defaults(func=cmd_validate)
    return parser


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns, parser)
    except _STRUCTURED_ERRORS as exc:
        print(
            json.dumps(
                {
                    "error": type(exc).__name__.removesuffix("Error"),
                    "message": str(exc),
                },
                sort_keys=True,
            )
        )
        return 1


def entry():
    sys.exit(main())
