"""Command-line front end.

Subcommands: gm, dratio, minor, angle, opuc, hd.  Measures and weights are
loaded from the JSON measure format (--input) or built from a preset
string (--preset); results are emitted as CSV or JSON tables, optionally
with a minimal SVG line chart of the sweep.

Exit codes: 0 ok, 2 input error, 3 numerical error, 4 unsupported-case
refusal (for example the GM-zero lexicographic limit).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import circle, detkit, minors, opuc
from .angles import check_proj_bounds, poly_shift_subspace
from .circle import CircleMeasure, GridFunction, load_measure, preset_density
from .errors import (InputError, NumericalError, SzegoKitError,
                     UnsupportedCaseError)
from .halfspace import (HalfSpaceOrder, hd_bordered_ratio, hd_limit_matrix,
                        hd_sn_sets, hd_spectral_factor)
from .minors import BorderedSpec, limit_matrix
from .outer import eval_Phi, geometric_mean, outer_factor


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    preset: str | None = None
    grid: tuple[int, ...] | None = None
    n_range: list[int] | None = None
    m_range: list[int] | None = None
    border: str | None = None
    order: str | None = None
    sigma: str | None = None
    z: complex | None = None
    fmt: str = "csv"
    output: str | None = None
    svg: str | None = None
    seed: int = 0
    no_limit: bool = False
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.fmt not in ("csv", "json"):
            raise InputError("format must be 'csv' or 'json'")
        for name, rng in (("n-range", self.n_range), ("m-range", self.m_range)):
            if rng is not None:
                if not rng or any(b <= a for a, b in zip(rng, rng[1:])):
                    raise InputError(f"{name} must be nonempty and increasing")


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------

def parse_range(text: str, name: str) -> list[int]:
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise InputError(f"{name} must look like a:b or a:b:step")
    try:
        a, b = int(parts[0]), int(parts[1])
        step = int(parts[2]) if len(parts) == 3 else 1
    except ValueError as err:
        raise InputError(f"{name}: {err}") from err
    if step < 1 or b < a:
        raise InputError(f"{name} must be nonempty and increasing")
    return list(range(a, b + 1, step))


def parse_grid(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError as err:
        raise InputError(f"grid: {err}") from err


def parse_border(text: str, dim: int) -> list:
    if dim == 1:
        try:
            return [int(v) for v in text.split(",")]
        except ValueError as err:
            raise InputError(f"border: {err}") from err
    out = []
    for group in text.split(";"):
        parts = group.split(",")
        if len(parts) != dim:
            raise InputError(f"border index {group!r} needs {dim} coordinates")
        out.append(tuple(int(v) for v in parts))
    return out


def parse_preset(text: str) -> dict:
    """Parse 'name:key=val,...' (poly_mod2 takes a bare coefficient list,
    product takes '|'-separated factor presets)."""
    name, _, rest = text.partition(":")
    if name == "product":
        factors = [parse_preset(f) for f in rest.split("|")] if rest else []
        return {"preset": "product", "params": {"factors": factors}}
    if name == "poly_mod2":
        try:
            coeffs = [float(v) for v in rest.split(",")] if rest else []
        except ValueError as err:
            raise InputError(f"preset: {err}") from err
        return {"preset": "poly_mod2", "params": {"coeffs": coeffs}}
    params = {}
    if rest:
        for item in rest.split(","):
            key, eq, val = item.partition("=")
            if not eq:
                raise InputError(f"preset parameter {item!r} must be key=value")
            try:
                params[key] = float(val)
            except ValueError as err:
                raise InputError(f"preset: {err}") from err
    return {"preset": name, "params": params}


def parse_order(text: str) -> dict:
    name, _, rest = text.partition(":")
    if name == "lex":
        return {"kind": "lex"}
    if name == "form":
        try:
            direction = [float(v) for v in rest.split(",")]
        except ValueError as err:
            raise InputError(f"order: {err}") from err
        return {"kind": "form", "direction": direction}
    raise InputError(f"order must be 'lex' or 'form:x1,x2,...', got {text!r}")


def resolve_measure(cfg: RunConfig, default_dims: tuple[int, ...]) -> CircleMeasure:
    if cfg.input:
        if cfg.grid:
            raise InputError("grid override applies to --preset, not --input")
        return load_measure(cfg.input)
    if cfg.preset:
        dims = cfg.grid or default_dims
        spec = parse_preset(cfg.preset)
        density = preset_density(spec["preset"], dims, spec["params"])
        return CircleMeasure.from_density(density)
    raise InputError("one of --input or --preset is required")


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (complex, np.complexfloating)):
        v = complex(v)
        if abs(v.imag) <= 1e-12 * max(1.0, abs(v)):
            return f"{v.real:.12g}"
        return f"{v.real:.12g}{v.imag:+.12g}j"
    return f"{float(v):.12g}"


def _json_cell(v):
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (complex, np.complexfloating)):
        v = complex(v)
        if abs(v.imag) <= 1e-12 * max(1.0, abs(v)):
            return v.real
        return [v.real, v.imag]
    return float(v)


def write_table(cfg: RunConfig, columns: list[str], rows: list[tuple]) -> None:
    if cfg.fmt == "csv":
        lines = [",".join(columns)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        text = "\n".join(lines) + "\n"
    else:
        doc = {"command": cfg.command, "columns": columns,
               "rows": [[_json_cell(v) for v in row] for row in rows]}
        text = json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def write_svg(path: str, xs, ys, xlabel: str, ylabel: str, title: str) -> None:
    """A minimal line chart: axes, ticks, one polyline."""
    W, H, M = 640, 480, 60
    pts = [(float(x), float(y)) for x, y in zip(xs, ys) if np.isfinite(y)]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}">',
           f'<rect width="{W}" height="{H}" fill="white"/>',
           f'<text x="{W // 2}" y="20" text-anchor="middle" font-size="14">{title}</text>']
    if pts:
        x0, x1 = min(p[0] for p in pts), max(p[0] for p in pts)
        y0, y1 = min(p[1] for p in pts), max(p[1] for p in pts)
        if x1 == x0:
            x1 = x0 + 1.0
        if y1 == y0:
            y1 = y0 + 1.0
        def sx(x): return M + (x - x0) / (x1 - x0) * (W - 2 * M)
        def sy(y): return H - M - (y - y0) / (y1 - y0) * (H - 2 * M)
        poly = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        out.append(f'<polyline points="{poly}" fill="none" stroke="steelblue" stroke-width="1.5"/>')
        for i in range(5):
            xv = x0 + i * (x1 - x0) / 4
            yv = y0 + i * (y1 - y0) / 4
            out.append(f'<text x="{sx(xv):.2f}" y="{H - M + 18}" text-anchor="middle" '
                       f'font-size="11">{xv:.4g}</text>')
            out.append(f'<text x="{M - 8}" y="{sy(yv):.2f}" text-anchor="end" '
                       f'font-size="11">{yv:.4g}</text>')
    out.append(f'<line x1="{M}" y1="{H - M}" x2="{W - M}" y2="{H - M}" stroke="black"/>')
    out.append(f'<line x1="{M}" y1="{M}" x2="{M}" y2="{H - M}" stroke="black"/>')
    out.append(f'<text x="{W // 2}" y="{H - 12}" text-anchor="middle" font-size="12">{xlabel}</text>')
    out.append(f'<text x="16" y="{H // 2}" font-size="12" '
               f'transform="rotate(-90 16 {H // 2})" text-anchor="middle">{ylabel}</text>')
    out.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(out) + "\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_gm(cfg: RunConfig) -> None:
    mu = resolve_measure(cfg, (1024,))
    if mu.dim != 1:
        raise InputError("gm expects a 1-D measure; use the hd command on tori")
    gm = geometric_mean(mu.density)
    factor = outer_factor(mu.density)
    phi0_sq = abs(factor.coeffs.entry(0)) ** 2 if not factor.is_zero() else 0.0
    write_table(cfg, ["gm", "phi0_squared", "difference"],
                [(gm, phi0_sq, gm - phi0_sq)])


def _border_spec(cfg: RunConfig, dim: int) -> BorderedSpec:
    text = cfg.border or ("0" if dim == 1 else ",".join("0" * dim))
    idx = parse_border(text, dim)
    return BorderedSpec.from_exponents(idx, dim=dim)


def cmd_dratio(cfg: RunConfig) -> None:
    mu = resolve_measure(cfg, (1024,))
    if mu.dim != 1:
        raise InputError("dratio is 1-D; use the hd command on tori")
    if not mu.positive:
        raise InputError("dratio computes the positive-measure limit; "
                         "complex densities need the library API")
    spec = _border_spec(cfg, 1)
    sweep = cfg.n_range or [1, 2, 4, 8, 16, 32, 64]
    cap = mu.dims[0] // 2 - 1 - max(max(abs(k[0]) for k in f.entries) if f.entries else 0
                                    for f in spec.f_list + spec.g_list)
    if sweep[-1] > cap:
        raise InputError(f"n-range exceeds the Nyquist-derived cap {cap}")
    limit = limit_matrix(spec, outer_factor(mu.density)).value
    rows = []
    fb = detkit.IndexedBasis(spec.f_list)
    gb = detkit.IndexedBasis(spec.g_list)
    for n in sweep:
        base = detkit.IndexedBasis.from_exponents([-j for j in range(1, n + 1)], dim=1)
        ratio = detkit.bordered_ratio(fb, gb, base, mu)
        rows.append((n, ratio, abs(ratio - limit)))
    write_table(cfg, ["n", "ratio", "abs_error"], rows)
    if cfg.svg:
        errs = [np.log10(max(r[2], 1e-300)) for r in rows]
        write_svg(cfg.svg, [r[0] for r in rows], errs, "n", "log10 |ratio - limit|",
                  "determinant ratio convergence")


def cmd_minor(cfg: RunConfig) -> None:
    mu = resolve_measure(cfg, (1024,))
    if mu.dim != 1:
        raise InputError("minor is 1-D; use the hd command on tori")
    spec = _border_spec(cfg, 1)
    lm = limit_matrix(spec, outer_factor(mu.density))
    rows = [(j, k, lm.matrix[j, k]) for j in range(len(spec)) for k in range(len(spec))]
    rows.append(("value", "", lm.value))
    write_table(cfg, ["row", "col", "entry"], rows)


def cmd_angle(cfg: RunConfig) -> None:
    if not cfg.sigma:
        raise InputError("angle needs --sigma with polynomial coefficients")
    try:
        sig = [float(v) for v in cfg.sigma.split(",")]
    except ValueError as err:
        raise InputError(f"sigma: {err}") from err
    sweep = cfg.n_range or list(range(1, 33))
    ambient = sweep[-1] + len(sig) + 2
    rows = []
    for n in sweep:
        H = poly_shift_subspace(sig, n, ambient)
        K = poly_shift_subspace([1.0], n, ambient)
        rep = check_proj_bounds(H, K)
        rows.append((n, rep.epsilon, rep.opnorm, rep.bddT_rhs, rep.bddepsi_rhs, rep.passed))
    write_table(cfg, ["n", "epsilon", "opnorm", "bddT_rhs", "bddepsi_rhs", "pass"], rows)
    if cfg.svg:
        write_svg(cfg.svg, [r[0] for r in rows], [r[1] for r in rows], "n",
                  "epsilon", "subspace angle sweep")


def cmd_opuc(cfg: RunConfig) -> None:
    mu = resolve_measure(cfg, (1024,))
    if mu.dim != 1:
        raise InputError("opuc expects a 1-D weight")
    sweep = cfg.n_range or list(range(0, 33))
    table = opuc.onp_build(mu.density, sweep[-1])
    factor = outer_factor(mu.density)
    columns = ["k", "prediction_error"]
    if cfg.z is not None:
        columns.append("asymptotic_error")
    rows = []
    for k in sweep:
        row = [k, float(table.errors[k])]
        if cfg.z is not None:
            row.append(opuc.szego_asymptotic_error(table, cfg.z, k, factor))
        rows.append(tuple(row))
    write_table(cfg, columns, rows)
    if cfg.svg:
        write_svg(cfg.svg, [r[0] for r in rows], [r[1] for r in rows], "k",
                  "E_k", "prediction errors")


def cmd_hd(cfg: RunConfig) -> None:
    order_spec = parse_order(cfg.order or "lex")
    if cfg.input:
        mu = load_measure(cfg.input)
        dim = mu.dim
        order = HalfSpaceOrder(dim, order_spec["kind"],
                               tuple(order_spec["direction"]) if "direction" in order_spec else None)
    else:
        direction = order_spec.get("direction")
        dim = len(direction) if direction else 2
        order = HalfSpaceOrder(dim, order_spec["kind"],
                               tuple(direction) if direction else None)
        default_dims = (64,) * dim if dim == 2 else ((16,) * dim if dim == 3 else (1024,))
        mu = resolve_measure(cfg, default_dims)
    if mu.dim != order.dim:
        raise InputError("measure and order dimensions differ")
    idx = parse_border(cfg.border, order.dim) if cfg.border else [(0,) * order.dim]
    specF = detkit.IndexedBasis.from_exponents(idx, dim=order.dim)
    specG = specF
    sweep = cfg.m_range or [2, 3, 4, 5, 6]
    limit = None
    if not cfg.no_limit:
        factor = hd_spectral_factor(mu.density, order)
        limit = hd_limit_matrix(specF, specG, factor).value
    rows = []
    for m in sweep:
        ratio = hd_bordered_ratio(specF, specG, order, m, mu)
        if limit is None:
            rows.append((m, ratio))
        else:
            rows.append((m, ratio, abs(ratio - limit)))
    columns = ["m", "ratio"] + ([] if limit is None else ["abs_error"])
    write_table(cfg, columns, rows)
    if cfg.svg and limit is not None:
        errs = [np.log10(max(r[2], 1e-300)) for r in rows]
        write_svg(cfg.svg, [r[0] for r in rows], errs, "m", "log10 |ratio - limit|",
                  "torus determinant ratio convergence")


_COMMANDS = {"gm": cmd_gm, "dratio": cmd_dratio, "minor": cmd_minor,
             "angle": cmd_angle, "opuc": cmd_opuc, "hd": cmd_hd}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="szegokit",
                                description="Szego-type limit theorems, numerically")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("gm", "geometric mean and outer constant of a density"),
        ("dratio", "Toeplitz determinant ratio sweep against its limit"),
        ("minor", "limiting bordered minor matrix and determinant"),
        ("angle", "subspace angles and projection norms for a polynomial pair"),
        ("opuc", "orthonormal-polynomial prediction errors and asymptotics"),
        ("hd", "torus determinant ratios under a half-space order"),
    ):
        q = sub.add_parser(name, help=help_text)
        q.add_argument("--input", help="measure JSON path")
        q.add_argument("--preset", help="density preset, e.g. cos_offset:a=2,b=1")
        q.add_argument("--grid", help="grid size override, e.g. 1024 or 64,64")
        q.add_argument("--n-range", dest="n_range", help="sweep a:b or a:b:step")
        q.add_argument("--m-range", dest="m_range", help="sweep a:b or a:b:step")
        q.add_argument("--border", help="border exponents, e.g. 0,1 (1-D) or 1,0;0,1 (2-D)")
        q.add_argument("--order", help="half-space order: lex or form:x1,x2")
        q.add_argument("--sigma", help="polynomial coefficients for the angle command")
        q.add_argument("--z", help="evaluation point |z| > 1 for opuc asymptotics")
        q.add_argument("--format", dest="fmt", default="csv", choices=["csv", "json"])
        q.add_argument("--output", help="write the table here instead of stdout")
        q.add_argument("--svg", help="write an SVG line chart of the sweep")
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--no-limit", dest="no_limit", action="store_true",
                       help="emit the sweep without a limit column")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        input=args.input,
        preset=args.preset,
        grid=parse_grid(args.grid) if args.grid else None,
        n_range=parse_range(args.n_range, "n-range") if args.n_range else None,
        m_range=parse_range(args.m_range, "m-range") if args.m_range else None,
        border=args.border,
        order=args.order,
        sigma=args.sigma,
        z=complex(args.z) if args.z else None,
        fmt=args.fmt,
        output=args.output,
        svg=args.svg,
        seed=args.seed,
        no_limit=args.no_limit,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        _COMMANDS[cfg.command](cfg)
    except UnsupportedCaseError as err:
        print(f"szegokit {args.command}: {err}", file=sys.stderr)
        return 4
    except (InputError, OSError, json.JSONDecodeError, KeyError) as err:
        print(f"szegokit {args.command}: {err}", file=sys.stderr)
        return 2
    except NumericalError as err:
        print(f"szegokit {args.command}: {err}", file=sys.stderr)
        return 3
    except SzegoKitError as err:
        print(f"szegokit {args.command}: {err}", file=sys.stderr)
        return 3
    return 0


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
