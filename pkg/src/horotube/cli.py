"""Command-line entry point.

Subcommands: verify, s-transform, continue, growth, nodal.  Each reads an
optional JSON config, writes CSV (plus a JSON summary where noted) into the
output directory, and is byte-deterministic for a fixed config and seed.

Exit codes: 0 success, 1 check failure, 2 config error, 3 numerical
non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import eigen, transform, verify
from .kernel import phi_max_exact
from .plane import DomainError, HPoint, Isometry, SpectralParams
from .quadrature import AccuracyError, QuadratureSpec
from .tube import ConvergenceError, CPoint, TubeError, horocycle_point_c

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_CONFIG_ERROR = 2
EXIT_NO_CONVERGENCE = 3


class ConfigError(ValueError):
    pass


def _g17(x: float) -> str:
    """17-significant-digit decimal serialization (round-trip exact)."""
    return f"{float(x):.17g}"


def _write_csv(path: Path, seed: int, header: list[str], rows: list[list[str]]) -> None:
    lines = [f"# seed={seed}", ",".join(header)]
    lines.extend(",".join(r) for r in rows)
    path.write_text("\n".join(lines) + "\n")


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        cfg = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    return cfg


def _params(cfg: dict) -> dict:
    p = cfg.get("params", {})
    if not isinstance(p, dict):
        raise ConfigError("config 'params' must be an object")
    return p


def _float_list(p: dict, key: str, default: list[float]) -> list[float]:
    v = p.get(key, default)
    if not isinstance(v, list) or not all(isinstance(x, (int, float)) for x in v):
        raise ConfigError(f"param {key!r} must be a list of numbers")
    return [float(x) for x in v]


def _terms_from_params(p: dict) -> tuple[tuple[complex, Isometry], ...]:
    """Terms as [[re, im, a, b, c, d], ...]; defaults to a two-term spec."""
    raw = p.get("terms", [[1.0, 0.0, 1.0, 0.0, 0.0, 1.0],
                          [0.6, -0.3, 1.2, 0.3, 0.4, 1.0]])
    terms = []
    try:
        for row in raw:
            re, im, a, b, c, d = (float(v) for v in row)
            terms.append((complex(re, im), Isometry(a, b, c, d)))
    except (TypeError, ValueError, DomainError) as exc:
        raise ConfigError(f"invalid terms: {exc}") from exc
    return tuple(terms)


def _slice_from_params(p: dict, kind_required: str) -> eigen.SliceSpec:
    raw = p.get("slice", {})
    if not isinstance(raw, dict):
        raise ConfigError("param 'slice' must be an object")
    kind = raw.get("kind", kind_required)
    if kind != kind_required:
        raise ConfigError(f"this command requires a {kind_required!r} slice")
    try:
        bounds = tuple(float(v) for v in raw["bounds"]) if "bounds" in raw else None
        resolution = int(raw.get("resolution", 16))
        if kind == "theta_slice":
            zb = raw.get("z_base", [0.0, 1.0])
            slc = eigen.SliceSpec(
                kind, bounds or (0.1, 0.6, 0.0, 2.0 * math.pi), resolution,
                z_base=HPoint(float(zb[0]), float(zb[1])),
            )
        else:
            P0 = raw.get("P0", [0.0, 0.45, 1.0, 0.0])
            V = raw.get("V", [0.0, 0.25, 0.12, 0.0])
            slc = eigen.SliceSpec(
                kind, bounds or (-1.0, 1.0, -1.0, 1.0), resolution,
                P0=CPoint(complex(P0[0], P0[1]), complex(P0[2], P0[3])),
                V=(complex(V[0], V[1]), complex(V[2], V[3])),
            )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ConfigError(f"invalid slice: {exc}") from exc
    return slc


# ------------------------------------------------------------------ commands


def cmd_verify(cfg: dict, out: Path, seed: int, tol_scale: float) -> int:
    results = verify.run_all(seed=seed, tol_scale=tol_scale)
    rows = [
        [r.check_id, str(r.samples), _g17(r.max_error), _g17(r.tolerance),
         "true" if r.passed else "false"]
        for r in results
    ]
    _write_csv(out / "verify.csv", seed,
               ["check_id", "samples", "max_error", "tolerance", "pass"], rows)
    for r in results:
        print(f"{r.check_id}: {'pass' if r.passed else 'FAIL'} "
              f"(max_error={r.max_error:.3e}, tolerance={r.tolerance:.1e})")
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILURE


def _route_formula(eta, tau, s, spec):
    # past the selector bound the series loses more digits than the value
    # holds, so the row is only emitted inside it
    if tau > transform.ROUTE_FORMULA_MAX_TAU:
        raise transform.RouteUnavailableError(
            f"formula route limited to tau <= {transform.ROUTE_FORMULA_MAX_TAU}"
        )
    return transform.selberg_S_formula(eta, tau, s, spec)


def _route_quadrature(eta, tau, s, spec):
    if tau > transform.ROUTE_QUADRATURE_MAX_TAU:
        raise transform.RouteUnavailableError(
            f"quadrature route limited to tau <= {transform.ROUTE_QUADRATURE_MAX_TAU}"
        )
    return transform.selberg_S_quadrature(eta, tau, s, spec)


_S_ROUTES = (
    ("formula1d", _route_formula),
    ("quadrature2d", _route_quadrature),
    ("laplace", lambda eta, tau, s, spec: transform.laplace_asymptote_S(eta, tau, s)),
)


def cmd_s_transform(cfg: dict, out: Path, seed: int, tol_scale: float) -> int:
    p = _params(cfg)
    etas = _float_list(p, "etas", [0.5])
    taus = _float_list(p, "taus", [10.0, 20.0, 40.0, 80.0])
    s = float(p.get("s", 0.5))
    if not taus or not etas:
        raise ConfigError("s-transform requires non-empty eta and tau grids")
    spec = QuadratureSpec(rel_tol=float(p.get("rel_tol", 1e-9)),
                          abs_tol=float(p.get("abs_tol", 1e-16)))
    rows = []
    for eta in etas:
        for tau in taus:
            laplace = transform.laplace_asymptote_S(eta, tau, s)
            for route, fn in _S_ROUTES:
                try:
                    r = fn(eta, tau, s, spec)
                except transform.RouteUnavailableError:
                    rows.append([_g17(eta), _g17(tau), _g17(s),
                                 f"{route}:unavailable"] + ["nan"] * 5)
                    continue
                gap = r.log_abs / tau - phi_max_exact(eta, math.pi)
                ratio = math.exp(r.log_abs - laplace.log_abs)
                rows.append([
                    _g17(eta), _g17(tau), _g17(s), route,
                    _g17(r.value.real), _g17(r.value.imag), _g17(abs(r.value)),
                    _g17(gap), _g17(ratio),
                ])
    _write_csv(out / "s_transform.csv", seed,
               ["eta", "tau", "s", "route", "re", "im", "abs",
                "rate_gap", "ratio_to_laplace"], rows)
    return EXIT_OK


def cmd_continue(cfg: dict, out: Path, seed: int, tol_scale: float) -> int:
    """Continue the model eigenfunction y^s_tilde to random tube points and
    report the worst relative deviation from S * Y^s_tilde."""
    p = _params(cfg)
    taus = _float_list(p, "taus", [2.0, 5.0, 10.0])
    eta = float(p.get("eta", 0.5))
    s = float(p.get("s", 0.5))
    n_points = int(p.get("points", 5))
    if not taus or n_points < 1:
        raise ConfigError("continue requires a non-empty tau grid and points >= 1")
    spec = QuadratureSpec(rel_tol=float(p.get("rel_tol", 1e-9)), abs_tol=1e-16)
    rng = np.random.default_rng(seed)
    points = [
        horocycle_point_c(
            HPoint(rng.uniform(-0.5, 0.5), rng.uniform(0.8, 1.4)),
            rng.uniform(0.0, 2.0 * math.pi), rng.uniform(0.1, 0.6),
        )
        for _ in range(n_points)
    ]
    rows = []
    worst = 0.0
    for tau in taus:
        st = SpectralParams(tau, s).s_tilde
        S = transform.selberg_S(eta, tau, s, spec).value

        def u(x, y, st=st):
            return np.exp(st * np.log(np.asarray(y, dtype=complex)))

        for P in points:
            v = transform.continue_eigenfunction(u, eta, tau, P, spec)
            ref = S * np.exp(st * np.log(P.Y))
            rel = abs(v - ref) / abs(ref)
            worst = max(worst, rel)
            rows.append([
                _g17(tau), _g17(eta), _g17(s),
                _g17(P.X.real), _g17(P.X.imag), _g17(P.Y.real), _g17(P.Y.imag),
                _g17(v.real), _g17(v.imag), _g17(ref.real), _g17(ref.imag),
                _g17(rel),
            ])
    _write_csv(out / "continue.csv", seed,
               ["tau", "eta", "s", "ReX", "ImX", "ReY", "ImY",
                "v_re", "v_im", "ref_re", "ref_im", "rel_dev"], rows)
    summary = {"seed": seed, "eta": eta, "s": s, "taus": taus,
               "points": n_points, "max_rel_dev": worst}
    (out / "continue_summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    print(f"max relative deviation from S*Y^s_tilde: {worst:.3e}")
    return EXIT_OK


def cmd_growth(cfg: dict, out: Path, seed: int, tol_scale: float) -> int:
    p = _params(cfg)
    tau = float(p.get("tau", 8.0))
    s = float(p.get("s", 0.5))
    espec = eigen.EigenSpec(_terms_from_params(p), SpectralParams(tau, s))
    slc = _slice_from_params(p, "theta_slice")
    slc.check_in_tube()
    rows = [
        [_g17(r.t), _g17(r.theta),
         _g17(r.P.X.real), _g17(r.P.X.imag), _g17(r.P.Y.real), _g17(r.P.Y.imag),
         _g17(r.abs_u_sq), _g17(r.b0), _g17(r.normalized), _g17(r.rate_gap)]
        for r in eigen.growth_profile(espec, slc)
    ]
    _write_csv(out / "growth.csv", seed,
               ["t", "theta", "ReX", "ImX", "ReY", "ImY",
                "abs_u_sq", "B0", "normalized", "rate_gap"], rows)
    return EXIT_OK


def cmd_nodal(cfg: dict, out: Path, seed: int, tol_scale: float) -> int:
    p = _params(cfg)
    hook = p.get("test_hook")
    if hook is not None:
        # polynomial test hook: zeros of prod (w - root_k) on the given region
        try:
            roots = [complex(r[0], r[1]) for r in hook["roots"]]
            bounds = tuple(float(v) for v in hook.get("bounds", [-2, 2, -2, 2]))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ConfigError(f"invalid test_hook: {exc}") from exc

        def f(w: complex) -> complex:
            out_ = 1.0 + 0j
            for r in roots:
                out_ *= w - r
            return out_

        report = eigen.nodal_slice_zeros(f, bounds)
        tau = 0.0
        dens = 0.0
    else:
        tau = float(p.get("tau", 8.0))
        s = float(p.get("s", 0.5))
        espec = eigen.EigenSpec(_terms_from_params(p), SpectralParams(tau, s))
        slc = _slice_from_params(p, "line_slice")
        slc.check_in_tube()
        report = eigen.nodal_density_vs_b0(espec, slc)
        dens = report.b0_density_integral
    slice_id = str(p.get("slice_id", "slice0"))
    rows = [
        [slice_id, _g17(z.real), _g17(z.imag), str(m)]
        for z, m in report.zeros
    ]
    _write_csv(out / "nodal.csv", seed,
               ["slice_id", "w_re", "w_im", "multiplicity"], rows)
    summary = {"total_count": report.total_count, "tau": tau,
               "b0_density_integral": dens}
    (out / "nodal_summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    print(f"total zero count: {report.total_count}")
    return EXIT_OK


_COMMANDS = {
    "verify": cmd_verify,
    "s-transform": cmd_s_transform,
    "continue": cmd_continue,
    "growth": cmd_growth,
    "nodal": cmd_nodal,
}


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="horotube",
        description="Selberg-type transforms and analytic continuation on "
                    "the horocycle Grauert tube",
    )
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--seed", type=int, default=None,
                        help="override the config seed (default 0)")
    parser.add_argument("--tol-scale", type=float, default=None,
                        help="multiply every verify tolerance by this factor")
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args.config)
        cfg_cmd = cfg.get("command")
        if cfg_cmd is not None and cfg_cmd != args.command:
            raise ConfigError(
                f"config command {cfg_cmd!r} does not match {args.command!r}"
            )
        seed = args.seed if args.seed is not None else int(cfg.get("seed", 0))
        tol_scale = (
            args.tol_scale if args.tol_scale is not None
            else float(cfg.get("tol_scale", 1.0))
        )
        if tol_scale <= 0.0:
            raise ConfigError("tol-scale must be positive")
        out = Path(cfg.get("output_path", args.out))
        out.mkdir(parents=True, exist_ok=True)
        return _COMMANDS[args.command](cfg, out, seed, tol_scale)
    except (ConfigError, TubeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except DomainError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except (ConvergenceError, AccuracyError, eigen.PartitionError) as exc:
        print(f"numerical non-convergence: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
