"""Command-line front end.

Exit status: 0 on success, 1 for invalid input or configuration, 2 when an
internal consistency check fails (or a search cap is hit).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from drinfeld_lab.algebra.fields import FieldContext
from drinfeld_lab.algebra.parse import parse_poly
from drinfeld_lab.algebra.places import make_place, places_up_to, power_residue_symbol
from drinfeld_lab.drinfeld import DrinfeldModule, has_good_reduction, reduce_at, twist2
from drinfeld_lab.errors import (
    AnomalyError,
    ConfigInvalid,
    DrinfeldLabError,
    UnknownCommand,
    ValidationError,
)
from drinfeld_lab.experiments.chebotarev import chebotarev_report, smo_experiment
from drinfeld_lab.experiments.density import density_estimate
from drinfeld_lab.experiments.groups import DEFAULT_GROUP_CAP
from drinfeld_lab.experiments.newton import charpoly_from_elementary, newton_reconstruct
from drinfeld_lab.experiments.reports import (
    CHARPOLY_COLUMNS,
    PLACE_COLUMNS,
    to_json,
    write_csv,
)
from drinfeld_lab.experiments.scan import scan_traces, twist_agreement
from drinfeld_lab.frobenius import charpoly_at
from drinfeld_lab.isogeny import DEFAULT_TAU_BOUND, isogeny_solve
from drinfeld_lab.torsion import DEFAULT_TORSION_CAP, torsion_frobenius_matrix

COMMANDS = ("scan", "charpoly", "isogeny", "twist", "torsion", "chebotarev", "smo", "newton", "density")
SEED_ENV = "DRINFELD_LAB_SEED"
DEFAULT_TOLERANCE = 0.1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigInvalid(f"command line: {message}")


def build_parser():
    parser = _Parser(prog="drinfeld-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command")
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON file with the field and module definitions")
        p.add_argument("-D", "--max-degree", type=int)
        p.add_argument("--place", help="a monic irreducible P, e.g. 'T^2+1'")
        p.add_argument("--ell", help="the prime ell for mod-ell data")
        p.add_argument("--gamma", help="twisting polynomial")
        p.add_argument("--mode", help="trace|charpoly (scan), class|charpoly (chebotarev)")
        p.add_argument("--out", help="output directory (default: current directory)")
        p.add_argument("--jobs", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--tolerance", type=float)
        p.add_argument("--tau-bound", type=int)
        p.add_argument("--group-cap", type=int)
        p.add_argument("--torsion-cap", type=int)
        if name == "newton":
            p.add_argument("-p", type=int, dest="prime")
            p.add_argument("-n", type=int, dest="dim")
            p.add_argument("--traces")
    return parser


# configuration ---------------------------------------------------------------

def load_config(path):
    if path is None:
        return {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigInvalid(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigInvalid(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ConfigInvalid(f"{path}: top level must be a JSON object")
    return data


def _field_from(cfg, where):
    src = cfg
    if "p" not in src:
        mods = _module_defs(cfg)
        if mods and "p" in mods[0]:
            src = mods[0]
    if "p" not in src:
        raise ConfigInvalid(f"{where}: field 'p' is required")
    try:
        return FieldContext(int(src["p"]), int(src.get("e", 1)), src.get("modulus"))
    except (TypeError, ValueError) as exc:
        raise ConfigInvalid(f"{where}: field parameters: {exc}") from exc


def _module_defs(cfg):
    if "modules" in cfg:
        mods = cfg["modules"]
        if not isinstance(mods, list) or not all(isinstance(m, dict) for m in mods):
            raise ConfigInvalid("field 'modules' must be a list of module objects")
        return mods
    if "module" in cfg:
        if not isinstance(cfg["module"], dict):
            raise ConfigInvalid("field 'module' must be an object")
        return [cfg["module"]]
    if "coeffs" in cfg:
        return [cfg]
    return []


def _modules(cfg, ctx, need):
    defs = _module_defs(cfg)
    if not defs:
        raise ConfigInvalid("config defines no module ('module', 'modules' or 'coeffs')")
    out = []
    for i, d in enumerate(defs):
        try:
            out.append(DrinfeldModule.from_definition(d, ctx))
        except ValidationError as exc:
            raise ConfigInvalid(f"modules[{i}]: {exc}") from exc
    if need == 2 and len(out) == 1:
        out.append(out[0])
    return out


class Options:
    """Command-line values with config-file fallbacks."""

    def __init__(self, args, cfg):
        self.args = args
        self.cfg = cfg

    def get(self, name, default=None):
        v = getattr(self.args, name, None)
        if v is not None:
            return v
        return self.cfg.get(name, default)

    def require(self, name, flag):
        v = self.get(name)
        if v is None:
            raise ConfigInvalid(f"missing {flag} (or '{name}' in the config)")
        return v


def _place(ctx, text, what):
    try:
        return make_place(parse_poly(ctx, str(text)))
    except ValidationError as exc:
        raise ConfigInvalid(f"{what}: {exc}") from exc


# commands --------------------------------------------------------------------

def _cmd_charpoly(opts, ctx):
    phi = _modules(opts.cfg, ctx, 1)[0]
    if opts.get("place") is not None:
        places = [_place(ctx, opts.get("place"), "--place")]
    else:
        D = int(opts.require("max_degree", "-D"))
        places = [P for P in places_up_to(ctx, D) if has_good_reduction(phi, P)]
    rows = [charpoly_at(phi, P).as_row() for P in places]
    report = {"module": phi.to_definition(), "charpolys": rows}
    return report, (rows, CHARPOLY_COLUMNS)


def _cmd_scan(opts, ctx):
    phi1, phi2 = _modules(opts.cfg, ctx, 2)[:2]
    D = int(opts.require("max_degree", "-D"))
    rep = scan_traces(phi1, phi2, D, mode=opts.get("mode", "trace"), jobs=opts.jobs)
    report = {"modules": [phi1.to_definition(), phi2.to_definition()], "agreement": rep}
    return report, (rep.rows, PLACE_COLUMNS)


def _cmd_twist(opts, ctx):
    phi = _modules(opts.cfg, ctx, 1)[0]
    gamma = _poly(ctx, opts.require("gamma", "--gamma"), "--gamma")
    D = int(opts.require("max_degree", "-D"))
    rep = twist_agreement(phi, gamma, D, jobs=opts.jobs)
    report = {"module": phi.to_definition(), "twist": twist2(phi, gamma).to_definition(), "agreement": rep}
    return report, (rep.rows, PLACE_COLUMNS)


def _cmd_isogeny(opts, ctx):
    phi1, phi2 = _modules(opts.cfg, ctx, 2)[:2]
    N = int(opts.get("tau_bound", DEFAULT_TAU_BOUND))
    u = isogeny_solve(phi1, phi2, N)
    report = {
        "modules": [phi1.to_definition(), phi2.to_definition()],
        "tau_bound": N,
        "found": u is not None,
        "isogeny": None if u is None else str(u),
        "tau_degree": None if u is None else u.degree,
    }
    return report, None


def _cmd_torsion(opts, ctx):
    phi = _modules(opts.cfg, ctx, 1)[0]
    P = _place(ctx, opts.require("place", "--place"), "--place")
    ell = _place(ctx, opts.require("ell", "--ell"), "--ell")
    cap = int(opts.get("torsion_cap", DEFAULT_TORSION_CAP))
    data = torsion_frobenius_matrix(reduce_at(phi, P), ell, cap=cap)
    K = data.frobenius.field
    report = {
        "module": phi.to_definition(),
        "place": str(P),
        "ell": str(ell),
        "torsion_field_degree": data.m,
        "torsion_cardinality": data.cardinality,
        "frobenius_matrix": [[K.render(x) for x in row] for row in data.frobenius.rows],
        "frobenius_charpoly": [K.render(c) for c in data.frobenius.charpoly()],
    }
    return report, None


def _cmd_chebotarev(opts, ctx):
    phi = _modules(opts.cfg, ctx, 1)[0]
    ell = _place(ctx, opts.require("ell", "--ell"), "--ell")
    D = int(opts.require("max_degree", "-D"))
    rep = chebotarev_report(
        phi, ell, D,
        granularity=opts.get("mode", "charpoly"),
        group_cap=int(opts.get("group_cap", DEFAULT_GROUP_CAP)),
        torsion_cap=int(opts.get("torsion_cap", DEFAULT_TORSION_CAP)),
        jobs=opts.jobs,
    )
    tol = float(opts.get("tolerance", DEFAULT_TOLERANCE))
    report = {"module": phi.to_definition(), "chebotarev": rep, "tolerance": tol,
              "within_tolerance": rep.max_deviation <= tol}
    return report, None


def _cmd_smo(opts, ctx):
    mods = _modules(opts.cfg, ctx, 1)
    gamma = opts.get("gamma")
    gamma = _poly(ctx, gamma, "--gamma") if gamma is not None else None
    phi1 = mods[0]
    if len(mods) > 1:
        phi2 = mods[1]
    elif gamma is not None:
        phi2 = twist2(phi1, gamma)
    else:
        phi2 = phi1
    if gamma is not None and twist2(phi1, gamma) != phi2:
        gamma = None
    ell = _place(ctx, opts.require("ell", "--ell"), "--ell")
    D = int(opts.require("max_degree", "-D"))
    rep = smo_experiment(
        phi1, phi2, ell, D, twist_gamma=gamma,
        group_cap=int(opts.get("group_cap", DEFAULT_GROUP_CAP)),
        torsion_cap=int(opts.get("torsion_cap", DEFAULT_TORSION_CAP)),
        jobs=opts.jobs,
        seed=opts.seed,
    )
    tol = float(opts.get("tolerance", DEFAULT_TOLERANCE))
    report = {"modules": [phi1.to_definition(), phi2.to_definition()], "smo": rep,
              "tolerance": tol, "within_tolerance": rep.deviation <= tol}
    return report, None


def _cmd_density(opts, ctx):
    D = int(opts.require("max_degree", "-D"))
    gamma = opts.get("gamma")
    if gamma is not None:
        g = _poly(ctx, gamma, "--gamma")
        est = density_estimate(
            lambda P: power_residue_symbol(g, P) == 1, ctx, D,
            domain=lambda P: bool((g % P.generator)),
        )
        what = f"power residue symbol of {g} equals 1"
    else:
        phi1, phi2 = _modules(opts.cfg, ctx, 2)[:2]
        mode = opts.get("mode", "trace")
        rep = scan_traces(phi1, phi2, D, mode=mode, jobs=opts.jobs)
        hit = {r["place"]: r["equal_trace" if mode == "trace" else "equal_charpoly"] for r in rep.rows}
        est = density_estimate(lambda P: hit[str(P)], ctx, D, domain=lambda P: str(P) in hit)
        what = f"equal {mode} for the two modules"
    return {"set": what, "density": est}, None


def _poly(ctx, text, what):
    try:
        return parse_poly(ctx, str(text))
    except ValidationError as exc:
        raise ConfigInvalid(f"{what}: {exc}") from exc


def _cmd_newton(opts, _ctx):
    p = opts.require("prime", "-p")
    n = int(opts.require("dim", "-n"))
    raw = opts.require("traces", "--traces")
    try:
        traces = [int(x) for x in str(raw).split(",")] if not isinstance(raw, list) else [int(x) for x in raw]
    except ValueError as exc:
        raise ConfigInvalid(f"--traces: expected comma-separated integers ({exc})") from exc
    F = FieldContext(int(p))
    e = newton_reconstruct(F, [F.from_int(t) for t in traces], n)
    return {"p": int(p), "n": n, "power_traces": traces, "elementary": e,
            "charpoly": charpoly_from_elementary(F, e)}, None


HANDLERS = {
    "scan": _cmd_scan,
    "charpoly": _cmd_charpoly,
    "isogeny": _cmd_isogeny,
    "twist": _cmd_twist,
    "torsion": _cmd_torsion,
    "chebotarev": _cmd_chebotarev,
    "smo": _cmd_smo,
    "newton": _cmd_newton,
    "density": _cmd_density,
}


def resolve_seed(flag_value, cfg):
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ConfigInvalid(f"{SEED_ENV} must be an integer") from exc
    if flag_value is not None:
        return flag_value
    return int(cfg.get("seed", 0))


def execute(argv):
    """Run one command; returns (report dict, output paths)."""
    argv = list(argv)
    if not argv or argv[0] not in COMMANDS:
        if argv and not argv[0].startswith("-"):
            raise UnknownCommand(f"unknown command {argv[0]!r}; expected one of {', '.join(COMMANDS)}")
        raise UnknownCommand(f"expected a command: {', '.join(COMMANDS)}")
    args = build_parser().parse_args(argv)
    cfg = load_config(args.config)
    opts = Options(args, cfg)
    opts.jobs = int(opts.get("jobs", 1))
    seed = resolve_seed(args.seed, cfg)
    opts.seed = seed
    ctx = None if args.command == "newton" else _field_from(cfg, args.config or "config")
    body, per_place = HANDLERS[args.command](opts, ctx)
    report = {"command": args.command, "seed": seed, **body}
    out = Path(opts.get("out", "."))
    out.mkdir(parents=True, exist_ok=True)
    json_path = out / f"{args.command}.json"
    json_path.write_text(to_json(report), encoding="utf-8")
    paths = [json_path]
    if per_place is not None:
        rows, columns = per_place
        csv_path = out / f"{args.command}.csv"
        write_csv(rows, columns, csv_path)
        paths.append(csv_path)
    return report, paths


def run_command(argv):
    """Execute and map errors to the documented exit status."""
    try:
        _, paths = execute(argv)
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (AnomalyError, DrinfeldLabError) as exc:
        print(f"anomaly: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    for p in paths:
        print(p)
    return 0


def main(argv=None):
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    raise SystemExit(main())

