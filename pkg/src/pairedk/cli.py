"""Command-line interface: kernels, factorizations, operator application,
norms, commutator ranks, and the verification suite, all through JSON.

Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import tolerances as tol
from .errors import MalformedConfig, PairedKError, UnknownProperty
from .factorization import inner_outer, wiener_hopf, winding_index
from .kernels import (
    SymbolPair,
    kernel_oracle,
    member_S,
    member_Sigma,
    nontrivial_S,
    nontrivial_Sigma,
    paired_kernel,
    toeplitz_kernel,
    transposed_kernel,
)
from .operators import (
    Commutator,
    Mult,
    Paired,
    Toeplitz,
    Transposed,
    Hankel,
    apply_exact,
    bandwidth,
    numerical_rank,
    operator_norm,
    truncate,
)
from .properties import RunConfig, registered_ids, run_suite
from .rational import RationalSymbol

CONFIG_ENV = "PAIREDK_CONFIG"
CONFIG_KEYS = {
    "eps_eq": float,
    "eps_circle": float,
    "eps_cluster": float,
    "rank_tol": float,
    "oracle_N": int,
    "trials": int,
    "parallelism": int,
}


def load_config(path):
    """JSON config with exactly the documented keys; unknown keys rejected."""
    if not os.path.exists(path):
        raise MalformedConfig(f"config file not found: {path}")
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedConfig(f"unreadable config: {exc}") from exc
    if not isinstance(data, dict):
        raise MalformedConfig("config must be a JSON object")
    out = {}
    for key, value in data.items():
        if key not in CONFIG_KEYS:
            raise MalformedConfig(f"unknown config key: {key}")
        caster = CONFIG_KEYS[key]
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise MalformedConfig(f"config key {key} must be a number")
        if value <= 0:
            raise MalformedConfig(f"config key {key} must be positive")
        out[key] = caster(value)
    return out


def _symbol_arg(text):
    """Parse a symbol argument: inline JSON or a path to a JSON file."""
    if text is None:
        return None
    text = text.strip()
    if not text.startswith("{") and os.path.exists(text):
        with open(text) as fh:
            return RationalSymbol.from_json(json.load(fh))
    try:
        return RationalSymbol.from_json(json.loads(text))
    except json.JSONDecodeError as exc:
        raise MalformedConfig(f"bad symbol JSON: {exc}") from exc


def _emit(args, payload):
    text = json.dumps(payload, sort_keys=True, indent=2 if args.human else None)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        if not args.quiet:
            print(f"wrote {args.out}")
    else:
        print(text)


def _human_summary(payload):
    if "status" in payload:
        dim = payload.get("dimension")
        print(f"# kernel status={payload['status']} dimension={dim}", file=sys.stderr)
    if "all_pass" in payload:
        verdict = "all properties passed" if payload["all_pass"] else "FAILURES present"
        print(f"# {verdict}", file=sys.stderr)


def _build_operator(args):
    kind = args.type
    if kind == "paired":
        return Paired(_symbol_arg(args.a), _symbol_arg(args.b))
    if kind == "transposed":
        return Transposed(_symbol_arg(args.a), _symbol_arg(args.b))
    if kind == "toeplitz":
        return Toeplitz(_symbol_arg(args.g))
    if kind == "hankel":
        return Hankel(_symbol_arg(args.g))
    raise MalformedConfig(f"unknown operator type {kind!r}")


def _cmd_kernel(args, cfg):
    kind = args.type
    if kind == "toeplitz":
        kb = toeplitz_kernel(_symbol_arg(args.g))
        payload = kb.to_json()
    else:
        pair = SymbolPair(_symbol_arg(args.a), _symbol_arg(args.b))
        if kind == "paired":
            kb = paired_kernel(pair)
            res = nontrivial_S(pair)
        elif kind == "transposed":
            kb = transposed_kernel(pair)
            res = nontrivial_Sigma(pair)
        else:
            raise MalformedConfig(f"kernel type {kind!r} not supported")
        payload = kb.to_json()
        checks = []
        if res.status is True and res.witness is not None:
            member = member_S if kind == "paired" else member_Sigma
            checks.append({"witness_verified": bool(member(res.witness, pair))})
            payload["witness"] = res.witness.to_json()
        payload["nontrivial"] = res.status if isinstance(res.status, str) else bool(res.status)
        payload["witness_checks"] = checks
    if args.N:
        node = _build_operator(args) if kind != "toeplitz" else Toeplitz(_symbol_arg(args.g))
        oracle = kernel_oracle(node, args.N, args.tol)
        payload["oracle"] = oracle.to_json()
    _emit(args, payload)
    if args.human:
        _human_summary(payload)
    return 0


def _cmd_apply(args, cfg):
    node = _build_operator(args)
    f = _symbol_arg(args.f)
    image = apply_exact(node, f)
    _emit(args, {"image": image.to_json(), "is_zero": image.is_zero})
    return 0


def _cmd_factor(args, cfg):
    if args.wh:
        g = _symbol_arg(args.g)
        fac = wiener_hopf(g)
        payload = fac.to_json()
        payload["winding_index"] = winding_index(g)
    else:
        f = _symbol_arg(args.f or args.g)
        pair = inner_outer(f, args.side)
        payload = {
            "inner": pair.inner.to_json(),
            "outer": pair.outer.to_json(),
            "side": pair.side,
        }
    _emit(args, payload)
    return 0


def _cmd_norm(args, cfg):
    node = _build_operator(args)
    n = args.N or cfg.get("oracle_N", 64)
    value = operator_norm(node, n)
    _emit(args, {"norm_lower_bound": value, "N": n})
    return 0


def _cmd_commutator(args, cfg):
    base = _build_operator(args)
    eta = _symbol_arg(args.g) if args.type in ("paired", "transposed") else None
    if eta is None:
        raise MalformedConfig("commutator needs --g as the multiplier symbol")
    node = Commutator(base, Mult(eta))
    n = args.N or max(16, 2 * bandwidth(node))
    res = numerical_rank(truncate(node, n), args.tol)
    payload = {
        "rank": res.rank,
        "gap": res.gap if res.gap != float("inf") else "inf",
        "indeterminate": res.indeterminate,
        "N": n,
    }
    if args.f:
        payload["image"] = apply_exact(node, _symbol_arg(args.f)).to_json()
    _emit(args, payload)
    return 0


def _cmd_verify(args, cfg):
    run_cfg = RunConfig(
        oracle_N=cfg.get("oracle_N", 64),
        rank_tol=cfg.get("rank_tol", tol.RANK_TOL),
        parallelism=cfg.get("parallelism", 1),
    )
    trials = args.trials or cfg.get("trials")
    if args.all:
        ids = registered_ids()
    elif args.property:
        ids = [args.property]
    else:
        raise MalformedConfig("verify needs --all or --property <id>")
    suite = run_suite(ids, trials, args.seed, run_cfg)
    payload = suite.to_json()
    _emit(args, payload)
    if args.human:
        for rep in suite.reports:
            mark = "pass" if rep.all_pass() else "FAIL"
            print(f"# {rep.property_id}: {rep.passes}/{rep.trials} {mark}", file=sys.stderr)
        _human_summary(payload)
    return 0 if suite.all_pass() else 1


def _cmd_report(args, cfg):
    if not args.f or not os.path.exists(args.f):
        raise MalformedConfig("report needs --f <stored report file>")
    with open(args.f) as fh:
        payload = json.load(fh)
    _emit(args, payload)
    if args.human and isinstance(payload, dict):
        for rep in payload.get("reports", []):
            ok = not rep.get("failures")
            print(
                f"# {rep.get('property')}: {rep.get('passes')}/{rep.get('trials')} "
                f"{'pass' if ok else 'FAIL'}",
                file=sys.stderr,
            )
    if isinstance(payload, dict) and payload.get("all_pass") is False:
        return 1
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pairedk",
        description="Kernels and structure of multiplication-projection operators "
        "on the circle, with exact rational computation and a numerical oracle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_type=True):
        p.add_argument("--a", help="symbol JSON (inline or file path)")
        p.add_argument("--b", help="symbol JSON (inline or file path)")
        p.add_argument("--g", help="symbol JSON (inline or file path)")
        p.add_argument("--f", help="function JSON (inline or file path)")
        if with_type:
            p.add_argument(
                "--type",
                choices=["paired", "transposed", "toeplitz", "hankel"],
                default="paired",
            )
        p.add_argument("--N", type=int, default=0)
        p.add_argument("--tol", type=float, default=tol.RANK_TOL)
        p.add_argument("--trials", type=int, default=0)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--config")
        p.add_argument("--out")
        p.add_argument("--human", action="store_true")
        p.add_argument("--quiet", action="store_true")

    p_kernel = sub.add_parser("kernel", help="exact kernel basis with certificates")
    common(p_kernel)
    p_apply = sub.add_parser("apply", help="apply an operator exactly to a function")
    common(p_apply)
    p_factor = sub.add_parser("factor", help="Wiener-Hopf or inner-outer factorization")
    common(p_factor)
    p_factor.add_argument("--wh", action="store_true")
    p_factor.add_argument("--side", choices=["plus", "minus"], default="plus")
    p_norm = sub.add_parser("norm", help="truncation norm lower bound")
    common(p_norm)
    p_comm = sub.add_parser("commutator", help="commutator with a multiplier: rank and action")
    common(p_comm)
    p_verify = sub.add_parser("verify", help="run the property suite")
    common(p_verify, with_type=False)
    p_verify.add_argument("--all", action="store_true")
    p_verify.add_argument("--property", choices=registered_ids())
    p_report = sub.add_parser("report", help="re-render a stored report")
    common(p_report, with_type=False)
    return parser


_COMMANDS = {
    "kernel": _cmd_kernel,
    "apply": _cmd_apply,
    "factor": _cmd_factor,
    "norm": _cmd_norm,
    "commutator": _cmd_commutator,
    "verify": _cmd_verify,
    "report": _cmd_report,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = {}
        cfg_path = args.config or os.environ.get(CONFIG_ENV)
        if args.config is not None or (cfg_path and os.path.exists(cfg_path)):
            cfg = load_config(cfg_path)
        knobs = {k: v for k, v in cfg.items() if k in ("eps_eq", "eps_circle", "eps_cluster", "rank_tol")}
        if knobs:
            tol.configure(**knobs)
        return _COMMANDS[args.command](args, cfg)
    except MalformedConfig as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnknownProperty as exc:
        print(f"error: unknown property {exc}", file=sys.stderr)
        return 2
    except PairedKError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
