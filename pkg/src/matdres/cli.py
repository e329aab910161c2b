"""Command-line front end.

Exit status: 0 success, 1 verification failure or failed computation,
2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from typing import Dict, List, Optional

from .bc import bc_generator
from .dres import spectral_curve
from .errors import ConfigError, ConjectureViolation, MatDresError
from .modo import modo_commutator
from .parser import SessionConfig, parse_config, parse_factorization_json, parse_gaussian
from .polyring import Factorization
from .render import render_modo
from .report import bc_dict, curve_dict, kernel_dict, spectral_matrix_strings, verify_pair
from .spectral import CurvePoint, kernel_at_point, phi_ratio
from .render import render_bivar

DEMOS = ("akns", "ex71", "ex72")
FACTORIZATION_ENV = "MATDRES_FACTORIZATION"


class UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _load_config(path: str) -> SessionConfig:
    return parse_config(_read_text(path))


def _factorization(args, cfg: SessionConfig) -> Optional[Factorization]:
    path = args.factorization or os.environ.get(FACTORIZATION_ENV)
    if path:
        try:
            data = json.loads(_read_text(path))
        except json.JSONDecodeError as e:
            raise ConfigError(f"factorization file is not valid JSON: {e.msg}", e.lineno, e.colno) from None
        return parse_factorization_json(data, cfg.field)
    return cfg.factorization


def _pair(args, cfg: SessionConfig):
    return cfg.operator(args.L), cfg.operator(args.B)


def _emit(report: Dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
        return
    _emit_text(report, out, 0)


def _emit_text(obj, out, indent: int) -> None:
    pad = "  " * indent
    for key, value in obj.items():
        if isinstance(value, dict):
            out.write(f"{pad}{key}:\n")
            _emit_text(value, out, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            out.write(f"{pad}{key}:\n")
            for item in value:
                out.write(f"{pad}  - " + ", ".join(f"{k}={_scalar(v)}" for k, v in item.items()) + "\n")
        else:
            out.write(f"{pad}{key}: {_scalar(value)}\n")


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    return str(v)


# -- commands -------------------------------------------------------------------

def cmd_commutator(args, cfg) -> tuple:
    L, B = _pair(args, cfg)
    c = modo_commutator(L, B)
    return {"commutator": render_modo(c), "is_zero": not c}, 0


def cmd_curve(args, cfg) -> tuple:
    L, B = _pair(args, cfg)
    return curve_dict(spectral_curve(L, B)), 0


def cmd_bcgen(args, cfg) -> tuple:
    L, B = _pair(args, cfg)
    try:
        rep = bc_generator(L, B, user=_factorization(args, cfg))
    except ConjectureViolation as e:
        return bc_dict(e.report), 1
    return bc_dict(rep), 0


def cmd_kernel(args, cfg) -> tuple:
    L, B = _pair(args, cfg)
    pt = CurvePoint(parse_gaussian(args.lam), parse_gaussian(args.mu))
    kb = kernel_at_point(L, B, pt)
    f = spectral_curve(L, B, check_commuting=False).f
    return kernel_dict(kb, pt, f), 0


def cmd_verify(args, cfg) -> tuple:
    L, B = _pair(args, cfg)
    checks = verify_pair(L, B)
    ok = all(c["passed"] for c in checks)
    return {"passed": ok, "checks": checks}, 0 if ok else 1


def demo_config(name: str) -> str:
    return resources.files("matdres.demos").joinpath(f"{name}.cfg").read_text(encoding="utf-8")


def demo_golden(name: str) -> Dict:
    return json.loads(resources.files("matdres.demos").joinpath(f"{name}.golden.json").read_text(encoding="utf-8"))


def run_demo(name: str) -> Dict:
    cfg = parse_config(demo_config(name))
    L, B = cfg.operator("L"), cfg.operator("B")
    curve = curve_dict(spectral_curve(L, B))
    bc = bc_dict(bc_generator(L, B, user=cfg.factorization))
    phi = phi_ratio(L, B)
    computed = {
        "spectral_matrix": spectral_matrix_strings(L, B),
        "f": curve["f"],
        "factors": [f["poly"] for f in bc["factors"]],
        "F": bc["F"],
        "decomposition": bc["decomposition"],
        "phi_numerator": render_bivar(phi.num),
        "phi_denominator": render_bivar(phi.den),
    }
    golden = demo_golden(name)
    mismatches = []
    for key, expected in golden.get("expected", {}).items():
        got = computed.get(key)
        if got != expected:
            mismatches.append({"key": key, "expected": expected, "got": got})
    checks = verify_pair(L, B)
    return {
        "demo": name,
        "f": computed["f"],
        "F": computed["F"],
        "factors": computed["factors"],
        "curve": curve,
        "bc": bc,
        "phi": {"numerator": computed["phi_numerator"], "denominator": computed["phi_denominator"]},
        "spectral_matrix": computed["spectral_matrix"],
        "verify": {"passed": all(c["passed"] for c in checks), "checks": checks},
        "golden_match": not mismatches,
        "mismatches": mismatches,
    }


def cmd_demo(args, cfg=None) -> tuple:
    report = run_demo(args.name)
    ok = report["golden_match"] and report["verify"]["passed"]
    return report, 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="matdres", description="Matrix differential resultants and spectral curves.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_config=True):
        if needs_config:
            sp.add_argument("config", help="session configuration file")
            sp.add_argument("--L", default="L", help="name of the order-one operator (default L)")
            sp.add_argument("--B", default="B", help="name of the second operator (default B)")
        sp.add_argument("--format", choices=("text", "json"), default="text")

    common(sub.add_parser("commutator", help="print [L, B]"))
    common(sub.add_parser("curve", help="spectral curve report"))
    sp = sub.add_parser("bcgen", help="generator of the Burchnall-Chaundy ideal")
    common(sp)
    sp.add_argument("--factorization", help=f"JSON factorization of f (also via ${FACTORIZATION_ENV})")
    sp = sub.add_parser("kernel", help="common-solution kernel at a point")
    common(sp)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--mu", dest="mu", required=True)
    common(sub.add_parser("verify", help="run the invariant suite on a pair"))
    sp = sub.add_parser("demo", help="run a built-in example and compare with golden values")
    sp.add_argument("name", choices=DEMOS)
    common(sp, needs_config=False)
    return p


COMMANDS = {"commutator": cmd_commutator, "curve": cmd_curve, "bcgen": cmd_bcgen,
            "kernel": cmd_kernel, "verify": cmd_verify, "demo": cmd_demo}


def main(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        if args.command == "demo":
            report, code = cmd_demo(args)
        else:
            cfg = _load_config(args.config)
            report, code = COMMANDS[args.command](args, cfg)
    except (UsageError, ConfigError) as e:
        err.write(f"error: {e}\n")
        return 2
    except MatDresError as e:
        err.write(f"error {e.code}: {e}\n")
        return 1
    _emit(report, args.format, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
