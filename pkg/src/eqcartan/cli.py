"""Command line interface.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for usage, configuration and parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .scalars import parse_rational

__all__ = ["RunConfig", "ConfigError", "main", "build_setup", "CHECK_NAMES"]

CHECK_NAMES = ("lemma3", "lemma4", "lemma5", "lemma6", "lemma7", "lemma8", "thm1", "thm2", "thm3")
APPLY_MAPS = ("psi", "psi_inv", "d_C", "delta", "D")
MUTATIONS = ("drop-ctt", "drop-dw-phi", "flip-dw-phi")

_INVARIANCE = {"paper": "paper_literal", "paper_literal": "paper_literal",
               "per-generator": "per_generator", "per_generator": "per_generator"}
_BASIC = {"all-pairs": "all_pairs", "all_pairs": "all_pairs",
          "twisted-pairs": "twisted_pairs", "twisted_pairs": "twisted_pairs"}


class ConfigError(ValueError):
    pass


def _rational_text(v) -> str:
    if isinstance(v, bool) or isinstance(v, float):
        raise ConfigError(f"scalar {v!r} must be an integer or a rational string")
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        try:
            return str(parse_rational(v))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    raise ConfigError(f"scalar {v!r} must be an integer or a rational string")


@dataclass
class RunConfig:
    """Everything a run depends on.  ``lie`` holds either a preset name or explicit constants."""

    lie: dict = field(default_factory=lambda: {"preset": "su2"})
    twist: list | None = None
    module: dict = field(default_factory=lambda: {"kind": "point"})
    truncation: int = 4
    sign_convention: str = "minus"
    invariance: str = "per_generator"
    basic: str = "twisted_pairs"
    delta_form: str = "resolved"
    model: str = "weil"

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("configuration must be a JSON object")
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
        cfg = cls(**data)
        cfg.normalise()
        return cfg

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        try:
            data = json.loads(text, parse_float=_reject_float)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed configuration: {exc}") from None
        return cls.from_dict(data)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"

    def normalise(self):
        from .lie import preset

        lie = self.lie
        if not isinstance(lie, dict):
            raise ConfigError("'lie' must be an object")
        if "preset" in lie:
            if set(lie) != {"preset"}:
                raise ConfigError("'lie' takes either a preset or explicit constants, not both")
            try:
                preset(lie["preset"])
            except KeyError as exc:
                raise ConfigError(str(exc.args[0])) from None
        else:
            if set(lie) - {"dimension", "constants", "name"} or "dimension" not in lie:
                raise ConfigError("explicit 'lie' needs 'dimension' and 'constants' ([i, j, k, value], 1-based)")
            if not isinstance(lie["dimension"], int) or isinstance(lie["dimension"], bool) or lie["dimension"] < 1:
                raise ConfigError("'dimension' must be a positive integer")
            entries = []
            for e in lie.get("constants", []):
                if not (isinstance(e, list) and len(e) == 4):
                    raise ConfigError(f"constant entry {e!r} must be [i, j, k, value]")
                entries.append([int(e[0]), int(e[1]), int(e[2]), _rational_text(e[3])])
            self.lie = {"dimension": lie["dimension"], "constants": entries, **({"name": lie["name"]} if "name" in lie else {})}
        if self.twist is not None:
            if not isinstance(self.twist, list) or not all(isinstance(r, list) for r in self.twist):
                raise ConfigError("'twist' must be a matrix (list of rows)")
            self.twist = [[_rational_text(x) for x in row] for row in self.twist]
        mod = self.module
        if not isinstance(mod, dict) or mod.get("kind") not in ("point", "rotation", "weil", "linear"):
            raise ConfigError("'module.kind' must be point, rotation, weil or linear")
        if mod["kind"] == "linear":
            if "rho" not in mod or "m" not in mod:
                raise ConfigError("a linear module needs 'm' and 'rho'")
            mod["rho"] = [[[_rational_text(x) for x in row] for row in mat] for mat in mod["rho"]]
        if "cap" in mod and (not isinstance(mod["cap"], int) or isinstance(mod["cap"], bool)):
            raise ConfigError("'module.cap' must be an integer")
        if not isinstance(self.truncation, int) or isinstance(self.truncation, bool) or self.truncation < 1:
            raise ConfigError("'truncation' must be an integer >= 1")
        if self.sign_convention not in ("minus", "plus"):
            raise ConfigError("'sign_convention' must be minus or plus")
        if self.invariance not in _INVARIANCE:
            raise ConfigError("'invariance' must be per_generator or paper_literal")
        self.invariance = _INVARIANCE[self.invariance]
        if self.basic not in _BASIC:
            raise ConfigError("'basic' must be twisted_pairs or all_pairs")
        self.basic = _BASIC[self.basic]
        if self.delta_form not in ("resolved", "verbatim"):
            raise ConfigError("'delta_form' must be resolved or verbatim")
        if self.model not in ("weil", "cartan"):
            raise ConfigError("'model' must be weil or cartan")

    # -- construction -------------------------------------------------------------

    def lie_spec(self):
        from .lie import LieAlgebraSpec, preset

        if "preset" in self.lie:
            spec = preset(self.lie["preset"])
        else:
            entries = [(i - 1, j - 1, k - 1, Fraction(v)) for i, j, k, v in self.lie["constants"]]
            try:
                spec = LieAlgebraSpec.from_entries(self.lie["dimension"], entries, name=self.lie.get("name", "custom"))
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        if self.twist is not None:
            try:
                spec = spec.with_twist([[Fraction(x) for x in row] for row in self.twist])
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        return spec


def _reject_float(text):
    raise ConfigError(f"floating point value {text} is not allowed; use a rational string")


def build_setup(cfg: RunConfig, weil_mutation: str | None = None, check_module: bool = True):
    """The tensor algebra described by a configuration."""
    from .gdga import LinearActionSpec, make_point, make_polynomial_forms, make_weil_as_module, rotation_action
    from .weil import WeilAlgebra
    from .weilmodel import TensorAlgebra

    spec = cfg.lie_spec()
    weil = WeilAlgebra(spec, mutate=weil_mutation)
    kind = cfg.module["kind"]
    cap = cfg.module.get("cap", max(6, cfg.truncation))
    if kind == "point":
        mod = make_point(spec)
    elif kind == "rotation":
        mod = make_polynomial_forms(rotation_action(spec, cap), spec, cfg.truncation, check=check_module)
    elif kind == "linear":
        action = LinearActionSpec(cfg.module["m"], tuple(tuple(tuple(Fraction(x) for x in r) for r in mat)
                                                         for mat in cfg.module["rho"]), cap)
        mod = make_polynomial_forms(action, spec, cfg.truncation, check=check_module)
    else:
        mod = make_weil_as_module(WeilAlgebra(spec))
    return TensorAlgebra(weil, mod)


# -- commands ---------------------------------------------------------------------


def _emit(report, name=None, out=None):
    out = out or sys.stdout
    line = report.summary()
    if name is not None:
        line = f"CHECK {name} {'pass' if report.ok else 'fail'} {len(report)}"
    print(line, file=out)
    for v in report.violations[:10]:
        print(f"  {v}", file=out)
    if len(report) > 10:
        print(f"  ... {len(report) - 10} more", file=out)
    return report.ok


def cmd_validate(cfg: RunConfig, args) -> int:
    from .gdga import HomomorphismError, check_gdga
    from .lie import validate
    from .report import ValidationReport
    from .weil import check_weil_identities

    ok = True
    spec = cfg.lie_spec()
    ok &= _emit(validate(spec), "lie")
    top = cfg.truncation
    try:
        tensor = build_setup(cfg, args.mutate if args.mutate in ("drop-dw-phi", "flip-dw-phi") else None)
    except HomomorphismError as exc:
        rep = ValidationReport("module")
        rep.add("not a representation", "module", str(exc))
        _emit(rep, "module")
        return 1
    ok &= _emit(check_gdga(tensor.module, top), "module")
    ok &= _emit(check_weil_identities(tensor.weil, top), "weil")
    return 0 if ok else 1


def run_check(name: str, tensor, cfg: RunConfig, mutate: str | None = None, out=None):
    """Run one named check; returns ``(ok, extra_lines)``."""
    from .brst import BrstModel
    from .cartan import CartanModel

    N = cfg.truncation
    extra = []
    brst = BrstModel(tensor, cfg.delta_form, "drop-ctt" if mutate == "drop-ctt" else None)
    if name == "lemma3":
        cartan = CartanModel(tensor, cfg.sign_convention)
        reports = [cartan.d_C_squared_defect(N)]
    elif name == "lemma4":
        reports = [brst.delta_squared_check(N), brst.delta_conjugation_check(N)]
    elif name == "lemma5":
        reports = [brst.psi_forms_agree(N)]
    elif name == "lemma6":
        reports = [tensor.check_tensor_identities(N)]
    elif name == "lemma7":
        reports = [tensor.twisted_cartan_check(N)]
    elif name == "lemma8":
        reports = [tensor.check_basic_preserved(N, cfg.basic)]
    elif name == "thm1":
        reports = [brst.chain_map_check(N)]
    elif name == "thm2":
        reports = [brst.cartan_to_basic_check(N, cfg.invariance, cfg.sign_convention)]
    elif name == "thm3":
        rank = brst.isomorphism_check(N, cfg.invariance, cfg.sign_convention)
        reports = [rank.report]
        extra.append("DIMS " + rank.dims_line())
        extra.extend(_mode_notes(tensor, cfg))
    else:
        raise ConfigError(f"unknown check {name!r}")
    merged = reports[0]
    for r in reports[1:]:
        merged.extend(r)
    ok = _emit(merged, name, out)
    for line in extra:
        print(line, file=out or sys.stdout)
    return ok


def _mode_notes(tensor, cfg: RunConfig) -> list:
    from .cartan import CartanModel

    N = cfg.truncation
    cartan = CartanModel(tensor, cfg.sign_convention)
    inv = {m: cartan.invariant_subspace(N, m) for m in ("per_generator", "paper_literal")}
    bas = {m: tensor.basic_subspace(N, m) for m in ("twisted_pairs", "all_pairs")}
    lines = []
    for label, table in (("invariance", inv), ("basic", bas)):
        (m1, a), (m2, b) = table.items()
        da = [a[d].dim for d in range(N + 1)]
        db = [b[d].dim for d in range(N + 1)]
        lines.append(f"NOTE {label} {m1} {da} {m2} {db}" + ("" if da == db else " DISAGREE"))
    return lines


def cmd_check(cfg: RunConfig, args) -> int:
    which = args.which
    names = CHECK_NAMES if which == "all" else (which,)
    weil_mut = args.mutate if args.mutate in ("drop-dw-phi", "flip-dw-phi") else None
    tensor = build_setup(cfg, weil_mut)
    ok = True
    for name in names:
        ok &= run_check(name, tensor, cfg, args.mutate)
    return 0 if ok else 1


def cmd_cohomology(cfg: RunConfig, args) -> int:
    from .cohomology import equivariant_cohomology

    tensor = build_setup(cfg)
    N = cfg.truncation
    table = equivariant_cohomology(tensor, N, cfg.model, cfg.basic, cfg.invariance, cfg.sign_convention)
    if args.tsv:
        sys.stdout.write(table.tsv())
    else:
        mode = cfg.basic if cfg.model == "weil" else cfg.invariance
        print(f"# model {cfg.model} ({mode}), degrees 0..{N - 1}; degree {N} is the truncation boundary")
        sys.stdout.write(table.tsv())
    return 0


def cmd_apply(cfg: RunConfig, args) -> int:
    from .brst import BrstModel
    from .cartan import CartanModel

    tensor = build_setup(cfg)
    alg = tensor.alg
    try:
        x = alg.parse(args.expression)
    except ValueError as exc:
        raise ConfigError(f"cannot parse element: {exc}") from None
    if args.map == "d_C":
        y = CartanModel(tensor, cfg.sign_convention).apply_d(x)
    elif args.map == "D":
        y = tensor.D(x)
    else:
        brst = BrstModel(tensor, cfg.delta_form, "drop-ctt" if args.mutate == "drop-ctt" else None)
        y = {"psi": brst.psi, "psi_inv": brst.psi_inv, "delta": brst.delta}[args.map](x)
    print(alg.format(y))
    return 0


# -- argument parsing ------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON configuration file")
    common.add_argument("--preset", help="Lie algebra preset (overrides the config)")
    common.add_argument("--module", choices=("point", "rotation", "weil"), help="module (overrides the config)")
    common.add_argument("--twist", help='twist matrix as JSON, e.g. \'[["1"]]\'')
    common.add_argument("--degree", type=int, help="truncation degree N")
    common.add_argument("--model", choices=("cartan", "weil"))
    common.add_argument("--invariance", choices=("paper", "per-generator"))
    common.add_argument("--basic", choices=("all-pairs", "twisted-pairs"))
    common.add_argument("--sign", choices=("minus", "plus"))
    common.add_argument("--delta-form", choices=("resolved", "verbatim"))
    common.add_argument("--tsv", action="store_true", help="TSV output only")
    common.add_argument("--mutate", choices=MUTATIONS, help=argparse.SUPPRESS)
    p = argparse.ArgumentParser(prog="eqcartan", description="Exact checks for twisted equivariant cohomology models")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="validate the Lie algebra, module and Weil algebra")
    c = sub.add_parser("check", parents=[common], help="run identity checks")
    c.add_argument("which", choices=CHECK_NAMES + ("all",))
    sub.add_parser("cohomology", parents=[common], help="Betti table of the chosen model")
    a = sub.add_parser("apply", parents=[common], help="apply an operator to an element")
    a.add_argument("map", choices=APPLY_MAPS)
    a.add_argument("expression")
    sub.add_parser("show-config", parents=[common], help="print the effective configuration")
    return p


def load_config(args) -> RunConfig:
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read configuration: {exc}") from None
        cfg = RunConfig.from_json(text)
    else:
        cfg = RunConfig()
    data = asdict(cfg)
    if args.preset:
        data["lie"] = {"preset": args.preset}
    if args.module:
        data["module"] = {**{k: v for k, v in data["module"].items() if k == "cap"}, "kind": args.module}
    if args.twist:
        try:
            data["twist"] = json.loads(args.twist, parse_float=_reject_float)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed --twist: {exc}") from None
    if args.degree is not None:
        data["truncation"] = args.degree
    for key, attr in (("model", "model"), ("invariance", "invariance"), ("basic", "basic"),
                      ("sign_convention", "sign"), ("delta_form", "delta_form")):
        v = getattr(args, attr)
        if v is not None:
            data[key] = v
    return RunConfig.from_dict(data)


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args)
        if args.command == "show-config":
            sys.stdout.write(cfg.to_json())
            return 0
        if args.command == "validate":
            return cmd_validate(cfg, args)
        if args.command == "check":
            return cmd_check(cfg, args)
        if args.command == "cohomology":
            return cmd_cohomology(cfg, args)
        return cmd_apply(cfg, args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        # parse errors in expressions, theta in d_C input, bad module data
        from .gdga import HomomorphismError

        if isinstance(exc, HomomorphismError):
            print(f"error: {exc}", file=sys.stderr)
            return 1
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
