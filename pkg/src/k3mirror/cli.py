"""Command-line driver.

Two subcommands:

  k3mirror verify --model all --suite all [--order/-K 10] [--qorder 30]
                  [--format json|text] [--out PATH]
  k3mirror emit KIND [selector flags] [--order/-K] [--qorder] [--out PATH]

`verify` runs named identity suites and exits 0 iff every check passes,
1 if any check fails, 2 on usage or internal error.  `emit` writes exact
coefficient expansions (rationals as strings) deterministically.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import modular
from .geometry import MODEL_LABELS, frobenius_log_periods, gm_matrices, model_params, yukawa
from .moduli import mirror_map
from .suites import SUITE_NAMES, ModelContext, run_suite

__all__ = ["RunConfig", "run", "emit_expansion", "main"]

_MODEL_CHOICES = tuple(m.lower() for m in MODEL_LABELS) + ("all",)
EMIT_KINDS = ("form", "period", "mirror-map", "gm", "yukawa")


@dataclass(frozen=True)
class RunConfig:
    model: str = "all"
    suite: str = "all"
    order: int = 10
    qmax: int = 30
    format: str = "text"
    out: str | None = None

    def __post_init__(self):
        if self.model not in _MODEL_CHOICES:
            raise ValueError(f"unknown model {self.model!r}; expected one of {_MODEL_CHOICES}")
        if self.suite != "all" and self.suite not in SUITE_NAMES:
            raise ValueError(f"unknown suite {self.suite!r}; expected one of {SUITE_NAMES}")
        if self.order < 2:
            raise ValueError("order must be at least 2")
        if self.qmax < 2 * self.order:
            raise ValueError("qorder must be at least twice the bivariate order")

    @property
    def models(self) -> tuple:
        return MODEL_LABELS if self.model == "all" else (self.model.upper(),)

    @property
    def suites(self) -> tuple:
        return SUITE_NAMES if self.suite == "all" else (self.suite,)


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _render_text(reports) -> str:
    lines = []
    for rep in reports:
        for c in rep.checks:
            status = c.status.upper()
            line = f"[{status}] {rep.model} :: {rep.suite} :: {c.name}"
            if c.convention:
                line += f" ({c.convention})"
            if c.first_discrepancy:
                line += f" first discrepancy: {c.first_discrepancy}"
            lines.append(line)
        lines.append(f"{rep.model} :: {rep.suite} :: "
                     f"{'PASSED' if rep.passed else 'FAILED'} ({len(rep.checks)} checks)")
    return "\n".join(lines)


def run(config: RunConfig) -> int:
    reports = []
    for label in config.models:
        ctx = ModelContext(label, config.order, config.qmax)
        for suite in config.suites:
            reports.append(run_suite(suite, ctx))
    reports.sort(key=lambda r: (r.model or "", r.suite))
    if config.format == "json":
        text = json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True)
    else:
        text = _render_text(reports)
    _write(text, config.out)
    return 0 if all(r.passed for r in reports) else 1


def emit_expansion(kind: str, selector: dict, config: RunConfig) -> str:
    """Serialize an exact expansion; deterministic for identical inputs.

    selector["truncate"] may request a display order below the working
    order (down to 0); internal construction always uses at least order 2.
    """
    K = int(selector.get("truncate", config.order))
    if K < 0:
        raise ValueError("truncation order must be non-negative")
    if kind == "form":
        level = int(selector.get("level", 1))
        name = selector.get("name", "A")
        forms = modular.build_forms(level, config.qmax)
        table = {
            "A": lambda: forms.A,
            "B": lambda: forms.B,
            "E": lambda: forms.E,
            "Cr": lambda: forms.Cr,
            "alpha": lambda: modular.alpha_series(forms),
            "j": lambda: modular.hauptmodul_j(forms),
        }
        if name not in table:
            raise ValueError(f"unknown form selector {name!r}; expected one of {tuple(table)}")
        payload = {"kind": "form", "level": level, "name": name,
                   "series": table[name]().truncate(K).to_json()}
    elif kind == "period":
        label = selector.get("model", "e6").upper()
        name = selector.get("name", "X0")
        ps = frobenius_log_periods(model_params(label), max(K, 2))
        table = {"X0": ps.x0, "Shat1": ps.shat1, "Shat2": ps.shat2}
        if name not in table:
            raise ValueError(f"unknown period selector {name!r}; expected one of {tuple(table)}")
        payload = {"kind": "period", "model": label, "name": name,
                   "series": table[name].truncate(K).to_json()}
    elif kind == "mirror-map":
        label = selector.get("model", "e6").upper()
        p = model_params(label)
        mm = mirror_map(p, frobenius_log_periods(p, max(K, 2)))
        payload = {"kind": "mirror-map", "model": label,
                   "q1_over_z1": mm.q_unit1.truncate(K).to_json(),
                   "q2_over_z2": mm.q_unit2.truncate(K).to_json(),
                   "z1_over_q1": mm.z_unit1.truncate(K).to_json(),
                   "z2_over_q2": mm.z_unit2.truncate(K).to_json()}
    elif kind == "gm":
        label = selector.get("model", "e6").upper()
        conn = gm_matrices(model_params(label))
        payload = {"kind": "gm", "model": label,
                   "G1": [[e.to_json() for e in row] for row in conn.g1],
                   "G2": [[e.to_json() for e in row] for row in conn.g2],
                   "G1_published": [[e.to_json() for e in row] for row in conn.g1_printed],
                   "G2_published": [[e.to_json() for e in row] for row in conn.g2_printed]}
    elif kind == "yukawa":
        label = selector.get("model", "e6").upper()
        pd = yukawa(model_params(label))
        payload = {"kind": "yukawa", "model": label,
                   "Q": [[e.to_json() for e in row] for row in pd.q]}
    else:
        raise ValueError(f"unknown emission kind {kind!r}; expected one of {EMIT_KINDS}")
    return json.dumps(payload, indent=2, sort_keys=True)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k3mirror",
        description="Exact verification of the elliptic-K3 mirror identity suites.")
    sub = parser.add_subparsers(dest="command")

    def common(sp):
        sp.add_argument("--order", "-K", type=int, default=10,
                        help="bivariate truncation order (default 10)")
        sp.add_argument("--qorder", type=int, default=None,
                        help="univariate truncation order (default max(30, 2*order))")
        sp.add_argument("--out", default=None, help="output path (default stdout)")

    vp = sub.add_parser("verify", help="run identity suites")
    vp.add_argument("--model", default="all", choices=_MODEL_CHOICES)
    vp.add_argument("--suite", default="all", choices=("all",) + SUITE_NAMES)
    vp.add_argument("--format", default="text", choices=("text", "json"))
    common(vp)

    ep = sub.add_parser("emit", help="emit exact expansions")
    ep.add_argument("kind", choices=EMIT_KINDS)
    ep.add_argument("--model", default="e6", choices=_MODEL_CHOICES[:-1])
    ep.add_argument("--level", type=int, default=None, choices=(1, 2, 3))
    ep.add_argument("--name", default=None,
                    help="series selector (form: A|B|E|Cr|alpha|j; period: X0|Shat1|Shat2)")
    common(ep)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 2
    try:
        qmax = args.qorder if args.qorder is not None else max(30, 2 * args.order)
        if args.command == "verify":
            config = RunConfig(args.model, args.suite, args.order, qmax,
                               args.format, args.out)
            return run(config)
        config = RunConfig("all", "all", max(args.order, 2), max(qmax, 2 * max(args.order, 2)),
                           "json", args.out)
        selector = {"truncate": args.order}
        if args.level is not None:
            selector["level"] = args.level
        if args.name is not None:
            selector["name"] = args.name
        if args.kind != "form":
            selector["model"] = args.model
        _write(emit_expansion(args.kind, selector, config), args.out)
        return 0
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
