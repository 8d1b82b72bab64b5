"""Command-line front end: ``freecons <command> --config FILE ...``.

Exit codes: 0 answered or passed, 1 verified false or degenerate input,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import amalgam as am
from . import genericity as gn
from . import hnn as hn
from .config import GroupConfig, load
from .errors import ConfigError, DegenerateError, EscalationCapError, FreeConsError
from .wordspec import parse_word

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


@dataclass
class RunResult:
    command: str
    config_digest: str
    outcome: str  # "pass" | "fail" | "error"
    payload: str
    exit_code: int


def _ok(cfg, cmd, text):
    return RunResult(cmd, cfg.digest, "pass", text, EXIT_OK)


def _fail(cfg, cmd, text):
    return RunResult(cmd, cfg.digest, "fail", text, EXIT_FALSE)


def _is_hnn(cfg) -> bool:
    return isinstance(cfg.group, hn.HnnGroup)


def _length_text(x) -> str:
    if isinstance(x, hn.HnnWord):
        return f"{x} (t-length {x.t_length})"
    return f"{x} (length {x.length})"


def _cyclic(x):
    return hn.cyclically_reduce_hnn(x) if isinstance(x, hn.HnnWord) else am.cyclically_reduce(x)


def _conjugate(x, y):
    return hn.are_conjugate_hnn(x, y) if isinstance(x, hn.HnnWord) else am.are_conjugate(x, y)


def _check_d(d: int):
    if d < 2:
        raise ConfigError("d must exceed 1")


# -- commands -------------------------------------------------------------------

def cmd_reduce(cfg: GroupConfig, spec: str) -> RunResult:
    return _ok(cfg, "reduce", _length_text(parse_word(spec, cfg.group)))


def cmd_classify(cfg: GroupConfig, spec: str) -> RunResult:
    x = parse_word(spec, cfg.group)
    form = _cyclic(x)
    kind = "elliptic" if gn.is_elliptic(x) else "hyperbolic"
    return _ok(cfg, "classify", f"{kind}\ncore: {form.core}\nconjugator: {form.conjugator}")


def cmd_conjugate(cfg: GroupConfig, spec_x: str, spec_y: str) -> RunResult:
    x, y = parse_word(spec_x, cfg.group), parse_word(spec_y, cfg.group)
    c = _conjugate(x, y)
    if c is None:
        return _ok(cfg, "conjugate", "not conjugate")
    return _ok(cfg, "conjugate", f"conjugate\nconjugator: {c}")


def cmd_roots(cfg: GroupConfig, spec: str, d: int, search_bound: int = 1) -> RunResult:
    if d < 1:
        raise ConfigError("d must be positive")
    x = parse_word(spec, cfg.group)
    roots = gn.dth_roots(x, d, search_bound)
    lines = [f"{len(roots)} root(s)"] + [str(r) for r in roots]
    if not cfg.group.is_exact():
        lines.append(f"(within window {cfg.group.window})")
    return _ok(cfg, "roots", "\n".join(lines))


def cmd_witness(cfg: GroupConfig, d: int, n: int, escalation: int = 0) -> RunResult:
    _check_d(d)
    if _is_hnn(cfg):
        w, (a, b) = hn.witness_alpha_hnn(cfg.group, d, n, escalation)
    else:
        w, (a, b) = am.witness_alpha(cfg.group, d, n, escalation)
    return _ok(cfg, "witness", f"exponents: {a} {b}\nwitness: {w.to_spec()}")


def _report_text(cfg, report, timing) -> str:
    report.extra["config_digest"] = cfg.digest
    return report.to_json(timing)


def cmd_verify(cfg: GroupConfig, d: int, n: int, exponents=None, workers: int = 1,
               timing: bool = False) -> RunResult:
    _check_d(d)
    try:
        report = gn.verify_witness(cfg.group, d, n, exponents=exponents, workers=workers,
                                  cap=cfg.ball_cap)
    except EscalationCapError as exc:
        return _fail(cfg, "verify", _report_text(cfg, exc.report, timing))
    text = _report_text(cfg, report, timing)
    return _ok(cfg, "verify", text) if report.passed else _fail(cfg, "verify", text)


def cmd_census(cfg: GroupConfig, d: int, radius: int, workers: int = 1,
               timing: bool = False) -> RunResult:
    _check_d(d)
    report = gn.fs_type_census(cfg.group, d, radius, workers=workers, cap=cfg.ball_cap)
    return _ok(cfg, "census", _report_text(cfg, report, timing))


def cmd_generosity(cfg: GroupConfig, m: int, N: int) -> RunResult:
    if _is_hnn(cfg):
        raise ConfigError("generosity needs an amalgam")
    z = gn.generosity_escapee(cfg.group, m, N, cap=cfg.ball_cap)
    if z is None:
        return _fail(cfg, "generosity", f"no escapee within radius {N} for translates of radius {m}")
    return _ok(cfg, "generosity", f"escapee: {z.to_spec()}")


def cmd_detect(cfg: GroupConfig) -> RunResult:
    G = cfg.group
    if _is_hnn(cfg):
        ok, g = hn.is_nonascending(G)
        if not ok:
            return _ok(cfg, "detect", "ascending")
        if g is None:
            return _ok(cfg, "detect", "non-ascending\nno witness within the search window")
        return _ok(cfg, "detect", f"non-ascending\nwitness: g={G.base.fmt(g)}")
    lines = ["non-trivial amalgam"]
    try:
        lt = am.witness_letters(G)
    except DegenerateError as exc:
        dihedral = "dihedral case" in str(exc)
        lines.append("degenerate: dihedral case" if dihedral else "degenerate")
        return _ok(cfg, "detect", "\n".join(lines))
    s = am.side_index(lt.side)
    Fh, Fg = G.factors[s], G.factors[1 - s]
    lines.append("non-degenerate" if lt.strict else "non-degenerate (distinct right cosets only)")
    lines.append(f"witnesses: g={Fg.fmt(lt.g)} h={Fh.fmt(lt.h)} h'={Fh.fmt(lt.h2)}")
    return _ok(cfg, "detect", "\n".join(lines))


# -- argument parsing ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="group config file (YAML or JSON)")
    common.add_argument("--out", help="write the result here instead of standard output")
    common.add_argument("--window", type=int, help="override the config's letter window")
    common.add_argument("--workers", type=int, default=1, help="processes for ball sweeps")
    common.add_argument("--timing", action="store_true", help="record wall time in reports")
    common.add_argument("--pure-python", action="store_true", help="skip the compiled kernels")

    p = argparse.ArgumentParser(prog="freecons", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("reduce", parents=[common], help="normal form and length")
    s.add_argument("word", nargs="?", default="")
    s = sub.add_parser("classify", parents=[common], help="elliptic or hyperbolic")
    s.add_argument("word")
    s = sub.add_parser("conjugate", parents=[common], help="conjugacy test with conjugator")
    s.add_argument("x")
    s.add_argument("y")
    s = sub.add_parser("roots", parents=[common], help="all d-th roots")
    s.add_argument("word")
    s.add_argument("-d", type=int, required=True)
    s.add_argument("--search-bound", type=int, default=1)
    s = sub.add_parser("witness", parents=[common], help="candidate witness word")
    s.add_argument("-d", type=int, required=True)
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--escalation", type=int, default=0)
    s = sub.add_parser("verify", parents=[common], help="verify a witness over a ball")
    s.add_argument("-d", type=int, required=True)
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--exponents", type=int, nargs=2, metavar=("ALPHA", "BETA"))
    s = sub.add_parser("census", parents=[common], help="root-count census over a ball")
    s.add_argument("-d", type=int, required=True)
    s.add_argument("--radius", type=int, required=True)
    s = sub.add_parser("generosity", parents=[common], help="search for an escapee")
    s.add_argument("-m", type=int, required=True)
    s.add_argument("-N", type=int, required=True)
    sub.add_parser("detect", parents=[common], help="structural flags and witnesses")
    return p


def run(args: argparse.Namespace) -> RunResult:
    cfg = load(args.config, window=args.window, use_kernel=not args.pure_python)
    c = args.command
    if c == "reduce":
        return cmd_reduce(cfg, args.word)
    if c == "classify":
        return cmd_classify(cfg, args.word)
    if c == "conjugate":
        return cmd_conjugate(cfg, args.x, args.y)
    if c == "roots":
        return cmd_roots(cfg, args.word, args.d, args.search_bound)
    if c == "witness":
        return cmd_witness(cfg, args.d, args.n, args.escalation)
    if c == "verify":
        return cmd_verify(cfg, args.d, args.n, args.exponents, args.workers, args.timing)
    if c == "census":
        return cmd_census(cfg, args.d, args.radius, args.workers, args.timing)
    if c == "generosity":
        return cmd_generosity(cfg, args.m, args.N)
    return cmd_detect(cfg)


def _emit(text: str, out: Optional[str]):
    if not text.endswith("\n"):
        text += "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        result = run(args)
    except DegenerateError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_FALSE
    except (FreeConsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(result.payload, args.out)
    if result.exit_code == EXIT_FALSE and result.outcome == "fail":
        print(f"{args.command}: failed", file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
