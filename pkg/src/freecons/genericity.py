"""Ball enumeration and the verification sweeps.

Every claim is certified only over an explicitly enumerated ball; for groups
with infinite factors the ball is cut by a letter window and every report
carries ``exact = False``.
"""

from __future__ import annotations

import json
import multiprocessing as mp
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence, Union

from . import amalgam as am
from . import hnn as hn
from .errors import CapExceededError, EscalationCapError

DEFAULT_BALL_CAP = 2_000_000

Group = Union[am.AmalgamGroup, hn.HnnGroup]
Word = Union[am.AmalgamWord, hn.HnnWord]


@dataclass
class Ball:
    group: Any
    radius: int
    window: Optional[int]
    elements: list
    exact: bool

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _is_amalgam(group) -> bool:
    return isinstance(group, am.AmalgamGroup)


def _exact(group) -> bool:
    return group.is_exact()


def enumerate_ball(group: Group, n: int, window: Optional[int] = None,
                   cap: int = DEFAULT_BALL_CAP) -> Ball:
    if n < 0:
        raise ValueError("radius must be non-negative")
    window = group.window if window is None else window
    size = group.ball_size(n, window)
    if size > cap:
        raise CapExceededError(f"ball of radius {n} would hold {size} elements (cap {cap})")
    elements = sorted(set(group.iter_ball(n, window)), key=lambda w: w.sort_key())
    return Ball(group, n, window, elements, _exact(group))


# -- parallel sweep ------------------------------------------------------------

_WORKER: dict = {}


def _init_worker(group, fn, args):
    _WORKER["group"] = group
    _WORKER["fn"] = fn
    _WORKER["args"] = args


def _raw(w: Word):
    return (w.prefix, w.syllables) if isinstance(w, am.AmalgamWord) else (w.g0, w.syllables)


def _rebuild(group, raw) -> Word:
    cls = am.AmalgamWord if _is_amalgam(group) else hn.HnnWord
    return cls(group, *raw)


def _run_one(raw):
    group = _WORKER["group"]
    return _WORKER["fn"](group, _rebuild(group, raw), *_WORKER["args"])


def sweep(fn: Callable, group: Group, items: Sequence[Word], args: tuple = (), workers: int = 1) -> list:
    """``[fn(group, x, *args) for x in items]``, optionally across processes.

    Results always come back in input order.
    """
    if workers <= 1 or len(items) < 2:
        return [fn(group, x, *args) for x in items]
    try:
        ctx = mp.get_context("fork")
    except ValueError:
        ctx = None
    chunk = max(1, len(items) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx, initializer=_init_worker,
                             initargs=(group, fn, args)) as pool:
        return list(pool.map(_run_one, [_raw(x) for x in items], chunksize=chunk))


# -- element predicates ----------------------------------------------------------

def is_elliptic(x: Word) -> bool:
    return am.is_elliptic(x) if isinstance(x, am.AmalgamWord) else hn.is_elliptic_hnn(x)


def dth_roots(x: Word, d: int, search_bound: int = 1) -> list:
    if isinstance(x, am.AmalgamWord):
        return am.dth_roots(x, d, search_bound)
    return hn.dth_roots_hnn(x, d, search_bound)


def power(x: Word, d: int) -> Word:
    return am.power(x, d) if isinstance(x, am.AmalgamWord) else hn.power_hnn(x, d)


def _verdict(group, x, alpha, d):
    """``(hyperbolic, root_free, exact)`` for ``x * alpha``; root_free is None
    when the product is elliptic."""
    y = x * alpha
    if is_elliptic(y):
        return False, None, True
    if isinstance(y, hn.HnnWord):
        if hn.power_pattern_excluded(y, d):
            return True, True, True
        return True, not hn.is_dth_power_hnn(y, d), group.base.is_finite
    return True, not am.is_dth_power(y, d), True


# -- reports -----------------------------------------------------------------------

@dataclass
class WitnessReport:
    group_id: str
    d: int
    n: int
    witness: str
    exponents: list
    letters: dict
    ball_size: int
    window: Optional[int]
    verdicts: list
    escalations: list
    exact: bool
    passed: bool
    elapsed_ms: Optional[float] = None
    extra: dict = field(default_factory=dict)

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "group_id": self.group_id,
            "d": self.d,
            "n": self.n,
            "witness": self.witness,
            "exponents": list(self.exponents),
            "letters": self.letters,
            "ball_size": self.ball_size,
            "window": self.window,
            "verdicts": self.verdicts,
            "escalations": self.escalations,
            "exact": self.exact,
            "passed": self.passed,
            "elapsed_ms": round(self.elapsed_ms, 3) if timing and self.elapsed_ms is not None else None,
        }
        out.update(self.extra)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"


@dataclass
class CensusReport:
    group_id: str
    d: int
    radius: int
    window: Optional[int]
    entries: list
    s_observed: int
    histogram: dict
    exact: bool
    elapsed_ms: Optional[float] = None
    extra: dict = field(default_factory=dict)

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "group_id": self.group_id,
            "d": self.d,
            "radius": self.radius,
            "window": self.window,
            "entries": self.entries,
            "s_observed": self.s_observed,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "exact": self.exact,
            "elapsed_ms": round(self.elapsed_ms, 3) if timing and self.elapsed_ms is not None else None,
        }
        out.update(self.extra)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"


def _witness_builder(group):
    """``(letters description, build(alpha, beta) -> word)``; raises on
    degenerate or ascending input."""
    if _is_amalgam(group):
        lt = am.witness_letters(group)
        s = am.side_index(lt.side)
        Fh, Fg = group.factors[s], group.factors[1 - s]
        desc = {"side": lt.side, "g": Fg.fmt(lt.g), "h": Fh.fmt(lt.h), "h2": Fh.fmt(lt.h2),
                "double_cosets_distinct": lt.strict}
        return desc, lambda a, b: am.witness_word(group, lt, a, b)
    g = hn.witness_g(group)
    return {"g": group.base.fmt(g)}, lambda a, b: hn.witness_word_hnn(group, g, a, b)


def verify_witness(group: Group, d: int, n: int, *, exponents: Optional[Sequence[int]] = None,
                  workers: int = 1, window: Optional[int] = None,
                  max_escalations: int = am.MAX_ESCALATIONS,
                  cap: int = DEFAULT_BALL_CAP) -> WitnessReport:
    """Check that ``x * alpha`` is hyperbolic and not a d-th power for every
    ``x`` of length at most ``n``.

    With ``exponents`` the given ``(alpha, beta)`` is checked once; otherwise
    the exponent schedule is escalated (doubling) until the sweep passes.
    Raises :class:`EscalationCapError` (with ``.report``) past the cap.
    """
    if d < 2:
        raise ValueError("d must exceed 1")
    t0 = time.perf_counter()
    letters, build = _witness_builder(group)
    ball = enumerate_ball(group, n, window, cap)
    if exponents is not None:
        schedule = [tuple(exponents)]
    else:
        schedule = [am.escalated_exponents(d, n, k) for k in range(max_escalations + 1)]
    escalations = []
    report = None
    for a, b in schedule:
        alpha = build(a, b)
        results = sweep(_verdict, group, ball.elements, (alpha, d), workers)
        verdicts = [{"element": x.to_spec(), "hyperbolic": h, "root_free": r}
                    for x, (h, r, _) in zip(ball.elements, results)]
        failures = sum(1 for h, r, _ in results if not (h and r))
        exact = ball.exact and all(e for _, _, e in results)
        report = WitnessReport(
            group_id=group.name, d=d, n=n, witness=alpha.to_spec(), exponents=[a, b],
            letters=letters, ball_size=len(ball), window=ball.window if not ball.exact else None,
            verdicts=verdicts, escalations=list(escalations), exact=exact, passed=failures == 0)
        if failures == 0:
            break
        escalations.append({"exponents": [a, b], "failures": failures})
    report.escalations = escalations
    report.elapsed_ms = (time.perf_counter() - t0) * 1000
    if not report.passed and exponents is None:
        err = EscalationCapError(f"no witness verified after {max_escalations} escalations")
        err.report = report
        raise err
    return report


def recheck_report(group: Group, report: WitnessReport) -> bool:
    """Recompute every verdict of a report from its own serialized data."""
    from .wordspec import parse_word

    alpha = parse_word(report.witness, group)
    for v in report.verdicts:
        x = parse_word(v["element"], group)
        h, r, _ = _verdict(group, x, alpha, report.d)
        if (h, r) != (v["hyperbolic"], v["root_free"]):
            return False
    return True


def generosity_escapee(P: am.AmalgamGroup, m: int, N: int, window: Optional[int] = None,
                       cap: int = DEFAULT_BALL_CAP) -> Optional[am.AmalgamWord]:
    """First element ``z`` of the N-ball (canonical order) with ``x z``
    hyperbolic for every ``x`` in the m-ball, i.e. outside every translate
    ``g E`` with ``|g| <= m``; ``None`` when the N-ball holds none."""
    if not _is_amalgam(P):
        raise TypeError("generosity_escapee expects an amalgam")
    translates = enumerate_ball(P, m, window, cap).elements
    for z in enumerate_ball(P, N, window, cap).elements:
        if z.length == 0:
            continue
        if all(not am.is_elliptic(x * z) for x in translates):
            return z
    return None


def _census_entry(group, x, d):
    if is_elliptic(x):
        return None
    if dth_roots(x, d):
        return None
    return len(dth_roots(power(x, d), d))


def fs_type_census(group: Group, d: int, radius: int, *, workers: int = 1,
                   window: Optional[int] = None, cap: int = DEFAULT_BALL_CAP) -> CensusReport:
    """Number of d-th roots of ``x^d`` for every hyperbolic, non-d-th-power
    ``x`` of the ball."""
    if d < 2:
        raise ValueError("d must exceed 1")
    t0 = time.perf_counter()
    ball = enumerate_ball(group, radius, window, cap)
    counts = sweep(_census_entry, group, ball.elements, (d,), workers)
    entries = [{"element": x.to_spec(), "roots": c} for x, c in zip(ball.elements, counts)
               if c is not None]
    hist = Counter(e["roots"] for e in entries)
    exact = ball.exact and _is_amalgam(group)
    return CensusReport(
        group_id=group.name, d=d, radius=radius, window=None if ball.exact else ball.window,
        entries=entries, s_observed=max(hist, default=0), histogram=dict(hist), exact=exact,
        elapsed_ms=(time.perf_counter() - t0) * 1000)
