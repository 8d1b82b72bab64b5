"""HNN extensions ``G* = <G, t | t^-1 a t = phi(a), a in A>`` with ``phi: A -> B``.

Normal form: ``g_0 t^{e_1} r_1 ... t^{e_n} r_n`` where ``r_i`` is the
canonical representative of its right coset of B when ``e_i = +1`` and of A
when ``e_i = -1``, with no pinch ``t^-1 1 t`` or ``t 1 t^-1`` left.  Coset
parts travel leftwards: ``t b = phi^-1(b) t`` and ``t^-1 a = phi(a) t^-1``.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable, Iterator, Optional, Sequence

from .amalgam import CyclicForm, MAX_ESCALATIONS, escalated_exponents
from .errors import (ConfigError, DegenerateError, GroupMismatchError,
                     UnsupportedOracleError)
from .factors import (AbelianGroup, FactorElement, FactorGroup, LatticeSubgroup,
                      SubgroupIso, SubgroupOracle, make_iso)
from .kernels import BSKernel

DEFAULT_TWIST_WINDOW = 64
MAX_ELLIPTIC_NODES = 100_000


class HnnGroup:
    def __init__(self, G: FactorGroup, A: SubgroupOracle, B: SubgroupOracle,
                 phi: Optional[SubgroupIso] = None, name: str = "", window: Optional[int] = None,
                 twist_window: int = DEFAULT_TWIST_WINDOW, use_kernel: bool = True):
        if A.ambient is not G or B.ambient is not G:
            raise ConfigError("associated subgroups must live in the base group")
        self.base = G
        self.A = A
        self.B = B
        self.phi = phi if phi is not None else make_iso(A, B)
        if self.phi.src is not A or self.phi.dst is not B:
            raise ConfigError("phi must map A onto B")
        self.name = name
        self.window = window
        self.twist_window = twist_window
        self._kernel = self._bs_kernel() if use_kernel else None
        self.identity = HnnWord(self, G.identity, ())

    def _bs_kernel(self):
        G, A, B = self.base, self.A, self.B
        if not (isinstance(G, AbelianGroup) and G.moduli == (0,)):
            return None
        if not (isinstance(A, LatticeSubgroup) and isinstance(B, LatticeSubgroup)):
            return None
        pa, pb = A.lattice.pivots(), B.lattice.pivots()
        if 0 not in pa or 0 not in pb:
            return None
        p, q = pa[0], pb[0]
        img = self.phi.forward((p,))[0]
        if abs(img) != q:
            return None
        return BSKernel(p, q, 1 if img > 0 else -1)

    @property
    def backend(self) -> str:
        return "kernel" if self._kernel is not None else "generic"

    # -- reduction core ----------------------------------------------------------
    def _left_mul(self, letters: Sequence[tuple], g0, syllables: Sequence[tuple]):
        if self._kernel is not None:
            lt = [(k, v[0] if k == 0 else v) for k, v in letters]
            h0, syl = self._kernel.left_mul(lt, g0[0], [(e, r[0]) for e, r in syllables])
            return (h0,), tuple((e, (r,)) for e, r in syl)
        G, A, B, phi = self.base, self.A, self.B, self.phi
        e_id = G.identity
        eps = [e for e, _ in reversed(syllables)]
        reps = [r for _, r in reversed(syllables)]
        for kind, v in reversed(letters):
            if kind == 0:
                g0 = G.mul(v, g0)
            elif v == 1:
                b, r = B.coset_rep(g0)
                img = phi.backward(b)
                if r == e_id and eps and eps[-1] == -1:
                    eps.pop()
                    g0 = G.mul(img, reps.pop())
                else:
                    eps.append(1)
                    reps.append(r)
                    g0 = img
            else:
                a, r = A.coset_rep(g0)
                img = phi.forward(a)
                if r == e_id and eps and eps[-1] == 1:
                    eps.pop()
                    g0 = G.mul(img, reps.pop())
                else:
                    eps.append(-1)
                    reps.append(r)
                    g0 = img
        return g0, tuple(zip(reversed(eps), reversed(reps)))

    def _letter(self, x) -> list:
        G = self.base
        if isinstance(x, FactorElement):
            if x.group is not G:
                raise GroupMismatchError(f"{x} is not in the base group")
            return [(0, x.payload)]
        if isinstance(x, str):
            x = x.strip()
            if x == "t":
                return [(1, 1)]
            if x.startswith("t^"):
                x = ("t", int(x[2:]))
            else:
                return [(0, G.parse(x))]
        kind, v = x
        if kind in ("t", 1):
            k = int(v)
            if k == 0:
                return []
            return [(1, 1 if k > 0 else -1)] * abs(k)
        if kind in ("G", 0):
            if isinstance(v, FactorElement):
                return self._letter(v)
            return [(0, G.normalize(v))]
        raise ConfigError(f"bad HNN letter {x!r}")

    def word(self, letters: Iterable = ()) -> "HnnWord":
        clean = [y for x in letters for y in self._letter(x)]
        g0, syl = self._left_mul(clean, self.base.identity, ())
        return HnnWord(self, g0, syl)

    def g(self, payload) -> "HnnWord":
        return HnnWord(self, self.base.normalize(payload), ())

    @property
    def t(self) -> "HnnWord":
        return self.word([(1, 1)])

    # -- enumeration -------------------------------------------------------------
    def is_exact(self) -> bool:
        return self.base.is_finite

    def _reps(self, sub: SubgroupOracle, window) -> list:
        G = self.base
        return sorted({sub.coset_rep(x)[1] for x in G.elements_window(window)}, key=G.key)

    def ball_size(self, n: int, window=None) -> int:
        window = self.window if window is None else window
        rA, rB = len(self._reps(self.A, window)), len(self._reps(self.B, window))
        # count pinch-free syllable sequences ending in each (eps, trivial?) state
        counts = {(1, True): 1, (1, False): rB - 1, (-1, True): 1, (-1, False): rA - 1}
        total, layer = 1, {}
        for k in range(n):
            if k == 0:
                layer = dict(counts)
            else:
                new = {}
                for (e, triv), c in layer.items():
                    for (e2, t2), c2 in counts.items():
                        if not (triv and e2 == -e):
                            new[(e2, t2)] = new.get((e2, t2), 0) + c * c2
                layer = new
            total += sum(layer.values())
        return total * len(self.base.elements_window(window))

    def iter_ball(self, n: int, window=None) -> Iterator["HnnWord"]:
        window = self.window if window is None else window
        G = self.base
        reps = {1: self._reps(self.B, window), -1: self._reps(self.A, window)}
        heads = G.elements_window(window)
        layer = [()]
        for g0 in heads:
            yield HnnWord(self, g0, ())
        for _ in range(n):
            new = []
            for syl in layer:
                for e in (1, -1):
                    if syl and syl[-1][1] == G.identity and syl[-1][0] == -e:
                        continue
                    new.extend(syl + ((e, r),) for r in reps[e])
            layer = new
            for syl in layer:
                for g0 in heads:
                    yield HnnWord(self, g0, syl)

    def __repr__(self):
        return f"<HnnGroup {self.name!r} over {self.base.name!r}>"


class HnnWord:
    __slots__ = ("group", "g0", "syllables")

    def __init__(self, group: HnnGroup, g0, syllables: tuple):
        self.group = group
        self.g0 = g0
        self.syllables = syllables

    @property
    def t_length(self) -> int:
        return len(self.syllables)

    @property
    def pattern(self) -> tuple:
        return tuple(e for e, _ in self.syllables)

    def letters(self) -> list:
        e = self.group.base.identity
        out = [(0, self.g0)] if self.g0 != e else []
        for eps, r in self.syllables:
            out.append((1, eps))
            if r != e:
                out.append((0, r))
        return out

    def _check(self, other):
        if not isinstance(other, HnnWord) or other.group is not self.group:
            raise GroupMismatchError("words from different HNN extensions")

    def __mul__(self, other: "HnnWord") -> "HnnWord":
        self._check(other)
        g0, syl = self.group._left_mul(self.letters(), other.g0, other.syllables)
        return HnnWord(self.group, g0, syl)

    def inverse(self) -> "HnnWord":
        Gs = self.group
        G = Gs.base
        inv = [(k, G.inv(v) if k == 0 else -v) for k, v in reversed(self.letters())]
        g0, syl = Gs._left_mul(inv, G.identity, ())
        return HnnWord(Gs, g0, syl)

    def __pow__(self, d: int) -> "HnnWord":
        return power_hnn(self, d)

    def __eq__(self, other):
        return (isinstance(other, HnnWord) and other.group is self.group
                and self.g0 == other.g0 and self.syllables == other.syllables)

    def __hash__(self):
        return hash((self.g0, self.syllables))

    def sort_key(self):
        G = self.group.base
        return (self.t_length, self.pattern, tuple(G.key(r) for _, r in self.syllables), G.key(self.g0))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def _tokens(self, g_fmt):
        out = []
        for k, v in self.letters():
            out.append(g_fmt(v) if k == 0 else ("t" if v == 1 else "t^-1"))
        return out

    def __str__(self):
        toks = self._tokens(self.group.base.fmt)
        return " ".join(toks) if toks else "identity"

    def to_spec(self) -> str:
        return " ".join(self._tokens(lambda v: "G:" + self.group.base.fmt(v)))

    def __repr__(self):
        return f"HnnWord({self})"


# -- operations ---------------------------------------------------------------

def britton_reduce(raw: Iterable, Gs: HnnGroup) -> HnnWord:
    return Gs.word(raw)


def t_length(x: HnnWord) -> int:
    return x.t_length


def power_hnn(x: HnnWord, d: int) -> HnnWord:
    if d < 0:
        x, d = x.inverse(), -d
    out = x.group.identity
    base = x
    while d:
        if d & 1:
            out = out * base
        d >>= 1
        if d:
            base = base * base
    return out


def _wrap_pinch(y: HnnWord) -> bool:
    Gs = y.group
    (e1, _), (en, rn) = y.syllables[0], y.syllables[-1]
    if en != -e1:
        return False
    c = Gs.base.mul(rn, y.g0)
    return (Gs.A if en == -1 else Gs.B).contains(c)


def cyclically_reduce_hnn(x: HnnWord) -> CyclicForm:
    Gs = x.group
    conj = Gs.identity
    y = x
    while y.t_length >= 1 and _wrap_pinch(y):
        e1 = y.syllables[0][0]
        f = Gs.word([(0, y.g0), (1, e1)])
        rest = []
        for i, (e, r) in enumerate(y.syllables):
            if i:
                rest.append((1, e))
            rest.append((0, r))
        y = Gs.word(rest + [(0, y.g0), (1, e1)])
        conj = conj * f
    return CyclicForm(conj, y)


def is_elliptic_hnn(x: HnnWord) -> bool:
    if x.t_length == 0:
        return True
    return cyclically_reduce_hnn(x).core.t_length == 0


def _subgroup_window(Gs: HnnGroup, sub: SubgroupOracle) -> list:
    if sub.is_finite:
        return sub.elements()
    return sub.elements_window(Gs.twist_window)


def _elliptic_conjugator_hnn(gx: HnnWord, gy: HnnWord) -> Optional[HnnWord]:
    Gs = gx.group
    G = Gs.base
    if not (G.is_finite or G.is_abelian):
        raise UnsupportedOracleError(f"elliptic conjugacy in the infinite base {G.name!r}")
    t, ti = Gs.t, Gs.t.inverse()
    seen = {gx.g0: Gs.identity}
    queue = deque([gx.g0])
    while queue:
        v = queue.popleft()
        z = seen[v]
        if v == gy.g0:
            return z
        nbrs = []
        if Gs.A.contains(v):
            nbrs.append((Gs.phi.forward(v), ti * z))
        if Gs.B.contains(v):
            nbrs.append((Gs.phi.backward(v), t * z))
        if not G.is_abelian:
            nbrs.extend((G.conj(y, v), Gs.g(y) * z) for y in G.elements())
        for w, zz in nbrs:
            if w not in seen:
                if len(seen) >= MAX_ELLIPTIC_NODES:
                    return None
                seen[w] = zz
                queue.append(w)
    return None


def _rotation_prefix(y: HnnWord, j: int) -> list:
    """Letters of ``g_0 t^{e_1} r_1 ... t^{e_j}``."""
    out = [(0, y.g0)]
    for i, (e, r) in enumerate(y.syllables[:j]):
        if i:
            out.append((0, y.syllables[i - 1][1]))
        out.append((1, e))
    return out


def are_conjugate_hnn(x: HnnWord, y: HnnWord) -> Optional[HnnWord]:
    """A conjugator ``c`` with ``c x c^-1 = y``, or ``None``.

    Twists range over A and B (within ``twist_window`` when infinite), so a
    ``None`` is definitive only for finite A and B.
    """
    cx, cy = cyclically_reduce_hnn(x), cyclically_reduce_hnn(y)
    gx, gy = cx.core, cy.core
    if gx.t_length != gy.t_length:
        return None
    Gs = x.group
    if gx.t_length == 0:
        z = _elliptic_conjugator_hnn(gx, gy)
        if z is None:
            return None
        return cy.conjugator * z * cx.conjugator.inverse()
    n = gx.t_length
    px, py = gx.pattern, gy.pattern
    rotations = [j for j in range(1, n + 1) if py[j:] + py[:j] == px]
    if not rotations:
        return None
    twists = []
    for sub in (Gs.A, Gs.B):
        for z in _subgroup_window(Gs, sub):
            if z not in twists:
                twists.append(z)
    twists.sort(key=Gs.base.key)
    tw = [Gs.g(z) for z in twists]
    # both sides must end in a stable letter before twisting
    px_n = Gs.word(_rotation_prefix(gx, n))
    sx = px_n.inverse() * gx * px_n
    for j in rotations:
        pj = Gs.word(_rotation_prefix(gy, j))
        rot = pj.inverse() * gy * pj
        for z in tw:
            if z * sx * z.inverse() == rot:
                return cy.conjugator * pj * z * px_n.inverse() * cx.conjugator.inverse()
    return None


def _is_periodic(pattern: tuple, m: int) -> bool:
    return all(pattern[i] == pattern[i + m] for i in range(len(pattern) - m))


def dth_roots_hnn(x: HnnWord, d: int, search_bound: int = 1) -> list:
    """All ``v`` with ``v^d = x`` that the search reaches, sorted.

    Hyperbolic ``x``: a root of the cyclically reduced core is ``q h`` where
    ``q`` is the core's normal-form prefix through its ``n/d``-th stable
    letter and ``h`` is in G; all of G is tried when finite, otherwise
    ``h`` ranges over ``K r_m Z g_0^-1`` with K, Z the associated subgroups
    met at the cut, within ``twist_window``.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if d == 1:
        return [x]
    Gs = x.group
    G = Gs.base
    cf = cyclically_reduce_hnn(x)
    core = cf.core
    found = set()
    if core.t_length >= 1:
        n = core.t_length
        if n % d or not _is_periodic(core.pattern, n // d):
            return []
        m = n // d
        q = Gs.word(_rotation_prefix(core, m))
        if G.is_finite:
            hs = G.elements()
        else:
            e_m, r_m = core.syllables[m - 1]
            K = Gs.B if e_m == 1 else Gs.A
            Z = Gs.A if core.syllables[0][0] == 1 else Gs.B
            g0i = G.inv(core.g0)
            hs = {G.mul(G.mul(G.mul(k, r_m), z), g0i)
                  for k in _subgroup_window(Gs, K) for z in _subgroup_window(Gs, Z)}
        conj, conj_inv = cf.conjugator, cf.conjugator.inverse()
        for h in hs:
            u = q * Gs.g(h)
            if power_hnn(u, d) == core:
                found.add(conj * u * conj_inv)
    else:
        els = [Gs.g(y) for y in G.elements_window(Gs.window)]
        for w in Gs.iter_ball(search_bound):
            wi = w.inverse()
            for f in els:
                v = w * f * wi
                if v not in found and power_hnn(v, d) == x:
                    found.add(v)
    return sorted(found)


def is_dth_power_hnn(x: HnnWord, d: int, search_bound: int = 1) -> bool:
    return bool(dth_roots_hnn(x, d, search_bound))


def power_pattern_excluded(x: HnnWord, d: int) -> bool:
    """True when the stable-letter pattern alone rules out ``x`` being a d-th power
    of a hyperbolic element."""
    core = cyclically_reduce_hnn(x).core
    n = core.t_length
    return n >= 1 and (n % d != 0 or not _is_periodic(core.pattern, n // d))


def is_nonascending(Gs: HnnGroup) -> tuple[bool, Optional[object]]:
    """Whether A and B are both proper, with an element of G outside A and B."""
    if not (Gs.A.is_proper() and Gs.B.is_proper()):
        return False, None
    G = Gs.base
    window = Gs.window if Gs.window is not None else 16
    for g in G.elements_window(window):
        if not Gs.A.contains(g) and not Gs.B.contains(g):
            return True, g
    return True, None


def witness_word_hnn(Gs: HnnGroup, g, alpha: int, beta: int) -> HnnWord:
    gt = Gs.word([(0, g), (1, 1)])
    block = Gs.word([(0, g), (1, 1), (0, g), (1, -1)])
    return power_hnn(gt, alpha) * power_hnn(block, beta)


def witness_g(Gs: HnnGroup):
    ok, g = is_nonascending(Gs)
    if not ok:
        raise DegenerateError("ascending HNN extension: A or B equals the base group")
    if g is None:
        raise DegenerateError(
            "no element outside A and B found within the search window; widen the window")
    return g


def witness_alpha_hnn(Gs: HnnGroup, d: int, n: int, escalation: int = 0):
    """Candidate ``(g t)^alpha (g t g t^-1)^beta``; returns ``(word, (alpha, beta))``."""
    if d < 2:
        raise ValueError("d must exceed 1")
    g = witness_g(Gs)
    a, b = escalated_exponents(d, n, escalation)
    return witness_word_hnn(Gs, g, a, b), (a, b)


__all__ = [
    "HnnGroup", "HnnWord", "britton_reduce", "t_length", "power_hnn", "cyclically_reduce_hnn",
    "is_elliptic_hnn", "are_conjugate_hnn", "dth_roots_hnn", "is_dth_power_hnn",
    "power_pattern_excluded", "is_nonascending", "witness_alpha_hnn", "witness_word_hnn",
    "MAX_ESCALATIONS",
]
