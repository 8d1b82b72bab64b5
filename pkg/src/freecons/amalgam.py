"""Free products with amalgamation ``P = G *_A H``.

Normal form: ``x = a . r_1 ... r_n`` with ``a`` in A (stored in G's copy) and
each ``r_i`` the canonical representative of a right coset ``A r_i`` of its
factor, factors strictly alternating.  Left multiplication by a factor letter
touches at most the first syllable, so every product is computed by pushing
letters onto the front of a normal form, right to left.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (ConfigError, DegenerateError, EscalationCapError,
                     GroupMismatchError, UnsupportedOracleError)
from .factors import (DegeneracyWitness, FactorElement, FactorGroup,
                      FiniteTableGroup, SubgroupIso, SubgroupOracle,
                      coset_witnesses, make_iso, nondegenerate_witnesses)
from .kernels import AmalgamKernel

SIDES = ("G", "H")
MAX_ESCALATIONS = 6


def side_index(side) -> int:
    if side in (0, 1):
        return int(side)
    if side in SIDES:
        return SIDES.index(side)
    raise ConfigError(f"unknown factor tag {side!r}")


class AmalgamGroup:
    def __init__(self, G: FactorGroup, H: FactorGroup, A_G: SubgroupOracle, A_H: SubgroupOracle,
                 iso: Optional[SubgroupIso] = None, name: str = "", window: Optional[int] = None,
                 use_kernel: bool = True):
        if A_G.ambient is not G or A_H.ambient is not H:
            raise ConfigError("subgroup oracles must live in their factors")
        if not (A_G.is_proper() and A_H.is_proper()):
            raise DegenerateError("trivial amalgam: A must be a proper subgroup of both factors")
        self.factors = (G, H)
        self.subgroups = (A_G, A_H)
        self.iso = iso if iso is not None else make_iso(A_G, A_H)
        self.name = name
        self.window = window
        self._kernel = None
        self._kidx: dict = {}
        if (use_kernel and isinstance(G, FiniteTableGroup) and isinstance(H, FiniteTableGroup)
                and A_G.is_finite):
            self._kernel = self._build_kernel()
        self.identity = AmalgamWord(self, G.identity, ())

    @property
    def backend(self) -> str:
        return "kernel" if self._kernel is not None else "generic"

    def _build_kernel(self):
        G, H = self.factors
        A_G, A_H = self.subgroups
        a_g = A_G.elements()
        a_h = [self.iso.forward(a) for a in a_g]
        self._kidx = {a: k for k, a in enumerate(a_g)}
        idx = ({a: k for k, a in enumerate(a_g)}, {a: k for k, a in enumerate(a_h)})
        mul, rep, apart = [], [], []
        for s, (F, A) in enumerate(zip(self.factors, self.subgroups)):
            mul.append([F.table[x][y] for x in range(F.n) for y in range(F.n)])
            split = [A.coset_rep(x) for x in range(F.n)]
            rep.append([r for _, r in split])
            apart.append([idx[s][a] for a, _ in split])
        self._kelems = a_g
        return AmalgamKernel(mul, rep, apart, [a_g, a_h], [G.identity, H.identity])

    # -- A-element transport -------------------------------------------------
    def to_side(self, a, s: int):
        return a if s == 0 else self.iso.forward(a)

    def from_side(self, a, s: int):
        return a if s == 0 else self.iso.backward(a)

    # -- reduction core ----------------------------------------------------------
    def _left_mul(self, letters: Sequence[tuple], prefix, syllables: Sequence[tuple]):
        if self._kernel is not None:
            k, syl = self._kernel.left_mul(letters, self._kidx[prefix], syllables)
            return self._kelems[k], syl
        sides = [s for s, _ in reversed(syllables)]
        reps = [r for _, r in reversed(syllables)]
        a = prefix
        for s, f in reversed(letters):
            F = self.factors[s]
            c = F.mul(f, self.to_side(a, s))
            if sides and sides[-1] == s:
                sides.pop()
                c = F.mul(c, reps.pop())
            a_s, r = self.subgroups[s].coset_rep(c)
            a = self.from_side(a_s, s)
            if r != F.identity:
                sides.append(s)
                reps.append(r)
        return a, tuple(zip(reversed(sides), reversed(reps)))

    def word(self, letters: Iterable = ()) -> "AmalgamWord":
        """Normal form of a product of factor letters ``(side, payload)``."""
        clean = [self._letter(x) for x in letters]
        prefix, syl = self._left_mul(clean, self.factors[0].identity, ())
        return AmalgamWord(self, prefix, syl)

    def _letter(self, x):
        if isinstance(x, FactorElement):
            sides = [s for s, F in enumerate(self.factors) if F is x.group]
            if len(sides) != 1:
                raise ConfigError(f"cannot infer the factor of {x}; tag it with 'G' or 'H'")
            return sides[0], x.payload
        side, payload = x
        s = side_index(side)
        F = self.factors[s]
        if isinstance(payload, FactorElement):
            if payload.group is not F:
                raise GroupMismatchError(f"{payload} does not belong to factor {SIDES[s]}")
            payload = payload.payload
        return s, F.normalize(payload)

    def a_element(self, a) -> "AmalgamWord":
        """The element of A with G-side payload ``a``."""
        if not self.subgroups[0].contains(a):
            raise ConfigError(f"{a!r} is not in the amalgamated subgroup")
        return AmalgamWord(self, a, ())

    # -- enumeration -------------------------------------------------------------
    def is_exact(self, window=None) -> bool:
        return all(F.is_finite for F in self.factors) and self.subgroups[0].is_finite

    def coset_reps(self, s: int, window=None) -> list:
        window = self.window if window is None else window
        F, A = self.factors[s], self.subgroups[s]
        reps = {A.coset_rep(x)[1] for x in F.elements_window(window)}
        reps.discard(F.identity)
        return sorted(reps, key=F.key)

    def a_elements(self, window=None) -> list:
        window = self.window if window is None else window
        return self.subgroups[0].elements_window(window)

    def ball_size(self, n: int, window=None) -> int:
        r = [len(self.coset_reps(0, window)), len(self.coset_reps(1, window))]
        total = 1
        for k in range(1, n + 1):
            for start in (0, 1):
                prod = 1
                for i in range(k):
                    prod *= r[(start + i) % 2]
                total += prod
        return total * len(self.a_elements(window))

    def iter_ball(self, n: int, window=None) -> Iterator["AmalgamWord"]:
        """All elements of length at most ``n`` (within the window), by length."""
        reps = [self.coset_reps(0, window), self.coset_reps(1, window)]
        prefixes = self.a_elements(window)
        for a in prefixes:
            yield AmalgamWord(self, a, ())
        for k in range(1, n + 1):
            for start in (0, 1):
                pools = [[(s, r) for r in reps[s]] for s in ((start + i) % 2 for i in range(k))]
                for syl in itertools.product(*pools):
                    for a in prefixes:
                        yield AmalgamWord(self, a, syl)

    def __repr__(self):
        return f"<AmalgamGroup {self.name!r}: {self.factors[0].name} *_A {self.factors[1].name}>"


class AmalgamWord:
    """Element of an amalgam in normal form."""

    __slots__ = ("group", "prefix", "syllables")

    def __init__(self, group: AmalgamGroup, prefix, syllables: tuple):
        self.group = group
        self.prefix = prefix
        self.syllables = syllables

    @property
    def length(self) -> int:
        return len(self.syllables)

    def letters(self) -> list:
        out = []
        if self.prefix != self.group.factors[0].identity:
            out.append((0, self.prefix))
        out.extend(self.syllables)
        return out

    def _check(self, other):
        if not isinstance(other, AmalgamWord) or other.group is not self.group:
            raise GroupMismatchError("words from different amalgams")

    def __mul__(self, other: "AmalgamWord") -> "AmalgamWord":
        self._check(other)
        prefix, syl = self.group._left_mul(self.letters(), other.prefix, other.syllables)
        return AmalgamWord(self.group, prefix, syl)

    def left_mul_letters(self, letters) -> "AmalgamWord":
        prefix, syl = self.group._left_mul(letters, self.prefix, self.syllables)
        return AmalgamWord(self.group, prefix, syl)

    def inverse(self) -> "AmalgamWord":
        P = self.group
        inv = [(s, P.factors[s].inv(x)) for s, x in reversed(self.letters())]
        prefix, syl = P._left_mul(inv, P.factors[0].identity, ())
        return AmalgamWord(P, prefix, syl)

    def __pow__(self, d: int) -> "AmalgamWord":
        return power(self, d)

    def __eq__(self, other):
        return (isinstance(other, AmalgamWord) and other.group is self.group
                and self.prefix == other.prefix and self.syllables == other.syllables)

    def __hash__(self):
        return hash((self.prefix, self.syllables))

    def sort_key(self):
        P = self.group
        return (self.length, tuple(s for s, _ in self.syllables),
                tuple(P.factors[s].key(r) for s, r in self.syllables),
                P.factors[0].key(self.prefix))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        P = self.group
        parts = [P.factors[s].fmt(x) for s, x in self.letters()]
        return " ".join(parts) if parts else "identity"

    def to_spec(self) -> str:
        """Word-spec string that parses back to this element."""
        P = self.group
        return " ".join(f"{SIDES[s]}:{P.factors[s].fmt(x)}" for s, x in self.letters())

    def __repr__(self):
        return f"AmalgamWord({self})"


@dataclass(frozen=True)
class CyclicForm:
    """``original = conjugator * core * conjugator^-1`` with ``core`` cyclically reduced."""

    conjugator: AmalgamWord
    core: AmalgamWord


# -- operations ---------------------------------------------------------------

def reduce(raw: Iterable, P: AmalgamGroup) -> AmalgamWord:
    return P.word(raw)


def length(x: AmalgamWord) -> int:
    return x.length


def invert(x: AmalgamWord) -> AmalgamWord:
    return x.inverse()


def power(x: AmalgamWord, d: int) -> AmalgamWord:
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


def _factor_element_of(x: AmalgamWord):
    """``(side, payload)`` of a length <= 1 element viewed inside one factor."""
    P = x.group
    if x.length == 0:
        return 0, x.prefix
    (s, r), = x.syllables
    return s, P.factors[s].mul(P.to_side(x.prefix, s), r)


def cyclically_reduce(x: AmalgamWord) -> CyclicForm:
    P = x.group
    conj = P.identity
    y = x
    while y.length >= 2 and y.syllables[0][0] == y.syllables[-1][0]:
        s, r1 = y.syllables[0]
        f = P.factors[s].mul(P.to_side(y.prefix, s), r1)
        y = P.word(list(y.syllables[1:]) + [(s, f)])
        conj = conj * P.word([(s, f)])
    if y.length == 1:
        # an element of a factor may still be conjugate into A inside that factor
        s, e = _factor_element_of(y)
        F, A = P.factors[s], P.subgroups[s]
        if F.is_finite and not F.is_abelian:
            for z in F.elements():
                c = F.conj(z, e)
                if A.contains(c):
                    conj = conj * P.word([(s, F.inv(z))])
                    y = P.word([(s, c)])
                    break
    return CyclicForm(conj, y)


def is_elliptic(x: AmalgamWord) -> bool:
    if x.length <= 1:
        return True
    if x.syllables[0][0] != x.syllables[-1][0]:
        return False
    return cyclically_reduce(x).core.length <= 1


def _a_twists(P: AmalgamGroup) -> list:
    A_G, A_H = P.subgroups
    if A_G.is_finite:
        return A_G.elements()
    if A_G.is_central() and A_H.is_central():
        return [P.factors[0].identity]
    raise UnsupportedOracleError("conjugacy and roots need A finite or central in both factors")


def _elliptic_conjugator(ex: AmalgamWord, ey: AmalgamWord) -> Optional[AmalgamWord]:
    """Breadth-first search over factor elements linked by factor conjugation
    and by the identification of A; returns ``z`` with ``z ex z^-1 = ey``."""
    P = ex.group
    for F in P.factors:
        if not (F.is_finite or F.is_abelian):
            raise UnsupportedOracleError(f"elliptic conjugacy in the infinite factor {F.name!r}")
    start = _factor_element_of(ex)
    target = ey

    seen = {start: P.identity}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        z = seen[node]
        if P.word([node]) == target:
            return z
        s, e = node
        F, A = P.factors[s], P.subgroups[s]
        nbrs = []
        if A.contains(e):
            other = (1 - s, P.to_side(P.from_side(e, s), 1 - s))
            nbrs.append((other, z))
        if not F.is_abelian:
            for y in F.elements():
                nbrs.append(((s, F.conj(y, e)), P.word([(s, y)]) * z))
        for nxt, zz in nbrs:
            if nxt not in seen:
                seen[nxt] = zz
                queue.append(nxt)
    return None


def are_conjugate(x: AmalgamWord, y: AmalgamWord) -> Optional[AmalgamWord]:
    """A conjugator ``c`` with ``c x c^-1 = y``, or ``None``."""
    cx, cy = cyclically_reduce(x), cyclically_reduce(y)
    gx, gy = cx.core, cy.core
    if gx.length != gy.length:
        return None
    P = x.group
    if gx.length <= 1:
        z = _elliptic_conjugator(gx, gy)
        if z is None:
            return None
        return cy.conjugator * z * cx.conjugator.inverse()
    twists = [P.a_element(a) for a in _a_twists(P)]
    sides_x = [s for s, _ in gx.syllables]
    letters = gy.letters()
    lead = 1 if gy.prefix != P.factors[0].identity else 0
    for k in range(gy.length):
        if [s for s, _ in gy.syllables[k:] + gy.syllables[:k]] != sides_x:
            continue
        pk = P.word(letters[:lead + k]) if k else P.identity
        rot = pk.inverse() * gy * pk
        for a in twists:
            if a * gx * a.inverse() == rot:
                return cy.conjugator * pk * a * cx.conjugator.inverse()
    return None


def _central_solve(P: AmalgamGroup, c, d: int) -> list:
    """All ``e`` in A with ``e^d = c`` (G-side payloads), A central."""
    A_G = P.subgroups[0]
    G = P.factors[0]
    if A_G.is_finite:
        return [e for e in A_G.elements() if G.power(e, d) == c]
    moduli = getattr(G, "moduli", None)
    if moduli is None or any(moduli):
        raise UnsupportedOracleError("root extraction in an infinite A needs a torsion-free ambient")
    if any(v % d for v in c):
        return []
    e = tuple(v // d for v in c)
    return [e] if A_G.contains(e) else []


def dth_roots(x: AmalgamWord, d: int, search_bound: int = 1) -> list:
    """Every ``v`` with ``v^d = x``, sorted by normal form.

    Hyperbolic ``x``: complete.  A root ``u`` of a cyclically reduced core of
    length ``L`` is cyclically reduced of length ``L/d`` and equals the first
    ``L/d`` syllables of the core times an element of A.
    Elliptic ``x``: conjugates ``w f w^-1`` with ``f`` in a factor (within the
    window) and ``w`` in the ball of radius ``search_bound``.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if d == 1:
        return [x]
    P = x.group
    cf = cyclically_reduce(x)
    core = cf.core
    found = set()
    if core.length >= 2:
        L = core.length
        if L % d or L // d < 2:
            return []
        m = L // d
        lead = 1 if core.prefix != P.factors[0].identity else 0
        p = P.word(core.letters()[:lead + m])
        A_G = P.subgroups[0]
        if A_G.is_finite:
            cands = [p * P.a_element(a) for a in A_G.elements()]
        elif A_G.is_central() and P.subgroups[1].is_central():
            rest = power(p, d).inverse() * core
            if rest.length != 0:
                return []
            cands = [p * P.a_element(e) for e in _central_solve(P, rest.prefix, d)]
        else:
            raise UnsupportedOracleError("roots need A finite or central in both factors")
        conj, conj_inv = cf.conjugator, cf.conjugator.inverse()
        for u in cands:
            if power(u, d) == core:
                found.add(conj * u * conj_inv)
    else:
        # a power of a hyperbolic element is hyperbolic, so only elliptic roots
        els = []
        for s, F in enumerate(P.factors):
            els.extend(P.word([(s, f)]) for f in F.elements_window(P.window))
        for w in P.iter_ball(search_bound):
            wi = w.inverse()
            for f in els:
                v = w * f * wi
                if v not in found and power(v, d) == x:
                    found.add(v)
    return sorted(found)


def is_dth_power(x: AmalgamWord, d: int, search_bound: int = 1) -> bool:
    return bool(dth_roots(x, d, search_bound))


def centralizer_in_A(x: AmalgamWord) -> list:
    """``C_A(x)`` as G-side factor elements."""
    P = x.group
    if is_elliptic(x):
        raise ValueError("centralizer_in_A expects a hyperbolic element")
    A_G, A_H = P.subgroups
    G = P.factors[0]
    if A_G.is_central() and A_H.is_central():
        return [FactorElement(G, a) for a in A_G.elements()]
    if not A_G.is_finite:
        raise UnsupportedOracleError("centralizer needs A finite or central")
    out = []
    for a in A_G.elements():
        w = P.a_element(a)
        if w * x * w.inverse() == x:
            out.append(FactorElement(G, a))
    return out


# -- power-avoiding witness -----------------------------------------------------------

def witness_letters(P: AmalgamGroup) -> DegeneracyWitness:
    """Letters ``g, h, h2`` for the witness.

    Prefers two distinct double cosets outside A; otherwise accepts two
    distinct right cosets outside A (index at least 3), whose witness is then
    certified by direct verification.  Index two in both factors is refused.
    """
    A_G, A_H = P.subgroups
    found = nondegenerate_witnesses(A_G, A_H, P.window)
    if found is None:
        found = coset_witnesses(A_G, A_H, P.window)
    if found is None:
        F = P.factors
        note = (" (dihedral case)" if all(f.order == 2 for f in F) and A_G.order == 1 else "")
        raise DegenerateError(f"degenerate amalgam{note}: A has index 2 in both factors")
    return found


def initial_exponents(d: int, n: int) -> tuple[int, int]:
    return d * (n + 4), d * (3 * n + 4) * (n + 1)


def square_exponents(n: int) -> tuple[int, int]:
    """The classical ``(n + 4, 3n + 3)`` schedule for squares with A trivial."""
    return n + 4, 3 * n + 3


def escalated_exponents(d: int, n: int, escalation: int) -> tuple[int, int]:
    if escalation > MAX_ESCALATIONS:
        raise EscalationCapError(f"escalation {escalation} exceeds the cap of {MAX_ESCALATIONS}")
    a, b = initial_exponents(d, n)
    return a << escalation, b << escalation


def witness_word(P: AmalgamGroup, letters: DegeneracyWitness, alpha: int, beta: int) -> AmalgamWord:
    s = side_index(letters.side)
    t = 1 - s
    F = P.factors[s]
    gh = P.word([(t, letters.g), (s, letters.h)])
    block = P.word([(t, letters.g), (s, letters.h2), (t, letters.g), (s, F.inv(letters.h2))])
    return power(gh, alpha) * power(block, beta)


def witness_alpha(P: AmalgamGroup, d: int, n: int, escalation: int = 0):
    """Candidate ``(g h)^alpha (g h2 g h2^-1)^beta``; returns ``(word, (alpha, beta))``."""
    if d < 2:
        raise ValueError("d must exceed 1")
    letters = witness_letters(P)
    a, b = escalated_exponents(d, n, escalation)
    return witness_word(P, letters, a, b), (a, b)
