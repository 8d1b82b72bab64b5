"""Concrete factor groups and subgroup oracles.

Three kinds of factor are supported:

* ``finite-table``: elements are indices ``0..n-1`` of a multiplication table;
* ``fg-abelian``: elements are integer vectors reduced modulo ``moduli``
  (a modulus of 0 is an infinite cyclic coordinate);
* ``free``: elements are freely reduced tuples of nonzero ints, ``k`` meaning
  the ``k``-th generator and ``-k`` its inverse.

Group methods work on raw payloads (ints, tuples) so the reduction loops stay
cheap; :class:`FactorElement` is the checked public wrapper.

Subgroup oracles answer membership, split ``g = a * r`` with ``r`` the
canonical representative of the right coset ``A g``, and compare double
cosets.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Iterator, Optional, Sequence

from .errors import ConfigError, GroupMismatchError, UnsupportedOracleError
from .lattice import IntLattice

MAX_TABLE_ORDER = 1024
MAX_ABELIAN_RANK = 8
_REP_CACHE_SIZE = 1 << 16  # memoized coset splits per enumerated subgroup


class FactorGroup:
    """Abstract factor group; subclasses fix the payload encoding."""

    kind: str = ""
    name: str = ""
    identity: Hashable = None

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def key(self, x):
        """Sort key fixing the canonical element order."""
        raise NotImplementedError

    def normalize(self, x):
        """Validate ``x`` and return its canonical payload."""
        raise NotImplementedError

    def fmt(self, x) -> str:
        raise NotImplementedError

    def parse(self, token: str):
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    @property
    def order(self) -> Optional[int]:
        return None

    @property
    def is_abelian(self) -> bool:
        return False

    def elements(self) -> list:
        raise UnsupportedOracleError(f"{self.kind} group {self.name!r} is infinite")

    def elements_window(self, window: Optional[int]) -> list:
        """Elements within the letter window, in canonical order.

        For finite groups the window is ignored and every element is listed.
        """
        if self.is_finite:
            return self.elements()
        if window is None:
            raise UnsupportedOracleError(
                f"infinite {self.kind} group {self.name!r} needs an enumeration window")
        return self._window(window)

    def _window(self, window: int) -> list:
        raise NotImplementedError

    def power(self, x, k: int):
        if k < 0:
            x, k = self.inv(x), -k
        out = self.identity
        while k:
            if k & 1:
                out = self.mul(out, x)
            x = self.mul(x, x)
            k >>= 1
        return out

    def conj(self, y, x):
        """``y x y^-1``."""
        return self.mul(self.mul(y, x), self.inv(y))

    def element(self, payload) -> "FactorElement":
        return FactorElement(self, self.normalize(payload))

    def __repr__(self):
        return f"<{self.kind} group {self.name!r}>"


class FiniteTableGroup(FactorGroup):
    kind = "finite-table"

    def __init__(self, table: Sequence[Sequence[int]], identity: int = 0,
                 names: Optional[Sequence[str]] = None, name: str = "",
                 check: bool = True):
        n = len(table)
        if not 0 < n <= MAX_TABLE_ORDER:
            raise ConfigError(f"table order {n} outside 1..{MAX_TABLE_ORDER}")
        self.name = name
        self.n = n
        self.table = [list(map(int, row)) for row in table]
        self.identity = int(identity)
        if names is None:
            names = [str(i) for i in range(n)]
        if len(names) != n or len(set(names)) != n:
            raise ConfigError(f"group {name!r}: need {n} distinct element names")
        self.names = list(map(str, names))
        self._by_name = {s: i for i, s in enumerate(self.names)}
        if check:
            self._check()
        e = self.identity
        self.inverse = [self.table[x].index(e) for x in range(n)]

    def _check(self):
        n, T, e = self.n, self.table, self.identity
        full = set(range(n))
        for x, row in enumerate(T):
            if len(row) != n or set(row) != full:
                raise ConfigError(f"group {self.name!r}: row {x} is not a permutation of 0..{n - 1}")
        for x in range(n):
            if T[e][x] != x or T[x][e] != x:
                raise ConfigError(f"group {self.name!r}: {e} is not a two-sided identity")
        if n <= 24:
            triples: Iterable = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(0)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(20000))
        for x, y, z in triples:
            if T[T[x][y]][z] != T[x][T[y][z]]:
                raise ConfigError(f"group {self.name!r}: not associative at ({x}, {y}, {z})")

    def mul(self, x, y):
        return self.table[x][y]

    def inv(self, x):
        return self.inverse[x]

    def key(self, x):
        return x

    def normalize(self, x):
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < self.n:
            raise ConfigError(f"group {self.name!r}: {x!r} is not an element index")
        return x

    def fmt(self, x):
        return self.names[x]

    def parse(self, token):
        token = token.strip()
        if token in self._by_name:
            return self._by_name[token]
        try:
            return self.normalize(int(token))
        except ValueError:
            raise ConfigError(f"group {self.name!r}: unknown element {token!r}") from None

    @property
    def order(self):
        return self.n

    @property
    def is_abelian(self):
        T = self.table
        return all(T[x][y] == T[y][x] for x in range(self.n) for y in range(x))

    def elements(self):
        return list(range(self.n))


def _abelian_key(v):
    return (sum(abs(c) for c in v), tuple((abs(c), c < 0) for c in v))


class AbelianGroup(FactorGroup):
    """Finitely generated abelian group ``Z/m_1 x ... x Z/m_r`` written additively."""

    kind = "fg-abelian"

    def __init__(self, moduli: Sequence[int], name: str = ""):
        moduli = tuple(int(m) for m in moduli)
        if not 1 <= len(moduli) <= MAX_ABELIAN_RANK:
            raise ConfigError(f"abelian rank {len(moduli)} outside 1..{MAX_ABELIAN_RANK}")
        if any(m < 0 for m in moduli):
            raise ConfigError("moduli must be non-negative")
        self.moduli = moduli
        self.rank = len(moduli)
        self.name = name
        self.identity = (0,) * self.rank

    def _red(self, v):
        return tuple(c % m if m else c for c, m in zip(v, self.moduli))

    def mul(self, x, y):
        return self._red([a + b for a, b in zip(x, y)])

    def inv(self, x):
        return self._red([-a for a in x])

    def key(self, x):
        return _abelian_key(x)

    def normalize(self, x):
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, int) and not isinstance(x, bool):
            x = (x,)
        x = tuple(x)
        if len(x) != self.rank or not all(isinstance(c, int) for c in x):
            raise ConfigError(f"group {self.name!r}: {x!r} is not a rank-{self.rank} vector")
        return self._red(x)

    def fmt(self, x):
        if self.rank == 1:
            return str(x[0])
        return "(" + ",".join(map(str, x)) + ")"

    def parse(self, token):
        body = token.strip().strip("()")
        try:
            vals = [int(c) for c in body.split(",")]
        except ValueError:
            raise ConfigError(f"group {self.name!r}: cannot parse vector {token!r}") from None
        return self.normalize(vals)

    @property
    def order(self):
        if 0 in self.moduli:
            return None
        out = 1
        for m in self.moduli:
            out *= m
        return out

    @property
    def is_abelian(self):
        return True

    def _ranges(self, window):
        return [range(m) if m else range(-window, window + 1) for m in self.moduli]

    def elements(self):
        if not self.is_finite:
            return super().elements()
        return sorted(itertools.product(*self._ranges(0)), key=self.key)

    def _window(self, window):
        return sorted(itertools.product(*self._ranges(window)), key=self.key)


class FreeGroup(FactorGroup):
    """Free group of finite rank; payloads are freely reduced letter tuples."""

    kind = "free"

    def __init__(self, rank: int, names: Optional[Sequence[str]] = None, name: str = ""):
        if rank < 1:
            raise ConfigError("free rank must be positive")
        self.rank = rank
        self.name = name
        self.identity = ()
        self.names = list(names) if names else [f"x{i + 1}" for i in range(rank)]
        if len(self.names) != rank:
            raise ConfigError(f"free group {name!r}: need {rank} generator names")

    def mul(self, x, y):
        i = 0
        n = min(len(x), len(y))
        while i < n and x[-1 - i] == -y[i]:
            i += 1
        return x[:len(x) - i] + y[i:]

    def inv(self, x):
        return tuple(-c for c in reversed(x))

    def key(self, x):
        return (len(x), tuple((abs(c), c < 0) for c in x))

    def normalize(self, x):
        if isinstance(x, str):
            return self.parse(x)
        out: tuple = ()
        for c in x:
            if not isinstance(c, int) or c == 0 or abs(c) > self.rank:
                raise ConfigError(f"free group {self.name!r}: bad letter {c!r}")
            out = self.mul(out, (c,))
        return out

    def fmt(self, x):
        if not x:
            return "1"
        return ".".join(self.names[abs(c) - 1] + ("^-1" if c < 0 else "") for c in x)

    def parse(self, token):
        token = token.strip()
        if token in ("", "1", "e"):
            return ()
        letters = []
        for part in re.split(r"[.,]", token):
            part = part.strip()
            neg = part.endswith("^-1")
            base = part[:-3] if neg else part
            if base in self.names:
                k = self.names.index(base) + 1
            else:
                try:
                    k = int(base)
                except ValueError:
                    raise ConfigError(f"free group {self.name!r}: unknown letter {part!r}") from None
                neg, k = (k < 0) ^ neg, abs(k)
            letters.append(-k if neg else k)
        return self.normalize(letters)

    def _window(self, window):
        out = [()]
        frontier = [()]
        letters = [c for k in range(1, self.rank + 1) for c in (k, -k)]
        for _ in range(window):
            frontier = [w + (c,) for w in frontier for c in letters if not w or w[-1] != -c]
            out.extend(frontier)
        return sorted(out, key=self.key)


@dataclass(frozen=True)
class FactorElement:
    group: FactorGroup
    payload: Any

    def __mul__(self, other):
        return multiply(self, other)

    def __str__(self):
        return self.group.fmt(self.payload)


def multiply(x: FactorElement, y: FactorElement) -> FactorElement:
    if x.group is not y.group:
        raise GroupMismatchError(f"cannot multiply elements of {x.group!r} and {y.group!r}")
    return FactorElement(x.group, x.group.mul(x.payload, y.payload))


# -- builders ---------------------------------------------------------------

def cyclic_group(n: int, name: str = "", names: Optional[Sequence[str]] = None) -> FiniteTableGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteTableGroup(table, 0, names, name or f"Z/{n}", check=False)


def _cycle_name(perm) -> str:
    seen, cycles = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = perm[j]
        cycles.append("(" + "".join(map(str, cyc)) + ")")
    return "".join(cycles) or "e"


def permutation_group(perms: Sequence[Sequence[int]], name: str = "") -> FiniteTableGroup:
    """Table of a list of permutations closed under composition.

    The product ``x * y`` applies ``y`` first, then ``x``.
    """
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    if len(index) != len(perms):
        raise ConfigError("duplicate permutations")
    ident = tuple(range(len(perms[0])))
    try:
        table = [[index[tuple(x[y[k]] for k in range(len(x)))] for y in perms] for x in perms]
        e = index[ident]
    except KeyError:
        raise ConfigError("permutation list is not closed under composition") from None
    return FiniteTableGroup(table, e, [_cycle_name(p) for p in perms], name)


def symmetric_group(k: int, name: str = "") -> FiniteTableGroup:
    return permutation_group(sorted(itertools.permutations(range(k))), name or f"S{k}")


def dihedral_group(n: int, name: str = "") -> FiniteTableGroup:
    """Dihedral group of order ``2n`` as permutations of ``n`` points."""
    rots = [tuple((i + s) % n for i in range(n)) for s in range(n)]
    refl = [tuple((s - i) % n for i in range(n)) for s in range(n)]
    return permutation_group(sorted(set(rots + refl)), name or f"D{2 * n}")


# -- subgroup oracles -------------------------------------------------------

class SubgroupOracle:
    """Distinguished subgroup ``A`` of an ambient factor."""

    kind: str = ""

    def __init__(self, ambient: FactorGroup, name: str = ""):
        self.ambient = ambient
        self.name = name

    def contains(self, x) -> bool:
        raise NotImplementedError

    def coset_rep(self, g) -> tuple:
        """Return ``(a, r)`` with ``g = a * r``, ``a`` in A and ``r`` canonical for ``A g``."""
        raise NotImplementedError

    def double_coset_equal(self, x, y) -> bool:
        G = self.ambient
        if G.is_abelian:
            return self.contains(G.mul(G.inv(x), y))
        return self._double_coset_equal(x, y)

    def _double_coset_equal(self, x, y):
        G = self.ambient
        els = self.elements()
        return any(G.mul(G.mul(a, x), b) == y for a in els for b in els)

    @property
    def order(self) -> Optional[int]:
        return None

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def elements(self) -> list:
        raise UnsupportedOracleError(f"subgroup {self.name!r} is infinite")

    def elements_window(self, window: Optional[int]) -> list:
        if self.is_finite:
            return self.elements()
        return [x for x in self.ambient.elements_window(window) if self.contains(x)]

    def is_proper(self) -> bool:
        G = self.ambient
        if G.is_finite:
            return self.order is None or self.order < G.order
        return True

    def is_central(self) -> bool:
        """True when every element of A commutes with the whole ambient group."""
        G = self.ambient
        if G.is_abelian:
            return True
        if not (self.is_finite and G.is_finite):
            return False
        return all(G.mul(a, x) == G.mul(x, a) for a in self.elements() for x in G.elements())

    def __repr__(self):
        return f"<{self.kind} subgroup {self.name!r} of {self.ambient.name!r}>"


class TrivialSubgroup(SubgroupOracle):
    kind = "trivial"

    def contains(self, x):
        return x == self.ambient.identity

    def coset_rep(self, g):
        return self.ambient.identity, g

    def double_coset_equal(self, x, y):
        return x == y

    @property
    def order(self):
        return 1

    def elements(self):
        return [self.ambient.identity]


class EnumeratedSubgroup(SubgroupOracle):
    """Finite subgroup given by an explicit element list (the list order is kept)."""

    kind = "finite-enumerated"

    def __init__(self, ambient: FactorGroup, elements: Sequence, name: str = ""):
        super().__init__(ambient, name)
        els = [ambient.normalize(x) for x in elements]
        if len(set(els)) != len(els):
            raise ConfigError(f"subgroup {name!r}: duplicate elements")
        self._elements = els
        self._set = set(els)
        G = ambient
        if G.identity not in self._set:
            raise ConfigError(f"subgroup {name!r}: missing the identity")
        for a in els:
            if G.inv(a) not in self._set:
                raise ConfigError(f"subgroup {name!r}: not closed under inversion")
            for b in els:
                if G.mul(a, b) not in self._set:
                    raise ConfigError(f"subgroup {name!r}: not closed under multiplication")
        self._rep_table = None
        if isinstance(G, FiniteTableGroup):
            # element order is table index order, so the minimum is canonical
            reps, aparts = [0] * G.n, [0] * G.n
            for g in range(G.n):
                r = min(G.mul(a, g) for a in els)
                reps[g] = r
                aparts[g] = G.mul(g, G.inv(r))
            self._rep_table = (reps, aparts)
        self._cache: dict = {}

    def contains(self, x):
        return x in self._set

    def coset_rep(self, g):
        if self._rep_table is not None:
            return self._rep_table[1][g], self._rep_table[0][g]
        hit = self._cache.get(g)
        if hit is not None:
            return hit
        G = self.ambient
        r = min((G.mul(a, g) for a in self._elements), key=G.key)
        out = (G.mul(g, G.inv(r)), r)
        if len(self._cache) >= _REP_CACHE_SIZE:
            self._cache.clear()
        self._cache[g] = out
        return out

    @property
    def order(self):
        return len(self._elements)

    def elements(self):
        return list(self._elements)


class LatticeSubgroup(SubgroupOracle):
    """Subgroup of an fg-abelian factor spanned by integer generator vectors."""

    kind = "abelian-lattice"

    def __init__(self, ambient: AbelianGroup, generators: Sequence[Sequence[int]], name: str = ""):
        if not isinstance(ambient, AbelianGroup):
            raise UnsupportedOracleError("lattice subgroups need an fg-abelian ambient group")
        super().__init__(ambient, name)
        gens = []
        for g in generators:
            if isinstance(g, int):
                g = [g]
            if len(g) != ambient.rank:
                raise ConfigError(f"subgroup {name!r}: generator {g!r} has wrong length")
            gens.append([int(c) for c in g])
        self.generators = [tuple(g) for g in gens]
        self.lattice = IntLattice(gens, ambient.moduli)
        self._order = self._compute_order()

    def _compute_order(self):
        # finite iff every generator is torsion in the ambient group
        G = self.ambient
        if any(c for g in self.generators for c, m in zip(g, G.moduli) if m == 0):
            return None
        return len(self._closure())

    def _closure(self):
        G = self.ambient
        seen = {G.identity}
        frontier = [G.identity]
        gens = [G.normalize(g) for g in self.generators]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = G.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def contains(self, x):
        return x in self.lattice

    def coset_rep(self, g):
        G = self.ambient
        r = G.normalize(self.lattice.residue(g))
        return G.mul(g, G.inv(r)), r

    @property
    def order(self):
        return self._order

    def elements(self):
        if self._order is None:
            return super().elements()
        return sorted(self._closure(), key=self.ambient.key)

    def is_proper(self):
        return self.lattice.index() != 1


# -- identifications ----------------------------------------------------------

class SubgroupIso:
    """Isomorphism between two subgroup oracles (possibly in different factors)."""

    def __init__(self, src: SubgroupOracle, dst: SubgroupOracle):
        self.src = src
        self.dst = dst

    def forward(self, a):
        raise NotImplementedError

    def backward(self, b):
        raise NotImplementedError


class TrivialIso(SubgroupIso):
    def forward(self, a):
        return self.dst.ambient.identity

    def backward(self, b):
        return self.src.ambient.identity


class EnumeratedIso(SubgroupIso):
    """Elementwise bijection; ``images[i]`` is the image of ``src.elements()[i]``."""

    def __init__(self, src, dst, images: Optional[Sequence] = None):
        super().__init__(src, dst)
        src_els = src.elements()
        dst_els = dst.elements() if images is None else [dst.ambient.normalize(b) for b in images]
        if len(src_els) != len(dst_els) or len(set(dst_els)) != len(dst_els):
            raise ConfigError("identification is not a bijection")
        if any(not dst.contains(b) for b in dst_els) or len(dst_els) != dst.order:
            raise ConfigError("identification does not map onto the target subgroup")
        self._fwd = dict(zip(src_els, dst_els))
        self._bwd = dict(zip(dst_els, src_els))
        S, T = src.ambient, dst.ambient
        for a in src_els:
            for b in src_els:
                if self._fwd[S.mul(a, b)] != T.mul(self._fwd[a], self._fwd[b]):
                    raise ConfigError("identification is not a homomorphism")

    def forward(self, a):
        return self._fwd[a]

    def backward(self, b):
        return self._bwd[b]


class LatticeIso(SubgroupIso):
    """Map sending the i-th generator of ``src`` to ``images[i]`` in ``dst``."""

    def __init__(self, src: LatticeSubgroup, dst: LatticeSubgroup,
                 images: Optional[Sequence[Sequence[int]]] = None):
        super().__init__(src, dst)
        T = dst.ambient
        if images is None:
            images = dst.generators
        imgs = [[int(c) for c in ([v] if isinstance(v, int) else v)] for v in images]
        if len(imgs) != len(src.generators):
            raise ConfigError("identification needs one image per source generator")
        for v in imgs:
            if not dst.contains(T.normalize(v)):
                raise ConfigError(f"image {v} is not in the target subgroup")
        self._img_lattice = IntLattice(imgs, T.moduli)
        for g in dst.generators:
            if g not in self._img_lattice:
                raise ConfigError("identification is not onto the target subgroup")
        self.images = [tuple(v) for v in imgs]
        # well defined: relations of the source go to zero; injective: the reverse
        for rel in src.lattice.relations():
            if T.normalize(self._combine(rel, self.images, T.rank)) != T.identity:
                raise ConfigError("identification is not well defined on the source relations")
        S = src.ambient
        for rel in self._img_lattice.relations():
            if S.normalize(self._combine(rel, src.generators, S.rank)) != S.identity:
                raise ConfigError("identification is not injective")

    @staticmethod
    def _combine(coeffs, vecs, dim):
        out = [0] * dim
        for c, v in zip(coeffs, vecs):
            for i, x in enumerate(v):
                out[i] += c * x
        return out

    def forward(self, a):
        coords = self.src.lattice.coords(a)
        if coords is None:
            raise ValueError(f"{a} is not in the source subgroup")
        T = self.dst.ambient
        return T.normalize(self._combine(coords, self.images, T.rank))

    def backward(self, b):
        coords = self._img_lattice.coords(b)
        if coords is None:
            raise ValueError(f"{b} is not in the target subgroup")
        S = self.src.ambient
        return S.normalize(self._combine(coords, self.src.generators, S.rank))


def make_iso(src: SubgroupOracle, dst: SubgroupOracle, images=None) -> SubgroupIso:
    if isinstance(src, TrivialSubgroup) and isinstance(dst, TrivialSubgroup):
        return TrivialIso(src, dst)
    if isinstance(src, LatticeSubgroup) and isinstance(dst, LatticeSubgroup):
        return LatticeIso(src, dst, images)
    if src.is_finite and dst.is_finite:
        return EnumeratedIso(src, dst, images)
    raise UnsupportedOracleError(f"cannot identify {src!r} with {dst!r}")


# -- public operation wrappers ------------------------------------------------

def _check_owner(x: FactorElement, A: SubgroupOracle):
    if x.group is not A.ambient:
        raise GroupMismatchError(f"element of {x.group!r} tested against {A!r}")


def is_member(x: FactorElement, A: SubgroupOracle) -> bool:
    _check_owner(x, A)
    return A.contains(x.payload)


def coset_rep(g: FactorElement, A: SubgroupOracle) -> tuple[FactorElement, FactorElement]:
    _check_owner(g, A)
    a, r = A.coset_rep(g.payload)
    return FactorElement(g.group, a), FactorElement(g.group, r)


def double_coset_equal(x: FactorElement, y: FactorElement, A: SubgroupOracle) -> bool:
    _check_owner(x, A)
    _check_owner(y, A)
    return A.double_coset_equal(x.payload, y.payload)


# -- non-degeneracy -----------------------------------------------------------

@dataclass(frozen=True)
class DegeneracyWitness:
    """Letters for the witness word.

    ``side`` names the factor holding ``h`` and ``h2`` (``"H"`` unless the
    roles were swapped); ``g`` lives in the other factor.  ``strict`` is True
    when ``A h A != A h2 A`` and False when only the right cosets differ.
    """

    side: str
    g: Any
    h: Any
    h2: Any
    strict: bool


def _outside(A: SubgroupOracle, window: Optional[int]) -> list:
    G = A.ambient
    if not G.is_finite and window is None:
        raise UnsupportedOracleError(
            f"infinite factor {G.name!r}: no enumeration window configured for the witness search")
    return [x for x in G.elements_window(window) if not A.contains(x)]


def _pair(A: SubgroupOracle, window, same) -> Optional[tuple]:
    outs = _outside(A, window)
    if not outs:
        return None
    h = outs[0]
    for h2 in outs[1:]:
        if not same(h, h2):
            return h, h2
    return None


def _search(A_G, A_H, window, same_factory, strict) -> Optional[DegeneracyWitness]:
    for side, big, other in (("H", A_H, A_G), ("G", A_G, A_H)):
        pair = _pair(big, window, same_factory(big))
        if pair is None:
            continue
        gs = _outside(other, window)
        if gs:
            return DegeneracyWitness(side, gs[0], pair[0], pair[1], strict)
    return None


def nondegenerate_witnesses(A_G: SubgroupOracle, A_H: SubgroupOracle,
                            window: Optional[int] = None) -> Optional[DegeneracyWitness]:
    """Find ``g`` outside A in one factor and ``h, h2`` outside A in the other
    with distinct double cosets, or ``None`` when no such triple exists."""
    return _search(A_G, A_H, window, lambda A: A.double_coset_equal, True)


def coset_witnesses(A_G: SubgroupOracle, A_H: SubgroupOracle,
                    window: Optional[int] = None) -> Optional[DegeneracyWitness]:
    """Weaker search: ``h, h2`` outside A lying in distinct right cosets
    (A has index at least 3 in that factor)."""

    def same(A):
        return lambda x, y: A.coset_rep(x)[1] == A.coset_rep(y)[1]

    return _search(A_G, A_H, window, same, False)


def iter_subgroups(G: FiniteTableGroup, max_gens: int = 2) -> Iterator[frozenset]:
    """All subgroups of ``G`` generated by at most ``max_gens`` elements."""
    seen = set()
    for k in range(max_gens + 1):
        for gens in itertools.combinations(range(G.n), k):
            sub = {G.identity}
            frontier = [G.identity]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in gens:
                        y = G.mul(x, g)
                        if y not in sub:
                            sub.add(y)
                            nxt.append(y)
                frontier = nxt
            fs = frozenset(sub)
            if fs not in seen:
                seen.add(fs)
                yield fs
