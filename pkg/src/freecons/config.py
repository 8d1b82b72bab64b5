"""Group configuration files (YAML or JSON).

Amalgam::

    name: z2_z3
    kind: amalgam
    factors:
      G: {kind: cyclic, order: 2, names: [e, a]}
      H: {kind: cyclic, order: 3, names: [e, b, b2]}
    subgroups:
      G: {kind: trivial}
      H: {kind: trivial}
    identification: {images: [...]}   # optional, images of A_G's elements/generators
    window: 4                         # letter window for infinite factors
    caps: {ball: 2000000}

HNN extension::

    kind: hnn
    base: {kind: fg-abelian, moduli: [0]}
    subgroups:
      A: {kind: lattice, generators: [[2]]}
      B: {kind: lattice, generators: [[3]]}
    identification: {images: [[3]]}

Factor kinds: ``finite-table`` (``table``, optional ``identity``, ``names``),
``permutations`` (``perms``), ``cyclic`` (``order``), ``symmetric``
(``degree``), ``dihedral`` (``n``), ``fg-abelian`` (``moduli``), ``free``
(``rank``, ``names``); any factor may instead be ``{file: path}``.
Subgroup kinds: ``trivial``, ``elements`` (``elements``), ``lattice``
(``generators``).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import yaml

from . import factors as fc
from .amalgam import AmalgamGroup
from .errors import ConfigError, UnsupportedOracleError
from .genericity import DEFAULT_BALL_CAP
from .hnn import DEFAULT_TWIST_WINDOW, HnnGroup


class ConfigFieldError(ConfigError):
    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where


@dataclass
class GroupConfig:
    name: str
    kind: str
    group: Any
    window: Optional[int]
    ball_cap: int
    digest: str
    raw: dict = field(repr=False, default_factory=dict)


def _get(d: dict, key: str, where: str, required: bool = True, default=None):
    if not isinstance(d, dict):
        raise ConfigFieldError(where, "expected a mapping")
    if key not in d:
        if required:
            raise ConfigFieldError(f"{where}.{key}", "missing field")
        return default
    return d[key]


def _int(v, where: str, minimum: Optional[int] = None) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigFieldError(where, f"expected an integer, got {v!r}")
    if minimum is not None and v < minimum:
        raise ConfigFieldError(where, f"must be at least {minimum}")
    return v


def _int_list(v, where: str) -> list:
    if not isinstance(v, list):
        raise ConfigFieldError(where, "expected a list")
    return [_int(x, f"{where}[{i}]") for i, x in enumerate(v)]


def _read(path: Path) -> dict:
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(text) if path.suffix == ".json" else yaml.safe_load(text)
    except (yaml.YAMLError, json.JSONDecodeError) as exc:
        raise ConfigError(f"{path}: cannot parse: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return data


def _factor(spec, where: str, base_dir: Path) -> fc.FactorGroup:
    if isinstance(spec, dict) and "file" in spec:
        path = base_dir / str(spec["file"])
        return _factor(_read(path), f"{path}", path.parent)
    kind = _get(spec, "kind", where)
    name = str(_get(spec, "name", where, required=False, default="") or "")
    names = _get(spec, "names", where, required=False)
    if names is not None and not isinstance(names, list):
        raise ConfigFieldError(f"{where}.names", "expected a list")
    try:
        if kind == "finite-table":
            rows = _get(spec, "table", where)
            if not isinstance(rows, list):
                raise ConfigFieldError(f"{where}.table", "expected a list of rows")
            table = [_int_list(r, f"{where}.table[{i}]") for i, r in enumerate(rows)]
            n = len(table)
            if any(len(r) != n for r in table):
                raise ConfigFieldError(f"{where}.table", "table must be square")
            if any(not 0 <= x < n for r in table for x in r):
                raise ConfigFieldError(f"{where}.table", f"entries must lie in 0..{n - 1}")
            ident = _int(_get(spec, "identity", where, required=False, default=0), f"{where}.identity", 0)
            return fc.FiniteTableGroup(table, ident, names, name)
        if kind == "permutations":
            perms = _get(spec, "perms", where)
            if not isinstance(perms, list) or not perms:
                raise ConfigFieldError(f"{where}.perms", "expected a non-empty list")
            return fc.permutation_group([_int_list(p, f"{where}.perms[{i}]") for i, p in enumerate(perms)], name)
        if kind == "cyclic":
            n = _int(_get(spec, "order", where), f"{where}.order", 1)
            return fc.cyclic_group(n, name, names)
        if kind == "symmetric":
            return fc.symmetric_group(_int(_get(spec, "degree", where), f"{where}.degree", 1), name)
        if kind == "dihedral":
            return fc.dihedral_group(_int(_get(spec, "n", where), f"{where}.n", 3), name)
        if kind == "fg-abelian":
            moduli = _int_list(_get(spec, "moduli", where), f"{where}.moduli")
            if any(m < 0 for m in moduli):
                raise ConfigFieldError(f"{where}.moduli", "moduli must be non-negative")
            return fc.AbelianGroup(moduli, name)
        if kind == "free":
            return fc.FreeGroup(_int(_get(spec, "rank", where), f"{where}.rank", 1), names, name)
    except ConfigFieldError:
        raise
    except ConfigError as exc:
        raise ConfigFieldError(where, str(exc)) from None
    raise ConfigFieldError(f"{where}.kind", f"unknown factor kind {kind!r}")


def _element(F: fc.FactorGroup, v, where: str):
    try:
        if isinstance(v, str):
            return F.parse(v)
        if isinstance(F, fc.FiniteTableGroup):
            i = _int(v, where)
            if not 0 <= i < F.n:
                raise ConfigFieldError(where, f"index {i} out of range")
            return i
        return F.normalize(v)
    except ConfigFieldError:
        raise
    except (ConfigError, TypeError, ValueError) as exc:
        raise ConfigFieldError(where, str(exc)) from None


def _subgroup(F: fc.FactorGroup, spec, where: str) -> fc.SubgroupOracle:
    kind = _get(spec, "kind", where)
    try:
        if kind == "trivial":
            return fc.TrivialSubgroup(F)
        if kind == "elements":
            els = _get(spec, "elements", where)
            if not isinstance(els, list):
                raise ConfigFieldError(f"{where}.elements", "expected a list")
            return fc.EnumeratedSubgroup(F, [_element(F, v, f"{where}.elements[{i}]") for i, v in enumerate(els)])
        if kind == "lattice":
            if not isinstance(F, fc.AbelianGroup):
                raise ConfigFieldError(where, "lattice subgroups need an fg-abelian factor")
            gens = _get(spec, "generators", where)
            if not isinstance(gens, list):
                raise ConfigFieldError(f"{where}.generators", "expected a list of vectors")
            rows = [[_int(g, f"{where}.generators[{i}]")] if isinstance(g, int) else _int_list(g, f"{where}.generators[{i}]")
                    for i, g in enumerate(gens)]
            if any(len(r) != F.rank for r in rows):
                raise ConfigFieldError(f"{where}.generators", f"vectors must have length {F.rank}")
            return fc.LatticeSubgroup(F, rows)
    except ConfigFieldError:
        raise
    except ConfigError as exc:
        raise ConfigFieldError(where, str(exc)) from None
    raise ConfigFieldError(f"{where}.kind", f"unknown subgroup kind {kind!r}")


def _iso(src, dst, spec, where: str):
    images = None
    if spec is not None:
        raw = _get(spec, "images", where)
        if not isinstance(raw, list):
            raise ConfigFieldError(f"{where}.images", "expected a list")
        if isinstance(src, fc.LatticeSubgroup):
            images = raw
        else:
            images = [_element(dst.ambient, v, f"{where}.images[{i}]") for i, v in enumerate(raw)]
    try:
        return fc.make_iso(src, dst, images)
    except (ConfigError, UnsupportedOracleError) as exc:
        raise ConfigFieldError(where, str(exc)) from None


def digest(data: dict) -> str:
    canon = json.dumps(data, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canon.encode()).hexdigest()


def build(data: dict, base_dir: Path = Path("."), window: Optional[int] = None,
          use_kernel: bool = True) -> GroupConfig:
    """Construct the group described by a parsed config mapping."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a mapping")
    kind = _get(data, "kind", "config")
    if kind not in ("amalgam", "hnn"):
        raise ConfigFieldError("config.kind", f"expected 'amalgam' or 'hnn', got {kind!r}")
    name = str(data.get("name", "") or kind)
    if window is None:
        window = _get(data, "window", "config", required=False)
    if window is not None:
        window = _int(window, "config.window", 1)
    caps = _get(data, "caps", "config", required=False, default={}) or {}
    ball_cap = _int(_get(caps, "ball", "config.caps", required=False, default=DEFAULT_BALL_CAP),
                    "config.caps.ball", 1)
    subs = _get(data, "subgroups", "config")
    ident = _get(data, "identification", "config", required=False)
    if kind == "amalgam":
        fs = _get(data, "factors", "config")
        G = _factor(_get(fs, "G", "config.factors"), "config.factors.G", base_dir)
        H = _factor(_get(fs, "H", "config.factors"), "config.factors.H", base_dir)
        G.name, H.name = G.name or "G", H.name or "H"
        A_G = _subgroup(G, _get(subs, "G", "config.subgroups"), "config.subgroups.G")
        A_H = _subgroup(H, _get(subs, "H", "config.subgroups"), "config.subgroups.H")
        iso = _iso(A_G, A_H, ident, "config.identification")
        group = AmalgamGroup(G, H, A_G, A_H, iso, name=name, window=window, use_kernel=use_kernel)
    else:
        G = _factor(_get(data, "base", "config"), "config.base", base_dir)
        G.name = G.name or "G"
        A = _subgroup(G, _get(subs, "A", "config.subgroups"), "config.subgroups.A")
        B = _subgroup(G, _get(subs, "B", "config.subgroups"), "config.subgroups.B")
        phi = _iso(A, B, ident, "config.identification")
        tw = _int(_get(caps, "twist_window", "config.caps", required=False, default=DEFAULT_TWIST_WINDOW),
                  "config.caps.twist_window", 1)
        group = HnnGroup(G, A, B, phi, name=name, window=window, twist_window=tw, use_kernel=use_kernel)
    return GroupConfig(name, kind, group, window, ball_cap, digest(data), data)


def load(path, window: Optional[int] = None, use_kernel: bool = True) -> GroupConfig:
    path = Path(path)
    return build(_read(path), path.parent, window, use_kernel)
