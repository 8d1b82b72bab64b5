"""Integer lattices in Z^r modulo per-coordinate moduli.

A lattice is given by generator vectors; a modulus ``m > 0`` on coordinate
``i`` contributes the extra generator ``m * e_i``.  All questions
(membership, canonical coset residue, coordinates on the generators) are
answered from a row echelon basis computed with unimodular row operations.
"""

from __future__ import annotations

from typing import Optional, Sequence


def _axpy(q: int, x: list[int], y: list[int]) -> None:
    # y -= q * x, in place
    for i, xi in enumerate(x):
        if xi:
            y[i] -= q * xi


class IntLattice:
    __slots__ = ("dim", "gens", "moduli", "_rows", "_coeffs", "_pivots", "_relations")

    def __init__(self, gens: Sequence[Sequence[int]], moduli: Sequence[int]):
        self.dim = len(moduli)
        self.moduli = tuple(int(m) for m in moduli)
        self.gens = [tuple(int(c) for c in g) for g in gens]
        for g in self.gens:
            if len(g) != self.dim:
                raise ValueError(f"generator {g} has wrong dimension (expected {self.dim})")
        ngen = len(self.gens)
        rows = [list(g) for g in self.gens]
        # coefficient of each working row on the original generators
        coeffs = [[int(i == j) for j in range(ngen)] for i in range(ngen)]
        for i, m in enumerate(self.moduli):
            if m > 0:
                v = [0] * self.dim
                v[i] = m
                rows.append(v)
                coeffs.append([0] * ngen)
        pivots: dict[int, int] = {}
        basis_rows: list[list[int]] = []
        basis_coeffs: list[list[int]] = []
        relations: list[list[int]] = []
        active = list(range(len(rows)))
        for col in range(self.dim):
            live = [k for k in active if rows[k][col] != 0]
            if not live:
                continue
            # Euclid on the column until one row is left
            while len(live) > 1:
                live.sort(key=lambda k: abs(rows[k][col]))
                p = live[0]
                for k in live[1:]:
                    q = rows[k][col] // rows[p][col]
                    _axpy(q, rows[p], rows[k])
                    _axpy(q, coeffs[p], coeffs[k])
                live = [k for k in live if rows[k][col] != 0]
            p = live[0]
            if rows[p][col] < 0:
                rows[p] = [-c for c in rows[p]]
                coeffs[p] = [-c for c in coeffs[p]]
            pivots[col] = len(basis_rows)
            basis_rows.append(rows[p])
            basis_coeffs.append(coeffs[p])
            active.remove(p)
        for k in active:
            # every remaining row is zero: its coefficients are a relation
            if any(coeffs[k]):
                relations.append(coeffs[k])
        self._rows = basis_rows
        self._coeffs = basis_coeffs
        self._pivots = pivots
        self._relations = relations

    def _reduce(self, v: Sequence[int]) -> tuple[list[int], list[int]]:
        v = [int(c) for c in v]
        if len(v) != self.dim:
            raise ValueError(f"vector {tuple(v)} has wrong dimension (expected {self.dim})")
        coords = [0] * len(self.gens)
        for col in range(self.dim):
            p = self._pivots.get(col)
            if p is None or v[col] == 0:
                continue
            row = self._rows[p]
            q = v[col] // row[col]
            if q:
                _axpy(q, row, v)
                for j, c in enumerate(self._coeffs[p]):
                    coords[j] += q * c
        return v, coords

    def residue(self, v: Sequence[int]) -> tuple[int, ...]:
        """Canonical representative of the coset ``v + L``."""
        return tuple(self._reduce(v)[0])

    def __contains__(self, v: Sequence[int]) -> bool:
        return not any(self._reduce(v)[0])

    def coords(self, v: Sequence[int]) -> Optional[list[int]]:
        """Integer coefficients on the generators summing to ``v`` modulo the
        moduli, or ``None`` when ``v`` is not in the lattice."""
        res, coords = self._reduce(v)
        if any(res):
            return None
        return coords

    def relations(self) -> list[list[int]]:
        """Generating set of integer relations among the generators (mod moduli)."""
        return [list(r) for r in self._relations]

    def pivots(self) -> dict[int, int]:
        """Map column -> positive pivot entry of the echelon basis."""
        return {col: self._rows[p][col] for col, p in self._pivots.items()}

    def index(self) -> Optional[int]:
        """Index of the lattice in Z^r, or ``None`` when infinite."""
        if len(self._pivots) < self.dim:
            return None
        out = 1
        for col, p in self._pivots.items():
            out *= self._rows[p][col]
        return out
