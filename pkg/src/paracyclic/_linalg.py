"""Exact matrix arithmetic over a prime field or the rationals.

Matrices are numpy arrays: int64 entries reduced mod p for prime fields,
object-dtype Fraction entries for the rationals.  Maps act on column
vectors, so a map V -> W has shape (dim W, dim V).  Echelon forms are fully
reduced with unit pivots, which makes every returned basis deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np


class Field:
    """Common interface; see PrimeField and Rationals."""

    name: str

    def matrix(self, rows: Sequence[Sequence]) -> np.ndarray:
        raise NotImplementedError

    def zeros(self, r: int, c: int) -> np.ndarray:
        raise NotImplementedError

    def identity(self, n: int) -> np.ndarray:
        raise NotImplementedError

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def neg(self, a: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _inv_scalar(self, x):
        raise NotImplementedError

    # -- shared elimination ---------------------------------------------------

    def rref(self, a: np.ndarray) -> Tuple[np.ndarray, List[int]]:
        """Reduced row echelon form and the list of pivot columns."""
        mat = a.copy()
        rows, cols = mat.shape
        pivots: List[int] = []
        rank = 0
        for col in range(cols):
            pivot = next((r for r in range(rank, rows) if mat[r, col] != 0), None)
            if pivot is None:
                continue
            if pivot != rank:
                mat[[rank, pivot]] = mat[[pivot, rank]]
            mat[rank] = self._scale_row(mat[rank], self._inv_scalar(mat[rank, col]))
            for r in range(rows):
                if r != rank and mat[r, col] != 0:
                    mat[r] = self._sub_scaled(mat[r], mat[rank], mat[r, col])
            pivots.append(col)
            rank += 1
            if rank == rows:
                break
        return mat, pivots

    def _scale_row(self, row, factor):
        raise NotImplementedError

    def _sub_scaled(self, row, pivot_row, factor):
        raise NotImplementedError

    def rank(self, a: np.ndarray) -> int:
        if 0 in a.shape:
            return 0
        return len(self.rref(a)[1])

    def right_kernel(self, a: np.ndarray) -> np.ndarray:
        """Rows form the canonical reduced basis of { v : a v = 0 }."""
        rows, cols = a.shape
        if cols == 0:
            return self.zeros(0, 0)
        if rows == 0:
            return self.identity(cols)
        reduced, pivots = self.rref(a)
        free = [c for c in range(cols) if c not in pivots]
        basis = self.zeros(len(free), cols)
        for idx, fc in enumerate(free):
            basis[idx, fc] = self.one
            for r, pc in enumerate(pivots):
                basis[idx, pc] = self._neg_scalar(reduced[r, fc])
        return basis

    def _neg_scalar(self, x):
        raise NotImplementedError

    def is_invertible(self, a: np.ndarray) -> bool:
        return a.shape[0] == a.shape[1] and self.rank(a) == a.shape[0]

    def inverse(self, a: np.ndarray) -> np.ndarray:
        n = a.shape[0]
        if not self.is_invertible(a):
            raise ValueError("matrix is not invertible")
        augmented = np.concatenate([a, self.identity(n)], axis=1)
        reduced, _ = self.rref(augmented)
        return reduced[:, n:]

    def solve_in_span(self, basis_rows: np.ndarray, vector: np.ndarray):
        """Coefficients expressing vector in the span of basis rows, or None."""
        if basis_rows.shape[0] == 0:
            return self.zeros(1, 0)[0] if not vector.any() else None
        system = np.concatenate([basis_rows.T, vector.reshape(-1, 1)], axis=1)
        reduced, pivots = self.rref(system)
        if basis_rows.shape[0] in pivots:
            return None
        coeffs = self.zeros(1, basis_rows.shape[0])[0]
        for r, pc in enumerate(pivots):
            coeffs[pc] = reduced[r, -1]
        return coeffs

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        return a.shape == b.shape and bool(np.array_equal(a, b))

    # -- json -----------------------------------------------------------------

    def mat_to_json(self, a: np.ndarray) -> list:
        raise NotImplementedError

    def mat_from_json(self, data: Sequence[Sequence], shape: Tuple[int, int]) -> np.ndarray:
        raise NotImplementedError

    # -- randomness (seeded, for tests and self checks) ------------------------

    def random_matrix(self, rng, r: int, c: int) -> np.ndarray:
        raise NotImplementedError

    def random_invertible(self, rng, n: int) -> np.ndarray:
        if n == 0:
            return self.identity(0)
        while True:
            candidate = self.random_matrix(rng, n, n)
            if self.is_invertible(candidate):
                return candidate


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    def __post_init__(self):
        if self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p**0.5) + 1)):
            raise ValueError(f"{self.p} is not prime")

    @property
    def name(self) -> str:
        return str(self.p)

    @property
    def one(self):
        return 1

    def matrix(self, rows):
        shape = (len(rows), len(rows[0]) if rows else 0)
        out = np.zeros(shape, dtype=np.int64)
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                out[i, j] = int(x) % self.p
        return out

    def zeros(self, r, c):
        return np.zeros((r, c), dtype=np.int64)

    def identity(self, n):
        return np.eye(n, dtype=np.int64)

    def matmul(self, a, b):
        return (a @ b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def _inv_scalar(self, x):
        return pow(int(x), self.p - 2, self.p)

    def _neg_scalar(self, x):
        return (-int(x)) % self.p

    def _scale_row(self, row, factor):
        return (row * factor) % self.p

    def _sub_scaled(self, row, pivot_row, factor):
        return (row - factor * pivot_row) % self.p

    def mat_to_json(self, a):
        return [[int(x) for x in row] for row in a]

    def mat_from_json(self, data, shape):
        if not data or not data[0]:
            return self.zeros(*shape)
        return self.matrix(data)

    def random_matrix(self, rng, r, c):
        out = np.zeros((r, c), dtype=np.int64)
        for i in range(r):
            for j in range(c):
                out[i, j] = rng.randrange(self.p)
        return out


class Rationals(Field):
    name = "Q"

    @property
    def one(self):
        return Fraction(1)

    def matrix(self, rows):
        out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                out[i, j] = Fraction(x)
        return out

    def zeros(self, r, c):
        out = np.empty((r, c), dtype=object)
        out[:] = Fraction(0)
        return out

    def identity(self, n):
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = Fraction(1)
        return out

    def matmul(self, a, b):
        if 0 in a.shape or 0 in b.shape:
            return self.zeros(a.shape[0], b.shape[1])
        return a @ b

    def neg(self, a):
        return -a

    def _inv_scalar(self, x):
        return 1 / Fraction(x)

    def _neg_scalar(self, x):
        return -Fraction(x)

    def _scale_row(self, row, factor):
        return row * factor

    def _sub_scaled(self, row, pivot_row, factor):
        return row - factor * pivot_row

    def mat_to_json(self, a):
        return [[f"{x.numerator}/{x.denominator}" for x in row] for row in a]

    def mat_from_json(self, data, shape):
        if not data or not data[0]:
            return self.zeros(*shape)
        return self.matrix([[Fraction(*map(int, str(x).split("/"))) if "/" in str(x)
                             else Fraction(int(x)) for x in row] for row in data])

    def random_matrix(self, rng, r, c):
        out = self.zeros(r, c)
        for i in range(r):
            for j in range(c):
                out[i, j] = Fraction(rng.randrange(-9, 10), rng.randrange(1, 5))
        return out


QQ = Rationals()


def field_from_token(token) -> Field:
    """'Q' for the rationals, otherwise a prime p."""
    if token in ("Q", "QQ", None):
        return QQ
    return PrimeField(int(token))
