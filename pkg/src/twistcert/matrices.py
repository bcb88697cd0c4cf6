"""Exact integer and modular matrix arithmetic for the symplectic calculus.

All matrices are immutable and use arbitrary-precision Python integers, so
every product, inverse and congruence test below is exact.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class IntMatrix:
    """Square integer matrix of even dimension 2g >= 4, stored row-major."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        if n < 4 or n % 2 != 0:
            raise ValueError(f"dimension must be even and >= 4, got {n}")
        if any(len(row) != n for row in rows):
            raise ValueError("matrix is not square")

    @property
    def dim(self) -> int:
        return len(self.rows)

    @staticmethod
    def identity(dim: int) -> IntMatrix:
        return IntMatrix(tuple(
            tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)
        ))

    @staticmethod
    def from_unit_entries(dim: int, entries: dict[tuple[int, int], int]) -> IntMatrix:
        """I + sum of c*E_{i,j} for ((i, j), c) in entries; indices are 1-based."""
        rows = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
        for (i, j), c in entries.items():
            rows[i - 1][j - 1] += c
        return IntMatrix(tuple(tuple(row) for row in rows))

    def entry(self, i: int, j: int) -> int:
        """1-based entry access."""
        return self.rows[i - 1][j - 1]

    def transpose(self) -> IntMatrix:
        return IntMatrix(tuple(zip(*self.rows)))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        return mat_mul(self, other)

    def add(self, other: IntMatrix) -> IntMatrix:
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return IntMatrix(tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.rows, other.rows)
        ))

    def scale(self, c: int) -> IntMatrix:
        return IntMatrix(tuple(tuple(c * x for x in row) for row in self.rows))

    def is_identity(self) -> bool:
        return self == IntMatrix.identity(self.dim)


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Exact integer matrix product."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    bt = b.transpose().rows
    return IntMatrix(tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
        for row in a.rows
    ))


def mat_pow(m: IntMatrix, k: int) -> IntMatrix:
    """m**k for k >= 0 by repeated squaring."""
    if k < 0:
        raise ValueError("negative power needs an inverse; use SpMatrix.pow")
    result = IntMatrix.identity(m.dim)
    base = m
    while k:
        if k & 1:
            result = result @ base
        base = base @ base
        k >>= 1
    return result


def symplectic_form(genus: int) -> IntMatrix:
    """The form matrix J = [[0, I_g], [-I_g, 0]] in the (a_1..a_g, b_1..b_g) basis."""
    n = 2 * genus
    rows = [[0] * n for _ in range(n)]
    for i in range(genus):
        rows[i][genus + i] = 1
        rows[genus + i][i] = -1
    return IntMatrix(tuple(tuple(row) for row in rows))


def sp_check(m: IntMatrix, genus: int | None = None) -> bool:
    """True iff M^T J M = J exactly."""
    if genus is None:
        genus = m.dim // 2
    if m.dim != 2 * genus:
        return False
    j = symplectic_form(genus)
    return m.transpose() @ j @ m == j


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = m.dim
    a = [list(row) for row in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SpMatrix:
    """Integer matrix certified symplectic (M^T J M = J) at construction."""

    m: IntMatrix
    genus: int

    def __post_init__(self) -> None:
        if self.m.dim != 2 * self.genus:
            raise ValueError(f"dimension {self.m.dim} does not match genus {self.genus}")
        if not sp_check(self.m, self.genus):
            raise ValueError("matrix is not symplectic: M^T J M != J")

    @staticmethod
    def identity(genus: int) -> SpMatrix:
        return SpMatrix(IntMatrix.identity(2 * genus), genus)

    @property
    def dim(self) -> int:
        return self.m.dim

    def __matmul__(self, other: SpMatrix) -> SpMatrix:
        if self.genus != other.genus:
            raise ValueError("genus mismatch")
        return SpMatrix(self.m @ other.m, self.genus)

    def inverse(self) -> SpMatrix:
        # M^T J M = J  implies  M^{-1} = -J M^T J.
        j = symplectic_form(self.genus)
        inv = j.scale(-1) @ self.m.transpose() @ j
        return SpMatrix(inv, self.genus)

    def pow(self, k: int) -> SpMatrix:
        base = self if k >= 0 else self.inverse()
        return SpMatrix(mat_pow(base.m, abs(k)), self.genus)


def sp_inverse(m: SpMatrix) -> SpMatrix:
    """Exact symplectic inverse via M^{-1} = -J M^T J."""
    return m.inverse()


def _is_power_of_two(q: int) -> bool:
    return q >= 2 and (q & (q - 1)) == 0


@dataclass(frozen=True)
class ModMatrix:
    """Matrix over Z/qZ for q a power of two; entries reduced into [0, q)."""

    rows: tuple[tuple[int, ...], ...]
    modulus: int

    def __post_init__(self) -> None:
        if not _is_power_of_two(self.modulus):
            raise ValueError(f"modulus must be a power of two >= 2, got {self.modulus}")
        rows = tuple(tuple(int(x) % self.modulus for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("matrix is not square")

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __matmul__(self, other: ModMatrix) -> ModMatrix:
        if self.dim != other.dim or self.modulus != other.modulus:
            raise ValueError("dimension or modulus mismatch")
        bt = tuple(zip(*other.rows))
        q = self.modulus
        return ModMatrix(tuple(
            tuple(sum(x * y for x, y in zip(row, col)) % q for col in bt)
            for row in self.rows
        ), q)

    def is_identity(self) -> bool:
        return all(
            x == (1 if i == j else 0)
            for i, row in enumerate(self.rows) for j, x in enumerate(row)
        )

    def packed_word(self) -> int:
        """Canonical packed encoding: base-q digits, entry (i,j) at digit i*dim+j.

        Only defined for q <= 256 (entries fit in 8 bits each).
        """
        if self.modulus > 256:
            raise ValueError("packing requires modulus <= 256")
        bits = (self.modulus - 1).bit_length()
        word = 0
        pos = 0
        for row in self.rows:
            for x in row:
                word |= x << (bits * pos)
                pos += 1
        return word


def reduce_mod(m: IntMatrix, q: int) -> ModMatrix:
    """Entrywise reduction into [0, q) for q a power of two."""
    if not _is_power_of_two(q):
        raise ValueError(f"modulus must be a power of two >= 2, got {q}")
    return ModMatrix(m.rows, q)
