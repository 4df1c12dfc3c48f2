"""Dense exact linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries reduced into [0, p).  All
routines are deterministic: same input, same output, no floating point.
The modulus must be an odd prime small enough that (p-1)^2 * inner_dim
stays below 2^63, which holds for every desk-scale input this package
accepts (p < 2^20 enforced at construction).
"""

from __future__ import annotations

import numpy as np

_P_CAP = 1 << 20


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """Arithmetic context for F_p, p an odd prime below 2^20."""

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p) or p == 2:
            raise ValueError(f"modulus must be an odd prime, got {p!r}")
        if p >= _P_CAP:
            raise ValueError(f"modulus {p} too large (cap {_P_CAP})")
        self.p = p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    # -- element helpers ---------------------------------------------------

    def inv(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, self.p - 2, self.p)

    def asarray(self, data) -> np.ndarray:
        a = np.asarray(data, dtype=np.int64)
        return np.mod(a, self.p)

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.mod(a @ b, self.p)

    def random_matrix(self, rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
        return rng.integers(0, self.p, size=(rows, cols), dtype=np.int64)

    # -- elimination -------------------------------------------------------

    def rref(self, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form.

        Returns (r, pivots) with r row-reduced, pivot entries 1 and pivot
        columns cleared.  Zero-sized inputs are legal and return an empty
        pivot list.
        """
        a = self.asarray(m).copy()
        rows, cols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r >= rows:
                break
            col = a[r:, c]
            nz = np.nonzero(col)[0]
            if nz.size == 0:
                continue
            piv = r + int(nz[0])
            if piv != r:
                a[[r, piv]] = a[[piv, r]]
            a[r] = (a[r] * self.inv(a[r, c])) % self.p
            other = np.nonzero(a[:, c])[0]
            other = other[other != r]
            if other.size:
                a[other] = (a[other] - np.outer(a[other, c], a[r])) % self.p
            pivots.append(c)
            r += 1
        return a, pivots

    def rank(self, m: np.ndarray) -> int:
        return len(self.rref(m)[1])

    def nullspace(self, m: np.ndarray) -> np.ndarray:
        """Basis of {x : m @ x = 0} as columns of the returned matrix."""
        a = self.asarray(m)
        rows, cols = a.shape
        r, pivots = self.rref(a)
        free = [c for c in range(cols) if c not in pivots]
        basis = self.zeros(cols, len(free))
        for j, fc in enumerate(free):
            basis[fc, j] = 1
            for i, pc in enumerate(pivots):
                basis[pc, j] = (-r[i, fc]) % self.p
        return basis

    def solve(self, m: np.ndarray, b: np.ndarray):
        """Solve m @ x = b for a single right-hand side.

        Returns (particular, nullspace_basis) or None when inconsistent.
        b may be a vector or an (n, 1) column.
        """
        a = self.asarray(m)
        rhs = self.asarray(b).reshape(-1, 1)
        x = self.solve_many(a, rhs)
        if x is None:
            return None
        return x[:, 0], self.nullspace(a)

    def solve_many(self, m: np.ndarray, bs: np.ndarray):
        """Solve m @ X = bs column-by-column; None if any column inconsistent."""
        a = self.asarray(m)
        bs = self.asarray(bs)
        rows, cols = a.shape
        if bs.shape[0] != rows:
            raise ValueError("shape mismatch in solve")
        aug = np.concatenate([a, bs], axis=1)
        r, pivots = self.rref(aug)
        for pc in pivots:
            if pc >= cols:
                return None
        x = self.zeros(cols, bs.shape[1])
        for i, pc in enumerate(pivots):
            x[pc] = r[i, cols:]
        return x

    # -- subspace utilities --------------------------------------------------
    # Subspaces are given by their spanning vectors as COLUMNS of a matrix.

    def column_space_contains(self, basis: np.ndarray, vecs: np.ndarray) -> bool:
        if vecs.size == 0:
            return True
        return self.solve_many(basis, vecs) is not None

    def column_reduce(self, m: np.ndarray) -> np.ndarray:
        """Deterministic basis (as columns) of the column space of m."""
        r, pivots = self.rref(self.asarray(m).T)
        return r[: len(pivots)].T.copy()

    def quotient_projection(self, sub: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Coordinates on F^n / span(columns of sub).

        Returns (proj, reps): proj is (q, n) mapping a vector to quotient
        coordinates, reps is (n, q) mapping quotient coordinates to coset
        representatives; proj @ reps = identity.
        """
        sub = self.asarray(sub)
        if sub.size == 0:
            sub = self.zeros(n, 0)
        sub = sub.reshape(n, -1) if n else self.zeros(0, 0)
        r, pivots = self.rref(sub.T)
        sub_basis = r[: len(pivots)].T  # columns, echelon form
        free = [i for i in range(n) if i not in pivots]
        reps = self.zeros(n, len(free))
        for j, fr in enumerate(free):
            reps[fr, j] = 1
        # Write e_i = (element of sub) + sum_j c_ij reps_j.  With echelon sub
        # basis, coefficient extraction is triangular: subtract pivot parts.
        proj = self.zeros(len(free), n)
        for i in range(n):
            v = self.zeros(n, 1)
            v[i, 0] = 1
            for k, pc in enumerate(pivots):
                coef = v[pc, 0]
                if coef:
                    v = (v - coef * sub_basis[:, k : k + 1]) % self.p
            for j, fr in enumerate(free):
                proj[j, i] = v[fr, 0]
        return proj, reps

    def intersect_column_spaces(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Basis (columns) of colspace(a) & colspace(b)."""
        a = self.asarray(a)
        b = self.asarray(b)
        if a.shape[1] == 0 or b.shape[1] == 0:
            return self.zeros(a.shape[0], 0)
        ker = self.nullspace(np.concatenate([a, (-b) % self.p], axis=1))
        return self.column_reduce(self.matmul(a, ker[: a.shape[1]]))
