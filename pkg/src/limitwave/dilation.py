"""Expansive integer dilations and the combinatorics they induce.

A dilation is an n x n integer matrix A with every eigenvalue strictly
outside the unit circle.  It determines the index N = |det A|, the
kernel of the dual endomorphism beta = alpha* (N points of the torus,
indexed by a transversal of Z^n / A^T Z^n) and the N characters that
restrict to a complete dual basis on that kernel (a transversal of
Z^n / A Z^n).  All lattice arithmetic is exact: membership tests solve
A y = k over the rationals, never by rounding.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .errors import DualityFailure, DimensionMismatch, NotExpansive, SingularMatrix
from .torus import LaurentPoly, lp_monomial

#: |eigenvalue| must exceed 1 by at least this margin
EXPANSIVE_MARGIN = 1e-9

#: tolerance for the pairing-matrix unitarity check
PAIRING_TOL = 1e-10


def _frac_inverse(A: tuple[tuple[int, ...], ...]) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse by Gauss-Jordan over the rationals."""
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return tuple(tuple(row[n:]) for row in M)


def _mat_vec_frac(M, v):
    return tuple(sum(M[i][j] * v[j] for j in range(len(v))) for i in range(len(M)))


def _int_det(A) -> int:
    """Exact determinant via fraction-free cofactor expansion (n is small)."""
    n = len(A)
    if n == 1:
        return A[0][0]
    det = 0
    for j in range(n):
        if A[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in [list(r) for r in A[1:]]]
        det += (-1) ** j * A[0][j] * _int_det(minor)
    return det


class DilationSpec:
    """Validated dilation context shared by every downstream module."""

    __slots__ = ("dim", "A", "N", "ker_transversal", "dual_transversal",
                 "_Ainv", "_ATinv")

    def __init__(self, A, ker_transversal, dual_transversal):
        A = tuple(tuple(int(x) for x in row) for row in A)
        n = len(A)
        if any(len(row) != n for row in A):
            raise DimensionMismatch("dilation matrix must be square")
        det = _int_det(A)
        if det == 0:
            raise SingularMatrix("det A = 0")
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "N", abs(det))
        object.__setattr__(self, "ker_transversal", tuple(tuple(d) for d in ker_transversal))
        object.__setattr__(self, "dual_transversal", tuple(tuple(q) for q in dual_transversal))
        object.__setattr__(self, "_Ainv", _frac_inverse(A))
        AT = tuple(tuple(A[j][i] for j in range(n)) for i in range(n))
        object.__setattr__(self, "_ATinv", _frac_inverse(AT))

    def __setattr__(self, name, value):
        raise AttributeError("DilationSpec is immutable")

    def __eq__(self, other):
        return isinstance(other, DilationSpec) and self.A == other.A \
            and self.ker_transversal == other.ker_transversal \
            and self.dual_transversal == other.dual_transversal

    def __hash__(self):
        return hash(self.A)

    def __repr__(self):
        return f"DilationSpec(A={self.A}, N={self.N})"

    # -- exact lattice arithmetic ------------------------------------

    def apply_A(self, k) -> tuple[int, ...]:
        """A k with arbitrary-precision integers."""
        return tuple(sum(self.A[i][j] * k[j] for j in range(self.dim))
                     for i in range(self.dim))

    def apply_A_pow(self, k, n: int) -> tuple[int, ...]:
        """A^n k for n >= 0."""
        out = tuple(int(x) for x in k)
        for _ in range(n):
            out = self.apply_A(out)
        return out

    def solve_A(self, k):
        """Return y with A y = k when y is integral, else None."""
        y = _mat_vec_frac(self._Ainv, k)
        if all(v.denominator == 1 for v in y):
            return tuple(int(v) for v in y)
        return None

    def in_AT_lattice(self, d) -> bool:
        y = _mat_vec_frac(self._ATinv, d)
        return all(v.denominator == 1 for v in y)

    def kernel_points(self) -> list[tuple[Fraction, ...]]:
        """The N points x_d = (A^T)^{-1} d of ker(beta), reduced mod 1."""
        pts = []
        for d in self.ker_transversal:
            x = _mat_vec_frac(self._ATinv, d)
            pts.append(tuple(v - (v // 1) for v in x))
        return pts

    def pairing_matrix(self) -> np.ndarray:
        """P[d, q] = e^{2 pi i q . (A^T)^{-1} d}; P P* = N I iff the two
        transversals are genuine and dual to each other."""
        P = np.empty((self.N, self.N), dtype=complex)
        for i, x in enumerate(self.kernel_points()):
            for j, q in enumerate(self.dual_transversal):
                P[i, j] = np.exp(2j * np.pi * float(sum(Fraction(qq) * xx
                                                        for qq, xx in zip(q, x))))
        return P


def _enumeration_order(bound: int, dim: int):
    """Deterministic search order: per coordinate 0, 1, ..., bound, -1,
    ..., -bound, with the first coordinate varying fastest."""
    seq = list(range(bound + 1)) + [-v for v in range(1, bound + 1)]
    for combo in itertools.product(seq, repeat=dim):
        yield combo[::-1]


def _pick_transversal(dim: int, n_needed: int, bound: int, equivalent) -> list[tuple[int, ...]]:
    reps: list[tuple[int, ...]] = []
    for v in _enumeration_order(bound, dim):
        if any(equivalent(v, r) for r in reps):
            continue
        reps.append(v)
        if len(reps) == n_needed:
            return reps
    raise DualityFailure(f"search box too small: found {len(reps)} of {n_needed}")


def make_dilation(A) -> DilationSpec:
    """Validate A, enumerate both transversals, and check duality.

    Raises SingularMatrix / NotExpansive for bad input and
    DualityFailure if the pairing matrix fails its unitarity identity
    (which would indicate an enumeration bug, not bad input).
    """
    A = tuple(tuple(int(x) for x in row) for row in A)
    n = len(A)
    if any(len(row) != n for row in A):
        raise DimensionMismatch("dilation matrix must be square")
    det = _int_det(A)
    if det == 0:
        raise SingularMatrix("det A = 0")
    eig = np.linalg.eigvals(np.array(A, dtype=float))
    if np.min(np.abs(eig)) < 1.0 + EXPANSIVE_MARGIN:
        raise NotExpansive(f"eigenvalue moduli {sorted(np.abs(eig))} not all > 1")
    N = abs(det)
    bound = N * max(abs(x) for row in A for x in row)

    AT = tuple(tuple(A[j][i] for j in range(n)) for i in range(n))
    ATinv = _frac_inverse(AT)
    Ainv = _frac_inverse(A)

    def equiv_ker(u, v):
        d = tuple(a - b for a, b in zip(u, v))
        return all(x.denominator == 1 for x in _mat_vec_frac(ATinv, d))

    def equiv_dual(u, v):
        d = tuple(a - b for a, b in zip(u, v))
        return all(x.denominator == 1 for x in _mat_vec_frac(Ainv, d))

    ker = _pick_transversal(n, N, bound, equiv_ker)
    dual = _pick_transversal(n, N, bound, equiv_dual)
    spec = DilationSpec(A, ker, dual)

    P = spec.pairing_matrix()
    dev = np.max(np.abs(P @ P.conj().T - N * np.eye(N)))
    if dev > PAIRING_TOL:
        raise DualityFailure(f"pairing matrix off unitary by {dev:g}")
    return spec


def kernel_points(spec: DilationSpec) -> list[tuple[Fraction, ...]]:
    return spec.kernel_points()


def kernel_dual_characters(spec: DilationSpec) -> list[LaurentPoly]:
    """Monomials z^q, q over the dual transversal; they restrict to the
    full character group of ker(beta)."""
    return [lp_monomial(spec.dim, q) for q in spec.dual_transversal]
