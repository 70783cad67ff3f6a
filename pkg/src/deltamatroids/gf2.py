"""Symmetric matrices over GF(2), principal pivoting, and binary recognition.

Rows are stored as bitmasks over the column positions.  Determinants use
Gaussian elimination with XOR row updates; the empty matrix counts as
nonsingular so that the empty set is always feasible below.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .exchange import is_delta_matroid
from .setsystem import SetSystem, SubsetLike


def det_gf2(rows: Sequence[int], n: int) -> int:
    """Determinant (0 or 1) of an n x n matrix given as row bitmasks."""
    rows = list(rows)
    for col in range(n):
        bit = 1 << col
        pivot = -1
        for r in range(col, n):
            if rows[r] & bit:
                pivot = r
                break
        if pivot < 0:
            return 0
        rows[col], rows[pivot] = rows[pivot], rows[col]
        prow = rows[col]
        for r in range(col + 1, n):
            if rows[r] & bit:
                rows[r] ^= prow
    return 1


def _compress(row: int, positions: Sequence[int]) -> int:
    out = 0
    for j, p in enumerate(positions):
        if row >> p & 1:
            out |= 1 << j
    return out


@dataclass(frozen=True)
class SymmetricBinaryMatrix:
    """Symmetric GF(2) matrix with labeled rows/columns."""

    labels: tuple[str, ...]
    rows: tuple[int, ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise ValueError("labels must be distinct")
        if len(self.rows) != n:
            raise ValueError("row count must match label count")
        full = (1 << n) - 1
        for i, r in enumerate(self.rows):
            if r & ~full:
                raise ValueError("row has bits outside the matrix")
            for j in range(i):
                if (r >> j & 1) != (self.rows[j] >> i & 1):
                    raise ValueError("matrix is not symmetric")

    @classmethod
    def from_entries(cls, labels: Iterable[str], entries: Sequence[Sequence[int]]) -> SymmetricBinaryMatrix:
        labels = tuple(labels)
        rows = tuple(
            sum((int(v) & 1) << j for j, v in enumerate(row)) for row in entries
        )
        return cls(labels, rows)

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def mask(self, subset: SubsetLike) -> int:
        if isinstance(subset, int):
            if subset & ~self.full_mask:
                raise ValueError("mask has bits outside the matrix")
            return subset
        pos = {lab: i for i, lab in enumerate(self.labels)}
        m = 0
        for lab in subset:
            try:
                m |= 1 << pos[lab]
            except KeyError:
                raise ValueError(f"label {lab!r} not in matrix") from None
        return m

    def entry(self, i: int, j: int) -> int:
        return self.rows[i] >> j & 1

    def principal_nonsingular(self, subset: SubsetLike) -> bool:
        """Is the principal submatrix on the subset nonsingular?"""
        x = self.mask(subset)
        positions = [i for i in range(self.size) if x >> i & 1]
        sub = [_compress(self.rows[p], positions) for p in positions]
        return det_gf2(sub, len(positions)) == 1

    def feasible_masks(self) -> tuple[int, ...]:
        """Masks of all nonsingular principal submatrices (the empty one
        included)."""
        n = self.size
        rows = self.rows
        out = []
        for x in range(1 << n):
            positions = [i for i in range(n) if x >> i & 1]
            sub = [_compress(rows[p], positions) for p in positions]
            if det_gf2(sub, len(positions)):
                out.append(x)
        return tuple(out)

    def delta_matroid(self) -> SetSystem:
        return SetSystem(self.labels, self.feasible_masks())

    def ppt(self, subset: SubsetLike) -> SymmetricBinaryMatrix:
        """Principal pivot transform on a nonsingular principal submatrix.

        Blockwise, with P the pivot block, Q, R its row/column strips and
        S the rest: the result has blocks P^-1, P^-1 Q, R P^-1 and
        S + R P^-1 Q (signs vanish over GF(2)).  Involutive in the subset.
        """
        x = self.mask(subset)
        n = self.size
        xs = [i for i in range(n) if x >> i & 1]
        ys = [i for i in range(n) if not x >> i & 1]
        k = len(xs)
        p = [_compress(self.rows[i], xs) for i in xs]
        pinv = _invert_gf2(p, k)
        if pinv is None:
            raise ValueError("pivot block is singular")
        q = [_compress(self.rows[i], ys) for i in xs]          # k rows over ys
        r = [_compress(self.rows[j], xs) for j in ys]          # |ys| rows over xs
        s = [_compress(self.rows[j], ys) for j in ys]
        pinv_q = _matmul_gf2(pinv, q)                          # k x |ys|
        r_pinv = _matmul_gf2(r, pinv)                          # |ys| x k
        r_pinv_q = _matmul_gf2(r, pinv_q)                      # |ys| x |ys|
        new_rows = [0] * n
        for a, i in enumerate(xs):
            row = 0
            for b, j in enumerate(xs):
                if pinv[a] >> b & 1:
                    row |= 1 << j
            for b, j in enumerate(ys):
                if pinv_q[a] >> b & 1:
                    row |= 1 << j
            new_rows[i] = row
        for a, j in enumerate(ys):
            row = 0
            for b, i in enumerate(xs):
                if r_pinv[a] >> b & 1:
                    row |= 1 << i
            for b, jj in enumerate(ys):
                if (s[a] ^ r_pinv_q[a]) >> b & 1:
                    row |= 1 << jj
            new_rows[j] = row
        return SymmetricBinaryMatrix(self.labels, tuple(new_rows))

    def __str__(self) -> str:
        body = " / ".join(
            "".join(str(r >> j & 1) for j in range(self.size)) for r in self.rows
        )
        return f"[{','.join(self.labels)}: {body}]"


def _invert_gf2(rows: Sequence[int], n: int) -> list[int] | None:
    """Inverse over GF(2) via Gauss-Jordan on [M | I], or None if singular."""
    aug = [rows[i] | (1 << (n + i)) for i in range(n)]
    for col in range(n):
        bit = 1 << col
        pivot = -1
        for r in range(col, n):
            if aug[r] & bit:
                pivot = r
                break
        if pivot < 0:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        prow = aug[col]
        for r in range(n):
            if r != col and aug[r] & bit:
                aug[r] ^= prow
    return [row >> n for row in aug]


def _matmul_gf2(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Rows-as-masks product: row i of the result is the XOR of the rows
    of b selected by the bits of row i of a."""
    out = []
    for arow in a:
        acc = 0
        j = 0
        while arow:
            if arow & 1:
                acc ^= b[j]
            arow >>= 1
            j += 1
        out.append(acc)
    return out


def delta_matroid_of_matrix(matrix: SymmetricBinaryMatrix) -> SetSystem:
    """Feasible sets are the index sets of nonsingular principal
    submatrices; always normal."""
    return matrix.delta_matroid()


def reconstruct_basic_matrix(system: SetSystem) -> SymmetricBinaryMatrix:
    """Rebuild the representing matrix of a normal system from its
    feasible sets of size at most two.

    Diagonal entries follow the singletons; an off-diagonal pair entry is
    whatever makes the 2x2 principal determinant match the pair's
    feasibility.
    """
    if not system.is_proper or system.feasible[0] != 0:
        raise ValueError("reconstruction requires a normal system")
    n = system.size
    feas = set(system.feasible)
    diag = [1 if (1 << i) in feas else 0 for i in range(n)]
    rows = [diag[i] << i for i in range(n)]
    for i in range(n):
        for j in range(i):
            pair_feasible = ((1 << i) | (1 << j)) in feas
            off = int(pair_feasible) ^ (diag[i] & diag[j])
            if off:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return SymmetricBinaryMatrix(system.labels, tuple(rows))


def is_basic_binary(system: SetSystem) -> bool:
    """Normal, and reproduced exactly by its reconstructed matrix."""
    if not system.is_proper:
        raise ValueError("requires a proper system")
    if system.feasible[0] != 0:
        return False
    return reconstruct_basic_matrix(system).delta_matroid() == system


def is_binary(system: SetSystem) -> bool:
    """Is the system a twist of a basic binary delta-matroid?

    Only delta-matroids can be binary; failing the exchange axiom returns
    False.  Otherwise one twist at the least feasible set decides: a
    binary delta-matroid twisted onto any feasible set is basic binary.
    """
    if not system.is_proper:
        raise ValueError("requires a proper system")
    if not is_delta_matroid(system):
        return False
    return is_basic_binary(system.twist(system.feasible[0]))
