"""Shared numeric kernel: structure constants, adjoint matrices, matrix
exponentials and SVD-based ranks.

Basis vectors are written X1..X5 in docstrings and tables.  Coordinate
vectors are plain numpy arrays (0-based); public functions that take a basis
index (ad_matrix, flow directions) use the 1-based X-numbering so the code
reads like the bracket tables it implements.
"""

import numpy as np

__all__ = [
    "StructureConstants",
    "bracket",
    "ad_matrix",
    "jacobi_defect",
    "derived_subalgebra",
    "mat_exp",
    "numeric_rank",
]


class StructureConstants:
    """Structure constants of a real Lie algebra in a fixed basis.

    ``c[i, j, k]`` is the X_{k+1}-coefficient of [X_{i+1}, X_{j+1}] (the
    array is 0-based).  Constructors take 1-based entries with i < j and
    fill the lower triangle by antisymmetry.
    """

    def __init__(self, dim, entries=()):
        c = np.zeros((dim, dim, dim))
        for i, j, k, value in entries:
            if not (1 <= i < j <= dim and 1 <= k <= dim):
                raise ValueError(f"bad structure entry ({i}, {j}, {k}): need 1 <= i < j <= {dim}")
            c[i - 1, j - 1, k - 1] = value
            c[j - 1, i - 1, k - 1] = -value
        self.dim = dim
        self.c = c

    @classmethod
    def from_array(cls, c):
        c = np.asarray(c, dtype=float)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise ValueError("structure array must be dim x dim x dim")
        if not np.array_equal(c, -c.transpose(1, 0, 2)):
            raise ValueError("structure array is not antisymmetric in (i, j)")
        sc = cls(c.shape[0])
        sc.c = c.copy()
        return sc

    def entries(self):
        """Yield the nonzero upper-triangle entries as (i, j, k, value), 1-based."""
        dim = self.dim
        for i in range(dim):
            for j in range(i + 1, dim):
                for k in range(dim):
                    v = self.c[i, j, k]
                    if v != 0.0:
                        yield (i + 1, j + 1, k + 1, float(v))

    def to_text(self):
        """Serialize as a dimension line followed by one 'i j k value' line per entry.

        Values are written with repr, so parsing is an exact round trip.
        """
        lines = ["# structure constants: dim, then 'i j k value' per entry (1-based, i < j)"]
        lines.append(str(self.dim))
        for i, j, k, v in self.entries():
            lines.append(f"{i} {j} {k} {v!r}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        rows = [ln for ln in (s.strip() for s in text.splitlines()) if ln and not ln.startswith("#")]
        if not rows:
            raise ValueError("empty structure-constant text")
        dim = int(rows[0])
        entries = []
        for ln in rows[1:]:
            parts = ln.split()
            if len(parts) != 4:
                raise ValueError(f"bad structure line: {ln!r}")
            entries.append((int(parts[0]), int(parts[1]), int(parts[2]), float(parts[3])))
        return cls(dim, entries)

    def __eq__(self, other):
        return (
            isinstance(other, StructureConstants)
            and self.dim == other.dim
            and np.array_equal(self.c, other.c)
        )

    def __repr__(self):
        n = sum(1 for _ in self.entries())
        return f"StructureConstants(dim={self.dim}, entries={n})"


def bracket(sc, u, v):
    """[u, v] for coordinate vectors u, v."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.einsum("ijk,i,j->k", sc.c, u, v)


def ad_matrix(sc, i):
    """Matrix of ad_{Xi} (column j holds the coordinates of [Xi, X_{j+1}]).

    The basis index i is 1-based: ad_matrix(sc, 2) is ad_{X2}.
    """
    if not 1 <= i <= sc.dim:
        raise ValueError(f"basis index {i} out of range 1..{sc.dim}")
    return sc.c[i - 1].T.copy()


def jacobi_defect(sc):
    """Largest violation of the Jacobi identity over basis triples.

    Returns max over i<j<k of the sup-norm of
    [Xi,[Xj,Xk]] + [Xj,[Xk,Xi]] + [Xk,[Xi,Xj]]; zero for a Lie algebra.
    """
    c = sc.c
    worst = 0.0
    for i in range(sc.dim):
        for j in range(i + 1, sc.dim):
            for k in range(j + 1, sc.dim):
                cyc = c[j, k] @ c[i] + c[k, i] @ c[j] + c[i, j] @ c[k]
                worst = max(worst, float(np.max(np.abs(cyc))))
    return worst


def derived_subalgebra(sc, tol=1e-9):
    """Dimension and an orthonormal basis (rows) of span{[Xi, Xj]}."""
    rows = [sc.c[i, j] for i in range(sc.dim) for j in range(i + 1, sc.dim)]
    m = np.array(rows)
    if not m.any():
        return 0, np.zeros((0, sc.dim))
    u, s, vt = np.linalg.svd(m)
    r = int(np.count_nonzero(s > tol * max(1.0, s[0])))
    return r, vt[:r]


def mat_exp(m, t=1.0):
    """exp(t*m) by scaling and squaring with a fixed truncated series.

    The scaled norm is at most 1/2, where the degree-13 Taylor polynomial
    is accurate to full double precision; no eigendecomposition is used.
    """
    a = t * np.asarray(m, dtype=float)
    n = a.shape[0]
    norm = float(np.linalg.norm(a, np.inf))
    squarings = 0
    if norm > 0.5:
        squarings = int(np.ceil(np.log2(norm / 0.5)))
        a = a / (2.0**squarings)
    x = np.eye(n)
    term = np.eye(n)
    for k in range(1, 14):
        term = term @ a / k
        x = x + term
    for _ in range(squarings):
        x = x @ x
    return x


def numeric_rank(m, tol=1e-9):
    """Number of singular values exceeding tol * max(1, largest singular value)."""
    m = np.asarray(m)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol * max(1.0, float(s[0]))))
