# modules/matrix_ops.py
"""
Dense matrices and semilinear maps over F_q.

Entries are integer encodings (see modules.galois_field) held in int64 numpy
arrays; every operation goes through the field's lookup tables so results are
exact. The array-level helpers (``rref_array``, ``nullspace_array``, ...) are
used directly by the geometry and code modules, the ``Matrix`` class wraps
them for the public API.
"""

import re
import logging
from dataclasses import dataclass

import numpy as np

from modules.galois_field import (
    FieldElement, FieldAutomorphism, format_element, parse_element,
)

logger = logging.getLogger(__name__)

_ENTRY_REGEX = re.compile(r"\[[^\]]*\]|[^,\s]+")


# -----------------------------------------------------------------------------
# Array-level helpers
# -----------------------------------------------------------------------------

def rref_array(spec, arr):
    """Reduced row echelon form of an integer-encoded 2-D array. Returns (array, pivots)."""
    a = np.array(arr, dtype=np.int64, copy=True)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D array, got shape {a.shape}")
    rows, cols = a.shape
    add, mul, neg, inv = spec.add_table, spec.mul_table, spec.neg_table, spec.inv_table
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = mul[inv[a[r, c]], a[r]]
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            factors = neg[a[others, c]]
            a[others] = add[a[others], mul[factors[:, None], a[r][None, :]]]
        pivots.append(c)
        r += 1
    return a, tuple(pivots)


def rank_array(spec, arr):
    arr = np.asarray(arr, dtype=np.int64)
    if arr.size == 0:
        return 0
    return len(rref_array(spec, arr)[1])


def nullspace_array(spec, arr):
    """Basis (as rows) of {x : arr @ x = 0}."""
    arr = np.asarray(arr, dtype=np.int64)
    cols = arr.shape[1]
    if arr.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    red, pivots = rref_array(spec, arr)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = spec.neg_table[red[r, f]]
    return basis


def det_array(spec, arr):
    a = np.array(arr, dtype=np.int64, copy=True)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"determinant needs a square matrix, got {a.shape}")
    add, mul, neg, inv = spec.add_table, spec.mul_table, spec.neg_table, spec.inv_table
    d = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        piv = c + int(nz[0])
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            d = int(neg[d])
        d = int(mul[d, a[c, c]])
        below = c + 1 + np.nonzero(a[c + 1:, c])[0]
        if below.size:
            factors = mul[neg[a[below, c]], inv[a[c, c]]]
            a[below] = add[a[below], mul[factors[:, None], a[c][None, :]]]
    return d


def inverse_array(spec, arr):
    arr = np.asarray(arr, dtype=np.int64)
    n = arr.shape[0]
    if arr.shape != (n, n):
        raise ValueError(f"inverse needs a square matrix, got {arr.shape}")
    red, pivots = rref_array(spec, np.hstack([arr, np.eye(n, dtype=np.int64)]))
    if pivots[:n] != tuple(range(n)):
        raise ValueError("matrix is singular")
    return red[:, n:]


def normalize_rows(spec, arr):
    """Scale every row so its first nonzero entry is 1; zero rows stay zero."""
    arr = np.asarray(arr, dtype=np.int64)
    if arr.size == 0:
        return arr.copy()
    lead = arr[np.arange(arr.shape[0]), np.argmax(arr != 0, axis=1)]
    return spec.mul_table[spec.inv_table[lead][:, None], arr]


def all_vectors(spec, k):
    """All q^k vectors of F_q^k as rows, first coordinate most significant."""
    q = spec.q
    codes = np.arange(q ** k, dtype=np.int64)
    weights = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return (codes[:, None] // weights[None, :]) % q


def projective_points(spec, k):
    """Normalized representatives of the points of P^{k-1}(F_q), in all_vectors order."""
    vecs = all_vectors(spec, k)[1:]
    lead = vecs[np.arange(len(vecs)), np.argmax(vecs != 0, axis=1)]
    return vecs[lead == 1]


def encode_rows(spec, arr):
    """Integer key per row (base-q digits, first coordinate most significant)."""
    arr = np.asarray(arr, dtype=np.int64)
    k = arr.shape[1]
    weights = spec.q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return arr @ weights


# -----------------------------------------------------------------------------
# Matrix
# -----------------------------------------------------------------------------

class Matrix:
    """Immutable matrix over a FieldSpec with integer-encoded entries."""

    def __init__(self, spec, entries):
        data = np.array(entries, dtype=np.int64)
        if data.ndim == 1 and data.size == 0:
            data = data.reshape(0, 0)
        if data.ndim != 2:
            raise ValueError(f"matrix entries must be 2-D, got shape {data.shape}")
        if data.size and (data.min() < 0 or data.max() >= spec.q):
            raise ValueError(f"entries out of range for {spec}")
        data.setflags(write=False)
        self.spec = spec
        self.data = data

    @classmethod
    def identity(cls, spec, n):
        return cls(spec, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, spec, rows, cols):
        return cls(spec, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def diagonal(cls, spec, values):
        values = [int(v) for v in values]
        return cls(spec, np.diag(np.array(values, dtype=np.int64)))

    @classmethod
    def from_rows(cls, spec, rows):
        """Build from nested lists of ints or FieldElements (prime-field ints are reduced mod p)."""
        data = []
        for row in rows:
            out = []
            for x in row:
                if isinstance(x, FieldElement):
                    out.append(x.value)
                elif spec.e == 1:
                    out.append(int(x) % spec.p)
                else:
                    out.append(int(x))
            data.append(out)
        return cls(spec, np.array(data, dtype=np.int64).reshape(len(data), -1))

    @classmethod
    def from_text(cls, spec, text):
        """Parse 'a,b;c,d' with gf element syntax per entry."""
        rows = [r for r in text.strip().split(';') if r.strip()]
        data = [[parse_element(spec, tok).value for tok in _ENTRY_REGEX.findall(r)] for r in rows]
        if len({len(r) for r in data}) > 1:
            raise ValueError(f"ragged matrix text: {text!r}")
        return cls(spec, np.array(data, dtype=np.int64).reshape(len(data), -1))

    def to_text(self):
        return ';'.join(
            ','.join(format_element(FieldElement(self.spec, int(x))) for x in row)
            for row in self.data
        )

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    @property
    def T(self):
        return Matrix(self.spec, self.data.T)

    def __getitem__(self, idx):
        i, j = idx
        return FieldElement(self.spec, int(self.data[i, j]))

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if other.spec != self.spec:
                raise ValueError(f"spec mismatch: {self.spec} vs {other.spec}")
            return Matrix(self.spec, self.spec.matmul(self.data, other.data))
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.spec == other.spec and self.data.shape == other.data.shape
                and bool(np.array_equal(self.data, other.data)))

    def __hash__(self):
        return hash((self.spec, self.data.shape, self.data.tobytes()))

    def __repr__(self):
        return f"Matrix({self.spec}, {self.rows}x{self.cols}, '{self.to_text()}')"

    def scale(self, c):
        c = c.value if isinstance(c, FieldElement) else int(c)
        return Matrix(self.spec, self.spec.scale(c, self.data))

    def apply_automorphism(self, mu):
        return Matrix(self.spec, mu(self.data))

    def is_square(self):
        return self.rows == self.cols

    def is_monomial(self):
        """Exactly one nonzero entry in every row and every column."""
        nz = self.data != 0
        return self.is_square() and bool(np.all(nz.sum(axis=0) == 1)) and bool(np.all(nz.sum(axis=1) == 1))


def rref(M):
    red, pivots = rref_array(M.spec, M.data)
    return Matrix(M.spec, red), pivots, len(pivots)


def rank(M):
    return rank_array(M.spec, M.data)


def nullspace(M):
    return Matrix(M.spec, nullspace_array(M.spec, M.data))


def det(M):
    return FieldElement(M.spec, det_array(M.spec, M.data))


def inverse(M):
    return Matrix(M.spec, inverse_array(M.spec, M.data))


def transpose(M):
    return M.T


def inverse_transpose(M):
    return Matrix(M.spec, inverse_array(M.spec, M.data).T)


def antidiagonal(spec, m):
    """kappa: ones on the antidiagonal, e_i -> e_{m-i+1}."""
    return Matrix(spec, np.fliplr(np.eye(m, dtype=np.int64)))


def tilde_inverse_transpose(M):
    """kappa A^{-t} kappa^{-1}; defined for even size."""
    if not M.is_square() or M.rows % 2:
        raise ValueError(f"tilde inverse transpose needs an even square matrix, got {M.shape}")
    kappa = antidiagonal(M.spec, M.rows)
    # kappa is its own inverse
    return kappa @ inverse_transpose(M) @ kappa


def gl_order(m, q):
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    order = 1
    for i in range(m):
        order *= q ** m - q ** i
    return order


def parabolic_order(a, b, q):
    """|P_{a,b}(q)| = |GL(a,q)| |GL(b,q)| q^{ab}."""
    return gl_order(a, q) * gl_order(b, q) * q ** (a * b)


# -----------------------------------------------------------------------------
# Semilinear maps
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class SemilinearMap:
    """x -> A mu(x) on column vectors."""
    matrix: Matrix
    mu: FieldAutomorphism

    def __post_init__(self):
        if not self.matrix.is_square():
            raise ValueError(f"semilinear map needs a square matrix, got {self.matrix.shape}")
        if self.mu.spec != self.matrix.spec:
            raise ValueError("field automorphism and matrix live over different fields")
        if det_array(self.matrix.spec, self.matrix.data) == 0:
            raise ValueError("semilinear map needs an invertible matrix")

    @classmethod
    def linear(cls, matrix):
        return cls(matrix, FieldAutomorphism(matrix.spec, 0))

    @classmethod
    def identity(cls, spec, k):
        return cls.linear(Matrix.identity(spec, k))

    @property
    def spec(self):
        return self.matrix.spec

    @property
    def dim(self):
        return self.matrix.rows

    @property
    def is_linear(self):
        return self.mu.is_identity

    def apply(self, vectors):
        """Apply to rows of ``vectors`` (N x k array): rows map to (A mu(v))^t."""
        vectors = np.asarray(vectors, dtype=np.int64)
        single = vectors.ndim == 1
        rows = vectors[None, :] if single else vectors
        out = self.spec.matmul(self.mu(rows), self.matrix.data.T)
        return out[0] if single else out

    def compose(self, other):
        """self o other = (A mu(B), mu nu)."""
        return SemilinearMap(
            self.matrix @ other.matrix.apply_automorphism(self.mu),
            self.mu.compose(other.mu),
        )

    def inverse(self):
        mu_inv = self.mu.inverse()
        return SemilinearMap(inverse(self.matrix).apply_automorphism(mu_inv), mu_inv)

    def __eq__(self, other):
        if not isinstance(other, SemilinearMap):
            return NotImplemented
        return self.matrix == other.matrix and self.mu == other.mu

    def __hash__(self):
        return hash((self.matrix, self.mu.exponent))
