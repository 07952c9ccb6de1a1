# modules/exterior.py
"""
Exterior powers of F_q^m in the basis {e_I : I in I(l, m)}.

Multi-indices are 1-based, strictly increasing tuples listed lexicographically.
Matrices act on column coordinate vectors, so column J of a compound matrix is
the image of e_J.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from modules.galois_field import FieldElement, format_element
from modules.matrix_ops import Matrix, antidiagonal, det_array

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def multi_index_list(l, m):
    """All C(m, l) multi-indices of length l in [1, m], lexicographic."""
    if l < 0 or m < 0 or l > m:
        raise ValueError(f"need 0 <= l <= m, got l={l}, m={m}")
    return tuple(itertools.combinations(range(1, m + 1), l))


@lru_cache(maxsize=None)
def index_positions(l, m):
    return {I: pos for pos, I in enumerate(multi_index_list(l, m))}


def complement(I, m):
    members = set(I)
    return tuple(i for i in range(1, m + 1) if i not in members)


def permutation_sign(seq):
    inversions = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return -1 if inversions % 2 else 1


def sign_complement(I, m):
    """sgn of the permutation (1..m) -> (I, I°)."""
    I = tuple(I)
    if any(i < 1 or i > m for i in I) or list(I) != sorted(set(I)):
        raise ValueError(f"invalid multi-index {I} for m={m}")
    return permutation_sign(I + complement(I, m))


def _signed(spec, sign):
    return 1 if sign > 0 else int(spec.neg_table[1])


@dataclass(frozen=True)
class ExteriorVector:
    """Coordinates of an element of the l-th exterior power in canonical order."""
    l: int
    m: int
    spec: object
    coords: np.ndarray

    def __post_init__(self):
        coords = np.array(self.coords, dtype=np.int64).reshape(-1)
        if coords.size != comb(self.m, self.l):
            raise ValueError(f"expected {comb(self.m, self.l)} coordinates for l={self.l}, m={self.m}, got {coords.size}")
        coords.setflags(write=False)
        object.__setattr__(self, 'coords', coords)

    @classmethod
    def zero(cls, l, m, spec):
        return cls(l, m, spec, np.zeros(comb(m, l), dtype=np.int64))

    def __getitem__(self, I):
        return FieldElement(self.spec, int(self.coords[index_positions(self.l, self.m)[tuple(I)]]))

    def __add__(self, other):
        self._check(other)
        return ExteriorVector(self.l, self.m, self.spec, self.spec.add_table[self.coords, other.coords])

    def __neg__(self):
        return ExteriorVector(self.l, self.m, self.spec, self.spec.neg_table[self.coords])

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, ExteriorVector):
            return NotImplemented
        return ((self.l, self.m, self.spec) == (other.l, other.m, other.spec)
                and bool(np.array_equal(self.coords, other.coords)))

    def __hash__(self):
        return hash((self.l, self.m, self.spec, self.coords.tobytes()))

    def _check(self, other):
        if (self.l, self.m, self.spec) != (other.l, other.m, other.spec):
            raise ValueError("exterior vectors of different grade, ambient dimension or field")

    def scale(self, c):
        c = c.value if isinstance(c, FieldElement) else int(c)
        return ExteriorVector(self.l, self.m, self.spec, self.spec.scale(c, self.coords))

    def is_zero(self):
        return not self.coords.any()

    def support(self):
        indices = multi_index_list(self.l, self.m)
        return [indices[i] for i in np.nonzero(self.coords)[0]]

    def normalized(self):
        """Projective representative: first nonzero coordinate equal to 1."""
        if self.is_zero():
            raise ValueError("the zero vector has no projective representative")
        lead = int(self.coords[np.nonzero(self.coords)[0][0]])
        return self.scale(int(self.spec.inv_table[lead]))

    def to_text(self):
        header = f"l={self.l},m={self.m},q={self.spec.q}"
        body = ",".join(format_element(FieldElement(self.spec, int(c))) for c in self.coords)
        return f"{header}\n{body}"


def exterior_basis_vector(I, m, spec):
    I = tuple(I)
    v = np.zeros(comb(m, len(I)), dtype=np.int64)
    v[index_positions(len(I), m)[I]] = 1
    return ExteriorVector(len(I), m, spec, v)


def vector_as_exterior(spec, v):
    v = np.asarray([x.value if isinstance(x, FieldElement) else int(x) for x in v], dtype=np.int64)
    return ExteriorVector(1, v.size, spec, v)


# -----------------------------------------------------------------------------
# Minors and compound matrices
# -----------------------------------------------------------------------------

def maximal_minors(spec, basis):
    """The l x l minors of an l x m array on every column multi-index (Plücker coordinates)."""
    basis = np.asarray(basis, dtype=np.int64)
    l, m = basis.shape
    return np.array([det_array(spec, basis[:, [i - 1 for i in I]]) for I in multi_index_list(l, m)],
                    dtype=np.int64)


def compound_matrix(A, l):
    """l-th compound: entry (I, J) is the minor of A on rows I and columns J."""
    if not A.is_square():
        raise ValueError(f"compound matrix needs a square matrix, got {A.shape}")
    m = A.rows
    if not 1 <= l <= m:
        raise ValueError(f"need 1 <= l <= m, got l={l}, m={m}")
    indices = multi_index_list(l, m)
    data = A.data
    out = np.zeros((len(indices), len(indices)), dtype=np.int64)
    for a, I in enumerate(indices):
        rows = data[[i - 1 for i in I]]
        for b, J in enumerate(indices):
            out[a, b] = det_array(A.spec, rows[:, [j - 1 for j in J]])
    return Matrix(A.spec, out)


# -----------------------------------------------------------------------------
# Hodge star and kappa
# -----------------------------------------------------------------------------

def hodge_star_matrix(l, m, spec):
    """Matrix of e_I -> sgn(I I°) e_{I°}, from grade l to grade m - l."""
    if not 1 <= l <= m - 1:
        raise ValueError(f"Hodge star needs 1 <= l <= m-1, got l={l}, m={m}")
    source = multi_index_list(l, m)
    target = index_positions(m - l, m)
    out = np.zeros((len(target), len(source)), dtype=np.int64)
    for col, I in enumerate(source):
        out[target[complement(I, m)], col] = _signed(spec, sign_complement(I, m))
    return Matrix(spec, out)


def kappa_matrix(m, spec):
    return antidiagonal(spec, m)


def tilde_star(l, spec):
    """(wedge^l kappa) o star_l on wedge^l F^{2l}."""
    m = 2 * l
    return compound_matrix(kappa_matrix(m, spec), l) @ hodge_star_matrix(l, m, spec)


# -----------------------------------------------------------------------------
# Wedge and interior products
# -----------------------------------------------------------------------------

def _merge_sign(I, J):
    """Sign of sorting the concatenation I + J (both increasing, disjoint)."""
    return permutation_sign(I + J)


def wedge(u, v):
    if u.m != v.m or u.spec != v.spec:
        raise ValueError("wedge needs vectors over the same space")
    r, s, m, spec = u.l, v.l, u.m, u.spec
    if r + s > m:
        raise ValueError(f"grade {r}+{s} exceeds ambient dimension {m}")
    out = np.zeros(comb(m, r + s), dtype=np.int64)
    positions = index_positions(r + s, m)
    src_u, src_v = multi_index_list(r, m), multi_index_list(s, m)
    for a in np.nonzero(u.coords)[0]:
        I = src_u[a]
        for b in np.nonzero(v.coords)[0]:
            J = src_v[b]
            if set(I) & set(J):
                continue
            coeff = int(spec.mul_table[u.coords[a], v.coords[b]])
            if _merge_sign(I, J) < 0:
                coeff = int(spec.neg_table[coeff])
            pos = positions[tuple(sorted(I + J))]
            out[pos] = spec.add_table[out[pos], coeff]
    return ExteriorVector(r + s, m, spec, out)


def interior_mult(omega, xi):
    """
    Contraction iota_omega(xi), defined by <nu, iota_omega xi> = <omega ^ nu, xi>.

    ``omega`` is a basis covector index i (1-based, for e^i) or a length-m
    coefficient sequence of a linear functional.
    """
    r, m, spec = xi.l, xi.m, xi.spec
    if r < 1:
        raise ValueError("interior multiplication needs grade >= 1")
    if isinstance(omega, (int, np.integer)):
        functional = np.zeros(m, dtype=np.int64)
        functional[int(omega) - 1] = 1
    else:
        functional = np.asarray([x.value if isinstance(x, FieldElement) else int(x) for x in omega],
                                dtype=np.int64)
        if functional.size != m:
            raise ValueError(f"functional has {functional.size} coefficients, expected {m}")
    out = np.zeros(comb(m, r - 1), dtype=np.int64)
    positions = index_positions(r - 1, m)
    indices = multi_index_list(r, m)
    for a in np.nonzero(xi.coords)[0]:
        I = indices[a]
        for t, i in enumerate(I):
            w = int(functional[i - 1])
            if not w:
                continue
            coeff = int(spec.mul_table[w, xi.coords[a]])
            if t % 2:
                coeff = int(spec.neg_table[coeff])
            pos = positions[I[:t] + I[t + 1:]]
            out[pos] = spec.add_table[out[pos], coeff]
    return ExteriorVector(r - 1, m, spec, out)


def apply_matrix(M, xi, grade=None):
    """M acting on the coordinate column of xi; ``grade`` is the grade of the result (default xi.l)."""
    if M.cols != xi.coords.size:
        raise ValueError(f"matrix with {M.cols} columns cannot act on {xi.coords.size} coordinates")
    out = M.spec.matmul(M.data, xi.coords[:, None])[:, 0]
    return ExteriorVector(xi.l if grade is None else grade, xi.m, xi.spec, out)


def plucker_relations_hold(xi):
    """
    Quadratic Plücker relations for grade 2:
    p_ij p_kl - p_ik p_jl + p_il p_jk = 0 for all i<j<k<l.
    """
    if xi.l != 2:
        raise ValueError("only the grade-2 relations are implemented")
    spec = xi.spec
    mul, add, neg = spec.mul_table, spec.add_table, spec.neg_table

    def p(a, b):
        return int(xi.coords[index_positions(2, xi.m)[(a, b)]])

    for i, j, k, l in itertools.combinations(range(1, xi.m + 1), 4):
        value = add[add[mul[p(i, j), p(k, l)], neg[mul[p(i, k), p(j, l)]]], mul[p(i, l), p(j, k)]]
        if value:
            return False
    return True
