# modules/linear_codes.py
"""
Grassmann, affine Grassmann and Schubert divisor codes with the brute-force
tools used to check claims about them: weights, subcode weights,
automorphism membership, permutation automorphism groups and code
equivalence.

A code is held as a read-only k x n generator matrix of integer-encoded
field elements. Codewords are row vectors x @ G.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from config.search_config import SearchConfig
from modules.exterior import index_positions, multi_index_list
from modules.galois_field import FieldAutomorphism, field_automorphisms
from modules.grassmannian import (
    big_cell_points, enumerate_grassmannian, enumerate_subspaces, gaussian_binomial, plucker_matrix,
    schubert_points, stratum,
)
from modules.matrix_ops import (
    Matrix, inverse_array, normalize_rows, projective_points, rank_array, rref_array,
)
from modules.permutation_group import Permutation
from modules.structure_search import ColumnSearch, shared_pair_ids
from utils.guards import check_guard

logger = logging.getLogger(__name__)

CODEWORD_CHUNK = 1024


@dataclass(eq=False)
class LinearCode:
    """
    A nondegenerate [n, k]_q code.

    ``labels`` name the columns (Grassmannian points for the geometric
    families); ``row_labels`` name the rows by Plücker multi-index when the
    rows are Plücker coordinates.
    """
    spec: object
    genmat: np.ndarray
    labels: tuple = None
    family: str = None
    params: tuple = None
    row_labels: tuple = None

    def __post_init__(self):
        G = np.array(self.genmat, dtype=np.int64)
        if G.ndim != 2:
            raise ValueError(f"generator matrix must be 2-D, got shape {G.shape}")
        k, n = G.shape
        if rank_array(self.spec, G) != k:
            raise ValueError(f"generator matrix of shape {G.shape} does not have full rank")
        if n and not np.all(G.any(axis=0)):
            zero = np.nonzero(~G.any(axis=0))[0].tolist()
            raise ValueError(f"degenerate code: zero columns {zero[:10]}")
        G.setflags(write=False)
        self.genmat = G
        self.labels = tuple(range(n)) if self.labels is None else tuple(self.labels)
        if len(self.labels) != n:
            raise ValueError(f"{len(self.labels)} column labels for {n} columns")
        if self.row_labels is not None and len(self.row_labels) != k:
            raise ValueError(f"{len(self.row_labels)} row labels for {k} rows")

    @property
    def k(self):
        return self.genmat.shape[0]

    @property
    def n(self):
        return self.genmat.shape[1]

    @property
    def q(self):
        return self.spec.q

    @property
    def matrix(self):
        return Matrix(self.spec, self.genmat)

    def __repr__(self):
        name = self.family or 'code'
        return f"LinearCode({name}, [{self.n}, {self.k}]_{self.q})"


# -----------------------------------------------------------------------------
# The three families
# -----------------------------------------------------------------------------

def _check_family_params(l, m):
    if not 1 < l < m:
        raise ValueError(f"need 1 < l < m, got l={l}, m={m}")


def big_cell_index(l, m):
    """I_0 = (m-l+1, ..., m)."""
    return tuple(range(m - l + 1, m + 1))


def grassmann_code(l, m, spec):
    _check_family_params(l, m)
    points = enumerate_grassmannian(l, m, spec)
    logger.info(f"Building Grassmann code C({l},{m}) over F_{spec.q} from {len(points)} points")
    return LinearCode(spec, plucker_matrix(points), tuple(points), 'grassmann', (l, m, spec.q),
                      multi_index_list(l, m))


def affine_grassmann_code(l, m, spec):
    """C^A(l, m): columns p_I / p_{I_0} over the big cell, row p_{I_0} first."""
    _check_family_params(l, m)
    points = big_cell_points(l, m, spec)
    coords = plucker_matrix(points)
    indices = multi_index_list(l, m)
    top = index_positions(l, m)[big_cell_index(l, m)]
    coords = spec.mul_table[spec.inv_table[coords[top]][None, :], coords]
    order = [top] + [i for i in range(len(indices)) if i != top]
    logger.info(f"Building affine Grassmann code C^A({l},{m}) over F_{spec.q} from {len(points)} points")
    return LinearCode(spec, coords[order], tuple(points), 'affine', (l, m, spec.q),
                      tuple(indices[i] for i in order))


def schubert_code(l, m, spec):
    """C_Omega(l, m): Plücker coordinates of the Schubert divisor with the p_{I_0} row removed."""
    _check_family_params(l, m)
    points = schubert_points(l, m, spec)
    coords = plucker_matrix(points)
    indices = multi_index_list(l, m)
    top = index_positions(l, m)[big_cell_index(l, m)]
    if coords[top].any():
        raise RuntimeError("Schubert divisor point with p_{I_0} != 0")
    keep = [i for i in range(len(indices)) if i != top]
    logger.info(f"Building Schubert code C_Omega({l},{m}) over F_{spec.q} from {len(points)} points")
    try:
        return LinearCode(spec, coords[keep], tuple(points), 'schubert', (l, m, spec.q),
                          tuple(indices[i] for i in keep))
    except ValueError as e:
        raise RuntimeError(f"degenerate Schubert projective system: {e}") from e


FAMILIES = {
    'grassmann': grassmann_code,
    'affine': affine_grassmann_code,
    'schubert': schubert_code,
}


def build_code(family, l, m, spec):
    if family not in FAMILIES:
        raise ValueError(f"unknown code family {family!r}; expected one of {sorted(FAMILIES)}")
    return FAMILIES[family](l, m, spec)


def expected_parameters(family, l, m, q):
    """Closed-form (n, k, d) where known; d is None for the Schubert divisor code."""
    k = comb(m, l)
    big = q ** (l * (m - l))
    total = gaussian_binomial(m, l, q)
    if family == 'grassmann':
        return total, k, big
    if family == 'affine':
        return big, k, None
    if family == 'schubert':
        return total - big, k - 1, None
    raise ValueError(f"unknown code family {family!r}")


# -----------------------------------------------------------------------------
# Codewords and weights
# -----------------------------------------------------------------------------

def _messages(spec, k, start, stop):
    """Message vectors with integer keys start..stop-1 (first coordinate most significant)."""
    codes = np.arange(start, stop, dtype=np.int64)
    weights = spec.q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return (codes[:, None] // weights[None, :]) % spec.q


def codewords(code, chunk=CODEWORD_CHUNK, guard=None):
    """Yield all q^k codewords as (chunk x n) arrays, zero word first."""
    guard = SearchConfig.CODEWORD_GUARD if guard is None else guard
    total = check_guard('codewords', code.q ** code.k, guard)
    for start in range(0, total, chunk):
        msgs = _messages(code.spec, code.k, start, min(start + chunk, total))
        yield code.spec.matmul(msgs, code.genmat)


def codeword_weight(c):
    return int(np.count_nonzero(np.asarray(c)))


def weight_distribution(code, guard=None):
    counts = np.zeros(code.n + 1, dtype=np.int64)
    for block in codewords(code, guard=guard):
        counts += np.bincount(np.count_nonzero(block, axis=1), minlength=code.n + 1)
    return {w: int(c) for w, c in enumerate(counts) if c}


def min_distance(code, guard=None):
    weights = [w for w in weight_distribution(code, guard=guard) if w > 0]
    return min(weights)


def parameters(code, guard=None):
    return code.n, code.k, min_distance(code, guard=guard)


# -----------------------------------------------------------------------------
# Subcode weights
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class SubcodeWeight:
    """Support size of a subcode computed directly and by averaging over its projective points."""
    support: int
    averaged: Fraction

    @property
    def agrees(self):
        return self.averaged == self.support


def _in_code(code, words):
    return rank_array(code.spec, np.vstack([code.genmat, words])) == code.k


def subcode_weight(code, basis):
    """
    ||D|| for the subcode spanned by the rows of ``basis``:
    |union of supports| and (1 / q^{r-1}) * sum of ||v|| over [v] in P(D).
    """
    D = np.asarray(basis, dtype=np.int64)
    if D.ndim == 1:
        D = D[None, :]
    if D.shape[1] != code.n:
        raise ValueError(f"subcode basis has {D.shape[1]} columns, code has {code.n}")
    r = D.shape[0]
    if rank_array(code.spec, D) != r:
        raise ValueError("subcode basis rows are linearly dependent")
    if not _in_code(code, D):
        raise ValueError("subcode basis rows are not codewords")
    support = int(np.count_nonzero(D.any(axis=0)))
    words = code.spec.matmul(projective_points(code.spec, r), D)
    averaged = Fraction(int(np.count_nonzero(words)), code.q ** (r - 1))
    return SubcodeWeight(support, averaged)


@dataclass(frozen=True)
class HigherWeight:
    r: int
    weight: int
    subcodes: int
    formula_agrees: bool


def higher_weight(code, r, guard=None, check_formula=True):
    """d_r: minimum support size over all r-dimensional subcodes (exhaustive)."""
    if not 1 <= r <= code.k:
        raise ValueError(f"need 1 <= r <= {code.k}, got {r}")
    guard = SearchConfig.CODEWORD_GUARD if guard is None else guard
    check_guard(f'{r}-dimensional subcodes', gaussian_binomial(code.k, r, code.q), guard)
    best = None
    count = 0
    agrees = True
    for U in enumerate_subspaces(r, code.k, code.spec):
        D = code.spec.matmul(U.basis, code.genmat)
        support = int(np.count_nonzero(D.any(axis=0)))
        if check_formula:
            agrees = agrees and subcode_weight(code, D).agrees
        best = support if best is None else min(best, support)
        count += 1
    logger.info(f"d_{r} of {code!r}: {best} over {count} subcodes (formula agrees: {agrees})")
    return HigherWeight(r, best, count, agrees)


# -----------------------------------------------------------------------------
# Automorphism membership
# -----------------------------------------------------------------------------

def _same_row_space(spec, G, H):
    k = rank_array(spec, G)
    return rank_array(spec, H) == k and rank_array(spec, np.vstack([G, H])) == k


def _images(sigma):
    return sigma.images if isinstance(sigma, Permutation) else np.asarray(sigma, dtype=np.int64)


def is_permutation_automorphism(code, sigma):
    """(c_{sigma(0)}, ..., c_{sigma(n-1)}) is a codeword for every codeword c."""
    images = _images(sigma)
    if images.size != code.n:
        raise ValueError(f"permutation of degree {images.size} on a code of length {code.n}")
    return _same_row_space(code.spec, code.genmat, code.genmat[:, images])


def _monomial_data(code, M):
    data = M.data if isinstance(M, Matrix) else np.asarray(M, dtype=np.int64)
    if data.shape != (code.n, code.n):
        raise ValueError(f"expected an {code.n}x{code.n} matrix, got {data.shape}")
    if not Matrix(code.spec, data).is_monomial():
        raise ValueError("matrix is not monomial")
    return data


def is_monomial_automorphism(code, M):
    """cM is a codeword for every codeword c."""
    data = _monomial_data(code, M)
    return _same_row_space(code.spec, code.genmat, code.spec.matmul(code.genmat, data))


def is_semilinear_automorphism(code, M, mu):
    """mu(cM) is a codeword for every codeword c."""
    data = _monomial_data(code, M)
    if mu.spec != code.spec:
        raise ValueError("field automorphism over a different field")
    return _same_row_space(code.spec, code.genmat, mu(code.spec.matmul(code.genmat, data)))


def monomial_matrix(spec, target, scalars):
    """n x n matrix with M[j, target[j]] = scalars[j]."""
    target = _images(target)
    M = np.zeros((target.size, target.size), dtype=np.int64)
    M[np.arange(target.size), target] = np.asarray(scalars, dtype=np.int64)
    return Matrix(spec, M)


# -----------------------------------------------------------------------------
# Support structure and permutation automorphisms
# -----------------------------------------------------------------------------

def support_profiles(codes, guard=None):
    """
    Per code an (n, n, W+1) array: entry [a, b, t] counts codewords of the t-th
    shared weight whose support contains both a and b; the last channel flags
    the diagonal. Weight classes are shared across all given codes.
    """
    dists = [weight_distribution(c, guard=guard) for c in codes]
    weights = sorted(set().union(*dists) - {0})
    slot = {w: t for t, w in enumerate(weights)}
    out = []
    for code in codes:
        n = code.n
        profile = np.zeros((n, n, len(weights) + 1), dtype=np.int64)
        for block in codewords(code, guard=guard):
            S = (block != 0)
            wts = S.sum(axis=1)
            for w in np.unique(wts):
                if w == 0:
                    continue
                Sw = S[wts == w].astype(np.float64)
                profile[:, :, slot[int(w)]] += np.rint(Sw.T @ Sw).astype(np.int64)
        profile[np.arange(n), np.arange(n), -1] = 1
        out.append(profile)
    return out, dists


def support_colors(codes, guard=None):
    """Shared (n, n) pair-color ids of the codes' support profiles, and their weight distributions."""
    profiles, dists = support_profiles(codes, guard=guard)
    return shared_pair_ids(*profiles), dists


def paut_brute_force(code, guard=None, max_nodes=None):
    """
    The group of coordinate permutations preserving the code. Candidate
    permutations come from a column search that places an information set
    and forces the rest, with a rank test at every leaf. Returns a PermGroup
    on the n columns.
    """
    guard = SearchConfig.PERMUTATION_GUARD if guard is None else guard
    check_guard('code length for permutation search', code.n, guard)
    (colors,), _ = support_colors([code])
    search = ColumnSearch(code.spec, code.genmat, pair_colors=(colors, colors), fixed_scalars=True,
                          leaf_test=lambda s: is_permutation_automorphism(code, s), max_nodes=max_nodes)
    group, orbits = search.automorphism_group()
    logger.info(f"PAut of {code!r}: order {group.order()} (orbits {orbits}, {search.nodes} nodes)")
    return group


# -----------------------------------------------------------------------------
# Equivalence
# -----------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class EquivalenceWitness:
    """
    The semilinear isometry T(c)[i] = scalars[i] * mu(c[source[i]]).

    ``source`` is a Permutation, ``scalars`` nonzero field elements indexed by
    target position.
    """
    source: Permutation
    scalars: np.ndarray
    mu: FieldAutomorphism

    def apply(self, words):
        words = np.asarray(words, dtype=np.int64)
        spec = self.mu.spec
        return spec.mul_table[np.asarray(self.scalars)[None, :], self.mu(words)[:, self.source.images]]

    def monomial_matrix(self):
        """M with T(c) = mu(c M)."""
        spec = self.mu.spec
        inv = self.mu.inverse()
        n = self.source.degree
        M = np.zeros((n, n), dtype=np.int64)
        M[self.source.images, np.arange(n)] = inv(np.asarray(self.scalars, dtype=np.int64))
        return Matrix(spec, M)


def apply_equivalence(code, witness):
    labels = tuple(code.labels[j] for j in witness.source.images)
    return LinearCode(code.spec, witness.apply(code.genmat), labels,
                      f"{code.family or 'code'}-transformed", code.params)


def _sorted_rows(arr):
    return arr[np.lexsort(arr.T[::-1])]


def verify_witness(source, target, witness, exhaustive=False, guard=None):
    """
    T(source) == target as row spaces; with ``exhaustive`` also that T is a
    weight-preserving bijection between the two codeword sets.
    """
    if source.spec != target.spec or source.n != target.n or source.k != target.k:
        return False
    image = witness.apply(source.genmat)
    if not _same_row_space(source.spec, image, target.genmat):
        return False
    if not exhaustive:
        return True
    src_words = np.vstack(list(codewords(source, guard=guard)))
    dst_words = np.vstack(list(codewords(target, guard=guard)))
    mapped = witness.apply(src_words)
    if not np.array_equal(np.count_nonzero(mapped, axis=1), np.count_nonzero(src_words, axis=1)):
        return False
    return bool(np.array_equal(_sorted_rows(mapped), _sorted_rows(dst_words)))


def _solve_scalars(spec, X, Y, sigma):
    """
    Nonzero s with row space of H == row space of Y, where H[:, sigma(j)] = s_j X[:, j].
    Returns s or None.
    """
    k, n = X.shape
    red, pivots = rref_array(spec, X)
    B = list(pivots)
    if len(B) != k:
        return None
    Cx = red[:k]
    Ys = Y[:, sigma]
    YB = Ys[:, B]
    if rank_array(spec, YB) != k:
        return None
    Dm = spec.matmul(inverse_array(spec, YB), Ys)
    if not np.array_equal(Dm != 0, Cx != 0):
        return None

    # s_j = ratio[b, j] * t_b, t_b = s_{B[b]}
    ratio = spec.mul_table[Dm, spec.inv_table[Cx]]
    row_val = [None] * k
    col_val = [None] * n
    for root in range(k):
        if row_val[root] is not None:
            continue
        row_val[root] = 1
        queue = [('r', root)]
        while queue:
            kind, idx = queue.pop()
            if kind == 'r':
                t = row_val[idx]
                for j in np.nonzero(Cx[idx])[0]:
                    s = int(spec.mul_table[ratio[idx, j], t])
                    if col_val[j] is None:
                        col_val[j] = s
                        queue.append(('c', int(j)))
                    elif col_val[j] != s:
                        return None
            else:
                s = col_val[idx]
                for b in np.nonzero(Cx[:, idx])[0]:
                    t = int(spec.mul_table[spec.inv_table[ratio[b, idx]], s])
                    if row_val[b] is None:
                        row_val[b] = t
                        queue.append(('r', int(b)))
                    elif row_val[b] != t:
                        return None
    if any(v is None for v in col_val):
        return None
    s = np.array(col_val, dtype=np.int64)
    H = np.zeros_like(X)
    H[:, sigma] = spec.mul_table[s[None, :], X]
    if not _same_row_space(spec, H, Y):
        return None
    return s


def codes_equivalent(source, target, guard=None, max_nodes=None):
    """
    A witness T with T(source) == target, or None when the codes are not
    semilinearly-monomially equivalent. Tries every field automorphism; for
    each, a column search matches an information set of the source and
    forces the remaining columns.
    """
    if source.spec != target.spec:
        raise ValueError(f"codes over different fields: {source.spec} vs {target.spec}")
    if (source.n, source.k) != (target.n, target.k):
        return None
    guard = SearchConfig.EQUIVALENCE_GUARD if guard is None else guard
    check_guard('code length for equivalence search', source.n, guard)
    spec = source.spec
    colors, dists = support_colors([source, target])
    if dists[0] != dists[1]:
        logger.debug("Weight distributions differ; codes are not equivalent")
        return None

    for mu in field_automorphisms(spec):
        X = mu(source.genmat)
        found = {}

        def leaf_test(sigma, X=X, found=found):
            s = _solve_scalars(spec, X, target.genmat, sigma)
            if s is None:
                return False
            found['s'] = s
            return True

        search = ColumnSearch(spec, X, target.genmat, pair_colors=colors, leaf_test=leaf_test, max_nodes=max_nodes)
        sigma = search.first()
        if sigma is None:
            continue
        source_perm = Permutation(sigma).inverse()
        scalars = found['s'][source_perm.images]
        witness = EquivalenceWitness(source_perm, scalars, mu)
        logger.debug(f"Equivalence found with mu = x^(p^{mu.exponent}) after {search.nodes} nodes")
        return witness
    return None


def random_invertible(spec, k, rng):
    while True:
        A = rng.integers(0, spec.q, size=(k, k), dtype=np.int64)
        if rank_array(spec, A) == k:
            return A


def random_monomial_transform(code, rng):
    """
    A random semilinear isometric image of the code, with a random change of
    generator basis. Returns (image code, witness).
    """
    spec = code.spec
    source = Permutation(rng.permutation(code.n))
    scalars = rng.integers(1, spec.q, size=code.n, dtype=np.int64)
    mu = field_automorphisms(spec)[int(rng.integers(0, spec.e))]
    witness = EquivalenceWitness(source, scalars, mu)
    image = spec.matmul(random_invertible(spec, code.k, rng), witness.apply(code.genmat))
    return LinearCode(spec, image, None, f"{code.family or 'code'}-transformed", code.params), witness


def random_code(spec, k, n, rng):
    while True:
        G = rng.integers(0, spec.q, size=(k, n), dtype=np.int64)
        if G.any(axis=0).all() and rank_array(spec, G) == k:
            return LinearCode(spec, G, None, 'random')


def random_inequivalent_code(code, rng, attempts=200, guard=None):
    """A random code of the same length and dimension with a different weight distribution."""
    target = weight_distribution(code, guard=guard)
    for _ in range(attempts):
        candidate = random_code(code.spec, code.k, code.n, rng)
        if weight_distribution(candidate, guard=guard) != target:
            return candidate
    raise RuntimeError(f"no random code with a different weight distribution in {attempts} attempts")


def puncture(code, columns):
    """Delete ``columns``; a dimension drop is logged, not raised."""
    drop = set(int(c) for c in columns)
    if any(c < 0 or c >= code.n for c in drop):
        raise ValueError(f"column index out of range for length {code.n}")
    keep = [j for j in range(code.n) if j not in drop]
    red, pivots = rref_array(code.spec, code.genmat[:, keep])
    if len(pivots) < code.k:
        logger.warning(f"Puncturing {len(drop)} columns of {code!r} drops the dimension to {len(pivots)}")
    family = f"{code.family or 'code'}-punctured"
    return LinearCode(code.spec, red[:len(pivots)], tuple(code.labels[j] for j in keep), family, code.params)


def normalized_columns(code):
    """Columns scaled so their first nonzero entry is 1 (n x k)."""
    return normalize_rows(code.spec, code.genmat.T)


def big_cell_puncture(code):
    """C(l, m) restricted to the big cell: every column off stratum 0 deleted."""
    l, m, _ = code.params
    return puncture(code, [j for j, gamma in enumerate(code.labels) if stratum(gamma, l, m) != 0])
