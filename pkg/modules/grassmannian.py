# modules/grassmannian.py
"""
Points, lines and maximal linear subspaces of the Grassmannian G(l, m)(F_q),
its big cell W_0 and the Schubert divisor Omega = G \\ W_0.

Subspaces are stored as canonical RREF bases; V_{m-l} is span(e_1, ..., e_{m-l}).
Point lists are sorted by (pivot columns, entries), which fixes the column
order of every code built on top of them.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from modules.exterior import ExteriorVector, maximal_minors
from modules.matrix_ops import (
    all_vectors, normalize_rows, nullspace_array, projective_points, rref_array,
)

logger = logging.getLogger(__name__)

PIECE_KINDS = ('pi_beta', 'pi_delta', 'tilde_pi_beta', 'tilde_pi_delta')


# -----------------------------------------------------------------------------
# Subspaces
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^m given by its RREF basis rows."""
    spec: object
    m: int
    rows: tuple

    @classmethod
    def span(cls, spec, vectors, m=None):
        vectors = np.asarray(vectors, dtype=np.int64)
        if vectors.ndim == 1:
            vectors = vectors.reshape(1, -1) if vectors.size else vectors.reshape(0, m or 0)
        m = vectors.shape[1] if m is None else m
        if vectors.shape[0] == 0:
            return cls(spec, m, ())
        red, pivots = rref_array(spec, vectors)
        return cls(spec, m, tuple(tuple(int(x) for x in row) for row in red[:len(pivots)]))

    @classmethod
    def coordinate(cls, spec, m, indices):
        """span(e_i : i in indices), 1-based."""
        basis = np.zeros((len(indices), m), dtype=np.int64)
        for r, i in enumerate(sorted(indices)):
            basis[r, i - 1] = 1
        return cls.span(spec, basis, m)

    @property
    def dim(self):
        return len(self.rows)

    @cached_property
    def basis(self):
        out = np.array(self.rows, dtype=np.int64).reshape(len(self.rows), self.m)
        out.setflags(write=False)
        return out

    @cached_property
    def pivots(self):
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.rows)

    @property
    def sort_key(self):
        return (self.pivots, self.rows)

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def contains_vectors(self, vectors):
        """True when every row of ``vectors`` lies in the subspace."""
        vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, self.m)
        if vectors.shape[0] == 0:
            return True
        if self.dim == 0:
            return not vectors.any()
        spec = self.spec
        proj = spec.matmul(vectors[:, list(self.pivots)], self.basis)
        return bool(np.array_equal(proj, vectors))

    def __repr__(self):
        return f"Subspace({';'.join(','.join(map(str, r)) for r in self.rows)})"


def contains(U, W):
    """W is a subspace of U."""
    return W.dim <= U.dim and U.contains_vectors(W.basis)


def subspace_sum(U, W):
    return Subspace.span(U.spec, np.vstack([U.basis, W.basis]), U.m)


def subspace_intersection(U, W):
    """Kernel of the stacked annihilators of U and W."""
    spec, m = U.spec, U.m
    ann = np.vstack([nullspace_array(spec, U.basis) if U.dim else np.eye(m, dtype=np.int64),
                     nullspace_array(spec, W.basis) if W.dim else np.eye(m, dtype=np.int64)])
    return Subspace.span(spec, nullspace_array(spec, ann), m)


def gaussian_binomial(m, r, q):
    if r < 0 or r > m:
        return 0
    num, den = 1, 1
    for i in range(r):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def projective_count(d, q):
    """|P^d(F_q)|; zero for d < 0."""
    return (q ** (d + 1) - 1) // (q - 1) if d >= 0 else 0


@lru_cache(maxsize=None)
def enumerate_subspaces(r, m, spec):
    """All r-dimensional subspaces of F_q^m, ordered by pivot columns then entries."""
    if not 0 <= r <= m:
        raise ValueError(f"need 0 <= r <= m, got r={r}, m={m}")
    out = []
    q = spec.q
    for pivots in itertools.combinations(range(m), r):
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, m) if j not in pivots]
        for values in itertools.product(range(q), repeat=len(free)):
            basis = [[0] * m for _ in range(r)]
            for i, p in enumerate(pivots):
                basis[i][p] = 1
            for (i, j), v in zip(free, values):
                basis[i][j] = v
            out.append(Subspace(spec, m, tuple(tuple(row) for row in basis)))
    return tuple(out)


def _check_lm(l, m):
    if not 1 < l < m:
        raise ValueError(f"need 1 < l < m, got l={l}, m={m}")


def enumerate_grassmannian(l, m, spec):
    _check_lm(l, m)
    points = enumerate_subspaces(l, m, spec)
    logger.debug(f"G({l},{m})(F_{spec.q}): {len(points)} points")
    return list(points)


def subspaces_of(U, r):
    out = [Subspace.span(U.spec, U.spec.matmul(np.array(S.rows, dtype=np.int64).reshape(r, U.dim), U.basis), U.m)
           for S in enumerate_subspaces(r, U.dim, U.spec)]
    return sorted(out)


def superspaces_of(U, r):
    return [W for W in enumerate_subspaces(r, U.m, U.spec) if contains(W, U)]


# -----------------------------------------------------------------------------
# Plücker embedding
# -----------------------------------------------------------------------------

def plucker_coords(gamma):
    if gamma.dim == 0:
        raise ValueError("the zero subspace has no Plücker point")
    return normalize_rows(gamma.spec, maximal_minors(gamma.spec, gamma.basis)[None, :])[0]


def plucker(gamma):
    return ExteriorVector(gamma.dim, gamma.m, gamma.spec, plucker_coords(gamma))


@lru_cache(maxsize=None)
def _plucker_lookup(l, m, spec):
    return {plucker_coords(g).tobytes(): g for g in enumerate_subspaces(l, m, spec)}


def is_decomposable(xi):
    """The subspace whose Plücker point is [xi], or None."""
    if xi.is_zero():
        raise ValueError("the zero vector is not a projective point")
    if xi.l in (0, xi.m):
        return Subspace.span(xi.spec, np.eye(xi.m, dtype=np.int64)[:xi.l], xi.m)
    key = normalize_rows(xi.spec, xi.coords[None, :])[0].astype(np.int64).tobytes()
    return _plucker_lookup(xi.l, xi.m, xi.spec).get(key)


def plucker_matrix(points):
    """Normalized Plücker coordinates of each point as columns (k x n)."""
    return np.array([plucker_coords(g) for g in points], dtype=np.int64).T


# -----------------------------------------------------------------------------
# Strata, big cell, Schubert divisor
# -----------------------------------------------------------------------------

@lru_cache(maxsize=None)
def v_sub(l, m, spec):
    """V_{m-l} = span(e_1, ..., e_{m-l})."""
    return Subspace.coordinate(spec, m, range(1, m - l + 1))


def stratum(gamma, l, m):
    """dim(gamma ∩ V_{m-l}), read off as l minus the rank of the last l columns."""
    if gamma.dim != l or gamma.m != m:
        raise ValueError(f"expected an {l}-dimensional subspace of F^{m}")
    tail = gamma.basis[:, m - l:]
    return l - len(rref_array(gamma.spec, tail)[1])


def intersection_dim_with_v(U, l):
    """dim(U ∩ V_{m-l}) for a subspace of any dimension."""
    tail = U.basis[:, U.m - l:]
    return U.dim - (len(rref_array(U.spec, tail)[1]) if U.dim else 0)


def strata(l, m, spec):
    out = {i: [] for i in range(l + 1)}
    for g in enumerate_grassmannian(l, m, spec):
        out[stratum(g, l, m)].append(g)
    return out


def big_cell_points(l, m, spec):
    """Rowspaces of (A | I_l) for every l x (m-l) matrix A, A in lexicographic order."""
    _check_lm(l, m)
    q, k = spec.q, m - l
    eye = np.eye(l, dtype=np.int64)
    out = []
    for values in itertools.product(range(q), repeat=l * k):
        A = np.array(values, dtype=np.int64).reshape(l, k)
        out.append(Subspace.span(spec, np.hstack([A, eye]), m))
    return out


def schubert_points(l, m, spec):
    """Omega: the points with p_{I_0} = 0, i.e. stratum > 0."""
    return [g for g in enumerate_grassmannian(l, m, spec) if stratum(g, l, m) > 0]


# -----------------------------------------------------------------------------
# Lines
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class GrassLine:
    """The line {gamma : beta < gamma < delta}."""
    beta: Subspace
    delta: Subspace

    def __post_init__(self):
        if self.delta.dim != self.beta.dim + 2 or not contains(self.delta, self.beta):
            raise ValueError("a line needs beta inside delta with dim(delta) = dim(beta) + 2")


def _complement_vectors(inner, outer):
    """Rows of ``outer`` extending a basis of ``inner`` to a basis of ``outer``."""
    current = inner
    extra = []
    for row in outer.basis:
        if not current.contains_vectors(row):
            extra.append(row)
            current = subspace_sum(current, Subspace.span(inner.spec, row, inner.m))
    return np.array(extra, dtype=np.int64).reshape(len(extra), inner.m)


def line_points(line):
    spec = line.beta.spec
    w = _complement_vectors(line.beta, line.delta)
    out = []
    for a, b in projective_points(spec, 2):
        v = spec.add_table[spec.scale(a, w[0]), spec.scale(b, w[1])]
        out.append(Subspace.span(spec, np.vstack([line.beta.basis, v[None, :]]), line.beta.m))
    return sorted(out)


def all_lines(l, m, spec):
    _check_lm(l, m)
    betas = enumerate_subspaces(l - 1, m, spec)
    deltas = enumerate_subspaces(l + 1, m, spec)
    return [GrassLine(b, d) for b in betas for d in deltas if contains(d, b)]


def line_through(a, b):
    """The Grassmann line through two distinct points, or None if they are not collinear."""
    beta = subspace_intersection(a, b)
    if a == b or beta.dim != a.dim - 1:
        return None
    return GrassLine(beta, subspace_sum(a, b))


def lines_through(gamma):
    return [GrassLine(b, d) for b in subspaces_of(gamma, gamma.dim - 1)
            for d in superspaces_of(gamma, gamma.dim + 1)]


def _projective_span_keys(spec, basis):
    """Keys of the normalized nonzero vectors in the row space of ``basis``."""
    combos = all_vectors(spec, basis.shape[0])[1:]
    vecs = normalize_rows(spec, spec.matmul(combos, basis))
    return {v.tobytes() for v in vecs}


def line_section_profile(l, m, spec):
    """
    Scan every projective line of P(wedge^l F^m) through two Grassmannian points.

    Returns (Counter of |L ∩ G| over distinct such lines, list of the lines fully
    inside G as frozensets of points).
    """
    points = enumerate_grassmannian(l, m, spec)
    lookup = _plucker_lookup(l, m, spec)
    coords = [plucker_coords(g) for g in points]
    seen = set()
    profile = Counter()
    inside = []
    for i, j in itertools.combinations(range(len(points)), 2):
        keys = frozenset(_projective_span_keys(spec, np.vstack([coords[i], coords[j]])))
        if keys in seen:
            continue
        seen.add(keys)
        hits = [lookup[k] for k in keys if k in lookup]
        profile[len(hits)] += 1
        if len(hits) == len(keys):
            inside.append(frozenset(hits))
    logger.debug(f"Line sections of G({l},{m})(F_{spec.q}): {dict(profile)}")
    return profile, inside


# -----------------------------------------------------------------------------
# Maximal linear subspaces
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearPiece:
    kind: str
    anchor: Subspace
    points: frozenset

    def __post_init__(self):
        if self.kind not in PIECE_KINDS:
            raise ValueError(f"unknown piece kind {self.kind!r}")

    @property
    def dimension(self):
        """Projective dimension read off from the point count."""
        q = self.anchor.spec.q
        d = -1
        while projective_count(d, q) < len(self.points):
            d += 1
        if projective_count(d, q) != len(self.points):
            raise ValueError(f"{len(self.points)} points is not the size of a projective space over F_{q}")
        return d


def pi_beta(beta, l):
    return frozenset(superspaces_of(beta, l))


def pi_delta(delta, l):
    return frozenset(subspaces_of(delta, l))


def pi_between(inner, outer, l):
    """{gamma : inner < gamma < outer, dim gamma = l}."""
    return frozenset(g for g in subspaces_of(outer, l) if contains(g, inner))


def tilde_pi_beta(beta, l, m):
    """pi_beta^{beta + V_{m-l}}."""
    return pi_between(beta, subspace_sum(beta, v_sub(l, m, beta.spec)), l)


def tilde_pi_delta(delta, l, m):
    """pi^delta_{delta ∩ V_{m-l}}."""
    return pi_between(subspace_intersection(delta, v_sub(l, m, delta.spec)), delta, l)


def max_linear_grassmannian(l, m, spec):
    _check_lm(l, m)
    pieces = [LinearPiece('pi_beta', b, pi_beta(b, l)) for b in enumerate_subspaces(l - 1, m, spec)]
    pieces += [LinearPiece('pi_delta', d, pi_delta(d, l)) for d in enumerate_subspaces(l + 1, m, spec)]
    return pieces


def w0_minus(l, m, spec):
    """beta in G_{l-1} with beta ∩ V_{m-l} = 0."""
    return [b for b in enumerate_subspaces(l - 1, m, spec) if intersection_dim_with_v(b, l) == 0]


def w1_plus(l, m, spec):
    """delta in G_{l+1} with dim(delta ∩ V_{m-l}) = 1."""
    return [d for d in enumerate_subspaces(l + 1, m, spec) if intersection_dim_with_v(d, l) == 1]


def max_linear_schubert(l, m, spec):
    """The four families of maximal linear subspaces of Omega, in kind order."""
    _check_lm(l, m)
    pieces = []
    for b in enumerate_subspaces(l - 1, m, spec):
        if intersection_dim_with_v(b, l) > 0:
            pieces.append(LinearPiece('pi_beta', b, pi_beta(b, l)))
    for d in enumerate_subspaces(l + 1, m, spec):
        if intersection_dim_with_v(d, l) > 1:
            pieces.append(LinearPiece('pi_delta', d, pi_delta(d, l)))
    pieces += max_linear_w1(l, m, spec)
    return pieces


def max_linear_w1(l, m, spec):
    _check_lm(l, m)
    pieces = [LinearPiece('tilde_pi_beta', b, tilde_pi_beta(b, l, m)) for b in w0_minus(l, m, spec)]
    pieces += [LinearPiece('tilde_pi_delta', d, tilde_pi_delta(d, l, m)) for d in w1_plus(l, m, spec)]
    return pieces


def brute_force_max_linear(points):
    """
    Maximal linear subspaces (of projective dimension >= 1) inside a set of
    Grassmannian points, found without the classification: start from every
    line inside the set and extend by single points while the projective span
    stays inside.
    """
    points = sorted(points)
    if not points:
        return []
    spec = points[0].spec
    coords = {g: plucker_coords(g) for g in points}
    key_to_point = {c.tobytes(): g for g, c in coords.items()}

    def closure(basis):
        keys = _projective_span_keys(spec, basis)
        if not keys <= key_to_point.keys():
            return None
        return frozenset(key_to_point[k] for k in keys)

    seen = set()
    maximal = set()
    stack = []
    for a, b in itertools.combinations(points, 2):
        basis = np.vstack([coords[a], coords[b]])
        members = closure(basis)
        if members is not None and members not in seen:
            seen.add(members)
            stack.append((members, basis))

    while stack:
        members, basis = stack.pop()
        extended = False
        for x in points:
            if x in members:
                continue
            new_basis = np.vstack([basis, coords[x]])
            new_members = closure(new_basis)
            if new_members is None:
                continue
            extended = True
            if new_members not in seen:
                seen.add(new_members)
                stack.append((new_members, new_basis))
        if not extended:
            maximal.add(members)
    logger.debug(f"Closure search over {len(points)} points: {len(seen)} subspaces visited, {len(maximal)} maximal")
    return sorted(maximal, key=lambda s: (len(s), sorted(g.sort_key for g in s)))


# -----------------------------------------------------------------------------
# Intersection rules and the sets Delta_gamma
# -----------------------------------------------------------------------------

def check_max_w1_cap(l, m, spec):
    """
    Pairwise intersections of the tilde pieces against the closed forms:
      tilde_pi^delta ∩ tilde_pi^delta' = {delta ∩ delta'} iff it is l-dimensional and in W_1,
      tilde_pi_beta ∩ tilde_pi^delta = {beta + (delta ∩ V_{m-l})} iff beta < delta,
      tilde_pi_beta ∩ tilde_pi_beta' = {beta + beta'} iff it is in W_1.
    Returns a dict rule -> (pairs checked, violations).
    """
    v = v_sub(l, m, spec)
    betas = {b: tilde_pi_beta(b, l, m) for b in w0_minus(l, m, spec)}
    deltas = {d: tilde_pi_delta(d, l, m) for d in w1_plus(l, m, spec)}

    def in_w1(g):
        return g.dim == l and stratum(g, l, m) == 1

    results = {}
    checked = bad = 0
    for d1, d2 in itertools.combinations(deltas, 2):
        meet = subspace_intersection(d1, d2)
        expected = frozenset([meet]) if in_w1(meet) else frozenset()
        checked += 1
        bad += (deltas[d1] & deltas[d2]) != expected
    results['delta_delta'] = (checked, bad)

    checked = bad = 0
    for b in betas:
        for d in deltas:
            expected = frozenset()
            if contains(d, b):
                expected = frozenset([subspace_sum(b, subspace_intersection(d, v))])
            checked += 1
            bad += (betas[b] & deltas[d]) != expected
    results['beta_delta'] = (checked, bad)

    checked = bad = 0
    for b1, b2 in itertools.combinations(betas, 2):
        total = subspace_sum(b1, b2)
        expected = frozenset([total]) if in_w1(total) else frozenset()
        checked += 1
        bad += (betas[b1] & betas[b2]) != expected
    results['beta_beta'] = (checked, bad)
    return results


def _line_in(line_pts, allowed):
    return all(g in allowed for g in line_pts)


def check_atmost_one_line(l, m, spec):
    """
    Both parts of the one-line property of W_1 pieces, exhaustively.

    (i) when tilde_pi_beta meets tilde_pi^delta, every line of Omega joining them
        passes through the meeting point and lies in one of the two pieces;
    (ii) when tilde_pi^delta meets tilde_pi^delta', some line of Omega joining
        them leaves W_1.
    Returns {'part_i': (pairs, violations), 'part_ii': (pairs, violations)}.
    """
    omega = set(schubert_points(l, m, spec))
    w1 = {g for g in omega if stratum(g, l, m) == 1}
    betas = {b: tilde_pi_beta(b, l, m) for b in w0_minus(l, m, spec)}
    deltas = {d: tilde_pi_delta(d, l, m) for d in w1_plus(l, m, spec)}

    pairs = bad = 0
    for b, pb in betas.items():
        for d, pd in deltas.items():
            meet = pb & pd
            if not meet:
                continue
            pairs += 1
            x = next(iter(meet))
            for a, c in itertools.product(pb, pd):
                line = line_through(a, c)
                if line is None:
                    continue
                pts = line_points(line)
                if not _line_in(pts, omega):
                    continue
                if x not in pts or not (_line_in(pts, pb) or _line_in(pts, pd)):
                    bad += 1
                    break
    results = {'part_i': (pairs, bad)}

    pairs = bad = 0
    for (d1, p1), (d2, p2) in itertools.combinations(deltas.items(), 2):
        if not p1 & p2:
            continue
        pairs += 1
        found = False
        for a, c in itertools.product(p1, p2):
            line = line_through(a, c)
            if line is None:
                continue
            pts = line_points(line)
            if _line_in(pts, omega) and not _line_in(pts, w1):
                found = True
                break
        bad += not found
    results['part_ii'] = (pairs, bad)
    return results


def delta_gamma_unions(gamma, l, m):
    """
    The two descriptions of Delta_gamma: union of tilde_pi_beta over beta < gamma
    and union of tilde_pi^delta over delta > gamma. Returns
    (beta_union, delta_union, beta_disjoint, delta_disjoint).
    """
    if stratum(gamma, l, m) != 0:
        raise ValueError("Delta_gamma is defined for points of the big cell only")
    beta_parts = [tilde_pi_beta(b, l, m) for b in subspaces_of(gamma, l - 1)]
    delta_parts = [tilde_pi_delta(d, l, m) for d in superspaces_of(gamma, l + 1)]
    beta_union = frozenset().union(*beta_parts)
    delta_union = frozenset().union(*delta_parts)
    return (beta_union, delta_union,
            sum(map(len, beta_parts)) == len(beta_union),
            sum(map(len, delta_parts)) == len(delta_union))


def delta_gamma(gamma, l, m):
    beta_union, delta_union, beta_disjoint, delta_disjoint = delta_gamma_unions(gamma, l, m)
    if beta_union != delta_union or not (beta_disjoint and delta_disjoint):
        raise RuntimeError(f"inconsistent Delta_gamma for {gamma}")
    expected = projective_count(m - l - 1, gamma.spec.q) * projective_count(l - 1, gamma.spec.q)
    if len(beta_union) != expected:
        raise RuntimeError(f"|Delta_gamma| = {len(beta_union)}, expected {expected}")
    return beta_union


def delta_gamma_from_lines(gamma, l, m):
    """
    Meet points with Omega of all lines through gamma.
    Returns (points, True if every line meets Omega exactly once).
    """
    if stratum(gamma, l, m) != 0:
        raise ValueError("expected a point of the big cell")
    out = set()
    unique = True
    for line in lines_through(gamma):
        hits = [g for g in line_points(line) if stratum(g, l, m) > 0]
        unique = unique and len(hits) == 1
        out.update(hits)
    return frozenset(out), unique
