# modules/structure_search.py
"""
Individualization-refinement search on vertex- and pair-colored structures.

A structure is a complete graph on n vertices whose vertices and ordered
pairs carry integer colors (pair_colors[v, v] encodes the vertex itself).
The engine finds isomorphisms between two structures, or the automorphism
group of one, restricted to bijections that also pass a caller-supplied
leaf test. Refinement is equivariant, so pruning never loses a solution;
the leaf test decides membership.

ColumnSearch matches the columns of two generator matrices instead: an
information set is placed first and every other column is then forced by
the span of the placed ones.
"""

import logging
from dataclasses import dataclass

import numpy as np

from config.search_config import SearchConfig
from modules.matrix_ops import encode_rows, inverse_array, normalize_rows, nullspace_array, rref_array
from modules.permutation_group import PermGroup
from utils.guards import GuardExceeded

logger = logging.getLogger(__name__)

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_SHIFTS = (np.uint64(30), np.uint64(27), np.uint64(31), np.uint64(32))


def _mix(x):
    """splitmix64 finalizer on a uint64 array (wrapping arithmetic)."""
    with np.errstate(over="ignore"):
        x = x + _GOLDEN
        x = (x ^ (x >> _SHIFTS[0])) * _MIX1
        x = (x ^ (x >> _SHIFTS[1])) * _MIX2
        return x ^ (x >> _SHIFTS[2])


@dataclass
class ColoredStructure:
    vertex_colors: np.ndarray
    pair_colors: np.ndarray

    def __post_init__(self):
        self.vertex_colors = np.asarray(self.vertex_colors, dtype=np.int64)
        self.pair_colors = np.asarray(self.pair_colors, dtype=np.int64)
        n = self.vertex_colors.size
        if self.pair_colors.shape != (n, n):
            raise ValueError(f"pair colors must be {n}x{n}, got {self.pair_colors.shape}")

    @property
    def n(self):
        return self.vertex_colors.size


def shared_pair_ids(*profiles):
    """
    Map per-pair profile vectors of several structures to common integer ids.
    Each profile has shape (n, n, w); returns one (n, n) id array per profile.
    """
    flat = [p.reshape(-1, p.shape[-1]) for p in profiles]
    _, inverse = np.unique(np.vstack(flat), axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    out, start = [], 0
    for p in profiles:
        size = p.shape[0] * p.shape[1]
        out.append(inverse[start:start + size].reshape(p.shape[0], p.shape[1]))
        start += size
    return out


class StructureSearch:
    """Backtracking search between a source and a target structure (the same one for automorphisms)."""

    def __init__(self, source, target=None, leaf_test=None, max_nodes=None):
        self.source = source
        self.target = target if target is not None else source
        if self.source.n != self.target.n:
            raise ValueError(f"structures of different size: {self.source.n} vs {self.target.n}")
        self.n = source.n
        self.leaf_test = leaf_test
        self.max_nodes = SearchConfig.SEARCH_NODE_GUARD if max_nodes is None else max_nodes
        self.nodes = 0
        self.leaves = 0

    # -- refinement -----------------------------------------------------------

    def _refine(self, pair, colors):
        """Refine to the coarsest equitable-by-hash partition. Returns (colors, trace)."""
        colors = np.unique(colors, return_inverse=True)[1].reshape(-1)
        trace = []
        while True:
            ncolors = int(colors.max()) + 1
            keys = (pair.astype(np.uint64) << _SHIFTS[3]) | colors.astype(np.uint64)[None, :]
            first = _mix(keys)
            with np.errstate(over="ignore"):
                h1 = first.sum(axis=1, dtype=np.uint64)
                h2 = _mix(first).sum(axis=1, dtype=np.uint64)
            sig = np.stack([colors.astype(np.uint64), h1, h2], axis=1)
            uniq, new = np.unique(sig, axis=0, return_inverse=True)
            new = new.reshape(-1)
            trace.append((uniq.tobytes(), np.bincount(new).tobytes()))
            if len(uniq) == ncolors:
                return new, tuple(trace)
            colors = new

    @staticmethod
    def _individualize(colors, v):
        out = colors * 2
        out[v] += 1
        return out

    @staticmethod
    def _target_cell(colors):
        """Color of the smallest non-singleton cell (lowest color id on ties), or None."""
        counts = np.bincount(colors)
        nontrivial = np.nonzero(counts > 1)[0]
        if nontrivial.size == 0:
            return None
        return int(nontrivial[np.argmin(counts[nontrivial])])

    # -- leaves ---------------------------------------------------------------

    def _leaf(self, src_colors, dst_colors):
        self.leaves += 1
        where = np.empty(self.n, dtype=np.int64)
        where[dst_colors] = np.arange(self.n)
        sigma = where[src_colors]
        if not np.array_equal(self.target.pair_colors[np.ix_(sigma, sigma)], self.source.pair_colors):
            return None
        if self.leaf_test is not None and not self.leaf_test(sigma):
            return None
        return sigma

    def _search(self, src_colors, dst_colors):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise GuardExceeded('search nodes', self.nodes, self.max_nodes)
        cell = self._target_cell(src_colors)
        if cell is None:
            return self._leaf(src_colors, dst_colors)
        v = int(np.nonzero(src_colors == cell)[0][0])
        src_next, src_trace = self._refine(self.source.pair_colors, self._individualize(src_colors, v))
        for w in np.nonzero(dst_colors == cell)[0]:
            dst_next, dst_trace = self._refine(self.target.pair_colors, self._individualize(dst_colors, int(w)))
            if dst_trace != src_trace:
                continue
            sigma = self._search(src_next, dst_next)
            if sigma is not None:
                return sigma
        return None

    # -- public ---------------------------------------------------------------

    def find_isomorphism(self):
        """A bijection sigma (source vertex -> target vertex) passing every test, or None."""
        if not np.array_equal(np.sort(self.source.vertex_colors), np.sort(self.target.vertex_colors)):
            return None
        src, src_trace = self._refine(self.source.pair_colors, self.source.vertex_colors)
        dst, dst_trace = self._refine(self.target.pair_colors, self.target.vertex_colors)
        if src_trace != dst_trace:
            return None
        sigma = self._search(src, dst)
        logger.debug(f"Isomorphism search on {self.n} vertices: {self.nodes} nodes, {self.leaves} leaves, "
                     f"{'found' if sigma is not None else 'none'}")
        return sigma

    def automorphism_group(self):
        """
        Automorphisms of the source structure passing the leaf test.

        Walks the first path of the search tree to a discrete partition, then
        for each level from the deepest up collects one automorphism per new
        image of that level's base point. Returns (PermGroup, orbit lengths).
        """
        colors, _ = self._refine(self.source.pair_colors, self.source.vertex_colors)
        path = []
        while True:
            cell = self._target_cell(colors)
            if cell is None:
                break
            b = int(np.nonzero(colors == cell)[0][0])
            path.append((colors, b, cell))
            colors, _ = self._refine(self.source.pair_colors, self._individualize(colors, b))

        generators = []
        orbit_lengths = []
        for colors_before, b, cell in reversed(path):
            src_next, src_trace = self._refine(self.source.pair_colors, self._individualize(colors_before, b))
            orbit = _orbit(b, generators)
            for w in np.nonzero(colors_before == cell)[0]:
                w = int(w)
                if w in orbit:
                    continue
                dst_next, dst_trace = self._refine(self.source.pair_colors, self._individualize(colors_before, w))
                if dst_trace != src_trace:
                    continue
                sigma = self._search(src_next, dst_next)
                if sigma is not None:
                    generators.append(sigma)
                    orbit = _orbit(b, generators)
            orbit_lengths.append(len(orbit))
        orbit_lengths.reverse()

        group = PermGroup(self.n, generators)
        expected = int(np.prod(orbit_lengths, dtype=object)) if orbit_lengths else 1
        if group.order() != expected:
            logger.warning(f"Automorphism search: orbit product {expected} but generated order {group.order()}")
        logger.debug(f"Automorphism search on {self.n} vertices: base length {len(path)}, "
                     f"orbits {orbit_lengths}, {self.nodes} nodes, {self.leaves} leaves")
        return group, orbit_lengths


def _orbit(point, generators):
    seen = {point}
    queue = [point]
    while queue:
        a = queue.pop()
        for g in generators:
            b = int(g[a])
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return seen


# -----------------------------------------------------------------------------
# Column matching for linear codes
# -----------------------------------------------------------------------------

def _find(ratios, i):
    """(root, w) with r_i = w * r_root."""
    parent, weight, mul = ratios
    w = 1
    while parent[i] != i:
        w = int(mul[w, weight[i]])
        i = parent[i]
    return i, w


def _unite(ratios, a, b, ratio, inv):
    """Impose r_b = ratio * r_a; False on a contradiction."""
    parent, weight, mul = ratios
    ra, wa = _find(ratios, a)
    rb, wb = _find(ratios, b)
    if ra == rb:
        return wb == int(mul[ratio, wa])
    parent[rb] = ra
    weight[rb] = int(mul[mul[ratio, wa], inv[wb]])
    return True


class ColumnSearch:
    """
    Backtracking over column bijections sigma with Y[:, sigma(j)] = s_j A X[:, j]
    for an invertible A and nonzero scalars s (all 1 with ``fixed_scalars``).

    Source columns are placed in a fixed order: the RREF pivots of X first,
    then the other columns by decreasing support in that basis. While the
    basis is placed, target images must stay independent and span flats
    holding as many columns as on the source side. Once it is placed, every
    other image is forced up to the ratios r_i between basis scalars, which
    are kept in a weighted union-find and only branched on while a column's
    support still joins separate components.
    """

    def __init__(self, spec, source, target=None, pair_colors=None, fixed_scalars=False, leaf_test=None,
                 max_nodes=None):
        self.spec = spec
        self.X = np.asarray(source, dtype=np.int64)
        self.Y = self.X if target is None else np.asarray(target, dtype=np.int64)
        if self.X.shape != self.Y.shape:
            raise ValueError(f"matrices of different shape: {self.X.shape} vs {self.Y.shape}")
        self.k, self.n = self.X.shape
        red, pivots = rref_array(spec, self.X)
        if len(pivots) != self.k:
            raise ValueError("source matrix does not have full row rank")
        self.basis = list(pivots)
        # X[:, j] = X[:, basis] @ coords[:, j]
        self.coords = red[:self.k]
        support = self.coords != 0
        in_basis = set(self.basis)
        rest = sorted((j for j in range(self.n) if j not in in_basis), key=lambda j: (-int(support[:, j].sum()), j))
        self.order = np.array(self.basis + rest, dtype=np.int64)
        last = np.where(support.any(axis=0), self.k - 1 - np.argmax(support[::-1], axis=0), -1)
        self.flat_sizes = [int(np.count_nonzero(last <= i)) for i in range(self.k)]
        self.support_keys = encode_rows(spec, support.T.astype(np.int64))

        if pair_colors is None:
            zeros = np.zeros((self.n, self.n), dtype=np.int64)
            pair_colors = (zeros, zeros)
        self.src_colors, self.dst_colors = (np.asarray(c, dtype=np.int64) for c in pair_colors)
        self.fixed_scalars = fixed_scalars
        self.leaf_test = leaf_test
        self.max_nodes = SearchConfig.SEARCH_NODE_GUARD if max_nodes is None else max_nodes
        self.nodes = 0
        self.leaves = 0

    # -- candidates -----------------------------------------------------------

    def _colors_ok(self, j, t, pos, sigma):
        placed = self.order[:pos]
        images = sigma[placed]
        return (self.src_colors[j, j] == self.dst_colors[t, t]
                and np.array_equal(self.src_colors[j, placed], self.dst_colors[t, images])
                and np.array_equal(self.src_colors[placed, j], self.dst_colors[images, t]))

    def _basis_candidates(self, pos, sigma, used, wanted):
        spec = self.spec
        chosen = sigma[self.order[:pos]]
        left = nullspace_array(spec, self.Y[:, chosen].T)
        proj = spec.matmul(left, self.Y)
        zero = ~proj.any(axis=0)
        keys = encode_rows(spec, normalize_rows(spec, proj.T))
        keys[zero] = -1
        values, counts = np.unique(keys, return_counts=True)
        flat = dict(zip(values.tolist(), counts.tolist()))
        base = int(zero.sum())
        j = int(self.order[pos])
        out = []
        for t in (range(self.n) if wanted is None else (wanted,)):
            if used[t] or zero[t] or base + flat[int(keys[t])] != self.flat_sizes[pos]:
                continue
            if self._colors_ok(j, t, pos, sigma):
                out.append((t, None))
        return out

    def _frame(self, sigma):
        """Target columns in the coordinates of the placed basis images, indexed three ways."""
        spec = self.spec
        D = spec.matmul(inverse_array(spec, self.Y[:, sigma[self.basis]]), self.Y)
        frame = {'D': D, 'exact': {}, 'projective': {}, 'support': {}}
        exact = encode_rows(spec, D.T)
        projective = encode_rows(spec, normalize_rows(spec, D.T))
        support = encode_rows(spec, (D != 0).T.astype(np.int64))
        frame['pkeys'] = projective
        for t in range(self.n):
            frame['exact'].setdefault(int(exact[t]), []).append(t)
            frame['projective'].setdefault(int(projective[t]), []).append(t)
            frame['support'].setdefault(int(support[t]), []).append(t)
        return frame

    def _pick(self, pool, j, pos, sigma, used, wanted):
        # equal columns are interchangeable, so one unused representative suffices
        for t in pool:
            if used[t] or (wanted is not None and t != wanted):
                continue
            return [t] if self._colors_ok(j, t, pos, sigma) else []
        return []

    def _completion_candidates(self, pos, sigma, used, frame, ratios, wanted):
        spec = self.spec
        j = int(self.order[pos])
        c = self.coords[:, j]
        supp = [int(i) for i in np.nonzero(c)[0]]
        if self.fixed_scalars:
            pool = frame['exact'].get(int(encode_rows(spec, c[None, :])[0]), [])
            return [(t, ratios) for t in self._pick(pool, j, pos, sigma, used, wanted)]

        found = [_find(ratios, i) for i in supp]
        if len({root for root, _ in found}) <= 1:
            v = np.zeros(self.k, dtype=np.int64)
            v[supp] = spec.mul_table[c[supp], [w for _, w in found]]
            key = int(encode_rows(spec, normalize_rows(spec, v[None, :]))[0])
            return [(t, ratios) for t in self._pick(frame['projective'].get(key, []), j, pos, sigma, used, wanted)]

        out, seen = [], set()
        D, inv = frame['D'], spec.inv_table
        for t in frame['support'].get(int(self.support_keys[j]), []):
            if used[t] or (wanted is not None and t != wanted) or int(frame['pkeys'][t]) in seen:
                continue
            seen.add(int(frame['pkeys'][t]))
            if not self._colors_ok(j, t, pos, sigma):
                continue
            rho = spec.mul_table[D[supp, t], inv[c[supp]]]
            bound = (list(ratios[0]), list(ratios[1]), ratios[2])
            if all(_unite(bound, supp[0], i, int(spec.mul_table[rho[x], inv[rho[0]]]), inv)
                   for x, i in enumerate(supp[1:], start=1)):
                out.append((t, bound))
        return out

    # -- search ---------------------------------------------------------------

    def _extend(self, pos, sigma, used, frame, ratios, prefix):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise GuardExceeded('column search nodes', self.nodes, self.max_nodes)
        if pos == self.n:
            self.leaves += 1
            if self.leaf_test is None or self.leaf_test(sigma.copy()):
                return sigma.copy()
            return None
        wanted = int(prefix[pos]) if pos < len(prefix) else None
        if pos < self.k:
            options = self._basis_candidates(pos, sigma, used, wanted)
        else:
            options = self._completion_candidates(pos, sigma, used, frame, ratios, wanted)
        j = int(self.order[pos])
        for t, bound in options:
            sigma[j] = t
            used[t] = True
            next_frame = self._frame(sigma) if pos + 1 == self.k else frame
            found = self._extend(pos + 1, sigma, used, next_frame, ratios if bound is None else bound, prefix)
            sigma[j] = -1
            used[t] = False
            if found is not None:
                return found
        return None

    def first(self, prefix=()):
        """
        A bijection sigma (source column -> target column) passing the leaf
        test, or None. ``prefix`` prescribes the images of the first columns
        of ``order``.
        """
        sigma = np.full(self.n, -1, dtype=np.int64)
        used = np.zeros(self.n, dtype=bool)
        ratios = (list(range(self.k)), [1] * self.k, self.spec.mul_table)
        found = self._extend(0, sigma, used, None, ratios, list(prefix))
        logger.debug(f"Column search on {self.n} columns: {self.nodes} nodes, {self.leaves} leaves, "
                     f"{'found' if found is not None else 'none'}")
        return found

    def automorphism_group(self):
        """
        Column permutations of the source onto itself passing the leaf test,
        as a PermGroup with the orbit lengths along ``order``. Levels are
        processed from the deepest up; at each level one element is searched
        per image of the level's column outside the orbit found so far.
        """
        if self.Y is not self.X:
            raise ValueError("automorphism group needs a single matrix")
        generators = []
        orbit_lengths = []
        order = [int(j) for j in self.order]
        for level in range(self.n - 1, -1, -1):
            b = order[level]
            fixed = set(order[:level])
            orbit = _orbit(b, generators)
            for w in range(self.n):
                if w in orbit or w in fixed:
                    continue
                sigma = self.first(order[:level] + [w])
                if sigma is not None:
                    generators.append(sigma)
                    orbit = _orbit(b, generators)
            orbit_lengths.append(len(orbit))
        orbit_lengths.reverse()
        group = PermGroup(self.n, generators)
        logger.debug(f"Column automorphisms on {self.n} columns: orbits {orbit_lengths}, {self.nodes} nodes")
        return group, orbit_lengths
