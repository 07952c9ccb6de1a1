# modules/permutation_group.py
"""
Permutations on {0..n-1} and a deterministic Schreier-Sims engine.

Permutations are numpy index arrays with images[i] = sigma(i). "g then h" is
the array h[g]. The stabilizer chain uses explicit transversals (coset
representatives plus their inverses), which is affordable for the degrees
that appear here (a few thousand points at most).
"""

import logging

import numpy as np

logger = logging.getLogger(__name__)


class NotInOrbit(ValueError):
    pass


class Permutation:
    """Immutable permutation of {0..n-1}."""

    __slots__ = ('images',)

    def __init__(self, images):
        images = np.array(images, dtype=np.int64)
        n = images.size
        if images.ndim != 1 or (n and not np.array_equal(np.sort(images), np.arange(n))):
            raise ValueError('not a permutation')
        images.setflags(write=False)
        self.images = images

    @classmethod
    def identity(cls, n):
        return cls(np.arange(n))

    @classmethod
    def from_cycles(cls, n, cycles):
        images = np.arange(n)
        for cycle in cycles:
            for i, a in enumerate(cycle):
                images[a] = cycle[(i + 1) % len(cycle)]
        return cls(images)

    @property
    def degree(self):
        return self.images.size

    def __call__(self, i):
        return int(self.images[i])

    def then(self, other):
        """Apply self first, then other."""
        _check_degree(self, other)
        return Permutation(other.images[self.images])

    def inverse(self):
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.degree)
        return Permutation(inv)

    def is_identity(self):
        return bool(np.array_equal(self.images, np.arange(self.degree)))

    def moved_points(self):
        return np.nonzero(self.images != np.arange(self.degree))[0]

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return bool(np.array_equal(self.images, other.images))

    def __hash__(self):
        return hash(self.images.tobytes())

    def __repr__(self):
        return f"Permutation({self.images.tolist()})"


def _check_degree(a, b):
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")


def _as_images(g):
    return g.images if isinstance(g, Permutation) else np.asarray(g, dtype=np.int64)


def _inverse_images(images):
    inv = np.empty_like(images)
    inv[images] = np.arange(images.size)
    return inv


class _Level:
    """One level of the stabilizer chain: base point, strong generators, transversal."""

    def __init__(self, point):
        self.point = point
        self.gens = []
        self.reps = {point: None}
        self.rep_invs = {point: None}
        self.orbit = [point]
        self.checked = set()

    def extend_orbit(self, identity):
        """Grow the transversal with the current generators, keeping existing representatives."""
        self.reps[self.point] = identity
        self.rep_invs[self.point] = identity
        i = 0
        while i < len(self.orbit):
            beta = self.orbit[i]
            u = self.reps[beta]
            for s in self.gens:
                gamma = int(s[beta])
                if gamma not in self.reps:
                    rep = s[u]
                    self.reps[gamma] = rep
                    self.rep_invs[gamma] = _inverse_images(rep)
                    self.orbit.append(gamma)
            i += 1


class PermGroup:
    """
    Group generated by permutations of a common degree.

    The base and strong generating set are built eagerly and deterministically:
    base points are the smallest points moved by the element that needed them.
    """

    def __init__(self, degree, generators=()):
        self.degree = int(degree)
        self.generators = []
        for g in generators:
            images = _as_images(g)
            if images.size != self.degree:
                raise ValueError(f"degree mismatch: generator of degree {images.size} in group of degree {self.degree}")
            self.generators.append(Permutation(images))
        self._identity = np.arange(self.degree, dtype=np.int64)
        self._levels = []
        self._schreier_sims()

    # -- construction ---------------------------------------------------------

    def _add_level(self, point):
        level = _Level(point)
        level.extend_orbit(self._identity)
        self._levels.append(level)
        return len(self._levels) - 1

    def _sift(self, h, start=0):
        """Strip h through levels >= start. Returns (residue, level where it stopped)."""
        for idx in range(start, len(self._levels)):
            level = self._levels[idx]
            beta = int(h[level.point])
            if beta not in level.reps:
                return h, idx
            h = level.rep_invs[beta][h]
        return h, len(self._levels)

    def _is_identity(self, h):
        return bool(np.array_equal(h, self._identity))

    def _insert(self, h, first, last):
        """Add h as strong generator on levels first..last (creating a level if needed)."""
        if last == len(self._levels):
            moved = np.nonzero(h != self._identity)[0]
            self._add_level(int(moved[0]))
        for idx in range(first, last + 1):
            self._levels[idx].gens.append(h)
            self._levels[idx].extend_orbit(self._identity)

    def _schreier_sims(self):
        for g in self.generators:
            h = g.images
            if self._is_identity(h):
                continue
            fixed_all = all(int(h[level.point]) == level.point for level in self._levels)
            if fixed_all:
                self._add_level(int(g.moved_points()[0]))
            # strong generator on every level whose earlier base points it fixes
            for idx, level in enumerate(self._levels):
                level.gens.append(h)
                if int(h[level.point]) != level.point:
                    break
        for level in self._levels:
            level.extend_orbit(self._identity)

        i = len(self._levels) - 1
        sifted = 0
        while i >= 0:
            level = self._levels[i]
            residue_found = False
            for beta in list(level.orbit):
                u = level.reps[beta]
                for s_idx, s in enumerate(level.gens):
                    if (beta, s_idx) in level.checked:
                        continue
                    level.checked.add((beta, s_idx))
                    gamma = int(s[beta])
                    schreier_gen = level.rep_invs[gamma][s[u]]
                    if self._is_identity(schreier_gen):
                        continue
                    sifted += 1
                    residue, stop = self._sift(schreier_gen, i + 1)
                    if stop < len(self._levels) or not self._is_identity(residue):
                        self._insert(residue, i + 1, stop)
                        i = stop
                        residue_found = True
                        break
                if residue_found:
                    break
            if not residue_found:
                i -= 1
        logger.debug(f"Schreier-Sims degree {self.degree}: base length {len(self._levels)}, "
                     f"orbits {[len(lv.orbit) for lv in self._levels]}, {sifted} Schreier generators sifted")

    # -- queries --------------------------------------------------------------

    def order(self):
        order = 1
        for level in self._levels:
            order *= len(level.orbit)
        return order

    @property
    def base(self):
        return [level.point for level in self._levels]

    @property
    def strong_generators(self):
        seen, out = set(), []
        for level in self._levels:
            for h in level.gens:
                key = h.tobytes()
                if key not in seen:
                    seen.add(key)
                    out.append(Permutation(h))
        return out

    def basic_orbit_lengths(self):
        return [len(level.orbit) for level in self._levels]

    def contains(self, perm):
        images = _as_images(perm)
        if images.size != self.degree:
            raise ValueError(f"degree mismatch: {images.size} vs {self.degree}")
        residue, stop = self._sift(images)
        return stop == len(self._levels) and self._is_identity(residue)

    def orbit(self, point):
        seen = {int(point)}
        orbit = [int(point)]
        i = 0
        while i < len(orbit):
            for g in self.generators:
                b = int(g.images[orbit[i]])
                if b not in seen:
                    seen.add(b)
                    orbit.append(b)
            i += 1
        return orbit

    def is_subgroup_of(self, other):
        return all(other.contains(g) for g in self.generators)


def group_order(gens, degree=None):
    """Order of the group generated by ``gens`` (degree needed when gens is empty)."""
    gens = list(gens)
    if not gens:
        return 1
    if degree is None:
        degree = _as_images(gens[0]).size
    return PermGroup(degree, gens).order()
