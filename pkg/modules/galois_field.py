# modules/galois_field.py
"""
Exact arithmetic in F_q = F_p[x]/(modulus) with table lookups.

Elements are encoded as integers: the coefficient vector (c0, c1, ..., c_{e-1})
is stored as c0 + c1*p + ... + c_{e-1}*p^(e-1). All tables are numpy arrays so
matrix code can do its arithmetic with fancy indexing.
"""

import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

logger = logging.getLogger(__name__)


def is_prime(n):
    """Trial division primality check (desk-scale characteristics only)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_mod(coeffs, modulus, p):
    """Reduce a low-to-high coefficient list modulo a monic polynomial over F_p."""
    coeffs = [c % p for c in coeffs]
    deg_m = len(modulus) - 1
    for i in range(len(coeffs) - 1, deg_m - 1, -1):
        c = coeffs[i]
        if c:
            for j in range(deg_m + 1):
                coeffs[i - deg_m + j] = (coeffs[i - deg_m + j] - c * modulus[j]) % p
    return coeffs[:deg_m] + [0] * max(0, deg_m - len(coeffs))


def _poly_is_divisible(f, g, p):
    """True when monic g divides f over F_p."""
    return not any(_poly_mod(list(f), list(g), p))


def _is_irreducible(modulus, p):
    e = len(modulus) - 1
    if e == 1:
        return True
    for d in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if _poly_is_divisible(modulus, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p, e):
    """Lexicographically smallest monic irreducible of degree e, low-degree coefficient first."""
    for low in itertools.product(range(p), repeat=e):
        candidate = tuple(low) + (1,)
        if _is_irreducible(candidate, p):
            return candidate
    raise ValueError(f"No irreducible polynomial of degree {e} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    e: int
    modulus: tuple
    digits: np.ndarray = field(init=False, repr=False, compare=False)
    powers: np.ndarray = field(init=False, repr=False, compare=False)
    add_table: np.ndarray = field(init=False, repr=False, compare=False)
    mul_table: np.ndarray = field(init=False, repr=False, compare=False)
    neg_table: np.ndarray = field(init=False, repr=False, compare=False)
    inv_table: np.ndarray = field(init=False, repr=False, compare=False)
    frobenius_tables: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.e < 1:
            raise ValueError(f"e must be positive, got {self.e}")
        if len(self.modulus) != self.e + 1 or self.modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {self.e}: {self.modulus}")
        if not _is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} is reducible over F_{self.p}")

        p, e, q = self.p, self.e, self.p ** self.e
        powers = np.array([p ** i for i in range(e)], dtype=np.int64)
        digits = np.array(list(itertools.product(range(p), repeat=e)), dtype=np.int64)[:, ::-1]
        # product() varies the last position fastest; reversed, row v holds the digits of v
        add_table = (digits[:, None, :] + digits[None, :, :]) % p @ powers
        neg_table = ((-digits) % p) @ powers

        mul_table = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * e - 1)
                for i in range(e):
                    if digits[a, i]:
                        for j in range(e):
                            prod[i + j] += int(digits[a, i]) * int(digits[b, j])
                red = _poly_mod(prod, list(self.modulus), p)
                value = sum(c * p ** i for i, c in enumerate(red))
                mul_table[a, b] = mul_table[b, a] = value

        inv_table = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv_table[a] = int(np.nonzero(mul_table[a] == 1)[0][0])

        frob = np.zeros((e, q), dtype=np.int64)
        frob[0] = np.arange(q)
        for j in range(1, e):
            prev = frob[j - 1]
            # x^(p^j) = (x^(p^(j-1)))^p
            acc = np.ones(q, dtype=np.int64)
            for _ in range(p):
                acc = mul_table[acc, prev]
            frob[j] = acc

        for name, value in (('digits', digits), ('powers', powers), ('add_table', add_table),
                            ('mul_table', mul_table), ('neg_table', neg_table),
                            ('inv_table', inv_table), ('frobenius_tables', frob)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def q(self):
        return self.p ** self.e

    @property
    def is_prime_field(self):
        return self.e == 1

    def __str__(self):
        return f"F_{self.q}"

    def element(self, value):
        return FieldElement(self, int(value) % self.q if self.e == 1 else int(value))

    def elements(self):
        return [FieldElement(self, v) for v in range(self.q)]

    def zero(self):
        return FieldElement(self, 0)

    def one(self):
        return FieldElement(self, 1)

    def from_coeffs(self, coeffs):
        coeffs = list(coeffs) + [0] * (self.e - len(coeffs))
        if len(coeffs) != self.e:
            raise ValueError(f"expected at most {self.e} coefficients, got {len(coeffs)}")
        return FieldElement(self, int(sum((c % self.p) * self.p ** i for i, c in enumerate(coeffs))))

    # Vectorized helpers on integer-encoded arrays
    def sum_reduce(self, arr, axis):
        arr = np.asarray(arr, dtype=np.int64)
        if self.p == 2:
            if arr.shape[axis] == 0:
                return np.zeros(np.delete(arr.shape, axis), dtype=np.int64)
            return np.bitwise_xor.reduce(arr, axis=axis)
        if self.e == 1:
            return arr.sum(axis=axis) % self.p
        return (self.digits[arr].sum(axis=axis) % self.p) @ self.powers

    def matmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} x {b.shape}")
        if self.e == 1:
            return (a @ b) % self.p
        if a.shape[1] == 0:
            return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        prod = self.mul_table[a[:, :, None], b[None, :, :]]
        return self.sum_reduce(prod, axis=1)

    def scale(self, c, arr):
        return self.mul_table[int(c), np.asarray(arr, dtype=np.int64)]


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.spec.q:
            raise ValueError(f"{self.value} is not an element encoding of {self.spec}")

    @property
    def coeffs(self):
        return tuple(int(c) for c in self.spec.digits[self.value])

    def _check(self, other):
        if isinstance(other, int):
            return self.spec.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.spec != self.spec:
            raise ValueError(f"spec mismatch: {self.spec} vs {other.spec}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return fq_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.spec, int(self.spec.neg_table[self.value]))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return fq_add(self, -other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return fq_add(other, -self)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return fq_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return fq_mul(self, fq_inv(other))

    def __pow__(self, n):
        return fq_pow(self, n)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{format_element(self)} in {self.spec}"


@dataclass(frozen=True)
class FieldAutomorphism:
    spec: FieldSpec
    exponent: int

    def __post_init__(self):
        if not 0 <= self.exponent < self.spec.e:
            raise ValueError(f"exponent {self.exponent} outside [0, {self.spec.e})")

    @property
    def is_identity(self):
        return self.exponent == 0

    def __call__(self, x):
        table = self.spec.frobenius_tables[self.exponent]
        if isinstance(x, FieldElement):
            return FieldElement(self.spec, int(table[x.value]))
        if isinstance(x, (int, np.integer)):
            return int(table[int(x)])
        return table[np.asarray(x, dtype=np.int64)]

    def compose(self, other):
        """self after other."""
        if other.spec != self.spec:
            raise ValueError("spec mismatch")
        return FieldAutomorphism(self.spec, (self.exponent + other.exponent) % self.spec.e)

    def inverse(self):
        return FieldAutomorphism(self.spec, (-self.exponent) % self.spec.e)


def fq_make(p, e=1):
    """Build F_{p^e} with the lexicographically smallest monic irreducible modulus."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if e < 1:
        raise ValueError(f"e must be >= 1, got {e}")
    return _fq_make_cached(p, e)


_FIELD_CACHE = {}


def _fq_make_cached(p, e):
    if (p, e) not in _FIELD_CACHE:
        _FIELD_CACHE[(p, e)] = FieldSpec(p, e, smallest_irreducible(p, e))
        logger.debug(f"Built F_{p ** e} with modulus {_FIELD_CACHE[(p, e)].modulus}")
    return _FIELD_CACHE[(p, e)]


def parse_q(q):
    """Split a prime power q into (p, e) with the smallest prime p."""
    if q < 2:
        raise ValueError(f"q must be a prime power, got {q}")
    for p in range(2, q + 1):
        if q % p == 0:
            e, rest = 0, q
            while rest % p == 0:
                rest //= p
                e += 1
            if rest != 1 or not is_prime(p):
                raise ValueError(f"q must be a prime power, got {q}")
            return p, e
    raise ValueError(f"q must be a prime power, got {q}")


def _same_spec(a, b):
    if a.spec != b.spec:
        raise ValueError(f"spec mismatch: {a.spec} vs {b.spec}")


def fq_add(a, b):
    _same_spec(a, b)
    return FieldElement(a.spec, int(a.spec.add_table[a.value, b.value]))


def fq_mul(a, b):
    _same_spec(a, b)
    return FieldElement(a.spec, int(a.spec.mul_table[a.value, b.value]))


def fq_inv(a):
    if a.value == 0:
        raise ZeroDivisionError(f"zero has no inverse in {a.spec}")
    return FieldElement(a.spec, int(a.spec.inv_table[a.value]))


def fq_pow(a, n):
    if n < 0:
        a, n = fq_inv(a), -n
    result, base = 1, a.value
    table = a.spec.mul_table
    while n:
        if n & 1:
            result = int(table[result, base])
        base = int(table[base, base])
        n >>= 1
    return FieldElement(a.spec, result)


def field_automorphisms(spec):
    """All automorphisms x -> x^(p^j), j = 0..e-1, identity first."""
    return [FieldAutomorphism(spec, j) for j in range(spec.e)]


def multiplicative_order(a):
    if a.value == 0:
        raise ValueError("zero has no multiplicative order")
    order, x = 1, a.value
    while x != 1:
        x = int(a.spec.mul_table[x, a.value])
        order += 1
    return order


def primitive_element(spec):
    """Smallest element (by integer encoding) generating F_q^x."""
    for v in range(1, spec.q):
        a = FieldElement(spec, v)
        if multiplicative_order(a) == spec.q - 1:
            return a
    raise ValueError(f"{spec} has no primitive element")  # unreachable for a field


def format_element(a):
    if a.spec.e == 1:
        return str(a.value)
    return "[" + ",".join(str(c) for c in a.coeffs) + "]"


def parse_element(spec, text):
    text = str(text).strip()
    if text.startswith('['):
        parts = [t for t in text.strip('[]').split(',') if t.strip()]
        return spec.from_coeffs([int(t) for t in parts])
    value = int(text)
    if spec.e == 1:
        return FieldElement(spec, value % spec.p)
    return spec.from_coeffs([value])
