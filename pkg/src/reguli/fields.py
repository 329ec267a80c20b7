"""Exact arithmetic in GF(p^k) and in towers GF(q) < GF(q^n).

Elements are plain integers.  An element of an extension field of degree
``d`` over a ground field of order ``Q`` is the integer ``sum(c_i * Q**i)``
where ``(c_0, ..., c_{d-1})`` are its ground-field coordinates in the basis
``1, x, ..., x^{d-1}`` (little-endian by degree).  Small fields (the ground
fields used for linear algebra) carry full addition and multiplication
tables as numpy arrays; large fields use exp/log tables for products and
digit vectors for sums.

Text form of elements: a prime-field element is its decimal residue; an
extension element is the bracketed, comma separated list of its ground
coordinates, recursively (over GF(4) = GF(2)[w], ``[0,1]`` is ``w``).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

MAX_ORDER = 2**20
TABLE_LIMIT = 1024


class FieldMismatchError(TypeError):
    """Raised when elements of different fields are combined."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FiniteField:
    """Common interface; see :class:`PrimeField` and :class:`ExtensionField`."""

    order: int
    char: int
    degree: int  # degree over the immediate ground field
    ground: "FiniteField | None"

    # tables, present when order <= TABLE_LIMIT
    ADD: np.ndarray
    MUL: np.ndarray
    NEG: np.ndarray
    INV: np.ndarray

    @property
    def has_tables(self) -> bool:
        return self.order <= TABLE_LIMIT

    def elements(self) -> range:
        return range(self.order)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def sum(self, values) -> int:
        acc = 0
        for v in values:
            acc = self.add(acc, v)
        return acc

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    def _check(self, a: int) -> int:
        a = int(a)
        if not 0 <= a < self.order:
            raise ValueError(f"{a} is not an element of {self}")
        return a


class PrimeField(FiniteField):
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.order = self.char = p
        self.degree = 1
        self.ground = None
        self.modulus = (0, 1)
        r = np.arange(p)
        self.ADD = (r[:, None] + r[None, :]) % p
        self.MUL = (r[:, None] * r[None, :]) % p
        self.NEG = (-r) % p
        self.INV = np.zeros(p, dtype=np.int64)
        for a in range(1, p):
            self.INV[a] = pow(a, p - 2, p)
        for t in (self.ADD, self.MUL, self.NEG, self.INV):
            t.flags.writeable = False

    def __repr__(self) -> str:
        return f"GF({self.order})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.order == self.order

    def __hash__(self) -> int:
        return hash(("GF", self.order))

    @property
    def prime_field(self) -> "PrimeField":
        return self

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.order

    def neg(self, a: int) -> int:
        return (-a) % self.order

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.order

    def inv(self, a: int) -> int:
        if a % self.order == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.order - 2, self.order)

    def coords(self, a: int) -> tuple[int, ...]:
        return (a,)

    def mul_array(self, a, b) -> np.ndarray:
        return (np.asarray(a) * np.asarray(b)) % self.order

    def inv_array(self, a) -> np.ndarray:
        return self.INV[np.asarray(a)]

    def format(self, a: int) -> str:
        return str(self._check(a))

    def parse(self, text: str) -> int:
        text = text.strip()
        if not text.lstrip("-").isdigit():
            raise ValueError(f"malformed element of {self}: {text!r}")
        return self._check(int(text))


# -- polynomials over a table field, coefficient tuples little-endian -------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(K: FiniteField, a, m) -> list[int]:
    """Remainder of ``a`` modulo the nonzero polynomial ``m`` over ``K``."""
    a = _trim(list(a))
    m = _trim(list(m))
    if not m:
        raise ZeroDivisionError("polynomial modulus is zero")
    inv_lead = K.inv(m[-1])
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = K.mul(a[-1], inv_lead)
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = K.sub(a[shift + i], K.mul(c, mi))
        _trim(a)
    return a


def poly_mul(K: FiniteField, a, b) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = K.add(out[i + j], K.mul(ai, bj))
    return _trim(out)


def is_irreducible(K: FiniteField, f) -> bool:
    """Exhaustive factor search: no monic factor of degree <= deg(f)/2."""
    f = _trim(list(f))
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if f[0] == 0:
        return False
    for e in range(1, d // 2 + 1):
        for low in itertools.product(range(K.order), repeat=e):
            if not poly_mod(K, f, list(low) + [1]):
                return False
    return True


def smallest_irreducible(K: FiniteField, degree: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible polynomial of ``degree``.

    Coefficient vectors ``(c_0, ..., c_{d-1})`` are compared with the
    constant term most significant.
    """
    if degree == 1:
        return (0, 1)
    for low in itertools.product(range(K.order), repeat=degree):
        if low[0] == 0:
            continue
        f = low + (1,)
        if is_irreducible(K, f):
            return f
    raise ValueError("no irreducible polynomial found")  # unreachable


class ExtensionField(FiniteField):
    """``ground[x] / (modulus)`` with the power basis ``1, x, ..., x^{d-1}``."""

    def __init__(self, ground: FiniteField, modulus):
        modulus = tuple(int(c) for c in modulus)
        if modulus[-1] != 1 or len(modulus) < 2:
            raise ValueError("modulus must be monic of degree >= 1")
        if not ground.has_tables:
            raise ValueError("ground field too large for table arithmetic")
        if not is_irreducible(ground, modulus):
            raise ValueError(f"modulus {modulus} is reducible over {ground}")
        self.ground = ground
        self.modulus = modulus
        self.degree = d = len(modulus) - 1
        Q = ground.order
        self.order = N = Q**d
        if N > MAX_ORDER:
            raise ValueError(f"parameters too large: field of order {N} exceeds {MAX_ORDER}")
        self.char = ground.char
        self.weights = Q ** np.arange(d, dtype=np.int64)
        r = np.arange(N, dtype=np.int64)
        self.vec = np.stack([(r // w) % Q for w in self.weights], axis=1)
        self.vec.flags.writeable = False
        self._build_exp_log()
        self.NEG = self._from_vec(ground.NEG[self.vec])
        if self.has_tables:
            a = self.vec[:, None, :]
            b = self.vec[None, :, :]
            self.ADD = self._from_vec(ground.ADD[a, b])
            la = self.log[:, None]
            lb = self.log[None, :]
            self.MUL = np.where((r[:, None] == 0) | (r[None, :] == 0), 0,
                                self.exp[(la + lb) % (N - 1)])
            self.INV = np.zeros(N, dtype=np.int64)
            self.INV[1:] = self.exp[(-self.log[1:]) % (N - 1)]
            for t in (self.ADD, self.MUL, self.INV):
                t.flags.writeable = False
        self.NEG.flags.writeable = False

    def __repr__(self) -> str:
        return f"GF({self.order})/{self.ground!r}[{self.modulus}]"

    def _key(self):
        return (self.ground, self.modulus)

    def __eq__(self, other) -> bool:
        return isinstance(other, ExtensionField) and other._key() == self._key()

    def __hash__(self) -> int:
        return hash(self._key())

    @property
    def prime_field(self) -> PrimeField:
        return self.ground.prime_field

    def _from_vec(self, v: np.ndarray) -> np.ndarray:
        return (v * self.weights).sum(axis=-1)

    def _slow_mul(self, a: int, b: int) -> int:
        K = self.ground
        pa = [int(c) for c in self.vec[a]]
        pb = [int(c) for c in self.vec[b]]
        r = poly_mod(K, poly_mul(K, _trim(pa), _trim(pb)), self.modulus)
        return int(sum(c * int(w) for c, w in zip(r, self.weights)))

    def _slow_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return result

    def _mul_matrix(self, g: int) -> np.ndarray:
        """Matrix (over the ground) of multiplication by ``g``, acting on rows."""
        basis = [int(w) for w in self.weights]
        return np.array([self.vec[self._slow_mul(b, g)] for b in basis], dtype=np.int64)

    def _build_exp_log(self) -> None:
        N = self.order
        K = self.ground
        if N == 2:
            self.primitive = 1
        else:
            facs = prime_factors(N - 1)
            for g in range(2, N):
                if all(self._slow_pow(g, (N - 1) // r) != 1 for r in facs):
                    self.primitive = g
                    break
        # batch doubling: exp[m:2m] = exp[0:m] * g^m
        rows = np.zeros((1, self.degree), dtype=np.int64)
        rows[0, 0] = 1
        step = self._mul_matrix(self.primitive)
        while rows.shape[0] < N - 1:
            rows = np.concatenate([rows, _table_matmul(K, rows, step)])
            step = _table_matmul(K, step, step)
        self.exp = self._from_vec(rows[: N - 1])
        self.log = np.zeros(N, dtype=np.int64)
        self.log[self.exp] = np.arange(N - 1)
        self.exp.flags.writeable = False
        self.log.flags.writeable = False

    def add(self, a: int, b: int) -> int:
        if self.has_tables:
            return int(self.ADD[a, b])
        return int(self._from_vec(self.ground.ADD[self.vec[a], self.vec[b]]))

    def neg(self, a: int) -> int:
        return int(self.NEG[a])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.order - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.exp[(-self.log[a]) % (self.order - 1)])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if e == 0 else 0
        return int(self.exp[(self.log[a] * e) % (self.order - 1)])

    def coords(self, a: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.vec[a])

    def mul_array(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        prod = self.exp[(self.log[a] + self.log[b]) % (self.order - 1)]
        return np.where((a == 0) | (b == 0), 0, prod)

    def inv_array(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return np.where(a == 0, 0, self.exp[(-self.log[a]) % (self.order - 1)])

    def add_array(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        return self._from_vec(self.ground.ADD[self.vec[a], self.vec[b]])

    def from_coords(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(coeffs)}")
        for c in coeffs:
            self.ground._check(c)
        return int(sum(int(c) * int(w) for c, w in zip(coeffs, self.weights)))

    def embed(self, c: int) -> int:
        """Image of a ground element."""
        return self.ground._check(c)

    def in_ground(self, a: int) -> bool:
        return a < self.ground.order

    @property
    def gen(self) -> int:
        """The adjoined root ``x``."""
        return self.ground.order if self.degree > 1 else self.neg(self.modulus[0])

    def format(self, a: int) -> str:
        return "[" + ",".join(self.ground.format(c) for c in self.coords(self._check(a))) + "]"

    def parse(self, text: str) -> int:
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise ValueError(f"malformed element of {self}: {text!r}")
        parts = _split_top(text[1:-1])
        return self.from_coords([self.ground.parse(p) for p in parts])


def _split_top(body: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced brackets in {body!r}")
        elif ch == "," and depth == 0:
            parts.append(body[start:i])
            start = i + 1
    if depth:
        raise ValueError(f"unbalanced brackets in {body!r}")
    parts.append(body[start:])
    return parts


def _table_matmul(K: FiniteField, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out = K.ADD[out, K.MUL[A[:, k, None], B[None, k, :]]]
    return out


class FieldElement:
    """Operator-overloading wrapper around an integer element."""

    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int):
        self.field = field
        self.value = field._check(value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"{other.field} vs {self.field}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.field._check(other)
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.field.format(self.value)}@GF({self.field.order})"


@functools.lru_cache(maxsize=None)
def make_field(p: int, k: int = 1, modulus: tuple[int, ...] | None = None) -> FiniteField:
    """GF(p^k); the prime field itself when ``k == 1``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if p**k > MAX_ORDER:
        raise ValueError(f"parameters too large: p^k = {p**k} exceeds {MAX_ORDER}")
    F = PrimeField(p)
    if k == 1:
        if modulus not in (None, (0, 1)):
            raise ValueError("a prime field takes the modulus x")
        return F
    if modulus is None:
        modulus = smallest_irreducible(F, k)
    if len(modulus) != k + 1:
        raise ValueError(f"modulus must have degree {k}")
    return ExtensionField(F, modulus)


@functools.lru_cache(maxsize=None)
def _extension(ground: FiniteField, modulus: tuple[int, ...]) -> ExtensionField:
    return ExtensionField(ground, modulus)


@dataclass(frozen=True, eq=False)
class FieldTower:
    """GF(p) < GF(q) < GF(q^n) with q = p^k and fixed moduli.

    ``top`` is built directly as a degree-``n`` extension of ``base``, so an
    element's coordinates over GF(q) are exactly its digits.
    """

    p: int
    k: int
    n: int
    base: FiniteField
    top: ExtensionField

    @property
    def q(self) -> int:
        return self.base.order

    @property
    def base_modulus(self) -> tuple[int, ...]:
        return self.base.modulus

    @property
    def top_modulus(self) -> tuple[int, ...]:
        return self.top.modulus

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, k={self.k}, n={self.n}, top_modulus={self.top_modulus})"

    def moduli(self) -> dict:
        return {"base": self.format_poly(self.base.prime_field, self.base_modulus),
                "top": self.format_poly(self.base, self.top_modulus)}

    @staticmethod
    def format_poly(K: FiniteField, coeffs) -> str:
        return "[" + ",".join(K.format(c) for c in coeffs) + "]"

    def _elem(self, xi) -> int:
        if isinstance(xi, FieldElement):
            if xi.field != self.top:
                raise FieldMismatchError(f"element of {xi.field} given to tower over {self.top}")
            return xi.value
        return self.top._check(xi)

    def as_base_vector(self, xi) -> tuple[int, ...]:
        """Coordinates of ``xi`` over GF(q) in the basis 1, x, ..., x^{n-1}."""
        return self.top.coords(self._elem(xi))

    def from_base_vector(self, coeffs) -> int:
        return self.top.from_coords(coeffs)

    def frobenius(self, xi, times: int = 1) -> int:
        """xi -> xi^(q^times)."""
        return self.top.pow(self._elem(xi), self.q**times)

    def degree_over_base(self, xi) -> int:
        """Least m with 1, xi, ..., xi^m linearly dependent over GF(q)."""
        from .linalg import rank  # local: linalg imports this module

        a = self._elem(xi)
        rows = [self.as_base_vector(1)]
        power = 1
        for m in range(1, self.n + 1):
            power = self.top.mul(power, a)
            rows.append(self.as_base_vector(power))
            if rank(self.base, np.array(rows, dtype=np.int64)) < len(rows):
                return m
        raise AssertionError("unreachable: n+1 vectors in an n-space")

    def elements_of_degree(self, h: int) -> list[int]:
        return [a for a in range(self.top.order) if self.degree_over_base(a) == h]

    def subfield_generator(self, h: int) -> int:
        """Smallest (by integer encoding) element of degree exactly ``h``."""
        if self.n % h:
            raise ValueError(f"{h} does not divide {self.n}")
        N = self.top.order
        # elements of GF(q^h) are the fixed points of xi -> xi^(q^h)
        for a in range(N):
            if self.top.pow(a, self.q**h) == a and self.degree_over_base(a) == h:
                return a
        raise AssertionError("unreachable")

    def conjugacy_representatives(self, elems) -> list[int]:
        """One element (the smallest) from each Frobenius orbit meeting ``elems``."""
        seen, reps = set(), []
        for a in sorted(elems):
            if a in seen:
                continue
            orbit = {a}
            b = a
            for _ in range(self.n):
                b = self.top.pow(b, self.q)
                orbit.add(b)
            seen |= orbit
            reps.append(a)
        return reps


def make_field_tower(p: int, k: int = 1, n: int = 1, base_modulus=None,
                     top_modulus=None) -> FieldTower:
    """Tower GF(p) < GF(p^k) < GF(p^{kn}) with lexicographically smallest
    irreducible moduli unless explicit ones are given."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1 or n < 1:
        raise ValueError("degrees must be >= 1")
    if p ** (k * n) > MAX_ORDER:
        raise ValueError(f"parameters too large: p^(kn) = {p ** (k * n)} exceeds {MAX_ORDER}")
    base = make_field(p, k, tuple(base_modulus) if base_modulus is not None else None)
    if top_modulus is None:
        top_modulus = smallest_irreducible(base, n)
    top = _extension(base, tuple(int(c) for c in top_modulus))
    if top.degree != n:
        raise ValueError(f"top modulus must have degree {n}")
    return FieldTower(p, k, n, base, top)


def tower_for_q(q: int, n: int, **kw) -> FieldTower:
    """Tower for a prime power ``q``."""
    for p in range(2, q + 1):
        if is_prime(p) and q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                break
            return make_field_tower(p, k, n, **kw)
    raise ValueError(f"{q} is not a prime power")
