"""Finite fields GF(p^h) in a polynomial basis.

Elements are encoded as integers ``sum(c_i * p**i)`` where ``c_0 .. c_{h-1}``
are the polynomial-basis coefficients (low degree first).  The encoding gives
a canonical total order on the field which the rest of the package relies on
for deterministic enumeration.  ``0`` and ``1`` encode the field's zero and one.

The :class:`GF` object holds exp/log tables (and full addition and
multiplication tables for small fields) so that every operation works
vectorised on numpy integer arrays as well as on python ints.
"""

from __future__ import annotations

import functools
from typing import Iterable, Sequence

import numpy as np

MAX_ORDER = 2**16
_TABLE_LIMIT = 512


class FieldError(ValueError):
    """Invalid field parameters or an illegal field operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient lists low degree first
# ---------------------------------------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod(out, m, p)


def _ppowmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _psub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a polynomial over GF(p)."""
    f = _trim([c % p for c in modulus])
    h = len(f) - 1
    if h < 1:
        return False
    if h == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**h, f, p), x, p):
        return False
    for r in _prime_factors(h):
        g = _pgcd(f, _psub(_ppowmod(x, p ** (h // r), f, p), x, p), p)
        if len(g) > 1:
            return False
    return True


def least_irreducible(p: int, h: int) -> tuple[int, ...]:
    """Least monic irreducible of degree ``h`` over GF(p).

    Polynomials are compared by their integer encoding, i.e. lexicographically
    from the leading coefficient down.
    """
    if h == 1:
        return (0, 1)
    for code in range(p**h):
        low = [(code // p**i) % p for i in range(h)]
        cand = low + [1]
        if cand[0] and is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {h} over GF({p})")


# ---------------------------------------------------------------------------
# the field
# ---------------------------------------------------------------------------

class GF:
    """The finite field GF(p^h).

    Use :func:`field_create` rather than the constructor: it caches fields so
    that equal parameters give the identical object.
    """

    def __init__(self, p: int, h: int, modulus: Sequence[int]):
        self.p = p
        self.h = h
        self.q = p**h
        self.modulus = tuple(int(c) for c in modulus)
        self._powers = np.array([p**i for i in range(h)], dtype=np.int64)
        self.generator = self._find_generator()
        q = self.q
        exp = np.zeros(2 * q, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, self.generator)
        exp[q - 1: 2 * (q - 1)] = exp[: q - 1]
        self._exp = exp
        self._log = log
        self._neg = np.array([self._slow_neg(a) for a in range(q)], dtype=np.int64)
        self._inv = np.zeros(q, dtype=np.int64)
        self._inv[1:] = exp[(q - 1 - log[1:]) % (q - 1)]
        self.add_table = self.mul_table = None
        if q <= _TABLE_LIMIT:
            a = np.arange(q)
            self.add_table = self._digit_add(a[:, None], a[None, :])
            self.mul_table = self._log_mul(a[:, None], a[None, :])

    # -- construction helpers ------------------------------------------------
    def _coeffs(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.h)]

    def _encode(self, coeffs: Iterable[int]) -> int:
        return sum(int(c) % self.p * self.p**i for i, c in enumerate(coeffs))

    def _slow_neg(self, a: int) -> int:
        return self._encode((-c) % self.p for c in self._coeffs(a))

    def _slow_mul(self, a: int, b: int) -> int:
        return self._encode(_pmulmod(self._coeffs(a), self._coeffs(b), list(self.modulus), self.p))

    def _find_generator(self) -> int:
        q = self.q
        if q == 2:
            return 1
        factors = _prime_factors(q - 1)
        mod = list(self.modulus)
        for g in range(2, q):
            c = self._coeffs(g)
            if all(_ppowmod(c, (q - 1) // r, mod, self.p) != [1] for r in factors):
                return g
        raise FieldError("no primitive element found")  # pragma: no cover

    def _digit_add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        out = 0
        for w in self._powers.tolist():
            out = out + ((a // w % self.p + b // w % self.p) % self.p) * w
        return out

    def _log_mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    # -- vectorised arithmetic ---------------------------------------------
    def add(self, a, b):
        if self.add_table is not None:
            return self.add_table[a, b]
        return self._digit_add(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if self.mul_table is not None:
            return self.mul_table[a, b]
        return self._log_mul(a, b)

    def inv(self, a):
        a_arr = np.asarray(a)
        if np.any(a_arr == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, n: int):
        """``a**n`` for an integer ``n >= 0`` (``0**0 == 1``)."""
        if n < 0:
            return self.power(self.inv(a), -n)
        a = np.asarray(a, dtype=np.int64)
        if n == 0:
            r = np.ones_like(a)
        else:
            r = np.where(a == 0, 0, self._exp[(self._log[a] * (n % (self.q - 1))) % (self.q - 1)])
        return r if r.ndim else int(r)

    def frobenius(self, a, e: int = 1):
        """``a**(p**e)``; ``e`` is taken modulo ``h``."""
        return self.power(a, self.p ** (e % self.h))

    def trace2(self, a):
        """Absolute trace GF(2^h) -> GF(2)."""
        if self.p != 2:
            raise FieldError("trace2 requires characteristic 2")
        acc = np.zeros_like(np.asarray(a, dtype=np.int64))
        x = np.asarray(a, dtype=np.int64)
        for _ in range(self.h):
            acc = self.add(acc, x)
            x = self.mul(x, x)
        return acc if acc.ndim else int(acc)

    def sum(self, values, axis=None):
        """Field sum of an integer array along ``axis`` (all entries if None)."""
        arr = np.asarray(values, dtype=np.int64)
        if axis is None:
            arr = arr.reshape(-1)
            axis = 0
        arr = np.moveaxis(arr, axis, 0)
        if arr.shape[0] == 0:
            return np.zeros(arr.shape[1:], dtype=np.int64) if arr.ndim > 1 else 0
        if self.p == 2:
            r = np.bitwise_xor.reduce(arr, axis=0)
        elif self.h == 1:
            r = arr.sum(axis=0) % self.p
        else:
            r = arr[0]
            for row in arr[1:]:
                r = self.add(r, row)
        return r if np.ndim(r) else int(r)

    def prod(self, values, axis=None):
        arr = np.asarray(values, dtype=np.int64)
        if axis is None:
            arr = arr.reshape(-1)
            axis = 0
        arr = np.moveaxis(arr, axis, 0)
        r = np.ones(arr.shape[1:], dtype=np.int64)
        for row in arr:
            r = self.mul(r, row)
        return r if np.ndim(r) else int(r)

    def dot(self, a, b):
        """Field inner product over the last axis (broadcasting)."""
        return self.sum(self.mul(np.asarray(a), np.asarray(b)), axis=-1)

    def matmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        # 1-d operands follow numpy's promotion rules
        if A.ndim == 1:
            return self.matmul(A[None, :], B)[..., 0, :]
        if B.ndim == 1:
            return self.matmul(A, B[:, None])[..., 0]
        if A.shape[-1] != B.shape[-2]:
            raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
        # accumulate over the inner index so memory stays O(output)
        out = None
        for j in range(A.shape[-1]):
            term = self.mul(A[..., :, j, None], B[..., None, j, :])
            out = term if out is None else self.add(out, term)
        if out is None:
            return np.zeros(np.broadcast_shapes(A.shape[:-1], B.shape[:-2] + (1,))[:-1] + (B.shape[-1],), dtype=np.int64)
        return out

    # -- misc ----------------------------------------------------------------
    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def from_int(self, n: int) -> int:
        """Image of an integer under the prime-field embedding."""
        return n % self.p

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(self._coeffs(int(a)))

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.h:
            raise FieldError("too many coefficients")
        return self._encode(coeffs)

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        lg = int(self._log[a])
        from math import gcd
        return (self.q - 1) // gcd(lg, self.q - 1)

    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            return value
        if isinstance(value, (tuple, list)):
            return FieldElem(self, self.from_coeffs(value))
        return FieldElem(self, self.from_int(int(value)) if self.h == 1 else int(value))

    def to_json(self) -> dict:
        return {"p": self.p, "h": self.h, "modulus": list(self.modulus)}

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.h})" if self.h > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (field_create, (self.p, self.h, self.modulus))


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, h: int, modulus: tuple[int, ...]) -> GF:
    return GF(p, h, modulus)


def field_create(p: int, h: int = 1, modulus: Sequence[int] | None = None) -> GF:
    """Validated GF(p^h).

    Without ``modulus`` the least monic irreducible of degree ``h`` is used
    (see :func:`least_irreducible`).  ``modulus`` lists coefficients low
    degree first and must be monic of degree ``h``.
    """
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if h < 1:
        raise FieldError("extension degree must be >= 1")
    if p**h > MAX_ORDER:
        raise FieldError(f"field order {p}^{h} exceeds {MAX_ORDER}")
    if modulus is None:
        mod = least_irreducible(p, h)
    else:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != h + 1 or mod[-1] == 0:
            raise FieldError(f"modulus must have degree {h}")
        if mod[-1] != 1:
            inv = pow(mod[-1], p - 2, p)
            mod = tuple(c * inv % p for c in mod)
        if not is_irreducible(mod, p):
            raise FieldError(f"modulus {mod} is reducible over GF({p})")
    return _cached_field(p, h, mod)


def field_of_order(q: int) -> GF:
    """GF(q) with the default modulus."""
    for p in range(2, q + 1):
        if q % p == 0:
            h = 0
            n = q
            while n % p == 0:
                n //= p
                h += 1
            if n != 1:
                break
            return field_create(p, h)
    raise FieldError(f"{q} is not a prime power")


def field_from_json(d: dict) -> GF:
    return field_create(int(d["p"]), int(d["h"]), d.get("modulus"))


def embedding(small: GF, big: GF) -> np.ndarray:
    """Lookup array mapping each element of ``small`` to its image in ``big``.

    The image of the polynomial-basis generator is the least root of
    ``small.modulus`` in ``big``.
    """
    if small.p != big.p or big.h % small.h:
        raise FieldError(f"{small} is not a subfield of {big}")
    mod = small.modulus
    xs = big.elements()
    val = np.zeros_like(xs)
    for c in reversed(mod):
        val = big.add(big.mul(val, xs), c)
    roots = np.flatnonzero(val == 0)
    r = int(roots[0])
    out = np.zeros(small.q, dtype=np.int64)
    for a in range(small.q):
        acc = 0
        pw = 1
        for c in small.coeffs(a):
            if c:
                acc = int(big.add(acc, big.mul(c, pw)))
            pw = int(big.mul(pw, r))
        out[a] = acc
    return out


class FieldElem:
    """A single field element with operator overloading.

    Handy for scalar work and doctests; bulk computations use :class:`GF`
    methods on integer arrays directly.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: GF, value: int):
        self.field = field
        self.value = int(value)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field is not self.field:
                raise FieldError("operands belong to different fields")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.field.from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElem(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElem(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return FieldElem(self.field, self.field.sub(b, self.value))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        b = self._other(other)
        return FieldElem(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        return FieldElem(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        b = self._other(other)
        return FieldElem(self.field, self.field.div(self.value, b))

    def __pow__(self, n: int):
        return FieldElem(self.field, self.field.power(self.value, int(n)))

    def frobenius(self, e: int = 1) -> "FieldElem":
        return FieldElem(self.field, self.field.frobenius(self.value, e))

    def trace2(self) -> "FieldElem":
        return FieldElem(self.field, self.field.trace2(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field is other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == self.field.from_int(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.value))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.field!r}({self.value})"


def frobenius(x: FieldElem, e: int) -> FieldElem:
    return x.frobenius(e)


def trace2(x: FieldElem) -> FieldElem:
    return x.trace2()


def fractional_power(field: GF, a, num: int, den: int = 1):
    """Evaluate the function ``x -> x**(num/den)`` on GF(q).

    On nonzero elements the exponent is ``num * den^{-1} mod (q-1)``, which
    requires ``gcd(den, q-1) == 1``; zero maps to zero.
    """
    m = field.q - 1
    if m == 1:
        e = 1
    else:
        from math import gcd
        if gcd(den, m) != 1:
            raise FieldError(f"exponent 1/{den} undefined on GF({field.q})")
        e = num * pow(den, -1, m) % m
        if e == 0:
            e = m
    a = np.asarray(a, dtype=np.int64)
    r = np.where(a == 0, 0, field.power(a, e))
    return r if r.ndim else int(r)
