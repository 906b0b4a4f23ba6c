"""Exact arithmetic in prime fields F_p and extensions GF(p^k).

Extension elements are plain tuples of k ints (coefficients of
1, x, ..., x^(k-1), little-endian) reduced mod p.  All arithmetic is
exact integer arithmetic; nothing here floats.
"""

from __future__ import annotations

import json

from .primes import is_prime, prime_factors

ExtElement = tuple[int, ...]

# elements() refuses to enumerate fields beyond this many elements
_ENUM_LIMIT = 2**40


def fp_pow(a: int, e: int, p: int) -> int:
    """a**e mod p.  Convention: 0**0 == 1.  Negative e inverts first."""
    if p < 2:
        raise ValueError(f"modulus must be >= 2, got {p}")
    return pow(a % p, e, p)


def fp_inv(a: int, p: int) -> int:
    """Multiplicative inverse of a mod prime p."""
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse")
    return pow(a, -1, p)


class ExtField:
    """GF(p^k) presented as F_p[x] / (modulus).

    The modulus must be monic of degree k and irreducible mod p; the
    constructor verifies all three (irreducibility by the distinct-degree
    criterion: x^(p^k) == x in the quotient ring, and x^(p^(k/l)) - x a
    unit for every prime l dividing k).
    """

    def __init__(self, p: int, k: int, modulus: list[int] | tuple[int, ...]):
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        mod = tuple(c % p for c in modulus)
        if len(mod) != k + 1 or mod[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {k}")
        self.p = p
        self.k = k
        self.modulus = mod
        self.zero: ExtElement = (0,) * k
        self.one: ExtElement = (1,) + (0,) * (k - 1)
        # class of x; in a degree-1 field x reduces to the constant -mod[0]
        if k == 1:
            self.gen: ExtElement = ((-mod[0]) % p,)
        else:
            self.gen = (0, 1) + (0,) * (k - 2)
        self._xp = self.pow(self.gen, p)  # x^p, drives frobenius()
        self._check_irreducible()

    # -- construction / validation -------------------------------------

    def _check_irreducible(self) -> None:
        u = self.gen
        powers = [u]  # powers[i] = x^(p^i) in the quotient ring
        for _ in range(self.k):
            powers.append(self.pow(powers[-1], self.p))
        if powers[self.k] != self.gen:
            raise ValueError("modulus is not irreducible (x^(p^k) != x)")
        for ell in prime_factors(self.k) if self.k > 1 else []:
            d = self.sub(powers[self.k // ell], self.gen)
            if d == self.zero or not self._is_unit(d):
                raise ValueError("modulus is not irreducible (nontrivial factor found)")

    def _is_unit(self, a: ExtElement) -> bool:
        try:
            self.inv(a)
        except ZeroDivisionError:
            return False
        return True

    def element(self, coeffs) -> ExtElement:
        """Normalize an iterable of ints to a valid element (reduce mod p, pad)."""
        cs = [int(c) % self.p for c in coeffs]
        if len(cs) > self.k:
            raise ValueError(f"too many coefficients for degree-{self.k} extension")
        cs.extend([0] * (self.k - len(cs)))
        return tuple(cs)

    def from_base(self, c: int) -> ExtElement:
        return (c % self.p,) + (0,) * (self.k - 1)

    # -- ring operations ------------------------------------------------

    def add(self, a: ExtElement, b: ExtElement) -> ExtElement:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: ExtElement, b: ExtElement) -> ExtElement:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a: ExtElement) -> ExtElement:
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a: ExtElement, b: ExtElement) -> ExtElement:
        p, k, mod = self.p, self.k, self.modulus
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        # reduce x^(k+d) via the monic modulus, top down
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d] % p
            if c:
                for j in range(k):
                    prod[d - k + j] -= c * mod[j]
        return tuple(c % p for c in prod[:k])

    def pow(self, a: ExtElement, e: int) -> ExtElement:
        if e < 0:
            a = self.inv(a)
            e = -e
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: ExtElement) -> ExtElement:
        """Inverse via extended Euclid against the modulus."""
        if a == self.zero:
            raise ZeroDivisionError("0 has no inverse")
        p = self.p
        r0 = list(self.modulus)
        r1 = [c for c in a]
        s0, s1 = [0], [1]
        while any(r1):
            while r1 and r1[-1] == 0:
                r1.pop()
            q, rem = _poly_divmod_fp(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub_fp(s0, _poly_mul_fp(q, s1, p), p)
        while r0 and r0[-1] == 0:
            r0.pop()
        if len(r0) != 1:
            raise ZeroDivisionError("element is not a unit (shares a factor with the modulus)")
        c = fp_inv(r0[0], p)
        out = [x * c % p for x in s0]
        out.extend([0] * (self.k - len(out)))
        return tuple(out[: self.k])

    # -- field structure -------------------------------------------------

    def frobenius(self, a: ExtElement) -> ExtElement:
        """a^p, computed as the coefficient-wise substitution x -> x^p."""
        # a(x)^p == a(x^p) mod p, so Horner-evaluate a at the cached x^p
        acc = self.zero
        for c in reversed(a):
            acc = self.mul(acc, self._xp)
            if c:
                acc = self.add(acc, self.from_base(c))
        return acc

    def norm_conj(self, a: ExtElement) -> int:
        """Norm to F_p as the product of the k Frobenius conjugates."""
        acc = a
        conj = a
        for _ in range(self.k - 1):
            conj = self.frobenius(conj)
            acc = self.mul(acc, conj)
        if any(acc[1:]):
            raise AssertionError("conjugate product did not land in the base field")
        return acc[0]

    def norm_det(self, a: ExtElement) -> int:
        """Norm to F_p as det of the multiplication-by-a matrix."""
        p, k = self.p, self.k
        # column j = a * x^j expressed in the power basis
        cols = []
        cur = a
        for _ in range(k):
            cols.append(cur)
            cur = self.mul(cur, self.gen)
        m = [[cols[j][i] for j in range(k)] for i in range(k)]
        det = 1
        for col in range(k):
            pivot = None
            for row in range(col, k):
                if m[row][col]:
                    pivot = row
                    break
            if pivot is None:
                return 0
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                det = -det % p
            det = det * m[col][col] % p
            inv_piv = fp_inv(m[col][col], p)
            for row in range(col + 1, k):
                factor = m[row][col] * inv_piv % p
                if factor:
                    m[row] = [(x - factor * y) % p for x, y in zip(m[row], m[col])]
        return det

    def norm_pow(self, a: ExtElement) -> int:
        """Norm to F_p as a^((p^k - 1)/(p - 1))."""
        if a == self.zero:
            return 0
        e = (self.p**self.k - 1) // (self.p - 1)
        v = self.pow(a, e)
        if any(v[1:]):
            raise AssertionError("norm power did not land in the base field")
        return v[0]

    def norm(self, a: ExtElement) -> int:
        """Norm to F_p, computed by two independent routes that must agree."""
        n1 = self.norm_conj(a)
        n2 = self.norm_det(a)
        if n1 != n2:
            raise AssertionError(f"norm mismatch: conjugate product {n1} vs determinant {n2}")
        return n1

    # -- enumeration and serialization ------------------------------------

    def order(self) -> int:
        return self.p**self.k

    def index(self, a: ExtElement) -> int:
        """Bijection onto 0..p^k-1: sum of c_i * p^i."""
        n = 0
        for c in reversed(a):
            n = n * self.p + c
        return n

    def element_from_index(self, n: int) -> ExtElement:
        if not 0 <= n < self.order():
            raise ValueError(f"index {n} out of range for a field of order {self.order()}")
        out = []
        for _ in range(self.k):
            out.append(n % self.p)
            n //= self.p
        return tuple(out)

    def elements(self):
        """Yield every element in index order.  Refuses fields above 2^40."""
        if self.order() > _ENUM_LIMIT:
            raise ValueError(f"field of order {self.order()} is too large to enumerate")
        for n in range(self.order()):
            yield self.element_from_index(n)

    def to_json(self) -> str:
        return json.dumps({"p": self.p, "k": self.k, "modulus": list(self.modulus)})

    @classmethod
    def from_json(cls, text: str) -> "ExtField":
        d = json.loads(text)
        return cls(d["p"], d["k"], d["modulus"])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtField):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"ExtField(p={self.p}, k={self.k}, modulus={list(self.modulus)})"


def element_to_json(a: ExtElement) -> list[int]:
    return list(a)


def element_from_json(field: ExtField, data) -> ExtElement:
    if not isinstance(data, list) or len(data) != field.k:
        raise ValueError(f"element must be a list of {field.k} ints")
    return field.element(data)


# -- bare F_p[x] helpers shared with inv(); dense little-endian lists  ----


def _poly_sub_fp(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return [(x - y) % p for x, y in zip(a, b)]


def _poly_mul_fp(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_divmod_fp(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = [c % p for c in a]
    b = [c % p for c in b]
    while b and b[-1] == 0:
        b.pop()
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = fp_inv(b[-1], p)
    rem = a[:]
    if len(rem) < len(b):
        return [], rem
    q = [0] * (len(rem) - len(b) + 1)
    for d in range(len(rem) - len(b), -1, -1):
        c = rem[d + len(b) - 1] * inv_lead % p
        if c:
            q[d] = c
            for j, bj in enumerate(b):
                rem[d + j] = (rem[d + j] - c * bj) % p
    while rem and rem[-1] == 0:
        rem.pop()
    return q, rem
