"""Univariate polynomial algebra over F_p, extension fields, and the integers.

Polynomials are dense little-endian coefficient lists.  The zero polynomial
is the empty list; all functions keep coefficients canonical (reduced mod p,
no trailing zeros).
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .ff import ExtElement, ExtField, fp_inv, fp_pow
from .primes import prime_factors

# exhaustive root scans refuse primes at or above this bound
ROOT_SCAN_LIMIT = 2**22

# equal-degree splitting gives up after this many seeded attempts; on valid
# input the failure probability is below 2^-64, so hitting it means the
# caller's splitting precondition is wrong
_SPLIT_ATTEMPTS = 64


def poly_trim(h: list[int]) -> list[int]:
    h = list(h)
    while h and h[-1] == 0:
        h.pop()
    return h


def _norm(h, p: int) -> list[int]:
    return poly_trim([c % p for c in h])


def poly_deg(h) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(poly_trim(h)) - 1


def poly_eval(h, x: int, p: int) -> int:
    """Horner evaluation of h at x over F_p."""
    acc = 0
    for c in reversed(list(h)):
        acc = (acc * x + c) % p
    return acc


def eval_in_ext(h, x: ExtElement, F: ExtField) -> ExtElement:
    """Evaluate h (coefficients over F_p) at an extension element."""
    acc = F.zero
    for c in reversed(list(h)):
        acc = F.mul(acc, x)
        if c % F.p:
            acc = F.add(acc, F.from_base(c))
    return acc


def poly_add(a, b, p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return poly_trim([(x + y) % p for x, y in zip(a, b)])


def poly_sub(a, b, p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return poly_trim([(x - y) % p for x, y in zip(a, b)])


def poly_mul(a, b, p: int) -> list[int]:
    a, b = _norm(a, p), _norm(b, p)
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return poly_trim(out)


def poly_divmod(a, b, p: int) -> tuple[list[int], list[int]]:
    a, b = _norm(a, p), _norm(b, p)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    inv_lead = fp_inv(b[-1], p)
    rem = a[:]
    q = [0] * (len(a) - len(b) + 1)
    for d in range(len(a) - len(b), -1, -1):
        c = rem[d + len(b) - 1] * inv_lead % p
        if c:
            q[d] = c
            for j, bj in enumerate(b):
                rem[d + j] = (rem[d + j] - c * bj) % p
    return poly_trim(q), poly_trim(rem)


def poly_monic(h, p: int) -> list[int]:
    h = _norm(h, p)
    if not h:
        return []
    inv_lead = fp_inv(h[-1], p)
    return [c * inv_lead % p for c in h]


def poly_gcd(a, b, p: int) -> list[int]:
    """Monic gcd over F_p; poly_gcd(h, 0) is monic(h)."""
    a, b = _norm(a, p), _norm(b, p)
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    return poly_monic(a, p)


def poly_deriv(h, p: int) -> list[int]:
    return poly_trim([c * i % p for i, c in enumerate(h)][1:])


def poly_pow_mod(base, e: int, h, p: int) -> list[int]:
    """base^e mod h over F_p."""
    if e < 0:
        raise ValueError("negative exponent")
    result = [1]
    base = poly_divmod(base, h, p)[1]
    while e:
        if e & 1:
            result = poly_divmod(poly_mul(result, base, p), h, p)[1]
        base = poly_divmod(poly_mul(base, base, p), h, p)[1]
        e >>= 1
    return result


def poly_compose_mod(f, g, h, p: int) -> list[int]:
    """f(g) mod h over F_p, by Horner in the quotient ring."""
    acc: list[int] = []
    for c in reversed(_norm(f, p)):
        acc = poly_divmod(poly_mul(acc, g, p), h, p)[1]
        if c:
            acc = poly_add(acc, [c], p)
    return acc


def is_irreducible(h, p: int) -> bool:
    """Distinct-degree irreducibility test over F_p.

    h of degree d is irreducible iff x^(p^d) == x mod h and, for every
    prime l dividing d, x^(p^(d/l)) - x is coprime to h.  The iterated
    Frobenius powers are built by modular composition with x^p, using
    u(x)^p == u(x^p) mod (h, p).
    """
    h = poly_monic(h, p)
    d = len(h) - 1
    if d < 1:
        raise ValueError("irreducibility is only defined for degree >= 1")
    if d == 1:
        return True
    x = [0, 1]
    xp = poly_pow_mod(x, p, h, p)
    powers = [x, xp]  # powers[i] = x^(p^i) mod h
    for _ in range(d - 1):
        powers.append(poly_compose_mod(powers[-1], xp, h, p))
    if powers[d] != x:
        return False
    for ell in prime_factors(d):
        if poly_deg(poly_gcd(poly_sub(powers[d // ell], x, p), h, p)) > 0:
            return False
    return True


def roots_in_base(h, p: int) -> dict[int, bool]:
    """All roots of h in F_p by exhaustive scan, mapped to a repeated-root
    flag (true when gcd(h, h') also vanishes there).  Guarded to p < 2^22."""
    h = _norm(h, p)
    if len(h) < 2:
        raise ValueError("root scan needs degree >= 1")
    if p >= ROOT_SCAN_LIMIT:
        raise ValueError(f"p = {p} exceeds the exhaustive-scan guard {ROOT_SCAN_LIMIT}")
    sq = poly_gcd(h, poly_deriv(h, p), p)
    return {
        x: poly_eval(sq, x, p) == 0
        for x in range(p)
        if poly_eval(h, x, p) == 0
    }


# -- polynomials with extension-field coefficients (for root extraction) --


def _ext_trim(h: list[ExtElement], F: ExtField) -> list[ExtElement]:
    h = list(h)
    while h and h[-1] == F.zero:
        h.pop()
    return h


def _ext_mul(a, b, F: ExtField) -> list[ExtElement]:
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai != F.zero:
            for j, bj in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(ai, bj))
    return _ext_trim(out, F)


def _ext_divmod(a, b, F: ExtField):
    a, b = _ext_trim(a, F), _ext_trim(b, F)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    inv_lead = F.inv(b[-1])
    rem = a[:]
    q = [F.zero] * (len(a) - len(b) + 1)
    for d in range(len(a) - len(b), -1, -1):
        c = F.mul(rem[d + len(b) - 1], inv_lead)
        if c != F.zero:
            q[d] = c
            for j, bj in enumerate(b):
                rem[d + j] = F.sub(rem[d + j], F.mul(c, bj))
    return _ext_trim(q, F), _ext_trim(rem, F)


def _ext_monic(h, F: ExtField) -> list[ExtElement]:
    h = _ext_trim(h, F)
    if not h:
        return []
    inv_lead = F.inv(h[-1])
    return [F.mul(c, inv_lead) for c in h]


def _ext_gcd(a, b, F: ExtField) -> list[ExtElement]:
    a, b = _ext_trim(a, F), _ext_trim(b, F)
    while b:
        a, b = b, _ext_divmod(a, b, F)[1]
    return _ext_monic(a, F)


def _ext_pow_mod(base, e: int, h, F: ExtField) -> list[ExtElement]:
    result = [F.one]
    base = _ext_divmod(base, h, F)[1]
    while e:
        if e & 1:
            result = _ext_divmod(_ext_mul(result, base, F), h, F)[1]
        base = _ext_divmod(_ext_mul(base, base, F), h, F)[1]
        e >>= 1
    return result


def find_root_in_ext(h, F: ExtField, seed: int) -> ExtElement:
    """One root of h (over F_p) inside F, via seeded equal-degree splitting.

    The caller guarantees h splits into distinct linear factors over F
    (h irreducible over F_p with degree dividing F.k).  Repeatedly computes
    gcd(W, (x+delta)^((|F|-1)/2) - 1 mod W) for seeded random delta and keeps
    the smaller factor until a linear factor drops out.  Deterministic given
    (h, F, seed); exhausting the attempt bound signals a precondition bug.
    """
    if F.p == 2:
        raise ValueError("splitting requires odd characteristic")
    lifted = _ext_trim([F.from_base(c % F.p) for c in h], F)
    if len(lifted) < 2:
        raise ValueError("root extraction needs degree >= 1")
    w = _ext_monic(lifted, F)
    rng = random.Random(seed)
    e = (F.order() - 1) // 2
    attempts = 0
    while len(w) > 2:
        if attempts >= _SPLIT_ATTEMPTS:
            raise ValueError(
                "splitting did not terminate; input does not split into linears over the field"
            )
        attempts += 1
        delta = F.element_from_index(rng.randrange(F.order()))
        s = _ext_pow_mod([delta, F.one], e, w, F)
        if s:
            s = _ext_trim([F.sub(s[0], F.one)] + s[1:], F)
        else:
            s = [F.neg(F.one)]
        g = _ext_gcd(w, s, F)
        if 1 < len(g) < len(w):
            other = _ext_divmod(w, g, F)[0]
            w = g if len(g) <= len(other) else other
    root = F.neg(w[0])
    if eval_in_ext(h, root, F) != F.zero:
        raise AssertionError("extracted root fails to satisfy the polynomial")
    return root


# -- residues and roots of unity ------------------------------------------


def power_residue(a: int, m: int, p: int) -> bool:
    """True iff a is an m-th power in F_p*, by a^((p-1)/gcd(m, p-1)) == 1."""
    a %= p
    if a == 0:
        raise ValueError("power residue is defined on nonzero elements")
    d = math.gcd(m, p - 1)
    return fp_pow(a, (p - 1) // d, p) == 1


def primitive_nth_root(n: int, p: int) -> int | None:
    """Smallest element of F_p* with multiplicative order exactly n,
    or None when n does not divide p - 1."""
    if n < 1:
        raise ValueError("order must be positive")
    if (p - 1) % n != 0:
        return None
    factors = prime_factors(n) if n > 1 else []
    for c in range(1, p):
        if fp_pow(c, n, p) != 1:
            continue
        if all(fp_pow(c, n // ell, p) != 1 for ell in factors):
            return c
    return None


# -- exact integer resultants and discriminants ----------------------------


def int_poly_mul(a, b) -> list[int]:
    a, b = poly_trim(a), poly_trim(b)
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return poly_trim(out)


def _int_pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    # remainder of lc(b)^(deg a - deg b + 1) * a under division by b,
    # all-integer: one factor of lc(b) is applied per eliminated degree
    n = len(b) - 1
    lead = b[-1]
    r = list(a)
    for d in range(len(a) - 1, n - 1, -1):
        c = r[d]
        r = [lead * x for x in r]
        if c:
            for j in range(n + 1):
                r[d - n + j] -= c * b[j]
    return poly_trim(r)


def int_resultant(a, b) -> int:
    """Resultant of integer polynomials via pseudo-remainder recursion."""
    a, b = poly_trim(a), poly_trim(b)
    if not a or not b:
        raise ValueError("resultant of the zero polynomial is not defined here")

    def res(f: list[int], g: list[int]) -> Fraction:
        m, n = len(f) - 1, len(g) - 1
        if m < n:
            sign = -1 if (m * n) % 2 else 1
            return sign * res(g, f)
        if n == 0:
            return Fraction(g[0]) ** m
        r = _int_pseudo_rem(f, g)
        if not r:
            return Fraction(0)
        rho = len(r) - 1
        lead = Fraction(g[-1])
        sign = -1 if (m * n) % 2 else 1
        return sign * lead ** (m - rho) / lead ** (n * (m - n + 1)) * res(g, r)

    out = res(a, b)
    if out.denominator != 1:
        raise AssertionError("resultant recursion produced a non-integer")
    return int(out)


def discriminant(h) -> int:
    """Discriminant of an integer polynomial of degree >= 2:
    (-1)^(d(d-1)/2) * Res(h, h') / lc(h), all exact."""
    h = poly_trim(h)
    d = len(h) - 1
    if d < 2:
        raise ValueError("discriminant needs degree >= 2")
    deriv = poly_trim([c * i for i, c in enumerate(h)][1:])
    r = Fraction(int_resultant(h, deriv), h[-1])
    if r.denominator != 1:
        raise AssertionError("discriminant division was not exact")
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * int(r)


# -- serialization ----------------------------------------------------------

_DOMAINS = ("fp", "ext", "int")


def poly_to_json(coeffs, domain: str) -> dict:
    if domain not in _DOMAINS:
        raise ValueError(f"unknown polynomial domain {domain!r}")
    if domain == "ext":
        cs = [list(c) for c in coeffs]
    else:
        cs = [int(c) for c in coeffs]
    return {"domain": domain, "coeffs": cs}


def poly_from_json(data: dict) -> tuple[list, str]:
    if not isinstance(data, dict) or "domain" not in data or "coeffs" not in data:
        raise ValueError("polynomial JSON needs 'domain' and 'coeffs'")
    domain = data["domain"]
    if domain not in _DOMAINS:
        raise ValueError(f"unknown polynomial domain {domain!r}")
    if domain == "ext":
        coeffs = [tuple(int(x) for x in c) for c in data["coeffs"]]
    else:
        coeffs = [int(c) for c in data["coeffs"]]
    return coeffs, domain
