"""Qualifying primes and the explicit 4-by-6 biclique they carry in P(p,4).

A prime qualifies when p = 1 mod 3, x^3 - 2 and x^3 - 3 stay irreducible
mod p, x^3 - 6 splits into three distinct linear factors, and p divides
neither of the two discriminant constants below.  Each qualifying prime
yields ten explicit vertices of P(p,4) forming a complete bipartite 4x6
subgraph, verified both as graph adjacencies and as closed-form identities.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ff import ExtField, fp_inv
from .graph import BicliqueWitness, NormGraph, Vertex, make_graph
from .parallel import chunk_list, run_tasks
from .polys import (
    discriminant,
    int_poly_mul,
    is_irreducible,
    poly_pow_mod,
    power_residue,
    primitive_nth_root,
    roots_in_base,
)
from .primes import is_prime, primes_up_to

X3_MINUS_2 = [-2, 0, 0, 1]
X3_MINUS_3 = [-3, 0, 0, 1]
X3_MINUS_6 = [-6, 0, 0, 1]

# the cubic whose roots supply the second half of the witness
WITNESS_CUBIC = [7, 3, 21, 1]

# guard against transcription slips: both constants are recomputed from the
# integer polynomials at import and must land on the published values
PRODUCT_DISC = discriminant(int_poly_mul(X3_MINUS_2, X3_MINUS_3))
WITNESS_CUBIC_DISC = discriminant(WITNESS_CUBIC)
if PRODUCT_DISC != 26244:
    raise AssertionError(f"discriminant of (x^3-2)(x^3-3) came out as {PRODUCT_DISC}")
if WITNESS_CUBIC_DISC != -248832:
    raise AssertionError(f"discriminant of the witness cubic came out as {WITNESS_CUBIC_DISC}")

DENSITY_TARGET = 1 / 9


@dataclass(frozen=True)
class QualifyingCertificate:
    p: int
    zeta: int  # smallest primitive cube root of unity
    cubic_roots: tuple[int, int, int]  # roots of the witness cubic, ascending
    x3_2_irreducible: bool
    x3_3_irreducible: bool
    coprime_to_product_disc: bool
    coprime_to_cubic_disc: bool


@dataclass(frozen=True)
class Rejection:
    p: int
    reason: str


class DegeneracyError(ValueError):
    """Witness vertices collided or a second coordinate vanished."""

    def __init__(self, p: int, detail: str):
        super().__init__(f"degenerate witness at p = {p}: {detail}")
        self.p = p
        self.detail = detail


def _shared_reject(p: int) -> str | None:
    if not is_prime(p):
        return f"{p} is not prime"
    both = 26244 % p == 0 and 248832 % p == 0
    if both:
        return f"{p} divides both discriminants 26244 and -248832"
    if 26244 % p == 0:
        return f"{p} divides discriminant 26244"
    if 248832 % p == 0:
        return f"{p} divides discriminant -248832"
    return None


def _splits_into_distinct_linears(h, p: int) -> bool:
    # h splits completely with distinct roots iff x^p == x mod h; the
    # separability part is automatic here since gcd(x^3 - 6, 3x^2) = 1
    # whenever p does not divide 6
    return poly_pow_mod([0, 1], p, h, p) == [0, 1]


def _poly_formulation(p: int) -> str | None:
    """First failed condition of the splitting formulation, or None."""
    if p % 3 != 1:
        return f"{p} is not 1 mod 3 (no primitive cube root of unity)"
    if not is_irreducible(X3_MINUS_2, p):
        return f"2 is a cube mod {p} (x^3 - 2 is not irreducible)"
    if not is_irreducible(X3_MINUS_3, p):
        return f"3 is a cube mod {p} (x^3 - 3 is not irreducible)"
    if not _splits_into_distinct_linears(X3_MINUS_6, p):
        return f"6 is not a cube mod {p} (x^3 - 6 does not split)"
    return None


def _residue_formulation(p: int) -> bool:
    """Equivalent verdict from two exponentiations instead of factoring."""
    return (
        p % 3 == 1
        and not power_residue(2, 3, p)
        and power_residue(6, 3, p)
    )


def qualifying_verdict(p: int) -> tuple[bool, str]:
    """(qualifies, reason); reason is empty on success.  Both formulations
    are evaluated and must agree."""
    shared = _shared_reject(p)
    if shared is not None:
        return False, shared
    reason = _poly_formulation(p)
    poly_ok = reason is None
    residue_ok = _residue_formulation(p)
    if poly_ok != residue_ok:
        raise AssertionError(
            f"splitting and residue formulations disagree at p = {p}: "
            f"{poly_ok} vs {residue_ok}"
        )
    return poly_ok, reason or ""


def is_qualifying_prime(p: int) -> QualifyingCertificate | Rejection:
    """Certificate with the splitting data, or a first-failure rejection."""
    ok, reason = qualifying_verdict(p)
    if not ok:
        return Rejection(p, reason)
    zeta = primitive_nth_root(3, p)
    roots = roots_in_base(WITNESS_CUBIC, p)
    if len(roots) != 3 or any(roots.values()):
        raise AssertionError(
            f"witness cubic failed to split into distinct roots at qualifying p = {p}"
        )
    return QualifyingCertificate(
        p=p,
        zeta=zeta,
        cubic_roots=tuple(sorted(roots)),
        x3_2_irreducible=True,
        x3_3_irreducible=True,
        coprime_to_product_disc=True,
        coprime_to_cubic_disc=True,
    )


# -- the sieve ---------------------------------------------------------------


@dataclass(frozen=True)
class SieveRow:
    p: int
    qualifying: bool
    reason: str


@dataclass
class SieveResult:
    limit: int
    rows: list[SieveRow]

    @property
    def qualifying(self) -> list[int]:
        return [r.p for r in self.rows if r.qualifying]

    @property
    def count(self) -> int:
        return sum(1 for r in self.rows if r.qualifying)

    @property
    def pi(self) -> int:
        return len(self.rows)

    @property
    def ratio(self) -> float:
        return self.count / self.pi if self.pi else 0.0


def _sieve_chunk(ps: list[int]) -> list[SieveRow]:
    return [SieveRow(p, *qualifying_verdict(p)) for p in ps]


def sieve_qualifying(limit: int, jobs: int = 1) -> SieveResult:
    """Verdict for every prime <= limit, both formulations cross-checked."""
    if limit < 2:
        raise ValueError("sieve limit must be >= 2")
    primes = primes_up_to(limit)
    parts = 1 if jobs <= 1 else jobs * 4
    chunks = run_tasks(_sieve_chunk, chunk_list(primes, parts), jobs)
    rows = [row for chunk in chunks for row in chunk]
    return SieveResult(limit=limit, rows=rows)


def sieve_to_csv(res: SieveResult) -> str:
    lines = ["p,qualifying,reason"]
    for r in res.rows:
        lines.append(f"{r.p},{1 if r.qualifying else 0},{r.reason}")
    return "\n".join(lines) + "\n"


def sieve_from_csv(text: str, limit: int) -> SieveResult:
    lines = text.splitlines()
    if not lines or lines[0] != "p,qualifying,reason":
        raise ValueError("bad sieve CSV header")
    rows = []
    for ln in lines[1:]:
        parts = ln.split(",", 2)
        if len(parts) != 3 or parts[1] not in ("0", "1"):
            raise ValueError(f"bad sieve CSV row: {ln!r}")
        rows.append(SieveRow(int(parts[0]), parts[1] == "1", parts[2]))
    return SieveResult(limit=limit, rows=rows)


def sieve_summary(res: SieveResult) -> dict:
    return {
        "limit": res.limit,
        "count": res.count,
        "pi": res.pi,
        "ratio": res.ratio,
        "target": DENSITY_TARGET,
    }


# -- witness construction ------------------------------------------------------


@dataclass
class WitnessK46:
    certificate: QualifyingCertificate
    field: ExtField
    A: list[Vertex]
    B: list[Vertex]


def build_witness(
    cert: QualifyingCertificate, root_order: tuple[int, int, int] = (0, 1, 2)
) -> WitnessK46:
    """Materialize the ten witness vertices over F_p[x]/(x^3 - 2).

    root_order permutes the three cubic roots feeding the last three B
    vertices; every permutation yields the same vertex set, so the option
    exists to demonstrate exactly that.  Vertex collisions or vanishing
    second coordinates raise DegeneracyError rather than passing silently;
    no qualifying prime is known to trigger it.
    """
    if sorted(root_order) != [0, 1, 2]:
        raise ValueError(f"root_order must permute (0, 1, 2), got {root_order!r}")
    p = cert.p
    field = ExtField(p, 3, X3_MINUS_2)
    inv2 = fp_inv(2, p)
    inv4 = fp_inv(4, p)
    A = [
        Vertex((0, 0, 0), 3 % p),
        Vertex((1, 0, 0), 4 % p),
        Vertex((2, 0, 0), 5 % p),
        Vertex((1, 1, 0), 6 % p),
    ]
    B = []
    zk = 1
    for _ in range(3):
        B.append(Vertex((p - 1, 0, zk), 1))
        zk = zk * cert.zeta % p
    for idx in root_order:
        eta = cert.cubic_roots[idx]
        c2 = -(1 - eta) * inv4 % p
        c1 = -(1 + eta) * inv2 % p
        v = (1 + 3 * eta * eta) * inv4 % p
        B.append(Vertex((p - 1, c1, c2), v))
    w = WitnessK46(certificate=cert, field=field, A=A, B=B)
    _check_degeneracy(w)
    return w


def _check_degeneracy(w: WitnessK46) -> None:
    p = w.certificate.p
    for label, vertices in (("A", w.A), ("B", w.B)):
        for i, v in enumerate(vertices):
            if v.a % p == 0:
                raise DegeneracyError(p, f"second coordinate of {label}[{i}] vanishes")
    seen: dict[Vertex, str] = {}
    for label, vertices in (("A", w.A), ("B", w.B)):
        for i, v in enumerate(vertices):
            key = f"{label}[{i}]"
            if v in seen:
                raise DegeneracyError(p, f"vertices {seen[v]} and {key} collide")
            seen[v] = key


# -- witness verification -------------------------------------------------------


@dataclass
class WitnessReport:
    biclique: BicliqueWitness
    adjacency_checked: int
    identity_checked: int
    identity_failures: list[str]

    @property
    def adjacency_failures(self) -> list:
        return self.biclique.report.failed_pairs

    @property
    def passed(self) -> bool:
        return self.biclique.report.passed and not self.identity_failures


def verify_witness(w: WitnessK46) -> WitnessReport:
    """Both layers, each sufficient to falsify a bad witness.

    Graph layer: all 24 cross pairs adjacent in P(p,4) over x^3 - 2.
    Identity layer: for each B vertex (a*theta^2 + b*theta - 1, v), the four
    closed-form equations obtained by expanding norm(alpha_B + alpha_A)
    against each A vertex:
        4a^3 + 2b^3 + 6ab - 1 = 3v
        4a^3 + 2b^3           = 4v
        4a^3 + 2b^3 - 6ab + 1 = 5v
        4a^3 + 2b^3 + 6b^2 + 6b + 2 = 6v
    """
    p = w.certificate.p
    G = make_graph(p, 4, X3_MINUS_2)
    biclique = G.verify_biclique(w.A, w.B)

    identity_failures = []
    for i, vert in enumerate(w.B):
        const, b, a = vert.alpha
        v = vert.a
        if const != p - 1:
            identity_failures.append(f"B[{i}] constant term is {const}, expected {p - 1}")
            continue
        base = (4 * a**3 + 2 * b**3) % p
        checks = [
            ((base + 6 * a * b - 1) % p, 3 * v % p),
            (base, 4 * v % p),
            ((base - 6 * a * b + 1) % p, 5 * v % p),
            ((base + 6 * b * b + 6 * b + 2) % p, 6 * v % p),
        ]
        for j, (lhs, rhs) in enumerate(checks):
            if lhs != rhs:
                identity_failures.append(
                    f"B[{i}] identity against A[{j}] fails: {lhs} != {rhs}"
                )
    return WitnessReport(
        biclique=biclique,
        adjacency_checked=len(w.A) * len(w.B),
        identity_checked=4 * len(w.B),
        identity_failures=identity_failures,
    )


def witness_graph(w: WitnessK46) -> NormGraph:
    return make_graph(w.certificate.p, 4, X3_MINUS_2)
