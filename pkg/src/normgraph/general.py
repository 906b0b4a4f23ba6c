"""Effective search for K_{t-1,m} witnesses in P(p,t).

The construction needs a prime p carrying a primitive (t-2)-root of unity
and all m roots of x^m - 2, plus a shift r making every polynomial
x^(t-1) - x + theta_i - r irreducible mod p.  Candidates are found by a
direct scan (a value-set prefilter over r, then full irreducibility tests),
so every returned parameter set is verified rather than promised.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ff import ExtElement, ExtField
from .graph import BicliqueWitness, NormGraph, Vertex, make_graph
from .parallel import chunk_list, run_tasks
from .polys import (
    find_root_in_ext,
    is_irreducible,
    poly_eval,
    poly_gcd,
    power_residue,
    primitive_nth_root,
    roots_in_base,
)
from .primes import primes_up_to


@dataclass(frozen=True)
class GeneralParams:
    t: int
    m: int
    p: int
    r: int
    thetas: tuple[int, ...]  # the m roots of x^m - 2 mod p, ascending
    zeta: int  # primitive (t-2)-root of unity mod p


@dataclass
class GeneralWitness:
    params: GeneralParams
    field: ExtField
    A: list[Vertex]  # t-1 vertices (zeta^k, 1) for k = 1..t-2, plus (0, 1)
    B: list[Vertex]  # m vertices (-alpha_i, theta_i - r)
    alphas: list[ExtElement]


def shifted_poly(t: int, theta: int, r: int, p: int) -> list[int]:
    """x^(t-1) - x + theta - r over F_p, little-endian."""
    coeffs = [(theta - r) % p, (-1) % p] + [0] * (t - 3)
    coeffs.append(1)
    return coeffs


def _prime_preconditions(t: int, m: int, p: int):
    """(thetas, zeta) when p satisfies the congruence/residue conditions,
    else None."""
    if (p - 1) % (t - 2) != 0:
        return None
    zeta = primitive_nth_root(t - 2, p)
    if zeta is None:
        return None
    if m == 1:
        if 2 % p == 0:
            return None
        return (2 % p,), zeta
    if (p - 1) % m != 0 or not power_residue(2, m, p):
        return None
    roots = sorted(roots_in_base([-2] + [0] * (m - 1) + [1], p))
    if len(roots) != m:
        raise AssertionError(f"x^{m} - 2 did not split into {m} distinct roots mod {p}")
    return tuple(roots), zeta


def _scan_prime(task) -> list[GeneralParams]:
    t, m, p = task
    pre = _prime_preconditions(t, m, p)
    if pre is None:
        return []
    thetas, zeta = pre
    # value-set prefilter: x^(t-1) - x + theta - r has a root at x0 exactly
    # when x0^(t-1) - x0 = r - theta, so r must dodge the value set for
    # every theta; survivors still get the full irreducibility test
    in_values = bytearray(p)
    for x in range(p):
        in_values[(pow(x, t - 1, p) - x) % p] = 1
    out = []
    for r in range(p):
        if any(in_values[(r - th) % p] for th in thetas):
            continue
        if all(is_irreducible(shifted_poly(t, th, r, p), p) for th in thetas):
            out.append(GeneralParams(t=t, m=m, p=p, r=r, thetas=thetas, zeta=zeta))
    return out


def find_parameters(
    t: int,
    m: int,
    prime_limit: int,
    max_results: int | None = None,
    jobs: int = 1,
) -> list[GeneralParams]:
    """All (p, r) with p <= prime_limit admitting the construction,
    ascending by (p, r); empty is a legitimate outcome."""
    if t < 4:
        raise ValueError(f"t must be >= 4, got {t}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    tasks = [(t, m, p) for p in primes_up_to(prime_limit)]
    parts = 1 if jobs <= 1 else jobs * 4
    found: list[GeneralParams] = []
    for group in chunk_list(tasks, parts):
        for result in run_tasks(_scan_prime, group, jobs):
            found.extend(result)
        if max_results is not None and len(found) >= max_results:
            break
    if max_results is not None:
        found = found[:max_results]
    return found


def build_general_witness(params: GeneralParams, seed: int = 0) -> GeneralWitness:
    """Assemble the witness: the extension is F_p[x]/(f_1 - r) so the first
    root is the class of x; the others come out of equal-degree splitting."""
    t, m, p, r = params.t, params.m, params.p, params.r
    for i, th in enumerate(params.thetas):
        if (th - r) % p == 0:
            raise ValueError(
                f"theta_{i + 1} - r vanishes mod {p}; the shifted polynomial has root 0"
            )
    field = ExtField(p, t - 1, shifted_poly(t, params.thetas[0], r, p))
    alphas = [field.gen]
    for th in params.thetas[1:]:
        alphas.append(find_root_in_ext(shifted_poly(t, th, r, p), field, seed))
    if len(set(alphas)) != m:
        raise AssertionError("extracted roots are not pairwise distinct")

    A = []
    zk = 1
    for _ in range(t - 2):
        zk = zk * params.zeta % p
        A.append(Vertex(field.from_base(zk), 1))
    A.append(Vertex(field.zero, 1))
    B = [
        Vertex(field.neg(alpha), (th - r) % p)
        for alpha, th in zip(alphas, params.thetas)
    ]
    ids = {(v.alpha, v.a) for v in A + B}
    if len(ids) != len(A) + len(B):
        raise AssertionError("witness vertices are not pairwise distinct")
    return GeneralWitness(params=params, field=field, A=A, B=B, alphas=alphas)


@dataclass
class GeneralReport:
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


def verify_general_witness(w: GeneralWitness) -> GeneralReport:
    """Graph layer: every A-B pair adjacent in P(p,t) over f_1 - r.
    Identity layer: for c in {0, zeta^k} and every i,
    norm(c - alpha_i) = (f_i - r)(c) = theta_i - r, with alpha_i read back
    from the stored B vertex."""
    params = w.params
    t, m, p, r = params.t, params.m, params.p, params.r
    G = make_graph(p, t, shifted_poly(t, params.thetas[0], r, p))
    biclique = G.verify_biclique(w.A, w.B)

    cs = [0]
    zk = 1
    for _ in range(t - 2):
        zk = zk * params.zeta % p
        cs.append(zk)
    identity_failures = []
    field = G.field
    for i, vert in enumerate(w.B):
        h = shifted_poly(t, params.thetas[i], r, p)
        target = (params.thetas[i] - r) % p
        if vert.a != target:
            identity_failures.append(
                f"B[{i}] second coordinate is {vert.a}, expected theta_{i + 1} - r = {target}"
            )
        for c in cs:
            # vert.alpha stores -alpha_i, so c - alpha_i = c + vert.alpha
            lhs = field.norm(field.add(field.from_base(c), vert.alpha))
            rhs = poly_eval(h, c, p)
            if lhs != rhs or rhs != target:
                identity_failures.append(
                    f"identity fails for B[{i}] at c = {c}: norm {lhs}, "
                    f"evaluation {rhs}, expected {target}"
                )
    return GeneralReport(
        biclique=biclique,
        adjacency_checked=len(w.A) * len(w.B),
        identity_checked=(t - 1) * m,
        identity_failures=identity_failures,
    )


def coprime_shifted_pair(params: GeneralParams, i: int, j: int) -> bool:
    """The shifted polynomials for distinct thetas differ by a nonzero
    constant, so they must be coprime; exposed for the invariant suite."""
    t, p, r = params.t, params.p, params.r
    a = shifted_poly(t, params.thetas[i], r, p)
    b = shifted_poly(t, params.thetas[j], r, p)
    return poly_gcd(a, b, p) == [1]


# -- serialization ------------------------------------------------------------


def general_witness_to_json(w: GeneralWitness, verified: bool) -> dict:
    return {
        "t": w.params.t,
        "m": w.params.m,
        "p": w.params.p,
        "r": w.params.r,
        "thetas": list(w.params.thetas),
        "zeta": w.params.zeta,
        "A": [{"alpha": list(v.alpha), "a": v.a} for v in w.A],
        "B": [{"alpha": list(v.alpha), "a": v.a} for v in w.B],
        "verified": bool(verified),
    }


def general_schema_check(data: dict) -> None:
    """Shape-only validation; raises ValueError on malformed input."""
    for key in ("t", "m", "p", "r", "thetas", "zeta", "A", "B", "verified"):
        if key not in data:
            raise ValueError(f"general witness JSON is missing {key!r}")
    for key in ("t", "m", "p", "r", "zeta"):
        if not isinstance(data[key], int):
            raise ValueError(f"{key!r} must be an integer")
    t, m, p = data["t"], data["m"], data["p"]
    if t < 4 or m < 1 or p < 2:
        raise ValueError("t, m, p out of range")
    if not isinstance(data["thetas"], list) or len(data["thetas"]) != m:
        raise ValueError("thetas must list m integers")
    for part, want in (("A", t - 1), ("B", m)):
        if not isinstance(data[part], list) or len(data[part]) != want:
            raise ValueError(f"{part} must list {want} vertices")
        for v in data[part]:
            if (
                not isinstance(v, dict)
                or not isinstance(v.get("a"), int)
                or not isinstance(v.get("alpha"), list)
                or len(v["alpha"]) != t - 1
                or not all(isinstance(c, int) and 0 <= c < p for c in v["alpha"])
                or not 1 <= v["a"] < p
            ):
                raise ValueError(f"malformed vertex in {part}")


def general_witness_from_json(data: dict) -> GeneralWitness:
    """Rebuild a witness from its JSON form.  Schema problems raise from
    general_schema_check; mathematical problems (reducible modulus and the
    like) surface from the field construction."""
    general_schema_check(data)
    params = GeneralParams(
        t=data["t"],
        m=data["m"],
        p=data["p"],
        r=data["r"],
        thetas=tuple(int(x) for x in data["thetas"]),
        zeta=data["zeta"],
    )
    field = ExtField(
        params.p, params.t - 1, shifted_poly(params.t, params.thetas[0], params.r, params.p)
    )
    A = [Vertex(tuple(v["alpha"]), v["a"]) for v in data["A"]]
    B = [Vertex(tuple(v["alpha"]), v["a"]) for v in data["B"]]
    alphas = [field.neg(v.alpha) for v in B]
    return GeneralWitness(params=params, field=field, A=A, B=B, alphas=alphas)
