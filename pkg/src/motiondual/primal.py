"""The sub-ideal graph of the motion-group algebra and its certificates.

The closure of the minimal primal ideals consists of two families indexed
by SO(n-1) signatures: the germ ideal of each half-line (the intersection
of the kernels of all classes whose restriction contains the signature)
and the kernels along the half-line itself, collapsed here to one
representative per signature since the parameter plays no role in the
graph.  Two sub-ideals are adjacent when their sum is proper: a line
kernel is maximal and therefore isolated, and two germ ideals are
adjacent exactly when some class restricts to both signatures, which is
the closed-form common-extension test.

Germ ideals are ordered by reverse inclusion of their hulls.  Hulls are
infinite, so containment and minimality are computed on a truncation and
re-checked one bound higher; an answer that flips is reported as unstable
instead of being returned.

Merge certificates package the constructions behind the derivation-constant
bound ceil(n/2)/2 for the multiplier algebra: three germ signatures are
lifted to containing classes, walked to a single target or to a triple of
targets with a common restriction, with every step carrying its witness.
The walk lengths depend on n mod 4, and the implied bound is steps + 1 for
a single target and steps + 3/2 for a primal triple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import inf
from typing import Sequence

from .errors import CertificationError, ContextMismatch, PreconditionViolated
from .signatures import (
    EVEN,
    GroupContext,
    Signature,
    Walk,
    common_extension,
    common_restriction,
    enumerate_signatures,
    merge_max,
    restricts_to,
    walk_from_dict,
    walk_violations,
)

GERM_IDEAL = "germ"
LINE_KERNEL = "line"


@dataclass(frozen=True)
class SubIdeal:
    """A vertex of the sub-ideal graph, keyed by an SO(n-1) signature."""

    kind: str
    sigma: Signature

    @property
    def parent_n(self) -> int:
        return self.sigma.ctx.n + 1

    @property
    def ideal_id(self) -> str:
        return f"{self.kind}:{self.sigma}"

    def __str__(self) -> str:
        return self.ideal_id


def sub_ideals(n: int, bound: int) -> list[SubIdeal]:
    """One germ ideal and one line kernel per SO(n-1) signature."""
    if n < 3:
        raise PreconditionViolated("sub-ideal models need n >= 3")
    sigmas = enumerate_signatures(n - 1, bound)
    return [SubIdeal(GERM_IDEAL, s) for s in sigmas] + [SubIdeal(LINE_KERNEL, s) for s in sigmas]


@lru_cache(maxsize=None)
def _hull_cached(ideal: SubIdeal, bound: int) -> frozenset:
    if ideal.kind == LINE_KERNEL:
        return frozenset()
    return frozenset(
        pi for pi in enumerate_signatures(ideal.parent_n, bound) if restricts_to(pi, ideal.sigma)
    )


def hull(ideal: SubIdeal, bound: int) -> frozenset:
    """Classes containing the ideal, within the truncation.  A line kernel
    has empty hull among the classes (its hull sits on the half-line)."""
    return _hull_cached(ideal, bound)


def _require_germs(*ideals: SubIdeal) -> None:
    for i in ideals:
        if i.kind != GERM_IDEAL:
            raise PreconditionViolated("ideal containment is defined for germ ideals")
    if len({i.sigma.ctx for i in ideals}) > 1:
        raise ContextMismatch("germ ideals live in different groups")


def contains_ideal(I: SubIdeal, J: SubIdeal, bound: int) -> bool:
    """True when I contains J as an ideal, i.e. hull(I) is inside hull(J).

    Truncated hulls can only over-approximate containment, so the answer is
    re-computed at bound + 1; a flip raises CertificationError rather than
    returning an unstable value.
    """
    _require_germs(I, J)
    at = hull(I, bound) <= hull(J, bound)
    at_next = hull(I, bound + 1) <= hull(J, bound + 1)
    if at != at_next:
        raise CertificationError(
            f"containment of {J} in {I} is unstable between bounds {bound} and {bound + 1}"
        )
    return at


def strictly_contains(I: SubIdeal, J: SubIdeal, bound: int) -> bool:
    return contains_ideal(I, J, bound) and not contains_ideal(J, I, bound)


def star_adjacent(I: SubIdeal, J: SubIdeal) -> bool:
    """True when the two sub-ideals sum to a proper ideal.  Reflexive; a
    line kernel is maximal, hence adjacent only to itself; two germ ideals
    are adjacent exactly when a common parent class exists."""
    if I.sigma.ctx != J.sigma.ctx:
        raise ContextMismatch("sub-ideals live in different groups")
    if I == J:
        return True
    if I.kind == LINE_KERNEL or J.kind == LINE_KERNEL:
        return False
    return common_extension([I.sigma, J.sigma]) is not None


def _star_vertices(n: int, bound: int, *ideals: SubIdeal) -> list[SubIdeal]:
    needed = max((max(map(abs, i.sigma.entries), default=0) for i in ideals), default=0)
    return sub_ideals(n, max(bound, needed))


def d_star(I: SubIdeal, J: SubIdeal, bound: int):
    """BFS distance in the sub-ideal graph over the truncated vertex set."""
    if I.sigma.ctx != J.sigma.ctx:
        raise ContextMismatch("sub-ideals live in different groups")
    if I == J:
        return 0
    verts = _star_vertices(I.parent_n, bound, I, J)
    dist = {I: 0}
    frontier = [I]
    while frontier:
        nxt = []
        for x in frontier:
            for y in verts:
                if y not in dist and star_adjacent(x, y):
                    dist[y] = dist[x] + 1
                    if y == J:
                        return dist[y]
                    nxt.append(y)
        frontier = nxt
    return inf


def _star_components(verts: Sequence[SubIdeal]) -> list[list[SubIdeal]]:
    remaining = list(verts)
    comps = []
    while remaining:
        seed = remaining.pop(0)
        comp = [seed]
        frontier = [seed]
        while frontier:
            nxt = []
            for x in frontier:
                hits = [y for y in remaining if star_adjacent(x, y)]
                for y in hits:
                    remaining.remove(y)
                comp.extend(hits)
                nxt.extend(hits)
            frontier = nxt
        comps.append(comp)
    return comps


def big_d(n: int, bound: int) -> int:
    """Largest diameter among the components of the sub-ideal graph, a
    singleton component counting 0.  For n = 2 the graph is edgeless apart
    from loops and the value is 0, with no model built."""
    if n < 2:
        raise PreconditionViolated("big_d needs n >= 2")
    if n == 2:
        return 0
    verts = sub_ideals(n, bound)
    best = 0
    for comp in _star_components(verts):
        if len(comp) == 1:
            continue
        for x in comp:
            dist = {x: 0}
            frontier = [x]
            while frontier:
                nxt = []
                for a in frontier:
                    for b in comp:
                        if b not in dist and star_adjacent(a, b):
                            dist[b] = dist[a] + 1
                            nxt.append(b)
                frontier = nxt
            best = max(best, max(dist.values()))
    return best


def min_primal(n: int, bound: int) -> list[SubIdeal]:
    """Sub-ideals minimal under containment: every line kernel, and the germ
    ideals that strictly contain no other germ ideal.  Minimality is
    re-checked at bound + 1 (enlarged competitor set included); instability
    raises CertificationError."""
    ideals = sub_ideals(n, bound)
    germs = [i for i in ideals if i.kind == GERM_IDEAL]

    def minimal_at(i: SubIdeal, b: int) -> bool:
        h = hull(i, b)
        for sigma in enumerate_signatures(n - 1, b):
            other = SubIdeal(GERM_IDEAL, sigma)
            if other == i:
                continue
            oh = hull(other, b)
            if h < oh:  # hull(i) strictly inside hull(other): i strictly contains other
                return False
        return True

    out = []
    for i in ideals:
        if i.kind == LINE_KERNEL:
            out.append(i)
            continue
        now = minimal_at(i, bound)
        nxt = minimal_at(i, bound + 1)
        if now != nxt:
            raise CertificationError(
                f"minimality of {i} is unstable between bounds {bound} and {bound + 1}"
            )
        if now:
            out.append(i)
    return out


def is_primal_family(pis: Sequence[Signature]) -> tuple[bool, Signature | None]:
    """A family of classes has primal intersection iff the restrictions
    share an irreducible; returns the deterministic witness."""
    witness = common_restriction(pis)
    return witness is not None, witness


def zero_tail_star_step(sigma: Signature, sigma_prime: Signature) -> bool:
    """Tail-propagation along sub-ideal adjacency, for germ signatures of an
    odd parent group: if sigma vanishes beyond position i <= k-2 then any
    adjacent sigma' vanishes beyond position i+1.  This is the potential
    function behind the lower bound for the sub-ideal graph diameter."""
    ctx = sigma.ctx
    if sigma_prime.ctx != ctx:
        raise ContextMismatch("germ signatures live in different groups")
    if ctx.parity != EVEN:
        raise PreconditionViolated("the tail step applies to germ signatures of an odd parent")
    if not star_adjacent(SubIdeal(GERM_IDEAL, sigma), SubIdeal(GERM_IDEAL, sigma_prime)):
        raise PreconditionViolated("the tail step needs adjacent germ ideals")
    k = ctx.k
    last_nonzero = 0
    for idx in range(k, 0, -1):
        if sigma.entries[idx - 1] != 0:
            last_nonzero = idx
            break
    if last_nonzero > k - 2:
        return True
    return all(sigma_prime.entries[j] == 0 for j in range(last_nonzero + 1, k))


# ---------------------------------------------------------------------------
# merge certificates


@dataclass(frozen=True)
class MergeCertificate:
    """Containers, walks and targets certifying the derivation-constant
    bound for one triple of germ signatures."""

    n: int
    case: int  # n mod 4
    inputs: tuple[Signature, Signature, Signature]
    containers: tuple[Signature, Signature, Signature]
    walks: tuple[Walk, Walk, Walk]
    targets: tuple[Signature, ...]
    primal_witness: Signature | None
    claimed_n: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "case": self.case,
            "claimed_n": self.claimed_n,
            "inputs": [list(s.entries) for s in self.inputs],
            "containers": [list(s.entries) for s in self.containers],
            "walks": [w.to_dict() for w in self.walks],
            "targets": [list(t.entries) for t in self.targets],
            "primal_witness": list(self.primal_witness.entries) if self.primal_witness else None,
        }


def certificate_from_dict(payload: dict) -> MergeCertificate:
    n = int(payload["n"])
    parent = GroupContext(n)
    child = parent.child
    witness = payload.get("primal_witness")
    return MergeCertificate(
        n=n,
        case=int(payload["case"]),
        inputs=tuple(Signature(tuple(e), child) for e in payload["inputs"]),
        containers=tuple(Signature(tuple(e), parent) for e in payload["containers"]),
        walks=tuple(walk_from_dict(w) for w in payload["walks"]),
        targets=tuple(Signature(tuple(e), parent) for e in payload["targets"]),
        primal_witness=Signature(tuple(witness), child) if witness is not None else None,
        claimed_n=int(payload["claimed_n"]),
    )


def claimed_steps(n: int) -> int:
    """Walk length of the merge construction, by the residue of n mod 4."""
    case = n % 4
    if case == 0:
        return n // 4 - 1
    if case == 2:
        return (n - 2) // 4 - 1
    if case == 3:
        return (n - 3) // 4
    return (n - 1) // 4 - 1


def target_count(n: int) -> int:
    """1 when the walks merge into a single class, 3 when they end in a
    triple of classes with a common restriction."""
    return 1 if n % 4 in (0, 3) else 3


def implied_k_bound(n: int) -> Fraction:
    steps = Fraction(claimed_steps(n))
    return steps + 1 if target_count(n) == 1 else steps + Fraction(3, 2)


def expected_k_bound(n: int) -> Fraction:
    return Fraction((n + 1) // 2, 2)


def _even_state(P, q, k, i):
    return tuple(P[:i]) + tuple(q[i - 1 : k - 1 - i]) + (0,) * i


def _even_wit(P, q, k, i):
    return tuple(P[:i]) + tuple(q[i : k - 1 - i]) + (0,) * i


def _odd_state(P, p, k, i):
    return tuple(P[:i]) + tuple(p[i - 1 : k - i]) + (0,) * (i - 1)


def _odd_wit(P, p, k, i):
    return tuple(P[:i]) + tuple(p[i : k - i]) + (0,) * i


def merge_certificate(n: int, s1: Signature, s2: Signature, s3: Signature) -> MergeCertificate:
    """Build the case-by-case merge construction for three germ signatures.

    Containers prepend the merged maximum to a truncated copy of each input.
    Every walk overwrites one more prefix coordinate with the merged maxima
    while zeroing the tail, for exactly the case-table number of steps; the
    triple cases stop one short of a full merge and certify primality of the
    three ends through a shared restriction instead.
    """
    if n < 3:
        raise PreconditionViolated("merge certificates need n >= 3")
    child = GroupContext(n - 1)
    sigmas = (s1, s2, s3)
    if any(s.ctx != child for s in sigmas):
        raise ContextMismatch(f"inputs must be {child} signatures")
    parent = GroupContext(n)
    k = parent.k
    case = n % 4
    steps = claimed_steps(n)
    P = merge_max(list(sigmas))

    walks = []
    targets = []
    for s in sigmas:
        e = s.entries
        if parent.parity == EVEN:
            states = [_even_state(P, e, k, 1)]
            wits = []
            if case == 0:
                for i in range(1, steps + 1):
                    wits.append(_even_wit(P, e, k, i))
                    states.append(_even_state(P, e, k, i + 1))
                target = states[-1]
            else:  # case 2, triple targets
                m = (n - 2) // 4
                for i in range(1, steps):  # generic steps 1 .. m-2
                    wits.append(_even_wit(P, e, k, i))
                    states.append(_even_state(P, e, k, i + 1))
                if steps >= 1:
                    target = tuple(P[:m]) + (e[m],) + (0,) * (k - m - 1)
                    wits.append(tuple(P[: m - 1]) + (e[m - 1], e[m]) + (0,) * (m - 1))
                    states.append(target)
                else:
                    target = states[-1]
        else:
            states = [_odd_state(P, e, k, 1)]
            wits = []
            if case == 3:
                m = (n - 3) // 4
                for i in range(1, steps):  # generic steps 1 .. m-1
                    wits.append(_odd_wit(P, e, k, i))
                    states.append(_odd_state(P, e, k, i + 1))
                if steps >= 1:
                    target = tuple(P[: m + 1]) + (0,) * (k - m - 1)
                    wits.append(tuple(P[:m]) + (e[m],) + (0,) * m)
                    states.append(target)
                else:
                    target = states[-1]
            else:  # case 1, triple targets
                m = (n - 1) // 4
                for i in range(1, steps):  # generic steps 1 .. m-2
                    wits.append(_odd_wit(P, e, k, i))
                    states.append(_odd_state(P, e, k, i + 1))
                if steps >= 1:
                    target = tuple(P[:m]) + (e[m],) + (0,) * (k - m - 1)
                    wits.append(tuple(P[: m - 1]) + (e[m - 1], e[m]) + (0,) * (m - 1))
                    states.append(target)
                else:
                    target = states[-1]
        walks.append(
            Walk(
                tuple(Signature(st, parent) for st in states),
                tuple(Signature(w, child) for w in wits),
            )
        )
        targets.append(Signature(target, parent))

    containers = tuple(w.steps[0] for w in walks)
    if target_count(n) == 1:
        if len(set(targets)) != 1:
            raise CertificationError("single-target construction produced distinct targets")
        targets = targets[:1]
        witness = None
    else:
        m = (n - 2) // 4 if case == 2 else (n - 1) // 4
        witness = Signature(tuple(P[:m]) + (0,) * (child.k - m), child)
    return MergeCertificate(
        n=n,
        case=case,
        inputs=sigmas,
        containers=containers,
        walks=tuple(walks),
        targets=tuple(targets),
        primal_witness=witness,
        claimed_n=steps,
    )


@dataclass(frozen=True)
class CertificateReport:
    ok: bool
    violations: tuple[str, ...]
    implied_bound: Fraction
    expected_bound: Fraction

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": list(self.violations),
            "implied_k_bound": str(self.implied_bound),
            "expected_k_bound": str(self.expected_bound),
        }


def validate_certificate(cert: MergeCertificate, bound: int | None = None) -> CertificateReport:
    """Re-derive every claim in the certificate.

    Checks input/container containment, step-by-step witnesses, walk
    lengths against the case table, target primality through an independent
    feasibility run, optionally that all entries stay within the truncation
    bound, and that the implied derivation-constant bound equals
    ceil(n/2)/2.
    """
    bad: list[str] = []
    n = cert.n
    parent = GroupContext(n)
    child = parent.child
    if cert.case != n % 4:
        bad.append(f"case {cert.case} does not match n mod 4 = {n % 4}")
    if cert.claimed_n != claimed_steps(n):
        bad.append(f"claimed walk length {cert.claimed_n} differs from the case table")
    if len(cert.targets) != target_count(n):
        bad.append(f"expected {target_count(n)} target(s), found {len(cert.targets)}")

    for i, (sigma, container) in enumerate(zip(cert.inputs, cert.containers), start=1):
        if sigma.ctx != child:
            bad.append(f"input {i} is not an {child} signature")
        elif container.ctx != parent or not restricts_to(container, sigma):
            bad.append(f"container {i} does not restrict to input {i}")

    for i, w in enumerate(cert.walks, start=1):
        if w.steps[0] != cert.containers[i - 1]:
            bad.append(f"walk {i} does not start at container {i}")
        expected_end = cert.targets[0] if len(cert.targets) == 1 else cert.targets[i - 1]
        if w.steps[-1] != expected_end:
            bad.append(f"walk {i} does not end at its target")
        if w.length != cert.claimed_n:
            bad.append(f"walk {i} has {w.length} steps, case table says {cert.claimed_n}")
        for v in walk_violations(w):
            bad.append(f"walk {i}: {v}")

    if len(cert.targets) == 3:
        if cert.primal_witness is None:
            bad.append("triple-target certificate is missing its primal witness")
        else:
            for j, t in enumerate(cert.targets, start=1):
                if not restricts_to(t, cert.primal_witness):
                    bad.append(f"primal witness is not in the branching set of target {j}")
        ok, _ = is_primal_family(list(cert.targets))
        if not ok:
            bad.append("targets have no common restriction (family not primal)")
    if bound is not None:
        entries = [
            abs(e)
            for w in cert.walks
            for s in (*w.steps, *w.witnesses)
            for e in s.entries
        ]
        if entries and max(entries) > bound:
            bad.append(f"certificate leaves the truncation bound {bound}")

    implied = implied_k_bound(n)
    expected = expected_k_bound(n)
    if implied != expected:
        bad.append(f"implied bound {implied} differs from ceil(n/2)/2 = {expected}")
    return CertificateReport(not bad, tuple(bad), implied, expected)


def star_graph_to_json(n: int, bound: int) -> dict:
    verts = sub_ideals(n, bound)
    return {
        "n": n,
        "bound": bound,
        "ideals": [{"id": v.ideal_id, "kind": v.kind, "entries": list(v.sigma.entries)} for v in verts],
        "edges": sorted(
            [a.ideal_id, b.ideal_id]
            for i, a in enumerate(verts)
            for b in verts[i + 1 :]
            if star_adjacent(a, b)
        ),
    }


def star_graph_to_dot(n: int, bound: int) -> str:
    verts = sub_ideals(n, bound)
    lines = [f'digraph "sub_so{n}_bound{bound}" {{']
    for v in verts:
        shape = "ellipse" if v.kind == GERM_IDEAL else "box"
        lines.append(f'  "{v.ideal_id}" [shape={shape}];')
    for i, a in enumerate(verts):
        for b in verts[i + 1 :]:
            if star_adjacent(a, b):
                lines.append(f'  "{a.ideal_id}" -> "{b.ideal_id}" [dir=none];')
    lines.append("}")
    return "\n".join(lines) + "\n"
