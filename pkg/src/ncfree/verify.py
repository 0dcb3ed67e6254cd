"""Exhaustive verification of the library's combinatorial identities.

Every check sweeps a finite range completely and compares two independent
computations, or a computation against a definition-level brute force.
All arithmetic is exact, so a check either passes on every case or
reports the first counterexample it met.  Checks are grouped into named
suites (see SUITES); the default bounds are the ones the acceptance
tests run at.  Passing an explicit bound substitutes it where a sweep
can absorb it; checks built on a quadratic scan of a full symmetric
group clamp the bound to a feasible ceiling instead.

Suites built from independent cells (one per annulus shape, or one per
check) fan out over a process pool when ``jobs > 1``.  Results are
gathered in submission order, so the report is deterministic either way.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from math import comb

from .annular import (
    AnnulusShape,
    Composition,
    PartitionedPermutation,
    count_snc_pairings,
    enumerate_nc,
    enumerate_psnc,
    enumerate_snc,
    fatten,
    gamma_pq,
    is_nc_disc,
    is_snc,
    pp_leq,
    pp_product,
    tau_of,
)
from .cumulants import (
    haar_kappa_pq,
    main_product_cumulant,
    ks_product_cumulant,
    mobius_recurrence_residual,
    oracle_product_cumulant,
    semicircular_square_kappa,
    snc_count,
)
from .perm import (
    Permutation,
    _compose0,
    _cycle_count0,
    _cycles0,
    _inverse0,
    _iter_permutations0,
    compose,
    full_cycle,
    orbit_partition,
    partition_join,
)
from .spaces import (
    a_word,
    catalan,
    formal_moment_space,
    haar_unitary_space,
    semicircular_phi2,
    semicircular_phi2_closed,
    semicircular_space,
    u_word,
    x_word,
)

__all__ = ["CheckResult", "SUITES", "run_suite", "suite_names"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cases: int
    seconds: float
    detail: str = ""

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        tail = f"  [{self.detail}]" if self.detail else ""
        return f"{mark}  {self.name}  ({self.cases} cases, {self.seconds:.2f}s){tail}"

    def to_json_obj(self) -> dict:
        return asdict(self)


def _finish(name: str, t0: float, cases: int, fail: str | None) -> CheckResult:
    return CheckResult(name, fail is None, cases, time.perf_counter() - t0, fail or "")


# -- small shared machinery --------------------------------------------


def _perm1(image0) -> Permutation:
    return Permutation(i + 1 for i in image0)


def _cycle_labels0(image0) -> tuple[list[int], int]:
    """Cycle id per point, ids assigned in first-visit order."""
    n = len(image0)
    lab = [-1] * n
    c = 0
    for i in range(n):
        if lab[i] < 0:
            j = i
            while lab[j] < 0:
                lab[j] = c
                j = image0[j]
            c += 1
    return lab, c


def _canon0(labels) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    out = []
    for x in labels:
        if x not in seen:
            seen[x] = len(seen)
        out.append(seen[x])
    return tuple(out)


def _compositions(total: int) -> list[tuple[int, ...]]:
    """All compositions of ``total``, in cut-mask order."""
    out = []
    for mask in range(1 << (total - 1)):
        parts, run = [], 1
        for i in range(total - 1):
            if mask >> i & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.append(tuple(parts))
    return out


def _gamma0(p: int, q: int) -> tuple[int, ...]:
    return tuple(range(1, p)) + (0,) + tuple(range(p + 1, p + q)) + (p,)


def _is_nc_disc0(image0) -> bool:
    n = len(image0)
    if n == 0:
        return True
    g = tuple(range(1, n)) + (0,)
    return _cycle_count0(image0) + _cycle_count0(_compose0(_inverse0(image0), g)) == n + 1


@lru_cache(maxsize=None)
def _sn_below(n: int):
    """For each permutation of [n], the bitmask of those on a geodesic below it.

    ``below[j]`` has bit ``i`` set when ``|pi_i| + |pi_i^-1 pi_j| = |pi_j|``.
    """
    perms = tuple(_iter_permutations0(n))
    invs = [_inverse0(p) for p in perms]
    lengths = [n - _cycle_count0(p) for p in perms]
    below = []
    for j, sigma in enumerate(perms):
        mask = 0
        ls = lengths[j]
        for i in range(len(perms)):
            if lengths[i] + n - _cycle_count0(_compose0(invs[i], sigma)) == ls:
                mask |= 1 << i
        below.append(mask)
    return perms, tuple(below)


def _below_images0(image0) -> set[tuple[int, ...]]:
    """All permutations lying on a geodesic from the identity to ``image0``.

    Generated structurally: independently on each cycle, place a
    non-crossing permutation of the cycle's traversal order.  The
    equivalence with the metric condition is itself verified by
    ``check_order_refinement``.
    """
    n = len(image0)
    per_cycle = []
    for c in _cycles0(image0):
        k = len(c)
        opts = []
        for nu in enumerate_nc(k):
            img = nu.image
            opts.append(tuple((c[i], c[img[i] - 1]) for i in range(k)))
        per_cycle.append(opts)
    out = set()
    for combo in itertools.product(*per_cycle):
        img = [0] * n
        for assign in combo:
            for src, dst in assign:
                img[src] = dst
        out.add(tuple(img))
    return out


# -- permutation kernel checks -----------------------------------------


def check_nc_counts(max_n: int = 9) -> CheckResult:
    """Disc enumeration sizes against the Catalan numbers."""
    max_n = min(max_n, 10)
    t0 = time.perf_counter()
    cases, fail = 0, None
    for n in range(1, max_n + 1):
        got, want = len(enumerate_nc(n)), catalan(n)
        cases += 1
        if got != want and fail is None:
            fail = f"n={n}: enumerated {got}, Catalan gives {want}"
    return _finish("disc enumeration count is Catalan", t0, cases, fail)


def check_metric_triangle(max_n: int = 6) -> CheckResult:
    """If pi is on a geodesic to sigma and sigma on one to tau, so is pi to tau."""
    max_n = min(max_n, 7)
    t0 = time.perf_counter()
    cases, fail = 0, None
    for n in range(1, max_n + 1):
        perms, below = _sn_below(n)
        for j in range(len(perms)):
            bj = below[j]
            m = bj
            while m:
                low = m & -m
                i = low.bit_length() - 1
                m ^= low
                cases += 1
                stray = below[i] & ~bj
                if stray and fail is None:
                    k = (stray & -stray).bit_length() - 1
                    fail = (
                        f"n={n}: {_perm1(perms[k])!r} <= {_perm1(perms[i])!r} <= "
                        f"{_perm1(perms[j])!r} but the outer relation fails"
                    )
    return _finish("geodesic order is transitive", t0, cases, fail)


def check_metric_order(max_n: int = 6) -> CheckResult:
    """On a geodesic below sigma, every cycle sits inside a cycle of sigma."""
    max_n = min(max_n, 7)
    t0 = time.perf_counter()
    cases, fail = 0, None
    for n in range(1, max_n + 1):
        perms, below = _sn_below(n)
        labels = [_cycle_labels0(p)[0] for p in perms]
        cycles = [_cycles0(p) for p in perms]
        for j in range(len(perms)):
            lab = labels[j]
            m = below[j]
            while m:
                low = m & -m
                i = low.bit_length() - 1
                m ^= low
                cases += 1
                for c in cycles[i]:
                    l0 = lab[c[0]]
                    if any(lab[x] != l0 for x in c) and fail is None:
                        fail = (
                            f"n={n}: cycle {tuple(x + 1 for x in c)} of "
                            f"{_perm1(perms[i])!r} straddles cycles of {_perm1(perms[j])!r}"
                        )
    return _finish("geodesic order implies cycle containment", t0, cases, fail)


def check_conjugation_invariance(max_n: int = 6) -> CheckResult:
    """Metric length is a class function.

    Exhaustive over all conjugator pairs through n=5; for larger n the
    conjugators run over a generating set, which settles the general
    case by composing conjugations.
    """
    max_n = min(max_n, 8)
    t0 = time.perf_counter()
    cases, fail = 0, None
    for n in range(1, max_n + 1):
        perms = list(_iter_permutations0(n))
        if n <= 5:
            gens = perms
        else:
            swap = (1, 0) + tuple(range(2, n))
            cyc = tuple(range(1, n)) + (0,)
            gens = [swap, cyc]
        for g in gens:
            ginv = _inverse0(g)
            for p in perms:
                cases += 1
                conj = _compose0(g, _compose0(p, ginv))
                if _cycle_count0(conj) != _cycle_count0(p) and fail is None:
                    fail = f"n={n}: conjugating {_perm1(p)!r} by {_perm1(g)!r} changed the length"
    return _finish("metric length is conjugation invariant", t0, cases, fail)


def check_restriction_commutes(max_n: int = 6) -> CheckResult:
    """restrict(sigma pi, N) = restrict(sigma, N) restrict(pi, N) for pi supported in N."""
    max_n = min(max_n, 7)
    t0 = time.perf_counter()
    cases, fail = 0, None
    from .perm import _restrict0

    for n in range(1, max_n + 1):
        perms = list(_iter_permutations0(n))
        for k in range(1, n + 1):
            subs = list(_iter_permutations0(k))
            for pts in itertools.combinations(range(n), k):
                for s in perms:
                    rs = _restrict0(s, pts)
                    for t in subs:
                        cases += 1
                        sp = list(s)
                        for i0 in range(k):
                            sp[pts[i0]] = s[pts[t[i0]]]
                        if _restrict0(tuple(sp), pts) != _compose0(rs, t) and fail is None:
                            fail = (
                                f"n={n}, N={tuple(x + 1 for x in pts)}: restriction of the "
                                f"product differs from the product of restrictions for "
                                f"sigma={_perm1(s)!r}"
                            )
    return _finish("restriction is multiplicative over an invariant set", t0, cases, fail)


def check_order_refinement(max_total: int = 6) -> CheckResult:
    """The metric order below a fixed permutation equals blockwise refinement.

    For sigma disc non-crossing or annular non-crossing, the set of pi
    with |pi| + |pi^-1 sigma| = |sigma| is exactly the set of products of
    non-crossing permutations of the individual cycles of sigma.  This
    also certifies the generator used by ``check_separates``.
    """
    max_total = min(max_total, 7)
    t0 = time.perf_counter()
    cases, fail = 0, None
    targets: list[tuple[int, tuple[int, ...]]] = []
    for n in range(1, max_total + 1):
        for sig in enumerate_nc(n):
            targets.append((n, tuple(x - 1 for x in sig.image)))
    for n in range(2, max_total + 1):
        for p in range(1, n):
            for sig in enumerate_snc(AnnulusShape(p, n - p)):
                targets.append((n, tuple(x - 1 for x in sig.image)))
    for n, s0 in targets:
        ls = n - _cycle_count0(s0)
        metric = set()
        for p0 in _iter_permutations0(n):
            if n - _cycle_count0(p0) + n - _cycle_count0(_compose0(_inverse0(p0), s0)) == ls:
                metric.add(p0)
        structural = _below_images0(s0)
        cases += len(metric)
        if metric != structural and fail is None:
            off = (metric ^ structural).pop()
            fail = f"below {_perm1(s0)!r}: {_perm1(off)!r} is in one description only"
    return _finish("geodesic order matches per-cycle non-crossing refinement", t0, cases, fail)


def check_snc_rotation(max_total: int = 6) -> CheckResult:
    """Annular membership equals disc membership after some circle rotations.

    A permutation with a connecting cycle is annular non-crossing exactly
    when some pair of rotations of the two circles conjugates it to a
    disc non-crossing permutation.
    """
    max_total = min(max_total, 7)
    t0 = time.perf_counter()
    cases, fail = 0, None
    from .annular import _scan_cycles0

    for n in range(2, max_total + 1):
        for p in range(1, n):
            q = n - p
            g0 = _gamma0(p, q)
            rotations = []
            gp = tuple(range(1, p)) + (0,) + tuple(range(p, n))
            gq = tuple(range(p)) + tuple(range(p + 1, n)) + (p,)
            r = tuple(range(n))
            for _u in range(p):
                rv = r
                for _v in range(q):
                    rotations.append((rv, _inverse0(rv)))
                    rv = _compose0(gq, rv)
                r = _compose0(gp, r)
            for s0 in _iter_permutations0(n):
                cc, through = _scan_cycles0(s0, p)
                if not through:
                    continue
                cases += 1
                member = cc + _cycle_count0(_compose0(_inverse0(s0), g0)) == n
                rotated = any(
                    _is_nc_disc0(_compose0(rot, _compose0(s0, rinv)))
                    for rot, rinv in rotations
                )
                if member != rotated and fail is None:
                    fail = (
                        f"shape ({p},{q}): {_perm1(s0)!r} has membership {member} "
                        f"but rotation criterion {rotated}"
                    )
    return _finish("annular membership via rotations to the disc", t0, cases, fail)


# -- separation and fattening ------------------------------------------


def check_first_sep(max_n: int = 8) -> CheckResult:
    """Connectedness with the interval partition equals endpoint separation.

    For sigma disc non-crossing and a composition with endpoint set N:
    the join of the cycles of sigma with the intervals is everything if
    and only if sigma^-1 gamma puts the points of N into distinct cycles.
    """
    max_n = min(max_n, 9)
    t0 = time.perf_counter()
    cases, fail = 0, None
    for n in range(1, max_n + 1):
        g0 = tuple(range(1, n)) + (0,)
        prepared = []
        for parts in _compositions(n):
            ends = set()
            acc = 0
            for m in parts:
                acc += m
                ends.add(acc - 1)
            edges = [(i, i + 1) for i in range(n - 1) if i not in ends]
            prepared.append((parts, tuple(sorted(ends)), edges))
        for sig in enumerate_nc(n):
            s0 = tuple(x - 1 for x in sig.image)
            slab, scount = _cycle_labels0(s0)
            klab, _ = _cycle_labels0(_compose0(_inverse0(s0), g0))
            for parts, ends, edges in prepared:
                cases += 1
                parent = list(range(scount))

                def find(x: int) -> int:
                    while parent[x] != x:
                        parent[x] = parent[parent[x]]
                        x = parent[x]
                    return x

                comps = scount
                for a, b in edges:
                    ra, rb = find(slab[a]), find(slab[b])
                    if ra != rb:
                        parent[ra] = rb
                        comps -= 1
                lhs = comps == 1
                hit = set()
                rhs = True
                for e in ends:
                    c = klab[e]
                    if c in hit:
                        rhs = False
                        break
                    hit.add(c)
                if lhs != rhs and fail is None:
                    fail = (
                        f"n={n}, parts {parts}, sigma={sig!r}: join reaches the top "
                        f"{lhs} but separation is {rhs}"
                    )
    return _finish("interval connectedness equals endpoint separation", t0, cases, fail)


def check_separates(max_total: int = 8) -> CheckResult:
    """Join against intervals reaching the fattened cycles equals separation.

    For pi disc non-crossing on the parts and sigma on a geodesic below
    the fattened pi: the join of sigma's cycles with the part intervals
    equals the cycle partition of the fattened pi if and only if
    sigma^-1 (fattened pi) separates the part endpoints.
    """
    max_total = min(max_total, 9)
    t0 = time.perf_counter()
    cases, fail = 0, None
    for total in range(1, max_total + 1):
        for parts in _compositions(total):
            comp = Composition(parts)
            r = len(parts)
            n = total
            ends = [b - 1 for b in comp.boundary_points]
            endset = set(ends)
            edges = [(i, i + 1) for i in range(n - 1) if i not in endset]
            for pi in enumerate_nc(r):
                pv = fatten(pi, comp)
                pv0 = tuple(x - 1 for x in pv.image)
                target = _canon0(_cycle_labels0(pv0)[0])
                for s0 in _below_images0(pv0):
                    cases += 1
                    slab, scount = _cycle_labels0(s0)
                    parent = list(range(scount))

                    def find(x: int) -> int:
                        while parent[x] != x:
                            parent[x] = parent[parent[x]]
                            x = parent[x]
                        return x

                    for a, b in edges:
                        ra, rb = find(slab[a]), find(slab[b])
                        if ra != rb:
                            parent[ra] = rb
                    lhs = _canon0([find(slab[i]) for i in range(n)]) == target
                    klab, _ = _cycle_labels0(_compose0(_inverse0(s0), pv0))
                    hit = set()
                    rhs = True
                    for e in ends:
                        c = klab[e]
                        if c in hit:
                            rhs = False
                            break
                        hit.add(c)
                    if lhs != rhs and fail is None:
                        fail = (
                            f"parts {parts}, pi={pi!r}, sigma={_perm1(s0)!r}: "
                            f"join test {lhs}, separation {rhs}"
                        )
    return _finish("join reaching the fattened cycles equals separation", t0, cases, fail)


def check_tracial_inequality(max_n: int = 6) -> CheckResult:
    """Complementation swaps sides: tau below sigma^-1 gamma iff sigma below gamma tau^-1."""
    max_n = min(max_n, 8)
    t0 = time.perf_counter()
    cases, fail = 0, None
    for n in range(1, max_n + 1):
        g0 = tuple(range(1, n)) + (0,)
        data = []
        for sig in enumerate_nc(n):
            s0 = tuple(x - 1 for x in sig.image)
            inv = _inverse0(s0)
            a = _compose0(inv, g0)
            b = _compose0(g0, inv)
            data.append((n - _cycle_count0(s0), inv, a, n - _cycle_count0(a), b, n - _cycle_count0(b)))
        for lt, tinv, _ta, _tla, tb, tlb in data:
            for ls, sinv, sa, sla, _sb, _slb in data:
                cases += 1
                lhs = lt + n - _cycle_count0(_compose0(tinv, sa)) == sla
                rhs = ls + n - _cycle_count0(_compose0(sinv, tb)) == tlb
                if lhs != rhs and fail is None:
                    fail = f"n={n}: one-sided complement order is not symmetric"
    return _finish("complement order swaps sides on the disc", t0, cases, fail)


def check_restriction_lemma(max_total: int = 8) -> CheckResult:
    """Restricting an annular non-crossing permutation stays non-crossing.

    The first-return restriction to any subset is either annular
    non-crossing for the induced shape or a pair of disc non-crossing
    permutations, one per circle.
    """
    max_total = min(max_total, 8)
    t0 = time.perf_counter()
    cases, fail = 0, None
    for n in range(2, max_total + 1):
        for p in range(1, n):
            q = n - p
            snc0 = [tuple(x - 1 for x in s.image) for s in enumerate_snc(AnnulusShape(p, q))]
            for k in range(1, n + 1):
                for pts in itertools.combinations(range(n), k):
                    inN = bytearray(n)
                    pos = {}
                    k1 = 0
                    for idx, pt in enumerate(pts):
                        inN[pt] = 1
                        pos[pt] = idx
                        if pt < p:
                            k1 += 1
                    for s0 in snc0:
                        cases += 1
                        rimg = [0] * k
                        for idx, pt in enumerate(pts):
                            y = s0[pt]
                            while not inN[y]:
                                y = s0[y]
                            rimg[idx] = pos[y]
                        if not _restricted_member0(tuple(rimg), k1) and fail is None:
                            fail = (
                                f"shape ({p},{q}), sigma={_perm1(s0)!r}, "
                                f"N={tuple(x + 1 for x in pts)}: restriction "
                                f"{_perm1(rimg)!r} is not non-crossing for shape "
                                f"({k1},{k - k1})"
                            )
    return _finish("restriction of annular permutations stays non-crossing", t0, cases, fail)


def _restricted_member0(img, k1: int) -> bool:
    k = len(img)
    if k1 == 0 or k1 == k:
        return _is_nc_disc0(img)
    through = False
    seen = bytearray(k)
    cc = 0
    for i in range(k):
        if not seen[i]:
            cc += 1
            side = i < k1
            j = i
            while not seen[j]:
                seen[j] = 1
                if (j < k1) != side:
                    through = True
                j = img[j]
    if through:
        g = _gamma0(k1, k - k1)
        return cc + _cycle_count0(_compose0(_inverse0(img), g)) == k
    return _is_nc_disc0(img[:k1]) and _is_nc_disc0(tuple(x - k1 for x in img[k1:]))


def check_fattening(max_total: int = 9) -> CheckResult:
    """Inflating parts preserves non-crossing membership, disc and annular.

    Also checks the exchange identity psi pi^-1 gamma_small =
    (fattened pi)^-1 gamma_big psi, where psi sends the k-th part to its
    last letter, and that inflating the identity gives the interval
    permutation.
    """
    max_total = min(max_total, 9)
    t0 = time.perf_counter()
    cases, fail = 0, None
    for total in range(1, max_total + 1):
        for parts in _compositions(total):
            comp = Composition(parts)
            r = len(parts)
            psi = comp.boundary_points
            if fatten(Permutation.identity(r), comp) != tau_of(comp) and fail is None:
                fail = f"parts {parts}: inflating the identity is not the interval permutation"
            gr = full_cycle(r)
            gn = full_cycle(total)
            for pi in enumerate_nc(r):
                pv = fatten(pi, comp)
                cases += 1
                if not is_nc_disc(pv) and fail is None:
                    fail = f"parts {parts}, pi={pi!r}: inflation left the disc family"
                z_small = compose(pi.inverse(), gr)
                z_big = compose(pv.inverse(), gn)
                if any(z_big(psi[k - 1]) != psi[z_small(k) - 1] for k in range(1, r + 1)):
                    if fail is None:
                        fail = f"parts {parts}, pi={pi!r}: exchange identity fails"
    for total in range(2, max_total + 1):
        for parts in _compositions(total):
            for split in range(1, len(parts)):
                comp = Composition(parts, split=split)
                rs = len(parts)
                psi = comp.boundary_points
                shape_small = AnnulusShape(split, rs - split)
                shape_big = comp.shape()
                g_small = gamma_pq(split, rs - split)
                g_big = shape_big.gamma()
                for pi in enumerate_snc(shape_small):
                    pv = fatten(pi, comp)
                    cases += 1
                    if not is_snc(pv, shape_big) and fail is None:
                        fail = (
                            f"parts {parts} split {split}, pi={pi!r}: inflation left "
                            f"the annular family"
                        )
                    z_small = compose(pi.inverse(), g_small)
                    z_big = compose(pv.inverse(), g_big)
                    if any(z_big(psi[k - 1]) != psi[z_small(k) - 1] for k in range(1, rs + 1)):
                        if fail is None:
                            fail = f"parts {parts} split {split}, pi={pi!r}: exchange identity fails"
    return _finish("inflation preserves non-crossing membership", t0, cases, fail)


# -- annular order lemmas ----------------------------------------------


def check_annular_order(max_total: int = 7) -> CheckResult:
    """Below the complement on one side implies below it on the other.

    For annular non-crossing pi, sigma: if pi lies on a geodesic below
    sigma^-1 gamma then sigma lies on a geodesic below gamma pi^-1.
    """
    max_total = min(max_total, 7)
    t0 = time.perf_counter()
    cases, fail = 0, None
    for n in range(2, max_total + 1):
        for p in range(1, n):
            q = n - p
            g0 = _gamma0(p, q)
            snc0 = [tuple(x - 1 for x in s.image) for s in enumerate_snc(AnnulusShape(p, q))]
            invs = [_inverse0(s) for s in snc0]
            lens = [n - _cycle_count0(s) for s in snc0]
            right = [_compose0(inv, g0) for inv in invs]
            right_len = [n - _cycle_count0(a) for a in right]
            left = [_compose0(g0, inv) for inv in invs]
            left_len = [n - _cycle_count0(a) for a in left]
            m = len(snc0)
            for j in range(m):
                aj = right[j]
                laj = right_len[j]
                for i in range(m):
                    if lens[i] + n - _cycle_count0(_compose0(invs[i], aj)) == laj:
                        cases += 1
                        if lens[j] + n - _cycle_count0(_compose0(invs[j], left[i])) != left_len[i]:
                            if fail is None:
                                fail = (
                                    f"shape ({p},{q}): pi={_perm1(snc0[i])!r} below the "
                                    f"complement of sigma={_perm1(snc0[j])!r} but not "
                                    f"conversely"
                                )
    return _finish("one-sided complement order transfers across the annulus", t0, cases, fail)


def _tunnel_hypotheses(max_total: int):
    """Pairs (sigma annular, pi a disc pair below sigma's complement)."""
    for n in range(2, max_total + 1):
        for p in range(1, n):
            q = n - p
            shape = AnnulusShape(p, q)
            g = shape.gamma()
            ncpairs = []
            for pi1 in enumerate_nc(p):
                for pi2 in enumerate_nc(q):
                    img = pi1.image + tuple(x + p for x in pi2.image)
                    ncpairs.append(Permutation(img))
            for sigma in enumerate_snc(shape):
                comp_perm = compose(sigma.inverse(), g)
                la = comp_perm.metric_length
                for pi in ncpairs:
                    if pi.metric_length + compose(pi.inverse(), comp_perm).metric_length == la:
                        yield shape, g, sigma, pi


def check_tunnel_product(max_total: int = 6) -> CheckResult:
    """The two-sided complement product lands on the glued element.

    For pi a disc pair below sigma's complement, multiplying sigma by
    sigma^-1 gamma pi^-1 is defined and produces gamma pi^-1 carrying
    the join of sigma with it as its partition.
    """
    max_total = min(max_total, 7)
    t0 = time.perf_counter()
    cases, fail = 0, None
    for shape, g, sigma, pi in _tunnel_hypotheses(max_total):
        cases += 1
        gp = compose(g, pi.inverse())
        bridge = compose(sigma.inverse(), gp)
        got = pp_product(
            PartitionedPermutation.disc(sigma), PartitionedPermutation.disc(bridge)
        )
        want = PartitionedPermutation(
            partition_join(orbit_partition(sigma), orbit_partition(gp)), gp
        )
        if got != want and fail is None:
            fail = f"shape {shape}, sigma={sigma!r}, pi={pi!r}: product gave {got!r}"
    return _finish("two-sided complement product reaches the glued element", t0, cases, fail)


def check_order_corollary(max_total: int = 6) -> CheckResult:
    """Structure of sigma relative to gamma pi^-1 under the tunnel hypothesis.

    (i) non-connecting cycles of sigma sit inside single cycles of
    gamma pi^-1; (ii) the connecting cycles all sit inside the union of
    one cycle per circle; (iii) away from the connecting cycles the
    enclosed cycles are disc non-crossing along each cycle; (iv) on the
    union the connecting cycles form an annular non-crossing permutation.
    """
    max_total = min(max_total, 7)
    t0 = time.perf_counter()
    cases, fail = 0, None
    for shape, g, sigma, pi in _tunnel_hypotheses(max_total):
        cases += 1
        p = shape.p
        n = shape.total
        gp = compose(g, pi.inverse())
        gp0 = tuple(x - 1 for x in gp.image)
        gcycles = _cycles0(gp0)
        lab, _ = _cycle_labels0(gp0)
        through = [c for c in sigma.cycles if len({x <= p for x in c}) == 2]
        local = [c for c in sigma.cycles if len({x <= p for x in c}) == 1]
        problem = None
        for c in local:
            if len({lab[x - 1] for x in c}) != 1:
                problem = f"local cycle {c} straddles complement cycles"
                break
        tlabels = sorted({lab[x - 1] for tc in through for x in tc})
        if problem is None:
            if len(tlabels) != 2:
                problem = f"connecting cycles meet {len(tlabels)} complement cycles"
            else:
                sides = sorted(gcycles[t][0] < p for t in tlabels)
                if sides != [False, True]:
                    problem = "the two met complement cycles are not one per circle"
        if problem is None:
            for t, c in enumerate(gcycles):
                if t in tlabels:
                    continue
                relabel = {pt: i + 1 for i, pt in enumerate(c)}
                local_img = [0] * len(c)
                for pt in c:
                    local_img[relabel[pt] - 1] = relabel[sigma(pt + 1) - 1]
                if not is_nc_disc(Permutation(local_img)):
                    problem = f"enclosed cycles crossing along complement cycle {c}"
                    break
        if problem is None:
            outer = next(gcycles[t] for t in tlabels if gcycles[t][0] < p)
            inner = next(gcycles[t] for t in tlabels if gcycles[t][0] >= p)
            relabel = {}
            for i, pt in enumerate(outer + inner):
                relabel[pt] = i + 1
            tpoints = {x - 1 for tc in through for x in tc}
            union_img = [0] * (len(outer) + len(inner))
            for pt in outer + inner:
                img_pt = sigma(pt + 1) - 1 if pt in tpoints else pt
                union_img[relabel[pt] - 1] = relabel[img_pt]
            if not is_snc(Permutation(union_img), AnnulusShape(len(outer), len(inner))):
                problem = "connecting cycles not annular non-crossing on the union"
        if problem is not None and fail is None:
            fail = f"shape {shape}, sigma={sigma!r}, pi={pi!r}: {problem}"
    return _finish("complement cycles organize the connecting structure", t0, cases, fail)


# -- the partial order on partitioned permutations ---------------------


def _psnc_raw(shape: AnnulusShape):
    """Precomputed arrays for fast order scans over one shape."""
    els = enumerate_psnc(shape)
    n = shape.total
    raw = []
    for el in els:
        img0 = tuple(x - 1 for x in el.perm.image)
        plab = [0] * n
        for bi, block in enumerate(el.partition.blocks):
            for x in block:
                plab[x - 1] = bi
        raw.append((img0, _inverse0(img0), tuple(plab), el.length, el.kind))
    return els, raw


def _raw_leq(a, b, n: int) -> bool:
    """a <= b via the single forced witness, on precomputed arrays."""
    a_img, a_inv, a_plab, a_len, _ = a
    b_img, _b_inv, b_plab, b_len, _ = b
    w0 = _compose0(a_inv, b_img)
    w_len = n - _cycle_count0(w0)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in (a_plab.index(a_plab[i]), w0[i]):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    blocks = len({find(i) for i in range(n)})
    if a_len + w_len != 2 * (n - blocks) - (n - _cycle_count0(b_img)):
        return False
    joined = _canon0([find(i) for i in range(n)])
    return joined == _canon0(b_plab)


def check_order_axioms(max_total: int = 6) -> CheckResult:
    """The witnessed-product relation is a partial order on each shape.

    Reflexivity, antisymmetry and transitivity over all elements; the
    fast pairwise scan is cross-checked against the public comparison
    on the smaller shapes.
    """
    max_total = min(max_total, 7)
    t0 = time.perf_counter()
    cases, fail = 0, None
    for n in range(2, max_total + 1):
        for p in range(1, n):
            shape = AnnulusShape(p, n - p)
            els, raw = _psnc_raw(shape)
            m = len(els)
            below = []
            for j in range(m):
                mask = 0
                for i in range(m):
                    if _raw_leq(raw[i], raw[j], n):
                        mask |= 1 << i
                below.append(mask)
            if m <= 60:
                for j in range(m):
                    for i in range(m):
                        cases += 1
                        if pp_leq(els[i], els[j]) != bool(below[j] >> i & 1):
                            if fail is None:
                                fail = (
                                    f"shape {shape}: fast scan and public comparison "
                                    f"disagree on {els[i]!r} <= {els[j]!r}"
                                )
            for j in range(m):
                cases += 1
                if not below[j] >> j & 1 and fail is None:
                    fail = f"shape {shape}: {els[j]!r} not below itself"
            for j in range(m):
                mask = below[j]
                mm = mask
                while mm:
                    low = mm & -mm
                    i = low.bit_length() - 1
                    mm ^= low
                    cases += 1
                    if i != j and below[i] >> j & 1 and fail is None:
                        fail = f"shape {shape}: {els[i]!r} and {els[j]!r} below each other"
                    if below[i] & ~mask and fail is None:
                        fail = f"shape {shape}: transitivity fails through {els[i]!r}"
    return _finish("the annular order is a partial order", t0, cases, fail)


def check_order_kinds(max_total: int = 5) -> CheckResult:
    """Glued elements never sit below disc elements; other mixes occur."""
    max_total = min(max_total, 6)
    t0 = time.perf_counter()
    cases, fail = 0, None
    seen = {("disc", "disc"): 0, ("disc", "tunnel"): 0, ("tunnel", "tunnel"): 0}
    for n in range(2, max_total + 1):
        for p in range(1, n):
            shape = AnnulusShape(p, n - p)
            els, raw = _psnc_raw(shape)
            m = len(els)
            for j in range(m):
                for i in range(m):
                    if i == j or not _raw_leq(raw[i], raw[j], n):
                        continue
                    cases += 1
                    pair = (raw[i][4], raw[j][4])
                    if pair == ("tunnel", "disc") and fail is None:
                        fail = f"shape {shape}: glued {els[i]!r} below disc {els[j]!r}"
                    if pair in seen:
                        seen[pair] += 1
    if fail is None:
        missing = [pair for pair, k in seen.items() if k == 0]
        if missing:
            fail = f"expected strict relations never realized: {missing}"
    return _finish("glued elements never drop to disc elements", t0, cases, fail)


def check_order_structure(max_total: int = 6) -> CheckResult:
    """Any witnessed product within the family forces the zero witness.

    Whenever (V, pi) (W, pi^-1 sigma) = (U, sigma) holds inside the
    family, W is the cycle partition of pi^-1 sigma, U is the join of V
    with it (equivalently with pi and sigma, or with sigma pi^-1), and
    multiplying by sigma pi^-1 on the other side reaches (U, sigma) too.
    """
    max_total = min(max_total, 6)
    t0 = time.perf_counter()
    cases, fail = 0, None
    for n in range(2, max_total + 1):
        for p in range(1, n):
            shape = AnnulusShape(p, n - p)
            els, raw = _psnc_raw(shape)
            index = {}
            for k, (img0, _inv, plab, _l, _kd) in enumerate(raw):
                index[(img0, _canon0(plab))] = k
            sigmas = sorted({img0 for img0, *_ in raw})
            sigma_cc = {s: _cycle_count0(s) for s in sigmas}
            for a_pos, (a_img, a_inv, a_plab, a_len, _kind) in enumerate(raw):
                for s_img in sigmas:
                    w0 = _compose0(a_inv, s_img)
                    wcycles = _cycles0(w0)
                    b_metric = n - sigma_cc[s_img]
                    for wblocks in _set_partitions(wcycles):
                        w_pp_len = 2 * (n - len(wblocks)) - (n - len(wcycles))
                        parent = list(range(n))

                        def find(x: int) -> int:
                            while parent[x] != x:
                                parent[x] = parent[parent[x]]
                                x = parent[x]
                            return x

                        for i in range(n):
                            ri, rj = find(i), find(a_plab.index(a_plab[i]))
                            if ri != rj:
                                parent[ri] = rj
                        for block in wblocks:
                            anchor = block[0][0]
                            for cyc in block:
                                for x in cyc:
                                    ra, rx = find(anchor), find(x)
                                    if ra != rx:
                                        parent[rx] = ra
                        labels = [find(i) for i in range(n)]
                        blocks = len(set(labels))
                        if a_len + w_pp_len != 2 * (n - blocks) - b_metric:
                            continue
                        key = (s_img, _canon0(labels))
                        if key not in index:
                            continue
                        cases += 1
                        problem = None
                        if len(wblocks) != len(wcycles):
                            problem = "a coarser witness partition also multiplies"
                        b_el = els[index[key]]
                        a_el = els[a_pos]
                        if problem is None:
                            u = partition_join(
                                a_el.partition, orbit_partition(compose(a_el.perm.inverse(), b_el.perm))
                            )
                            v1 = partition_join(
                                partition_join(a_el.partition, orbit_partition(a_el.perm)),
                                orbit_partition(b_el.perm),
                            )
                            v2 = partition_join(
                                a_el.partition, orbit_partition(compose(b_el.perm, a_el.perm.inverse()))
                            )
                            if not (u == v1 == v2 == b_el.partition):
                                problem = "join expressions disagree with the product partition"
                        if problem is None:
                            flip = pp_product(
                                PartitionedPermutation.disc(compose(b_el.perm, a_el.perm.inverse())),
                                a_el,
                            )
                            if flip != b_el:
                                problem = "left multiplication by sigma pi^-1 misses"
                        if problem is not None and fail is None:
                            fail = f"shape {shape}, a={a_el!r}, b={b_el!r}: {problem}"
    return _finish("witnessed products force the zero witness", t0, cases, fail)


def _set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [(first,) + tuple(part[i])] + part[i + 1 :]
        yield [(first,)] + part


# -- model suites ------------------------------------------------------


def _model_cases(n: int):
    alt = tuple(1 if i % 2 == 0 else -1 for i in range(n))
    return (
        ("semicircular", semicircular_space(), x_word(n)),
        ("haar alternating", haar_unitary_space(), u_word(alt)),
        ("haar constant", haar_unitary_space(), u_word((1,) * n)),
        ("formal", formal_moment_space(), a_word(n)),
    )


def _main_theorem_cell(pq: tuple[int, int]) -> CheckResult:
    p, q = pq
    n = p + q
    t0 = time.perf_counter()
    cases, fail = 0, None
    for op in _compositions(p):
        for iq in _compositions(q):
            comp = Composition(op + iq, split=len(op))
            for label, model, word in _model_cases(n):
                cases += 1
                got = main_product_cumulant(model, word, comp)
                want = oracle_product_cumulant(model, word, comp)
                if got != want and fail is None:
                    fail = (
                        f"parts {comp.parts} split {comp.split}, {label}: separated "
                        f"sum {got!r}, direct recursion {want!r}"
                    )
    return _finish(f"second order product cumulants, shape ({p},{q})", t0, cases, fail)


def _ks_cell(n: int) -> CheckResult:
    t0 = time.perf_counter()
    cases, fail = 0, None
    for parts in _compositions(n):
        comp = Composition(parts)
        for label, model, word in _model_cases(n):
            cases += 1
            got = ks_product_cumulant(model, word, comp)
            want = oracle_product_cumulant(model, word, comp)
            if got != want and fail is None:
                fail = (
                    f"parts {parts}, {label}: connected sum {got!r}, "
                    f"direct recursion {want!r}"
                )
    return _finish(f"first order product cumulants, n={n}", t0, cases, fail)


def _haar_predicted(p: int, q: int, signs) -> int:
    if p % 2 or q % 2:
        return 0
    if any(signs[i] + signs[i + 1] for i in range(p - 1)):
        return 0
    if any(signs[i] + signs[i + 1] for i in range(p, p + q - 1)):
        return 0
    return (-1) ** ((p + q) // 2) * snc_count(p // 2, q // 2)


def _haar_cell(pq: tuple[int, int]) -> CheckResult:
    p, q = pq
    t0 = time.perf_counter()
    cases, fail = 0, None
    for signs in itertools.product((1, -1), repeat=p + q):
        cases += 1
        got = haar_kappa_pq(p, q, signs)
        want = _haar_predicted(p, q, signs)
        if got != want and fail is None:
            fail = f"signs {signs}: cumulant {got!r}, predicted {want}"
    return _finish(f"unitary sign sweep, shape ({p},{q})", t0, cases, fail)


def _square_cell(pq: tuple[int, int]) -> CheckResult:
    p, q = pq
    t0 = time.perf_counter()
    cases, fail = 0, None
    got = semicircular_square_kappa(p, q)
    ksum = sum(k * comb(p, k) * comb(q, k) for k in range(1, min(p, q) + 1))
    closed = p * comb(p + q - 1, p)
    cases += 1
    if not got == ksum == closed and fail is None:
        fail = f"separated count {got}, binomial sum {ksum}, closed form {closed}"
    if p + q <= 4:
        comp = Composition((2,) * (p + q), split=p)
        word = x_word(2 * (p + q))
        full = main_product_cumulant(semicircular_space(), word, comp)
        direct = oracle_product_cumulant(semicircular_space(), word, comp)
        cases += 1
        if not full == direct == got and fail is None:
            fail = (
                f"general machinery gives {full!r}/{direct!r}, "
                f"pairing count gives {got}"
            )
    return _finish(f"squared semicircular entries, shape ({p},{q})", t0, cases, fail)


def check_fluctuations(max_total: int = 10) -> CheckResult:
    """Fluctuation moments three ways: cycle sum, closed form, pairing count."""
    max_total = min(max_total, 12)
    t0 = time.perf_counter()
    cases, fail = 0, None
    for n in range(2, max_total + 1):
        for p in range(1, n):
            q = n - p
            cases += 1
            a = semicircular_phi2(p, q)
            b = semicircular_phi2_closed(p, q)
            c = count_snc_pairings(p, q)
            if not a == b == c and fail is None:
                fail = f"(p,q)=({p},{q}): sum {a}, closed {b}, pairings {c}"
            if n % 2 and a != 0 and fail is None:
                fail = f"(p,q)=({p},{q}): odd total but value {a}"
    return _finish("semicircular fluctuation moments agree three ways", t0, cases, fail)


def check_mobius_recurrence(max_total: int = 8) -> CheckResult:
    """The signed annular counts satisfy the convolution recurrence."""
    max_total = min(max_total, 9)
    t0 = time.perf_counter()
    cases, fail = 0, None
    for n in range(2, max_total + 1):
        for p in range(1, n):
            q = n - p
            cases += 1
            res = mobius_recurrence_residual(p, q)
            if res != 0 and fail is None:
                fail = f"(p,q)=({p},{q}): residual {res}"
    return _finish("signed annular counts satisfy the recurrence", t0, cases, fail)


# -- suites ------------------------------------------------------------


def _cells(fn, cells, jobs: int) -> list[CheckResult]:
    if jobs <= 1:
        return [fn(c) for c in cells]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, cells))


def _shape_cells(max_total: int) -> list[tuple[int, int]]:
    return [(p, t - p) for t in range(2, max_total + 1) for p in range(1, t)]


def suite_main_theorem(max_total: int | None = None, jobs: int = 1) -> list[CheckResult]:
    return _cells(_main_theorem_cell, _shape_cells(max_total or 8), jobs)


def suite_ks(max_total: int | None = None, jobs: int = 1) -> list[CheckResult]:
    return _cells(_ks_cell, list(range(1, (max_total or 8) + 1)), jobs)


def suite_semicircular(max_total: int | None = None, jobs: int = 1) -> list[CheckResult]:
    del jobs
    return [check_fluctuations(max_total or 10)]


def suite_semicircular_square(max_total: int | None = None, jobs: int = 1) -> list[CheckResult]:
    bound = max_total or 4
    cells = [(p, q) for p in range(1, bound + 1) for q in range(1, bound + 1)]
    return _cells(_square_cell, cells, jobs)


def suite_haar(max_total: int | None = None, jobs: int = 1) -> list[CheckResult]:
    return _cells(_haar_cell, _shape_cells(max_total or 8), jobs)


def suite_mobius(max_total: int | None = None, jobs: int = 1) -> list[CheckResult]:
    del jobs
    return [check_mobius_recurrence(max_total or 8)]


_LEMMA_CHECKS: tuple[tuple[str, int], ...] = (
    ("nc_counts", 9),
    ("metric_triangle", 6),
    ("metric_order", 6),
    ("conjugation_invariance", 6),
    ("restriction_commutes", 6),
    ("order_refinement", 6),
    ("snc_rotation", 6),
    ("first_sep", 8),
    ("separates", 8),
    ("tracial_inequality", 6),
    ("restriction_lemma", 8),
    ("fattening", 9),
    ("annular_order", 7),
    ("tunnel_product", 6),
    ("order_corollary", 6),
)

_ORDER_CHECKS: tuple[tuple[str, int], ...] = (
    ("order_axioms", 6),
    ("order_kinds", 5),
    ("order_structure", 6),
)

_CHECKS = {
    "nc_counts": check_nc_counts,
    "metric_triangle": check_metric_triangle,
    "metric_order": check_metric_order,
    "conjugation_invariance": check_conjugation_invariance,
    "restriction_commutes": check_restriction_commutes,
    "order_refinement": check_order_refinement,
    "snc_rotation": check_snc_rotation,
    "first_sep": check_first_sep,
    "separates": check_separates,
    "tracial_inequality": check_tracial_inequality,
    "restriction_lemma": check_restriction_lemma,
    "fattening": check_fattening,
    "annular_order": check_annular_order,
    "tunnel_product": check_tunnel_product,
    "order_corollary": check_order_corollary,
    "order_axioms": check_order_axioms,
    "order_kinds": check_order_kinds,
    "order_structure": check_order_structure,
}


def _named_check(spec: tuple[str, int]) -> CheckResult:
    name, bound = spec
    return _CHECKS[name](bound)


def _check_suite(table, max_total: int | None, jobs: int) -> list[CheckResult]:
    specs = [(name, default if max_total is None else min(default, max_total)) for name, default in table]
    return _cells(_named_check, specs, jobs)


def suite_lemmas(max_total: int | None = None, jobs: int = 1) -> list[CheckResult]:
    return _check_suite(_LEMMA_CHECKS, max_total, jobs)


def suite_order(max_total: int | None = None, jobs: int = 1) -> list[CheckResult]:
    return _check_suite(_ORDER_CHECKS, max_total, jobs)


SUITES = {
    "main-theorem": suite_main_theorem,
    "ks": suite_ks,
    "semicircular": suite_semicircular,
    "semicircular-square": suite_semicircular_square,
    "haar": suite_haar,
    "mobius": suite_mobius,
    "order": suite_order,
    "lemmas": suite_lemmas,
}


def suite_names() -> list[str]:
    return list(SUITES) + ["all"]


def run_suite(name: str, max_total: int | None = None, jobs: int = 1) -> list[CheckResult]:
    """Run one suite (or ``all``) and return its results in order."""
    if name == "all":
        out: list[CheckResult] = []
        for key in SUITES:
            out.extend(SUITES[key](max_total, jobs))
        return out
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(suite_names())}")
    return SUITES[name](max_total, jobs)
