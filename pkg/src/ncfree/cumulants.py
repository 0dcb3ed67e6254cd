"""First and second order free cumulants, and cumulants with products as
arguments.

Arguments to a cumulant are given as a tuple of words; entry i is the i-th
argument of the multilinear functional, and a plain letter is a word of
length one.  Moments of products are then concatenations, which is all the
recursions need.

First order: kappa_n is defined by inverting

    phi(w) = sum over disc non-crossing pi of prod over cycles kappa_|c|,

solved for the full-cycle term.  Every other summand only involves
cumulants of strictly smaller order, so the recursion grounds at
kappa_1 = phi.

Second order: kappa_{p,q} inverts

    phi2(w1, w2) = sum over annular partitioned permutations (V, pi)
                   of kappa_(V,pi),

where kappa_(V,pi) multiplies kappa_|c| over single-cycle blocks and
kappa_{s,t} over the glued two-cycle block.  The solved-for term is the
top element (1, gamma_pq); every other tunnel summand has its glued block
sizes (s, t) <= (p, q) with at least one strict inequality (s = p forces
the outer factor to be the full cycle, likewise inside, and both at once
happen only at the top), so the recursion terminates, grounding in first
order and in kappa_{1,1}.

The product formulas: for grouped arguments A_i = a_{n_1+...+n_{i-1}+1}
... a_{n_1+...+n_i},

    kappa_r(A_1, ..., A_r)      = sum over sigma in NC(n) with
                                  sigma join tau = 1_n of kappa_sigma,
    kappa_{r,s}(A_1, ..., A_{r+s}) = sum over annular (V, pi) whose
                                  complement pi^-1 gamma_pq separates the
                                  group endpoints of kappa_(V,pi).

Both are verified against the direct recursions on the grouped words by
the test suite; neither is assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .annular import (
    AnnulusShape,
    Composition,
    PartitionedPermutation,
    count_snc_pairings,
    enumerate_nc,
    enumerate_psnc,
    enumerate_snc,
    kreweras_cycle_ids,
    tau_of,
)
from .perm import Permutation, SetPartition, full_cycle, orbit_partition, partition_join
from .spaces import (
    CumulantPolynomial,
    MomentOracle,
    Scalar,
    Word,
    a_word,
    alpha2_symbol,
    alpha_symbol,
    catalan,
    concat_words,
    formal_moment_space,
    haar_unitary_space,
    kappa2_symbol,
    kappa_symbol,
    u_word,
)

__all__ = [
    "CumulantCache",
    "clear_caches",
    "kappa_n",
    "kappa_pi",
    "kappa_pq",
    "kappa_vp",
    "phi_via_cumulants",
    "phi2_via_cumulants",
    "ks_product_cumulant",
    "main_product_cumulant",
    "oracle_product_cumulant",
    "symbolic_phi_expansion",
    "symbolic_phi2_expansion",
    "symbolic_kappa_pq",
    "snc_count",
    "catalan",
    "mobius_full_cycle",
    "mobius_annulus",
    "mobius_recurrence_residual",
    "haar_kappa_pq",
    "semicircular_square_kappa",
]

Args = tuple[Word, ...]


@dataclass
class CumulantCache:
    """Memo tables for one model, keyed by literal argument words."""

    first: dict[Args, Scalar] = field(default_factory=dict)
    second: dict[tuple[Args, Args], Scalar] = field(default_factory=dict)
    elements: dict[tuple[Args, PartitionedPermutation], Scalar] = field(
        default_factory=dict
    )


_caches: dict[str, CumulantCache] = {}


def _cache(model: MomentOracle) -> CumulantCache:
    cache = _caches.get(model.name)
    if cache is None:
        cache = _caches[model.name] = CumulantCache()
    return cache


def clear_caches() -> None:
    """Drop all memoized cumulant values (the enumerations stay)."""
    _caches.clear()


def _norm_args(args) -> Args:
    out = tuple(tuple(w) for w in args)
    if not out or any(not w for w in out):
        raise ValueError("cumulant arguments must be nonempty words")
    return out


def _sub_args(args: Args, cycle: tuple[int, ...]) -> Args:
    return tuple(args[i - 1] for i in cycle)


def kappa_n(model: MomentOracle, args) -> Scalar:
    """The free cumulant of the argument list, by the disc recursion."""
    args = _norm_args(args)
    cache = _cache(model).first
    value = cache.get(args)
    if value is None:
        n = len(args)
        if n == 1:
            value = model.phi(args[0])
        else:
            parts = [
                _kappa_cycles(model, args, pi.cycles)
                for pi in enumerate_nc(n)
                if pi.metric_length != n - 1  # skip the solved-for full cycle
            ]
            value = model.phi(concat_words(args)) - CumulantPolynomial.sum(parts)
        cache[args] = value
    return value


def _kappa_cycles(model: MomentOracle, args: Args, cycles) -> Scalar:
    out: Scalar = 1
    for cycle in cycles:
        out = out * kappa_n(model, _sub_args(args, cycle))
    return out


def kappa_pi(model: MomentOracle, args, pi: Permutation) -> Scalar:
    """Product of cumulants over the cycles of a disc non-crossing pi."""
    from .annular import is_nc_disc

    args = _norm_args(args)
    if pi.size != len(args):
        raise ValueError("permutation size does not match argument count")
    if not is_nc_disc(pi):
        raise ValueError(f"{pi!r} is not disc non-crossing")
    return _kappa_cycles(model, args, pi.cycles)


def kappa_pq(model: MomentOracle, args1, args2) -> Scalar:
    """The second order cumulant, by the annular recursion."""
    args1 = _norm_args(args1)
    args2 = _norm_args(args2)
    cache = _cache(model).second
    key = (args1, args2)
    value = cache.get(key)
    if value is None:
        p, q = len(args1), len(args2)
        shape = AnnulusShape(p, q)
        gamma = shape.gamma()
        allargs = args1 + args2
        parts = []
        for vp in enumerate_psnc(shape):
            if vp.perm == gamma and vp.partition.block_count == 1:
                continue  # the solved-for top element
            parts.append(kappa_vp(model, allargs, vp))
        value = model.phi2(
            concat_words(args1), concat_words(args2)
        ) - CumulantPolynomial.sum(parts)
        cache[key] = value
    return value


def kappa_vp(model: MomentOracle, args, vp: PartitionedPermutation) -> Scalar:
    """The cumulant attached to a partitioned permutation.

    Single-cycle blocks contribute kappa over the cycle (arguments read in
    cycle order from the minimum); a two-cycle block contributes
    kappa_{s,t} with the cycle of smaller minimum first.  For the annular
    elements that smaller-minimum cycle is the outer-circle one.
    """
    args = _norm_args(args)
    if vp.size != len(args):
        raise ValueError("partitioned permutation size does not match arguments")
    cache = _cache(model).elements
    key = (args, vp)
    value = cache.get(key)
    if value is None:
        value = 1
        for group in vp.block_cycles():
            if len(group) == 1:
                value = value * kappa_n(model, _sub_args(args, group[0]))
            elif len(group) == 2:
                first, second = group  # ordered by minimum
                value = value * kappa_pq(
                    model, _sub_args(args, first), _sub_args(args, second)
                )
            else:
                raise ValueError("a block may hold at most two cycles")
        cache[key] = value
    return value


# -- reconstruction (the defining sums, used as consistency checks) ----


def phi_via_cumulants(model: MomentOracle, args) -> Scalar:
    """Sum of kappa_pi over all disc non-crossing pi."""
    args = _norm_args(args)
    return CumulantPolynomial.sum(
        _kappa_cycles(model, args, pi.cycles) for pi in enumerate_nc(len(args))
    )


def phi2_via_cumulants(model: MomentOracle, args1, args2) -> Scalar:
    """Sum of kappa_(V,pi) over all annular partitioned permutations."""
    args1 = _norm_args(args1)
    args2 = _norm_args(args2)
    allargs = args1 + args2
    shape = AnnulusShape(len(args1), len(args2))
    return CumulantPolynomial.sum(
        kappa_vp(model, allargs, vp) for vp in enumerate_psnc(shape)
    )


# -- cumulants with products as arguments ------------------------------


def _grouped_args(word: Word, comp: Composition) -> list[Word]:
    if comp.total != len(word):
        raise ValueError("composition does not exhaust the word")
    out, pos = [], 0
    for n in comp.parts:
        out.append(tuple(word[pos : pos + n]))
        pos += n
    return out


def ks_product_cumulant(model: MomentOracle, word, comp: Composition) -> Scalar:
    """First order cumulant with products as entries, as a filtered sum.

    ``comp`` groups the letters of ``word`` into consecutive products; the
    value is the sum of kappa_sigma over disc non-crossing sigma whose
    join with the interval partition of ``comp`` is everything.  The
    contract (checked by the suite, not assumed) is equality with
    kappa_r of the grouped words, r the number of parts.
    """
    if comp.split is not None:
        raise ValueError("use a split composition with main_product_cumulant")
    word = tuple(word)
    args = tuple((letter,) for letter in word)
    n = len(word)
    if comp.total != n:
        raise ValueError("composition does not exhaust the word")
    tau_blocks = orbit_partition(tau_of(comp))
    ones = SetPartition.full(n)
    parts = []
    for sigma in enumerate_nc(n):
        if partition_join(orbit_partition(sigma), tau_blocks) == ones:
            parts.append(_kappa_cycles(model, args, sigma.cycles))
    return CumulantPolynomial.sum(parts)


def _separated(ids: tuple[int, ...], points: tuple[int, ...]) -> bool:
    seen = 0
    for pt in points:
        bit = 1 << ids[pt - 1]
        if seen & bit:
            return False
        seen |= bit
    return True


def main_product_cumulant(model: MomentOracle, word, comp: Composition) -> Scalar:
    """Second order cumulant with products as entries, as a filtered sum.

    ``comp`` must be split; its first ``split`` parts group the outer
    letters, the rest the inner letters.  The sum runs over the annular
    partitioned permutations whose complement separates the group
    endpoints.  The contract (checked by the suite, not assumed) is
    equality with kappa_{r,s} of the grouped words.
    """
    word = tuple(word)
    shape = comp.shape()
    if comp.total != len(word):
        raise ValueError("composition does not exhaust the word")
    args = tuple((letter,) for letter in word)
    points = comp.boundary_points
    parts = []
    for vp in enumerate_psnc(shape):
        ids = kreweras_cycle_ids(shape, vp.perm)
        if _separated(ids, points):
            parts.append(kappa_vp(model, args, vp))
    return CumulantPolynomial.sum(parts)


def oracle_product_cumulant(model: MomentOracle, word, comp: Composition) -> Scalar:
    """The independent route: the direct recursion on the grouped words."""
    word = tuple(word)
    groups = _grouped_args(word, comp)
    if comp.split is None:
        return kappa_n(model, tuple(groups))
    r = comp.split
    return kappa_pq(model, tuple(groups[:r]), tuple(groups[r:]))


# -- symbolic tables ---------------------------------------------------


def symbolic_phi_expansion(n: int) -> CumulantPolynomial:
    """alpha_n as a polynomial in the first order cumulant symbols."""
    acc: dict[tuple[str, ...], int] = {}
    for pi in enumerate_nc(n):
        monomial = tuple(sorted(kappa_symbol(len(c)) for c in pi.cycles))
        acc[monomial] = acc.get(monomial, 0) + 1
    return CumulantPolynomial(acc)


def symbolic_phi2_expansion(p: int, q: int) -> CumulantPolynomial:
    """alpha_{p,q} as a polynomial in cumulant symbols.

    One monomial per annular partitioned permutation: kappa over every
    single-cycle block and kappa_{s,t} over the glued block.
    """
    from .spaces import _monomial

    acc: dict[tuple[str, ...], int] = {}
    for vp in enumerate_psnc(AnnulusShape(p, q)):
        symbols = []
        for group in vp.block_cycles():
            if len(group) == 1:
                symbols.append(kappa_symbol(len(group[0])))
            else:
                symbols.append(kappa2_symbol(len(group[0]), len(group[1])))
        monomial = _monomial(symbols)
        acc[monomial] = acc.get(monomial, 0) + 1
    return CumulantPolynomial(acc)


def symbolic_kappa_pq(p: int, q: int) -> CumulantPolynomial:
    """kappa_{p,q} of a single generic element, in moment symbols."""
    value = kappa_pq(formal_moment_space(), (a_word(1),) * p, (a_word(1),) * q)
    return CumulantPolynomial.coerce(value)


# -- counts and the Mobius recurrence ----------------------------------


def snc_count(p: int, q: int) -> int:
    """Number of annular non-crossing permutations of the (p, q) shape."""
    return len(enumerate_snc(AnnulusShape(p, q)))


def mobius_full_cycle(n: int) -> int:
    """Mobius value between the discrete and full partition on [n]."""
    return (-1) ** (n - 1) * catalan(n - 1)


def mobius_annulus(p: int, q: int) -> int:
    """Signed annular count (-1)^(p+q) |S_NC(p, q)|."""
    return (-1) ** (p + q) * snc_count(p, q)


def mobius_recurrence_residual(p: int, q: int) -> int:
    """Defect of the annular Mobius recurrence; zero when it holds.

    The recurrence couples the signed annular counts to the disc values:

        0 = m(p, q) + q m(p + q) + sum over 0 < k < p of
            [ m(k, q) m(p - k) + m(k) m(p - k, q) ]

    with m(n) the disc value and m(s, t) the annular one.
    """
    total = mobius_annulus(p, q) + q * mobius_full_cycle(p + q)
    for k in range(1, p):
        total += mobius_annulus(k, q) * mobius_full_cycle(p - k)
        total += mobius_full_cycle(k) * mobius_annulus(p - k, q)
    return total


# -- model-specific evaluations ---------------------------------------


def haar_kappa_pq(p: int, q: int, signs) -> Scalar:
    """kappa_{p,q} of a Haar unitary word with the given exponent signs."""
    signs = tuple(signs)
    if len(signs) != p + q:
        raise ValueError("sign pattern length must be p + q")
    letters = u_word(signs)
    return kappa_pq(
        haar_unitary_space(),
        tuple((l,) for l in letters[:p]),
        tuple((l,) for l in letters[p:]),
    )


def semicircular_square_kappa(p: int, q: int) -> int:
    """kappa_{p,q} of squares of a semicircular, via the product formula.

    In the separated annular sum every term with a cycle of length other
    than two, or with a glued block, vanishes for this model, so the value
    is the number of annular non-crossing pairings of (2p, 2q) whose
    complement separates the even points.  The closed forms
    sum_k k C(p,k) C(q,k) and p C(p+q-1, p) are verified against this
    count by the suite.
    """
    evens = tuple(range(2, 2 * (p + q) + 1, 2))
    return count_snc_pairings(2 * p, 2 * q, separated_at=evens)
