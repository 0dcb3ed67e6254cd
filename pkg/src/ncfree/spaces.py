"""Moment oracles and the exact symbolic scalar type.

A word is a tuple of letters ``(generator, exponent)`` with exponent +1 or
-1.  Three models supply first and second order moments:

- semicircular: one self-adjoint generator ``x``; phi(x^n) is a Catalan
  number for even n and 0 otherwise, and the two-point moments are the
  through-string counts phi2(x^p, x^q) = sum_k k C(p,(p-k)/2) C(q,(q-k)/2).
- haar: one unitary ``u``; phi(u^k) = [k == 0] and
  phi2(u^k, u^l) = [k == -l] |k|.
- formal moments: one symbol ``a``; moments are opaque symbols alpha_n and
  alpha_{p,q}, so every computation downstream of this model is a
  polynomial identity.

All scalars are exact: Python integers, fractions, or
``CumulantPolynomial`` (integer coefficients, sparse monomials over the
symbols k_n, k_{s,t}, a_n, a_{s,t}).  No floating point is used anywhere.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Union

__all__ = [
    "Letter",
    "Word",
    "gen_word",
    "x_word",
    "a_word",
    "u_word",
    "concat_words",
    "catalan",
    "semicircular_phi",
    "semicircular_phi2",
    "semicircular_phi2_closed",
    "haar_phi",
    "haar_phi2",
    "MomentOracle",
    "semicircular_space",
    "haar_unitary_space",
    "formal_moment_space",
    "CumulantPolynomial",
    "kappa_symbol",
    "kappa2_symbol",
    "alpha_symbol",
    "alpha2_symbol",
    "Scalar",
]

Letter = tuple[str, int]
Word = tuple[Letter, ...]


def gen_word(name: str, n: int) -> Word:
    """n copies of the generator, exponent +1."""
    return ((name, 1),) * n


def x_word(n: int) -> Word:
    return gen_word("x", n)


def a_word(n: int) -> Word:
    return gen_word("a", n)


def u_word(signs: Iterable[int]) -> Word:
    """A word in u and u^-1 from a sign sequence.

    >>> u_word((1, -1, 1))
    (('u', 1), ('u', -1), ('u', 1))
    """
    out = []
    for s in signs:
        if s not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {s}")
        out.append(("u", s))
    return tuple(out)


def concat_words(words: Iterable[Word]) -> Word:
    return tuple(itertools.chain.from_iterable(words))


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("catalan number of negative index")
    return math.comb(2 * n, n) // (n + 1)


# -- semicircular ------------------------------------------------------


def _check_letters(word: Word, allowed: str, signs: tuple[int, ...]) -> None:
    for g, e in word:
        if g != allowed or e not in signs:
            raise ValueError(f"unknown letter {(g, e)!r} for generator {allowed!r}")


def semicircular_phi(word: Word) -> int:
    """Moments of a standard semicircular element: Catalan numbers.

    >>> [semicircular_phi(x_word(n)) for n in range(1, 7)]
    [0, 1, 0, 2, 0, 5]
    """
    _check_letters(word, "x", (1,))
    n = len(word)
    return 0 if n % 2 else catalan(n // 2)


def semicircular_phi2(p: int, q: int) -> int:
    """Fluctuation moments as the through-string sum.

    Zero when p = 0, q = 0, or p + q is odd; otherwise the sum of
    k C(p, (p-k)/2) C(q, (q-k)/2) over k of the same parity as p.
    """
    if p < 0 or q < 0:
        raise ValueError("negative power")
    if p == 0 or q == 0 or (p + q) % 2:
        return 0
    start = 2 if p % 2 == 0 else 1
    total = 0
    for k in range(start, min(p, q) + 1, 2):
        total += k * math.comb(p, (p - k) // 2) * math.comb(q, (q - k) // 2)
    return total


def semicircular_phi2_closed(p: int, q: int) -> int:
    """The same fluctuation moments in closed form (two parity cases)."""
    if p < 0 or q < 0:
        raise ValueError("negative power")
    if p == 0 or q == 0 or (p + q) % 2:
        return 0
    if p % 2 == 0:
        value = Fraction(p * q, 2 * (p + q)) * math.comb(p, p // 2) * math.comb(q, q // 2)
    else:
        value = (
            Fraction((p + 1) * (q + 1), 8 * (p + q))
            * math.comb(p + 1, (p + 1) // 2)
            * math.comb(q + 1, (q + 1) // 2)
        )
    assert value.denominator == 1
    return int(value)


# -- haar unitary ------------------------------------------------------


def haar_phi(word: Word) -> int:
    """phi(u^{e_1} ... u^{e_n}) = 1 iff the exponents cancel."""
    _check_letters(word, "u", (1, -1))
    return 1 if sum(e for _, e in word) == 0 else 0


def haar_phi2(w1: Word, w2: Word) -> int:
    """phi2(u^k, u^l) = |k| when k = -l, else 0 (and 0 when k = l = 0)."""
    _check_letters(w1, "u", (1, -1))
    _check_letters(w2, "u", (1, -1))
    k = sum(e for _, e in w1)
    l = sum(e for _, e in w2)
    return abs(k) if k == -l else 0


# -- symbols and polynomials ------------------------------------------


def kappa_symbol(n: int) -> str:
    if n < 1:
        raise ValueError("cumulant order must be positive")
    return f"k{n}"


def kappa2_symbol(s: int, t: int) -> str:
    if s < 1 or t < 1:
        raise ValueError("cumulant orders must be positive")
    s, t = sorted((s, t))
    return f"k{s},{t}"


def alpha_symbol(n: int) -> str:
    if n < 1:
        raise ValueError("moment order must be positive")
    return f"a{n}"


def alpha2_symbol(s: int, t: int) -> str:
    if s < 1 or t < 1:
        raise ValueError("moment orders must be positive")
    s, t = sorted((s, t))
    return f"a{s},{t}"


def _symbol_parts(sym: str) -> tuple[str, tuple[int, ...]]:
    kind, rest = sym[0], sym[1:]
    return kind, tuple(int(x) for x in rest.split(","))


def _symbol_key(sym: str):
    kind, orders = _symbol_parts(sym)
    return (kind, len(orders), orders)


# display: first-order symbols (ascending order) before the two-point one
def _display_symbol_key(sym: str):
    kind, orders = _symbol_parts(sym)
    return (len(orders), kind, orders)


def _monomial(symbols: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(symbols, key=_symbol_key))


Coeff = Union[int, Fraction]


class CumulantPolynomial:
    """Sparse polynomial in moment/cumulant symbols, exact coefficients.

    Monomials are sorted tuples of symbol strings; repeated symbols encode
    powers.  Supports +, -, * with integers, fractions, and other
    polynomials; comparison against plain scalars works, so tests can say
    ``poly == 0``.

    >>> k2 = CumulantPolynomial.from_symbol("k2")
    >>> k1 = CumulantPolynomial.from_symbol("k1")
    >>> print(k2 - k1 * k1)
    -k1^2 + k2
    """

    __slots__ = ("terms",)

    terms: dict[tuple[str, ...], Coeff]

    def __init__(self, terms: Mapping[tuple[str, ...], Coeff] | None = None):
        clean: dict[tuple[str, ...], Coeff] = {}
        if terms:
            for monomial, coeff in terms.items():
                if isinstance(coeff, Fraction) and coeff.denominator == 1:
                    coeff = int(coeff)
                if coeff:
                    clean[tuple(monomial)] = coeff
        self.terms = clean

    @classmethod
    def zero(cls) -> "CumulantPolynomial":
        return cls()

    @classmethod
    def constant(cls, c: Coeff) -> "CumulantPolynomial":
        return cls({(): c})

    @classmethod
    def from_symbol(cls, sym: str) -> "CumulantPolynomial":
        return cls({(sym,): 1})

    @classmethod
    def coerce(cls, value: "Scalar") -> "CumulantPolynomial":
        if isinstance(value, CumulantPolynomial):
            return value
        return cls.constant(value)

    @classmethod
    def sum(cls, values: Iterable["Scalar"]) -> "Scalar":
        """Sum a stream of scalars without quadratic dict copying."""
        acc: dict[tuple[str, ...], Coeff] = {}
        plain: Coeff = 0
        saw_poly = False
        for v in values:
            if isinstance(v, CumulantPolynomial):
                saw_poly = True
                for m, c in v.terms.items():
                    acc[m] = acc.get(m, 0) + c
            else:
                plain += v
        if not saw_poly:
            return plain
        if plain:
            acc[()] = acc.get((), 0) + plain
        return cls(acc)

    # -- ring operations ----------------------------------------------

    def _add_terms(self, other: "Scalar", negate: bool) -> "CumulantPolynomial":
        out = dict(self.terms)
        if isinstance(other, CumulantPolynomial):
            items = other.terms.items()
        else:
            items = ({(): other}).items() if other else ()
        for m, c in items:
            if negate:
                c = -c
            out[m] = out.get(m, 0) + c
        return CumulantPolynomial(out)

    def __add__(self, other):
        if isinstance(other, (CumulantPolynomial, int, Fraction)):
            return self._add_terms(other, negate=False)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (CumulantPolynomial, int, Fraction)):
            return self._add_terms(other, negate=True)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CumulantPolynomial({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return CumulantPolynomial()
            return CumulantPolynomial({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, CumulantPolynomial):
            return NotImplemented
        out: dict[tuple[str, ...], Coeff] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _monomial(m1 + m2)
                out[m] = out.get(m, 0) + c1 * c2
        return CumulantPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = CumulantPolynomial.constant(1)
        for _ in range(n):
            out = out * self
        return out

    # -- value semantics ----------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CumulantPolynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.terms
            return self.terms == {(): other}
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.terms)

    __hash__ = None  # mutable dict inside; polynomials are not dict keys

    # -- substitution and export --------------------------------------

    def substitute(self, values: Mapping[str, "Scalar"]) -> "Scalar":
        """Evaluate by replacing each symbol; missing symbols raise."""
        total: list[Scalar] = []
        for monomial, coeff in self.terms.items():
            acc: Scalar = coeff
            for sym in monomial:
                if sym not in values:
                    raise KeyError(f"no value supplied for symbol {sym!r}")
                acc = acc * values[sym]
            total.append(acc)
        return CumulantPolynomial.sum(total)

    def sorted_terms(self) -> list[tuple[tuple[str, ...], Coeff]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def to_json_obj(self) -> list[dict]:
        out = []
        for monomial, coeff in self.sorted_terms():
            if isinstance(coeff, Fraction):
                raise ValueError("non-integer coefficient cannot be serialized")
            out.append({"coeff": coeff, "monomial": list(monomial)})
        return out

    def _display_terms(self) -> list[tuple[tuple[str, ...], Coeff]]:
        def term_key(item):
            monomial, _ = item
            two_point = [s for s in monomial if "," in s]
            # two-point monomials first, heavier symbols first, then text order
            return (
                0 if two_point else 1,
                tuple(-sum(_symbol_parts(s)[1]) for s in two_point),
                monomial,
            )

        return sorted(self.terms.items(), key=term_key)

    def __str__(self) -> str:
        return self._render(
            times="*", power="^", symbol=lambda s: s, plus=" + ", minus=" - "
        )

    __repr__ = __str__

    def to_latex(self) -> str:
        def symbol(sym: str) -> str:
            kind, orders = _symbol_parts(sym)
            name = "\\kappa" if kind == "k" else "\\alpha"
            if len(orders) == 1 and orders[0] < 10:
                return f"{name}_{orders[0]}"
            return f"{name}_{{{','.join(map(str, orders))}}}"

        return self._render(times=" ", power="^", symbol=symbol, plus=" + ", minus=" - ")

    def _render(self, times, power, symbol, plus, minus) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for monomial, coeff in self._display_terms():
            factors = []
            ordered = sorted(monomial, key=_display_symbol_key)
            for sym, group in itertools.groupby(ordered):
                count = len(list(group))
                rendered = symbol(sym)
                factors.append(rendered if count == 1 else f"{rendered}{power}{count}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = times.join(factors) if times != "*" else "*".join(factors)
            else:
                body = times.join([str(mag)] + factors)
            pieces.append((coeff < 0, body))
        first_neg, first_body = pieces[0]
        text = ("-" + first_body) if first_neg else first_body
        for neg, body in pieces[1:]:
            text += (minus if neg else plus) + body
        return text


Scalar = Union[int, Fraction, CumulantPolynomial]


# -- oracles -----------------------------------------------------------


@dataclass(frozen=True)
class MomentOracle:
    """A first and second order moment functional pair.

    ``name`` identifies the model semantically; the cumulant layer keys
    its memo tables by it, so two oracles sharing a name must agree.
    """

    name: str
    phi: Callable[[Word], Scalar] = field(compare=False)
    phi2: Callable[[Word, Word], Scalar] = field(compare=False)


def _semicircular_phi2_words(w1: Word, w2: Word) -> int:
    _check_letters(w1, "x", (1,))
    _check_letters(w2, "x", (1,))
    return semicircular_phi2(len(w1), len(w2))


_SEMICIRCULAR = MomentOracle("semicircular", semicircular_phi, _semicircular_phi2_words)
_HAAR = MomentOracle("haar-unitary", haar_phi, haar_phi2)


def semicircular_space() -> MomentOracle:
    """The second-order probability space of one standard semicircular."""
    return _SEMICIRCULAR


def haar_unitary_space() -> MomentOracle:
    """The second-order probability space of one Haar unitary."""
    return _HAAR


def _formal_phi(word: Word) -> Scalar:
    _check_letters(word, "a", (1,))
    n = len(word)
    if n == 0:
        return 1
    return CumulantPolynomial.from_symbol(alpha_symbol(n))


def _formal_phi2(w1: Word, w2: Word) -> Scalar:
    _check_letters(w1, "a", (1,))
    _check_letters(w2, "a", (1,))
    if not w1 or not w2:
        return 0
    return CumulantPolynomial.from_symbol(alpha2_symbol(len(w1), len(w2)))


_FORMAL = MomentOracle("formal-moments", _formal_phi, _formal_phi2)


def formal_moment_space() -> MomentOracle:
    """Moments as opaque symbols; downstream results are polynomial identities."""
    return _FORMAL
