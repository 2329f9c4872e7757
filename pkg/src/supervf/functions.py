"""Exact supercommutative function algebras with a truncated polynomial base.

The algebra is B (x) Lambda(xi^1, ..., xi^r): B is the polynomial algebra in
base variables x^1..x^s with every monomial of total degree above the
truncation order identified with zero, and Lambda is the Grassmann algebra on
r anticommuting generators.  With s = 0 the base collapses to the rationals
and the algebra is a plain Grassmann algebra.

Elements are kept in a unique normal form: odd generators strictly
increasing, coefficients nonzero exact rationals, base exponents within the
truncation bound.  Equality of algebra elements is dictionary equality, and
every operation returns normalized values.

Canonical monomial order, used for serialization and basis enumeration:
odd monomials sort by (length, index list), base monomials by
(total degree, exponent list).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InputError
from .rational_linalg import ZERO, ONE, format_rational, frac, parse_rational


@dataclass(frozen=True)
class ModelSpec:
    """Shape of the model: s base variables truncated at degree d, r odd ones.

    ``low_rank_exceptional`` marks the range where grading-reversing
    automorphisms may exist: a single odd generator, or a pure-odd model with
    at most two of them.
    """

    base_dim: int
    truncation_order: int
    odd_rank: int

    def __post_init__(self):
        if not isinstance(self.base_dim, int) or self.base_dim < 0:
            raise InputError("spec field 'base_dim' must be an integer >= 0")
        if not isinstance(self.truncation_order, int) or self.truncation_order < 0:
            raise InputError("spec field 'truncation_order' must be an integer >= 0")
        if not isinstance(self.odd_rank, int) or self.odd_rank < 1:
            raise InputError("spec field 'odd_rank' must be an integer >= 1")

    @property
    def low_rank_exceptional(self) -> bool:
        return self.odd_rank == 1 or (self.base_dim == 0 and self.odd_rank <= 2)

    def to_json(self):
        return {
            "base_dim": self.base_dim,
            "truncation_order": self.truncation_order,
            "odd_rank": self.odd_rank,
        }

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise InputError("spec JSON must be an object")
        for key in ("base_dim", "truncation_order", "odd_rank"):
            if key not in data:
                raise InputError(f"spec JSON missing field '{key}'")
            if not isinstance(data[key], int) or isinstance(data[key], bool):
                raise InputError(f"spec field '{key}' must be an integer")
        return cls(data["base_dim"], data["truncation_order"], data["odd_rank"])

    def __repr__(self):
        return f"ModelSpec({self.base_dim},{self.truncation_order},{self.odd_rank})"


def base_monomial_key(exponents):
    return (sum(exponents), exponents)


def odd_monomial_key(indices):
    return (len(indices), indices)


@lru_cache(maxsize=None)
def base_monomials(spec: ModelSpec):
    """All base exponent tuples of total degree <= d, in canonical order."""
    s, d = spec.base_dim, spec.truncation_order
    if s == 0:
        return ((),)
    out = []
    for total in range(d + 1):
        out.extend(_exponents_of_degree(s, total))
    return tuple(out)


def _exponents_of_degree(s, total):
    if s == 1:
        return [(total,)]
    result = []
    for first in range(total + 1):
        for rest in _exponents_of_degree(s - 1, total - first):
            result.append((first,) + rest)
    result.sort()
    return result


@lru_cache(maxsize=None)
def odd_monomials(spec: ModelSpec):
    """All strictly increasing index tuples from 1..r, in canonical order."""
    r = spec.odd_rank
    out = []
    for length in range(r + 1):
        out.extend(itertools.combinations(range(1, r + 1), length))
    return tuple(out)


def _sort_odd_indices(indices):
    """Sort an odd index list, tracking the permutation sign.

    Returns (sorted tuple, sign); a repeated index annihilates the term and
    is reported as (None, 0).
    """
    lst = list(indices)
    sign = 1
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j] < lst[j - 1]:
            lst[j], lst[j - 1] = lst[j - 1], lst[j]
            sign = -sign
            j -= 1
    for k in range(len(lst) - 1):
        if lst[k] == lst[k + 1]:
            return None, 0
    return tuple(lst), sign


def _merge_odd(o1, o2):
    """Concatenate two increasing odd monomials; returns (merged, sign)."""
    if set(o1) & set(o2):
        return None, 0
    inv = 0
    j = 0
    for x in o1:
        while j < len(o2) and o2[j] < x:
            j += 1
        inv += j
    merged = tuple(sorted(o1 + o2))
    return merged, (-1 if inv % 2 else 1)


class SuperFunction:
    """Element of the truncated super function algebra, in normal form.

    ``terms`` maps (base exponent tuple, odd index tuple) to a nonzero
    Fraction.  Instances are immutable; all operators return new values.
    """

    __slots__ = ("spec", "terms", "_hash")

    def __init__(self, spec: ModelSpec, terms=None, _internal=False):
        object.__setattr__(self, "spec", spec)
        if _internal:
            object.__setattr__(self, "terms", terms or {})
        else:
            raw = [] if terms is None else [
                (base, odd, coeff) for (base, odd), coeff in terms.items()
            ]
            object.__setattr__(self, "terms", _normalized_terms(spec, raw))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("SuperFunction is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, spec):
        return cls(spec, {}, _internal=True)

    @classmethod
    def one(cls, spec):
        return cls.monomial(spec, (0,) * spec.base_dim, ())

    @classmethod
    def monomial(cls, spec, base, odd, coeff=1):
        return normalize(spec, [(tuple(base), tuple(odd), coeff)])

    @classmethod
    def constant(cls, spec, value):
        return cls.monomial(spec, (0,) * spec.base_dim, (), value)

    @classmethod
    def xi(cls, spec, a):
        """The odd generator xi^a."""
        return cls.monomial(spec, (0,) * spec.base_dim, (a,))

    @classmethod
    def x(cls, spec, i, power=1):
        """The base monomial (x^i)^power; i is 1-based."""
        if not 1 <= i <= spec.base_dim:
            raise InputError(f"base index {i} out of range 1..{spec.base_dim}")
        exps = [0] * spec.base_dim
        exps[i - 1] = power
        return cls.monomial(spec, tuple(exps), ())

    # -- ring structure ---------------------------------------------------

    def _check_spec(self, other):
        if self.spec != other.spec:
            raise InputError(
                f"mismatched model specs {self.spec} and {other.spec}"
            )

    def __add__(self, other):
        if not isinstance(other, SuperFunction):
            return NotImplemented
        self._check_spec(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            v = terms.get(key, ZERO) + c
            if v:
                terms[key] = v
            elif key in terms:
                del terms[key]
        return SuperFunction(self.spec, terms, _internal=True)

    def __neg__(self):
        return SuperFunction(
            self.spec, {k: -c for k, c in self.terms.items()}, _internal=True
        )

    def __sub__(self, other):
        if not isinstance(other, SuperFunction):
            return NotImplemented
        return self + (-other)

    def scaled(self, c):
        c = frac(c)
        if not c:
            return SuperFunction.zero(self.spec)
        return SuperFunction(
            self.spec, {k: c * v for k, v in self.terms.items()}, _internal=True
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        if not isinstance(other, SuperFunction):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, SuperFunction)
            and self.spec == other.spec
            and self.terms == other.terms
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.spec, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    @property
    def parity(self):
        """0 or 1 for homogeneous elements, None for mixed, None for zero."""
        seen = {len(odd) % 2 for (_, odd) in self.terms}
        return seen.pop() if len(seen) == 1 else None

    def odd_degrees(self):
        return sorted({len(odd) for (_, odd) in self.terms})

    def component(self, k):
        """Terms with exactly k odd generators."""
        return SuperFunction(
            self.spec,
            {key: c for key, c in self.terms.items() if len(key[1]) == k},
            _internal=True,
        )

    def grade_split(self):
        return grade_split(self)

    def max_base_degree(self):
        return max((sum(b) for (b, _) in self.terms), default=0)

    def min_base_degree(self):
        return min((sum(b) for (b, _) in self.terms), default=0)

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (odd_monomial_key(kv[0][1]), base_monomial_key(kv[0][0])),
        )

    # -- serialization ------------------------------------------------------

    def to_json(self):
        return [
            {"base": list(b), "odd": list(o), "coeff": format_rational(c)}
            for (b, o), c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, spec, data):
        if not isinstance(data, list):
            raise InputError("super function JSON must be a list of terms")
        raw = []
        for pos, term in enumerate(data):
            if not isinstance(term, dict):
                raise InputError(f"term {pos}: expected an object")
            for key in ("base", "odd", "coeff"):
                if key not in term:
                    raise InputError(f"term {pos}: missing field '{key}'")
            if isinstance(term["coeff"], float):
                raise InputError(
                    f"term {pos}: field 'coeff' must be a rational string, not a float"
                )
            raw.append((tuple(term["base"]), tuple(term["odd"]),
                        parse_rational(term["coeff"])))
        return normalize(spec, raw)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (b, o), c in self.sorted_terms():
            factors = []
            for i, e in enumerate(b):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            factors.extend(f"xi{a}" for a in o)
            coeff = format_rational(c)
            if factors:
                head = "" if c == ONE else ("-" if c == -ONE else f"({coeff})*")
                parts.append(head + "*".join(factors))
            else:
                parts.append(coeff if c >= 0 else f"({coeff})")
        return " + ".join(parts)


def _normalized_terms(spec, raw_terms):
    s, d, r = spec.base_dim, spec.truncation_order, spec.odd_rank
    acc = {}
    for base, odd, coeff in raw_terms:
        base = tuple(base)
        if len(base) != s:
            raise InputError(
                f"base exponent list {base} has length {len(base)}, expected {s}"
            )
        for e in base:
            if not isinstance(e, int) or e < 0:
                raise InputError(f"base exponent {e!r} must be an integer >= 0")
        for a in odd:
            if not isinstance(a, int) or not 1 <= a <= r:
                raise InputError(f"odd index {a!r} out of range 1..{r}")
        coeff = frac(coeff)
        if not coeff or sum(base) > d:
            continue  # zero term, or killed by the jet truncation
        sorted_odd, sign = _sort_odd_indices(odd)
        if sorted_odd is None:
            continue  # repeated odd generator
        key = (base, sorted_odd)
        v = acc.get(key, ZERO) + sign * coeff
        if v:
            acc[key] = v
        elif key in acc:
            del acc[key]
    return acc


def normalize(spec: ModelSpec, raw_terms) -> SuperFunction:
    """Normal form of a raw term list (exponents, odd index list, coefficient).

    Repeated odd indices annihilate a term, unsorted odd lists pick up the
    permutation sign, base monomials beyond the truncation order are dropped,
    like terms merge, zero coefficients disappear.
    """
    return SuperFunction(spec, _normalized_terms(spec, raw_terms), _internal=True)


def multiply(a: SuperFunction, b: SuperFunction) -> SuperFunction:
    """Supercommutative product; result is normalized."""
    if not isinstance(a, SuperFunction) or not isinstance(b, SuperFunction):
        raise InputError("multiply expects two SuperFunction values")
    a._check_spec(b)
    d = a.spec.truncation_order
    acc = {}
    for (b1, o1), c1 in a.terms.items():
        for (b2, o2), c2 in b.terms.items():
            base = tuple(e1 + e2 for e1, e2 in zip(b1, b2))
            if sum(base) > d:
                continue
            odd, sign = _merge_odd(o1, o2)
            if odd is None:
                continue
            key = (base, odd)
            v = acc.get(key, ZERO) + sign * c1 * c2
            if v:
                acc[key] = v
            elif key in acc:
                del acc[key]
    return SuperFunction(a.spec, acc, _internal=True)


def grade_split(a: SuperFunction) -> dict:
    """Split by number of odd generators; components sum back to the input.

    Even (odd) parity parts are the sums over even (odd) keys.
    """
    out = {}
    for (base, odd), c in a.terms.items():
        k = len(odd)
        out.setdefault(k, {})[(base, odd)] = c
    return {
        k: SuperFunction(a.spec, terms, _internal=True)
        for k, terms in sorted(out.items())
    }
