"""Supervector fields: superderivations of the truncated function algebra.

A field is stored by its coefficient arrays: one SuperFunction per base
direction d/dx^i and one per odd direction d/dxi^a.  Applying a field
evaluates sum f_i * d/dx^i + sum g_a * d/dxi^a on a normal form, with the
left-derivative convention for the odd directions: d/dxi^a removes xi^a from
the left of a monomial and collects one minus sign per generator it jumps.

Coefficient arrays are plain data.  In a jet model (s > 0) the operator they
describe is a derivation of the truncated algebra only when every d/dx
coefficient has base degree >= 1; ``is_derivation`` tests this.  Other
fields are still usable as data (decomposition, serialization) but fail the
Leibniz rule at the truncation boundary and are not members of any LieModel.

Brackets are computed on coefficients: the coefficients of [X, Y] are the
values of the super commutator on the coordinate generators.  For genuine
derivations this agrees exactly with the operator-level super commutator;
the test suite cross-checks both paths.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError, PreconditionError
from .functions import ModelSpec, SuperFunction
from .rational_linalg import frac


def _d_base(a: SuperFunction, i: int) -> SuperFunction:
    """Partial derivative along x^i (1-based) on normal forms."""
    terms = {}
    for (base, odd), c in a.terms.items():
        e = base[i - 1]
        if e:
            nb = base[: i - 1] + (e - 1,) + base[i:]
            key = (nb, odd)
            terms[key] = terms.get(key, 0) + c * e
    return SuperFunction(a.spec, {k: v for k, v in terms.items() if v}, _internal=True)


def _d_odd(a: SuperFunction, idx: int) -> SuperFunction:
    """Left derivative along xi^idx on normal forms."""
    terms = {}
    for (base, odd), c in a.terms.items():
        if idx not in odd:
            continue
        pos = odd.index(idx)
        sign = -1 if pos % 2 else 1
        key = (base, odd[:pos] + odd[pos + 1:])
        v = terms.get(key, 0) + sign * c
        if v:
            terms[key] = v
        elif key in terms:
            del terms[key]
    return SuperFunction(a.spec, terms, _internal=True)


class SuperVectorField:
    """Coefficient arrays of a superderivation, immutable after construction."""

    __slots__ = ("spec", "even_coeffs", "odd_coeffs")

    def __init__(self, spec: ModelSpec, even_coeffs, odd_coeffs):
        even_coeffs = tuple(even_coeffs)
        odd_coeffs = tuple(odd_coeffs)
        if len(even_coeffs) != spec.base_dim:
            raise InputError(
                f"expected {spec.base_dim} even coefficients, got {len(even_coeffs)}"
            )
        if len(odd_coeffs) != spec.odd_rank:
            raise InputError(
                f"expected {spec.odd_rank} odd coefficients, got {len(odd_coeffs)}"
            )
        for c in even_coeffs + odd_coeffs:
            if not isinstance(c, SuperFunction) or c.spec != spec:
                raise InputError("coefficient specs must all match the field spec")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "even_coeffs", even_coeffs)
        object.__setattr__(self, "odd_coeffs", odd_coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("SuperVectorField is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, spec):
        z = SuperFunction.zero(spec)
        return cls(spec, (z,) * spec.base_dim, (z,) * spec.odd_rank)

    @classmethod
    def dx(cls, spec, i, coeff=None):
        """coeff * d/dx^i (default coefficient 1); i is 1-based."""
        if not 1 <= i <= spec.base_dim:
            raise InputError(f"base direction {i} out of range 1..{spec.base_dim}")
        z = SuperFunction.zero(spec)
        c = SuperFunction.one(spec) if coeff is None else coeff
        even = [z] * spec.base_dim
        even[i - 1] = c
        return cls(spec, even, (z,) * spec.odd_rank)

    @classmethod
    def dxi(cls, spec, a, coeff=None):
        """coeff * d/dxi^a (default coefficient 1); a is 1-based."""
        if not 1 <= a <= spec.odd_rank:
            raise InputError(f"odd direction {a} out of range 1..{spec.odd_rank}")
        z = SuperFunction.zero(spec)
        c = SuperFunction.one(spec) if coeff is None else coeff
        odd = [z] * spec.odd_rank
        odd[a - 1] = c
        return cls(spec, (z,) * spec.base_dim, odd)

    # -- linear structure ---------------------------------------------------

    def _check_spec(self, other):
        if self.spec != other.spec:
            raise InputError(f"mismatched model specs {self.spec} and {other.spec}")

    def __add__(self, other):
        if not isinstance(other, SuperVectorField):
            return NotImplemented
        self._check_spec(other)
        return SuperVectorField(
            self.spec,
            tuple(a + b for a, b in zip(self.even_coeffs, other.even_coeffs)),
            tuple(a + b for a, b in zip(self.odd_coeffs, other.odd_coeffs)),
        )

    def __neg__(self):
        return SuperVectorField(
            self.spec,
            tuple(-c for c in self.even_coeffs),
            tuple(-c for c in self.odd_coeffs),
        )

    def __sub__(self, other):
        if not isinstance(other, SuperVectorField):
            return NotImplemented
        return self + (-other)

    def scaled(self, c):
        c = frac(c)
        return SuperVectorField(
            self.spec,
            tuple(f.scaled(c) for f in self.even_coeffs),
            tuple(g.scaled(c) for g in self.odd_coeffs),
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        if isinstance(other, SuperFunction):
            # function times field: (f X)(a) = f * X(a)
            return SuperVectorField(
                self.spec,
                tuple(other * c for c in self.even_coeffs),
                tuple(other * c for c in self.odd_coeffs),
            )
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        return NotImplemented

    def __eq__(self, other):
        return (
            isinstance(other, SuperVectorField)
            and self.spec == other.spec
            and self.even_coeffs == other.even_coeffs
            and self.odd_coeffs == other.odd_coeffs
        )

    def __hash__(self):
        return hash((self.spec, self.even_coeffs, self.odd_coeffs))

    @property
    def is_zero(self):
        return all(c.is_zero for c in self.even_coeffs + self.odd_coeffs)

    # -- grading ------------------------------------------------------------

    @property
    def parity(self):
        """0 or 1 when homogeneous, else None.

        An even coefficient of parity p sits in a field of parity p; an odd
        coefficient of parity q sits in a field of parity (q + 1) mod 2.
        """
        seen = set()
        for c in self.even_coeffs:
            seen.update(len(odd) % 2 for (_, odd) in c.terms)
        for c in self.odd_coeffs:
            seen.update((len(odd) + 1) % 2 for (_, odd) in c.terms)
        return seen.pop() if len(seen) == 1 else None

    def parity_split(self):
        """(even part, odd part); the parts sum to the field."""
        return parity_split(self)

    def apply(self, a: SuperFunction) -> SuperFunction:
        return apply(self, a)

    def bracket(self, other: "SuperVectorField") -> "SuperVectorField":
        return bracket(self, other)

    def degree_decompose(self):
        return degree_decompose(self)

    def to_json(self):
        return {
            "spec": self.spec.to_json(),
            "even_coeffs": [c.to_json() for c in self.even_coeffs],
            "odd_coeffs": [c.to_json() for c in self.odd_coeffs],
        }

    @classmethod
    def from_json(cls, data, spec=None):
        if not isinstance(data, dict):
            raise InputError("field JSON must be an object")
        if spec is None:
            if "spec" not in data:
                raise InputError("field JSON missing field 'spec'")
            spec = ModelSpec.from_json(data["spec"])
        for key in ("even_coeffs", "odd_coeffs"):
            if key not in data or not isinstance(data[key], list):
                raise InputError(f"field JSON missing list field '{key}'")
        even = [SuperFunction.from_json(spec, t) for t in data["even_coeffs"]]
        odd = [SuperFunction.from_json(spec, t) for t in data["odd_coeffs"]]
        return cls(spec, even, odd)

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.even_coeffs):
            if c:
                parts.append(f"({c!r})*d/dx{i + 1}")
        for a, c in enumerate(self.odd_coeffs):
            if c:
                parts.append(f"({c!r})*d/dxi{a + 1}")
        return " + ".join(parts) if parts else "0"


def _parity_component(field: SuperVectorField, p: int) -> SuperVectorField:
    even = tuple(
        SuperFunction(
            c.spec,
            {k: v for k, v in c.terms.items() if len(k[1]) % 2 == p},
            _internal=True,
        )
        for c in field.even_coeffs
    )
    odd = tuple(
        SuperFunction(
            c.spec,
            {k: v for k, v in c.terms.items() if (len(k[1]) + 1) % 2 == p},
            _internal=True,
        )
        for c in field.odd_coeffs
    )
    return SuperVectorField(field.spec, even, odd)


def parity_split(field: SuperVectorField):
    """(even part, odd part); the parts sum to the field."""
    return _parity_component(field, 0), _parity_component(field, 1)


def apply(X: SuperVectorField, a: SuperFunction) -> SuperFunction:
    """Evaluate the derivation on a function; linear and graded-Leibniz.

    For homogeneous X and a: X(a b) = X(a) b + (-1)^(|X||a|) a X(b),
    provided X is a genuine derivation of the truncated algebra.
    """
    if X.spec != a.spec:
        raise InputError(f"mismatched model specs {X.spec} and {a.spec}")
    out = SuperFunction.zero(a.spec)
    for i, f in enumerate(X.even_coeffs, start=1):
        if f:
            out = out + f * _d_base(a, i)
    for k, g in enumerate(X.odd_coeffs, start=1):
        if g:
            out = out + g * _d_odd(a, k)
    return out


def is_derivation(X: SuperVectorField) -> bool:
    """True when the coefficient data defines a derivation of the algebra.

    In a jet model every d/dx coefficient needs base degree >= 1 in each
    term, else the operator does not descend to the truncated quotient.
    """
    if X.spec.base_dim == 0:
        return True
    return all(
        c.is_zero or c.min_base_degree() >= 1 for c in X.even_coeffs
    )


def _bracket_homogeneous(X, Y, px, py):
    sign = -1 if (px and py) else 1
    even = tuple(
        apply(X, fy) - apply(Y, fx).scaled(sign)
        for fx, fy in zip(X.even_coeffs, Y.even_coeffs)
    )
    odd = tuple(
        apply(X, gy) - apply(Y, gx).scaled(sign)
        for gx, gy in zip(X.odd_coeffs, Y.odd_coeffs)
    )
    return SuperVectorField(X.spec, even, odd)


def bracket(X: SuperVectorField, Y: SuperVectorField) -> SuperVectorField:
    """Super commutator [X, Y] = X Y - (-1)^(|X||Y|) Y X on coefficients.

    Non-homogeneous inputs are split by parity and recombined bilinearly;
    the sign rule only makes sense on homogeneous pairs.
    """
    if X.spec != Y.spec:
        raise InputError(f"mismatched model specs {X.spec} and {Y.spec}")
    out = SuperVectorField.zero(X.spec)
    for px, xp in enumerate(parity_split(X)):
        if xp.is_zero:
            continue
        for py, yp in enumerate(parity_split(Y)):
            if yp.is_zero:
                continue
            out = out + _bracket_homogeneous(xp, yp, px, py)
    return out


def euler_field(spec: ModelSpec) -> SuperVectorField:
    """The degree-counting field sum_a xi^a d/dxi^a.

    Its value on a k-fold odd monomial is k times the monomial, so its
    adjoint action grades the field algebra.
    """
    z = SuperFunction.zero(spec)
    odd = [SuperFunction.xi(spec, a) for a in range(1, spec.odd_rank + 1)]
    return SuperVectorField(spec, (z,) * spec.base_dim, odd)


def degree_decompose(X: SuperVectorField) -> dict:
    """Split into eigenvectors of the Euler adjoint action.

    The degree-m part keeps the odd-degree-m terms of the d/dx coefficients
    and the odd-degree-(m+1) terms of the d/dxi coefficients; components sum
    back to the input and satisfy [euler, X_m] = m X_m.
    """
    spec = X.spec
    degrees = set()
    for c in X.even_coeffs:
        degrees.update(c.odd_degrees())
    for c in X.odd_coeffs:
        degrees.update(k - 1 for k in c.odd_degrees())
    out = {}
    for m in sorted(degrees):
        even = tuple(c.component(m) for c in X.even_coeffs)
        odd = tuple(c.component(m + 1) for c in X.odd_coeffs)
        comp = SuperVectorField(spec, even, odd)
        if not comp.is_zero:
            out[m] = comp
    return out


def anchor(X: SuperVectorField) -> SuperVectorField:
    """Base component of an even degree-0 field: sum_i f^i(x) d/dx^i.

    On degree-0 fields this projection is a Lie algebra homomorphism onto
    the base vector fields.
    """
    if X.parity not in (0, None) or (X.parity is None and not X.is_zero):
        raise PreconditionError("anchor requires an even field")
    decomp = degree_decompose(X)
    if set(decomp) - {0}:
        raise PreconditionError(
            f"anchor requires a degree-0 field, got degrees {sorted(decomp)}"
        )
    z = SuperFunction.zero(X.spec)
    return SuperVectorField(X.spec, X.even_coeffs, (z,) * X.spec.odd_rank)
