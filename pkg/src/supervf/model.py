"""Finite-dimensional Lie superalgebra models of supervector fields.

``build_model`` enumerates the canonical monomial basis of the derivation
algebra of a truncated super function algebra, computes exact structure
constants, and labels every basis element with its integer degree (the
eigenvalue of the Euler adjoint action) and parity.  On top of that sit the
canonical subspaces: grading eigenspaces, the positive-even-degree ideal,
the bracket-generated filtration, the associated graded model, and
brute-force oracles for maximal ad-nilpotent ideals.

Canonical basis order: degree ascending; within a degree, base-direction
fields before odd-direction fields; within a kind, lexicographic on
(base monomial, odd monomial, target index).  In a jet model the base
coefficients of d/dx fields start at base degree 1: constant terms would
not descend to the truncated quotient, so they are not derivations.

Subspaces are stored in reduced row echelon form over the rationals with a
fixed pivot order, so subspace equality is literal matrix equality.
"""

from __future__ import annotations

import os
from fractions import Fraction

from .errors import (
    ConsistencyError,
    InputError,
    PreconditionError,
    ResourceLimitError,
    UnsupportedModelError,
)
from .fields import SuperVectorField, bracket, euler_field
from .functions import (
    ModelSpec,
    SuperFunction,
    base_monomial_key,
    base_monomials,
    odd_monomial_key,
    odd_monomials,
)
from .rational_linalg import (
    ONE,
    ZERO,
    SpanBuilder,
    format_rational,
    nullspace,
    sparse_is_nilpotent,
)

DIM_CAP_ENV = "SVF_DIM_CAP"
DEFAULT_DIM_CAP = 2000

_MODEL_CACHE: dict = {}


def model_dimension(spec: ModelSpec) -> int:
    """Dimension of the derivation algebra, computable without building it."""
    n_base = len(base_monomials(spec))
    n_odd = 2 ** spec.odd_rank
    if spec.base_dim == 0:
        return spec.odd_rank * n_odd
    return spec.base_dim * (n_base - 1) * n_odd + spec.odd_rank * n_base * n_odd


class BasisEntry:
    """Descriptor of one monomial basis field: coeff * d/d(target)."""

    __slots__ = ("kind", "target", "base", "odd", "degree")

    def __init__(self, kind, target, base, odd):
        self.kind = kind  # "x" or "xi"
        self.target = target  # 1-based direction index
        self.base = base
        self.odd = odd
        self.degree = len(odd) if kind == "x" else len(odd) - 1

    def sort_key(self):
        return (
            self.degree,
            0 if self.kind == "x" else 1,
            base_monomial_key(self.base),
            odd_monomial_key(self.odd),
            self.target,
        )

    def to_json(self):
        return {
            "kind": self.kind,
            "target": self.target,
            "base": list(self.base),
            "odd": list(self.odd),
        }

    def __repr__(self):
        coeff = "".join(
            [f"x{i + 1}^{e}" for i, e in enumerate(self.base) if e]
            + [f"xi{a}" for a in self.odd]
        )
        return f"{coeff or '1'}*d/d{'x' if self.kind == 'x' else 'xi'}{self.target}"


class LieModel:
    """Canonical basis, degrees, parities and exact structure constants."""

    def __init__(self, spec, entries, basis, degrees, parities, structure):
        self.spec = spec
        self.entries = entries
        self.basis = basis
        self.degrees = degrees
        self.parities = parities
        self.structure = structure  # (i, j) -> {k: Fraction}, nonzero only
        self._index = {
            (e.kind, e.target, e.base, e.odd): i for i, e in enumerate(entries)
        }
        self._ad_basis = None
        self._euler = None
        self._cache = {}
        # set by graded_quotient on the returned model
        self.parent = None
        self.iso_to_parent = None

    @property
    def dim(self):
        return len(self.basis)

    @property
    def top_degree(self):
        return max(self.degrees)

    def degree_indices(self, m):
        return tuple(i for i, d in enumerate(self.degrees) if d == m)

    def parity_indices(self, p):
        return tuple(i for i, q in enumerate(self.parities) if q == p)

    def coordinates(self, field: SuperVectorField):
        """Exact coordinates of a field over the monomial basis.

        Fields outside the span (constant-coefficient base directions in a
        jet model) are rejected: they are not derivations of the algebra.
        """
        if field.spec != self.spec:
            raise InputError(
                f"field spec {field.spec} does not match model spec {self.spec}"
            )
        coords = [ZERO] * self.dim
        for i, coeff in enumerate(field.even_coeffs, start=1):
            for (b, o), c in coeff.terms.items():
                idx = self._index.get(("x", i, b, o))
                if idx is None:
                    raise InputError(
                        f"coefficient of d/dx{i} has a base-degree-0 term; "
                        "such operators are not derivations of the truncated "
                        "algebra and lie outside the model"
                    )
                coords[idx] += c
        for a, coeff in enumerate(field.odd_coeffs, start=1):
            for (b, o), c in coeff.terms.items():
                coords[self._index[("xi", a, b, o)]] += c
        return coords

    def field_from_coords(self, coords) -> SuperVectorField:
        out = SuperVectorField.zero(self.spec)
        for c, e in zip(coords, self.basis):
            if c:
                out = out + e.scaled(c)
        return out

    def bracket_coords(self, u, v):
        """[u, v] in model coordinates via the structure constants."""
        out = [ZERO] * self.dim
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj:
                    continue
                entry = self.structure.get((i, j))
                if entry:
                    f = ui * vj
                    for k, c in entry.items():
                        out[k] += f * c
        return out

    def ad_sparse_basis(self, i):
        """Sparse matrix of ad(e_i): column j holds [e_i, e_j]."""
        if self._ad_basis is None:
            self._ad_basis = [None] * self.dim
        if self._ad_basis[i] is None:
            rows: dict = {}
            for j in range(self.dim):
                entry = self.structure.get((i, j))
                if entry:
                    for k, c in entry.items():
                        rows.setdefault(k, {})[j] = c
            self._ad_basis[i] = rows
        return self._ad_basis[i]

    def ad_sparse(self, v):
        """Sparse matrix of ad(v) for v in model coordinates."""
        rows: dict = {}
        for i, vi in enumerate(v):
            if not vi:
                continue
            for k, cols in self.ad_sparse_basis(i).items():
                target = rows.setdefault(k, {})
                for j, c in cols.items():
                    w = target.get(j, ZERO) + vi * c
                    if w:
                        target[j] = w
                    elif j in target:
                        del target[j]
        return {k: cols for k, cols in rows.items() if cols}

    def ad_dense(self, v):
        rows = [[ZERO] * self.dim for _ in range(self.dim)]
        for k, cols in self.ad_sparse(v).items():
            for j, c in cols.items():
                rows[k][j] = c
        return rows

    def euler_coords(self):
        if self._euler is None:
            self._euler = self.coordinates(euler_field(self.spec))
        return self._euler

    def to_json(self):
        triples = []
        for (i, j), entry in sorted(self.structure.items()):
            for k in sorted(entry):
                triples.append([i, j, k, format_rational(entry[k])])
        return {
            "spec": self.spec.to_json(),
            "dim": self.dim,
            "basis": [e.to_json() for e in self.entries],
            "degrees": list(self.degrees),
            "parities": list(self.parities),
            "structure": triples,
        }

    def __repr__(self):
        return f"LieModel(spec={self.spec}, dim={self.dim})"


def build_model(spec: ModelSpec, dim_cap=None) -> LieModel:
    """Enumerate the canonical basis and compute all structure constants."""
    if dim_cap is None:
        dim_cap = int(os.environ.get(DIM_CAP_ENV, DEFAULT_DIM_CAP))
    dim = model_dimension(spec)
    if dim > dim_cap:
        raise ResourceLimitError(
            f"model dimension {dim} exceeds the cap {dim_cap} "
            f"(override with {DIM_CAP_ENV} or dim_cap)"
        )
    cached = _MODEL_CACHE.get(spec)
    if cached is not None:
        return cached

    entries = []
    for i in range(1, spec.base_dim + 1):
        for b in base_monomials(spec):
            if sum(b) == 0:
                continue  # not a derivation of the truncated base algebra
            for o in odd_monomials(spec):
                entries.append(BasisEntry("x", i, b, o))
    for a in range(1, spec.odd_rank + 1):
        for b in base_monomials(spec):
            for o in odd_monomials(spec):
                entries.append(BasisEntry("xi", a, b, o))
    entries.sort(key=BasisEntry.sort_key)

    basis = []
    for e in entries:
        coeff = SuperFunction.monomial(spec, e.base, e.odd)
        if e.kind == "x":
            basis.append(SuperVectorField.dx(spec, e.target, coeff))
        else:
            basis.append(SuperVectorField.dxi(spec, e.target, coeff))

    degrees = tuple(e.degree for e in entries)
    parities = tuple(d % 2 for d in degrees)

    model = LieModel(spec, tuple(entries), tuple(basis), degrees, parities, {})
    structure = {}
    for i in range(dim):
        for j in range(dim):
            coords = model.coordinates(bracket(basis[i], basis[j]))
            entry = {k: c for k, c in enumerate(coords) if c}
            if entry:
                structure[(i, j)] = entry
    model.structure = structure
    _MODEL_CACHE[spec] = model
    return model


class Subspace:
    """Subspace of a model in reduced row echelon form (unique per subspace)."""

    __slots__ = ("model", "rows", "pivots")

    def __init__(self, model, reduced_rows):
        self.model = model
        self.rows = tuple(tuple(r) for r in reduced_rows)
        self.pivots = tuple(next(j for j, x in enumerate(r) if x) for r in self.rows)

    @classmethod
    def from_vectors(cls, model, vectors):
        builder = SpanBuilder(model.dim)
        for v in vectors:
            builder.add(v)
        return cls(model, builder.reduced_rows())

    @classmethod
    def from_basis_indices(cls, model, indices):
        n = model.dim
        vectors = []
        for i in sorted(indices):
            v = [ZERO] * n
            v[i] = ONE
            vectors.append(v)
        return cls(model, vectors)

    @classmethod
    def zero(cls, model):
        return cls(model, [])

    @classmethod
    def full(cls, model):
        return cls.from_basis_indices(model, range(model.dim))

    @property
    def dim(self):
        return len(self.rows)

    @property
    def is_zero(self):
        return not self.rows

    def reduce_vector(self, vec):
        v = list(vec)
        for p, row in zip(self.pivots, self.rows):
            c = v[p]
            if c:
                for j in range(p, len(v)):
                    if row[j]:
                        v[j] -= c * row[j]
        return v

    def contains_vector(self, vec):
        return not any(self.reduce_vector(vec))

    def contains(self, other: "Subspace"):
        return all(self.contains_vector(r) for r in other.rows)

    def sum(self, other: "Subspace"):
        return Subspace.from_vectors(self.model, list(self.rows) + list(other.rows))

    def bracket_span(self, other: "Subspace"):
        builder = SpanBuilder(self.model.dim)
        for u in self.rows:
            for v in other.rows:
                builder.add(self.model.bracket_coords(u, v))
        return Subspace(self.model, builder.reduced_rows())

    def basis_vectors(self):
        return [list(r) for r in self.rows]

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.model.spec == other.model.spec
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.model.spec, self.rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.model.dim})"


def even_part(model: LieModel) -> Subspace:
    return Subspace.from_basis_indices(model, model.parity_indices(0))


def odd_part(model: LieModel) -> Subspace:
    return Subspace.from_basis_indices(model, model.parity_indices(1))


def grading_eigenspaces(model: LieModel) -> dict:
    """Eigenspaces of the Euler adjoint action, computed as exact kernels.

    The result is cross-checked against the basis degree labels and must
    decompose the whole model as a direct sum.
    """
    cached = model._cache.get("eigenspaces")
    if cached is not None:
        return cached
    ad_e = model.ad_dense(model.euler_coords())
    out = {}
    total = 0
    for m in range(min(model.degrees), max(model.degrees) + 1):
        shifted = [row[:] for row in ad_e]
        for i in range(model.dim):
            shifted[i][i] -= m
        kernel = nullspace(shifted)
        if not kernel:
            continue
        space = Subspace.from_vectors(model, kernel)
        expected = model.degree_indices(m)
        if space.dim != len(expected) or not space.contains(
            Subspace.from_basis_indices(model, expected)
        ):
            raise ConsistencyError(
                f"degree-{m} eigenspace disagrees with the basis degree labels"
            )
        out[m] = space
        total += space.dim
    if total != model.dim:
        raise ConsistencyError("grading eigenspaces do not sum to the whole model")
    model._cache["eigenspaces"] = out
    return out


def canonical_ideal(model: LieModel) -> Subspace:
    """Sum of the positive even-degree eigenspaces, verified to be an ideal.

    Brackets against the whole model are checked to land in degrees shifted
    by at least the ideal degree, and brackets against the even part stay
    inside the ideal.
    """
    cached = model._cache.get("canonical_ideal")
    if cached is not None:
        return cached
    ideal_indices = {
        i for i, d in enumerate(model.degrees) if d >= 2 and d % 2 == 0
    }
    space = Subspace.from_basis_indices(model, ideal_indices)
    for i in sorted(ideal_indices):
        di = model.degrees[i]
        for j in range(model.dim):
            entry = model.structure.get((i, j))
            if not entry:
                continue
            dj = model.degrees[j]
            for k in entry:
                if model.degrees[k] != di + dj:
                    raise ConsistencyError(
                        f"bracket of basis {i},{j} leaves degree {di + dj}"
                    )
                if model.parities[j] == 0 and k not in ideal_indices:
                    raise ConsistencyError(
                        "canonical ideal is not closed under the even part"
                    )
    model._cache["canonical_ideal"] = space
    return space


def is_ad_nilpotent(model: LieModel, v) -> bool:
    """Nilpotency of ad(v), decided by exact matrix powering."""
    return sparse_is_nilpotent(model.ad_sparse(v), model.dim)


def ideal_closure(model: LieModel, vectors, within: Subspace) -> Subspace:
    """Smallest ideal of ``within`` containing the given vectors."""
    builder = SpanBuilder(model.dim)
    for v in vectors:
        if not within.contains_vector(v):
            raise PreconditionError("ideal_closure seed lies outside 'within'")
        builder.add(v)
    changed = True
    while changed:
        changed = False
        current = [list(r) for r in builder.rows.values()]
        for w in within.rows:
            for v in current:
                if builder.add(model.bracket_coords(list(w), v)):
                    changed = True
    return Subspace(model, builder.reduced_rows())


def center_subspace(model: LieModel, within: Subspace) -> Subspace:
    """Elements of ``within`` whose bracket with all of ``within`` vanishes."""
    rows = within.basis_vectors()
    if not rows:
        return Subspace.zero(model)
    system = []
    for w in rows:
        cols = [model.bracket_coords(v, w) for v in rows]
        for k in range(model.dim):
            eq = [col[k] for col in cols]
            if any(eq):
                system.append(eq)
    if not system:
        coeffs = [[ONE if i == j else ZERO for j in range(len(rows))]
                  for i in range(len(rows))]
    else:
        coeffs = nullspace(system)
    vectors = []
    for t in coeffs:
        v = [ZERO] * model.dim
        for ti, row in zip(t, rows):
            if ti:
                for k in range(model.dim):
                    if row[k]:
                        v[k] += ti * row[k]
        vectors.append(v)
    return Subspace.from_vectors(model, vectors)


def _acts_nilpotently(model, operators: Subspace, target: Subspace) -> bool:
    """Whole-subspace nilpotency via the lower central series of the action.

    The chain T, [S,T], [S,[S,T]], ... reaches zero exactly when every
    element of the bracket-closed subspace S acts ad-nilpotently on T.
    Requires [S, T] inside T so the chain is decreasing.
    """
    current = target
    while True:
        nxt = operators.bracket_span(current)
        if not current.contains(nxt):
            raise PreconditionError(
                "action chain left the target space; 'acting_on' must be "
                "invariant under 'within'"
            )
        if nxt.dim == current.dim:
            return current.is_zero
        if nxt.is_zero:
            return True
        current = nxt


def _is_ideal(model, candidate: Subspace, within: Subspace) -> bool:
    return candidate.contains(within.bracket_span(candidate))


def _canonical_prediction(model, within, acting_on):
    if within == even_part(model) and acting_on == Subspace.full(model):
        return canonical_ideal(model)
    eigen = grading_eigenspaces(model)
    zero_space = eigen.get(0, Subspace.zero(model))
    if within == zero_space and acting_on == zero_space:
        # at a point the base functions are constants: multiples of the Euler
        # field are the predicted ideal
        return Subspace.from_vectors(model, [model.euler_coords()])
    return None


def bruteforce_max_nilpotent_ideal(
    model: LieModel, within: Subspace, acting_on: Subspace
) -> Subspace:
    """Maximal ideal of ``within`` acting ad-nilpotently on ``acting_on``.

    Search: take ideal closures of candidate elements (basis vectors of
    ``within`` plus its center), keep those whose closure acts nilpotently,
    sum and saturate.  The result is verified to be an ideal, verified
    nilpotent via the action chain, and verified maximal: adjoining any
    remaining candidate produces an ideal with a non-nilpotent element.
    When the inputs match a canonical pattern (even part acting on the whole
    model, or the degree-0 part acting on itself) the prediction must agree
    exactly with the search.
    """
    if model.spec.base_dim > 0:
        raise UnsupportedModelError(
            "pure-odd models only: after jet truncation, base-direction "
            "fields (for example x^d d/dx) become ad-nilpotent, so the "
            "brute-force ideal would not match the smooth-case answer"
        )
    if not within.contains(within.bracket_span(within)):
        raise PreconditionError("'within' must be closed under the bracket")
    pool = [list(r) for r in within.rows]
    for row in center_subspace(model, within).rows:
        if not any(all(a == b for a, b in zip(row, p)) for p in pool):
            pool.append(list(row))

    found = Subspace.zero(model)
    for v in pool:
        closure = ideal_closure(model, [v], within)
        if _acts_nilpotently(model, closure, acting_on):
            found = found.sum(closure)
    changed = True
    while changed:
        changed = False
        for v in pool:
            if found.contains_vector(v):
                continue
            closure = ideal_closure(model, list(found.rows) + [v], within)
            if _acts_nilpotently(model, closure, acting_on):
                found = closure
                changed = True

    if not _is_ideal(model, found, within):
        raise ConsistencyError("search result is not an ideal of 'within'")
    if not _acts_nilpotently(model, found, acting_on):
        raise ConsistencyError("search result does not act nilpotently")
    for v in pool:
        if found.contains_vector(v):
            continue
        closure = ideal_closure(model, list(found.rows) + [v], within)
        if _acts_nilpotently(model, closure, acting_on):
            raise ConsistencyError("maximality failed: a larger ideal exists")

    predicted = _canonical_prediction(model, within, acting_on)
    if predicted is not None and predicted != found:
        raise ConsistencyError(
            f"canonical prediction (dim {predicted.dim}) disagrees with the "
            f"brute-force search (dim {found.dim})"
        )
    return found


def filtration(model: LieModel):
    """Decreasing bracket-generated chain, listed from level -1 upward.

    Level -1 is the odd part, level 0 the even part, and each further level
    is the bracket span of the canonical ideal with the level two below,
    iterated until both parity chains stabilize at zero.  The returned list
    ``levels`` satisfies ``levels[k]`` = level (k - 1).
    """
    cached = model._cache.get("filtration")
    if cached is not None:
        return cached
    ideal = canonical_ideal(model)
    levels = {-1: odd_part(model), 0: even_part(model)}
    p = 1
    while True:
        levels[p] = ideal.bracket_span(levels[p - 2])
        if not levels[p - 2].contains(levels[p]):
            raise ConsistencyError(f"filtration level {p} is not decreasing")
        if p >= 1 and levels[p].is_zero and levels[p - 1].is_zero:
            break
        if p > model.top_degree + 3:
            raise ConsistencyError("filtration failed to stabilize")
        p += 1
    out = [levels[q] for q in range(-1, p + 1)]
    model._cache["filtration"] = out
    return out


def filtration_level(levels, p):
    """Level p with the usual clamping: below the start, the chain is full.

    Levels of each parity begin at -1 (odd) and 0 (even); indices past the
    computed list are zero.
    """
    if p < -1:
        p = -1 if p % 2 else 0
    idx = p + 1
    if idx >= len(levels):
        return Subspace.zero(levels[0].model)
    return levels[idx]


def filtration_respects_bracket(model: LieModel):
    """Check [level p, level q] inside level (p+q) for all computed levels.

    Returns None, or a witness pair (p, q) on failure.
    """
    levels = filtration(model)
    top = len(levels) - 2  # largest computed level index
    for p in range(-1, top + 1):
        for q in range(p, top + 1):
            image = filtration_level(levels, p).bracket_span(
                filtration_level(levels, q)
            )
            if not filtration_level(levels, p + q).contains(image):
                return (p, q)
    return None


def prop_filtration_hypothesis(spec: ModelSpec) -> bool:
    """Range where the level/eigenspace-sum identity is asserted and checked."""
    return spec.odd_rank > 2 or (spec.base_dim > 0 and spec.odd_rank > 1)


def filtration_matches_eigenspace_sums(model: LieModel):
    """Level p must equal the sum of eigenspaces of degree p, p+2, p+4, ...

    Returns None, or the first failing level index p.
    """
    levels = filtration(model)
    eigen = grading_eigenspaces(model)
    top_level = len(levels) - 2
    for p in range(-1, top_level + 1):
        expected = Subspace.from_basis_indices(
            model,
            [
                i
                for i, d in enumerate(model.degrees)
                if d >= p and (d - p) % 2 == 0
            ],
        )
        # the expected space is assembled from the honest eigenspaces too
        acc = Subspace.zero(model)
        for m, space in eigen.items():
            if m >= p and (m - p) % 2 == 0:
                acc = acc.sum(space)
        if acc != expected:
            raise ConsistencyError("eigenspace sum disagrees with degree labels")
        if filtration_level(levels, p) != expected:
            return p
    return None


def graded_quotient(model: LieModel) -> LieModel:
    """Associated graded model of the filtration, with a verified isomorphism.

    Quotient basis: the canonical degree-m basis fields, taken as coset
    representatives of level m modulo level m+2.  The quotient bracket is
    the full bracket reduced modulo the higher level; the identity map on
    representatives is verified to intertwine the structure constants
    degree by degree.
    """
    cached = model._cache.get("graded_quotient")
    if cached is not None:
        return cached
    spec = model.spec
    if not prop_filtration_hypothesis(spec):
        raise UnsupportedModelError(
            "graded quotient needs odd rank > 2, or a positive-dimensional "
            "base with odd rank > 1: below that the filtration carries no "
            "information and the construction is skipped"
        )
    if spec.base_dim > 0:
        raise UnsupportedModelError(
            "graded quotient is restricted to pure-odd models: jet "
            "truncation breaks the identity between filtration levels and "
            "eigenspace sums (constant-coefficient fields are missing)"
        )
    bad = filtration_matches_eigenspace_sums(model)
    if bad is not None:
        raise ConsistencyError(f"filtration level {bad} mismatch at pure-odd scale")

    levels = filtration(model)
    # representatives: canonical basis vectors, degree by degree
    for m in sorted(set(model.degrees)):
        reps = model.degree_indices(m)
        level_m = filtration_level(levels, m)
        level_m2 = filtration_level(levels, m + 2)
        rep_space = Subspace.from_basis_indices(model, reps)
        if not level_m.contains(rep_space):
            raise ConsistencyError(f"degree-{m} representatives leave level {m}")
        if rep_space.sum(level_m2).dim != level_m.dim or len(reps) != (
            level_m.dim - level_m2.dim
        ):
            raise ConsistencyError(
                f"degree-{m} representatives do not complement level {m + 2}"
            )

    structure = {}
    for (i, j), entry in model.structure.items():
        target = model.degrees[i] + model.degrees[j]
        head = {k: c for k, c in entry.items() if model.degrees[k] == target}
        tail = [ZERO] * model.dim
        for k, c in entry.items():
            if model.degrees[k] != target:
                tail[k] = c
        if any(tail) and not filtration_level(levels, target + 2).contains_vector(
            tail
        ):
            raise ConsistencyError(
                f"bracket tail of pair ({i}, {j}) leaves level {target + 2}"
            )
        if head:
            structure[(i, j)] = head

    quotient = LieModel(
        spec, model.entries, model.basis, model.degrees, model.parities, structure
    )
    quotient.parent = model
    quotient.iso_to_parent = [
        [ONE if i == j else ZERO for j in range(model.dim)]
        for i in range(model.dim)
    ]
    # degreewise match of structure constants under the representative map
    if quotient.structure != model.structure:
        raise ConsistencyError(
            "graded quotient structure disagrees with the model degreewise"
        )
    model._cache["graded_quotient"] = quotient
    return quotient
