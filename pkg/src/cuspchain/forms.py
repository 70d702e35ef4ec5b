"""Form spaces, subspaces, signatures, complements and subquotients.

A :class:`FormSpace` carries a nondegenerate symmetric, alternating, or
hermitian Gram matrix.  Pairings are linear in the first argument and
conjugate-linear in the second, matching the hermitian trace form used by
the matrix-algebra model; for the rational kinds conjugation is trivial.
Row vectors pair as ``u * G * conj(v)^T`` and isometries act on column
vectors, so a matrix M preserves the form iff ``M^T * G * conj(M) == G``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    AlternatingHasNoSignature,
    DimensionMismatch,
    FormKindMismatch,
    NotIsotropic,
    NotNested,
)
from .exact import (
    Matrix,
    QuadFieldElement,
    as_fraction,
    conjugate_scalar,
    rref_basis,
)

SYMMETRIC = "symmetric"
ALTERNATING = "alternating"
HERMITIAN = "hermitian"
KINDS = (SYMMETRIC, ALTERNATING, HERMITIAN)


@dataclass(frozen=True)
class FormSpace:
    """A finite-dimensional space over Q or Q(sqrt(-d)) with a fixed form."""

    kind: str
    gram: Matrix
    d: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise FormKindMismatch(f"unknown form kind {self.kind!r}")
        if self.gram.nrows != self.gram.ncols:
            raise ValueError("Gram matrix must be square")
        if self.kind == HERMITIAN:
            if self.d is None:
                raise ValueError("hermitian spaces need the field parameter d")
            object.__setattr__(
                self, "gram", self.gram.map_entries(lambda x: self._coerce(x))
            )
            if self.gram != self.gram.conj_transpose():
                raise ValueError("hermitian Gram matrix must equal its adjoint")
        else:
            if self.d is not None:
                raise ValueError("only hermitian spaces carry a field parameter")
            object.__setattr__(
                self, "gram", self.gram.map_entries(lambda x: self._coerce(x))
            )
            if self.kind == SYMMETRIC and self.gram != self.gram.transpose():
                raise ValueError("symmetric Gram matrix must equal its transpose")
            if self.kind == ALTERNATING:
                if self.gram != -self.gram.transpose():
                    raise ValueError("alternating Gram matrix must be antisymmetric")
                if any(self.gram[i, i] != 0 for i in range(self.dim)):
                    raise ValueError("alternating Gram matrix needs zero diagonal")
        if self.dim and self.gram.det() == 0:
            raise ValueError("degenerate Gram matrix")

    @property
    def dim(self) -> int:
        return self.gram.nrows

    def _coerce(self, x):
        if self.kind == HERMITIAN:
            if isinstance(x, QuadFieldElement):
                if x.d != self.d:
                    raise ValueError(
                        f"entry over d={x.d} in a space over d={self.d}"
                    )
                return x
            return QuadFieldElement(Fraction(x), 0, self.d)
        if isinstance(x, QuadFieldElement):
            raise ValueError("imaginary entry in a rational form space")
        return Fraction(x)

    def zero_scalar(self):
        if self.kind == HERMITIAN:
            return QuadFieldElement(0, 0, self.d)
        return Fraction(0)

    def coerce_vector(self, v: Sequence) -> tuple:
        v = tuple(self._coerce(x) for x in v)
        if len(v) != self.dim:
            raise DimensionMismatch(
                f"vector of length {len(v)} in a space of dimension {self.dim}"
            )
        return v

    def coerce_matrix(self, m: Matrix) -> Matrix:
        if m.ncols != self.dim:
            raise DimensionMismatch(
                f"{m.ncols}-column matrix in a space of dimension {self.dim}"
            )
        return m.map_entries(self._coerce)

    def pair(self, u: Sequence, v: Sequence):
        """Form value (u, v); linear in u, conjugate-linear in v."""
        gu = Matrix([u]) * self.gram
        total = self.zero_scalar()
        for x, y in zip(gu.rows[0], v):
            total = total + x * conjugate_scalar(y)
        return total

    def norm(self, v: Sequence) -> Fraction:
        """(v, v); rational even in the hermitian case."""
        return as_fraction(self.pair(v, v))

    def is_isotropic_vector(self, v: Sequence) -> bool:
        return self.pair(v, v) == 0


@dataclass(frozen=True)
class Signature:
    plus: int
    minus: int
    null: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.plus, self.minus, self.null)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace given by basis rows inside a form space.

    The constructor does not canonicalize: deserialized certificate data is
    stored verbatim so the verifier can report violations instead of
    crashing.  Use :func:`canonical_subspace` to build canonical instances.
    """

    space: FormSpace
    basis: Matrix

    def __post_init__(self):
        object.__setattr__(self, "basis", self.space.coerce_matrix(self.basis))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def is_canonical(self) -> bool:
        return self.basis == rref_basis(self.basis)

    def is_isotropic(self) -> bool:
        return pairing_matrix(self.space, self, self).is_zero()

    def contains_vector(self, v: Sequence) -> bool:
        if self.dim == 0:
            return all(x == 0 for x in v)
        return self.basis.transpose().solve(self.space.coerce_vector(v)) is not None


def canonical_subspace(space: FormSpace, rows: Matrix | Iterable[Iterable]) -> Subspace:
    """Unique representative of the span of the given rows."""
    if not isinstance(rows, Matrix):
        rows = Matrix(rows, ncols=space.dim)
    return Subspace(space, rref_basis(space.coerce_matrix(rows)))


def zero_subspace(space: FormSpace) -> Subspace:
    return Subspace(space, Matrix([], ncols=space.dim))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _same_space(a, b)
    return canonical_subspace(a.space, Matrix.vstack(a.basis, b.basis))


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    _same_space(a, b)
    if a.dim == 0 or b.dim == 0:
        return zero_subspace(a.space)
    stacked = Matrix.vstack(a.basis, -b.basis)
    coeffs = stacked.left_kernel()  # rows (x, y) with x*A == y*B
    rows = Matrix([r[: a.dim] for r in coeffs.rows], a.dim) * a.basis
    return canonical_subspace(a.space, rows)


def subspace_contains(big: Subspace, small: Subspace) -> bool:
    _same_space(big, small)
    if small.dim == 0:
        return True
    stacked = Matrix.vstack(big.basis, small.basis)
    return rref_basis(stacked).nrows == rref_basis(big.basis).nrows


def _same_space(a: Subspace, b: Subspace) -> None:
    if a.space != b.space:
        raise DimensionMismatch("subspaces live in different form spaces")


def pairing_matrix(space: FormSpace, a: Subspace, b: Subspace) -> Matrix:
    """Matrix of form values (a_i, b_j) between the two bases."""
    if a.dim == 0 or b.dim == 0:
        return Matrix([], ncols=b.dim) if a.dim == 0 else Matrix.zero(a.dim, 0)
    return a.basis * space.gram * b.basis.conj_transpose()


def signature_of(space: FormSpace) -> Signature:
    """Inertia counts via exact congruent (conjugate-symmetric) elimination."""
    if space.kind == ALTERNATING:
        raise AlternatingHasNoSignature("alternating forms have no signature")
    n = space.dim
    g = [list(r) for r in space.gram.rows]

    def add_row_col(i, j, c):
        # basis change b_i <- b_i + c * b_j
        cc = conjugate_scalar(c)
        g[i] = [x + c * y for x, y in zip(g[i], g[j])]
        for row in g:
            row[i] = row[i] + row[j] * cc

    def swap(i, j):
        g[i], g[j] = g[j], g[i]
        for row in g:
            row[i], row[j] = row[j], row[i]

    plus = minus = null = 0
    for i in range(n):
        if g[i][i] == 0:
            j = next((k for k in range(i + 1, n) if g[k][k] != 0), None)
            if j is not None:
                swap(i, j)
            else:
                j = next((k for k in range(i + 1, n) if g[i][k] != 0), None)
                if j is None:
                    null += 1
                    continue
                entry = g[i][j]
                if isinstance(entry, QuadFieldElement) and entry.a == 0:
                    # purely imaginary pairing: mix with weight sqrt(-d)
                    add_row_col(i, j, QuadFieldElement(0, 1, entry.d))
                else:
                    add_row_col(i, j, 1)
        pivot = g[i][i]
        for k in range(i + 1, n):
            if g[k][i] != 0:
                add_row_col(k, i, -(g[k][i] / pivot))
        value = as_fraction(pivot)
        if value > 0:
            plus += 1
        elif value < 0:
            minus += 1
        else:  # pragma: no cover - pivot chosen nonzero
            null += 1
    return Signature(plus, minus, null)


def orthogonal_complement(space: FormSpace, s: Subspace) -> Subspace:
    """All vectors pairing to zero with the given subspace."""
    if s.space != space:
        raise DimensionMismatch("subspace belongs to a different space")
    if s.dim == 0:
        return canonical_subspace(space, Matrix.identity(space.dim))
    m = space.gram * s.basis.conj_transpose()  # v * m == 0 cuts the complement
    return canonical_subspace(space, m.transpose().right_kernel())


def pairing_kernels(
    space: FormSpace, a: Subspace, b: Subspace
) -> tuple[Subspace, Subspace]:
    """Kernels of the pairing restricted to a x b, on each side."""
    p = pairing_matrix(space, a, b)
    if a.dim == 0 or b.dim == 0:
        return (
            canonical_subspace(space, a.basis),
            canonical_subspace(space, b.basis),
        )
    ker_a_coeffs = p.transpose().right_kernel()
    ker_b_coeffs = p.right_kernel().conjugate()
    ka = canonical_subspace(space, ker_a_coeffs * a.basis)
    kb = canonical_subspace(space, ker_b_coeffs * b.basis)
    return ka, kb


def is_perfect_pairing(space: FormSpace, a: Subspace, b: Subspace) -> bool:
    if a.dim != b.dim:
        return False
    if a.dim == 0:
        return True
    return pairing_matrix(space, a, b).det() != 0


def restricted_space(space: FormSpace, basis: Matrix) -> FormSpace:
    """Form space induced on the (nondegenerate) span of the given rows."""
    gram = basis * space.gram * basis.conj_transpose()
    return FormSpace(space.kind, gram, space.d)


def coords_in_rows(basis: Matrix, v: Sequence) -> tuple | None:
    """Coefficients x with x * basis == v, or None when v is outside the span."""
    return basis.transpose().solve(tuple(v))


@dataclass(frozen=True)
class SubquotientData:
    """The induced form on I-perp/I together with its coordinate maps.

    ``lift`` rows are coset representatives (quotient coordinates times
    ``lift`` land in I-perp); ``project`` maps ambient rows of I-perp onto
    quotient coordinates, with ``lift * project`` the identity.
    """

    space: FormSpace
    subspace: Subspace
    quotient: FormSpace
    lift: Matrix
    project: Matrix


def subquotient(space: FormSpace, iso: Subspace) -> SubquotientData:
    if iso.space != space:
        raise DimensionMismatch("subspace belongs to a different space")
    if not iso.is_isotropic():
        raise NotIsotropic("subquotient requires an isotropic subspace")
    iso = canonical_subspace(space, iso.basis)
    perp = orthogonal_complement(space, iso)
    # extend the canonical basis of iso to perp, greedily by rref pivots
    chosen: list[tuple] = []
    current = iso.basis
    for row in perp.basis.rows:
        stacked = Matrix.vstack(current, Matrix([row]))
        if rref_basis(stacked).nrows > current.nrows:
            current = stacked
            chosen.append(row)
    lift = Matrix(chosen, ncols=space.dim)
    quotient_gram = lift * space.gram * lift.conj_transpose()
    quotient = FormSpace(space.kind, quotient_gram, space.d)
    full = Matrix.vstack(iso.basis, lift) if iso.dim else lift
    normal = full * full.conj_transpose()
    p_full = full.conj_transpose() * normal.inverse()
    project = Matrix([r[iso.dim :] for r in p_full.rows], lift.nrows)
    return SubquotientData(space, iso, quotient, lift, project)


def push_subspace(data: SubquotientData, s: Subspace) -> Subspace:
    """Image of S with I <= S <= I-perp inside the subquotient."""
    if s.space != data.space:
        raise DimensionMismatch("subspace belongs to a different space")
    if not subspace_contains(canonical_subspace(s.space, s.basis), data.subspace):
        raise NotNested("subspace does not contain the quotiented core")
    if not pairing_matrix(data.space, s, data.subspace).is_zero():
        raise NotNested("subspace is not inside the orthogonal of the core")
    image = canonical_subspace(data.quotient, s.basis * data.project)
    if image.dim != s.dim - data.subspace.dim:  # pragma: no cover - consistency
        raise NotNested("pushed dimension mismatch")
    return image


def preserves_form(space: FormSpace, m: Matrix) -> bool:
    """Whether the column action of m is an isometry of the space."""
    if m.shape != (space.dim, space.dim):
        return False
    m = space.coerce_matrix(m.transpose()).transpose()
    return m.transpose() * space.gram * m.conjugate() == space.gram


# -- standard spaces -------------------------------------------------------


def hyperbolic_plane() -> FormSpace:
    return FormSpace(SYMMETRIC, Matrix([[0, 1], [1, 0]]))


def standard_2u() -> FormSpace:
    """U perp U in the basis (e1, f1, e2, f2)."""
    return FormSpace(
        SYMMETRIC,
        Matrix(
            [
                [0, 1, 0, 0],
                [1, 0, 0, 0],
                [0, 0, 0, 1],
                [0, 0, 1, 0],
            ]
        ),
    )


def quadratic_2u_perp_diagonal(diagonal: Sequence) -> FormSpace:
    """2U perp <d1, ..., dk> in the basis (e1, f1, e2, f2, u1, ..., uk)."""
    n = 4 + len(diagonal)
    rows = [[Fraction(0)] * n for _ in range(n)]
    rows[0][1] = rows[1][0] = Fraction(1)
    rows[2][3] = rows[3][2] = Fraction(1)
    for i, dv in enumerate(diagonal):
        rows[4 + i][4 + i] = Fraction(dv)
    return FormSpace(SYMMETRIC, Matrix(rows))


def standard_symplectic(genus: int) -> FormSpace:
    """Block-diagonal [[0, 1], [-1, 0]] form in the basis (e1, f1, ..., eg, fg)."""
    n = 2 * genus
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(genus):
        rows[2 * i][2 * i + 1] = Fraction(1)
        rows[2 * i + 1][2 * i] = Fraction(-1)
    return FormSpace(ALTERNATING, Matrix(rows))


def standard_hermitian_hyperbolic(d: int, copies: int = 1) -> FormSpace:
    """Hyperbolic hermitian planes [[0, 1], [1, 0]] over Q(sqrt(-d))."""
    n = 2 * copies
    rows = [[0] * n for _ in range(n)]
    for i in range(copies):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = 1
    return FormSpace(HERMITIAN, Matrix(rows), d)


def hermitian_perp_diagonal(d: int, copies: int, diagonal: Sequence) -> FormSpace:
    """Hyperbolic hermitian planes perp a rational diagonal part."""
    n = 2 * copies + len(diagonal)
    rows = [[0] * n for _ in range(n)]
    for i in range(copies):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = 1
    for i, dv in enumerate(diagonal):
        rows[2 * copies + i][2 * copies + i] = Fraction(dv)
    return FormSpace(HERMITIAN, Matrix(rows), d)


def unit_vector(space: FormSpace, index: int) -> tuple:
    v = [space.zero_scalar()] * space.dim
    v[index] = v[index] + 1
    return tuple(v)


def line(space: FormSpace, v: Sequence) -> Subspace:
    return canonical_subspace(space, [space.coerce_vector(v)])
