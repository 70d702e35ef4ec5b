"""Lattice-sandwich level computations and congruence membership tests.

Given commensurable full lattices L and L' in one form space, the sandwich
N1 L' <= N L <= L <= N2^-1 L' yields the level N' = N1 N2 at which the
principal congruence isometries of (L', N') land inside those of (L, N).
The multipliers are minimal, read off the denominators of the exact
change-of-basis matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import AmbientMismatch, NotAnIsometry
from .exact import Matrix, QuadFieldElement
from .forms import FormSpace, preserves_form


@dataclass(frozen=True)
class FullLattice:
    """A full-rank lattice in a form space, given by rational basis rows."""

    space: FormSpace
    basis: Matrix

    def __post_init__(self):
        basis = self.space.coerce_matrix(self.basis)
        object.__setattr__(self, "basis", basis)
        if basis.nrows != self.space.dim:
            raise ValueError("a full lattice needs dim-many basis rows")
        if basis.det() == 0:
            raise ValueError("lattice basis is singular")


def _scalar_denominator(x) -> int:
    if isinstance(x, QuadFieldElement):
        return x.a.denominator * x.b.denominator // gcd(
            x.a.denominator, x.b.denominator
        )
    return Fraction(x).denominator


def _integrality_denominator(m: Matrix) -> int:
    out = 1
    for x in m.entries():
        d = _scalar_denominator(x)
        out = out * d // gcd(out, d)
    return out


def minimal_multiplier(inner: Matrix, outer: Matrix) -> int:
    """Least k >= 1 with k * rowlattice(inner) inside rowlattice(outer)."""
    change = inner * outer.inverse()
    return _integrality_denominator(change)


def lattice_contains(outer: FullLattice, inner: FullLattice) -> bool:
    return minimal_multiplier(inner.basis, outer.basis) == 1


def containment_level(
    lat: FullLattice, lat_prime: FullLattice, n: int
) -> tuple[int, int, int]:
    """Minimal (N1, N2) with N1 L' <= N L and N2 L <= L', and N' = N1 N2."""
    if lat.space != lat_prime.space:
        raise AmbientMismatch("lattices live in different form spaces")
    if n < 1:
        raise ValueError("the level N must be a positive integer")
    scaled = lat.basis.map_entries(lambda x: x * n)
    n1 = minimal_multiplier(lat_prime.basis, scaled)
    n2 = minimal_multiplier(lat.basis, lat_prime.basis)
    return n1, n2, n1 * n2


def congruence_membership(gamma: Matrix, lat: FullLattice, n: int) -> bool:
    """Whether gamma fixes the lattice and is the identity modulo n on it.

    gamma acts on column vectors and must preserve the ambient form;
    non-isometries are rejected with an error rather than a False.
    """
    space = lat.space
    if gamma.shape != (space.dim, space.dim):
        raise NotAnIsometry(f"matrix of shape {gamma.shape} cannot act")
    gamma = space.coerce_matrix(gamma.transpose()).transpose()
    if not preserves_form(space, gamma):
        raise NotAnIsometry("matrix does not preserve the form")
    if n < 1:
        raise ValueError("the level N must be a positive integer")
    b_inv = lat.basis.inverse()
    action = lat.basis * gamma.transpose() * b_inv
    if _integrality_denominator(action) != 1:
        return False
    if _integrality_denominator(action.inverse()) != 1:
        return False
    difference = lat.basis * (gamma - Matrix.identity(space.dim)).transpose() * b_inv
    scaled = difference.map_entries(lambda x: x / n)
    return _integrality_denominator(scaled) == 1
