"""JSON round trips and canonical emission."""

import random
from fractions import Fraction

import pytest

from cuspchain import serialize
from cuspchain.chains import build_chain_orthogonal, build_chain_symplectic, build_chain_unitary
from cuspchain.errors import InputFormatError
from cuspchain.exact import QuadFieldElement
from cuspchain.forms import (
    line,
    quadratic_2u_perp_diagonal,
    standard_hermitian_hyperbolic,
    standard_symplectic,
    unit_vector,
)

from support import (
    random_orthogonal_isometry,
    standard_isotropic,
    transform_subspace,
)


def test_fraction_strings():
    assert serialize.fraction_to_json(Fraction(3)) == "3"
    assert serialize.fraction_to_json(Fraction(-4, 6)) == "-2/3"
    assert serialize.scalar_from_json("-2/3") == Fraction(-2, 3)
    assert serialize.scalar_from_json(7) == Fraction(7)


def test_quad_field_round_trip():
    x = QuadFieldElement(Fraction(1, 2), Fraction(-3), 7)
    encoded = serialize.scalar_to_json(x)
    assert encoded == {"a": "1/2", "b": "-3", "D": 7}
    assert serialize.scalar_from_json(encoded) == x


def test_bad_scalars_rejected():
    with pytest.raises(InputFormatError):
        serialize.scalar_from_json("1/0")
    with pytest.raises(InputFormatError):
        serialize.scalar_from_json(None)
    with pytest.raises(InputFormatError):
        serialize.scalar_from_json({"a": "1"})


def test_form_space_round_trip():
    for space in (
        quadratic_2u_perp_diagonal([-2]),
        standard_symplectic(2),
        standard_hermitian_hyperbolic(3, 2),
    ):
        encoded = serialize.form_space_to_json(space)
        assert serialize.form_space_from_json(encoded) == space


def test_subspace_round_trip():
    space = standard_symplectic(2)
    s = line(space, unit_vector(space, 0))
    assert serialize.subspace_from_json(serialize.subspace_to_json(s), space) == s


def certificate_samples():
    rng = random.Random(7)
    space = standard_symplectic(2)
    yield build_chain_symplectic(
        space, standard_isotropic(space, 2, "e"), standard_isotropic(space, 2, "f")
    )
    yield build_chain_symplectic(
        space,
        line(space, unit_vector(space, 0)),
        line(space, unit_vector(space, 2)),
    )
    orth = quadratic_2u_perp_diagonal([-2])
    base = line(orth, unit_vector(orth, 0))
    moved = transform_subspace(
        orth, random_orthogonal_isometry(orth, rng, 3), base
    )
    yield build_chain_orthogonal(orth, base, moved)
    herm = standard_hermitian_hyperbolic(1, 2)
    yield build_chain_unitary(
        herm,
        standard_isotropic(herm, 2, "e"),
        standard_isotropic(herm, 2, "f"),
    )


def test_certificate_round_trip():
    for cert in certificate_samples():
        encoded = serialize.certificate_to_json(cert)
        decoded = serialize.certificate_from_json(encoded)
        assert decoded == cert
        assert serialize.certificate_to_json(decoded) == encoded


def test_certificate_canonical_bytes():
    cert = next(certificate_samples())
    a = serialize.dumps_canonical(serialize.certificate_to_json(cert))
    b = serialize.dumps_canonical(serialize.certificate_to_json(cert))
    assert a == b
    assert a.endswith("\n")


def test_certificate_format_guard():
    cert = next(certificate_samples())
    encoded = serialize.certificate_to_json(cert)
    encoded["format"] = 2
    with pytest.raises(InputFormatError):
        serialize.certificate_from_json(encoded)


def test_report_round_trip():
    from cuspchain.chains import verify_certificate

    report = verify_certificate(next(certificate_samples()))
    encoded = serialize.report_to_json(report)
    assert serialize.report_from_json(encoded) == report
    assert encoded["ok"] is True
