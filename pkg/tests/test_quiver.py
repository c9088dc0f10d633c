from fractions import Fraction

import numpy as np
import pytest

from qcluster.quiver import (
    NoCompatibleLambda,
    ParseError,
    Quiver,
    QuiverError,
    euler_form,
    euler_matrix,
    lambda_form,
    lambda_solve,
    load_quiver,
    parse_quiver,
    preset,
    star_left,
    star_right,
)


def test_euler_matrices(a2, kron):
    assert np.array_equal(euler_matrix(a2), [[1, -1], [0, 1]])
    assert np.array_equal(euler_matrix(kron), [[1, -2], [0, 1]])
    assert np.array_equal(euler_matrix(Quiver(3, ())), np.eye(3))


def test_lambda_solve(a2, kron):
    d = lambda_solve(a2, 1)
    assert d.Lambda == [[0, 1], [-1, 0]]
    assert np.array_equal(d.lambda2 @ d.B, 2 * np.eye(2))
    k = lambda_solve(kron, 1)
    assert k.Lambda == [[0, Fraction(1, 2)], [Fraction(-1, 2), 0]]
    assert np.array_equal(lambda_solve(a2, -1).lambda2, -d.lambda2)


def test_lambda_fails_for_odd_rank():
    with pytest.raises(NoCompatibleLambda) as info:
        lambda_solve(preset("a3"))
    assert "2" in str(info.value)


def test_forms(a2):
    E = a2.euler
    assert euler_form(E, (1, 0), (0, 1)) == -1
    assert euler_form(np.eye(3, dtype=np.int64), (1, 2, 3), (1, 2, 3)) == 14
    lam2 = lambda_solve(a2).lambda2
    assert lambda_form(lam2, (1, -1), (0, 1)) == 1
    assert list(star_right(E, (0, 1))) == [0, 1]
    assert list(star_left(E, (0, 1))) == [-1, 1]
    assert list(star_right(E, (1, 1))) == [1, 0]
    assert list(star_right(E, (0, 0))) == [0, 0]


def test_coxeter_and_skew(a4):
    E = a4.euler
    assert np.array_equal(a4.skew, E - E.T)
    # Φ sends dim P_i to -dim I_i
    P = np.linalg.inv(E.T).round().astype(np.int64)
    I = np.linalg.inv(E).round().astype(np.int64)
    for i in range(4):
        assert np.array_equal(a4.coxeter @ P[:, i], -I[:, i])


def test_topological_order():
    q = Quiver(3, ((2, 0), (0, 1)))
    order = q.topological_order
    assert order.index(2) < order.index(0) < order.index(1)
    with pytest.raises(QuiverError):
        Quiver(2, ((0, 1), (1, 0)))


def test_parse_quiver_roundtrip(tmp_path):
    q = parse_quiver("vertices 2  # kronecker\narrow 1 2\n\narrow 1 2\n")
    assert q.n == 2 and q.arrows == ((0, 1), (0, 1))
    f = tmp_path / "k.q"
    f.write_text("vertices 2\narrow 1 2\narrow 1 2\n")
    assert load_quiver(str(f)).arrows == preset("kronecker").arrows


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("vertices 2\narrow 1 3\n", 2, 1),
        ("vertices 2\n  arrows 1 2\n", 2, 3),
        ("arrow 1 2\n", 1, 1),
        ("", 1, 1),
        ("vertices x\n", 1, 1),
    ],
)
def test_parse_errors_have_positions(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_quiver(text)
    assert (info.value.line, info.value.col) == (line, col)
