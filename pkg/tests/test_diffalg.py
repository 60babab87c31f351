import pytest

from tangentalg.diffalg import (
    PresentedAlgebra,
    PresentedModule,
    analytic_spread,
    edim_criterion,
    fitting_ideal,
    ft_check,
    generic_rank,
    jacobian,
    mu_mod_cube,
    omega_mod_torsion,
    omega_presentation,
    rees_algebra,
    spread_of_quadric_part,
    tangent_algebra,
    torsion_witness,
)
from tangentalg.idealops import Ideal, membership
from tangentalg.polycore import PolyMatrix, PolyRing, build_matrix, minors


def cusp(char=32003):
    R = PolyRing(["x", "y"], char)
    return PresentedAlgebra.quotient(R, ["y^2 - x^3"])


def fermat(d=5, n=5):
    R = PolyRing([f"x{i}" for i in range(1, n + 1)])
    return PresentedAlgebra.quotient(R, [" + ".join(f"x{i}^{d}" for i in range(1, n + 1))])


def veronese():
    R = PolyRing([f"x{i}" for i in range(1, 7)])
    return PresentedAlgebra.quotient(R, minors(build_matrix("symmetric", R, 3), 2))


def catalecticant(r):
    R = PolyRing([f"x{i}" for i in range(1, r + 5)])
    return PresentedAlgebra.quotient(R, minors(build_matrix("catalecticant", R, r), 2))


def free_module(ring, rank):
    A = PresentedAlgebra.quotient(ring)
    return PresentedModule(A, PolyMatrix.zeros(ring, rank, 0), rank)


def test_jacobian():
    A = cusp()
    J = jacobian(A.ideal)
    assert J.shape == (2, 1)
    assert J[0, 0] == A.ring("-3*x^2") and J[1, 0] == A.ring("2*y")
    F = fermat()
    JF = jacobian(F.ideal)
    assert [JF[i, 0] for i in range(5)] == [F.ring(f"5*x{i}^4") for i in range(1, 6)]
    V = veronese()
    JV = jacobian(V.ideal)
    assert JV.shape == (6, 6)
    assert all(e.total_degree() == 1 for row in JV.rows for e in row if e.terms)


def test_omega_presentation():
    R = PolyRing(["x"])
    E = omega_presentation(PresentedAlgebra.quotient(R))
    assert (E.ngens, E.nrels, E.rank) == (1, 0, 1)
    E = omega_presentation(cusp())
    assert (E.ngens, E.nrels, E.rank) == (2, 1, 1)
    E = omega_presentation(veronese())
    assert (E.ngens, E.nrels, E.rank) == (6, 6, 3)
    assert generic_rank(E) == 3


def test_tangent_algebra():
    R = PolyRing(["x"])
    S = tangent_algebra(PresentedAlgebra.quotient(R))
    assert S.ring.nvars == 2 and S.ideal.is_zero()
    S = tangent_algebra(cusp())
    assert S.ideal == Ideal(S.ring, ["y^2 - x^3", "-3*x^2*T1 + 2*y*T2"])


def test_torsion_witness():
    A = cusp()
    assert torsion_witness(A) == A.ring("2*y")
    F = fermat()
    assert torsion_witness(F) == F.ring("5*x1^4")
    V = veronese()
    g = torsion_witness(V)
    assert g.total_degree() == 3 and not membership(g, V.ideal)


def test_rees_smooth_circle_is_linear_type():
    R = PolyRing(["x", "y"], 32003)
    _, rep = rees_algebra(PresentedAlgebra.quotient(R, ["x^2 + y^2 - 1"]))
    assert rep.linear_type


def test_rees_cusp_torsion():
    _, rep = rees_algebra(cusp())
    assert not rep.linear_type
    h = rep.J.ring("2*x*T2 - 3*y*T1")
    assert membership(h, rep.J_sat) and not membership(h, rep.J)
    # the defining property of torsion: the witness times h lies in J
    assert membership(rep.witness * h, rep.J)


def test_rees_catalecticant_4_is_linear_type():
    _, rep = rees_algebra(catalecticant(4))
    assert rep.linear_type


def test_fitting_ideals_of_free_module():
    R = PolyRing(["x", "y"])
    E = free_module(R, 1)
    assert fitting_ideal(E, 0).is_zero()
    assert fitting_ideal(E, 1).is_unit()
    for t in range(3):
        assert ft_check(E, t).verdict


def test_ft_cusp_and_fermat():
    rep = ft_check(omega_presentation(cusp()), 1)
    assert [(r.index, r.height, r.bound) for r in rep.records] == [(1, 1, 2)]
    assert not rep.verdict
    rep = ft_check(omega_presentation(fermat()), 2)
    fitt4 = next(r for r in rep.records if r.index == 4)
    assert fitt4.height == 4 and fitt4.bound == 3
    assert rep.verdict


def test_ft_monotone_on_cusp():
    E = omega_presentation(cusp())
    verdicts = [ft_check(E, t).verdict for t in range(3)]
    assert verdicts == [True, False, False]


def test_edim_criterion():
    R = PolyRing(["x", "y"])
    regular = PresentedAlgebra.quotient(R)
    assert all(edim_criterion(regular, t) for t in range(3))
    assert not edim_criterion(cusp(), 1)
    assert edim_criterion(fermat(), 2)


def test_analytic_spread():
    R = PolyRing(["x", "y", "z"])
    assert analytic_spread(free_module(R, 3)) == 3
    assert analytic_spread(Ideal(R, ["x^2 + y*z"])) == 1
    assert analytic_spread(Ideal(R, ["x^2", "y^2"])) == 2
    # maximal ideal of k[x,y,z]: fibre is a polynomial ring in 3 variables
    assert analytic_spread(Ideal(R, ["x", "y", "z"])) == 3


def test_spread_of_quadric_part():
    R = PolyRing(["x", "y", "z"])
    rep = spread_of_quadric_part(Ideal(R, ["x^2", "y^2"]))
    assert rep.spread == 2 and rep.twice_height == 4 and not rep.equal
    assert rep.cross_check_agrees
    rep = spread_of_quadric_part(Ideal(R, ["x^3", "y^3"]))
    assert rep.spread == 0


def test_mu_mod_cube():
    assert mu_mod_cube(veronese().ideal) == 6
    R = PolyRing(["x", "y"])
    assert mu_mod_cube(Ideal(R, ["x^2", "x*y"])) == 2
    # the quadratic part of y^2 - x^3 is y^2, so one quadric survives mod n^3
    assert mu_mod_cube(cusp().ideal) == 1
    assert mu_mod_cube(Ideal(R, ["x^3 + y^3"])) == 0
    with pytest.raises(ValueError):
        mu_mod_cube(Ideal(R, ["x + y^2"]))


def test_omega_mod_torsion():
    R = PolyRing(["x"])
    smooth = PresentedAlgebra.quotient(R)
    assert omega_mod_torsion(smooth).matrix == omega_presentation(smooth).matrix

    A = cusp()
    E = omega_presentation(A)
    Q = omega_mod_torsion(A)
    assert Q.nrels > E.nrels
    assert [Q.matrix[i, 0] for i in range(2)] == [E.matrix[i, 0] for i in range(2)]
    # the added column is proportional to (-3y, 2x) since the torsion element is 2xT2 - 3yT1
    target = [A.ring("-3*y"), A.ring("2*x")]
    extra = [[Q.matrix[i, j] for i in range(2)] for j in range(E.nrels, Q.nrels)]
    assert any(
        any(c.terms for c in col) and col[0] * target[1] == col[1] * target[0]
        for col in extra
    )

    C = catalecticant(4)
    assert omega_mod_torsion(C).matrix == omega_presentation(C).matrix
