import math
from fractions import Fraction

import pytest

import conefort


def test_dimension_formulas():
    assert conefort.u1_dimension("siegel", 2, 2) == 3
    assert conefort.u1_dimension("universal", 1, 1) == 3
    assert conefort.base_dimension("kuga", 2) == 5
    for n in range(4):
        for r in range(n + 1):
            assert conefort.siegel_u1_dimension_by_rank(n, r) == r * (r + 1) // 2


def test_bounds_and_errors():
    assert conefort.ed_lower_bound("siegel", 2, 2, 3, 2, 2)[:2] == (3, True)
    assert conefort.ed_lower_bound("siegel", 2, 2, 3, 3, 2)[:2] == (0, False)
    assert conefort.torus_cover_ed([6, 10], 2) == (2, True)
    assert conefort.torus_cover_ed([6, 10], 5) == (1, False)
    with pytest.raises(conefort.InvalidLevel):
        conefort.ed_lower_bound("universal", 1, 1, 5, 2, 2)
    with pytest.raises(conefort.NotPrime):
        conefort.torus_cover_ed([4], 4)
    with pytest.raises(conefort.Error):
        conefort.u1_dimension("torus_r", 1, 1)
    rows = conefort.bound_table_tsv("kuga", 1, 3, 5, 5).splitlines()
    assert rows[0].split("\t")[-1] == "incompressible"
    assert rows[-1].endswith("\ttrue")


def test_cones():
    quadrant = {"ambient_rank": 2, "rays": [[1, 0], [0, 1]]}
    dual = conefort.cone_dual(quadrant)
    assert dual["rays"] == [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    assert len(conefort.cone_faces({"ambient_rank": 2, "rays": [[1, 1]]})) == 2
    assert conefort.cone_is_smooth({"ambient_rank": 2, "rays": [[1, 2], [1, 3]]})
    assert not conefort.cone_is_smooth({"ambient_rank": 2, "rays": [[1, 0], [1, 2]]})
    with pytest.raises(conefort.DimensionMismatch):
        conefort.cone_dual({"ambient_rank": 3, "rays": [[1, 0]]})


def test_quotient_and_fan():
    assert conefort.quotient_invariant_factors([[1, 0], [0, 1]], [[2, 0], [0, 3]]) == [6]
    fan = {"lattice_rank": 1, "rays": [[-1]], "cones": [[], [0]], "symmetry_generators": [], "support": "full"}
    assert conefort.fan_is_valid(fan)


def test_gl2_chart():
    z = conefort.twisted_coordinate(0.0, 3 * math.log(2.0))
    assert abs(abs(conefort.gl2_chart(3, z)) - 0.5) < 1e-12


def test_verifiers():
    assert conefort.verify("gl2", d=4, samples=100, seed=3)["pass"]
    assert conefort.verify("kuga", d=3, window=2, samples=20, seed=3)["pass"]
    assert conefort.verify("polydisc", radius=0.5, samples=200, seed=3)["pass"]
    assert not conefort.verify("polydisc", radius=1.5, samples=200, seed=3)["pass"]
    reports = conefort.verify("fundamental", seed=2, count=6, sequences=100)
    assert len(reports) == 6 and all(r["pass"] for r in reports)
