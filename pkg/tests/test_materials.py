import pytest

from wrcouple import Material, material_lookup


def test_table_values():
    air = material_lookup("air")
    assert air.lambda_cond == 0.0243
    assert air.rho == 1.293
    assert air.cp == 1005.0
    assert air.alpha == pytest.approx(1299.5, rel=1e-4)

    water = material_lookup("water")
    assert (water.lambda_cond, water.rho, water.cp) == (0.58, 999.7, 4192.1)
    assert water.alpha == pytest.approx(4.1908e6, rel=1e-4)

    steel = material_lookup("steel")
    assert (steel.lambda_cond, steel.rho, steel.cp) == (48.9, 7836.0, 443.0)
    assert steel.alpha == 3471348.0


def test_derived_fields_exact():
    m = Material("m", 2.0, 3.0, 5.0)
    assert m.alpha == 15.0
    assert m.diffusivity == 2.0 / 15.0


def test_lookup_is_case_insensitive():
    assert material_lookup("Steel") is material_lookup("steel")


def test_unknown_material_lists_available():
    with pytest.raises(ValueError, match="air"):
        material_lookup("adamantium")


def test_custom_triple():
    m = material_lookup("1.5,2.0,4.0")
    assert (m.lambda_cond, m.rho, m.cp) == (1.5, 2.0, 4.0)
    assert m.alpha == 8.0


@pytest.mark.parametrize("lam,rho,cp", [(0.0, 1, 1), (1, -1, 1), (1, 1, 0)])
def test_nonpositive_coefficients_rejected(lam, rho, cp):
    with pytest.raises(ValueError):
        Material("bad", lam, rho, cp)
