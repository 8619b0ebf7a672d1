"""Smoke tests for the python module: a few pointwise values, the exact
Riemann oracle and one short end-to-end scenario run."""

import math
import os

import pytest

import lwrfv

SCENARIO_DIR = os.environ.get("LWRFV_SCENARIO_DIR", "scenarios")


@pytest.fixture(scope="module")
def quad():
    return lwrfv.FluxModel.quadratic()


def test_flux_values(quad):
    assert quad(0.5) == pytest.approx(0.25)
    assert lwrfv.eval_flux(quad, 0.8) == pytest.approx(0.16)
    assert lwrfv.shifted_flux(quad, 0.3, 1.0) == pytest.approx(-0.3)
    assert lwrfv.engquist_osher(quad, 0.2, 0.8) == pytest.approx(0.07)
    assert lwrfv.engquist_osher(quad, 0.8, 0.2) == pytest.approx(0.25)
    assert lwrfv.godunov_shifted(quad, 0.0, 0.1, 0.9) == pytest.approx(0.09)
    assert lwrfv.interface_flux(quad, 0.0, 0.1, 0.8, 0.2) == pytest.approx(0.1)


def test_germ(quad):
    g = lwrfv.germ_couple(quad, 0.0, 0.1)
    assert g.rho_hat == pytest.approx(0.5 * (1 + math.sqrt(0.6)))
    assert g.rho_check == pytest.approx(0.5 * (1 - math.sqrt(0.6)))
    assert lwrfv.classify_germ(quad, 0.0, 0.1, g.rho_hat, g.rho_check) == "G1"
    assert lwrfv.classify_germ(quad, 0.0, 0.1, 0.05, 0.05) == "G2"
    assert lwrfv.constraint_admissible(quad, 0.0, 0.1)
    assert not lwrfv.constraint_admissible(quad, 0.0, 0.25)
    assert lwrfv.remainder(quad, 0.0, 0.5, 0.1) == pytest.approx(0.3)
    with pytest.raises(ValueError):
        lwrfv.germ_couple(quad, -0.1, 0.05)


def test_exact_riemann():
    hat = 0.5 * (1 + math.sqrt(0.6))
    check = 0.5 * (1 - math.sqrt(0.6))
    assert lwrfv.exact_riemann(0.0, 0.1, 0.5, 0.5, -1e-9) == pytest.approx(hat)
    assert lwrfv.exact_riemann(0.0, 0.1, 0.5, 0.5, 1e-9) == pytest.approx(check)
    assert lwrfv.exact_riemann(0.0, 0.2, 0.1, 0.1, 0.0) == pytest.approx(0.1)


def test_custom_flux_model():
    custom = lwrfv.FluxModel.custom(
        f=lambda r: r * (1 - r), f_prime=lambda r: 1 - 2 * r,
        rho_bar=0.5, mu=2.0, lipschitz=1.0)
    g = lwrfv.germ_couple(custom, 0.0, 0.1)
    assert g.rho_hat == pytest.approx(0.5 * (1 + math.sqrt(0.6)), abs=1e-9)


def test_run_scenario(tmp_path):
    path = os.path.join(SCENARIO_DIR, "riemann_saturated.scn")
    out = lwrfv.run_scenario(path, out_dir=str(tmp_path / "run"))
    assert out["steps"] == 500
    assert out["max_mass_drift"] < 1e-10
    assert out["diagnostics_failures"] == 0
    assert len(out["rho"]) == out["cells"]
    assert all(0.0 <= v <= 1.0 for v in out["rho"])
    trace = out["last_trace"]
    assert trace["f_int"] == pytest.approx(0.1, abs=1e-6)
    assert trace["germ"] == "G1"
    assert (tmp_path / "run" / "snapshot_000.dat").exists()
    assert (tmp_path / "run" / "interfaces.dat").exists()


def test_scenario_canonicalization():
    text = (
        "[flux]\nkind = quadratic\n[domain]\nx_min = 0\nx_max = 2\n"
        "dx = 0.01\nlambda = 0.4\nhorizon = 1\n"
        "[initial]\npreset = constant\nvalue = 0.5\n[output]\n")
    canon = lwrfv.canonicalize_scenario(text)
    assert lwrfv.canonicalize_scenario(canon) == canon
    with pytest.raises(ValueError):
        lwrfv.canonicalize_scenario("[domain]\nbogus = 1\n")
