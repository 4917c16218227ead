import math

import numpy as np
import pytest

import dirac_osc as d


def test_clifford():
    for dim in (1, 2, 3):
        gens = d.dirac_representation(dim)
        assert len(gens) == dim + 1
        for j, a in enumerate(gens):
            for k, b in enumerate(gens):
                want = 2 * np.eye(4) if j == k else np.zeros((4, 4))
                assert np.array_equal(a @ b + b @ a, want)


def test_registry_matrices():
    reg = d.Registry(1, n_max=20)
    assert reg.side == 4 * 21
    assert "b-" in reg
    bm = reg.matrix("b-")
    bp = reg.matrix("b+")
    assert abs(bm.conj().T - bp).max() == 0
    assert reg.degree("b-") == "10"
    assert reg.degree("H") is None


def test_residuals():
    reg = d.Registry(1)
    r = d.residual(reg, "(comm (* H H) b-)", "(* -2 m omega b-)")
    assert r["pass"] and r["residual"] < 1e-10
    r = d.residual(reg, "(acomm b- b+)", "Id")
    assert not r["holds"]


def test_algebra_and_printed_forms():
    reg = d.Registry(1)
    assert d.verify_algebra(reg, "pso(3|2)")["pass"]
    assert "z2cubed" in d.algebra_names()
    doc = d.spec("pso(3|2)")
    assert len(doc["generators"]) == 12
    assert d.verify_spec(reg, doc)["pass"]


def test_witness_sign():
    reg = d.Registry(2)
    printed = d.residual(reg, "(acomm s-1 s+2)", "(* -2 betaS0)")
    fixed = d.residual(reg, "(acomm s-1 s+2)", "(* 2 i betaS0)")
    assert printed["residual"] > 1
    assert fixed["residual"] < 1e-12


def test_spectra():
    e = d.analytic_spectrum_1d(2.0, 0.5, 3)
    assert any(abs(x - math.sqrt(10)) < 1e-12 for x in e)
    assert d.theorem_energy(1, 1, 1.0, 1.0) == pytest.approx(math.sqrt(7))
    rep = d.spectrum_report(1, n_max=60)
    assert rep["pass"] and rep["trusted_count"] >= 10


def test_parastat_and_fock():
    assert d.parastat_audit(d.Registry(1), 1)["pass"]
    reg3 = d.Registry(3)
    reps = d.fock_basis(reg3, 3)
    assert [r["name"] for r in reps] == ["fock basis", "fock actions", "injectivity"]
    assert all(r["pass"] for r in reps)


def test_config_errors():
    with pytest.raises(ValueError):
        d.Registry(4)
    with pytest.raises(d.ConfigError):
        d.verify_algebra(d.Registry(1), "nosuch")
