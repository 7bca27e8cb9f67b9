"""Smoke tests for the ppgate python module (run with PYTHONPATH pointing at the build)."""

import math

import ppgate


def test_version():
    assert isinstance(ppgate.version(), str) and ppgate.version()


def test_geometry():
    geo = ppgate.GateGeometry.reference(26.0)
    assert math.isclose(geo.R(), 26.0)
    assert math.isclose(geo.l_hat(), 4 * math.pi)
    assert math.isclose(geo.l_over_r(), 0.2)


def test_zero_strength_identity():
    geo = ppgate.GateGeometry.reference()
    spec = ppgate.InteractionSpec(kind=ppgate.PotentialKind.dipole, g=0.0)
    r = ppgate.fidelity_phase(geo, spec)
    assert abs(r.F - 1.0) < 1e-10
    assert abs(r.phi) < 1e-10


def test_phase_far_field():
    geo = ppgate.GateGeometry.reference()
    g = 0.3
    mid = ppgate.accumulated_phase_dipole(geo.l, 0.8, geo, g)
    simp = ppgate.simplified_phase(0.8, geo, g)
    assert abs(mid - simp) / simp < 1e-2


def test_small_sweep():
    geo = ppgate.GateGeometry.reference()
    spec = ppgate.InteractionSpec(kind=ppgate.PotentialKind.dipole)
    rows = ppgate.sweep_strength(geo, spec, [0.0, 0.1, 0.2], tol=1e-9)
    assert len(rows) == 3
    assert abs(rows[0].F - 1.0) < 1e-9
    assert rows[2].F < rows[1].F < rows[0].F


def test_mode_tensor_identity():
    geo = ppgate.GateGeometry.reference()
    spec = ppgate.InteractionSpec(kind=ppgate.PotentialKind.dipole_simplified, g=0.0)
    t = ppgate.mode_mix_tensor(spec, geo, 3)
    assert abs(t.at(0, 0, 0, 0) - 1.0) < 1e-12
    s = ppgate.schmidt_spectrum(t)
    assert abs(s.entropy) < 1e-10


def test_errors_map_to_python():
    geo = ppgate.GateGeometry.reference()
    spec = ppgate.InteractionSpec(kind=ppgate.PotentialKind.dipole, g=0.1)
    try:
        ppgate.mode_mix_tensor(spec, geo, 3)  # full dipole kind is rejected
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for fn in tests:
        fn()
        print(f"ok {fn.__name__}")
    print(f"{len(tests)} python smoke tests passed")


if __name__ == "__main__":
    main()
