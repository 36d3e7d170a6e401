import numpy as np
import pytest

from hugoniot.reconstruction import (ReconstructionConfig, minmod,
                                     reconstruct_faces, vanleer)


def test_minmod_examples():
    assert minmod(1.0, 2.0) == 1.0
    assert minmod(-1.0, 2.0) == 0.0
    assert minmod(-3.0, -2.0) == -2.0
    assert minmod(0.0, 5.0) == 0.0


def test_minmod_vectorized():
    a = np.array([1.0, -1.0, -3.0])
    b = np.array([2.0, 2.0, -2.0])
    assert np.array_equal(minmod(a, b), [1.0, 0.0, -2.0])


def test_vanleer_basic():
    assert vanleer(1.0, 1.0) == 1.0
    assert vanleer(-1.0, 2.0) == 0.0
    assert vanleer(1.0, 3.0) == pytest.approx(1.5)


def test_config_validation():
    with pytest.raises(ValueError):
        ReconstructionConfig(order=3)
    with pytest.raises(ValueError):
        ReconstructionConfig(limiter="superbee")
    with pytest.raises(ValueError):
        ReconstructionConfig(variable_set="conserved")


def test_reconstruct_uniform_stencil():
    cfg = ReconstructionConfig(order=2)
    s = np.array([0.3, 1.1, 0.0, 2.0])
    lo, hi = reconstruct_faces((s, s, s), cfg)
    assert np.array_equal(lo, s) and np.array_equal(hi, s)


def test_reconstruct_linear_density():
    cfg = ReconstructionConfig(order=2)
    lo, hi = reconstruct_faces((1.0, 2.0, 3.0), cfg)
    assert lo == pytest.approx(1.5) and hi == pytest.approx(2.5)


def test_reconstruct_extremum_flat():
    cfg = ReconstructionConfig(order=2)
    lo, hi = reconstruct_faces((1.0, 2.0, 1.0), cfg)
    assert lo == 2.0 and hi == 2.0


def test_order1_bit_identical():
    cfg = ReconstructionConfig(order=1)
    s0 = np.array([1.0, -0.5, 0.0, 2.0])
    s1 = np.array([1.7, 0.5, 0.1, 1.0])
    s2 = np.array([0.3, 1.5, -0.2, 0.5])
    lo, hi = reconstruct_faces((s0, s1, s2), cfg)
    assert np.array_equal(lo, s1) and np.array_equal(hi, s1)


def test_face_values_stay_in_neighbor_hull():
    # Reconstructed faces never leave [min, max] of the adjacent cells.
    rng = np.random.default_rng(41)
    for limiter in ("minmod", "vanleer"):
        cfg = ReconstructionConfig(order=2, limiter=limiter)
        for _ in range(2000):
            w = rng.uniform(0.05, 4.0, 3)
            lo, hi = reconstruct_faces(tuple(w), cfg)
            assert min(w[0], w[1]) - 1e-14 <= lo <= max(w[0], w[1]) + 1e-14
            assert min(w[1], w[2]) - 1e-14 <= hi <= max(w[1], w[2]) + 1e-14
