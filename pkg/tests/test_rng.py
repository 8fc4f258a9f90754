import numpy as np
import pytest

from rng import SplitMix64, random_complex, random_element, random_imaginary, random_perp, random_unit
from errors import PreconditionError


def test_splitmix_reference_outputs():
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in range(5)] == [
        6457827717110365317,
        3203168211198807973,
        9817491932198370423,
        4593380528125082431,
        16408922859458223821,
    ]


def test_uniform_uses_top_53_bits():
    rng, raw = SplitMix64(1234567), SplitMix64(1234567)
    for _ in range(5):
        u = rng.uniform()
        assert 0.0 <= u < 1.0
        assert u == (raw.next_u64() >> 11) / 2.0 ** 53


def test_same_seed_same_stream():
    a, b = SplitMix64(42), SplitMix64(42)
    assert np.array_equal(a.normals(9), b.normals(9))
    assert SplitMix64(43).normal() != SplitMix64(42).normal()


def test_normals_look_standard():
    values = SplitMix64(5).normals(4000)
    assert abs(values.mean()) < 0.1
    assert abs(values.std() - 1.0) < 0.1


def test_below_and_angle_ranges():
    rng = SplitMix64(11)
    assert all(0 <= rng.below(7) < 7 for _ in range(100))
    assert all(0.0 <= rng.angle() < np.pi / 2 for _ in range(100))


def test_element_helpers():
    rng = SplitMix64(3)
    assert random_element(rng, 4).level == 4
    assert np.linalg.norm(random_unit(rng, 5).coeffs) == pytest.approx(1.0)
    assert random_imaginary(rng, 3).coeffs[0] == 0.0
    p = random_perp(rng, 4, unit=True)
    assert p.coeffs[0] == 0.0 and p.coeffs[8] == 0.0
    assert np.linalg.norm(p.coeffs) == pytest.approx(1.0)
    assert random_complex(rng, unit=True).norm() == pytest.approx(1.0)
    with pytest.raises(PreconditionError):
        random_perp(rng, 1)
