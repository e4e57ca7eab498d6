"""Renyi entropy, Arimoto conditional entropy, and the order identity."""

import math

import numpy as np
import pytest

from e0kit import extremal, renyi
from e0kit.channels import BinaryChannel, e0_raw
from e0kit.numerics import DomainError
from e0kit.verify import random_channel, random_symmetric_channel

LN2 = math.log(2.0)

# mpmath oracles, 40 digits
H2_09_01 = 0.1984509387238383
COND_HALF_BSC01102 = 0.4862938242432036


def test_renyi_entropy_order_two_reference():
    assert renyi.renyi_entropy(2.0, np.array([0.9, 0.1])) == pytest.approx(
        H2_09_01, abs=1e-12
    )
    # collision entropy is -ln sum p^2 directly
    direct = -math.log(0.81 + 0.01)
    assert renyi.renyi_entropy(2.0, np.array([0.9, 0.1])) == pytest.approx(
        direct, abs=1e-15
    )


def test_renyi_entropy_sqrt_order():
    p = np.array([0.25, 0.75])
    expected = 2.0 * math.log(math.sqrt(0.25) + math.sqrt(0.75))
    assert renyi.renyi_entropy(0.5, p) == pytest.approx(expected, abs=1e-15)


def test_renyi_entropy_uniform_is_ln2():
    for alpha in (0.2, 0.5, 2.0, 7.0):
        got = renyi.renyi_entropy(alpha, np.array([0.5, 0.5]))
        assert got == pytest.approx(LN2, abs=1e-15)


def test_renyi_entropy_ignores_zero_atoms():
    with_zero = renyi.renyi_entropy(0.5, np.array([0.5, 0.5, 0.0]))
    without = renyi.renyi_entropy(0.5, np.array([0.5, 0.5]))
    assert with_zero == without


def test_renyi_entropy_domain():
    p = np.array([0.5, 0.5])
    for alpha in (0.0, 1.0, -2.0):
        with pytest.raises(DomainError):
            renyi.renyi_entropy(alpha, p)
    with pytest.raises(DomainError):
        renyi.renyi_entropy(2.0, np.array([0.7, 0.4]))
    with pytest.raises(DomainError):
        renyi.renyi_entropy(2.0, np.array([0.7, -0.2, 0.5]))


def test_joint_distribution_validation():
    with pytest.raises(ValueError):
        renyi.JointDistribution(np.array([0.5, 0.5]))
    with pytest.raises(ValueError):
        renyi.JointDistribution(np.array([[0.6, -0.1], [0.3, 0.2]]))
    with pytest.raises(ValueError):
        renyi.JointDistribution(np.array([[0.4, 0.4], [0.4, 0.4]]))
    joint = renyi.JointDistribution(np.full((2, 2), 0.25))
    with pytest.raises(ValueError):
        joint.pxy[0, 0] = 1.0


def test_uniform_joint_halves_the_rows():
    ch = extremal.bsc_matrix(0.25)
    joint = renyi.uniform_joint(ch)
    assert np.array_equal(joint.pxy[0], 0.5 * ch.w0)
    assert np.array_equal(joint.pxy[1], 0.5 * ch.w1)


def test_cond_entropy_reference():
    joint = renyi.uniform_joint(extremal.bsc_matrix(0.1102))
    got = renyi.renyi_cond_entropy(0.5, joint)
    assert got == pytest.approx(COND_HALF_BSC01102, abs=1e-12)


def test_cond_entropy_of_independent_pair_is_marginal():
    """With Y independent of X the conditioning changes nothing."""
    px = np.array([0.5, 0.5])
    py = np.array([0.3, 0.2, 0.5])
    joint = renyi.JointDistribution(np.outer(px, py))
    for alpha in (0.5, 2.0, 9.0):
        cond = renyi.renyi_cond_entropy(alpha, joint)
        assert cond == pytest.approx(renyi.renyi_entropy(alpha, px), abs=1e-12)


def test_conditioning_never_exceeds_input_entropy():
    for seed in range(8):
        joint = renyi.uniform_joint(random_channel(seed))
        for alpha in (0.25, 0.5, 0.8, 1.5, 4.0):
            assert renyi.renyi_cond_entropy(alpha, joint) <= LN2 + 1e-12


def test_order_identity_against_gallager_functional():
    """order_mutual_info at alpha = 1/(1+rho) reproduces E0(rho)/rho."""
    worst = 0.0
    for seed in range(12):
        ch = random_channel(seed) if seed % 2 else random_symmetric_channel(seed)
        for rho in (-0.5, 0.5, 1.0, 3.0):
            alpha = 1.0 / (1.0 + rho)
            diff = abs(renyi.order_mutual_info(alpha, ch) - e0_raw(rho, ch) / rho)
            worst = max(worst, diff)
    assert worst <= 1e-12


def test_order_identity_on_extremal_pairs():
    for rho in (-0.5, 0.5, 2.0):
        alpha = 1.0 / (1.0 + rho)
        bec = extremal.bec_matrix(0.4)
        assert renyi.order_mutual_info(alpha, bec) == pytest.approx(
            extremal.e0_bec(rho, 0.4) / rho, abs=1e-12
        )
        bsc = extremal.bsc_matrix(0.2)
        assert renyi.order_mutual_info(alpha, bsc) == pytest.approx(
            extremal.e0_bsc(rho, 0.2) / rho, abs=1e-12
        )


def test_order_mutual_info_domain():
    ch = extremal.bsc_matrix(0.1)
    with pytest.raises(DomainError):
        renyi.order_mutual_info(1.0, ch)
    with pytest.raises(DomainError):
        renyi.order_mutual_info(0.0, ch)


def test_matched_pair_brackets_equivocation():
    """Matching at rho1 pins the conditional entropy of all three channels
    at beta1 = 1/(1+rho1); at any larger rho2 the crossover channel sits
    above the reference and the erasure channel below."""
    ch = BinaryChannel(
        np.array([0.5, 0.3, 0.15, 0.05]), np.array([0.05, 0.15, 0.3, 0.5])
    )
    for rho1 in (0.4, 1.0):
        bec_p, bsc_p = extremal.match_at_rho(ch, rho1)
        bec = renyi.uniform_joint(extremal.bec_matrix(bec_p.eps))
        bsc = renyi.uniform_joint(extremal.bsc_matrix(bsc_p.x))
        ref = renyi.uniform_joint(ch)

        beta1 = 1.0 / (1.0 + rho1)
        h_ref = renyi.renyi_cond_entropy(beta1, ref)
        assert renyi.renyi_cond_entropy(beta1, bec) == pytest.approx(h_ref, abs=1e-9)
        assert renyi.renyi_cond_entropy(beta1, bsc) == pytest.approx(h_ref, abs=1e-9)

        for rho2 in (rho1 + 0.3, rho1 + 1.5, rho1 + 4.0):
            beta = 1.0 / (1.0 + rho2)
            h_w = renyi.renyi_cond_entropy(beta, ref)
            assert renyi.renyi_cond_entropy(beta, bsc) >= h_w - 1e-12
            assert h_w >= renyi.renyi_cond_entropy(beta, bec) - 1e-12
