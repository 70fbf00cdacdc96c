# coding: utf-8
import math

import numpy as np
import pytest

from ..coherent import posenergy
from ..coherent.posenergy import PositiveEnergyConfig
from ..kernel.qkernel import DeformationParams
from ..tools.errors import ArgumentError, DomainError

PARAMS = DeformationParams(p=0.5, theta=math.pi / 7)


@pytest.mark.parametrize('lam', [0.5, 1., 2.])
def test_raising_eigenproblem(lam):
    config = PositiveEnergyConfig(PARAMS, (lam,))
    state = posenergy.build_positive_coherent(config, (12.,), window=30)
    report = posenergy.check_raising_eigenproblem(state, 1)
    assert report.passed
    assert report.domain_size == 60
    assert report.phase_mismatches == 0


def test_raising_eigenproblem_two_modes():
    config = PositiveEnergyConfig(PARAMS, (1., 2.))
    state = posenergy.build_positive_coherent(config, (12., 9.), window=8)
    for mode in (1, 2):
        report = posenergy.check_raising_eigenproblem(state, mode)
        assert report.passed and report.phase_mismatches == 0


@pytest.mark.parametrize('lam', [0.5, 1., 2.])
def test_normalization_matches_magnitude_sum(lam):
    config = PositiveEnergyConfig(PARAMS, (lam,))
    state = posenergy.build_positive_coherent(config, (12.,), window=30)
    assert state.magnitude_sum() * state.normalization ** 2 == pytest.approx(1., rel=1e-8)
    assert not state.warnings


def test_ladder_consistency():
    config = PositiveEnergyConfig(PARAMS, (0.5, 2.))
    for mode in (1, 2):
        reports = posenergy.ladder_consistency_check(config, mode)
        assert len(reports) == 3
        assert all(r.passed for r in reports)


def test_creation_lowers_energy():
    config = PositiveEnergyConfig(PARAMS, (1.5,))
    spectrum = posenergy.energy_spectrum(config, 1, 5)
    assert np.all(spectrum > 0)
    assert np.all(np.diff(spectrum) < 0)
    raised = posenergy.apply_positive_ladder('creation', 1, posenergy.lattice_state((0,), config))
    (label, amplitude), = raised.items()
    assert label == (1,)
    assert amplitude.coefficient(0) == pytest.approx(math.sqrt(1.5 * 0.5 + 2.))


def test_window_clipping():
    config = PositiveEnergyConfig(PARAMS, (1.,))
    v = posenergy.lattice_state((3,), config, window=3)
    raised = posenergy.apply_positive_ladder('creation', 1, v)
    assert raised.window_clipped
    assert not raised.amplitudes


def test_small_window_warns():
    config = PositiveEnergyConfig(PARAMS, (1.,))
    state = posenergy.build_positive_coherent(config, (12.,), window=2)
    assert state.warnings


def test_automatic_window():
    config = PositiveEnergyConfig(PARAMS, (1.,))
    window = posenergy.choose_window(config, (12.,))
    assert posenergy._tail_ratio(config, (12.,), window) <= 1e-14
    assert posenergy.build_positive_coherent(config, (12.,)).window == window


def test_not_normalisable_below_nu():
    config = PositiveEnergyConfig(PARAMS, (1.,))
    with pytest.raises(DomainError):
        posenergy.build_positive_coherent(config, (2.,))
    with pytest.raises(DomainError):
        posenergy.positive_normalization(config, (1.5,))


def test_config_validation():
    with pytest.raises(DomainError):
        PositiveEnergyConfig(DeformationParams(p=1.5), (1.,))
    with pytest.raises(ArgumentError):
        PositiveEnergyConfig(DeformationParams(p=0.5, exact=True), (1.,))
    with pytest.raises(ArgumentError):
        PositiveEnergyConfig(PARAMS, (1., -1.))
    with pytest.raises(ArgumentError):
        posenergy.apply_positive_ladder('number', 1, posenergy.lattice_state((0,), PositiveEnergyConfig(PARAMS, (1.,))))


def test_commuting_parameters_single_mode():
    config = PositiveEnergyConfig(PARAMS, (1.,), covariant_z=False)
    assert config.describe()['covariantZ'] is False
    state = posenergy.build_positive_coherent(config, (12.,), window=30)
    assert posenergy.check_raising_eigenproblem(state, 1).passed


def test_ladder_phase_sits_on_the_q_exponent():
    config = PositiveEnergyConfig(PARAMS, (1., 1.))
    raised = posenergy.apply_positive_ladder('creation', 1, posenergy.lattice_state((0, 2), config))
    (label, amplitude), = raised.items()
    assert label == (1, 2)
    assert amplitude.exponents() == [-2]
    coefficient = amplitude.coefficient(-2)
    assert isinstance(coefficient, float)
    assert coefficient == pytest.approx(math.sqrt(2.5))
    lowered = posenergy.apply_positive_ladder('annihilation', 1, raised)
    assert lowered.amplitudes[(0, 2)].realize(PARAMS.theta) == pytest.approx(2.5)


def test_boundary_residue_shrinks_with_the_window():
    config = PositiveEnergyConfig(PARAMS, (1.,))
    residues = [posenergy.check_raising_eigenproblem(posenergy.build_positive_coherent(config, (12.,), window=w), 1)
                .boundary_residue for w in (6, 10, 14)]
    assert residues[0] > 0.
    # tail ratio per label tends to sqrt(nu / r) = 0.41
    assert residues[1] < 0.2 * residues[0]
    assert residues[2] < 0.2 * residues[1]
