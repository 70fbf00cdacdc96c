# coding: utf-8
import logging

import pytest

from ..tools import misc
from ..tools.errors import ConventionError, Error, PoleError
from ..tools.timing import Timer, TimerError


@pytest.mark.parametrize('text, expected', [('true', True), (' Yes', True), ('1', True), ('off', False),
                                            ('False', False), ('0', False)])
def test_to_bool(text, expected):
    assert misc.to_bool(text) is expected


def test_to_bool_rejects_other_words():
    with pytest.raises(ValueError):
        misc.to_bool('maybe')


def test_to_list():
    assert misc.to_list('1, 2,3') == [1., 2., 3.]
    assert misc.to_list('4,5,', int) == [4, 5]
    assert misc.to_list((1, 2), float) == [1., 2.]


def test_case_conversion():
    assert misc.snake_to_camel('theta_pi_over') == 'thetaPiOver'
    assert misc.snake_to_camel('total_cutoff', upper=True) == 'TotalCutoff'
    assert misc.snake_to_camel('p') == 'p'


def test_paths(tmp_path):
    assert misc.head_tail_root_ext('out/run.json') == ('out', 'run.json', 'run', '.json')
    assert misc.exists(str(tmp_path))
    assert not misc.exists(str(tmp_path / 'absent'))
    assert misc.to_str(True) == 'true' and misc.to_str(0) == 'false'


def test_timer(caplog):
    Timer.reset()
    with caplog.at_level(logging.INFO):
        with Timer('suite') as timer:
            pass
        with Timer('suite'):
            pass
    assert timer.elapsed >= 0.
    assert list(Timer.summary()) == ['suite']
    assert Timer.summary()['suite'] >= timer.elapsed
    assert '[suite]' in caplog.text


def test_timer_misuse():
    timer = Timer()
    with pytest.raises(TimerError):
        timer.stop()
    timer.start()
    with pytest.raises(TimerError):
        timer.start()
    assert timer.stop() >= 0.


def test_errors_carry_context():
    pole = PoleError('(a;p)_-2 has a pole', 2)
    assert isinstance(pole, Error) and pole.k == 2
    evidence = {'satisfying': []}
    assert ConventionError('no convention', evidence).evidence is evidence
