# coding: utf-8
# small helpers shared by the command line interface and the run-config reader

import logging
import os

logger = logging.getLogger(__name__)

TRUE_WORDS = ('true', '1', 'yes', 'on')
FALSE_WORDS = ('false', '0', 'no', 'off')


def exists(path):
    if os.path.exists(path):
        return True
    logger.error(f'[exists] no such file: {path}')
    return False


def head_tail_root_ext(path):
    """'out/run.json' -> ('out', 'run.json', 'run', '.json')"""
    head, tail = os.path.split(path)
    return (head, tail) + os.path.splitext(tail)


def to_bool(str_):
    """Run-config boolean; anything outside TRUE_WORDS and FALSE_WORDS is a ValueError"""
    word = str(str_).strip().lower()
    if word not in TRUE_WORDS + FALSE_WORDS:
        raise ValueError(f'not a boolean: {str_!r}')
    return word in TRUE_WORDS


def to_str(bool_):
    return 'true' if bool_ is True else 'false'


def to_list(str_, cast=float):
    """'1, 2,3' -> [1., 2., 3.]"""
    if isinstance(str_, (list, tuple)):
        return [cast(x) for x in str_]
    return [cast(x) for x in str(str_).split(',') if x.strip()]


def snake_to_camel(name, upper=False):
    """Report keys: 'theta_pi_over' -> 'thetaPiOver'"""
    camel = ''.join(word.title() for word in name.split('_'))
    return camel if upper else camel[:1].lower() + camel[1:]
