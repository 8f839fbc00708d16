# -*- coding: utf-8 -*-
'''
    latentplex.cli_utils
    ~~~~~~~~~~~~~~~~~~~~

    Parsing of config values and the handling of output paths, shared by
    the command line and the dataset manifests.

    :license: MIT, see LICENSE for more details.
'''

import os

_TRUE = ('true', 'on', 'yes')
_FALSE = ('false', 'off', 'no')


def parse_flag(x):
    '''A boolean config value. Raises ``ValueError`` for anything else.'''
    value = x.strip().lower()
    if value in _TRUE:
        return True
    if value in _FALSE:
        return False
    raise ValueError('Not a boolean: {}'.format(x))


def parse_list(x):
    '''Split a comma or whitespace separated list, dropping empty items.'''
    return [item for item in x.replace(',', ' ').split() if item]


def expand_path(p):
    return os.path.abspath(os.path.expanduser(p))


def ensure_directory(p):
    '''Expand ``p`` and create it with its parents if missing.'''
    p = expand_path(p)
    os.makedirs(p, exist_ok=True)
    return p
