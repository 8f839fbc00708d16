# -*- coding: utf-8 -*-
'''
    latentplex
    ~~~~~~~~~~

    Latentplex fits a Bayesian latent space model to multiplexes of binary
    directed networks. See the README for more details.

    :license: MIT, see LICENSE for more details.
'''

__version__ = '0.1.0'
