"""Constructive Lovasz Local Lemma toolkit: Moser-Tardos resampling engine,
core-subset Monte Carlo runs, and the application solvers."""

try:
    from ._lllmt import *  # noqa: F401,F403  (installed layout)
except ImportError:  # build-tree layout: the extension sits next to the package
    from _lllmt import *  # noqa: F401,F403
