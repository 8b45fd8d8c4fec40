"""Kernel dispatch: compiled ``_ckernels`` when built, ``_pykernels`` otherwise.

The compiled kernels work on 64-bit words, so calls whose world or node
bitsets do not fit fall back to the Python versions per call.  Set
``PREFDL_PURE_PYTHON=1`` to force the fallback for the whole process.
"""
import os

from . import _pykernels as py

c = None
if not os.environ.get("PREFDL_PURE_PYTHON"):
    try:
        from . import _ckernels as c
    except ImportError:  # extension not built
        c = None

BACKEND = "cython" if c is not None else "python"
WORD = 64


def _pick(size, nodes=0):
    if c is not None and size <= WORD and nodes <= WORD:
        return c
    return py


def closure(rows, worlds):
    return _pick(len(rows)).closure(rows, worlds)


def transitivity_witness(up, worlds):
    return _pick(len(up)).transitivity_witness(up, worlds)


def induced_up(node_masks, pred, worlds, size):
    return _pick(size, len(node_masks)).induced_up(node_masks, pred, worlds, size)


def min_mask(up, s):
    return _pick(len(up)).min_mask(up, s)


def box_mask(up, worlds, ext, strict=False):
    return _pick(len(up)).box_mask(up, worlds, ext, strict)


def preorders(k):
    return (c if c is not None else py).preorders(k)
