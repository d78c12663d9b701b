##########################################################################################
# cliffdirac/_utils.py
##########################################################################################
"""Internal utility functions
"""
##########################################################################################

import numpy as np

# Independent metric entries g_ab with a <= b, in lexicographic order
PAIRS = tuple((a,b) for a in range(4) for b in range(a,4))
PAIR_INDEX = {}
for (_k, (_a,_b)) in enumerate(PAIRS):
    PAIR_INDEX[(_a,_b)] = _k
    PAIR_INDEX[(_b,_a)] = _k


def _scaled_error(a, b=0.):
    """Maximum absolute difference between a and b, divided by the larger of one and the
    largest magnitude appearing in either operand.

    At unit-scale quantities this is just the maximum absolute error.
    """

    a = np.asarray(a, dtype='float')
    b = np.asarray(b, dtype='float')
    diff = np.max(np.abs(a - b)) if (a.size or b.size) else 0.
    scale = max(1., np.max(np.abs(a)) if a.size else 0.,
                np.max(np.abs(b)) if b.size else 0.)
    return float(diff / scale)


def _max_abs(a):
    """Largest absolute value in an array; 0 for an empty array."""

    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.


def _pair_seeds():
    """The ten symmetric seed matrices, one per independent entry g_ab with a <= b.

    A diagonal seed has a single unit entry; an off-diagonal seed puts 1/2 at both (a,b)
    and (b,a), so that the directional derivative along a seed is the symmetric gradient
    component.

    Return          array of shape (10,4,4).
    """

    seeds = np.zeros((10,4,4))
    for (k, (a,b)) in enumerate(PAIRS):
        seeds[k,a,b] += 0.5
        seeds[k,b,a] += 0.5
    return seeds


def _symmetric_from_pairs(values):
    """Expand an array indexed by pair along its leading axis to a leading (4,4) shape."""

    values = np.asarray(values)
    indices = np.array([[PAIR_INDEX[(a,b)] for b in range(4)] for a in range(4)])
    return values[indices]

##########################################################################################
