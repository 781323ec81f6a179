import math

import numpy as np


def round_half_up(x):
    """Round to the nearest integer, halves going up (2.5 -> 3, -2.5 -> -2)."""
    return int(math.floor(x + 0.5))


def day_gaps(dates):
    """Signed day counts between consecutive dates, as a numpy array."""
    ordinals = np.array([d.toordinal() for d in dates], dtype=np.int64)
    return np.diff(ordinals)


def mean_gap(dates):
    """
    Mean of the gaps between consecutive dates.

    Returns:
        (gaps, mean): gaps as a tuple of ints, mean as a float.
    """
    gaps = day_gaps(dates)
    if len(gaps) == 0:
        raise ValueError("At least two dates are needed for a gap")
    return tuple(int(g) for g in gaps), float(np.mean(gaps))
