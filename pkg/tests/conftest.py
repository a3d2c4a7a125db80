import functools
import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from augsheaf.chd import enumerate_augmentations  # noqa: E402
from augsheaf.corpus import CORE, EXTRA  # noqa: E402
from augsheaf.dga import build_dga  # noqa: E402
from augsheaf.front import load_front  # noqa: E402
from augsheaf.strat import Stratification  # noqa: E402

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ALL_FRONTS = CORE + EXTRA

# augmentation counts, confirmed against the brute-force oracle before being frozen
AUG_COUNTS = {
    "one_sheet": (1, 1),
    "two_sheets": (2, 3),
    "crossing_circle": (4, 9),
    "unknot_sphere": (1, 1),
    "cusp_sheet_vertex": (4, 9),
    "triple_point_vertex": (8, 27),
    "stacked_unknot": (2, 3),
    "stacked_crossing": (4, 9),
    "two_arcs_vertex": (64, 729),
}


@functools.lru_cache(maxsize=None)
def front(name):
    return load_front(name)


@functools.lru_cache(maxsize=None)
def dga(name):
    return build_dga(front(name))


@functools.lru_cache(maxsize=None)
def augs(name, p):
    return tuple(enumerate_augmentations(dga(name), p))


@functools.lru_cache(maxsize=None)
def strata(name):
    return Stratification(front(name))
