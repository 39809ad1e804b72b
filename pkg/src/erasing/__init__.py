"""Exact computations with the erasing substitution on binary words and the
interval map it induces on [0, 1]."""

from .words import (BudgetError, EPWord, LazyWord, WordError, canonicalize,
                    cylinder_interval, expand, expand_terminating, freq,
                    gap_word, insert_zero_pairs, parse_rational, parse_word,
                    word_value)
from .runs import RunWord
from .substitution import (block_erase, block_lift, erase, erase_after,
                           erase_ep, erase_lazy, erase_pow, preimage,
                           preimages, section, section_ep, vanishing_order)

from .realmap import classify, interval_map, iterate_orbit, max_preimage
from .fibers import fiber_dimension, fiber_measure_cylinder, fiber_point, fiber_spec
from .geometry import area, box_count, integral_staircase, rect_level

__version__ = "0.1.0"
