"""Simplicial depth: exact counting, approximation and structural checks."""
from .geom import (DegeneracyError, Halfspace, InputError, PointSet,
                   ProjectionPair, RefusalError, central_project,
                   find_halfspace_witness, general_position_check,
                   orientation, simplex_contains)
from .exact import (DepthResult, Method, SplitCounts, TukeyResult, WeightVector,
                    brute_force, exact_projected, parity_predicted,
                    simplex_range_count, split_counts, sweep_2d, tukey_2d,
                    tukey_small_d, weights_2d)
from .bfs import (BfsOutcome, count_via_bfs, degree_check, find_seed_simplex,
                  swap_vertex)
from .approx import (MonteCarloParams, SampleChain, Split3DCounts, approx_3d,
                     combined, half_sample_estimator, monte_carlo,
                     weight_split_estimate)
from .gale import GaleDual, facet_correspondence_check, gale_transform
from .datagen import GenSpec, Instance, gen

__version__ = "0.1.0"
