"""Exact generating-function calculus for GV, GW and DT invariants of
Calabi-Yau threefolds."""

from .errors import (GVDTError, InconsistentSeriesError, IntegralityError,
                     MissingEntryError, ParseError, WindowError)
from .series import (Basis, MultiSeries, QLaurent, binom_power, cover_substitute,
                     series_exp, series_log, series_mul)
from .partitions import (mcmahon_series, partition_count, partition_count_oracle,
                         plane_partition_oracle)
from .invariants import (DTSeries, GVTable, GWTable, ThreefoldData, dt_free_energy,
                         dt_full, dt_reduce, dt_reduced_to_gv, genus_factor,
                         gv_to_dt_reduced, gv_to_gw, gw_to_gv, z0_partition_function)
from .kkv import (KKVInput, check_dim_zero_coeff, euler_blowup, euler_hilb_points,
                  kkv_dt_contribution, kkv_invariant)
from .datasets import ExampleModel, load_example

__version__ = "0.1.0"
