# SPDX-License-Identifier: Apache-2.0
"""Fully- versus semi-passive IRS sensing SNR simulator."""

from ._irs_sensing import *  # noqa: F401,F403
from ._irs_sensing import CSV_HEADER, __doc__  # noqa: F401

__version__ = "0.1.0"
