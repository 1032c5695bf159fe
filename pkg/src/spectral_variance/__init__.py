"""Exact spectra of quasihomogeneous singularities and the gamma invariant.

The exact part (:mod:`.exact_arith`, :mod:`.spectrum_core`, :mod:`.joins`,
:mod:`.families`) needs only the standard library.  The numerical
laboratory lives in :mod:`spectral_variance.frobenius` and needs numpy and
sympy; it is not imported here.
"""

from .errors import (BadExponent, BadParams, DegenerateMetric, InvalidSpectrum, InvalidWeights,
                     NoConvergence, NotDivisible, NotInteger, OnCaustic, OutOfRange,
                     PathOnCaustic, SpectralError, ZeroEta)
from .exact_arith import QPoly, format_rational, parse_rational, qpoly_exact_div, qpoly_mul
from .families import (BimodalSeries, ScanReport, ScanRow, gamma_bimodal, gamma_tpqr,
                       scan_bimodal, scan_conjecture, scan_tpqr)
from .joins import JoinReport, brieskorn_pham, gamma_join_check, join, one_variable_spectrum, suspend
from .spectrum_core import (FrobeniusDegrees, Spectrum, VarianceReport, WeightSystem,
                            characteristic_function, characteristic_product, frobenius_degrees,
                            gamma_from_degrees, gamma_from_spectrum, milnor_number,
                            spectrum_from_weights, spectrum_report, variance,
                            verify_variance_identity)

__version__ = "0.1.0"
