"""c-DDT / uniformity engine and Walsh spectra."""

from .cddt import (
    DEFAULT_FULL_DDT_CAP,
    DdtTable,
    LocusReport,
    OutsideScan,
    UniformityReport,
    c_ddt,
    c_uniformity,
    c_uniformity_rows,
    ddt_to_csv,
    derivative_values,
    row_maxima,
    scan_outside,
    solution_locus,
    subfield_fiber_max,
    subfield_uniformity,
    uniformity_from_ddt,
    uniformity_profile,
)
from .walsh import WalshSpectrum, nonlinearity, walsh

__all__ = [
    "DEFAULT_FULL_DDT_CAP",
    "DdtTable",
    "LocusReport",
    "OutsideScan",
    "UniformityReport",
    "WalshSpectrum",
    "c_ddt",
    "c_uniformity",
    "c_uniformity_rows",
    "ddt_to_csv",
    "derivative_values",
    "nonlinearity",
    "row_maxima",
    "scan_outside",
    "solution_locus",
    "subfield_fiber_max",
    "subfield_uniformity",
    "uniformity_from_ddt",
    "uniformity_profile",
    "walsh",
]
