"""Two-parameter Renyi conditional entropy and mutual information.

All values are in bits. Orders accept float("inf"); 0, 1 and inf are
handled by their exact limit formulas.
"""

import json

from ._renyikit import (
    DimensionCap,
    EnumerationCap,
    InvalidOrder,
    JointPmf,
    RenyiError,
    UndefinedCorner,
    __version__,
    cond_entropy,
    h_tilde,
    i_tilde,
    mutual_info,
    pa_exponent,
    pa_min_divergence_exhaustive,
    power,
    product,
    renyi_divergence,
    renyi_entropy,
    sc_expected_divergence_exact,
    sc_expected_divergence_mc,
    sc_exponent,
    variational_h,
    variational_i,
    verification_report_json,
)


def verify(props=(), seed=20240611, samples=200):
    """Run the property suite and return the parsed report."""
    return json.loads(verification_report_json(list(props), seed, samples))


__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
