"""monocat: monoidal structures on module categories, computationally.

Exact-arithmetic toolkit for checking monoidal coherence on module
categories, constructing the associated bimodule with its two left actions,
verifying the induced monoidal embedding into bimodules, and working with
fusion-ring data through the explicit block-matrix embedding.
"""

__version__ = "0.1.0"
