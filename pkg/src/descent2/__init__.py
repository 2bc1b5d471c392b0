"""Mod-2 descent toolkit for certifying finiteness of depth-2 Chabauty-Kim sets.

The package is organised in layers:

* exact rational algebra (``polynomials``, ``gf2``)
* capped-precision 2-adic arithmetic in field towers (``qp2``, ``residue``,
  ``local_fields``, ``local_factor``)
* the quadratic Hilbert symbol over finite extensions of Q2 (``hilbert``)
* etale-algebra decompositions of an odd-degree Weierstrass polynomial
  (``etale``) and the liftability obstruction maps built on them
  (``boundary``)
* an explicit finite-group-cohomology verifier (``groupcoh``)
* the per-curve certification pipeline, service and CLI (``pipeline``,
  ``api``, ``cli``)
"""

__version__ = "0.1.0"
