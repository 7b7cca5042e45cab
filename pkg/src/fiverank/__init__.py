"""Quadratic fields with three independent order-5 class-group quotients.

The package builds a one-parameter family of elliptic curves with a
rational point of order 10, quotients three members of it by their
5-torsion kernels over a common double cover, sieves the parameter so
the quotient points lift to the open subgroup scheme of every Neron
model, and certifies the resulting splitting patterns.  A binary
quadratic form oracle independently confirms the predicted
5-divisibility of class numbers on small instances.
"""

__version__ = "0.1.0"
