"""valfields: exact classification of absolute-value extensions.

Computes all extensions of discrete places in towers and composita of
finite field extensions over Q (p-adic places) and over rational function
fields k(t), including ramification/residue data, tensor-product
decompositions with two-place classification, lcm/gcd ramification
identities on composita, and point counts on fibered products of curve
covers with an independent branch-counting oracle.
"""

__version__ = "0.1.0"
