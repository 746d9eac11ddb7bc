"""Elliptic Chern-Weil toolkit.

Computable pieces of complex-analytic equivariant elliptic cohomology:
Eisenstein series and the graded ring of modular forms, Weierstrass-type
theta products and their transformation laws, loop-group vacuum characters
and Euler/Thom cocycles, formal group laws and the cubical structure, a
small Cartan-model engine for torus-equivariant forms, and finite-group
commuting-pair moduli with Freed-Quinn cocycles.

Everything is cross-verified: each nontrivial object is computed by at
least two independent routes, and the `ecw verify` CLI (or the HTTP
service) runs the whole residual suite deterministically.
"""

__version__ = "0.1.0"
