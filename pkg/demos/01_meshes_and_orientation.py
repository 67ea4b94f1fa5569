"""Simplicial complexes and the two kinds of orientation.

Builds the bundled meshes, checks boundary-of-boundary, and shows which
surfaces admit a coherent (straight) orientation and which only a twisted
one.
"""

from formcalc import meshes
from formcalc.parity import Parity

surfaces = {
    "disk": meshes.disk(),
    "annulus": meshes.annulus(),
    "sphere": meshes.sphere_octahedron(),
    "torus": meshes.torus(),
    "mobius": meshes.mobius_minimal(),
}

print("surface   cells (0/1/2)   Euler   orientable")
for name, cx in surfaces.items():
    counts = "/".join(str(cx.num_simplices(k)) for k in range(3))
    print(f"{name:9} {counts:15} {cx.euler_characteristic():5}   "
          f"{cx.orientable()}")

print()
print("boundary of the boundary vanishes:")
for name, cx in surfaces.items():
    product = cx.boundary_matrix(1) @ cx.boundary_matrix(2)
    print(f"  {name}: nonzero entries in d1*d2 = {product.nnz}")

print()
print("fundamental chains:")
torus = surfaces["torus"]
print("  torus, straight:", len(
    torus.fundamental_chain(Parity.STRAIGHT).coefficients), "cells")
mobius = surfaces["mobius"]
print("  mobius, twisted:", len(
    mobius.fundamental_chain(Parity.TWISTED).coefficients), "cells")
try:
    mobius.fundamental_chain(Parity.STRAIGHT)
except ValueError as exc:
    print("  mobius, straight:", exc)
