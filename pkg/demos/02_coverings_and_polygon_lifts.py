"""Coverings of a graph and the polygon-lifting tester.

A 1-cochain with permutation values encodes a covering of the skeleton: sheet
i of the edge e runs into sheet alpha(e).i of its origin fiber.  A polygon of
the complex lifts to a closed path exactly when the cochain's value around it
fixes the starting sheet, and the covering tester samples exactly that event.
"""

from permstab import (Permutation, check_covering, cochain_to_covering,
                      cover_local_defect, covering_to_cochain,
                      dm_cover_local_defect, images_to_cochain)
from permstab.instances import bouquet_a3

x = bouquet_a3()   # one vertex, one loop, one triangle polygon a^3

for images, label in [([Permutation([2, 3, 1])], "a -> (1 2 3)"),
                      ([Permutation([2, 1, 3])], "a -> (1 2)(3)"),
                      ([Permutation([2, 1])], "a -> (1 2)")]:
    alpha = images_to_cochain(images, x)
    cover = cochain_to_covering(alpha)
    check_covering(cover.labeled.labeling, cover.degree)   # star bijections hold
    print(f"{label}:")
    print("   covering graph edges:", cover.graph.edges)
    print("   open-lift probability:", cover_local_defect(cover, x).value)
    print("   discrete-metric variant:", dm_cover_local_defect(cover, x).value)
    back = covering_to_cochain(cover, x)
    assert back.values == alpha.values   # canonical fiber labels round-trip
print("cochain -> covering -> cochain is the identity on canonical labels")
