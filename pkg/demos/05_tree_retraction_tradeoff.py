"""What retracting a spanning tree costs: the near-cut instances.

Restricting a tree-trivialized cochain to the non-tree edges is a generator
assignment for the retraction presentation with the *same* local defect, and
its distance to a homomorphism can only be larger than the cochain's distance
to a cocycle.  On the complete complex with a path tree the gap is real: the
near-cut cochain violates only the triangles through one tree edge, yet every
homomorphism of the (trivial) fundamental group is constant, so the
restriction sits far from all of them while the cochain itself is one edge
flip away from a coboundary.
"""

from fractions import Fraction

from permstab import cochain_norm, global_defect, hom_local_defect
from permstab.instances import cut_instance

print(" d  local defect   hom global bound   ratio   directed edges / 12")
for d in (6, 7, 8):
    ci = cut_instance(d)
    local = cochain_norm(ci.cochain)
    assert local == hom_local_defect(ci.presentation, ci.images).value
    res = global_defect("hom", (ci.presentation, ci.images), 4, hom_guard=10 ** 16)
    ratio = res.upper_bound / local
    directed = d * (d - 1)
    print(f"{d:2d}  {str(local):>10}   {str(res.upper_bound):>12}"
          f"   {str(ratio):>6}   {Fraction(directed, 12)}")

ci = cut_instance(6)
gc = global_defect("cocycle", ci.cochain, 4)
print("\nd = 6 cocycle-side global bound:", gc.upper_bound,
      "(one flipped edge out of 15 reaches a coboundary)")
print("hom-side bound:", global_defect("hom", (ci.presentation, ci.images), 4,
                                       hom_guard=10 ** 14).upper_bound,
      "- the tree retraction loses a factor on the order of the edge count")
