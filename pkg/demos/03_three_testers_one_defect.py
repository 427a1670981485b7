"""The three testers agree: homomorphism, cocycle, and covering defects.

On a presentation complex, generator images extend to a 1-cochain whose
coboundary values on polygons are the relator images; the induced covering's
lifts open exactly where the cochain's coboundary moves a point.  All three
rejection probabilities coincide, and the global defects (distance to the
nearest homomorphism / cocycle / genuine covering) coincide within the
searched degree cap as well.
"""

import numpy as np

from permstab import (Presentation, cochain_to_covering, cocycle_local_defect,
                      cover_local_defect, global_defect, hom_local_defect,
                      images_to_cochain)
from permstab.complexes import presentation_complex
from permstab.instances import random_images

torus = Presentation(2, ((1, 2, -1, -2),))   # <a, b | [a, b]>
x = presentation_complex(torus)
rng = np.random.default_rng(7)

for trial in range(4):
    f = random_images(2, 3, rng)
    alpha = images_to_cochain(list(f), x)
    cover = cochain_to_covering(alpha)
    local = hom_local_defect(torus, f).value
    assert cocycle_local_defect(alpha).value == local
    assert cover_local_defect(cover, x).value == local

    gh = global_defect("hom", (torus, f), 5)
    gc = global_defect("cocycle", alpha, 5)
    gv = global_defect("cover", (cover, x), 5)
    assert gh.upper_bound == gc.upper_bound == gv.upper_bound
    print(f"images {[p.cycle_string() for p in f]}: local defect {local}, "
          f"global bound {gh.upper_bound} ({gh.exactness})")

print("\nlocal and global defects agreed across all three pictures")
