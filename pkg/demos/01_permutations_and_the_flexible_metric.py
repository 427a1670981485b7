"""Permutations, signed words, and the Hamming metric with errors.

The metric compares permutations of different degrees: agreements are counted
on the smaller domain and normalized by the larger degree.  It coincides with
half the squared (normalized) Hilbert-Schmidt distance of the permutation
matrices, which is what later connects defects to spectral gaps.
"""

from itertools import product

from permstab import (Permutation, all_permutations, compose, evaluate_word,
                      hamming_distance_with_errors, hs_distance_check)

a = Permutation([2, 3, 1])   # the 3-cycle (1 2 3)
b = Permutation([2, 1, 3])   # the transposition (1 2)

print("a =", a.cycle_string(), " b =", b.cycle_string())
print("a o b =", compose(a, b).cycle_string(), " (right factor acts first)")
print("a^3 is identity:", (a * a * a).is_identity())

commutator = evaluate_word([1, 2, -1, -2], [a, b])
print("[a, b] =", commutator.cycle_string())

print("\nDistances (exact rationals):")
print("  d(a, b)          =", hamming_distance_with_errors(a, b))
print("  d((1 2), Id_4)   =", hamming_distance_with_errors(Permutation([2, 1]),
                                                           Permutation.identity(4)),
      " <- the two missing points of the small permutation count against it")

print("\nHilbert-Schmidt bridge on all of Sym(3) x Sym(3):")
worst = 0.0
for p, q in product(list(all_permutations(3)), repeat=2):
    d, hs = hs_distance_check(p, q)
    worst = max(worst, abs(float(d) - hs))
print("  max |d_h - 0.5 ||difference||^2| =", worst)
