"""Parity-check codes as a special case of the homomorphism tester.

A binary matrix defines a code (its kernel) and a one-row-at-a-time tester.
Reading each row as a relator over Sym(2)-valued generators turns that tester
into the homomorphism tester of an elementary abelian presentation; the
classical three-point linearity test is the instance whose rows are all
(x, y, x+y) parities.
"""

from fractions import Fraction

from permstab import hom_local_defect, matrix_tester
from permstab.instances import blr_matrix, linear_truth_tables
from permstab.testers import matrix_to_presentation, vector_to_images

rows = blr_matrix(2)
print(f"linearity-test matrix over F_2^2: {len(rows)} rows x {len(rows[0])} columns")

for table in linear_truth_tables(2):
    assert matrix_tester(rows, table).value == 0
print("all 4 linear truth tables pass with defect 0")

constant_one = [1, 1, 1, 1]
report = matrix_tester(rows, constant_one)
print("constant-1 table is rejected with probability", report.value)

p = matrix_to_presentation(rows)
print(f"induced presentation: {p.generator_count} generators, {len(p.relators)} relators")
assert hom_local_defect(p, vector_to_images(constant_one)).value == report.value
print("row enumeration equals the induced homomorphism defect")

# a tiny parity code with a non-uniform row distribution
small = [[1, 1, 0], [0, 1, 1]]
skewed = matrix_tester(small, [1, 0, 0], mu=[Fraction(3, 4), Fraction(1, 4)])
print("skewed row distribution on a 2-row code:", skewed.value)
