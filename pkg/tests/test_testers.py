import json
import math
from dataclasses import asdict
from fractions import Fraction

import numpy as np
import pytest

from permstab import instances
from permstab.cochains import cochain_to_covering, images_to_cochain
from permstab.complexes import Presentation, polygon_weights
from permstab.perm import Permutation
from permstab.testers import (cocycle_local_defect, cover_local_defect,
                              dm_cover_local_defect, hom_local_defect,
                              matrix_tester, matrix_to_presentation,
                              run_sampled, vector_to_images)

ID2 = Permutation.identity(2)
SWAP = Permutation([2, 1])
A3 = Presentation(1, ((1, 1, 1),))
TORUS_P = Presentation(2, ((1, 2, -1, -2),))


def test_hom_local_defect_examples():
    assert hom_local_defect(A3, (Permutation([2, 3, 1]),)).value == 0
    assert hom_local_defect(A3, (SWAP,)).value == 1
    f = (Permutation([2, 3, 1]), Permutation([2, 1, 3]))
    assert hom_local_defect(TORUS_P, f).value == 1


def test_hom_local_defect_weighted_and_empty():
    two = Presentation(1, ((1, 1), (1, 1, 1)))
    # (1 2): squares to Id, cube is (1 2) itself
    assert hom_local_defect(two, (SWAP,)).value == Fraction(1, 2)
    with pytest.warns(UserWarning):
        weighted = hom_local_defect(two, (SWAP,), mu=[Fraction(1), Fraction(0)])
    assert weighted.value == 0
    with pytest.warns(UserWarning):
        assert hom_local_defect(Presentation(1, ()), (SWAP,)).value == 0


def test_cocycle_defect_examples():
    x = instances.bouquet_a3()
    assert cocycle_local_defect(images_to_cochain([Permutation([2, 3, 1])], x)).value == 0
    assert cocycle_local_defect(instances.cut_instance(6).cochain).value == Fraction(1, 5)


def test_cover_defect_examples():
    x = instances.bouquet_a3()
    from_cocycle = cochain_to_covering(images_to_cochain([Permutation([2, 3, 1])], x))
    assert cover_local_defect(from_cocycle, x).value == 0
    c_swap = cochain_to_covering(images_to_cochain([SWAP], x))
    assert cover_local_defect(c_swap, x).value == 1
    c_partial = cochain_to_covering(images_to_cochain([Permutation([2, 1, 3])], x))
    assert cover_local_defect(c_partial, x).value == Fraction(2, 3)


def test_dm_defect_examples():
    x = instances.bouquet_a3()
    good = cochain_to_covering(images_to_cochain([Permutation([2, 3, 1])], x))
    assert dm_cover_local_defect(good, x).value == 0
    partial = cochain_to_covering(images_to_cochain([Permutation([2, 1, 3])], x))
    assert dm_cover_local_defect(partial, x).value == 1
    # two polygons, exactly one violated
    from permstab.complexes import presentation_complex
    y = presentation_complex(Presentation(2, ((1, 1, 1), (2, 2, 2))))
    a = images_to_cochain([Permutation([2, 1, 3]), Permutation([2, 3, 1])], y)
    c = cochain_to_covering(a)
    assert dm_cover_local_defect(c, y).value == Fraction(1, 2)


def test_dm_dominates_cover_defect():
    rng = np.random.default_rng(5)
    for x in (instances.bouquet_a3(), instances.complete_complex(4)):
        for _ in range(20):
            a = instances.random_cochain1(x, 3, rng)
            c = cochain_to_covering(a)
            assert dm_cover_local_defect(c, x).value >= cover_local_defect(c, x).value


def test_cover_defect_weighted():
    from permstab.complexes import presentation_complex
    y = presentation_complex(Presentation(2, ((1, 1, 1), (2, 2, 2))))
    a = images_to_cochain([Permutation([2, 1, 3]), Permutation([2, 3, 1])], y)
    c = cochain_to_covering(a)
    # point mass on the violated polygon
    ws = polygon_weights(y, [Fraction(1), Fraction(0)])
    assert cover_local_defect(c, y, ws).value == Fraction(2, 3)


def test_matrix_tester_examples():
    rows = [[1, 0, 1], [0, 1, 1]]
    assert matrix_tester(rows, [1, 1, 1]).value == 0
    assert matrix_tester([[1, 1, 1]], [1, 0, 0]).value == 1
    p = matrix_to_presentation(rows)
    assert p.generator_count == 3
    assert p.relators == ((1, 3), (2, 3))
    assert vector_to_images([1, 0]) == (SWAP, ID2)


def test_matrix_tester_blr_instance():
    rows = instances.blr_matrix(2)
    for table in instances.linear_truth_tables(2):
        assert matrix_tester(rows, table).value == 0
    assert matrix_tester(rows, [1, 1, 1, 1]).value == 1


def test_matrix_tester_validates():
    with pytest.raises(ValueError):
        matrix_tester([[1, 2]], [1, 1])
    with pytest.raises(ValueError):
        matrix_tester([[1, 1]], [1])
    with pytest.warns(UserWarning):
        matrix_tester([[1, 1], [1, 0]], [1, 1], mu=[Fraction(1), Fraction(0)])


def test_run_sampled_degenerate_rates():
    x = instances.bouquet_a3()
    zero = images_to_cochain([Permutation([2, 3, 1])], x)
    out = run_sampled("cocycle", zero, 2000, seed=1)
    assert out.rejections == 0
    one = images_to_cochain([SWAP], x)
    out1 = run_sampled("cocycle", one, 2000, seed=1)
    assert out1.rejections == 2000
    assert out1.exact_rate == 1


def test_run_sampled_reproducible_across_workers():
    x = instances.complete_complex(4)
    rng = np.random.default_rng(9)
    a = instances.random_cochain1(x, 3, rng)
    o1 = run_sampled("cocycle", a, 20000, seed=12345, workers=1)
    o8 = run_sampled("cocycle", a, 20000, seed=12345, workers=8)
    assert json.dumps(asdict(o1), default=str) == json.dumps(asdict(o8), default=str)
    again = run_sampled("cocycle", a, 20000, seed=12345, workers=1)
    assert again.rejections == o1.rejections


def test_run_sampled_concentrates():
    x = instances.bouquet_a3()
    a = images_to_cochain([Permutation([2, 1, 3])], x)   # exact defect 2/3
    out = run_sampled("cocycle", a, 100000, seed=77)
    p = 2 / 3
    slack = 3 * math.sqrt(p * (1 - p) / out.trials)
    assert abs(float(out.empirical_rate) - p) <= slack
    assert out.exact_rate == Fraction(2, 3)


def test_run_sampled_hom_cover_matrix_kinds():
    out = run_sampled("hom", (A3, (SWAP,)), 5000, seed=3)
    assert out.rejections == 5000
    x = instances.bouquet_a3()
    c = cochain_to_covering(images_to_cochain([Permutation([2, 1, 3])], x))
    oc = run_sampled("cover", (c, x), 5000, seed=3)
    assert abs(float(oc.empirical_rate) - 2 / 3) < 0.05
    od = run_sampled("cover_dm", (c, x), 100, seed=3)
    assert od.rejections == 100
    om = run_sampled("matrix", (instances.blr_matrix(2), [1, 1, 1, 1]), 100, seed=3)
    assert om.rejections == 100


def test_run_sampled_linf():
    from permstab.complexes import presentation_complex
    y = presentation_complex(Presentation(2, ((1, 1, 1), (2, 2, 2))))
    a = images_to_cochain([Permutation([2, 1, 3]), Permutation([2, 3, 1])], y)
    out = run_sampled("cocycle", a, 50000, seed=21, linf=True)
    assert out.exact_rate == Fraction(2, 3)  # 1 - (1 - 2/3)(1 - 0)
    assert abs(float(out.empirical_rate) - 2 / 3) < 0.02
    with pytest.raises(ValueError):
        run_sampled("matrix", (instances.blr_matrix(2), [1, 1, 1, 1]), 10, seed=1, linf=True)


def test_run_sampled_validates():
    with pytest.raises(ValueError):
        run_sampled("nope", None, 10, seed=0)
    with pytest.raises(ValueError):
        run_sampled("hom", (A3, (SWAP,)), 0, seed=0)


def test_dm_equality_characterization():
    # the discrete-metric defect equals the pointwise one exactly when every
    # violated polygon has all of its lifts open
    rng = np.random.default_rng(202)
    from permstab.testers import _lift_tables, lift_path
    from permstab.graphs import origin

    for x in (instances.bouquet_a3(), instances.complete_complex(4)):
        for _ in range(30):
            a = instances.random_cochain1(x, 3, rng)
            c = cochain_to_covering(a)
            dm = dm_cover_local_defect(c, x).value
            cov = cover_local_defect(c, x).value
            tables = _lift_tables(c)
            fully_open = True
            for pc in x.polygons:
                x0 = origin(x.skeleton, pc.canonical[0])
                opens = [lift_path(c, pc.canonical, s, tables) != s
                         for s in c.fiber_labels[x0 - 1]]
                if any(opens) and not all(opens):
                    fully_open = False
            assert dm >= cov
            assert (dm == cov) == fully_open
