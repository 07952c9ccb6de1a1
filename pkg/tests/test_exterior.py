import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np

from config.search_config import SearchConfig
from modules.exterior import (
    ExteriorVector, apply_matrix, compound_matrix, exterior_basis_vector, hodge_star_matrix, interior_mult,
    maximal_minors, multi_index_list, plucker_relations_hold, sign_complement, tilde_star, vector_as_exterior,
    wedge,
)
from modules.galois_field import fq_make
from modules.linear_codes import random_invertible
from modules.matrix_ops import Matrix, det
from tests.case_report import raises, report_cases, run_tests


def test_indices_and_signs():
    """Lexicographic multi-indices and the sign of (I, I°)."""
    cases = [
        ("I(2,4)", multi_index_list(2, 4), ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))),
        ("|I(3,6)|", len(multi_index_list(3, 6)), 20),
        ("sgn(12|34)", sign_complement((1, 2), 4), 1),
        ("sgn(13|24)", sign_complement((1, 3), 4), -1),
        ("sgn(24|13)", sign_complement((2, 4), 4), -1),
        ("sgn(2|1)", sign_complement((2,), 2), -1),
        ("unsorted index rejected", raises(lambda: sign_complement((3, 1), 4), ValueError), True),
        ("l > m rejected", raises(lambda: multi_index_list(3, 2), ValueError), True),
    ]
    report_cases("Testing multi-indices and signs:", cases)


def test_compound_matrices():
    """Cauchy-Binet and the boundary grades."""
    rng = np.random.default_rng(SearchConfig.RANDOM_SEED)
    cases = []
    for p, e in [(2, 1), (3, 1), (2, 2)]:
        spec = fq_make(p, e)
        A = Matrix(spec, random_invertible(spec, 4, rng))
        B = Matrix(spec, random_invertible(spec, 4, rng))
        cases += [
            (f"F_{spec.q}: wedge^2(AB) = wedge^2 A wedge^2 B",
             compound_matrix(A @ B, 2) == compound_matrix(A, 2) @ compound_matrix(B, 2), True),
            (f"F_{spec.q}: wedge^1 A = A", compound_matrix(A, 1) == A, True),
            (f"F_{spec.q}: wedge^4 A = det A", int(compound_matrix(A, 4).data[0, 0]), det(A).value),
            (f"F_{spec.q}: wedge^2 I = I", compound_matrix(Matrix.identity(spec, 4), 2) == Matrix.identity(spec, 6), True),
        ]
    spec = fq_make(3)
    cases.append(("non-square rejected", raises(lambda: compound_matrix(Matrix.zeros(spec, 2, 3), 1), ValueError), True))
    report_cases("Testing compound matrices:", cases)


def test_wedge_and_contraction():
    """Antisymmetry of the wedge, contraction by basis covectors, Plücker relation."""
    f5 = fq_make(5)
    e1, e2, e3, e4 = (exterior_basis_vector((i,), 4, f5) for i in range(1, 5))
    e12 = exterior_basis_vector((1, 2), 4, f5)
    u = vector_as_exterior(f5, [1, 2, 3, 4])
    v = vector_as_exterior(f5, [0, 1, 4, 2])
    uv = wedge(u, v)
    split = wedge(e1, e2) + wedge(e3, e4)
    cases = [
        ("e1 ^ e2 = e12", wedge(e1, e2) == e12, True),
        ("e2 ^ e1 = -e12", wedge(e2, e1) == -e12, True),
        ("u ^ u = 0", wedge(u, u).is_zero(), True),
        ("iota_1 e12 = e2", interior_mult(1, e12) == e2, True),
        ("iota_2 e12 = -e1", interior_mult(2, e12) == -e1, True),
        ("iota_3 e12 = 0", interior_mult(3, e12).is_zero(), True),
        ("u ^ v is decomposable", plucker_relations_hold(uv), True),
        ("e12 + e34 is not decomposable", plucker_relations_hold(split), False),
        ("minors of (e1; e2)", maximal_minors(f5, [[1, 0, 0, 0], [0, 1, 0, 0]]).tolist(), [1, 0, 0, 0, 0, 0]),
        ("coordinates of u ^ v equal its minors",
         uv.coords.tolist(), maximal_minors(f5, [[1, 2, 3, 4], [0, 1, 4, 2]]).tolist()),
        ("grade overflow rejected", raises(lambda: wedge(uv, exterior_basis_vector((1, 2, 3), 4, f5)), ValueError), True),
        ("mismatched fields rejected",
         raises(lambda: wedge(e1, exterior_basis_vector((1,), 4, fq_make(3))), ValueError), True),
        ("zero has no representative", raises(lambda: ExteriorVector.zero(2, 4, f5).normalized(), ValueError), True),
        ("normalized leading coordinate", int(uv.scale(3).normalized().coords[np.nonzero(uv.coords)[0][0]]), 1),
    ]
    report_cases("Testing wedge and contraction:", cases)


def test_compound_acts_on_wedges():
    """wedge^2 A (u ^ v) = Au ^ Av."""
    rng = np.random.default_rng(SearchConfig.RANDOM_SEED)
    cases = []
    for p, e in [(3, 1), (2, 2)]:
        spec = fq_make(p, e)
        A = Matrix(spec, random_invertible(spec, 4, rng))
        good = 0
        for _ in range(10):
            u = vector_as_exterior(spec, rng.integers(0, spec.q, size=4))
            v = vector_as_exterior(spec, rng.integers(0, spec.q, size=4))
            lhs = apply_matrix(compound_matrix(A, 2), wedge(u, v))
            rhs = wedge(apply_matrix(A, u), apply_matrix(A, v))
            good += lhs == rhs
        cases.append((f"F_{spec.q}: 10 random pairs", good, 10))
    report_cases("Testing the compound action:", cases)


def test_hodge_star():
    """Matrix of the Hodge star and its square."""
    f5 = fq_make(5)
    f3 = fq_make(3)
    k = 6
    star = hodge_star_matrix(2, 4, f3)
    tilde = tilde_star(2, f3)
    cases = [
        ("star on F_5^2", hodge_star_matrix(1, 2, f5).data.tolist(), [[0, 4], [1, 0]]),
        ("star^2 = -I on F_5^2",
         hodge_star_matrix(1, 2, f5) @ hodge_star_matrix(1, 2, f5) == Matrix.identity(f5, 2).scale(4), True),
        ("star^2 = I on wedge^2 F_3^4", star @ star == Matrix.identity(f3, k), True),
        ("star is monomial", star.is_monomial(), True),
        ("star e12 = e34", apply_matrix(star, exterior_basis_vector((1, 2), 4, f3)) == exterior_basis_vector((3, 4), 4, f3), True),
        ("tilde star^2 = I", tilde @ tilde == Matrix.identity(f3, k), True),
        ("tilde star e12 = -e12", apply_matrix(tilde, exterior_basis_vector((1, 2), 4, f3)) == -exterior_basis_vector((1, 2), 4, f3), True),
        ("tilde star fixes e13", apply_matrix(tilde, exterior_basis_vector((1, 3), 4, f3)) == exterior_basis_vector((1, 3), 4, f3), True),
        ("star needs 1 <= l <= m-1", raises(lambda: hodge_star_matrix(0, 4, f3), ValueError), True),
    ]
    report_cases("Testing the Hodge star:", cases)


def run_all_tests():
    """Run all exterior algebra tests."""
    return run_tests("EXTERIOR ALGEBRA TESTS", [
        test_indices_and_signs,
        test_compound_matrices,
        test_wedge_and_contraction,
        test_compound_acts_on_wedges,
        test_hodge_star,
    ])


if __name__ == "__main__":
    run_all_tests()
