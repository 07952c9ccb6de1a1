import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np

from config.search_config import SearchConfig
from modules.automorphisms import (
    ReportRow, action_on_vectors, big_cell_aut_generators, chow_oracle, code_vectors, column_permutation,
    extension_checks, format_params, generator_is_automorphism, gl_generators, grassmann_aut_generators,
    hodge_relation_checks, induced_column_action, kernel_law_check, lambda_pair, matrix_group_order,
    omega_determines_big_cell, order_checks, outer_doubling_check, parabolic_generators, paut_checks,
    predicted_orders, roots_of_unity, schubert_aut_check, strata_preservation_check, tilde_star_swaps_pieces,
)
from modules.exterior import compound_matrix
from modules.galois_field import fq_make
from modules.linear_codes import build_code, is_permutation_automorphism
from modules.matrix_ops import Matrix, gl_order, parabolic_order
from utils.guards import GuardExceeded
from tests.case_report import raises, report_cases, run_tests

F2 = fq_make(2)


def row_cases(rows):
    """One (label, status, 'PASS') case per report row."""
    return [(f"{r.check_id} {r.params}: {r.predicted} vs {r.observed}", r.status, 'PASS') for r in rows]


def test_report_rows():
    """Report rows compare predicted with observed and print as CSV."""
    ok = ReportRow.compare('chow', format_params(2, 4, F2), 40320, 40320)
    bad = ReportRow.compare('chow', format_params(2, 4, F2), 40320, 20160)
    cases = [
        ("PASS line", ok.to_csv_line(), "chow,(2,4,2),40320,40320,PASS"),
        ("FAIL line", bad.to_csv_line(), "chow,(2,4,2),40320,20160,FAIL"),
        ("passed flag", (ok.passed, bad.passed), (True, False)),
        ("dict keys", list(ok.as_dict()), ['check-id', 'params', 'predicted', 'observed', 'status']),
    ]
    report_cases("Testing report rows:", cases)


def test_lambda_and_roots():
    """lambda = gcd(q-1, l), lambda' = (q-1)/lambda and the roots of unity they name."""
    cases = [
        ("(q, l) = (2, 2)", (lambda_pair(2, 2).lam, lambda_pair(2, 2).lam_prime), (1, 1)),
        ("(q, l) = (5, 2)", (lambda_pair(5, 2).lam, lambda_pair(5, 2).lam_prime), (2, 2)),
        ("(q, l) = (4, 3)", (lambda_pair(4, 3).lam, lambda_pair(4, 3).lam_prime), (3, 1)),
        ("(q, l) = (7, 4)", (lambda_pair(7, 4).lam, lambda_pair(7, 4).lam_prime), (2, 3)),
        ("square roots of 1 in F_5", roots_of_unity(fq_make(5), 2), {1, 4}),
        ("cube roots of 1 in F_4", roots_of_unity(fq_make(2, 2), 3), {1, 2, 3}),
        ("q = 1 rejected", raises(lambda: lambda_pair(1, 2), ValueError), True),
    ]
    report_cases("Testing lambda and roots of unity:", cases)


def test_kernel_and_extension():
    """wedge^l (c I) = I exactly for c in mu_lambda; the extension data at several (l, m, q)."""
    cases = []
    for p, e in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1)]:
        spec = fq_make(p, e)
        checked, bad = kernel_law_check(2, 4, spec)
        cases.append((f"kernel law over F_{spec.q} ({checked} scalars) violations", bad, 0))
    cases.append(("kernel law at l = 3 over F_7", kernel_law_check(3, 5, fq_make(7))[1], 0))
    for l, m, q in [(2, 4, 3), (2, 3, 5), (3, 4, 4)]:
        p, e = (2, 2) if q == 4 else (q, 1)
        cases += row_cases(extension_checks(l, m, fq_make(p, e)))
    report_cases("Testing the kernel law and the extension:", cases)


def test_generators():
    """GL and parabolic generators generate the full groups."""
    f3 = fq_make(3)
    cases = [
        ("GL(3,3)", matrix_group_order(gl_generators(3, f3)), gl_order(3, 3)),
        ("GL(4,2)", matrix_group_order(gl_generators(4, F2)), 20160),
        ("GL(2,4)", matrix_group_order(gl_generators(2, fq_make(2, 2))), gl_order(2, 4)),
        ("P_{2,2}(2)", matrix_group_order(parabolic_generators(2, 2, F2)), 576),
        ("P_{3,2}(2)", matrix_group_order(parabolic_generators(3, 2, F2)), 64512),
        ("P_{1,2}(3)", matrix_group_order(parabolic_generators(1, 2, f3)), parabolic_order(1, 2, 3)),
        ("empty block rejected", raises(lambda: parabolic_generators(0, 2, F2), ValueError), True),
        ("empty generator list", matrix_group_order([]), 1),
    ]
    report_cases("Testing generators:", cases)


def test_predicted_orders():
    """Closed forms at the fixtures."""
    at_242 = predicted_orders(2, 4, F2)
    at_252 = predicted_orders(2, 5, F2)
    at_244 = predicted_orders(2, 4, fq_make(2, 2))
    cases = [
        ("MAut(C(2,4,2))", at_242['MAut(C)'], 40320),
        ("Aut(P) at (2,4,2)", at_242['Aut(P)'], 40320),
        ("PAut(C^A(2,4,2))", at_242['PAut(C^A)'], 1152),
        ("MAut(C^A(2,5,2))", at_252['MAut(C^A)'], 64512),
        ("MAut(C_Omega) = MAut(C^A)", at_252['MAut(C_Omega)'], at_252['MAut(C^A)']),
        ("Aut(C(2,4,4)) = 2 |GL(4,4)| 2", at_244['Aut(C)'], 4 * gl_order(4, 4)),
        ("Aut(W_0) at (2,4,4)", at_244['Aut(W_0)'], 2 * parabolic_order(2, 2, 4) * 2 // 3),
        ("Omega determines W_0 at (2,4)", omega_determines_big_cell(2, 4), True),
        ("Omega does not determine W_0 at (2,3)", omega_determines_big_cell(2, 3), False),
    ]
    report_cases("Testing predicted orders:", cases)


def test_order_checks():
    """Generated orders match the closed forms at (2,4,2) and (2,5,2)."""
    cases = row_cases(order_checks(2, 4, F2)) + row_cases(order_checks(2, 5, F2))
    report_cases("Testing generated group orders:", cases)


def test_order_checks_larger_fields():
    """Generated orders at (2,4,3), and at (2,4,4) where Frobenius doubles every Aut."""
    f3, f4 = fq_make(3), fq_make(2, 2)
    rows3 = order_checks(2, 4, f3)
    rows4 = order_checks(2, 4, f4)
    seen3 = {r.check_id: r.observed for r in rows3}
    seen4 = {r.check_id: r.observed for r in rows4}
    cases = row_cases(rows3) + row_cases(rows4) + [
        ("MAut(C) at (2,4,3)", seen3['MAut(C)'], 48522240),
        ("MAut(C^A) at (2,4,3)", seen3['MAut(C^A)'], 373248),
        ("MAut(C_Omega) at (2,4,3)", seen3['MAut(C_Omega)'], 373248),
        ("PAut(C^A) at (2,4,3)", seen3['PAut(C^A)'], 186624),
        ("no Frobenius rows over a prime field", 'Aut(C)' in seen3, False),
        ("MAut(C) at (2,4,4)", seen4['MAut(C)'], 5922201600),
        ("Aut(C) at (2,4,4)", seen4['Aut(C)'], 2 * 5922201600),
        ("MAut(C^A) at (2,4,4)", seen4['MAut(C^A)'], 16588800),
        ("Aut(C^A) at (2,4,4)", seen4['Aut(C^A)'], 2 * 16588800),
        ("MAut(C_Omega) at (2,4,4)", seen4['MAut(C_Omega)'], 16588800),
        ("Aut(C_Omega) at (2,4,4)", seen4['Aut(C_Omega)'], 2 * 16588800),
        ("PAut(C^A) at (2,4,4)", seen4['PAut(C^A)'], 5529600),
    ]
    report_cases("Testing generated group orders over F_3 and F_4:", cases)


def test_semilinear_generators():
    """Frobenius and the wedge generators are automorphisms of the F_4 codes."""
    f4 = fq_make(2, 2)
    cases = []
    for family, genset in (('grassmann', grassmann_aut_generators(2, 4, f4, semilinear=True)),
                           ('affine', big_cell_aut_generators(2, 4, f4, semilinear=True)),
                           ('schubert', big_cell_aut_generators(2, 4, f4, semilinear=True))):
        code = build_code(family, 2, 4, f4)
        good = sum(generator_is_automorphism(g, code) for g in genset.generators)
        cases.append((f"{family}: {genset.names}", good, len(genset)))
        cases.append((f"{family}: has a Frobenius generator", 'frobenius' in genset.names, True))
    report_cases("Testing semilinear generators:", cases)


def test_column_actions():
    """Column permutations of parabolic generators, and maps that leave the big cell."""
    affine = build_code('affine', 2, 4, F2)
    schubert = build_code('schubert', 2, 4, F2)
    grass = build_code('grassmann', 2, 4, F2)
    unipotent = big_cell_aut_generators(2, 4, F2).generators[-2]
    swap = np.eye(4, dtype=np.int64)
    swap[[0, 3]] = swap[[3, 0]]
    outside = compound_matrix(Matrix(F2, swap), 2)
    pi, s = induced_column_action(unipotent, affine)
    cases = [
        ("scalars are 1 over F_2", bool(np.all(s == 1)), True),
        ("column permutation is a PAut element",
         is_permutation_automorphism(affine, column_permutation(unipotent, affine)), True),
        ("swap e1, e4 is an automorphism of C(2,4)", generator_is_automorphism(outside, grass), True),
        ("swap e1, e4 does not preserve W_0",
         raises(lambda: action_on_vectors([outside], code_vectors('affine', 2, 4, F2)), ValueError), True),
        ("swap e1, e4 is not an automorphism of C_Omega", generator_is_automorphism(outside, schubert), False),
    ]
    report_cases("Testing column actions:", cases)


def test_hodge_relations():
    """Hodge and tilde star identities as report rows."""
    rng = np.random.default_rng(SearchConfig.RANDOM_SEED)
    cases = []
    for l, m, p, e in [(2, 4, 3, 1), (2, 5, 2, 1), (3, 6, 2, 1), (2, 4, 2, 2)]:
        spec = fq_make(p, e)
        cases += row_cases(hodge_relation_checks(l, m, spec, samples=10, rng=rng))
    cases += row_cases(outer_doubling_check(2, 4, F2))
    cases += row_cases(outer_doubling_check(2, 4, fq_make(3)))
    cases.append(("no doubling rows for m != 2l", outer_doubling_check(2, 5, F2), []))
    report_cases("Testing Hodge relations:", cases)


def test_chow_oracle():
    """The collineation group of G(2,4)(F_2) is PGL(4,2) x <tilde star>."""
    result = chow_oracle(2, 4, F2)
    swaps = tilde_star_swaps_pieces(2, F2)
    cases = [
        ("collineation group order", result.order, 40320),
        ("predicted", result.predicted, 40320),
        ("generators inside", result.generators_inside, True),
        ("points and lines", (len(result.points), len(result.lines)), (35, 105)),
        ("tilde star swaps the plane families", swaps['grassmannian'], True),
        ("tilde star swaps the W_1 families", swaps['w1'], True),
        ("incidence guard", raises(lambda: chow_oracle(2, 4, F2, guard=100), GuardExceeded), True),
    ]
    report_cases("Testing the Chow oracle:", cases)


def test_big_cell_and_schubert():
    """Aut(W_0) fixes every stratum, acts faithfully on Omega and preserves C_Omega."""
    rng = np.random.default_rng(SearchConfig.RANDOM_SEED)
    cases = row_cases(strata_preservation_check(2, 4, F2))
    cases += row_cases(strata_preservation_check(2, 4, fq_make(3)))
    cases += row_cases(schubert_aut_check(2, 4, F2, samples=5, rng=rng))
    cases += row_cases(schubert_aut_check(2, 5, F2, samples=5, rng=rng))
    short = schubert_aut_check(2, 3, F2, samples=5, rng=rng)
    cases.append(("m = l + 1 stops after the code check", [r.check_id for r in short][-1], 'schubert_code_preserved'))
    report_cases("Testing big cell and Schubert divisor automorphisms:", cases)


def test_paut():
    """Brute-force PAut(C^A(2,4,2)) = 1152, generated by the parabolic coordinate permutations."""
    rows = paut_checks(2, 4, F2)
    predicted = next(r for r in rows if r.check_id == 'paut_affine_predicted')
    cases = row_cases(rows)
    cases.append(("observed PAut(C^A(2,4,2))", predicted.observed, 1152))
    cases.append(("long codes skipped", paut_checks(2, 4, F2, guard=10), []))
    report_cases("Testing permutation automorphisms:", cases)


def run_all_tests():
    """Run all automorphism tests."""
    return run_tests("AUTOMORPHISM TESTS", [
        test_report_rows,
        test_lambda_and_roots,
        test_kernel_and_extension,
        test_generators,
        test_predicted_orders,
        test_order_checks,
        test_order_checks_larger_fields,
        test_semilinear_generators,
        test_column_actions,
        test_hodge_relations,
        test_chow_oracle,
        test_big_cell_and_schubert,
        test_paut,
    ])


if __name__ == "__main__":
    run_all_tests()
