import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import math
from fractions import Fraction

import numpy as np

from config.search_config import SearchConfig
from modules.galois_field import fq_make
from modules.linear_codes import (
    LinearCode, big_cell_puncture, build_code, codes_equivalent, expected_parameters, higher_weight,
    is_monomial_automorphism, is_permutation_automorphism, monomial_matrix, parameters, paut_brute_force, puncture,
    random_inequivalent_code, random_monomial_transform, subcode_weight, support_colors, verify_witness,
    weight_distribution,
)
from modules.grassmannian import stratum
from modules.matrix_ops import Matrix
from utils.guards import GuardExceeded
from tests.case_report import raises, report_cases, run_tests

F2 = fq_make(2)


def test_code_parameters():
    """[n, k, d] of the Grassmann codes by exhaustive codeword sweeps."""
    f3 = fq_make(3)
    cases = [
        ("C(2,4) over F_2", parameters(build_code('grassmann', 2, 4, F2)), (35, 6, 16)),
        ("C(2,5) over F_2", parameters(build_code('grassmann', 2, 5, F2)), (155, 10, 64)),
        ("C(2,4) over F_3", parameters(build_code('grassmann', 2, 4, f3)), (130, 6, 81)),
        ("C(3,5) over F_2 has the C(2,5) parameters", parameters(build_code('grassmann', 3, 5, F2)), (155, 10, 64)),
        ("C^A(2,4) over F_2: n, k", parameters(build_code('affine', 2, 4, F2))[:2], (16, 6)),
        ("C_Omega(2,4) over F_2: n, k", parameters(build_code('schubert', 2, 4, F2))[:2], (19, 5)),
        ("closed form for C(2,4,2)", expected_parameters('grassmann', 2, 4, 2), (35, 6, 16)),
        ("closed form for C_Omega(2,4,3)", expected_parameters('schubert', 2, 4, 3), (49, 5, None)),
        ("unknown family rejected", raises(lambda: build_code('reed-muller', 2, 4, F2), ValueError), True),
        ("l = m rejected", raises(lambda: build_code('grassmann', 3, 3, F2), ValueError), True),
    ]
    report_cases("Testing code parameters:", cases)


def test_code_layout():
    """Row and column labels, the affine all-ones row, the missing p_{I_0} row of the Schubert code."""
    grass = build_code('grassmann', 2, 4, F2)
    affine = build_code('affine', 2, 4, F2)
    schubert = build_code('schubert', 2, 4, F2)
    cases = [
        ("Grassmann rows by multi-index", grass.row_labels, ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))),
        ("affine first row is p_{I_0}", affine.row_labels[0], (3, 4)),
        ("affine first row is all ones", affine.genmat[0].tolist(), [1] * 16),
        ("Schubert code has no p_{I_0} row", (3, 4) in schubert.row_labels, False),
        ("columns labelled by points", len(set(grass.labels)), 35),
        ("generator matrix is read-only", grass.genmat.flags.writeable, False),
        ("repr", repr(grass), "LinearCode(grassmann, [35, 6]_2)"),
        ("degenerate code rejected", raises(lambda: LinearCode(F2, [[1, 0]]), ValueError), True),
        ("rank-deficient matrix rejected", raises(lambda: LinearCode(F2, [[1, 1], [1, 1]]), ValueError), True),
        ("label count checked", raises(lambda: LinearCode(F2, [[1, 1]], labels=(0,)), ValueError), True),
    ]
    report_cases("Testing code layout:", cases)


def test_weights():
    """Weight distributions, subcode weights and the second higher weight."""
    code = build_code('grassmann', 2, 4, F2)
    dist = weight_distribution(code)
    word = code.genmat[0]
    unit = np.zeros(code.n, dtype=np.int64)
    unit[0] = 1
    hw = higher_weight(code, 2)
    cases = [
        ("codewords counted", sum(dist.values()), 64),
        ("one zero word", dist[0], 1),
        ("minimum weight", min(w for w in dist if w), 16),
        ("r = 1 is the codeword weight", subcode_weight(code, word).support, int(np.count_nonzero(word))),
        ("full code has support n", subcode_weight(code, code.genmat).support, 35),
        ("full code averaged form", subcode_weight(code, code.genmat).averaged, Fraction(35)),
        ("d_2 of C(2,4,F_2)", hw.weight, 24),
        ("all 2-dimensional subcodes swept", hw.subcodes, 651),
        ("averaged form agrees on every subcode", hw.formula_agrees, True),
        ("non-codeword basis rejected", raises(lambda: subcode_weight(code, unit), ValueError), True),
        ("dependent basis rejected", raises(lambda: subcode_weight(code, np.vstack([word, word])), ValueError), True),
        ("r out of range rejected", raises(lambda: higher_weight(code, 7), ValueError), True),
        ("codeword guard",
         raises(lambda: weight_distribution(build_code('grassmann', 2, 5, F2), guard=100), GuardExceeded), True),
    ]
    report_cases("Testing weights:", cases)


def test_membership():
    """Permutation and monomial automorphism membership."""
    code = LinearCode(F2, [[1, 1, 0], [0, 0, 1]])
    f3 = fq_make(3)
    ternary = LinearCode(f3, [[1, 2, 0], [0, 0, 1]])
    cases = [
        ("swap of the paired columns", is_permutation_automorphism(code, [1, 0, 2]), True),
        ("swap across the pair", is_permutation_automorphism(code, [2, 1, 0]), False),
        ("identity monomial", is_monomial_automorphism(ternary, Matrix.identity(f3, 3)), True),
        ("scaling the pair", is_monomial_automorphism(ternary, monomial_matrix(f3, [0, 1, 2], [2, 2, 1])), True),
        ("scaling one column", is_monomial_automorphism(ternary, monomial_matrix(f3, [0, 1, 2], [2, 1, 1])), False),
        ("wrong degree rejected", raises(lambda: is_permutation_automorphism(code, [0, 1]), ValueError), True),
        ("non-monomial rejected",
         raises(lambda: is_monomial_automorphism(ternary, Matrix.from_rows(f3, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])),
                ValueError), True),
    ]
    report_cases("Testing automorphism membership:", cases)


def test_paut_brute_force():
    """Permutation automorphism groups of small codes."""
    repetition = LinearCode(F2, [[1, 1, 1, 1, 1]])
    paired = LinearCode(F2, [[1, 1, 0], [0, 0, 1]])
    hamming = LinearCode(F2, [[1, 0, 0, 1, 1, 0, 1], [0, 1, 0, 1, 0, 1, 1], [0, 0, 1, 0, 1, 1, 1]])
    cases = [
        ("repetition code", paut_brute_force(repetition).order(), math.factorial(5)),
        ("[[1,1,0],[0,0,1]]", paut_brute_force(paired).order(), 2),
        ("simplex code [7,3] is GL(3,2)", paut_brute_force(hamming).order(), 168),
        ("length guard", raises(lambda: paut_brute_force(build_code('grassmann', 2, 4, F2)), GuardExceeded), True),
    ]
    report_cases("Testing permutation automorphism groups:", cases)


def test_equivalence():
    """Random semilinear images are recognized; codes with other weight distributions are not."""
    rng = np.random.default_rng(SearchConfig.RANDOM_SEED)
    cases = []
    for family in ('grassmann', 'affine', 'schubert'):
        code = build_code(family, 2, 4, F2)
        found = 0
        for _ in range(3):
            image, _ = random_monomial_transform(code, rng)
            witness = codes_equivalent(code, image)
            found += witness is not None and verify_witness(code, image, witness, exhaustive=True)
        cases.append((f"{family}: witnesses found and verified", found, 3))
        other = random_inequivalent_code(code, rng)
        cases.append((f"{family}: inequivalent code", codes_equivalent(code, other), None))
    f4 = fq_make(2, 2)
    code = build_code('schubert', 2, 4, f4)
    image, _ = random_monomial_transform(code, rng)
    witness = codes_equivalent(code, image)
    cases.append(("F_4 Schubert code with a random Frobenius twist",
                  witness is not None and verify_witness(code, image, witness, exhaustive=True), True))
    cases.append(("different fields rejected",
                  raises(lambda: codes_equivalent(code, build_code('schubert', 2, 4, F2)), ValueError), True))
    report_cases("Testing equivalence:", cases)


def test_uniform_support_structure():
    """C^A(2,4,F_2) has one support-profile class on its columns; the search still ends quickly."""
    rng = np.random.default_rng(SearchConfig.RANDOM_SEED + 1)
    code = build_code('affine', 2, 4, F2)
    colors, _ = support_colors([code])
    image, _ = random_monomial_transform(code, rng)
    witness = codes_equivalent(code, image)
    cases = [
        ("one column class", len(set(np.diag(colors[0]).tolist())), 1),
        ("witness under the default node guard", witness is not None, True),
        ("witness verified exhaustively",
         witness is not None and verify_witness(code, image, witness, exhaustive=True), True),
        ("self-equivalence", verify_witness(code, code, codes_equivalent(code, code), exhaustive=True), True),
        ("PAut of C^A(2,4,F_2)", paut_brute_force(code).order(), 1152),
        ("node guard", raises(lambda: codes_equivalent(code, image, max_nodes=0), GuardExceeded), True),
    ]
    report_cases("Testing equivalence on a uniform support structure:", cases)


def test_big_cell_puncture():
    """C(2,4) punctured to the big cell is equivalent to C^A(2,4)."""
    punctured = big_cell_puncture(build_code('grassmann', 2, 4, F2))
    affine = build_code('affine', 2, 4, F2)
    witness = codes_equivalent(punctured, affine)
    cases = [
        ("big cell columns kept", (punctured.n, punctured.k), (16, 6)),
        ("stratum 0 only", {stratum(g, 2, 4) for g in punctured.labels}, {0}),
        ("same weight distribution", weight_distribution(punctured), weight_distribution(affine)),
        ("witness found", witness is not None, True),
        ("witness verified exhaustively",
         witness is not None and verify_witness(punctured, affine, witness, exhaustive=True), True),
    ]
    report_cases("Testing the big cell puncture:", cases)


def test_puncture():
    """Deleting columns keeps the dimension unless the code collapses."""
    code = build_code('grassmann', 2, 4, F2)
    small = LinearCode(F2, [[1, 0, 1], [0, 1, 1]])
    cases = [
        ("one column removed", (puncture(code, [0]).n, puncture(code, [0]).k), (34, 6)),
        ("labels follow the columns", puncture(code, [0]).labels, code.labels[1:]),
        ("dimension drop", puncture(small, [1, 2]).k, 1),
        ("out of range rejected", raises(lambda: puncture(code, [35]), ValueError), True),
    ]
    report_cases("Testing puncturing:", cases)


def run_all_tests():
    """Run all linear code tests."""
    return run_tests("LINEAR CODE TESTS", [
        test_code_parameters,
        test_code_layout,
        test_weights,
        test_membership,
        test_paut_brute_force,
        test_equivalence,
        test_uniform_support_structure,
        test_big_cell_puncture,
        test_puncture,
    ])


if __name__ == "__main__":
    run_all_tests()
