import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import math

import numpy as np

from modules.permutation_group import PermGroup, Permutation, group_order
from tests.case_report import raises, report_cases, run_tests


def _cycle(n):
    return Permutation(np.roll(np.arange(n), -1))


def test_permutations():
    """Composition order, inverses and cycle construction."""
    a = Permutation.from_cycles(4, [(0, 1)])
    b = Permutation.from_cycles(4, [(1, 2)])
    ab = a.then(b)
    cases = [
        ("(0 1) then (1 2) sends 0 to 2", ab(0), 2),
        ("(0 1) then (1 2) sends 2 to 1", ab(2), 1),
        ("inverse undoes", ab.then(ab.inverse()).is_identity(), True),
        ("identity", Permutation.identity(5).is_identity(), True),
        ("moved points of a 3-cycle", Permutation.from_cycles(5, [(1, 2, 3)]).moved_points().tolist(), [1, 2, 3]),
        ("equality", Permutation([1, 0, 2]) == a.then(Permutation.identity(4)), False),
        ("not a permutation", raises(lambda: Permutation([0, 0, 1]), ValueError), True),
        ("degree mismatch", raises(lambda: a.then(Permutation.identity(3)), ValueError), True),
    ]
    report_cases("Testing permutations:", cases)


def test_group_orders():
    """Schreier-Sims orders of standard groups."""
    cases = []
    for n in (3, 5, 8, 12):
        transposition = Permutation.from_cycles(n, [(0, 1)])
        cases.append((f"|S_{n}|", PermGroup(n, [_cycle(n), transposition]).order(), math.factorial(n)))
    for n in (5, 7):
        three = Permutation.from_cycles(n, [(0, 1, 2)])
        long = _cycle(n)
        cases.append((f"|A_{n}|", PermGroup(n, [three, long]).order(), math.factorial(n) // 2))
    cases.append(("cyclic group C_7", group_order([_cycle(7)]), 7))
    cases.append(("trivial group", PermGroup(4, []).order(), 1))
    cases.append(("empty generator list", group_order([], degree=3), 1))
    d8 = PermGroup(4, [_cycle(4), Permutation([0, 3, 2, 1])])
    cases.append(("dihedral group of the square", d8.order(), 8))
    cases.append(("product of basic orbits", int(np.prod(d8.basic_orbit_lengths())), 8))
    report_cases("Testing group orders:", cases)


def test_membership():
    """Sifting membership and orbits."""
    d8 = PermGroup(4, [_cycle(4), Permutation([0, 3, 2, 1])])
    s4 = PermGroup(4, [_cycle(4), Permutation.from_cycles(4, [(0, 1)])])
    cases = [
        ("rotation by two in D_8", d8.contains(Permutation([2, 3, 0, 1])), True),
        ("transposition (0 1) not in D_8", d8.contains(Permutation.from_cycles(4, [(0, 1)])), False),
        ("raw image arrays accepted", d8.contains(np.array([1, 2, 3, 0])), True),
        ("D_8 is a subgroup of S_4", d8.is_subgroup_of(s4), True),
        ("S_4 is not a subgroup of D_8", s4.is_subgroup_of(d8), False),
        ("orbit of 0", sorted(d8.orbit(0)), [0, 1, 2, 3]),
        ("fixed point orbit", PermGroup(3, [Permutation.from_cycles(3, [(0, 1)])]).orbit(2), [2]),
        ("degree mismatch in contains", raises(lambda: d8.contains(Permutation.identity(5)), ValueError), True),
        ("degree mismatch in generators", raises(lambda: PermGroup(3, [_cycle(4)]), ValueError), True),
    ]
    report_cases("Testing membership:", cases)


def test_large_degree():
    """Orders with long stabilizer chains stay exact."""
    n = 60
    cases = [
        ("|S_60| from a cycle and a transposition",
         PermGroup(n, [_cycle(n), Permutation.from_cycles(n, [(0, 1)])]).order(), math.factorial(n)),
    ]
    # (Z/2)^50 acting on 100 points by independent swaps
    swaps = [Permutation.from_cycles(100, [(2 * i, 2 * i + 1)]) for i in range(50)]
    cases.append(("elementary abelian 2^50", PermGroup(100, swaps).order(), 2 ** 50))
    report_cases("Testing large degrees:", cases)


def run_all_tests():
    """Run all permutation group tests."""
    return run_tests("PERMUTATION GROUP TESTS", [
        test_permutations,
        test_group_orders,
        test_membership,
        test_large_degree,
    ])


if __name__ == "__main__":
    run_all_tests()
