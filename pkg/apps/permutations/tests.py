"""
Testes de combinatória das classes de permutação.

Roda com: python manage.py test apps.permutations.tests -v 2
"""
import math
from collections import Counter

from django.test import SimpleTestCase, override_settings

from apps.permutations.domain import CycleType, PermClass, SignMode
from apps.permutations.services import (
    class_weight,
    count_marked_partitions,
    cycle_type_of,
    enumerate_classes,
    enumerate_cycle_types,
    enumerate_permutations,
    partition_count,
    permutation_sign,
    representative_permutation,
    validate_permutation,
)
from apps.shared.exceptions import InvalidArgumentError, ResourceLimitError

PARTITIONS = (1, 2, 3, 5, 7, 11, 15, 22, 30, 42)
MARKED = (1, 2, 4, 7, 12, 19, 30, 45, 67, 97)


def _make_type(*parts):
    return CycleType(tuple(parts))


def _marked_key(perm):
    length, j = 1, perm[0]
    while j != 0:
        length += 1
        j = perm[j]
    return cycle_type_of(perm), length


class CycleTypeTest(SimpleTestCase):
    """Tipos de ciclo são partições canônicas."""

    def test_parts_are_sorted_non_increasing(self):
        self.assertEqual(_make_type(1, 2, 1).parts, (2, 1, 1))
        self.assertEqual(_make_type(1, 2), _make_type(2, 1))

    def test_str_and_counts(self):
        t = _make_type(2, 1, 1)
        self.assertEqual(str(t), "[2,1,1]")
        self.assertEqual(t.n, 4)
        self.assertEqual(t.counts(), {2: 1, 1: 2})
        self.assertEqual(len(t), 3)

    def test_invalid_parts(self):
        with self.assertRaises(InvalidArgumentError):
            _make_type()
        with self.assertRaises(InvalidArgumentError):
            _make_type(2, 0)

    def test_factor_carries_signature(self):
        self.assertEqual(PermClass(_make_type(2, 1), 3, -1).factor, -3)


class PartitionTest(SimpleTestCase):

    def test_partition_counts(self):
        self.assertEqual(tuple(partition_count(n) for n in range(1, 11)), PARTITIONS)
        self.assertEqual(partition_count(0), 1)

    def test_three_pairs_order(self):
        types = [str(t) for t in enumerate_cycle_types(3)]
        self.assertEqual(types, ["[3]", "[2,1]", "[1,1,1]"])

    def test_one_pair(self):
        self.assertEqual(enumerate_cycle_types(1), [_make_type(1)])

    def test_types_are_distinct_and_complete(self):
        for n in range(1, 11):
            types = enumerate_cycle_types(n)
            self.assertEqual(len(types), partition_count(n))
            self.assertEqual(len(set(types)), len(types))
            self.assertTrue(all(t.n == n for t in types))

    def test_types_match_explicit_permutations(self):
        """Os tipos vistos nas n! permutações são exatamente as partições."""
        for n in range(1, 7):
            seen = {cycle_type_of(perm) for perm in enumerate_permutations(n)}
            self.assertEqual(seen, set(enumerate_cycle_types(n)))

    def test_invalid_n(self):
        for n in (0, -1, 2.5, True):
            with self.assertRaises(InvalidArgumentError):
                enumerate_cycle_types(n)


class ClassWeightTest(SimpleTestCase):
    """Multiplicidades e assinaturas das classes de conjugação."""

    def test_three_pairs(self):
        weights = {str(c.cycle_type): (c.multiplicity, c.signature) for c in enumerate_classes(3)}
        self.assertEqual(weights, {"[3]": (2, 1), "[2,1]": (3, -1), "[1,1,1]": (1, 1)})

    def test_multiplicities_sum_to_factorial(self):
        for n in range(1, 11):
            total = sum(class_weight(t)[0] for t in enumerate_cycle_types(n))
            self.assertEqual(total, math.factorial(n))

    def test_signed_sum_vanishes(self):
        """Σ sig·mult = 0 para n ≥ 2: metade das permutações é ímpar."""
        for n in range(2, 11):
            self.assertEqual(sum(c.factor for c in enumerate_classes(n)), 0)

    def test_bosonic_signature_is_plus_one(self):
        for n in range(1, 8):
            self.assertTrue(all(c.signature == 1 for c in enumerate_classes(n, SignMode.BOSONIC)))

    def test_weights_match_explicit_count(self):
        for n in range(1, 7):
            counted = Counter(cycle_type_of(perm) for perm in enumerate_permutations(n))
            for t in enumerate_cycle_types(n):
                self.assertEqual(class_weight(t)[0], counted[t])


class MarkedPartitionTest(SimpleTestCase):

    def test_counts_one_to_ten(self):
        self.assertEqual(tuple(count_marked_partitions(n) for n in range(1, 11)), MARKED)

    def test_counts_match_explicit_grouping(self):
        """(tipo de ciclo, comprimento do ciclo de a_1) distintos nas n! permutações."""
        for n in range(1, 7):
            keys = {_marked_key(perm) for perm in enumerate_permutations(n)}
            self.assertEqual(len(keys), count_marked_partitions(n))


class PermutationTest(SimpleTestCase):

    def test_enumeration(self):
        perms = enumerate_permutations(3)
        self.assertEqual(len(perms), 6)
        self.assertEqual(perms[0], (0, 1, 2))
        self.assertEqual(len(set(perms)), 6)

    @override_settings(COBOSON_PERMUTATION_MAX_N=4)
    def test_resource_limit(self):
        enumerate_permutations(4)
        with self.assertRaises(ResourceLimitError):
            enumerate_permutations(5)

    def test_sign_matches_cycle_count(self):
        """sig(P) = (−1)^(n − número de ciclos)."""
        for n in range(1, 6):
            for perm in enumerate_permutations(n):
                expected = (-1) ** (n - len(cycle_type_of(perm)))
                self.assertEqual(permutation_sign(perm), expected)

    def test_representative_has_requested_type(self):
        for n in range(1, 7):
            for t in enumerate_cycle_types(n):
                self.assertEqual(cycle_type_of(representative_permutation(t)), t)
        self.assertEqual(representative_permutation(_make_type(2, 1)), (1, 0, 2))

    def test_validate_permutation(self):
        self.assertEqual(validate_permutation([1, 0]), (1, 0))
        with self.assertRaises(InvalidArgumentError):
            validate_permutation((0, 0))
        with self.assertRaises(InvalidArgumentError):
            validate_permutation((0, 1), n=3)
