import pytest

from fscoloring import pi3
from fscoloring.dyadic import apart, block, low_bit, top_bit
from fscoloring.errors import VerificationError, WitnessSearchError
from fscoloring.families import SetSpec, monotone_catalog, monotone_from_sets

ODD = SetSpec.powers(modulus=2, residue=1, min_exponent=1)


@pytest.fixture(scope="module")
def catalog():
    return monotone_catalog("instant")


@pytest.fixture(scope="module")
def single():
    return monotone_from_sets([ODD])


class TestGuesses:
    def test_guess_element_examples(self, single):
        assert pi3.guess_element(single, 0, 1, 4, 5) == 2
        assert pi3.guess_element(single, 0, 2, 4, 5) == 4  # empty block, tie on least
        assert pi3.guess_element(single, 0, 3, 4, 0) == 8  # stage 0 ties everywhere

    def test_guess_bound_examples(self, single):
        assert pi3.guess_bound(single, 0, 1, 4, 5) == 0
        assert pi3.guess_bound(single, 0, 2, 4, 5) == 5
        assert pi3.guess_bound(single, 0, 2, 4, 0) == 0

    def test_fast_path_matches_scan(self, catalog):
        for i in range(catalog.count):
            for n in range(6):
                for s in (0, 2, 9):
                    fast = pi3.guess_element(catalog, i, n, 3, s)
                    slow = min(
                        range(1 << n, 1 << (n + 1)),
                        key=lambda x: (catalog.evaluate(i, x, 3, s), x),
                    )
                    assert fast == slow


class TestStageIndex:
    def test_single_family(self, single):
        for (y, k, s) in [(2, 2, 2), (3, 5, 7), (4, 4, 9)]:
            assert pi3.stage_index(single, 1, y, k, s) == 0
        assert pi3.stage_index(single, 2, 3, 3, 3) is None

    def test_catalog_priority(self, catalog):
        assert pi3.stage_index(catalog, 1, 3, 4, 5) == 0
        assert pi3.stage_index(catalog, 2, 3, 4, 5) == 1
        assert pi3.stage_index(catalog, 4, 5, 6, 7) == 2

    def test_domain_errors(self, single):
        for bad in [(0, 2, 3, 4), (2, 2, 3, 4), (1, 2, 1, 4), (1, 2, 5, 4)]:
            with pytest.raises(ValueError):
                pi3.stage_index(single, *bad)

    def test_injective_per_column(self, catalog):
        for (y, k, s) in [(5, 6, 8), (6, 9, 12), (7, 7, 20)]:
            seen = {}
            for n in range(1, y):
                value = pi3.stage_index(catalog, n, y, k, s)
                if value is not None:
                    assert value not in seen, "index %r reused" % value
                    seen[value] = n


class TestGuessRequest:
    def test_examples(self, single):
        assert pi3.q_fn(single, 1, 3, 5, 7) == 8
        assert pi3.q_fn(single, 1, 2, 5, 7) == 4
        # off the staged domain the default is the block root
        assert pi3.q_fn(single, 1, 1, 5, 7) == 2
        assert pi3.q_fn(single, 3, 4, 2, 7) == 16

    def test_in_block(self, catalog):
        for n in (1, 2):
            for y in range(n + 1, 8):
                for k in range(y, 10):
                    value = pi3.q_fn(catalog, n, y, k, 12)
                    assert top_bit(value) == y


class TestRequest:
    def test_examples(self, single):
        assert pi3.request(single, 1, 32) == 2  # block roots count zero
        assert pi3.request(single, 1, 40) == 3
        assert pi3.request(single, 0, 40) == 1

    def test_type_soundness(self, catalog):
        for w in list(range(32, 64)) + [168, 5456]:
            for n in range(min(4, low_bit(w))):
                assert top_bit(pi3.request(catalog, n, w)) == n

    def test_contract_sweep_exhaustive(self, catalog):
        color = pi3.coloring(catalog)
        for s in range(1, 9):
            for w in range(1 << s, 1 << (s + 1)):
                for n in range(min(4, low_bit(w))):
                    assert color(w) != color(w + pi3.request(catalog, n, w))

    def test_contract_sweep_delayed(self):
        family = monotone_catalog("delayed")
        color = pi3.coloring(family)
        for s in range(1, 7):
            for w in range(1 << s, 1 << (s + 1)):
                for n in range(min(3, low_bit(w))):
                    assert color(w) != color(w + pi3.request(family, n, w))

    def test_contract_spot_checks_large_exponent(self, catalog):
        # vertices near exponent 20, reachable only through the fast
        # divide-and-conquer evaluators
        color = pi3.coloring(catalog)
        for w in ((1 << 20), (1 << 20) + (1 << 13) + (1 << 7) + (1 << 4),
                  (1 << 20) + 0b10101010101010101000):
            for n in range(min(3, low_bit(w))):
                assert color(w) != color(w + pi3.request(catalog, n, w))

    def test_root_colors(self, catalog):
        color = pi3.coloring(catalog)
        for s in range(0, 10):
            assert color(1 << s) == 0  # total on positives: color(1) is 0 too

    def test_example_pair(self, single):
        color = pi3.coloring(single)
        assert pi3.request(single, 1, 32) == 2
        assert color(32) != color(34)


class TestStableIndex:
    def test_single(self, single):
        assert pi3.stable_index(single, 1) == 0
        assert pi3.stable_index(single, 2) is None

    def test_catalog_walk(self, catalog):
        assert [pi3.stable_index(catalog, n) for n in range(1, 7)] == [0, 1, None, 2, 3, None]

    def test_staged_settling(self, catalog):
        for n in range(1, 6):
            assert pi3.check_stage_settling(catalog, n) == pi3.stable_index(catalog, n)

    def test_staged_settling_delayed(self):
        family = monotone_catalog("delayed")
        for n in (1, 2):
            assert pi3.check_stage_settling(family, n) == pi3.stable_index(family, n)


class TestChains:
    def test_example_chain(self, single):
        chain = pi3.build_chain(single, 0, 1, 3, 1)
        assert chain.elements == (8, 32, 128)

    def test_single_element(self, single):
        chain = pi3.build_chain(single, 0, 1, 1, 4)
        assert len(chain.elements) == 1
        assert low_bit(chain.elements[0]) > 4

    def test_delayed_stretches_stage(self):
        family = monotone_catalog("delayed")
        chain = pi3.build_chain(family, 0, 1, 3, 1)
        # guesses need the ramp to pass the member ceiling: stage >= 2+1+6
        assert chain.final_stage >= 9

    def test_blind_chain(self, single):
        chain = pi3.build_chain(single, 0, 1, 3, 1, mode="blind")
        assert len(chain.elements) == 3
        for a, b in zip(chain.elements, chain.elements[1:]):
            assert apart(a, b)


class TestDistinctRequests:
    def test_exponent_one(self, single):
        spread = pi3.distinct_requests(single, 0, 1)
        assert sorted(spread.requests) == [2, 3]
        assert spread.sums == (sum(spread.chain.elements), sum(spread.chain.elements[1:]))

    def test_exponent_two_exhausts_block(self):
        evens = monotone_from_sets([SetSpec.powers(modulus=2, residue=0, min_exponent=2)])
        assert pi3.stable_index(evens, 2) == 0
        spread = pi3.distinct_requests(evens, 0, 2)
        assert sorted(spread.requests) == block(2)

    def test_consecutive_residue_steps(self, single):
        engine = pi3.Pi3Engine(single)
        spread = pi3.distinct_requests(single, 0, 1)
        counts = [engine.base_count(1, w) for w in spread.sums]
        for a, b in zip(counts, counts[1:]):
            assert (a - b) % 2 == 1

    def test_low_bits_above_exponent(self, single):
        spread = pi3.distinct_requests(single, 0, 1)
        assert all(low_bit(w) > 1 for w in spread.sums)


class TestFindWitness:
    def test_instant(self, catalog):
        witness = pi3.find_witness(catalog, 0)
        assert witness.block_exponent == 1 and witness.x == 2
        assert pi3.request(catalog, 1, witness.w) == 2
        assert witness.color_w != witness.color_w_plus_x

    def test_second_family(self, catalog):
        witness = pi3.find_witness(catalog, 1)
        assert witness.block_exponent == 2 and witness.x == 4

    def test_delayed(self):
        family = monotone_catalog("delayed")
        witness = pi3.find_witness(family, 0)
        assert witness.x == 2
        assert witness.bookkeeping["final_stage"] >= 9

    def test_blind(self, catalog):
        witness = pi3.find_witness(catalog, 0, mode="blind")
        assert witness.mode == "blind"
        assert witness.color_w != witness.color_w_plus_x

    def test_rejects_non_weak_apart(self, catalog):
        with pytest.raises(WitnessSearchError):
            pi3.find_witness(catalog, 2)

    def test_guard_exhaustion(self, catalog):
        with pytest.raises(WitnessSearchError) as failure:
            pi3.find_witness(catalog, 1, max_request_exponent=1)
        assert failure.value.quantifier == "stable block exponent"

    def test_verification_rejects_tampering(self, catalog):
        witness = pi3.find_witness(catalog, 0)
        tampered = pi3.Pi3Witness(
            index=witness.index, block_exponent=witness.block_exponent,
            x=witness.x, w=witness.w,
            color_w=witness.color_w_plus_x, color_w_plus_x=witness.color_w,
            chain=witness.chain, sums=witness.sums, requests=witness.requests,
            mode=witness.mode,
        )
        with pytest.raises(VerificationError):
            pi3.verify_witness(catalog, tampered)


def test_deep_block_exponent_three():
    deep = monotone_from_sets([SetSpec.powers(modulus=2, residue=1, min_exponent=3)])
    assert pi3.stable_index(deep, 3) == 0
    spread = pi3.distinct_requests(deep, 0, 3)
    assert sorted(spread.requests) == block(3)
    witness = pi3.find_witness(deep, 0)
    assert witness.block_exponent == 3 and witness.x == 8
