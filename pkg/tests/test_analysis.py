import random

import pytest

from ordlang.analysis import (
    BoundedValue,
    CapExceeded,
    TowerBound,
    WainerBound,
    bounded_size_fn,
    elem_bound,
    grz_bounds,
    render_bound,
    runtime_bound,
    size_fn,
    tower_num,
    wainer,
)
from ordlang.language import synthesize
from ordlang.ordinal import (
    OMEGA,
    add,
    from_int,
    mul_nat,
    omega_pow,
    parse_ordinal,
)
from ordlang.rewriter import length_run

W = OMEGA
W2 = omega_pow(from_int(2))
W_W = omega_pow(W)


class TestSizeFn:
    @pytest.mark.parametrize("c", [1, 2, 3, 4])
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_polynomial_powers(self, c, n):
        assert size_fn(omega_pow(from_int(c)), n) == (n + 1) ** c

    def test_first_superexponential_value(self):
        assert size_fn(W_W, 2) == 27

    def test_mixed_with_application_shift(self):
        assert size_fn(add(W_W, W), 2) == 3 + 6 ** 6

    def test_additive_below_w_w(self):
        alpha = parse_ordinal("w^2*2+w*3+4")
        assert size_fn(alpha, 2) == 2 * 9 + 3 * 3 + 4

    def test_matches_execution_up_to_w3(self):
        rng = random.Random(19)
        for _ in range(40):
            a, b, c = rng.randint(0, 2), rng.randint(0, 3), rng.randint(0, 3)
            alpha = add(add(mul_nat(omega_pow(from_int(3)), a),
                            mul_nat(W2, b)), from_int(c))
            if alpha.is_zero():
                continue
            for n in (2, 3, 4):
                got = size_fn(alpha, n)
                assert got == length_run(synthesize(alpha), n).final_length - n

    def test_matches_execution_at_superexponential_edge(self):
        # the two nested-loop compositions that are still runnable
        for alpha in (W_W, add(W_W, W)):
            assert size_fn(alpha, 2) == length_run(synthesize(alpha), 2).final_length - 2

    def test_two_loops_stack_sequentially(self):
        # compositional value: standalone first loop, second at the grown length;
        # far too many steps to cross-check by execution, but pinned by the
        # tower sandwich l_2 <= 2 + value <= (l+2)_2
        value = size_fn(mul_nat(W_W, 2), 2)
        assert value == 27 + 30 ** 30
        assert tower_num(3, 2, 3) <= 2 + value <= tower_num(5, 2, 5)

    def test_additive_composition_below_w_w(self):
        # split a polynomial-range ordinal into absorption-free halves
        from ordlang.ordinal import Ordinal
        from ordlang.sampling import random_ordinal
        rng = random.Random(61)
        checked = 0
        while checked < 200:
            alpha = random_ordinal(rng, depth=1, max_coeff=3, max_terms=4)
            if len(alpha.terms) < 2:
                continue
            cut = rng.randint(1, len(alpha.terms) - 1)
            beta = Ordinal(alpha.terms[:cut])
            gamma = Ordinal(alpha.terms[cut:])
            assert add(beta, gamma) == alpha
            n = rng.randint(2, 5)
            assert size_fn(alpha, n) == size_fn(beta, n) + size_fn(gamma, n)
            checked += 1

    def test_cap_produces_overflow(self):
        with pytest.raises(CapExceeded) as info:
            size_fn(W_W, 5, cap_bits=10)
        assert 10 < info.value.bits_lower_bound <= (6 ** 6).bit_length()

    def test_bounded_variant(self):
        assert bounded_size_fn(W_W, 2).value == 27
        assert bounded_size_fn(omega_pow(add(W, from_int(1))), 2).overflow_bits is not None

    def test_rejects_short_input(self):
        with pytest.raises(ValueError):
            size_fn(W, 1)


class TestRuntimeBound:
    def test_acyclic_is_exact(self):
        for m in (1, 2, 7):
            assert runtime_bound(from_int(m), 3) == m

    @pytest.mark.parametrize("c", [1, 2, 3])
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_published_polynomial_bound(self, c, n):
        l = n + 1
        assert runtime_bound(omega_pow(from_int(c)), n) <= l ** c + l * c * c

    def test_dominates_engine_cost(self):
        rng = random.Random(23)
        for _ in range(40):
            a, b, c = rng.randint(0, 2), rng.randint(0, 3), rng.randint(0, 3)
            alpha = add(add(mul_nat(omega_pow(from_int(3)), a),
                            mul_nat(W2, b)), from_int(c))
            if alpha.is_zero():
                continue
            for n in (2, 3, 4):
                cost = length_run(synthesize(alpha), n).total_cost
                assert cost <= runtime_bound(alpha, n)

    def test_zero(self):
        assert runtime_bound(parse_ordinal("0"), 2) == 0


class TestWainer:
    @pytest.mark.parametrize("n", range(1, 11))
    def test_doubling_base(self, n):
        assert wainer(from_int(1), n) == BoundedValue.exact(2 * n + 1)

    def test_second_level_matches_iteration(self):
        value = 2
        for _ in range(3):
            value = 2 * value + 1
        assert wainer(from_int(2), 2).value == value == 23

    def test_printed_closed_form_is_wrong(self):
        l = 3
        assert wainer(from_int(2), 2).value == l * 2 ** l - 1 != 2 ** l - 1

    @pytest.mark.parametrize("n", [1, 2])
    def test_limit_unfolds_at_its_argument(self, n):
        assert wainer(W, n) == wainer(from_int(n), n)

    def test_iterated_second_level(self):
        assert wainer(from_int(2), 23).value == 402653183

    def test_overflow_carries_floor(self):
        got = wainer(from_int(3), 2)
        assert got.value is None and got.overflow_bits > 10 ** 6

    def test_overflow_respects_custom_cap(self):
        assert wainer(from_int(2), 2, cap_bits=4) == BoundedValue.overflow(5)

    def test_rejects_zero_index(self):
        with pytest.raises(ValueError):
            wainer(parse_ordinal("0"), 2)

    def test_monotone_small_cases(self):
        for c in (1, 2):
            f = from_int(c)
            assert wainer(f, 2).value < wainer(f, 3).value
        for n in (1, 2):
            assert wainer(from_int(1), n).value < wainer(from_int(2), n).value


class TestTowers:
    def test_examples(self):
        assert tower_num(3, 1, 3) == 27
        assert tower_num(3, 2, 3) == 7625597484987
        assert tower_num(2, 2, 5) == 2 ** 32

    def test_height_zero(self):
        assert tower_num(9, 0, 4) == 4

    def test_growth_bound_instance(self):
        f2 = wainer(from_int(2), 2).value
        assert wainer(from_int(2), f2).value <= tower_num(3, 2, 3)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            tower_num(3, 3, 3, cap_bits=100)


class TestElemBound:
    def test_base_cases(self):
        assert elem_bound(0, 7) == 7
        assert elem_bound(1, 3) == 81
        assert elem_bound(2, 3) == 3 ** 5

    def test_level_three_is_a_tower(self):
        # H_3(l) = l^(l^(l^(2+l))) is far beyond any feasible cap at l = 3
        with pytest.raises(CapExceeded):
            elem_bound(3, 3, cap_bits=10 ** 6)

    def test_majorizes_size_at_level_one(self):
        assert 2 + size_fn(W_W, 2) == 29 <= elem_bound(1, 3)

    def test_rejects_small_l(self):
        with pytest.raises(ValueError):
            elem_bound(1, 2)


class TestGrzBounds:
    def test_superexponential_multiples(self):
        assert grz_bounds(mul_nat(W_W, 2)) == (TowerBound(0, 2), TowerBound(2, 2))

    def test_first_tower(self):
        lower, upper = grz_bounds(W_W)
        assert render_bound(lower) == "l_1" and render_bound(upper) == "(l+2)_1"

    def test_elementary_levels(self):
        lower, upper = grz_bounds(omega_pow(add(W, from_int(1))))
        assert (lower, upper) == (WainerBound(from_int(3), 0), WainerBound(from_int(3), 1))

    def test_two_nested_levels(self):
        lower, upper = grz_bounds(omega_pow(add(mul_nat(W, 2), from_int(3))))
        index = add(W, from_int(3))
        assert (lower, upper) == (WainerBound(index, 0), WainerBound(index, 2))

    def test_large_levels(self):
        lower, upper = grz_bounds(omega_pow(W2))
        assert (lower, upper) == (WainerBound(W2, -1), WainerBound(W2, 1))
        assert render_bound(lower) == "F_(w^2)(n-1)"

    def test_below_threshold_rejected(self):
        with pytest.raises(ValueError, match="polynomial"):
            grz_bounds(W2)

    def test_non_milestone_rejected(self):
        with pytest.raises(ValueError, match="milestone"):
            grz_bounds(add(W_W, W))


class TestBigNumberFormatting:
    def test_astronomical_floor_message_is_printable(self):
        from ordlang.analysis import format_nat
        with pytest.raises(CapExceeded) as info:
            runtime_bound(mul_nat(W_W, 3), 4)
        assert "about 2^" in str(info.value)
        assert format_nat(info.value.bits_lower_bound)  # never trips str limits

    def test_bounded_value_str_forms(self):
        assert str(BoundedValue.exact(23)) == "23"
        assert str(BoundedValue.overflow(77)) == "overflow(>= 77 bits)"


class TestCapResolution:
    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("ORDLANG_CAP_BITS", "8")
        with pytest.raises(CapExceeded):
            size_fn(W_W, 4)

    def test_explicit_beats_env(self, monkeypatch):
        monkeypatch.setenv("ORDLANG_CAP_BITS", "8")
        assert size_fn(W_W, 4, cap_bits=10 ** 6) == 5 ** 5
