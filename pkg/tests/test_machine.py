import random

import pytest

from ordlang.acceptance import demo_machine
from ordlang.machine import (
    Configuration,
    MachineError,
    TapeState,
    TapeUnderflow,
    TuringMachine,
    compile_step,
    config_from_dict,
    config_to_dict,
    config_width,
    decode_config,
    encode_config,
    machine_from_dict,
    machine_to_dict,
    simulate_via_language,
    tm_run,
    tm_step,
)
from ordlang.ordinal import OMEGA, from_int, omega_pow
from ordlang.sampling import random_configuration


def identity_machine() -> TuringMachine:
    # every state keeps itself and moves right
    return TuringMachine(1, 1, 2, {(1, (1,)): (1, (0,)), (1, (2,)): (1, (0,))})


class TestStep:
    def test_right_move_extends_with_blank(self):
        cfg = Configuration(1, (TapeState((), 2, ()),))
        out = tm_step(identity_machine(), cfg)
        assert out == Configuration(1, (TapeState((2,), 1, ()),))

    def test_write(self):
        m = demo_machine()
        out = tm_step(m, Configuration(1, (TapeState((), 1, ()),)))
        assert out == Configuration(2, (TapeState((), 2, ()),))

    def test_hand_simulated_three_steps(self):
        m = demo_machine()
        cfg = Configuration(1, (TapeState((), 1, ()),))
        cfg = tm_step(m, cfg)
        assert cfg == Configuration(2, (TapeState((), 2, ()),))
        cfg = tm_step(m, cfg)
        assert cfg == Configuration(1, (TapeState((2,), 1, ()),))
        cfg = tm_step(m, cfg)
        assert cfg == Configuration(2, (TapeState((2,), 2, ()),))

    def test_left_edge_is_an_error(self):
        m = TuringMachine(1, 1, 1, {(1, (1,)): (1, (-1,))})
        with pytest.raises(TapeUnderflow, match="tape underflow"):
            tm_step(m, Configuration(1, (TapeState((), 1, ()),)))

    def test_two_steps_equal_run_two(self):
        m = demo_machine()
        cfg = Configuration(1, (TapeState((), 1, (2, 1)),))
        assert tm_step(m, tm_step(m, cfg)) == tm_run(m, cfg, 2)

    def test_run_zero_is_identity(self):
        cfg = Configuration(1, (TapeState((), 1, ()),))
        assert tm_run(demo_machine(), cfg, 0) == cfg

    def test_appender_grows_tape_per_two_steps(self):
        m = demo_machine()
        cfg = Configuration(1, (TapeState((), 1, ()),))
        for s in range(1, 5):
            grown = tm_run(m, cfg, 2 * s)
            assert len(grown.tapes[0].left) == s


class TestValidation:
    def test_partial_table_rejected(self):
        with pytest.raises(MachineError, match="total"):
            TuringMachine(1, 1, 2, {(1, (1,)): (1, (0,))})

    def test_bad_action_rejected(self):
        with pytest.raises(MachineError, match="action"):
            TuringMachine(1, 1, 1, {(1, (1,)): (1, (5,))})

    def test_bad_state_rejected(self):
        with pytest.raises(MachineError, match="state"):
            TuringMachine(1, 1, 1, {(1, (1,)): (2, (0,))})


class TestEncoding:
    def test_shape(self):
        cfg = Configuration(1, (TapeState((), 1, ()),))
        assert encode_config(cfg, 0, 2).components == ("1", "", "1", "", "11")

    def test_round_trip(self):
        m = demo_machine()
        rng = random.Random(3)
        for _ in range(200):
            cfg = random_configuration(rng, m)
            t, size = rng.randint(0, 5), rng.randint(2, 6)
            back, t_back = decode_config(encode_config(cfg, t, size), m, size)
            assert back == cfg and t_back == t

    def test_right_part_is_reversed(self):
        cfg = Configuration(1, (TapeState((1,), 2, (1, 2)),))
        parts = encode_config(cfg, 0, 3).components
        assert parts[1:4] == ("1", "2", "21")

    def test_padding_dominates_length(self):
        cfg = Configuration(1, (TapeState((1, 1), 1, (1,)),))
        x = encode_config(cfg, 0, config_width(cfg))
        assert x.length() == config_width(cfg) == 4

    @pytest.mark.parametrize("components", [
        ("1", "", "1", "11"),           # wrong arity
        ("9", "", "1", "", "11"),       # state out of range
        ("1", "", "13", "", "11"),      # scanned not a single symbol
        ("1", "3", "1", "", "11"),      # symbol out of range
        ("1", "", "1", "", "12"),       # padding must be all ones
    ])
    def test_malformed_data_rejected(self, components):
        from ordlang.rewriter import Datum
        with pytest.raises(MachineError):
            decode_config(Datum(components), demo_machine())


class TestCompiledStep:
    def test_defining_property(self):
        m = demo_machine()
        compiled = compile_step(m)
        rng = random.Random(9)
        for _ in range(100):
            cfg = random_configuration(rng, m)
            t = rng.randint(0, 4)
            size = max(rng.randint(2, 6), config_width(cfg))
            x = encode_config(cfg, t, size)
            assert compiled.apply(x) == encode_config(tm_step(m, cfg), t + 1, size)

    def test_dominated_padding_rejected(self):
        m = demo_machine()
        compiled = compile_step(m)
        cfg = Configuration(1, (TapeState((1, 1, 1), 1, (1, 1)),))
        with pytest.raises(MachineError, match="dominate"):
            compiled.apply(encode_config(cfg, 0, 2))

    def test_length_grows_by_one(self):
        m = demo_machine()
        compiled = compile_step(m)
        rng = random.Random(10)
        for _ in range(100):
            cfg = random_configuration(rng, m, max_width=3)
            x = encode_config(cfg, rng.randint(0, 4), max(2, config_width(cfg)))
            assert compiled.apply(x).length() == x.length() + 1

    def test_iterated_application_matches_run(self):
        m = demo_machine()
        compiled = compile_step(m)
        cfg = Configuration(1, (TapeState((), 1, (1,)),))
        x = encode_config(cfg, 0, 2)
        for _ in range(6):
            x = compiled.apply(x)
        decoded, t = decode_config(x, m, 2)
        assert t == 6 and decoded == tm_run(m, cfg, 6)


class TestSimulation:
    def test_single_step_at_one(self):
        m = demo_machine()
        start = Configuration(1, (TapeState((), 1, (1,)),))
        result = simulate_via_language(m, from_int(1), start)
        assert result.steps_simulated == 1
        assert result.config == tm_step(m, start)

    @pytest.mark.parametrize("ordinal,steps", [(OMEGA, 3), (omega_pow(from_int(2)), 9)])
    def test_loop_counts(self, ordinal, steps):
        m = demo_machine()
        start = Configuration(1, (TapeState((), 1, (1,)),))
        result = simulate_via_language(m, ordinal, start)
        assert result.steps_simulated == steps
        assert result.config == tm_run(m, start, steps)

    def test_narrow_input_rejected(self):
        m = demo_machine()
        start = Configuration(1, (TapeState((), 1, ()),))
        with pytest.raises(Exception, match="width"):
            simulate_via_language(m, OMEGA, start)


class TestJson:
    def test_machine_round_trip(self):
        m = demo_machine()
        again = machine_from_dict(machine_to_dict(m))
        assert again.table == m.table and again.states == m.states

    def test_config_round_trip(self):
        cfg = Configuration(2, (TapeState((1,), 2, (2, 1)),))
        assert config_from_dict(config_to_dict(cfg)) == cfg

    def test_duplicate_entry_rejected(self):
        data = machine_to_dict(demo_machine())
        data["table"].append(data["table"][0])
        with pytest.raises(MachineError, match="duplicate"):
            machine_from_dict(data)
