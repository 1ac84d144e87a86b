import io
import json
import subprocess
import sys

import pytest

import gausscomp.universal as U
from conftest import DISCS
from gausscomp.classgroup import NARROW, class_group
from gausscomp.cli import run
from gausscomp.forms import BinaryForm, proper_equivalent


def call(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], out=out)
    text = out.getvalue()
    return code, json.loads(text), text


class TestVerbs:
    def test_classgroup(self):
        code, obj, _ = call("classgroup", -23)
        assert code == 0
        assert obj["h"] == 3 and obj["structure"] == [3]
        assert obj["reps"] == [[1, 1, 6], [2, 1, 3], [2, -1, 3]]

    def test_classgroup_narrow(self):
        assert call("classgroup", 12, "--narrow")[1]["h"] == 2
        assert call("classgroup", 12)[1]["h"] == 1

    def test_reduce(self):
        code, obj, _ = call("reduce", 1, 2, 2)
        assert code == 0 and obj == {"form": [1, 0, 1], "map": [1, -1, 0, 1]}

    def test_compose(self):
        assert call("compose", 2, 1, 3, 2, 1, 3)[1] == {"form": [2, -1, 3]}
        assert call("compose", 2, 1, 3, 2, 1, 3, "--oracle")[1] == {"form": [2, -1, 3]}

    def test_equiv(self):
        assert call("equiv", 1, 1, 6, -1, -1, -6)[1]["equivalent"] is True
        assert call("equiv", 2, 1, 3, 2, -1, 3, "--narrow")[1]["equivalent"] is False
        assert call("equiv", 1, 0, -3, -1, 0, 3, "--narrow")[1]["equivalent"] is False
        assert call("equiv", 1, 0, -3, -1, 0, 3, "--wide")[1]["equivalent"] is True

    def test_clifford_and_norm(self):
        code, obj, _ = call("clifford", 2, 1, 3)
        assert code == 0 and obj["ring"] == {"t": 1, "n": 6}
        m = obj["module"]
        code, back, _ = call("norm", m["ring"]["t"], m["ring"]["n"], m["a"], m["b"], m["c"])
        assert code == 0 and back == {"form": [2, 1, 3]}

    def test_norm_validates(self):
        code, obj, _ = call("norm", 1, 6, 1, 1, 6)
        assert code == 2 and set(obj) == {"error", "detail"}

    def test_hecke(self):
        code, obj, _ = call("hecke", -23, 30)
        assert code == 0 and obj["primes"][0]["p"] == 2

    def test_verify_universal(self):
        code, obj, _ = call("verify-universal")
        assert code == 0 and obj["ok"]
        for rep in obj["reports"]:
            assert set(rep["differences"].values()) == {"0"}


class TestErrors:
    @pytest.mark.parametrize("argv", [
        ("reduce", "x", 1, 1),
        ("reduce", 2, 4, 6),
        ("reduce", 1, 2, 1),
        ("reduce", -1, 1, -6),
        ("classgroup", 16),
        ("classgroup", 7),
        ("compose", 1, 0, 1, 1, 1, 6),
        ("hecke", 12, 10),
        ("frobnicate",),
        (),
    ])
    def test_exit_2(self, argv):
        code, obj, _ = call(*argv)
        assert code == 2
        assert set(obj) == {"error", "detail"}

    def test_invariant_exit_1(self, monkeypatch):
        monkeypatch.setattr(U, "VALUE_SIGN", -1)
        code, obj, _ = call("verify-universal")
        assert code == 1 and obj["error"] == "InvariantError"


class TestStability:
    def test_byte_stable(self):
        for argv in (("classgroup", -231), ("hecke", -47, 50), ("compose", 3, 4, -2, -2, 4, 3)):
            assert call(*argv)[2] == call(*argv)[2]

    def test_big_integers_as_strings(self):
        big = 10**30
        code, obj, _ = call("reduce", 1, 1, big)
        assert code == 0 and obj["form"] == [1, 1, str(big)]
        assert call("clifford", 3, 1, big)[1]["ring"]["n"] == str(3 * big)

    @pytest.mark.parametrize("D", DISCS)
    def test_compose_matches_oracle(self, D):
        reps = class_group(D, NARROW).reps
        for f in reps:
            for g in reps:
                args = list(f) + list(g)
                h1 = BinaryForm(*call("compose", *args)[1]["form"])
                h2 = BinaryForm(*call("compose", *args, "--oracle")[1]["form"])
                assert proper_equivalent(h1, h2)

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "gausscomp", "reduce", "1", "2", "2"],
                              capture_output=True, text=True, check=False)
        assert proc.returncode == 0
        assert json.loads(proc.stdout) == {"form": [1, 0, 1], "map": [1, -1, 0, 1]}
