from __future__ import annotations

import json

import pytest

from coincidence.cli import main


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
        return str(path)

    return write


def test_group_derived(files, capsys):
    path = files("sl2_3.json", {"modulus": 3, "generators": [[1, 1, 0, 1], [0, 2, 1, 0]]})
    assert main(["group", "derived", "--in", path, "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["order"] == 8 and out["index_in_sl2"] == 3 and out["abelian_invariants"] == [3]


def test_lift_split_gl2_3(files, capsys):
    path = files("gl2_3.json", {"modulus": 3, "generators": [[2, 0, 0, 1], [1, 1, 0, 1], [0, 2, 1, 0]]})
    assert main(["lift", "split", "--group", path, "--to", "9", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["status"] == "liftable" and out["order"] == 48


def test_lift_element_not_liftable_exits_1(capsys):
    assert main(["lift", "element", "--matrix", "1,1,0,1", "--mod", "5", "--to", "25"]) == 1
    assert "not_liftable" in capsys.readouterr().out


def test_lift_complement(files, capsys):
    path = files("h.json", {"modulus": 4, "generators": [[0, 1, 1, 0], [3, 0, 0, 1], [1, 2, 0, 1], [1, 0, 2, 1], [3, 0, 0, 3]]})
    assert main(["lift", "complement", "--group", path, "--m", "2", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["order"] == 2


def test_padic_profile(files, capsys):
    path = files("img.json", {"p": 2, "depth": 2, "group": {"modulus": 4, "generators": [[0, 1, 1, 0]]}})
    assert main(["padic", "profile", "--in", path, "--kmax", "4", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["u"] == [16, 1, 1] and out["coincidences"] == [[2, 4]]
    assert main(["padic", "ratios", "--p", "3", "--u", "1,3"]) == 1


def test_audit_exit_codes(files, capsys):
    rec = files("r.json", {"field_disc_primes": [], "conductor_norm_primes": [11], "local": [{"p": 7, "ideals": [{"e": 1, "reduction": "good_ordinary"}]}]})
    assert main(["audit", "5", "35", "--record", rec]) == 1
    assert "obstructed" in capsys.readouterr().out
    ok = files("ok.json", {"field_disc_primes": [], "conductor_norm_primes": [7], "local": [{"p": 7, "ideals": [{"reduction": "multiplicative_split"}]}]})
    assert main(["audit", "5", "35", "--record", ok, "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["overall"] == "constraint_satisfied"


def test_malformed_input_exits_2(files, capsys):
    bad = files("bad.json", {"local": [{"p": 7, "ideals": [{"e": 1, "reduction": "weird"}]}]})
    assert main(["audit", "5", "35", "--record", bad]) == 2
    err = capsys.readouterr().err
    assert "bad.json" in err and "reduction" in err
    assert main(["group", "order", "--in", files("broken.json", "{")]) == 2
    assert main(["lift", "split"]) == 2
    assert main(["nonsense"]) == 2


def test_xcurve(capsys):
    assert main(["xcurve", "eval", "--t", "1"]) == 0
    assert "-36" in capsys.readouterr().out
    assert main(["xcurve", "eval", "--t", "-1", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["pole"] is True
    assert main(["xcurve", "search", "--targets", "0,1728", "--height", "30", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["preimages"] == {"0": [], "1728": []}


def test_verify_paper(capsys):
    assert main(["verify-paper"]) == 0
    out = capsys.readouterr().out
    assert "0 failed" in out and "SKIPPED" in out


def test_group_cap_flag_is_restored(files, capsys):
    from coincidence.config import limits

    before = limits().group_cap
    path = files("g.json", {"modulus": 9, "generators": [[1, 1, 0, 1], [0, 8, 1, 0], [2, 0, 0, 1]]})
    assert main(["group", "order", "--in", path, "--group-cap", "100"]) == 2
    assert "GroupTooLarge" in capsys.readouterr().err
    assert limits().group_cap == before
