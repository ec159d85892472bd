import json

import pytest

from hyperchrom.cli import main
from hyperchrom.hypergraph import complete_hypergraph, format_hypergraph


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_chromatic_json(capsys):
    code, out, _ = run(capsys, "chromatic", "--graph", "petersen", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["chromatic_number"] == 3
    assert payload["exact"]
    assert len(payload["coloring"]) == 10


def test_local_human(capsys):
    code, out, _ = run(capsys, "local", "--graph", "K4")
    assert code == 0
    assert out.strip() == "chi_l = 4"


def test_named_families(capsys):
    for name, chi in [("C5", 3), ("K:5:2", 5), ("KG:5:2", 3), ("KG:3:7:2", 2)]:
        code, out, _ = run(capsys, "chromatic", "--graph", name, "--json")
        assert code == 0
        assert json.loads(out)["chromatic_number"] == chi


def test_alt_and_cd(capsys):
    code, out, _ = run(capsys, "alt", "--graph", "K:5:2", "--p", "2", "--json")
    assert code == 0
    assert json.loads(out)["alt"] == 2
    code, out, _ = run(capsys, "cd", "--graph", "K:5:2", "--p", "2")
    assert code == 0
    assert out.strip() == "cd_2 = 3"


def test_global_flags_accepted_on_either_side(capsys):
    a = run(capsys, "--json", "alt", "--graph", "K:5:2", "--p", "2")
    b = run(capsys, "alt", "--graph", "K:5:2", "--p", "2", "--json")
    assert a == b


def test_xind_q_poset(capsys):
    code, out, _ = run(
        capsys, "xind", "--poset", "q", "--n", "1", "--p", "2", "--json"
    )
    assert code == 0
    assert json.loads(out)["xind"] == 1


def test_indbounds(capsys):
    code, out, _ = run(
        capsys, "indbounds", "--graph", "K2", "--p", "2", "--depth", "1", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["lower"] == payload["upper"] == 1
    assert payload["certificates"]


def test_bounds_consistent_exit_zero(capsys):
    code, out, _ = run(
        capsys, "bounds", "--graph", "K:5:2", "--r", "2", "--p", "2", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["consistent"]
    values = {e["name"]: e for e in payload["entries"]}
    assert values["cd_p(F)"]["value"] == 3
    assert values["|V(F)| - alt_p(F)"]["value"] == 3


def test_colorful_witness_and_counterexample_exit(capsys):
    code, out, _ = run(
        capsys,
        "colorful", "--graph", "petersen", "--p", "2", "--target", "3", "--json",
    )
    assert code == 0
    assert json.loads(out)["found"]
    code, out, _ = run(
        capsys,
        "colorful", "--graph", "K2", "--p", "2", "--target", "5", "--json",
    )
    assert code == 2
    assert not json.loads(out)["found"]


def test_zigzag_seeded(capsys):
    a = run(
        capsys,
        "zigzag", "--graph", "petersen", "--seed", "5", "--colors", "3", "--json",
    )
    b = run(
        capsys,
        "zigzag", "--graph", "petersen", "--seed", "5", "--colors", "3", "--json",
    )
    assert a[0] == 0
    assert a == b
    assert json.loads(a[1])["found"]


def test_verify_single_run(capsys):
    code, out, _ = run(
        capsys,
        "verify", "--lemma", "zp-fan",
        "--n", "2", "--m", "2", "--p", "2", "--alpha", "0", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["counterexamples_total"] == 0
    assert payload["runs"][0]["admissible"] == 80


def test_verify_manifest_threads(capsys, tmp_path):
    manifest = tmp_path / "campaign.json"
    manifest.write_text(
        json.dumps(
            {
                "runs": [
                    {"lemma": "zp-fan", "n": 2, "m": 2, "p": 2, "alpha": 0},
                    {"lemma": "zp-fan", "n": 3, "m": 1, "p": 2, "alpha": 0},
                ]
            }
        )
    )
    code, out, _ = run(
        capsys, "verify", "--manifest", str(manifest), "--threads", "2", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    assert len(payload["runs"]) == 2
    assert payload["counterexamples_total"] == 0


def test_file_input_roundtrip(capsys, tmp_path):
    path = tmp_path / "k52.txt"
    path.write_text(format_hypergraph(complete_hypergraph(5, 2)))
    code, out, _ = run(capsys, "chromatic", "--file", str(path), "--json")
    assert code == 0
    assert json.loads(out)["chromatic_number"] == 5


def test_usage_errors_exit_one(capsys):
    assert run(capsys, "alt", "--graph", "K:5:2", "--p", "4")[0] == 1
    assert run(capsys, "chromatic")[0] == 1
    assert run(capsys, "no-such-command")[0] == 1
    assert run(capsys, "chromatic", "--graph", "nonsense")[0] == 1
    assert run(capsys, "verify")[0] == 1


def test_nonprime_gate_opt_in(capsys):
    code, out, _ = run(
        capsys, "alt", "--graph", "K:5:2", "--p", "4", "--allow-nonprime", "--json"
    )
    assert code == 0
    assert "alt" in json.loads(out)
