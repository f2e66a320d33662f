import json
import subprocess
import sys


from stacksort.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decide(capsys):
    assert run(capsys, "decide", "2 4 3 1")[:2] == (0, "true\n")
    assert run(capsys, "decide", "2 4 3 5 7 6 1")[:2] == (1, "false\n")
    assert run(capsys, "decide", "1")[:2] == (0, "true\n")
    code, out, _ = run(capsys, "decide", "2431", "--format", "json", "--decider", "oracle")
    obj = json.loads(out)
    assert code == 0 and obj["sortable"] and obj["n"] == 4 and obj["decider"] == "oracle" and "ms" in obj


def test_bad_input_exits_2(capsys):
    code, _, err = run(capsys, "decide", "1 1")
    assert code == 2 and "error" in err
    assert run(capsys, "verify", "21", "--word", "rxq")[0] == 2
    assert run(capsys, "decide", "13 12 11 10 9 8 7 6 5 4 3 2 1", "--decider", "oracle", "--cap", "12")[0] == 2


def test_verify(capsys):
    assert run(capsys, "verify", "2 4 3 1", "--word", "rrlrlrlmlmmm")[:2] == (0, "sorts\n")
    code, out, _ = run(capsys, "verify", "2 1", "--word", "rlm")
    assert code == 1 and "letter 2" in out and "output 2" in out
    assert run(capsys, "verify", "1", "--word", "rlm")[0] == 0
    assert run(capsys, "verify", "2431", "--word", "ρρλρλρλμλμμμ")[0] == 0


def test_witness(capsys):
    code, out, _ = run(capsys, "witness", "324617985", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["sortable"]
    assert run(capsys, "verify", "324617985", "--word", obj["word"])[0] == 0
    assert run(capsys, "witness", "2435761")[0] == 1


def test_pushall(capsys):
    code, out, _ = run(capsys, "pushall", "4 3 2")
    lines = out.strip().splitlines()
    assert code == 0 and lines[-1] == "8 configurations" and len(lines) == 9
    code, out2, _ = run(capsys, "pushall", "4 3 2")
    assert out == out2
    data = json.loads(run(capsys, "pushall", "4 3 2", "--format", "json")[1])
    assert len(data) == 8 and all(set(c) == {"H", "V"} for c in data)


def test_graph_export(capsys):
    code, out, _ = run(capsys, "graph", "4 3 2 1", "--step", "1", "--format", "dot")
    assert code == 0
    assert out.count("rank=same") == 3 and out.count(" -- ") == 8
    code, out, _ = run(capsys, "graph", "324617985", "--step", "2", "--format", "json")
    obj = json.loads(out)
    assert obj["step"] == 2 and obj["levels"]
    assert run(capsys, "graph", "2431", "--step", "3")[0] == 2
    assert run(capsys, "graph", "2431")[0] == 0


def test_count(capsys):
    code, out, _ = run(capsys, "count", "--size", "4", "--decider", "graph")
    assert code == 0 and "24 sortable" in out
    code, out, _ = run(capsys, "count", "--size", "3", "--all-sizes", "--format", "csv")
    assert out.splitlines()[0] == "n,total,sortable,non_sortable,decider,wall_time_ms"
    assert len(out.splitlines()) == 4


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "10,20", "--repeat", "1", "--seed", "3")
    assert code == 0 and len(out.strip().splitlines()) == 3


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "stacksort", "decide", "2431"], capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout == "true\n"


def test_graph_and_oracle_agree(capsys):
    for text in ["2431", "2435761", "4321", "3142", "52341", "1234567"]:
        a = run(capsys, "decide", text)[0]
        b = run(capsys, "decide", text, "--decider", "oracle")[0]
        assert a == b
