import json


from multizeta.cli import main
from multizeta.suites import Case, run_jobs, suite_tables, thread_count


def test_report_assembly_is_ordered():
    jobs = [(f"c{i}", lambda i=i: Case(f"c{i}", i != 3, str(i), str(i), "exact")) for i in range(8)]
    rep = run_jobs("demo", jobs, threads=4)
    assert [c.case_id for c in rep.cases] == [f"c{i}" for i in range(8)]
    assert not rep.passed and rep.totals == {"total": 8, "passed": 7, "failed": 1}


def test_crashing_case_fails():
    def boom():
        raise RuntimeError("no")

    rep = run_jobs("demo", [("x", boom)], threads=1)
    assert not rep.passed and "RuntimeError" in rep.cases[0].rhs


def test_thread_env(monkeypatch):
    monkeypatch.setenv("MULTIZETA_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.setenv("MULTIZETA_THREADS", "junk")
    assert thread_count() >= 1


def test_tables_deterministic():
    a = suite_tables(dmax=2, threads=4).dumps()
    b = suite_tables(dmax=2, threads=1).dumps()
    assert a == b
    assert json.loads(a)["passed"] is True


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_eval(capsys):
    code, out, _ = run(capsys, "eval", "--omega", "star", "--d", "2", "--k", "1", "--char", "principal:1")
    assert code == 0 and out.strip() == "7/360 * pi^4"
    code, out, _ = run(capsys, "eval", "--json", "--omega", "star", "--d", "2", "--k", "1", "--char", "principal:1")
    data = json.loads(out)
    assert data["pi_exponent"] == 4 and data["coefficient"] == {"order": 1, "coeffs": ["7/360"]}


def test_cli_eval_digits(capsys):
    code, out, _ = run(capsys, "eval", "--d", "1", "--k", "1", "--char", "principal:1", "--digits", "10")
    assert code == 0 and "1.644934067" in out


def test_cli_central(capsys):
    code, out, _ = run(capsys, "central", "--omega", "bullet", "--d", "1", "--k", "0", "--char", "principal:1")
    assert code == 0 and out.strip() == "-1/2"


def test_cli_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--json", "--d", "2", "--k", "1", "--char", "principal:1")
    data = json.loads(out)
    assert code == 0 and set(data) == {"value", "tail_bound", "cutoff"}
    assert abs(float(data["value"]["re"]) - 0.8117424252833536) < float(data["tail_bound"])


def test_cli_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "eval", "--d", "1", "--k", "0", "--char", "principal:1")[0] == 2
    assert run(capsys, "eval", "--d", "1", "--k", "1", "--char", "kronecker:6")[0] == 2
    assert run(capsys, "chars")[0] == 2


def test_cli_chars_and_seq(capsys):
    code, out, _ = run(capsys, "chars", "--json", "--nmax", "5")
    assert code == 0 and len(json.loads(out)) == 1 + 1 + 2 + 2 + 4
    code, out, _ = run(capsys, "seq", "bernoulli", "--nmax", "4")
    assert out.split() == ["1", "1/2", "1/6", "0", "-1/30"]
    code, out, _ = run(capsys, "seq", "euler", "--nmax", "4", "--json")
    assert json.loads(out)["values"] == ["1", "0", "-1", "0", "5"]


def test_cli_verify_identity_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "section4", "--kmax", "4", "--dmax", "4")
    assert code == 0 and "identities" in out
