import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hullforge.cli import (
    Command,
    Job,
    RingDecl,
    bundled_corpus,
    combine_exit,
    corpus_run,
    dumps,
    main,
    parse_job,
    run_file,
    run_text,
    serialize_job,
    strip_timing,
)
from hullforge.errors import ParseError

TWO_PLANES = """\
ring R char 0 vars x y u v
module M = coker rank 1 degrees 0 relations [ [x*u], [x*v], [y*u], [y*v] ]
cmd hull M
"""

EXPECTED_EXITS = {
    "assume_decomposition": 0,
    "assumed_prime": 3,
    "bad_verb": 4,
    "codim_one_center": 5,
    "embedded_point": 0,
    "gf_two_planes": 0,
    "hypersurface": 0,
    "maximal_ideal": 0,
    "plane_line_h1": 0,
    "plane_line_hull": 2,
    "plane_line_local": 5,
    "plane_line_pure": 0,
    "planes_direct_sum": 0,
    "torsion_reflexive": 4,
    "two_planes": 0,
    "undeclared_name": 4,
    "veronese_eliminate": 0,
    "veronese_hull": 0,
}


def test_parse_example():
    job = parse_job(TWO_PLANES)
    assert job.ring.variables == ("x", "y", "u", "v") and job.ring.weights == (1, 1, 1, 1)
    assert job.modules["M"] == (1, (0,), (("x*u",), ("x*v",), ("y*u",), ("y*v",)))
    assert job.commands == [Command("hull", ("M",))]


@pytest.mark.parametrize("text,line,col", [
    ("ring R char 0 vars x y\nideal I = [ x ]\ncmd frobnicate I\n", 3, 5),
    ("ring R char 0 vars x y\ncmd hull M\n", 2, 10),
    ("ring R char 0 vars x y\nideal I = [ x ]\ncmd local-hull I\n", 3, 5),
    ("ring R char 0 vars x y\nideal I = [ x, y +* 1 ]\n", 2, 19),
    ("ideal I = [ x ]\n", 1, 1),
    ("ring R char 0 vars x y\nideal I = [ x\n", 2, 11),
])
def test_parse_errors_carry_positions(text, line, col):
    with pytest.raises(ParseError) as e:
        parse_job(text)
    assert e.value.exit_code == 4
    assert (e.value.details["line"], e.value.details["column"]) == (line, col)


def test_relation_length_must_match_rank():
    with pytest.raises(ParseError):
        parse_job("ring R char 0 vars x y\nmodule M = coker rank 2 degrees 0 0 relations [ [x] ]\n")


def test_comments_and_blank_lines_are_ignored():
    text = "# two planes\n\n" + TWO_PLANES.replace("cmd hull M", "cmd hull M   # the hull")
    assert parse_job(text) == parse_job(TWO_PLANES)


# -- round trip ---------------------------------------------------------------------

_VARS = ["x", "y", "z", "w"]
_names = st.sampled_from(["I", "J", "K", "P1", "Q_2"])


@st.composite
def _poly(draw, variables):
    terms = []
    for _ in range(draw(st.integers(1, 3))):
        c = draw(st.integers(-3, 3).filter(bool))
        mono = [f"{v}^{k}" if k > 1 else v
                for v in variables if (k := draw(st.integers(0, 2)))]
        body = "*".join(mono) if mono else "1"
        terms.append(f"{c}*{body}" if c != 1 else body)
    return " + ".join(terms)


@st.composite
def _jobs(draw):
    n = draw(st.integers(1, 4))
    variables = tuple(_VARS[:n])
    weights = tuple(draw(st.lists(st.integers(1, 3), min_size=n, max_size=n)))
    char = draw(st.sampled_from([0, 2, 32003]))
    job = Job(ring=RingDecl("R", char, variables, weights, "grevlex"))
    for name in draw(st.lists(_names, max_size=3, unique=True)):
        job.ideals[name] = tuple(draw(st.lists(_poly(variables), min_size=1, max_size=3)))
    if draw(st.booleans()):
        rank = draw(st.integers(1, 2))
        degs = tuple(draw(st.lists(st.integers(-2, 2), min_size=rank, max_size=rank)))
        rels = tuple(tuple(draw(st.lists(_poly(variables), min_size=rank, max_size=rank)))
                     for _ in range(draw(st.integers(0, 2))))
        job.modules["M"] = (rank, degs, rels)
    if job.ideals and draw(st.booleans()):
        names = sorted(job.ideals)
        job.assumptions.append((names[0], tuple(names)))
    job.max_power = draw(st.none() | st.integers(1, 40))
    if draw(st.booleans()):
        lo = draw(st.integers(-3, 3))
        job.degree_range = (lo, lo + draw(st.integers(0, 5)))
    for name in job.ideals:
        job.commands.append(Command("min-primes", (name,)))
        if "M" in job.modules:
            job.commands.append(Command("local-hull", ("M", name)))
    if "M" in job.modules:
        job.commands.append(Command("hull", ("M",)))
    if job.ideals and n > 1:
        job.commands.append(Command("eliminate", (next(iter(job.ideals)), variables[0])))
    return job


@given(_jobs())
def test_serialize_parse_round_trip(job):
    text = serialize_job(job)
    again = parse_job(text)
    assert again == job
    assert serialize_job(again) == text


@pytest.mark.parametrize("path", sorted(bundled_corpus().glob("*.job")), ids=lambda p: p.stem)
def test_corpus_job_round_trips(path):
    try:
        job = parse_job(path.read_text())
    except ParseError:
        return
    assert parse_job(serialize_job(job)) == job


# -- exit codes ---------------------------------------------------------------------

def test_every_corpus_job_has_a_stated_exit_code():
    assert {p.stem for p in bundled_corpus().glob("*.job")} == set(EXPECTED_EXITS)
    assert set(EXPECTED_EXITS.values()) == {0, 2, 3, 4, 5}


@pytest.mark.parametrize("stem", sorted(EXPECTED_EXITS))
def test_corpus_exit_codes(stem):
    report, code = run_file(bundled_corpus() / f"{stem}.job")
    assert code == EXPECTED_EXITS[stem] == report["exit_code"]


def test_combine_exit_severity():
    assert combine_exit([]) == 0
    assert combine_exit([0, 3, 2]) == 2
    assert combine_exit([3, 5]) == 5
    assert combine_exit([5, 4]) == 4
    assert combine_exit([2, 6, 4]) == 6
    assert combine_exit([0, 3]) == 3


def test_internal_failure_is_exit_six(monkeypatch):
    import hullforge.cli.runner as runner

    def boom(ctx, cmd):
        raise ZeroDivisionError("engine bug")

    monkeypatch.setattr(runner, "_execute", boom)
    report, code = run_text(TWO_PLANES)
    assert code == 6
    assert report["results"][0]["error"]["code"] == "INTERNAL"


def test_report_shape():
    report, code = run_text(TWO_PLANES, name="two_planes")
    assert code == 0
    assert report["schema"] == "hullforge-report/1"
    assert set(report["timing"]) == {"total_seconds", "per_command"}
    entry = report["results"][0]
    assert entry["status"] == "ok" and entry["cmd"] == "hull M"
    assert entry["result"]["coker_length"] == 1
    assert "timing" not in strip_timing(report)
    assert json.loads(dumps(report)) == report


def test_max_power_override():
    text = TWO_PLANES.replace("cmd hull M", "ideal m = [ x, y, u, v ]\ncmd local-hull M m")
    _, code = run_text(text, max_power=1)
    assert code == 0
    S = "ring R char 0 vars x y\nideal I = [ x ]\nmodule F = coker rank 1 degrees 0 relations []\ncmd local-hull F I\n"
    report, code = run_text(S, max_power=3)
    assert code == 5
    assert report["results"][0]["error"]["code"] == "NONCOHERENT_CAP"


# -- main ---------------------------------------------------------------------------

def test_main_run_writes_json(tmp_path):
    job = tmp_path / "tp.job"
    job.write_text(TWO_PLANES)
    out = tmp_path / "out.json"
    assert main(["run", str(job), "--json", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["job"] == "tp" and report["exit_code"] == 0


def test_main_usage_errors(tmp_path, capsys):
    assert main([]) == 4
    assert main(["run", str(tmp_path / "missing.job")]) == 4
    job = tmp_path / "tp.job"
    job.write_text(TWO_PLANES)
    assert main(["run", str(job), "--max-power", "0"]) == 4
    bad = tmp_path / "bad.job"
    bad.write_text("ring R char 0 vars x\ncmd nope\n")
    assert main(["run", str(bad)]) == 4
    assert json.loads(capsys.readouterr().out)["error"]["code"] == "PARSE_ERROR"


def test_corpus_empty_directory_passes_with_warning(tmp_path, capsys):
    summary = corpus_run(tmp_path)
    assert summary["verdict"] == "pass" and summary["warnings"]
    assert main(["corpus", str(tmp_path)]) == 0
    assert "warning" in capsys.readouterr().out


def test_corpus_missing_and_corrupted_expected(tmp_path):
    (tmp_path / "a.job").write_text(TWO_PLANES)
    (tmp_path / "b.job").write_text(TWO_PLANES)
    (tmp_path / "b.expected.json").write_text("{ not json")
    summary = corpus_run(tmp_path)
    assert summary["verdict"] == "fail"
    by_file = {e["file"]: e for e in summary["files"]}
    assert by_file["a.job"]["diffs"] == ["missing expected file"]
    assert by_file["b.job"]["diffs"][0].startswith("corrupted expected file")
    assert main(["corpus", str(tmp_path)]) == 1


def test_corpus_update_then_diff(tmp_path):
    (tmp_path / "a.job").write_text(TWO_PLANES)
    assert corpus_run(tmp_path, update=True)["files"][0]["status"] == "updated"
    assert corpus_run(tmp_path)["verdict"] == "pass"
    exp = tmp_path / "a.expected.json"
    data = json.loads(exp.read_text())
    data["results"][0]["result"]["coker_length"] = 7
    exp.write_text(json.dumps(data))
    summary = corpus_run(tmp_path)
    assert summary["verdict"] == "fail"
    assert summary["files"][0]["diffs"] == ["results[0].result.coker_length: expected 7, got 1"]
