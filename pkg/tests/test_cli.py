import json

import pytest

from conftest import FIXTURES, fixture_path
from hochdesk.config import Settings
from hochdesk.errors import CapExceeded, InputError
from hochdesk.main import build_parser, main, resolve_options
from hochdesk.tasks import RunOptions, dispatch
from hochdesk.utils.schemas import Report

RECORDED = FIXTURES / "reports"
RUNS = json.loads((RECORDED / "runs.json").read_text(encoding="utf-8"))


def run_json(capsys, *argv):
    code = main([*argv, "--report", "json"])
    report = json.loads(capsys.readouterr().out)
    return code, report


def test_hh_dual_numbers(capsys):
    code, report = run_json(capsys, "hh", str(fixture_path("dualnumbers.json")))
    assert code == 0
    assert report["results"]["dims"] == [2, 1, 1, 1]
    assert "error" not in report
    assert "timing" not in report


def test_timing_is_opt_in(capsys):
    code, report = run_json(capsys, "hh", "--timing", "--max-degree", "1", str(fixture_path("field.json")))
    assert code == 0
    assert set(report["timing"]) == {"elapsed_sec", "remaining_sec"}


def test_same_input_gives_same_results(capsys):
    _, first = run_json(capsys, "hh", "--max-degree", "2", str(fixture_path("dualnumbers.json")))
    _, second = run_json(capsys, "hh", "--max-degree", "2", str(fixture_path("dualnumbers.json")))
    assert first["results"] == second["results"]
    assert first["input_digest"] == second["input_digest"]


def test_invalid_category_exits_with_input_code(capsys):
    code, report = run_json(capsys, "check-ainf", str(fixture_path("broken.json")))
    assert code == 2
    assert report["error"]["type"] == "ValidationFailure"
    assert report["results"] == {}


def test_wrong_input_kind(capsys):
    code, report = run_json(capsys, "cech-hh", str(fixture_path("dualnumbers.json")))
    assert code == 2
    assert report["error"]["type"] == "InputError"


def test_missing_file(capsys, tmp_path):
    code, report = run_json(capsys, "hh", str(tmp_path / "absent.json"))
    assert code == 2


def test_degree_cap_exits_with_cap_code(capsys):
    code, report = run_json(capsys, "hh", "--max-degree", "9", str(fixture_path("dualnumbers.json")))
    assert code == 3
    assert report["error"]["type"] == "CapExceeded"


def test_text_report(capsys):
    assert main(["hh", "--max-degree", "1", str(fixture_path("field.json"))]) == 0
    out = capsys.readouterr().out
    assert out.startswith("command: hh")
    assert "dims: (1, 0)" in out


def test_print_schema(capsys):
    assert main(["--print-schema"]) == 0
    schema = json.loads(capsys.readouterr().out)
    assert "results" in schema["properties"]


def test_cech_hh_on_projective_line(capsys):
    code, report = run_json(capsys, "cech-hh", "--window", "4", str(fixture_path("p1.json")))
    assert code == 0
    dims = {(row["wedge"], row["degree"]): row["dimension"] for row in report["results"]["cohomology"]}
    assert dims == {(0, 0): 1, (0, 1): 0, (1, 0): 3, (1, 1): 0}


def test_cech_ks_on_toy_family(capsys):
    code, report = run_json(capsys, "cech-ks", str(fixture_path("toy.json")))
    assert code == 0
    assert report["results"]["verdict"] == "zero"
    assert report["results"]["lift_independent"] == "yes"


def test_max_unipotent_on_legendre(capsys):
    code, report = run_json(capsys, "max-unipotent", "--n", "1", str(fixture_path("legendre.json")))
    assert code == 0
    assert report["results"]["maximally_unipotent"] == "yes"


def test_max_unipotent_rejects_zero_power(capsys):
    code, report = run_json(capsys, "max-unipotent", "--n", "0", str(fixture_path("legendre.json")))
    assert code == 2
    assert report["error"]["type"] == "InputError"


def test_cup_checks_commutators_against_every_representative(capsys):
    code, report = run_json(capsys, "cup", "--max-degree", "1", str(fixture_path("dualnumbers.json")))
    assert code == 0
    results = report["results"]
    assert results["commutator_pairs"] == 3
    assert results["graded_commutative"] == "yes"
    assert results["verdict"] == "zero"


def test_gs_class_reports_identities_and_vertices(capsys):
    code, report = run_json(capsys, "gs-class", str(fixture_path("q-scaling.json")))
    assert code == 0
    results = report["results"]
    assert set(results["identities"].values()) == {"yes"}
    assert "simplicial_of_unit_component" in results["identities"]
    assert results["vertex_verdicts"] == {"i": "zero", "j": "zero"}


def test_npotent_quantum_exterior_algebra(capsys):
    code, report = run_json(capsys, "npotent", "--n", "2", str(fixture_path("qext.json")))
    assert code == 0
    assert report["results"]["largest"] == 1
    assert report["results"]["2-potent"] == "no"


@pytest.mark.slow
def test_npotent_tensor_square(capsys):
    code, report = run_json(capsys, "npotent", "--n", "2", str(fixture_path("qext-tensor.json")))
    assert code == 0
    assert report["results"]["2-potent"] == "yes"


def test_options_follow_settings():
    args = build_parser().parse_args(["hh", "x.json", "--weight", "1,0"])
    options = resolve_options(args, Settings(HOCHDESK_WINDOW=4, HOCHDESK_ARITY=5))
    assert (options.window, options.arity, options.weight) == (4, 5, (1, 0))
    with pytest.raises(InputError):
        resolve_options(build_parser().parse_args(["hh", "x.json", "--weight", "a"]), Settings())


def test_run_options_degree_guard():
    options = RunOptions(max_degree=7, degree_cap=5)
    with pytest.raises(CapExceeded):
        options.degree(3)
    assert RunOptions().degree(3) == 3


def test_dispatch_rejects_unknown_command():
    with pytest.raises(InputError):
        dispatch("nope", None, RunOptions())


# ---------- recorded reports ----------

def recorded_name(run):
    return f"{run['input'][:-len('.json')]}.{run['argv'][0]}.json"


@pytest.mark.parametrize("name", sorted(p.name for p in FIXTURES.glob("*.json")))
def test_every_fixture_has_a_recorded_run(name):
    runs = [run for run in RUNS if run["input"] == name]
    assert runs
    assert all((RECORDED / recorded_name(run)).exists() for run in runs)


@pytest.mark.parametrize("run", RUNS, ids=recorded_name)
def test_recorded_report_is_reproduced_byte_for_byte(capsys, run):
    code = main([*run["argv"], str(fixture_path(run["input"])), "--report", "json"])
    out = capsys.readouterr().out
    assert code == run["exit_code"]
    assert out == (RECORDED / recorded_name(run)).read_text(encoding="utf-8")


@pytest.mark.parametrize("run", RUNS, ids=recorded_name)
def test_recorded_reports_match_the_schema(run):
    report = Report.model_validate_json((RECORDED / recorded_name(run)).read_text(encoding="utf-8"))
    assert report.command == run["argv"][0]
    assert (report.error is None) == (run["exit_code"] == 0)


def test_flags_may_precede_the_input():
    args = build_parser().parse_intermixed_args(["hh", "--max-degree", "2", "a.json", "--report", "json"])
    assert (args.command, args.input, args.max_degree, args.report) == ("hh", "a.json", 2, "json")
