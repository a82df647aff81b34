# SPDX-FileCopyrightText: 2023-present maromei <void@some.where>
#
# SPDX-License-Identifier: MIT

import json

from infodist import codec, fixtures
from infodist.cli import (
    EXIT_BUDGET,
    EXIT_ERROR,
    EXIT_OK,
    config_from_args,
    render_human,
    run,
    run_cli_job,
    setup_arg_parser,
)
from infodist.config import RunConfig, dump_config


def _run(*argv: str) -> tuple[int, str]:
    args = setup_arg_parser().parse_args(list(argv))
    return run(config_from_args(args))


def test_value(corpus_dir) -> None:
    status, text = _run("value", str(corpus_dir / "u2.json"), str(corpus_dir / "g_ex2.json"))
    document = json.loads(text)

    assert status == EXIT_OK
    assert document["value"] == "1/5"
    assert document["provenance"]["command"] == "value"
    assert "version" in document["provenance"]


def test_distance_writes_the_witness(corpus_dir, tmp_path) -> None:
    witness = tmp_path / "out" / "witness.json"
    status, text = _run(
        "distance",
        str(corpus_dir / "u2.json"),
        str(corpus_dir / "u4.json"),
        "--witness",
        str(witness),
    )

    assert status == EXIT_OK
    assert json.loads(text)["d"] == "1/2"
    assert codec.load_payoff(witness).size >= 1


def test_compare(corpus_dir) -> None:
    status, text = _run("compare", str(corpus_dir / "u2.json"), str(corpus_dir / "u2_relabeled.json"))
    assert status == EXIT_OK
    assert json.loads(text)["direction"] == "equivalent"


def test_beliefs(corpus_dir) -> None:
    status, text = _run("beliefs", str(corpus_dir / "u3.json"), "--order", "2")
    document = json.loads(text)

    assert status == EXIT_OK
    assert document["stabilization_order"] == 4
    assert len(document["player_1"]["classes"]) == 3


def test_sampled_chain_needs_even_n() -> None:
    status, text = _run("cx", "sample", "--n", "3")
    assert status == EXIT_ERROR
    assert text.startswith("error:")
    assert "even" in text


def test_sampled_chain(tmp_path) -> None:
    status, text = _run("cx", "sample", "--n", "4", "--seed", "1")
    path = tmp_path / "chain.json"
    path.write_text(text)

    assert status == EXIT_OK
    chain = codec.load_chain(path)
    assert chain.size == 4
    assert chain.seed == 1


def test_event_e_on_the_shipped_chain(corpus_dir) -> None:
    status, text = _run("cx", "event-e", str(corpus_dir / "chain_n4.json"))
    document = json.loads(text)

    assert status == EXIT_OK
    assert document["holds"] is False
    assert document["first_violation"]["ratio"] == "c_ab/c_a"


def test_crosscheck_on_the_shipped_chain(corpus_dir) -> None:
    status, text = _run("cx", "crosscheck", str(corpus_dir / "chain_n4.json"), "--lmax", "2")
    assert status == EXIT_OK
    assert json.loads(text)["exact"] is True


def test_budget_refusal_exits_with_2(corpus_dir) -> None:
    status, text = _run(
        "distance", str(corpus_dir / "u2.json"), str(corpus_dir / "u4.json"), "--lp-budget", "1"
    )
    assert status == EXIT_BUDGET
    assert text.startswith("refused:")


def test_missing_input_is_an_error(tmp_path) -> None:
    status, text = _run("value", str(tmp_path / "u.json"), str(tmp_path / "g.json"))
    assert status == EXIT_ERROR
    assert "cannot read file" in text


def test_unknown_command() -> None:
    assert run(RunConfig(command="cx"))[0] == EXIT_ERROR


def test_human_format(corpus_dir) -> None:
    status, text = _run(
        "value", str(corpus_dir / "u2.json"), str(corpus_dir / "g_ex2.json"), "--format", "human"
    )
    assert status == EXIT_OK
    assert "value: 1/5" in text.splitlines()


def test_render_human_numbers_lists() -> None:
    text = render_human({"a": 1, "items": [{"b": 2}, {"b": 3}]})
    assert text.splitlines() == ["a: 1", "items:", "  [1]", "    b: 2", "  [2]", "    b: 3"]


def test_config_replay(corpus_dir, tmp_path) -> None:
    _, text = _run("value", str(corpus_dir / "u3.json"), str(corpus_dir / "g_ex2.json"))
    saved = tmp_path / "run.json"
    saved.write_text(json.dumps(json.loads(text)["provenance"]))

    status, replayed = _run("--config", str(saved))

    assert status == EXIT_OK
    assert json.loads(replayed)["value"] == json.loads(text)["value"] == "1/10"


def test_run_cli_job_writes_the_output_file(corpus_dir, tmp_path) -> None:
    output = tmp_path / "result" / "value.json"
    config = RunConfig(
        command="value",
        inputs=[str(corpus_dir / "u1.json"), str(corpus_dir / "g_ex2.json")],
        output=str(output),
    )
    saved = tmp_path / "run.json"
    dump_config(config, saved)

    args = setup_arg_parser().parse_args(["--config", str(saved)])

    assert run_cli_job(args) == EXIT_OK
    assert json.loads(output.read_text())["value"] == "0"


def test_run_cli_job_reports_errors(capsys) -> None:
    args = setup_arg_parser().parse_args(["cx", "sample", "--n", "5"])

    assert run_cli_job(args) == EXIT_ERROR
    assert "error:" in capsys.readouterr().err


def test_fixture_names_are_file_stems(corpus_dir) -> None:
    assert (corpus_dir / "chain_n4.json").exists()
    assert len(list(corpus_dir.glob("*.json"))) == len(fixtures.CATALOGUE)
