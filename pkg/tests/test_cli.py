import json

import pytest
from click.testing import CliRunner

from vertpairs.algebra import HalfLaurentSeries, series_from_json
from vertpairs.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def test_pairs_text_output(runner):
    result = runner.invoke(main, ["pairs", "--d", "1", "--h", "2", "--chi-parity", "odd", "--format", "text"])
    assert result.exit_code == 0
    assert result.output.strip() == "-q^-1 - 2 - q"


def test_pairs_deterministic(runner):
    args = ["pairs", "--d", "3", "--h", "3", "--chi-parity", "even", "--insertions", "1:1,2:3/2", "--format", "json"]
    out1 = runner.invoke(main, args).output
    out2 = runner.invoke(main, args).output
    assert out1 == out2


def test_pairs_json_round_trips(runner):
    result = runner.invoke(
        main, ["pairs", "--d", "2", "--h", "2", "--chi-parity", "even", "--format", "json"]
    )
    assert result.exit_code == 0
    body = json.loads(result.output)
    series = series_from_json(body["series"])
    assert isinstance(series, HalfLaurentSeries)
    assert series.coeff(0).const_value() == 2


def test_pairs_oracle_flag(runner):
    result = runner.invoke(
        main,
        ["pairs", "--d", "2", "--h", "3", "--chi-parity", "odd",
         "--insertions", "1:1", "--oracle", "--window", "-6:6"],
    )
    assert result.exit_code == 0
    assert "oracle match on window [-6, 6]: True" in result.output


def test_hurwitz_text(runner):
    result = runner.invoke(main, ["hurwitz", "--d", "3", "--h", "2", "--chi-parity", "even"])
    assert result.exit_code == 0
    assert result.output.strip() == "9"


def test_gw_text(runner):
    result = runner.invoke(main, ["gw", "--d", "1", "--h", "2", "--chi-parity", "odd", "--order", "6"])
    assert result.exit_code == 0
    assert result.output.strip() == "-u^2 + 1/12*u^4 + O(u^6)"


def test_mp_check_text(runner):
    result = runner.invoke(
        main,
        ["mp-check", "--d", "1", "--h", "2", "--chi-parity", "odd", "--insertions", "2:1"],
    )
    assert result.exit_code == 0
    assert "match: true" in result.output
    assert "pipeline: -1/240" in result.output


def test_matrices_text(runner):
    result = runner.invoke(main, ["matrices", "--size", "2"])
    assert result.exit_code == 0
    assert "L[2,2] = i" in result.output
    assert "K[2,1] = -i" in result.output
    assert "K*L == identity: true" in result.output


def test_appendix_command(runner):
    result = runner.invoke(main, ["appendix", "--alpha-max", "2", "--pix"])
    assert result.exit_code == 0
    assert "alpha=2: order_ok=true leading=1/3 closed_form_matches=true" in result.output


def test_verify_suite_appendix(runner):
    result = runner.invoke(main, ["verify", "--suite", "appendix"])
    assert result.exit_code == 0
    assert "FAIL" not in result.output


def test_flag_errors_exit_2(runner):
    assert runner.invoke(main, ["pairs", "--d", "1", "--h", "2"]).exit_code == 2
    assert runner.invoke(main, ["pairs", "--d", "1", "--h", "2", "--chi-parity", "odd", "--window", "junk"]).exit_code == 2
    assert runner.invoke(main, ["pairs", "--d", "1", "--h", "2", "--chi-parity", "odd", "--insertions", "x"]).exit_code == 2
    assert runner.invoke(main, ["verify", "--suite", "nope"]).exit_code == 2


def test_computation_failure_exits_1(runner):
    # h=1 with a positive-degree insertion has no exact Laurent form
    result = runner.invoke(
        main, ["pairs", "--d", "1", "--h", "1", "--chi-parity", "even", "--insertions", "1:1"]
    )
    assert result.exit_code == 1


def test_http_mode_against_live_service(runner):
    import threading
    import time

    import uvicorn

    from vertpairs.service import create_app

    config = uvicorn.Config(create_app(), host="127.0.0.1", port=8431, log_level="error")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    for _ in range(100):
        if server.started:
            break
        time.sleep(0.05)
    else:
        pytest.skip("server did not start")
    try:
        result = runner.invoke(
            main,
            ["pairs", "--d", "1", "--h", "2", "--chi-parity", "odd",
             "--server", "http://127.0.0.1:8431"],
        )
        assert result.exit_code == 0
        assert result.output.strip() == "-q^-1 - 2 - q"
        # identical bytes in-process and over HTTP
        local = runner.invoke(main, ["pairs", "--d", "1", "--h", "2", "--chi-parity", "odd"])
        assert local.output == result.output
    finally:
        server.should_exit = True
        thread.join(timeout=5)
