"""Expression grammar, canonical rendering, and the command-line front end."""

import io
import contextlib
import json

import pytest

from liedyn.cli import main
from liedyn.errors import LiedynError, ParseError
from liedyn.funcspace import Space
from liedyn.grammar import (
    element_record,
    evaluate,
    evaluate_text,
    parse,
    render_element,
    render_scalar,
)
from liedyn.scalars import Cyclotomic, LaurentScalar


def _render(text, space, presentation=None):
    kind, value = evaluate(parse(text, space, presentation))
    return render_element(kind, value)


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


# -- grammar -------------------------------------------------------------------


def test_crossed_bracket_expression():
    got = _render("[[delta(0)]U^1, [delta(1)]U^-1]", Space.cyclic(2), "crossed")
    assert got == "[1*delta(0) - 1*delta(1)]U^0 + 1/2*c"


def test_root_bracket_expression():
    got = _render("[X[1](delta(0)), X[-1](delta(0))]", Space.cyclic(3), "root")
    assert got == "X[0](2/3*delta(0) - 1/3*delta(1) - 1/3*delta(2)) + 1/3*c"


def test_char_bracket_expressions():
    assert _render("[Y[1,1], Y[1,-1]]", Space.cyclic(2), "char") == "-1*c"
    got = _render("[Y[1,2], Y[1,1]]", Space.cyclic(4), "char")
    assert got == "(-1*z4^1 - 1)*Y[2,3]"


def test_torus_expressions():
    assert _render("[X[1](z), X[-1](z^-1)]", Space.torus(1), "root") == "1*c"
    kind, value = evaluate_text("[z^2 * z^-1]U^1", Space.torus(1))
    assert kind == "crossed"
    assert render_element(kind, value) == "[1*z^1]U^1"


def test_zero_renders_as_zero():
    assert _render("[X[0](delta(0)), X[0](delta(1))]", Space.cyclic(3), "root") == "0"


def test_scalar_prefixes():
    got = _render("2/3 * [delta(0)]U^2", Space.cyclic(3), "crossed")
    assert got == "[2/3*delta(0)]U^2"
    assert _render("-c", Space.cyclic(2), "crossed") == "-1*c"


def test_chi_and_central_sum():
    got = _render("[chi(1)]U^0 + c", Space.cyclic(2), "crossed")
    assert got == "[1*delta(0) - 1*delta(1)]U^0 + 1*c"


def test_parse_round_trip_on_rendered_output():
    cases = [
        ("crossed", "[1*delta(0) - 1*delta(1)]U^0 + 1/2*c", Space.cyclic(2)),
        ("root", "X[0](2/3*delta(0) - 1/3*delta(1) - 1/3*delta(2)) + 1/3*c", Space.cyclic(3)),
        ("char", "(-1*z4^1 - 1)*Y[2,3]", Space.cyclic(4)),
        ("crossed", "[1*z^1]U^1", Space.torus(1)),
    ]
    for presentation, text, space in cases:
        kind, value = evaluate_text(text, space, presentation)
        assert render_element(kind, value) == text


def test_render_scalar_canonical_forms():
    assert render_scalar(Cyclotomic.from_rational(4, 1) + Cyclotomic.zeta(4)) == "1*z4^1 + 1"
    assert render_scalar(LaurentScalar.variable(1) ** -1) == "1*q^-1"
    two_vars = LaurentScalar.variable(2, 1)
    assert render_scalar(two_vars) == "1*q2^1"
    assert render_scalar(Cyclotomic.from_rational(6, 2)) == "2"


@pytest.mark.parametrize(
    "text,space,presentation,fragment",
    [
        ("delta(5)", Space.cyclic(3), "crossed", "out of range"),
        ("[delta(0)]U^1 + X[1](delta(0))", Space.cyclic(3), "crossed", "cannot combine"),
        ("c^2", Space.cyclic(2), "crossed", "central"),
        ("c*c", Space.cyclic(2), "crossed", "central"),
        ("z", Space.cyclic(3), "crossed", "torus"),
        ("q", Space.cyclic(3), "crossed", "torus"),
        ("z", Space.torus(2), "crossed", "z1..zd"),
        ("U", Space.cyclic(3), "crossed", "crossed monomial"),
        ("1/0", Space.cyclic(3), "crossed", "division by zero"),
        ("[delta(0)]U^", Space.cyclic(3), "crossed", "expected an integer"),
        ("(1+", Space.cyclic(3), "crossed", "end of input"),
        ("Y[1]", Space.cyclic(3), "char", "found ']'"),
        ("X[1](c)", Space.cyclic(3), "root", "function argument"),
    ],
)
def test_parse_errors(text, space, presentation, fragment):
    with pytest.raises(ParseError) as exc:
        evaluate(parse(text, space, presentation))
    assert fragment in str(exc.value)


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as exc:
        parse("[delta(0)]U^1 + X[1](delta(0))", Space.cyclic(3), "crossed")
    diag = exc.value.diagnostic()
    assert diag.startswith("line 1, column")


def test_presentation_mismatch_rejected():
    with pytest.raises(ParseError):
        parse("X[1](delta(0))", Space.cyclic(3), "crossed")
    # a bare central is valid in any presentation
    kind, value = evaluate(parse("c", Space.cyclic(3), "root"))
    assert kind == "central"


def test_element_record_structure():
    kind, value = evaluate_text("[delta(0)]U^1 + 2*c", Space.cyclic(2), "crossed")
    rec = element_record(kind, value)
    assert rec["kind"] == "crossed"
    assert rec["central"] == "2"
    assert rec["terms"][0]["grade"] == 1


# -- CLI -----------------------------------------------------------------------


def test_cli_bracket_text():
    code, out, err = run_cli(
        "bracket", "--space", "cyclic:2", "--presentation", "crossed",
        "[delta(0)]U^1", "[delta(1)]U^-1",
    )
    assert code == 0 and err == ""
    assert out == "[1*delta(0) - 1*delta(1)]U^0 + 1/2*c\n"


def test_cli_bracket_json():
    code, out, _ = run_cli(
        "bracket", "--space", "cyclic:2", "--presentation", "crossed",
        "--format", "json", "[delta(0)]U^1", "[delta(1)]U^-1",
    )
    assert code == 0
    rec = json.loads(out)
    assert rec["central"] == "1/2"
    assert rec["kind"] == "crossed"


def test_cli_eval():
    code, out, _ = run_cli("eval", "--space", "cyclic:2", "[Y[1,1], Y[1,-1]]")
    assert code == 0 and out == "-1*c\n"


def test_cli_parse_error_exit_2():
    code, out, err = run_cli(
        "bracket", "--space", "cyclic:2", "--presentation", "crossed",
        "[[delta(0)]U^1", "[delta(1)]U^-1]",
    )
    assert code == 2 and out == ""
    assert err.startswith("line 1, column")


def test_cli_usage_error_exit_2():
    assert run_cli("verify", "bogus", "--space", "cyclic:3")[0] == 2
    assert run_cli("limit", "--p", "2", "--levels", "1")[0] == 2


def test_cli_domain_error_exit_3():
    code, _, err = run_cli(
        "export", "--space", "torus:1", "--grade-bound", "1", "--out", "-"
    )
    assert code == 3
    assert err.startswith("error:")
    code, _, err = run_cli(
        "export", "--space", "cyclic:2", "--grade-bound", "1",
        "--out", "/nonexistent-dir/x.jsonl",
    )
    assert code == 3


def test_cli_verify_single_suite():
    code, out, _ = run_cli(
        "verify", "cocycle-law", "--space", "cyclic:3", "--samples", "5", "--seed", "1"
    )
    assert code == 0
    assert out == "cocycle-law @ cyclic:3 [samples=5 seed=1]: ok (10 checks)\n"


def test_cli_cartan_text_and_json():
    code, out, _ = run_cli("cartan", "--space", "cyclic:3")
    assert code == 0
    assert "affine-cycle: yes" in out
    assert "corank: 1" in out
    assert "label: A^(1)_2" in out
    assert "(nonstandard numbering)" in out
    code, out, _ = run_cli("cartan", "--space", "cyclic:3", "--format", "json")
    rec = json.loads(out)
    assert rec["matrix"] == [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    assert rec["affine_cycle"] is True and rec["corank"] == 1


def test_cli_export_schema_and_order():
    code, out, _ = run_cli(
        "export", "--space", "cyclic:2", "--grade-bound", "1", "--out", "-"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 20
    first = json.loads(lines[0])
    assert sorted(first) == ["central", "lhs", "result_terms", "rhs"]
    assert first["lhs"] == "Y[0,-1]" and first["rhs"] == "Y[1,-1]"
    assert first["result_terms"] == [{"char_or_fn": 1, "coeff": "-2", "grade": -2}]
    # keys inside each record are emitted sorted
    assert lines[0].index('"central"') < lines[0].index('"lhs"')


def test_cli_export_torus_needs_char_bound():
    code, out, _ = run_cli(
        "export", "--space", "torus:1", "--grade-bound", "1",
        "--char-bound", "1", "--out", "-",
    )
    assert code == 0
    assert len(out.strip().splitlines()) == 54


def test_cli_limit_chain():
    code, out, _ = run_cli(
        "limit", "--p", "2", "--levels", "3", "--samples", "5", "--seed", "0"
    )
    assert code == 0
    assert out.splitlines() == [
        "inclusion level 1 -> 2 [samples=5 seed=0]: ok (15 checks)",
        "inclusion level 2 -> 3 [samples=5 seed=0]: ok (15 checks)",
    ]


def test_cli_runs_are_deterministic():
    args = ("verify", "jacobi-crossed", "--space", "cyclic:3", "--samples", "10", "--seed", "4")
    assert run_cli(*args) == run_cli(*args)
    export_args = ("export", "--space", "cyclic:3", "--grade-bound", "2", "--out", "-")
    assert run_cli(*export_args)[1] == run_cli(*export_args)[1]
