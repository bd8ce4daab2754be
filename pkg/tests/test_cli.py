import json
from fractions import Fraction

import pytest

from qep.core.config import get_settings
from qep.core.entropy import SystemContext
from qep.core.parser import build_query, parse_constraint, parse_inequality
from qep.main import main
from qep.schemas.document import OutputDocument, rational

LINDEN_WINTER = ["I(C;D) >= I(A,B;C)", "-c", "I(A;C|B)=0", "-c", "I(B;C|A)=0", "-c", "I(A;B|D)=0"]
TRIPARTITE = "S(A,B,C) - S(A|B,C) - S(B|A,C) - S(C|A,B) >= 0"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, out, OutputDocument.from_json(out)


def assert_no_floats(node):
    assert not isinstance(node, float)
    if isinstance(node, dict):
        for value in node.values():
            assert_no_floats(value)
    elif isinstance(node, list):
        for value in node:
            assert_no_floats(value)


def test_rational_strings():
    assert rational(Fraction(3)) == "3/1"
    assert rational(Fraction(-1, 2)) == "-1/2"
    assert Fraction(rational(Fraction(7, 3))) == Fraction(7, 3)


def test_prove_provable(capsys):
    code, out, _ = run(capsys, "prove", "I(A;C|B) >= 0")
    assert code == 0
    assert "1 · [I(A;C|B) >= 0]" in out


def test_prove_not_provable_with_hints(capsys):
    code, out, _ = run(capsys, "prove", "S(A|B) >= 0", "--parties", "A,B,C", "--hints")
    assert code == 1
    assert "Not provable" in out
    assert "Counterexample hints" in out
    assert "0 <= S(A), S(B), S(C) <= 1" in out


def test_prove_shortest_hints(capsys):
    code, out, _ = run(capsys, "prove", "S(A|B) >= 0", "--parties", "A,B,C", "--hints", "--shortest-hints")
    assert code == 1
    assert "Shortest counterexample hints" in out


def test_prove_constrained(capsys):
    code, out, _ = run(capsys, "prove", *LINDEN_WINTER)
    assert code == 1
    assert "Violating direction" in out


def test_prove_json_document(capsys):
    code, out, document = run_json(capsys, "prove", "I(A;B) >= 0")
    assert code == 0
    assert document.status == "provable"
    assert document.command == "prove"
    assert document.schema_version == 1
    assert [(term.row, term.coeff) for term in document.certificate.y] == [("I(A;B) >= 0", "1/1")]
    assert document.certificate.term_count == 1
    assert document.timing.elapsed_us >= 0
    assert_no_floats(json.loads(out))
    assert OutputDocument.from_json(document.to_json()) == document


def test_json_query_echo_reparses(capsys):
    code, _, document = run_json(capsys, "prove", *LINDEN_WINTER, "--hints")
    assert code == 1
    context = SystemContext(tuple(document.query.parties))
    query = build_query(LINDEN_WINTER[0], LINDEN_WINTER[2::2])
    assert parse_inequality(document.query.inequality, context) == query.b
    echoed = [parse_constraint(text, context) for text in document.query.constraints]
    assert echoed == list(query.constraints)
    assert document.ray is not None and len(document.ray) == context.k
    assert document.hints is not None
    assert len(document.hints.lambda_) == 4


def test_json_hints_use_lambda_key(capsys):
    _, out, _ = run_json(capsys, "prove", "S(A|B) >= 0", "--parties", "A,B,C", "--hints")
    payload = json.loads(out)
    assert payload["status"] == "not_provable"
    assert "lambda" in payload["hints"]
    assert payload["hints"]["optimal_value"] == "-1/1"
    assert_no_floats(payload)


def test_shortest(capsys):
    code, out, _ = run(capsys, "shortest", TRIPARTITE)
    assert code == 0
    assert "ℓ1 weight 3, 3 terms" in out


def test_shortest_json(capsys):
    code, _, document = run_json(capsys, "shortest", TRIPARTITE)
    assert code == 0
    assert document.certificate.l1_weight == "3/1"
    assert document.certificate.term_count == 3


def test_shortest_not_provable(capsys):
    code, _, err = run(capsys, "shortest", "S(A|B) >= 0")
    assert code == 1
    assert "not provable" in err
    code, _, document = run_json(capsys, "shortest", "S(A|B) >= 0")
    assert code == 1
    assert document.status == "not_provable"


def test_check_confirmed(capsys):
    code, out, _ = run(capsys, "check", "S(A|B) >= 0", "1,1,0,0,1,1,0", "--parties", "A,B,C")
    assert code == 0
    assert "b·s = -1" in out


def test_check_json(capsys):
    code, _, document = run_json(capsys, "check", "S(A|B) >= 0", "1,1,0,0,1,1,0", "--parties", "A,B,C")
    assert code == 0
    assert document.status == "confirmed"
    assert document.check.value == "-1/1"
    assert document.check.tight_equalities_hold
    assert document.hints.tight_equalities


def test_check_not_confirmed(capsys):
    code, out, _ = run(
        capsys, "check", "S(A|B) >= 0",
        "S(A)=1, S(B)=1, S(C)=1, S(A,B)=2, S(A,C)=2, S(B,C)=2, S(A,B,C)=3",
        "--parties", "A,B,C",
    )
    assert code == 1
    assert "b·s = 1 is not negative" in out


def test_check_provable_query_without_hints(capsys):
    code, _, _ = run(capsys, "check", "I(A;B) >= 0", "1,1,0", "--no-hints")
    assert code == 1


def test_check_wrong_length(capsys):
    code, _, err = run(capsys, "check", "S(A|B) >= 0", "1,1,0,0,1,1", "--parties", "A,B,C")
    assert code == 2
    assert "needs 7" in err


@pytest.mark.parametrize("n, m", [(2, 3), (3, 12)])
def test_elemental(capsys, n, m):
    code, out, _ = run(capsys, "elemental", "-n", str(n))
    assert code == 0
    assert len(out.strip().splitlines()) == m
    assert out.startswith("0: I(A;B) >= 0")


def test_elemental_json(capsys):
    code, out, document = run_json(capsys, "elemental", "--parties", "X,Y,Z")
    assert code == 0
    assert document.parties == ["X", "Y", "Z"]
    assert document.m == 12 and document.k == 7
    assert document.rows[0].description == "I(X;Y) >= 0"
    assert document.rows[0].coefficients == ["1/1", "1/1", "-1/1", "0/1", "0/1", "0/1", "0/1"]
    assert {row.kind for row in document.rows} == {"SSA", "WM"}
    assert_no_floats(json.loads(out))


def test_elemental_basic(capsys):
    code, out, _ = run(capsys, "elemental", "-n", "2", "--basic")
    assert code == 0
    assert out.strip()


@pytest.mark.parametrize("argv", [
    ["elemental", "-n", "1"],
    ["elemental"],
    ["elemental", "-n", "4", "--max-parties", "3"],
    ["prove", "S(A) >= 1"],
    ["prove", "S(A) > 0"],
    ["prove", "S(A|D) >= 0", "--parties", "A,B,C"],
    ["prove", "I(A;B) >= 0", "--pivot", "dantzig"],
    ["frobnicate"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_parse_error_shows_caret(capsys):
    code, _, err = run(capsys, "prove", "S(A) >= 1")
    assert code == 2
    assert "at position 8" in err
    assert "^" in err


def test_pivot_rules_agree(capsys):
    for rule in ("bland", "lex"):
        code, _, _ = run(capsys, "prove", "S(A|B) >= 0", "--parties", "A,B,C", "--pivot", rule)
        assert code == 1
        code, _, _ = run(capsys, "prove", TRIPARTITE, "--pivot", rule)
        assert code == 0


def test_pivot_cap_exits_3(capsys, monkeypatch):
    monkeypatch.setenv("QEP_MAX_PIVOTS", "1")
    get_settings.cache_clear()
    code, _, err = run(capsys, "prove", TRIPARTITE)
    assert code == 3
    assert "pivot limit" in err


def test_verbose_logging_goes_to_stderr(capsys):
    code, out, err = run(capsys, "-vv", "prove", "I(A;B) >= 0", "--json")
    assert code == 0
    assert "DEBUG [qep." in err
    assert "DEBUG" not in out


def test_partyless_inequality_needs_parties(capsys):
    code, out, _ = run(capsys, "prove", "0 >= 0", "--parties", "A,B")
    assert code == 0
    assert "trivial" in out
    code, _, err = run(capsys, "prove", "0 >= 0")
    assert code == 2
    assert "roster" in err


def test_help_keeps_example_lines(capsys):
    code, out, _ = run(capsys, "prove", "--help")
    assert code == 0
    assert '\n  qep prove "I(A;C|B) >= 0"\n' in out
    assert "\\n" not in out
    assert "required when those name fewer than two parties" in " ".join(out.split())
