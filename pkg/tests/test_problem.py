import pytest

from germinv.problem import ProblemError, load_problem_file, parse_problem

GOOD = """\
# comment line
name: demo
ring: x, y, z
variety: x^2 + y^2 + z^2
map: x ; y + z^2   # trailing comment
linear: x+y, x-y+3*z | x+y-z, x-y+5*z
"""


def test_parse_good_file():
    p = parse_problem(GOOD)
    assert p.name == "demo"
    assert p.ring.variables == ("x", "y", "z")
    assert len(p.variety.generators) == 1
    assert p.f1 == p.ring.parse("x") and p.f2 == p.ring.parse("y+z^2")
    assert [len(s) for s in p.linear] == [2, 2]
    assert p.working_variety().k == 2
    assert len(p.digest) == 64


def test_multiple_variety_lines_accumulate():
    p = parse_problem("ring: x, y, z, w\nvariety: x*z ; x*w\nvariety: z*y\n")
    assert p.variety.k == 3


def test_suspension_line():
    p = parse_problem("ring: x, y\nvariety: x*y\nmap: x+y\nsuspension: w : w^3\n")
    H, h = p.suspension
    assert H.variables == ("w",) and h == H.parse("w^3")


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("ring: x, y\nvariety: x + q\n", 2, 14),
        ("ring: x, y\nmap: x +\n", 2, 9),
        ("ring: x, y\nmap: x + 1\n", 2, 6),
        ("ring: x, y\nvariety: x^2 ; y + 1\n", 2, 16),
        ("variety: x\n", 1, 1),
        ("ring: x, x\n", 1, 6),
        ("ring: x, 2y\n", 1, 10),
        ("ring: x\nfoo: 1\n", 2, 1),
        ("ring: x\nring: x\n", 2, 1),
        ("ring: x\njust text\n", 2, 1),
        ("ring: x, y\nmap: x ; y ; x*y\n", 2, 5),
        ("ring: x, y\nsuspension: x : x^2\n", 2, 12),
        ("ring: x, y\nsuspension: w^2\n", 2, 12),
        ("name: only\n", 1, 1),
    ],
)
def test_diagnostics_carry_positions(text, line, column):
    with pytest.raises(ProblemError) as err:
        parse_problem(text, "p.problem")
    assert (err.value.line, err.value.column) == (line, column)
    assert str(err.value).startswith(f"p.problem:{line}:{column}:")


def test_load_from_disk(tmp_path):
    f = tmp_path / "a.problem"
    f.write_text(GOOD, encoding="utf-8")
    assert load_problem_file(f).name == "demo"
    bad = tmp_path / "b.problem"
    bad.write_bytes(b"ring: x\xff\n")
    with pytest.raises(ProblemError, match="UTF-8"):
        load_problem_file(bad)
